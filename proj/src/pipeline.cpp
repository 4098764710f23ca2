#include "mdc/pipeline.hpp"

#include <cmath>

namespace mdc {

namespace {

// Bits are addressed MSB-first within each byte.
bool get_bit(const std::vector<std::uint8_t>& bytes, std::uint64_t i) {
  return (bytes[static_cast<std::size_t>(i >> 3)] >> (7 - (i & 7))) & 1;
}

std::vector<std::uint8_t> slice_bits(const std::vector<std::uint8_t>& bytes, std::uint64_t begin,
                                     std::uint64_t end) {
  std::vector<std::uint8_t> out((end - begin + 7) / 8, 0);
  for (std::uint64_t i = begin; i < end; ++i)
    if (get_bit(bytes, i)) {
      const std::uint64_t j = i - begin;
      out[static_cast<std::size_t>(j >> 3)] |= static_cast<std::uint8_t>(1u << (7 - (j & 7)));
    }
  return out;
}

void append_bits(std::vector<std::uint8_t>& bytes, std::uint64_t& nbits,
                 const std::vector<std::uint8_t>& src, std::uint64_t src_bits) {
  for (std::uint64_t i = 0; i < src_bits; ++i) {
    if ((nbits & 7) == 0) bytes.push_back(0);
    if (get_bit(src, i))
      bytes[static_cast<std::size_t>(nbits >> 3)] |= static_cast<std::uint8_t>(1u << (7 - (nbits & 7)));
    ++nbits;
  }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

std::vector<std::uint8_t> MDMessage::serialize() const {
  std::vector<std::uint8_t> out;
  out.push_back(role);
  put_u32(out, theta_num);
  put_u32(out, theta_den);
  out.push_back(fragment_index);
  put_u64(out, total_refinement_bits);
  auto s = serialize_bitstream(side);
  out.insert(out.end(), s.begin(), s.end());
  auto f = serialize_bitstream(fragment);
  out.insert(out.end(), f.begin(), f.end());
  return out;
}

MDMessage MDMessage::parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFixedBytes) throw DecodeError("message: truncated container");
  MDMessage m;
  m.role = bytes[0];
  m.theta_num = m.theta_den = 0;
  for (int i = 0; i < 4; ++i) m.theta_num |= static_cast<std::uint32_t>(bytes[1 + i]) << (8 * i);
  for (int i = 0; i < 4; ++i) m.theta_den |= static_cast<std::uint32_t>(bytes[5 + i]) << (8 * i);
  m.fragment_index = bytes[9];
  m.total_refinement_bits = 0;
  for (int i = 0; i < 8; ++i)
    m.total_refinement_bits |= static_cast<std::uint64_t>(bytes[10 + i]) << (8 * i);
  std::size_t offset = kFixedBytes;
  m.side = parse_bitstream(bytes, offset);
  m.fragment = parse_bitstream(bytes, offset);
  if (m.role != 1 && m.role != 2) throw DecodeError("message: bad role");
  return m;
}

MDEncodeResult md_encode(const Sequence& x, const LagrangianWeights& wts,
                         const DistortionMeasure& d, int k, int k1,
                         const AnnealSchedule& schedule, std::uint64_t iterations,
                         ThetaSplit theta, std::uint64_t seed) {
  if (theta.den == 0 || theta.num > theta.den)
    throw std::invalid_argument("md_encode: theta must be in [0, 1]");
  MDEncodeResult res;
  res.anneal = anneal(x, wts, d, k, k1, schedule, iterations, seed);
  const Sequence& x1 = res.anneal.xhat1;
  const Sequence& x2 = res.anneal.xhat2;
  const Sequence& x0 = res.anneal.xhat0;

  Bitstream side1 = encode_sequence(x1, k, kRoleSide1);
  Bitstream side2 = encode_sequence(x2, k, kRoleSide2);
  Bitstream refinement = encode_conditional(x0, x1, x2, k, k1, kRoleRefinement);

  const std::uint64_t total_bits = refinement.bit_length;
  const std::uint64_t split =
      (static_cast<std::uint64_t>(theta.num) * total_bits + theta.den - 1) / theta.den;

  auto make_fragment = [&](std::uint64_t begin, std::uint64_t end) {
    Bitstream f;
    f.role = kRoleFragment;
    f.n = refinement.n;
    f.k = refinement.k;
    f.k1 = refinement.k1;
    f.alphabet = refinement.alphabet;
    f.bit_length = end - begin;
    f.payload = slice_bits(refinement.payload, begin, end);
    return f;
  };

  auto make_message = [&](std::uint8_t role, Bitstream side, std::uint8_t frag_index,
                          Bitstream frag) {
    MDMessage m;
    m.role = role;
    m.theta_num = theta.num;
    m.theta_den = theta.den;
    m.fragment_index = frag_index;
    m.total_refinement_bits = total_bits;
    m.side = std::move(side);
    m.fragment = std::move(frag);
    return m;
  };

  res.messages.m1 = make_message(1, std::move(side1), 0, make_fragment(0, split));
  res.messages.m2 = make_message(2, std::move(side2), 1, make_fragment(split, total_bits));

  const double n = x.size();
  RateReport& rep = res.rates;
  rep.r1 = static_cast<double>(res.messages.m1.serialized_bits()) / n;
  rep.r2 = static_cast<double>(res.messages.m2.serialized_bits()) / n;
  rep.hk1 = res.anneal.final_energy.hk_y;
  rep.hk2 = res.anneal.final_energy.hk_z;
  rep.hkk1 = res.anneal.final_energy.hkk1_w;
  rep.d1 = res.anneal.final_energy.d_y;
  rep.d2 = res.anneal.final_energy.d_z;
  rep.d0 = res.anneal.final_energy.d_w;
  const double th = static_cast<double>(theta.num) / theta.den;
  rep.slack1 = rep.r1 - rep.hk1 - th * rep.hkk1;
  rep.slack2 = rep.r2 - rep.hk2 - (1.0 - th) * rep.hkk1;
  rep.slack_sum = rep.r1 + rep.r2 - (rep.hk1 + rep.hk2 + rep.hkk1);
  return res;
}

Sequence md_decode_side(const MDMessage& m) { return decode_sequence(m.side); }

Sequence md_decode_central(const MDMessage& ma, const MDMessage& mb) {
  const MDMessage& m1 = ma.role == 1 ? ma : mb;
  const MDMessage& m2 = ma.role == 1 ? mb : ma;
  if (m1.role != 1 || m2.role != 2) throw DecodeError("central decode: need one message of each role");
  if (m1.fragment_index == m2.fragment_index)
    throw DecodeError("central decode: fragment-mismatch (duplicate fragment index)");
  if (m1.theta_num != m2.theta_num || m1.theta_den != m2.theta_den ||
      m1.total_refinement_bits != m2.total_refinement_bits)
    throw DecodeError("central decode: fragment-mismatch (split parameters disagree)");
  if (m1.fragment.bit_length + m2.fragment.bit_length != m1.total_refinement_bits)
    throw DecodeError("central decode: fragment-mismatch (fragment lengths)");
  if (m1.fragment.n != m2.fragment.n || m1.fragment.k != m2.fragment.k ||
      m1.fragment.k1 != m2.fragment.k1 || m1.fragment.alphabet != m2.fragment.alphabet)
    throw DecodeError("central decode: fragment-mismatch (fragment headers)");

  const Sequence x1 = decode_sequence(m1.side);
  const Sequence x2 = decode_sequence(m2.side);

  const MDMessage& lead = m1.fragment_index == 0 ? m1 : m2;
  const MDMessage& trail = m1.fragment_index == 0 ? m2 : m1;
  Bitstream refinement;
  refinement.role = kRoleRefinement;
  refinement.n = lead.fragment.n;
  refinement.k = lead.fragment.k;
  refinement.k1 = lead.fragment.k1;
  refinement.alphabet = lead.fragment.alphabet;
  std::uint64_t nbits = 0;
  append_bits(refinement.payload, nbits, lead.fragment.payload, lead.fragment.bit_length);
  append_bits(refinement.payload, nbits, trail.fragment.payload, trail.fragment.bit_length);
  refinement.bit_length = nbits;
  return decode_conditional(refinement, x1, x2);
}

Theorem0Verdict theorem0_check(const RateReport& report) {
  constexpr double kEps = 1e-9;
  Theorem0Verdict v;
  v.margin1 = report.r1 - report.hk1;
  v.margin2 = report.r2 - report.hk2;
  v.margin_sum = report.r1 + report.r2 - (report.hk1 + report.hk2 + report.hkk1);
  v.pass = v.margin1 >= -kEps && v.margin2 >= -kEps && v.margin_sum >= -kEps;
  return v;
}

}  // namespace mdc
