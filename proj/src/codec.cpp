#include "mdc/codec.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

namespace mdc {

namespace {

constexpr char kMagic[4] = {'M', 'D', 'S', 'C'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Per-context add-half counts; freq(sym) = 2c+1 over total 2C+A.
class AdaptiveModel {
 public:
  explicit AdaptiveModel(int alphabet) : alphabet_(alphabet) {}

  void encode(RangeEncoder& enc, std::uint64_t key, int sym) {
    auto& col = column(key);
    std::uint32_t cum = 0;
    for (int a = 0; a < sym; ++a) cum += 2 * col[static_cast<std::size_t>(a)] + 1;
    std::uint32_t total = 0;
    for (int a = 0; a < alphabet_; ++a) total += 2 * col[static_cast<std::size_t>(a)] + 1;
    enc.encode(cum, 2 * col[static_cast<std::size_t>(sym)] + 1, total);
    bump(col, sym);
  }

  int decode(RangeDecoder& dec, std::uint64_t key) {
    auto& col = column(key);
    std::uint32_t total = 0;
    for (int a = 0; a < alphabet_; ++a) total += 2 * col[static_cast<std::size_t>(a)] + 1;
    const std::uint32_t target = dec.decode_target(total);
    std::uint32_t cum = 0;
    int sym = alphabet_ - 1;
    for (int a = 0; a < alphabet_; ++a) {
      const std::uint32_t f = 2 * col[static_cast<std::size_t>(a)] + 1;
      if (target < cum + f) {
        sym = a;
        dec.consume(cum, f);
        break;
      }
      cum += f;
    }
    bump(col, sym);
    return sym;
  }

 private:
  std::vector<std::uint32_t>& column(std::uint64_t key) {
    auto& col = table_[key];
    if (col.empty()) col.assign(static_cast<std::size_t>(alphabet_), 0);
    return col;
  }

  void bump(std::vector<std::uint32_t>& col, int sym) {
    ++col[static_cast<std::size_t>(sym)];
    std::uint32_t total = 0;
    for (auto c : col) total += c;
    if (total >= (1u << 15))
      for (auto& c : col) c >>= 1;
  }

  int alphabet_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> table_;
};

// key for the truncated-prefix order-k context of position i
std::uint64_t prefix_key(const Sequence& s, int i, int k, std::uint64_t radix_k) {
  const int len = std::min(i, k);
  std::uint64_t packed = 0, radix = 1;
  for (int t = 1; t <= len; ++t) {
    packed += radix * s.symbols[static_cast<std::size_t>(i - t)];
    radix *= static_cast<std::uint64_t>(s.alphabet);
  }
  return static_cast<std::uint64_t>(len) * radix_k + packed;
}

std::uint64_t window_key(const Sequence& s, int i, int k1) {
  std::uint64_t packed = 0, radix = 1;
  for (int t = -k1; t <= k1; ++t) {
    packed += radix * s.at_cyclic(i + t);
    radix *= static_cast<std::uint64_t>(s.alphabet);
  }
  return packed;
}

void check_orders(int n, int alphabet, int k, int k1, bool joint) {
  if (k < 0 || k >= n) throw std::invalid_argument("codec: need 0 <= k < n");
  const double la = std::log2(static_cast<double>(alphabet));
  double bits = std::log2(static_cast<double>(k + 1)) + k * la;
  if (joint) {
    if (k1 < 0 || k1 > k || 2 * k1 + 1 > n)
      throw std::invalid_argument("codec: need 0 <= k1 <= k, 2k1+1 <= n");
    bits += 2 * (2 * k1 + 1) * la;
  }
  if (bits > 62.0) throw std::invalid_argument("codec: context space exceeds 2^62");
}

Bitstream frame(std::uint8_t role, const Sequence& s, int k, int k1,
                std::vector<std::uint8_t> payload) {
  Bitstream b;
  b.role = role;
  b.n = static_cast<std::uint32_t>(s.size());
  b.k = static_cast<std::uint8_t>(k);
  b.k1 = static_cast<std::uint8_t>(k1);
  b.alphabet = static_cast<std::uint8_t>(s.alphabet);
  b.bit_length = 8ull * payload.size();
  b.payload = std::move(payload);
  return b;
}

}  // namespace

std::vector<std::uint8_t> serialize_bitstream(const Bitstream& b) {
  std::vector<std::uint8_t> out;
  out.reserve(b.serialized_bytes());
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(Bitstream::kVersion);
  out.push_back(b.role);
  put_u32(out, b.n);
  out.push_back(b.k);
  out.push_back(b.k1);
  out.push_back(b.alphabet);
  put_u64(out, b.bit_length);
  out.insert(out.end(), b.payload.begin(), b.payload.end());
  return out;
}

Bitstream parse_bitstream(std::span<const std::uint8_t> bytes, std::size_t& offset) {
  if (bytes.size() < offset + Bitstream::kHeaderBytes)
    throw DecodeError("bitstream: truncated header");
  const std::uint8_t* p = bytes.data() + offset;
  if (std::memcmp(p, kMagic, 4) != 0) throw DecodeError("bitstream: bad magic");
  if (p[4] != Bitstream::kVersion) throw DecodeError("bitstream: unsupported version");
  Bitstream b;
  b.role = p[5];
  b.n = 0;
  for (int i = 0; i < 4; ++i) b.n |= static_cast<std::uint32_t>(p[6 + i]) << (8 * i);
  b.k = p[10];
  b.k1 = p[11];
  b.alphabet = p[12];
  b.bit_length = 0;
  for (int i = 0; i < 8; ++i) b.bit_length |= static_cast<std::uint64_t>(p[13 + i]) << (8 * i);
  const std::uint64_t nbytes = (b.bit_length + 7) / 8;
  if (bytes.size() < offset + Bitstream::kHeaderBytes + nbytes)
    throw DecodeError("bitstream: truncated payload");
  b.payload.assign(p + Bitstream::kHeaderBytes, p + Bitstream::kHeaderBytes + nbytes);
  offset += Bitstream::kHeaderBytes + nbytes;
  return b;
}

Bitstream encode_sequence(const Sequence& s, int k, std::uint8_t role) {
  s.validate();
  check_orders(s.size(), s.alphabet, k, 0, false);
  const std::uint64_t radix_k = ipow(static_cast<std::uint64_t>(s.alphabet), k);
  AdaptiveModel model(s.alphabet);
  RangeEncoder enc;
  for (int i = 0; i < s.size(); ++i)
    model.encode(enc, prefix_key(s, i, k, radix_k), s.symbols[static_cast<std::size_t>(i)]);
  return frame(role, s, k, 0, enc.finish());
}

Sequence decode_sequence(const Bitstream& b) {
  if (b.n < 1 || b.alphabet < 2 || b.k >= b.n) throw DecodeError("decode_sequence: bad header");
  Sequence s;
  s.alphabet = b.alphabet;
  s.symbols.resize(b.n);
  const std::uint64_t radix_k = ipow(static_cast<std::uint64_t>(b.alphabet), b.k);
  AdaptiveModel model(b.alphabet);
  RangeDecoder dec(b.payload);
  for (std::uint32_t i = 0; i < b.n; ++i)
    s.symbols[i] = static_cast<std::uint8_t>(
        model.decode(dec, prefix_key(s, static_cast<int>(i), b.k, radix_k)));
  return s;
}

Bitstream encode_conditional(const Sequence& w, const Sequence& y, const Sequence& z, int k, int k1,
                             std::uint8_t role) {
  w.validate();
  if (y.size() != w.size() || z.size() != w.size() || y.alphabet != w.alphabet ||
      z.alphabet != w.alphabet)
    throw std::invalid_argument("encode_conditional: side sequences must match");
  check_orders(w.size(), w.alphabet, k, k1, true);
  const std::uint64_t radix_k = ipow(static_cast<std::uint64_t>(w.alphabet), k);
  const std::uint64_t radix_side = ipow(static_cast<std::uint64_t>(w.alphabet), 2 * k1 + 1);
  AdaptiveModel model(w.alphabet);
  RangeEncoder enc;
  for (int i = 0; i < w.size(); ++i) {
    std::uint64_t key = prefix_key(w, i, k, radix_k);
    key = (key * radix_side + window_key(y, i, k1)) * radix_side + window_key(z, i, k1);
    model.encode(enc, key, w.symbols[static_cast<std::size_t>(i)]);
  }
  Bitstream b = frame(role, w, k, k1, enc.finish());
  return b;
}

Sequence decode_conditional(const Bitstream& b, const Sequence& y, const Sequence& z) {
  if (b.n < 1 || b.alphabet < 2 || b.k >= b.n) throw DecodeError("decode_conditional: bad header");
  if (y.size() != static_cast<int>(b.n) || z.size() != static_cast<int>(b.n) ||
      y.alphabet != b.alphabet || z.alphabet != b.alphabet)
    throw DecodeError("decode_conditional: side information mismatch");
  Sequence w;
  w.alphabet = b.alphabet;
  w.symbols.resize(b.n);
  const std::uint64_t radix_k = ipow(static_cast<std::uint64_t>(b.alphabet), b.k);
  const std::uint64_t radix_side = ipow(static_cast<std::uint64_t>(b.alphabet), 2 * b.k1 + 1);
  AdaptiveModel model(b.alphabet);
  RangeDecoder dec(b.payload);
  for (std::uint32_t i = 0; i < b.n; ++i) {
    std::uint64_t key = prefix_key(w, static_cast<int>(i), b.k, radix_k);
    key = (key * radix_side + window_key(y, static_cast<int>(i), b.k1)) * radix_side +
          window_key(z, static_cast<int>(i), b.k1);
    w.symbols[i] = static_cast<std::uint8_t>(model.decode(dec, key));
  }
  return w;
}

}  // namespace mdc
