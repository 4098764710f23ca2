#ifndef MDC_PIPELINE_HPP
#define MDC_PIPELINE_HPP

#include <cstdint>

#include "mdc/annealer.hpp"
#include "mdc/codec.hpp"

namespace mdc {

/// One of the two MD messages: the side-reconstruction stream plus a
/// fragment of the central refinement stream the side decoder ignores.
/// Container layout (little-endian): role u8, theta numerator u32,
/// theta denominator u32, fragment index u8, total refinement bit-length
/// u64, then the side Bitstream and the fragment Bitstream.
struct MDMessage {
  std::uint8_t role = 0;  // 1 or 2
  std::uint32_t theta_num = 1;
  std::uint32_t theta_den = 2;
  std::uint8_t fragment_index = 0;  // 0 = leading bits, 1 = trailing bits
  std::uint64_t total_refinement_bits = 0;
  Bitstream side;
  Bitstream fragment;

  std::vector<std::uint8_t> serialize() const;
  static MDMessage parse(std::span<const std::uint8_t> bytes);
  std::size_t serialized_bits() const { return 8 * (kFixedBytes + side.serialized_bytes() + fragment.serialized_bytes()); }
  static constexpr std::size_t kFixedBytes = 1 + 4 + 4 + 1 + 8;
};

struct MDMessages {
  MDMessage m1, m2;
};

struct RateReport {
  double r1 = 0, r2 = 0;             // realized message rates, bits/symbol, headers included
  double hk1 = 0, hk2 = 0, hkk1 = 0;  // empirical entropies of the triple
  double d1 = 0, d2 = 0, d0 = 0;     // distortions vs the source
  double slack1 = 0, slack2 = 0, slack_sum = 0;  // coder + framing redundancy
};

struct Theorem0Verdict {
  bool pass = false;
  double margin1 = 0, margin2 = 0, margin_sum = 0;
};

struct MDEncodeResult {
  MDMessages messages;
  AnnealReport anneal;
  RateReport rates;
};

struct ThetaSplit {
  std::uint32_t num = 1, den = 2;  // theta = num/den in [0, 1]
};

MDEncodeResult md_encode(const Sequence& x, const LagrangianWeights& wts,
                         const DistortionMeasure& d, int k, int k1,
                         const AnnealSchedule& schedule, std::uint64_t iterations,
                         ThetaSplit theta, std::uint64_t seed);

/// Side decoders g1/g2: recover the side reconstruction, ignoring the
/// refinement fragment.
Sequence md_decode_side(const MDMessage& m);

/// Central decoder g0: side-decode both, reassemble the refinement stream
/// from the two fragments, conditionally decode the central reconstruction.
Sequence md_decode_central(const MDMessage& m1, const MDMessage& m2);

/// Empirical rate-accounting check: realized rates can never undercut the
/// empirical entropies they code against.
Theorem0Verdict theorem0_check(const RateReport& report);

}  // namespace mdc

#endif  // MDC_PIPELINE_HPP
