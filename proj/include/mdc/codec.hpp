#ifndef MDC_CODEC_HPP
#define MDC_CODEC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mdc/range_coder.hpp"
#include "mdc/sequence.hpp"

namespace mdc {

/// Framed compressed stream. Binary layout (little-endian):
/// magic "MDSC", version u8, role u8, n u32, k u8, k1 u8, A u8,
/// payload bit-length u64, payload bytes.
struct Bitstream {
  std::uint8_t role = 0;
  std::uint32_t n = 0;
  std::uint8_t k = 0;
  std::uint8_t k1 = 0;
  std::uint8_t alphabet = 2;
  std::uint64_t bit_length = 0;
  std::vector<std::uint8_t> payload;

  std::size_t serialized_bytes() const { return kHeaderBytes + payload.size(); }
  static constexpr std::size_t kHeaderBytes = 4 + 1 + 1 + 4 + 1 + 1 + 1 + 8;
  static constexpr std::uint8_t kVersion = 1;
};

std::vector<std::uint8_t> serialize_bitstream(const Bitstream& b);
Bitstream parse_bitstream(std::span<const std::uint8_t> bytes, std::size_t& offset);

// Stream-role tags used by the MD pipeline framing.
enum : std::uint8_t {
  kRoleSide1 = 1,
  kRoleSide2 = 2,
  kRoleRefinement = 3,
  kRoleFragment = 4,
};

/// Adaptive order-k arithmetic coding of a sequence. Contexts are the
/// preceding symbols, truncated at the start of the sequence; per-context
/// counts start at 1/2 per symbol (add-half estimator).
Bitstream encode_sequence(const Sequence& s, int k, std::uint8_t role = 0);
Sequence decode_sequence(const Bitstream& b);

/// Conditional variant: contexts follow the joint count matrix
/// ((w-past, truncated), cyclic y and z windows of width 2k1+1).
Bitstream encode_conditional(const Sequence& w, const Sequence& y, const Sequence& z, int k, int k1,
                             std::uint8_t role = 0);
Sequence decode_conditional(const Bitstream& b, const Sequence& y, const Sequence& z);

}  // namespace mdc

#endif  // MDC_CODEC_HPP
