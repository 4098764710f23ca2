#ifndef MDC_RANGE_CODER_HPP
#define MDC_RANGE_CODER_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mdc {

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 32-bit range encoder with carry propagation, byte-aligned output.
class RangeEncoder {
 public:
  // Encode a symbol with cumulative frequency [cum_low, cum_low + freq)
  // out of total. Requires freq >= 1 and total <= 2^16.
  void encode(std::uint32_t cum_low, std::uint32_t freq, std::uint32_t total) {
    range_ /= total;
    low_ += static_cast<std::uint64_t>(cum_low) * range_;
    range_ *= freq;
    while (range_ < kTop) {
      shift_low();
      range_ <<= 8;
    }
  }

  std::vector<std::uint8_t> finish() {
    for (int i = 0; i < 5; ++i) shift_low();
    return std::move(out_);
  }

 private:
  static constexpr std::uint32_t kTop = 1u << 24;

  void shift_low() {
    if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
      std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
      std::uint8_t b = cache_;
      do {
        out_.push_back(static_cast<std::uint8_t>(b + carry));
        b = 0xFF;
      } while (--cache_size_);
      cache_ = static_cast<std::uint8_t>(low_ >> 24);
    }
    ++cache_size_;
    low_ = (low_ << 8) & 0xFFFFFFFFull;
  }

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {
    for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | next_byte();
  }

  // Returns a value in [0, total); the caller maps it to a symbol's
  // cumulative interval and confirms with consume().
  std::uint32_t decode_target(std::uint32_t total) {
    r_ = range_ / total;
    std::uint32_t t = static_cast<std::uint32_t>(code_ / r_);
    if (t >= total) throw DecodeError("range decoder: target out of range");
    return t;
  }

  void consume(std::uint32_t cum_low, std::uint32_t freq) {
    code_ -= static_cast<std::uint64_t>(cum_low) * r_;
    range_ = r_ * freq;
    if (code_ >= range_) throw DecodeError("range decoder: state violation");
    while (range_ < kTop) {
      code_ = ((code_ << 8) | next_byte()) & 0xFFFFFFFFull;
      range_ <<= 8;
    }
  }

 private:
  static constexpr std::uint32_t kTop = 1u << 24;

  std::uint8_t next_byte() {
    if (pos_ >= bytes_.size()) throw DecodeError("range decoder: truncated stream");
    return bytes_[pos_++];
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
  std::uint64_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t r_ = 0;
};

}  // namespace mdc

#endif  // MDC_RANGE_CODER_HPP
