#ifndef MDC_SEQUENCE_HPP
#define MDC_SEQUENCE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mdc {

/// A finite-alphabet symbol sequence with cyclic index semantics:
/// context windows wrap around at both ends.
struct Sequence {
  std::vector<std::uint8_t> symbols;
  int alphabet = 2;

  Sequence() = default;
  Sequence(std::vector<std::uint8_t> syms, int a) : symbols(std::move(syms)), alphabet(a) {
    validate();
  }

  int size() const { return static_cast<int>(symbols.size()); }

  // i may be any integer; resolves modulo n.
  std::uint8_t at_cyclic(long long i) const {
    const long long n = static_cast<long long>(symbols.size());
    long long j = i % n;
    if (j < 0) j += n;
    return symbols[static_cast<std::size_t>(j)];
  }

  void validate() const {
    if (alphabet < 2) throw std::invalid_argument("Sequence: alphabet size must be >= 2");
    if (symbols.empty()) throw std::invalid_argument("Sequence: length must be >= 1");
    for (auto s : symbols)
      if (s >= alphabet) throw std::invalid_argument("Sequence: symbol out of alphabet range");
  }

  bool operator==(const Sequence& o) const = default;
};

inline Sequence rotate(const Sequence& s, int j) {
  const int n = s.size();
  Sequence out;
  out.alphabet = s.alphabet;
  out.symbols.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.symbols[static_cast<std::size_t>(i)] = s.at_cyclic(i + j);
  return out;
}

}  // namespace mdc

#endif  // MDC_SEQUENCE_HPP
