#ifndef MDC_MARKOV_HPP
#define MDC_MARKOV_HPP

#include <cstdint>
#include <vector>

#include "mdc/sequence.hpp"

namespace mdc {

struct MarkovSourceSpec {
  int alphabet = 2;
  std::vector<std::vector<double>> transition;  // A x A row-stochastic
  std::uint64_t seed = 0;
  int n = 0;

  static MarkovSourceSpec symmetric_binary(double p, int n, std::uint64_t seed);
  void validate() const;
  std::vector<double> stationary() const;
};

/// Stationary-start Markov chain sample; deterministic given the seed.
Sequence generate_markov(const MarkovSourceSpec& spec);

}  // namespace mdc

#endif  // MDC_MARKOV_HPP
