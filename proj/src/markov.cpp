#include "mdc/markov.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mdc {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_row(std::mt19937_64& rng, const std::vector<double>& row) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < row.size(); ++a) {
    acc += row[a];
    if (u < acc) return static_cast<int>(a);
  }
  return static_cast<int>(row.size()) - 1;
}

}  // namespace

MarkovSourceSpec MarkovSourceSpec::symmetric_binary(double p, int n, std::uint64_t seed) {
  MarkovSourceSpec s;
  s.alphabet = 2;
  s.transition = {{1.0 - p, p}, {p, 1.0 - p}};
  s.n = n;
  s.seed = seed;
  return s;
}

void MarkovSourceSpec::validate() const {
  if (alphabet < 2) throw std::invalid_argument("MarkovSourceSpec: alphabet must be >= 2");
  if (n < 1) throw std::invalid_argument("MarkovSourceSpec: n must be >= 1");
  if (transition.size() != static_cast<std::size_t>(alphabet))
    throw std::invalid_argument("MarkovSourceSpec: transition must be A x A");
  for (const auto& row : transition) {
    if (row.size() != static_cast<std::size_t>(alphabet))
      throw std::invalid_argument("MarkovSourceSpec: transition must be A x A");
    double s = 0.0;
    for (double p : row) {
      if (p < 0.0) throw std::invalid_argument("MarkovSourceSpec: negative transition probability");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-12)
      throw std::invalid_argument("MarkovSourceSpec: rows must sum to 1");
  }
}

std::vector<double> MarkovSourceSpec::stationary() const {
  // power iteration on the row-stochastic matrix
  std::vector<double> pi(static_cast<std::size_t>(alphabet), 1.0 / alphabet);
  std::vector<double> next(pi.size());
  for (int it = 0; it < 2000; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int a = 0; a < alphabet; ++a)
      for (int b = 0; b < alphabet; ++b)
        next[static_cast<std::size_t>(b)] +=
            pi[static_cast<std::size_t>(a)] * transition[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    pi.swap(next);
  }
  return pi;
}

Sequence generate_markov(const MarkovSourceSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  Sequence s;
  s.alphabet = spec.alphabet;
  s.symbols.resize(static_cast<std::size_t>(spec.n));
  int state = sample_row(rng, spec.stationary());
  s.symbols[0] = static_cast<std::uint8_t>(state);
  for (int i = 1; i < spec.n; ++i) {
    state = sample_row(rng, spec.transition[static_cast<std::size_t>(state)]);
    s.symbols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(state);
  }
  return s;
}

}  // namespace mdc
