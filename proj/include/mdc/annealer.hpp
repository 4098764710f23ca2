#ifndef MDC_ANNEALER_HPP
#define MDC_ANNEALER_HPP

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "mdc/energy.hpp"

namespace mdc {

/// Nondecreasing inverse-temperature sequence beta_t, t >= 1.
class AnnealSchedule {
 public:
  enum class Kind { Logarithmic, PowerLaw, Constant };

  // beta_t = (1/T0) * ln(floor(t/n) + 1)
  static AnnealSchedule logarithmic(double t0, int n);
  // beta_t = c * t^exponent  (i.e. T(t) = 1/(c t^exponent))
  static AnnealSchedule power_law(double c, double exponent);
  // default c = 2n, exponent = 1/10
  static AnnealSchedule power_law_default(int n) { return power_law(2.0 * n, 0.1); }
  static AnnealSchedule constant(double beta);

  Kind kind() const { return kind_; }
  double beta(std::uint64_t t) const;

  // parameters, for serialization
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  int block_length() const { return n_; }

 private:
  AnnealSchedule(Kind kind, double a, double b, int n) : kind_(kind), a_(a), b_(b), n_(n) {}
  Kind kind_;
  double a_, b_;
  int n_ = 0;
};

struct AnnealReport {
  Sequence xhat1, xhat2, xhat0;
  std::vector<double> trace;  // total energy, sampled every n iterations (t = 0, n, 2n, ...)
  EnergyBreakdown final_energy;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
};

/// Single-site Boltzmann conditional at inverse temperature beta:
/// entry a proportional to exp(-beta * energy_delta(site, pos, a)).
std::vector<double> conditional_pmf(const AnnealState& state, Site site, int pos, double beta);

/// Gibbs-sampler annealing over the reconstruction triple. Each iteration
/// draws one position uniformly and resamples y, then z, then w at it.
AnnealReport anneal(const Sequence& x, const LagrangianWeights& wts, const DistortionMeasure& d,
                    int k, int k1, const AnnealSchedule& schedule, std::uint64_t iterations,
                    std::uint64_t seed);

struct ExhaustiveResult {
  Sequence y, z, w;
  double energy = 0.0;
  EnergyBreakdown breakdown;
};

/// Global minimizer over all A^(3n) triples; ties broken by lexicographic
/// order of the concatenated (y, z, w). Guarded to tiny instances.
ExhaustiveResult exhaustive_minimize(const Sequence& x, const LagrangianWeights& wts,
                                     const DistortionMeasure& d, int k, int k1);

}  // namespace mdc

#endif  // MDC_ANNEALER_HPP
