#ifndef MDC_ENERGY_HPP
#define MDC_ENERGY_HPP

#include <stdexcept>
#include <vector>

#include "mdc/sequence.hpp"
#include "mdc/stats.hpp"

namespace mdc {

/// The six Lagrangian coefficients trading rate surrogates against
/// distortions: entropies weighted by gamma, distortions by alpha.
struct LagrangianWeights {
  double gamma1 = 1.0, gamma2 = 1.0, gamma0 = 1.0;
  double alpha1 = 1.0, alpha2 = 1.0, alpha0 = 1.0;

  void validate() const {
    for (double v : {gamma1, gamma2, gamma0, alpha1, alpha2, alpha0})
      if (v < 0.0) throw std::invalid_argument("LagrangianWeights: coefficients must be >= 0");
  }
};

/// Single-letter distortion d(x, xhat) as an A x A matrix.
class DistortionMeasure {
 public:
  DistortionMeasure(int alphabet, std::vector<double> entries);
  static DistortionMeasure hamming(int alphabet);

  int alphabet() const { return alphabet_; }
  double operator()(int x, int xhat) const {
    return entries_[static_cast<std::size_t>(x * alphabet_ + xhat)];
  }
  double max_entry() const { return max_; }

 private:
  int alphabet_;
  std::vector<double> entries_;
  double max_;
};

struct EnergyBreakdown {
  double hk_y = 0, hk_z = 0, hkk1_w = 0;
  double d_y = 0, d_z = 0, d_w = 0;
  double total = 0;

  double recombine(const LagrangianWeights& w) const {
    return w.gamma1 * hk_y + w.gamma2 * hk_z + w.gamma0 * hkk1_w + w.alpha1 * d_y +
           w.alpha2 * d_z + w.alpha0 * d_w;
  }
};

struct DeltaBounds {
  double d1 = 0, d2 = 0, d0 = 0;
  double max() const { return std::max(d1, std::max(d2, d0)); }
};

double average_distortion(const Sequence& x, const Sequence& y, const DistortionMeasure& d);

EnergyBreakdown compute_energy(const Sequence& x, const Sequence& y, const Sequence& z,
                               const Sequence& w, const LagrangianWeights& wts,
                               const DistortionMeasure& d, int k, int k1);

/// Analytic upper bounds on the worst-case single-substitution energy change
/// for each of the three sites. Each touched context column changes the
/// weighted entropy sum by at most 2*log2(n*A); a substitution touches
/// 2*(k+1) columns of the site's own table, 2*(2k1+1) (sides) or 2*(k+1)
/// (central) columns of the joint table, plus one distortion term.
DeltaBounds delta_bound(const LagrangianWeights& wts, const DistortionMeasure& d, int k, int k1,
                        int n, int alphabet);

/// Mutable annealing state: the reconstruction triple with cached count
/// tables and a maintained energy breakdown.
class AnnealState {
 public:
  AnnealState(const Sequence& x, const LagrangianWeights& wts, const DistortionMeasure& d, int k,
              int k1);

  const Sequence& source() const { return x_; }
  const Sequence& y() const { return y_; }
  const Sequence& z() const { return z_; }
  const Sequence& w() const { return w_; }
  Sequence& seq(Site s) { return s == Site::Y ? y_ : (s == Site::Z ? z_ : w_); }
  const Sequence& seq(Site s) const { return s == Site::Y ? y_ : (s == Site::Z ? z_ : w_); }

  int k() const { return k_; }
  int k1() const { return k1_; }
  const LagrangianWeights& weights() const { return wts_; }
  const DistortionMeasure& distortion() const { return d_; }
  const EnergyBreakdown& breakdown() const { return energy_; }

  // E(after substituting seq(site)[pos] = sym) - E(before); pure.
  double energy_delta(Site site, int pos, int sym) const;
  // Commit the substitution into sequences, tables and breakdown.
  void commit(Site site, int pos, int sym);
  // Rebuild tables and breakdown from scratch (drift/coherence audit).
  // Returns max abs deviation of the maintained breakdown from the rebuild.
  double audit();

  const CountMatrix& y_counts() const { return cy_; }
  const CountMatrix& z_counts() const { return cz_; }
  const JointCountMatrix& joint_counts() const { return cj_; }

 private:
  Sequence x_, y_, z_, w_;
  LagrangianWeights wts_;
  DistortionMeasure d_;
  int k_, k1_;
  CountMatrix cy_, cz_;
  JointCountMatrix cj_;
  EnergyBreakdown energy_;
};

}  // namespace mdc

#endif  // MDC_ENERGY_HPP
