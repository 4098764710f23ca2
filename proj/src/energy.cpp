#include "mdc/energy.hpp"

#include <algorithm>
#include <cmath>

namespace mdc {

DistortionMeasure::DistortionMeasure(int alphabet, std::vector<double> entries)
    : alphabet_(alphabet), entries_(std::move(entries)) {
  if (alphabet < 2) throw std::invalid_argument("DistortionMeasure: alphabet must be >= 2");
  if (entries_.size() != static_cast<std::size_t>(alphabet) * static_cast<std::size_t>(alphabet))
    throw std::invalid_argument("DistortionMeasure: matrix must be A x A");
  max_ = 0.0;
  for (double e : entries_) {
    if (e < 0.0) throw std::invalid_argument("DistortionMeasure: entries must be >= 0");
    max_ = std::max(max_, e);
  }
}

DistortionMeasure DistortionMeasure::hamming(int alphabet) {
  std::vector<double> m(static_cast<std::size_t>(alphabet) * static_cast<std::size_t>(alphabet), 1.0);
  for (int a = 0; a < alphabet; ++a) m[static_cast<std::size_t>(a * alphabet + a)] = 0.0;
  return DistortionMeasure(alphabet, std::move(m));
}

double average_distortion(const Sequence& x, const Sequence& y, const DistortionMeasure& d) {
  if (x.size() != y.size()) throw std::invalid_argument("average_distortion: length mismatch");
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i)
    s += d(x.symbols[static_cast<std::size_t>(i)], y.symbols[static_cast<std::size_t>(i)]);
  return s / x.size();
}

EnergyBreakdown compute_energy(const Sequence& x, const Sequence& y, const Sequence& z,
                               const Sequence& w, const LagrangianWeights& wts,
                               const DistortionMeasure& d, int k, int k1) {
  wts.validate();
  if (y.size() != x.size() || z.size() != x.size() || w.size() != x.size())
    throw std::invalid_argument("compute_energy: length mismatch");
  EnergyBreakdown e;
  e.hk_y = CountMatrix(y, k).conditional_entropy();
  e.hk_z = CountMatrix(z, k).conditional_entropy();
  e.hkk1_w = JointCountMatrix(w, y, z, k, k1).conditional_entropy();
  e.d_y = average_distortion(x, y, d);
  e.d_z = average_distortion(x, z, d);
  e.d_w = average_distortion(x, w, d);
  e.total = e.recombine(wts);
  return e;
}

DeltaBounds delta_bound(const LagrangianWeights& wts, const DistortionMeasure& d, int k, int k1,
                        int n, int alphabet) {
  wts.validate();
  if (n < 1 || alphabet < 2 || k < 0 || k1 < 0) throw std::invalid_argument("delta_bound: bad parameters");
  // One column event (a count +/-1 on a column of mass <= n) moves the
  // column's total*H contribution by at most log2(n+1) + log2 A <= 2 log2(nA);
  // the entropy term itself by that over n.
  const double per_column = 2.0 * std::log2(static_cast<double>(n) * alphabet) / n;
  const double own = 2.0 * (k + 1) * per_column;       // own count table columns
  const double joint_side = 2.0 * (2 * k1 + 1) * per_column;  // joint columns via b1/b2
  const double joint_central = 2.0 * (k + 1) * per_column;    // joint columns via symbol/b0
  const double dist = d.max_entry() / n;
  DeltaBounds b;
  b.d1 = wts.gamma1 * own + wts.gamma0 * joint_side + wts.alpha1 * dist;
  b.d2 = wts.gamma2 * own + wts.gamma0 * joint_side + wts.alpha2 * dist;
  b.d0 = wts.gamma0 * joint_central + wts.alpha0 * dist;
  return b;
}

// ----------------------------------------------------------------- AnnealState

AnnealState::AnnealState(const Sequence& x, const LagrangianWeights& wts,
                         const DistortionMeasure& d, int k, int k1)
    : x_(x),
      y_(x),
      z_(x),
      w_(x),
      wts_(wts),
      d_(d),
      k_(k),
      k1_(k1),
      cy_(x, k),
      cz_(x, k),
      cj_(x, x, x, k, k1) {
  wts_.validate();
  if (d.alphabet() != x.alphabet) throw std::invalid_argument("AnnealState: distortion alphabet mismatch");
  energy_.hk_y = cy_.conditional_entropy();
  energy_.hk_z = cz_.conditional_entropy();
  energy_.hkk1_w = cj_.conditional_entropy();
  energy_.d_y = energy_.d_z = energy_.d_w = 0.0;  // y = z = w = x
  energy_.total = energy_.recombine(wts_);
}

double AnnealState::energy_delta(Site site, int pos, int sym) const {
  const int n = x_.size();
  const int xi = x_.symbols[static_cast<std::size_t>(pos)];
  switch (site) {
    case Site::Y: {
      if (sym == y_.symbols[static_cast<std::size_t>(pos)]) return 0.0;
      const double dh = cy_.substitution_entropy_delta(y_, pos, sym);
      const double dj = cj_.substitution_entropy_delta(Site::Y, w_, y_, z_, pos, sym);
      const double dd = (d_(xi, sym) - d_(xi, y_.symbols[static_cast<std::size_t>(pos)])) / n;
      return wts_.gamma1 * dh + wts_.gamma0 * dj + wts_.alpha1 * dd;
    }
    case Site::Z: {
      if (sym == z_.symbols[static_cast<std::size_t>(pos)]) return 0.0;
      const double dh = cz_.substitution_entropy_delta(z_, pos, sym);
      const double dj = cj_.substitution_entropy_delta(Site::Z, w_, y_, z_, pos, sym);
      const double dd = (d_(xi, sym) - d_(xi, z_.symbols[static_cast<std::size_t>(pos)])) / n;
      return wts_.gamma2 * dh + wts_.gamma0 * dj + wts_.alpha2 * dd;
    }
    case Site::W:
    default: {
      if (sym == w_.symbols[static_cast<std::size_t>(pos)]) return 0.0;
      const double dj = cj_.substitution_entropy_delta(Site::W, w_, y_, z_, pos, sym);
      const double dd = (d_(xi, sym) - d_(xi, w_.symbols[static_cast<std::size_t>(pos)])) / n;
      return wts_.gamma0 * dj + wts_.alpha0 * dd;
    }
  }
}

void AnnealState::commit(Site site, int pos, int sym) {
  const int n = x_.size();
  const int xi = x_.symbols[static_cast<std::size_t>(pos)];
  Sequence& s = seq(site);
  const int old_sym = s.symbols[static_cast<std::size_t>(pos)];
  if (sym == old_sym) return;
  switch (site) {
    case Site::Y: {
      energy_.hk_y += cy_.substitution_entropy_delta(y_, pos, sym);
      cy_.apply_substitution(y_, pos, sym);
      energy_.hkk1_w += cj_.substitution_entropy_delta(Site::Y, w_, y_, z_, pos, sym);
      cj_.apply_substitution(Site::Y, w_, y_, z_, pos, sym);
      energy_.d_y += (d_(xi, sym) - d_(xi, old_sym)) / n;
      break;
    }
    case Site::Z: {
      energy_.hk_z += cz_.substitution_entropy_delta(z_, pos, sym);
      cz_.apply_substitution(z_, pos, sym);
      energy_.hkk1_w += cj_.substitution_entropy_delta(Site::Z, w_, y_, z_, pos, sym);
      cj_.apply_substitution(Site::Z, w_, y_, z_, pos, sym);
      energy_.d_z += (d_(xi, sym) - d_(xi, old_sym)) / n;
      break;
    }
    case Site::W: {
      energy_.hkk1_w += cj_.substitution_entropy_delta(Site::W, w_, y_, z_, pos, sym);
      cj_.apply_substitution(Site::W, w_, y_, z_, pos, sym);
      energy_.d_w += (d_(xi, sym) - d_(xi, old_sym)) / n;
      break;
    }
  }
  s.symbols[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(sym);
  energy_.total = energy_.recombine(wts_);
}

double AnnealState::audit() {
  EnergyBreakdown fresh = compute_energy(x_, y_, z_, w_, wts_, d_, k_, k1_);
  double dev = 0.0;
  dev = std::max(dev, std::abs(fresh.hk_y - energy_.hk_y));
  dev = std::max(dev, std::abs(fresh.hk_z - energy_.hk_z));
  dev = std::max(dev, std::abs(fresh.hkk1_w - energy_.hkk1_w));
  dev = std::max(dev, std::abs(fresh.d_y - energy_.d_y));
  dev = std::max(dev, std::abs(fresh.d_z - energy_.d_z));
  dev = std::max(dev, std::abs(fresh.d_w - energy_.d_w));
  cy_ = CountMatrix(y_, k_);
  cz_ = CountMatrix(z_, k_);
  cj_ = JointCountMatrix(w_, y_, z_, k_, k1_);
  energy_ = fresh;
  return dev;
}

}  // namespace mdc
