#include "mdc/annealer.hpp"

#include <cmath>
#include <stdexcept>

namespace mdc {

AnnealSchedule AnnealSchedule::logarithmic(double t0, int n) {
  if (t0 <= 0.0) throw std::invalid_argument("AnnealSchedule: T0 must be > 0");
  if (n < 1) throw std::invalid_argument("AnnealSchedule: n must be >= 1");
  return AnnealSchedule(Kind::Logarithmic, t0, 0.0, n);
}

AnnealSchedule AnnealSchedule::power_law(double c, double exponent) {
  if (c <= 0.0 || exponent < 0.0) throw std::invalid_argument("AnnealSchedule: bad power-law parameters");
  return AnnealSchedule(Kind::PowerLaw, c, exponent, 0);
}

AnnealSchedule AnnealSchedule::constant(double beta) {
  if (beta < 0.0) throw std::invalid_argument("AnnealSchedule: beta must be >= 0");
  return AnnealSchedule(Kind::Constant, beta, 0.0, 0);
}

double AnnealSchedule::beta(std::uint64_t t) const {
  switch (kind_) {
    case Kind::Logarithmic:
      return std::log(static_cast<double>(t / static_cast<std::uint64_t>(n_)) + 1.0) / a_;
    case Kind::PowerLaw:
      return a_ * std::pow(static_cast<double>(t), b_);
    case Kind::Constant:
    default:
      return a_;
  }
}

namespace {

// Platform-independent deterministic draws from a mt19937_64 stream.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(std::mt19937_64& rng, int n) {
  // rejection sampling, unbiased
  const std::uint64_t bound = UINT64_MAX - UINT64_MAX % static_cast<std::uint64_t>(n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= bound);
  return static_cast<int>(v % static_cast<std::uint64_t>(n));
}

int sample_pmf(std::mt19937_64& rng, const std::vector<double>& pmf) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < pmf.size(); ++a) {
    acc += pmf[a];
    if (u < acc) return static_cast<int>(a);
  }
  return static_cast<int>(pmf.size()) - 1;
}

}  // namespace

std::vector<double> conditional_pmf(const AnnealState& state, Site site, int pos, double beta) {
  if (beta < 0.0) throw std::invalid_argument("conditional_pmf: beta must be >= 0");
  const int alphabet = state.source().alphabet;
  std::vector<double> deltas(static_cast<std::size_t>(alphabet));
  double dmin = 0.0;
  for (int a = 0; a < alphabet; ++a) {
    deltas[static_cast<std::size_t>(a)] = state.energy_delta(site, pos, a);
    dmin = std::min(dmin, deltas[static_cast<std::size_t>(a)]);
  }
  std::vector<double> pmf(static_cast<std::size_t>(alphabet));
  double sum = 0.0;
  for (int a = 0; a < alphabet; ++a) {
    const double p = std::exp(-beta * (deltas[static_cast<std::size_t>(a)] - dmin));
    pmf[static_cast<std::size_t>(a)] = p;
    sum += p;
  }
  for (auto& p : pmf) p /= sum;
  return pmf;
}

AnnealReport anneal(const Sequence& x, const LagrangianWeights& wts, const DistortionMeasure& d,
                    int k, int k1, const AnnealSchedule& schedule, std::uint64_t iterations,
                    std::uint64_t seed) {
  AnnealState state(x, wts, d, k, k1);
  std::mt19937_64 rng(seed);
  const int n = x.size();

  AnnealReport report;
  report.iterations = iterations;
  report.seed = seed;
  report.trace.push_back(state.breakdown().total);

  for (std::uint64_t t = 1; t <= iterations; ++t) {
    const double beta = schedule.beta(t);
    const int pos = uniform_int(rng, n);
    for (Site site : {Site::Y, Site::Z, Site::W}) {
      const auto pmf = conditional_pmf(state, site, pos, beta);
      state.commit(site, pos, sample_pmf(rng, pmf));
    }
    if (t % static_cast<std::uint64_t>(n) == 0) {
      state.audit();  // resync maintained breakdown against a full rebuild
      report.trace.push_back(state.breakdown().total);
    }
  }
  state.audit();
  report.trace.back() = state.breakdown().total;
  report.final_energy = state.breakdown();
  report.xhat1 = state.y();
  report.xhat2 = state.z();
  report.xhat0 = state.w();
  return report;
}

ExhaustiveResult exhaustive_minimize(const Sequence& x, const LagrangianWeights& wts,
                                     const DistortionMeasure& d, int k, int k1) {
  const int n = x.size();
  const int alphabet = x.alphabet;
  const double total_bits = 3.0 * n * std::log2(static_cast<double>(alphabet));
  if (total_bits > 24.0) throw std::invalid_argument("exhaustive_minimize: instance too large");

  const std::uint64_t per_seq = [&] {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<std::uint64_t>(alphabet);
    return r;
  }();

  auto unpack = [&](std::uint64_t code) {
    // lexicographic order: symbol 0 is the most significant digit
    Sequence s;
    s.alphabet = alphabet;
    s.symbols.resize(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      s.symbols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % alphabet);
      code /= static_cast<std::uint64_t>(alphabet);
    }
    return s;
  };

  ExhaustiveResult best;
  bool have = false;
  for (std::uint64_t cy = 0; cy < per_seq; ++cy) {
    const Sequence y = unpack(cy);
    for (std::uint64_t cz = 0; cz < per_seq; ++cz) {
      const Sequence z = unpack(cz);
      for (std::uint64_t cw = 0; cw < per_seq; ++cw) {
        const Sequence w = unpack(cw);
        const EnergyBreakdown e = compute_energy(x, y, z, w, wts, d, k, k1);
        if (!have || e.total < best.energy) {
          best = ExhaustiveResult{y, z, w, e.total, e};
          have = true;
        }
      }
    }
  }
  return best;
}

}  // namespace mdc
