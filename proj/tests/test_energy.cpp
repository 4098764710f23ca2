#include <cmath>
#include <random>

#include "doctest.h"
#include "mdc/energy.hpp"

using namespace mdc;

namespace {

Sequence random_seq(std::mt19937_64& rng, int n, int a) {
  Sequence s;
  s.alphabet = a;
  for (int i = 0; i < n; ++i) s.symbols.push_back(static_cast<std::uint8_t>(rng() % a));
  return s;
}

Sequence constant_seq(int n, int a, int sym) {
  Sequence s;
  s.alphabet = a;
  s.symbols.assign(static_cast<std::size_t>(n), static_cast<std::uint8_t>(sym));
  return s;
}

}  // namespace

TEST_CASE("average_distortion") {
  const auto d = DistortionMeasure::hamming(2);
  std::mt19937_64 rng(1);
  const auto x = random_seq(rng, 20, 2);
  CHECK(average_distortion(x, x, d) == 0.0);
  Sequence a = constant_seq(4, 2, 0);
  Sequence b = a;
  b.symbols = {0, 1, 0, 1};
  CHECK(average_distortion(a, b, d) == doctest::Approx(0.5));
  CHECK_THROWS_AS(average_distortion(a, constant_seq(5, 2, 0), d), std::invalid_argument);
}

TEST_CASE("compute_energy basics") {
  const auto d = DistortionMeasure::hamming(2);
  const LagrangianWeights unit;
  std::mt19937_64 rng(2);
  const auto x = random_seq(rng, 64, 2);

  SUBCASE("triple equal to the source: only the two side entropies remain") {
    const auto e = compute_energy(x, x, x, x, unit, d, 3, 1);
    CHECK(e.d_y == 0.0);
    CHECK(e.d_z == 0.0);
    CHECK(e.d_w == 0.0);
    CHECK(e.hkk1_w == doctest::Approx(0.0).epsilon(1e-12));
    const double hk = CountMatrix(x, 3).conditional_entropy();
    CHECK(e.total == doctest::Approx(2.0 * hk).epsilon(1e-12));
  }

  SUBCASE("all-zero everything is free") {
    const auto z = constant_seq(16, 2, 0);
    CHECK(compute_energy(z, z, z, z, unit, d, 2, 1).total == doctest::Approx(0.0));
  }

  SUBCASE("reported component values recombine under unit weights") {
    EnergyBreakdown e;
    e.hk_y = 0.5503;
    e.hk_z = 0.5586;
    e.hkk1_w = 0.0038;
    e.d_y = 0.0505;
    e.d_z = 0.0483;
    e.d_w = 0.0036;
    CHECK(e.recombine(unit) == doctest::Approx(1.2151).epsilon(1e-12));
  }
}

TEST_CASE("breakdown recombines to total") {
  std::mt19937_64 rng(3);
  LagrangianWeights w{0.7, 1.3, 0.2, 2.0, 0.1, 1.1};
  const auto d = DistortionMeasure::hamming(2);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_seq(rng, 40, 2);
    const auto y = random_seq(rng, 40, 2);
    const auto z = random_seq(rng, 40, 2);
    const auto v = random_seq(rng, 40, 2);
    const auto e = compute_energy(x, y, z, v, w, d, 2, 1);
    CHECK(e.total == doctest::Approx(e.recombine(w)).epsilon(1e-12));
    CHECK(e.total >= 0.0);
  }
}

TEST_CASE("weight linearity") {
  std::mt19937_64 rng(4);
  const auto d = DistortionMeasure::hamming(2);
  const auto x = random_seq(rng, 32, 2);
  const auto y = random_seq(rng, 32, 2);
  const auto z = random_seq(rng, 32, 2);
  const auto v = random_seq(rng, 32, 2);
  LagrangianWeights w{0.5, 1.0, 0.25, 2.0, 0.75, 1.5};
  LagrangianWeights w3{1.5, 3.0, 0.75, 6.0, 2.25, 4.5};
  const double e1 = compute_energy(x, y, z, v, w, d, 2, 0).total;
  const double e3 = compute_energy(x, y, z, v, w3, d, 2, 0).total;
  CHECK(e3 == doctest::Approx(3.0 * e1).epsilon(1e-12));
}

TEST_CASE("energy_delta equals full recompute difference") {
  std::mt19937_64 rng(5);
  const auto d = DistortionMeasure::hamming(2);
  LagrangianWeights w{1.0, 0.8, 1.2, 0.5, 1.5, 1.0};
  const int n = 32;
  const auto x = random_seq(rng, n, 2);
  AnnealState state(x, w, d, 2, 1);
  // wander a bit so the triple is no longer the source
  for (int t = 0; t < 200; ++t)
    state.commit(static_cast<Site>(rng() % 3), static_cast<int>(rng() % n),
                 static_cast<int>(rng() % 2));
  for (int t = 0; t < 100; ++t) {
    const Site site = static_cast<Site>(rng() % 3);
    const int pos = static_cast<int>(rng() % n);
    const int sym = static_cast<int>(rng() % 2);
    const double delta = state.energy_delta(site, pos, sym);
    Sequence y = state.y(), z = state.z(), v = state.w();
    Sequence& target = site == Site::Y ? y : (site == Site::Z ? z : v);
    target.symbols[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(sym);
    const double before = compute_energy(x, state.y(), state.z(), state.w(), w, d, 2, 1).total;
    const double after = compute_energy(x, y, z, v, w, d, 2, 1).total;
    CHECK(delta == doctest::Approx(after - before).epsilon(1e-9));
  }
}

TEST_CASE("energy_delta with pure distortion weights") {
  std::mt19937_64 rng(6);
  const auto d = DistortionMeasure::hamming(2);
  LagrangianWeights w{0.0, 0.0, 0.0, 2.0, 0.0, 0.0};
  const int n = 16;
  const auto x = random_seq(rng, n, 2);
  AnnealState state(x, w, d, 1, 0);
  for (int pos = 0; pos < n; ++pos)
    for (int a = 0; a < 2; ++a) {
      const double expected =
          2.0 * (d(x.symbols[static_cast<std::size_t>(pos)], a) -
                 d(x.symbols[static_cast<std::size_t>(pos)], state.y().symbols[static_cast<std::size_t>(pos)])) /
          n;
      CHECK(state.energy_delta(Site::Y, pos, a) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("maintained breakdown stays coherent under commits") {
  std::mt19937_64 rng(7);
  const auto d = DistortionMeasure::hamming(2);
  LagrangianWeights w{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  const auto x = random_seq(rng, 48, 2);
  AnnealState state(x, w, d, 3, 1);
  for (int t = 0; t < 1000; ++t)
    state.commit(static_cast<Site>(rng() % 3), static_cast<int>(rng() % 48),
                 static_cast<int>(rng() % 2));
  CHECK(state.audit() < 1e-9);
}

TEST_CASE("delta_bound dominates sampled deltas") {
  std::mt19937_64 rng(8);
  const auto d = DistortionMeasure::hamming(2);
  SUBCASE("zero weights give zero bounds") {
    LagrangianWeights w{0, 0, 0, 0, 0, 0};
    const auto b = delta_bound(w, d, 3, 1, 64, 2);
    CHECK(b.d1 == 0.0);
    CHECK(b.d2 == 0.0);
    CHECK(b.d0 == 0.0);
  }
  SUBCASE("bound scales linearly in each weight") {
    LagrangianWeights w{1, 1, 1, 1, 1, 1};
    LagrangianWeights w2{2, 1, 1, 1, 1, 1};
    const auto b = delta_bound(w, d, 3, 1, 64, 2);
    const auto b2 = delta_bound(w2, d, 3, 1, 64, 2);
    const auto bz = delta_bound(LagrangianWeights{0, 1, 1, 1, 1, 1}, d, 3, 1, 64, 2);
    CHECK(b2.d1 - bz.d1 == doctest::Approx(2.0 * (b.d1 - bz.d1)).epsilon(1e-12));
  }
  SUBCASE("sampled deltas never exceed the bound") {
    for (int inst = 0; inst < 5; ++inst) {
      LagrangianWeights w{1.3, 0.6, 1.1, 0.9, 1.7, 0.4};
      const int n = 32;
      const auto x = random_seq(rng, n, 2);
      AnnealState state(x, w, d, 3, 1);
      const auto b = delta_bound(w, d, 3, 1, n, 2);
      for (int t = 0; t < 400; ++t) {
        const Site site = static_cast<Site>(rng() % 3);
        const int pos = static_cast<int>(rng() % n);
        const int sym = static_cast<int>(rng() % 2);
        const double delta = state.energy_delta(site, pos, sym);
        const double bound = site == Site::Y ? b.d1 : (site == Site::Z ? b.d2 : b.d0);
        CHECK(std::abs(delta) <= bound + 1e-12);
        state.commit(site, pos, sym);
      }
    }
  }
}
