#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "mdc/stats.hpp"

using namespace mdc;

namespace {

Sequence seq(std::initializer_list<int> syms, int a = 2) {
  Sequence s;
  s.alphabet = a;
  for (int v : syms) s.symbols.push_back(static_cast<std::uint8_t>(v));
  return s;
}

Sequence random_seq(std::mt19937_64& rng, int n, int a) {
  Sequence s;
  s.alphabet = a;
  for (int i = 0; i < n; ++i) s.symbols.push_back(static_cast<std::uint8_t>(rng() % a));
  return s;
}

// Independent oracle: direct double loop over positions and contexts.
double oracle_hk(const Sequence& y, int k) {
  const int n = y.size();
  std::map<std::vector<int>, std::vector<double>> table;
  for (int i = 0; i < n; ++i) {
    std::vector<int> ctx;
    for (int t = k; t >= 1; --t) ctx.push_back(y.at_cyclic(i - t));
    auto& col = table[ctx];
    if (col.empty()) col.assign(static_cast<std::size_t>(y.alphabet), 0.0);
    col[y.symbols[static_cast<std::size_t>(i)]] += 1.0;
  }
  double h = 0.0;
  for (const auto& [ctx, col] : table) {
    double nb = 0.0;
    for (double c : col) nb += c;
    double hb = 0.0;
    for (double c : col)
      if (c > 0.0) hb += (c / nb) * std::log2(nb / c);
    h += (nb / n) * hb;
  }
  return h;
}

double oracle_hkk1(const Sequence& w, const Sequence& y, const Sequence& z, int k, int k1) {
  const int n = w.size();
  std::map<std::vector<int>, std::vector<double>> table;
  for (int i = 0; i < n; ++i) {
    std::vector<int> ctx;
    for (int t = k; t >= 1; --t) ctx.push_back(w.at_cyclic(i - t));
    ctx.push_back(-1);
    for (int t = -k1; t <= k1; ++t) ctx.push_back(y.at_cyclic(i + t));
    ctx.push_back(-2);
    for (int t = -k1; t <= k1; ++t) ctx.push_back(z.at_cyclic(i + t));
    auto& col = table[ctx];
    if (col.empty()) col.assign(static_cast<std::size_t>(w.alphabet), 0.0);
    col[w.symbols[static_cast<std::size_t>(i)]] += 1.0;
  }
  double h = 0.0;
  for (const auto& [ctx, col] : table) {
    double nb = 0.0;
    for (double c : col) nb += c;
    double hb = 0.0;
    for (double c : col)
      if (c > 0.0) hb += (c / nb) * std::log2(nb / c);
    h += (nb / n) * hb;
  }
  return h;
}

}  // namespace

TEST_CASE("entropy_functional basics") {
  std::vector<std::int64_t> uniform{1, 1};
  CHECK(entropy_functional(uniform) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<std::int64_t> zero{0, 0};
  CHECK(entropy_functional(zero) == 0.0);
  std::vector<std::int64_t> skew{3, 1};
  CHECK(entropy_functional(skew) == doctest::Approx(0.811278124459).epsilon(1e-9));
  std::vector<std::int64_t> neg{1, -1};
  CHECK_THROWS_AS(entropy_functional(neg), std::invalid_argument);
}

TEST_CASE("build_counts small examples") {
  const auto y = seq({0, 0, 1, 1});
  CountMatrix m(y, 1);
  REQUIRE(m.table().size() == 2);
  CHECK(m.table().at(0) == std::vector<std::int64_t>{1, 1});
  CHECK(m.table().at(1) == std::vector<std::int64_t>{1, 1});

  const auto zeros = seq({0, 0, 0, 0});
  CountMatrix m2(zeros, 2);
  REQUIRE(m2.table().size() == 1);
  CHECK(m2.table().at(0) == std::vector<std::int64_t>{4, 0});

  CHECK_THROWS_AS(CountMatrix(y, 4), std::invalid_argument);
}

TEST_CASE("counts are rotation invariant") {
  std::mt19937_64 rng(7);
  const auto y = random_seq(rng, 17, 3);
  const CountMatrix base(y, 2);
  for (int j = 1; j < 17; ++j) {
    CountMatrix rot(rotate(y, j), 2);
    CHECK(base.same_counts(rot));
    CHECK(base.conditional_entropy() == rot.conditional_entropy());
  }
}

TEST_CASE("conditional_entropy examples") {
  CHECK(conditional_entropy(seq({0, 0, 0, 0}), 1) == 0.0);
  CHECK(conditional_entropy(seq({0, 0, 1, 1}), 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conditional_entropy(seq({0, 1, 0, 1}), 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conditional_entropy matches oracle on random instances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int a = 2 + static_cast<int>(rng() % 2);
    const auto y = random_seq(rng, 24 + static_cast<int>(rng() % 20), a);
    const int k = static_cast<int>(rng() % 4);
    CHECK(conditional_entropy(y, k) == doctest::Approx(oracle_hk(y, k)).epsilon(1e-12));
  }
}

TEST_CASE("joint counts examples") {
  const auto zeros = seq({0, 0, 0, 0});
  JointCountMatrix j(zeros, zeros, zeros, 1, 0);
  REQUIRE(j.table().size() == 1);
  CHECK(j.table().begin()->second == std::vector<std::int64_t>{4, 0});

  const auto w = seq({0, 1, 0, 1});
  JointCountMatrix j2(w, zeros, zeros, 0, 0);
  REQUIRE(j2.table().size() == 1);
  CHECK(j2.table().begin()->second == std::vector<std::int64_t>{2, 2});
  CHECK(j2.conditional_entropy() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(JointCountMatrix(w, seq({0, 0}), zeros, 1, 0), std::invalid_argument);
}

TEST_CASE("w determined by its own y-window center has zero joint entropy") {
  std::mt19937_64 rng(3);
  const auto y = random_seq(rng, 32, 2);
  const auto z = random_seq(rng, 32, 2);
  for (int k1 : {0, 1, 2}) {
    JointCountMatrix j(y, y, z, 3, k1);
    CHECK(j.conditional_entropy() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("joint entropy is symmetric under swapping the side sequences") {
  std::mt19937_64 rng(5);
  const auto w = random_seq(rng, 30, 2);
  const auto y = random_seq(rng, 30, 2);
  const auto z = random_seq(rng, 30, 2);
  CHECK(conditional_entropy_joint(w, y, z, 2, 1) ==
        doctest::Approx(conditional_entropy_joint(w, z, y, 2, 1)).epsilon(1e-12));
}

TEST_CASE("joint entropy matches oracle on random instances") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 20 + static_cast<int>(rng() % 20);
    const auto w = random_seq(rng, n, 2);
    const auto y = random_seq(rng, n, 2);
    const auto z = random_seq(rng, n, 2);
    const int k1 = static_cast<int>(rng() % 2);
    const int k = k1 + static_cast<int>(rng() % 3);
    CHECK(conditional_entropy_joint(w, y, z, k, k1) ==
          doctest::Approx(oracle_hkk1(w, y, z, k, k1)).epsilon(1e-12));
  }
}

TEST_CASE("substitution: self-substitution is a no-op") {
  std::mt19937_64 rng(17);
  auto y = random_seq(rng, 16, 2);
  CountMatrix m(y, 2);
  const int pos = 5;
  CHECK(m.substitution_entropy_delta(y, pos, y.symbols[5]) == 0.0);
  const DeltaSet d = m.apply_substitution(y, pos, y.symbols[5]);
  CHECK(d.empty());
}

TEST_CASE("incremental update equals rebuild: CountMatrix") {
  std::mt19937_64 rng(19);
  auto y = random_seq(rng, 32, 2);
  CountMatrix m(y, 3);
  for (int step = 0; step < 500; ++step) {
    const int pos = static_cast<int>(rng() % 32);
    const int sym = static_cast<int>(rng() % 2);
    m.apply_substitution(y, pos, sym);
    y.symbols[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(sym);
    const CountMatrix fresh(y, 3);
    REQUIRE(m.same_counts(fresh));
    REQUIRE(m.count_grand_total() == 32);
  }
  CHECK(m.conditional_entropy() ==
        doctest::Approx(m.conditional_entropy_exact()).epsilon(1e-12));
}

TEST_CASE("incremental update equals rebuild: JointCountMatrix, all roles") {
  std::mt19937_64 rng(23);
  const int n = 28;
  auto w = random_seq(rng, n, 2);
  auto y = random_seq(rng, n, 2);
  auto z = random_seq(rng, n, 2);
  JointCountMatrix m(w, y, z, 3, 1);
  for (int step = 0; step < 600; ++step) {
    const Site site = static_cast<Site>(rng() % 3);
    const int pos = static_cast<int>(rng() % n);
    const int sym = static_cast<int>(rng() % 2);
    m.apply_substitution(site, w, y, z, pos, sym);
    Sequence& target = site == Site::Y ? y : (site == Site::Z ? z : w);
    target.symbols[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(sym);
    const JointCountMatrix fresh(w, y, z, 3, 1);
    REQUIRE(m.same_counts(fresh));
    REQUIRE(m.count_grand_total() == n);
  }
  CHECK(m.conditional_entropy() ==
        doctest::Approx(m.conditional_entropy_exact()).epsilon(1e-12));
}

TEST_CASE("substitution delta equals entropy difference of the rebuild") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    auto y = random_seq(rng, 32, 2);
    CountMatrix m(y, 3);
    const int pos = static_cast<int>(rng() % 32);
    const int sym = static_cast<int>(rng() % 2);
    const double delta = m.substitution_entropy_delta(y, pos, sym);
    Sequence y2 = y;
    y2.symbols[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(sym);
    const double expected = conditional_entropy(y2, 3) - conditional_entropy(y, 3);
    CHECK(delta == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("order monotonicity: H_{k+1} <= H_k") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto y = random_seq(rng, 64, 2);
    double prev = conditional_entropy(y, 0);
    CHECK(prev <= std::log2(2.0) + 1e-12);
    CHECK(prev >= 0.0);
    for (int k = 1; k <= 5; ++k) {
      const double h = conditional_entropy(y, k);
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
  }
}

TEST_CASE("invalid substitution arguments are rejected") {
  auto y = seq({0, 1, 0, 1});
  CountMatrix m(y, 1);
  CHECK_THROWS_AS(m.apply_substitution(y, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(m.apply_substitution(y, 0, 2), std::invalid_argument);
}
