#include "mdc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace mdc {

namespace {

// total * H(column) in bits = sum_i v_i log2(total / v_i).
double column_weight(std::span<const std::int64_t> v) {
  std::int64_t total = 0;
  for (auto x : v) total += x;
  if (total == 0) return 0.0;
  double s = 0.0;
  const double lt = std::log2(static_cast<double>(total));
  for (auto x : v)
    if (x > 0) s += static_cast<double>(x) * (lt - std::log2(static_cast<double>(x)));
  return s;
}

void check_radix(double bits, const char* what) {
  if (bits > 62.0) throw std::invalid_argument(std::string(what) + ": context space exceeds 2^62");
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

double entropy_functional(std::span<const std::int64_t> v) {
  std::int64_t total = 0;
  for (auto x : v) {
    if (x < 0) throw std::invalid_argument("entropy_functional: negative count");
    total += x;
  }
  if (total == 0) return 0.0;
  return column_weight(v) / static_cast<double>(total);
}

namespace detail {

long double SparseCounts::weight_sum_exact() const {
  long double s = 0.0L;
  for (const auto& [key, col] : table_) s += column_weight(col);
  return s;
}

void SparseCounts::add(ContextKey key, int symbol) {
  auto& col = table_[key];
  if (col.empty()) col.assign(static_cast<std::size_t>(alphabet_), 0);
  weight_sum_ -= column_weight(col);
  ++col[static_cast<std::size_t>(symbol)];
  weight_sum_ += column_weight(col);
}

double SparseCounts::weight_delta(const DeltaSet& d) const {
  double diff = 0.0;
  std::vector<std::int64_t> scratch(static_cast<std::size_t>(alphabet_));
  for (const auto& cd : d) {
    auto it = table_.find(cd.key);
    double old_w = 0.0;
    if (it != table_.end()) {
      scratch = it->second;
      old_w = column_weight(scratch);
    } else {
      scratch.assign(static_cast<std::size_t>(alphabet_), 0);
    }
    for (int a = 0; a < alphabet_; ++a) scratch[static_cast<std::size_t>(a)] += cd.change[static_cast<std::size_t>(a)];
    diff += column_weight(scratch) - old_w;
  }
  return diff;
}

void SparseCounts::apply(const DeltaSet& d) {
  for (const auto& cd : d) {
    auto& col = table_[cd.key];
    if (col.empty()) col.assign(static_cast<std::size_t>(alphabet_), 0);
    weight_sum_ -= column_weight(col);
    bool any = false;
    for (int a = 0; a < alphabet_; ++a) {
      auto& c = col[static_cast<std::size_t>(a)];
      c += cd.change[static_cast<std::size_t>(a)];
      if (c < 0) throw std::logic_error("SparseCounts: count went negative");
      any = any || c != 0;
    }
    if (any)
      weight_sum_ += column_weight(col);
    else
      table_.erase(cd.key);
  }
}

bool SparseCounts::same_counts(const SparseCounts& o) const { return table_ == o.table_; }

std::int64_t SparseCounts::count_grand_total() const {
  std::int64_t t = 0;
  for (const auto& [k, col] : table_)
    for (auto c : col) t += c;
  return t;
}

}  // namespace detail

namespace {

// Aggregates (key, symbol, +/-1) events into unique-key deltas.
class DeltaBuilder {
 public:
  explicit DeltaBuilder(int alphabet) : alphabet_(alphabet) {}
  void event(ContextKey key, int symbol, std::int64_t amount) {
    for (auto& cd : set_)
      if (cd.key == key) {
        cd.change[static_cast<std::size_t>(symbol)] += amount;
        return;
      }
    ContextDelta cd{key, std::vector<std::int64_t>(static_cast<std::size_t>(alphabet_), 0)};
    cd.change[static_cast<std::size_t>(symbol)] = amount;
    set_.push_back(std::move(cd));
  }
  DeltaSet take() {
    // drop all-zero entries (self-substitution and cancelling moves)
    DeltaSet out;
    for (auto& cd : set_) {
      bool any = false;
      for (auto c : cd.change) any = any || c != 0;
      if (any) out.push_back(std::move(cd));
    }
    return out;
  }

 private:
  int alphabet_;
  DeltaSet set_;
};

void check_sub_args(int n, int alphabet, int pos, int sym) {
  if (pos < 0 || pos >= n) throw std::invalid_argument("substitution position out of range");
  if (sym < 0 || sym >= alphabet) throw std::invalid_argument("substitution symbol out of alphabet");
}

}  // namespace

// ---------------------------------------------------------------- CountMatrix

CountMatrix::CountMatrix(const Sequence& y, int k)
    : k_(k), counts_(y.alphabet, y.size()) {
  if (k < 0 || k >= y.size()) throw std::invalid_argument("CountMatrix: need 0 <= k < n");
  check_radix(k * std::log2(static_cast<double>(y.alphabet)), "CountMatrix");
  const int n = y.size();
  for (int i = 0; i < n; ++i) {
    ContextKey key = 0;
    std::uint64_t radix = 1;
    for (int t = 1; t <= k_; ++t) {
      key += radix * y.at_cyclic(i - t);
      radix *= static_cast<std::uint64_t>(y.alphabet);
    }
    counts_.add(key, y.symbols[static_cast<std::size_t>(i)]);
  }
}

DeltaSet CountMatrix::collect(const Sequence& y, int pos, int sym) const {
  const int n = y.size();
  check_sub_args(n, y.alphabet, pos, sym);
  DeltaBuilder db(y.alphabet);
  auto value = [&](long long i, bool substituted) -> int {
    long long j = i % n;
    if (j < 0) j += n;
    if (substituted && j == pos) return sym;
    return y.symbols[static_cast<std::size_t>(j)];
  };
  for (int t = 0; t <= k_; ++t) {
    const int j = (pos + t) % n;
    ContextKey ko = 0, kn = 0;
    std::uint64_t radix = 1;
    for (int u = 1; u <= k_; ++u) {
      ko += radix * static_cast<std::uint64_t>(value(j - u, false));
      kn += radix * static_cast<std::uint64_t>(value(j - u, true));
      radix *= static_cast<std::uint64_t>(y.alphabet);
    }
    db.event(ko, value(j, false), -1);
    db.event(kn, value(j, true), +1);
  }
  return db.take();
}

double CountMatrix::substitution_entropy_delta(const Sequence& y, int pos, int sym) const {
  return counts_.weight_delta(collect(y, pos, sym)) / static_cast<double>(total());
}

DeltaSet CountMatrix::apply_substitution(const Sequence& y, int pos, int sym) {
  DeltaSet d = collect(y, pos, sym);
  counts_.apply(d);
  return d;
}

// ----------------------------------------------------------- JointCountMatrix

JointCountMatrix::JointCountMatrix(const Sequence& w, const Sequence& y, const Sequence& z, int k,
                                   int k1)
    : k_(k), k1_(k1), counts_(w.alphabet, w.size()) {
  const int n = w.size();
  if (y.size() != n || z.size() != n)
    throw std::invalid_argument("JointCountMatrix: sequence length mismatch");
  if (y.alphabet != w.alphabet || z.alphabet != w.alphabet)
    throw std::invalid_argument("JointCountMatrix: alphabet mismatch");
  if (k1 < 0 || k < k1 || k >= n) throw std::invalid_argument("JointCountMatrix: need 0 <= k1 <= k < n");
  if (2 * k1 + 1 > n) throw std::invalid_argument("JointCountMatrix: need 2*k1+1 <= n");
  const double bits = (k + 2 * (2 * k1 + 1)) * std::log2(static_cast<double>(w.alphabet));
  check_radix(bits, "JointCountMatrix");
  b_side_radix_ = ipow(static_cast<std::uint64_t>(w.alphabet), 2 * k1 + 1);
  b0_radix_ = ipow(static_cast<std::uint64_t>(w.alphabet), k);
  for (int i = 0; i < n; ++i)
    counts_.add(key_at(i, w, y, z, Site::W, -1, 0), w.symbols[static_cast<std::size_t>(i)]);
}

ContextKey JointCountMatrix::key_at(int i, const Sequence& w, const Sequence& y, const Sequence& z,
                                    Site sub_site, int sub_pos, int sub_sym) const {
  const int n = w.size();
  const auto A = static_cast<std::uint64_t>(w.alphabet);
  auto value = [&](const Sequence& s, Site role, long long idx) -> std::uint64_t {
    long long j = idx % n;
    if (j < 0) j += n;
    if (role == sub_site && j == sub_pos) return static_cast<std::uint64_t>(sub_sym);
    return s.symbols[static_cast<std::size_t>(j)];
  };
  std::uint64_t b0 = 0, radix = 1;
  for (int t = 1; t <= k_; ++t) {
    b0 += radix * value(w, Site::W, i - t);
    radix *= A;
  }
  std::uint64_t b1 = 0, b2 = 0;
  radix = 1;
  for (int t = -k1_; t <= k1_; ++t) {
    b1 += radix * value(y, Site::Y, i + t);
    b2 += radix * value(z, Site::Z, i + t);
    radix *= A;
  }
  return (b0 * b_side_radix_ + b1) * b_side_radix_ + b2;
}

DeltaSet JointCountMatrix::collect(Site site, const Sequence& w, const Sequence& y,
                                   const Sequence& z, int pos, int sym) const {
  const int n = w.size();
  check_sub_args(n, w.alphabet, pos, sym);
  DeltaBuilder db(w.alphabet);
  auto touch = [&](int i) {
    const int sym_old = w.at_cyclic(i);
    const int sym_new = (site == Site::W && ((i % n + n) % n) == pos) ? sym : sym_old;
    db.event(key_at(i, w, y, z, Site::W, -1, 0), sym_old, -1);
    db.event(key_at(i, w, y, z, site, pos, sym), sym_new, +1);
  };
  if (site == Site::W) {
    for (int t = 0; t <= k_; ++t) touch((pos + t) % n);
  } else {
    for (int t = -k1_; t <= k1_; ++t) touch(pos + t);
  }
  return db.take();
}

double JointCountMatrix::substitution_entropy_delta(Site site, const Sequence& w, const Sequence& y,
                                                    const Sequence& z, int pos, int sym) const {
  return counts_.weight_delta(collect(site, w, y, z, pos, sym)) / static_cast<double>(total());
}

DeltaSet JointCountMatrix::apply_substitution(Site site, const Sequence& w, const Sequence& y,
                                              const Sequence& z, int pos, int sym) {
  DeltaSet d = collect(site, w, y, z, pos, sym);
  counts_.apply(d);
  return d;
}

JointCountMatrix build_joint_counts(const Sequence& w, const Sequence& y, const Sequence& z, int k,
                                    int k1) {
  return JointCountMatrix(w, y, z, k, k1);
}

}  // namespace mdc
