#ifndef MDC_STATS_HPP
#define MDC_STATS_HPP

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "mdc/sequence.hpp"

namespace mdc {

using ContextKey = std::uint64_t;

/// Entropy (bits) of the pmf proportional to a nonnegative count vector.
/// Zero vector maps to 0; 0*log 0 terms are 0.
double entropy_functional(std::span<const std::int64_t> v);

/// Touched context record produced by a single-symbol substitution:
/// the per-symbol count change for one context key.
struct ContextDelta {
  ContextKey key;
  std::vector<std::int64_t> change;  // length A, sums to anything in [-.., ..]
};

using DeltaSet = std::vector<ContextDelta>;

namespace detail {
// Shared sparse table machinery: context -> integer count column.
class SparseCounts {
 public:
  SparseCounts(int alphabet, int total) : alphabet_(alphabet), total_(total) {}

  // Sum over occupied contexts of column_total * H(column), in bits.
  long double weight_sum() const { return weight_sum_; }
  long double weight_sum_exact() const;

  void add(ContextKey key, int symbol);  // build-time, keeps weight_sum_ in sync

  // Hypothetical change of weight_sum under the delta set; table untouched.
  double weight_delta(const DeltaSet& d) const;
  // Commit the delta set; updates counts and weight_sum_.
  void apply(const DeltaSet& d);

  const std::unordered_map<ContextKey, std::vector<std::int64_t>>& table() const { return table_; }
  int alphabet() const { return alphabet_; }
  int total() const { return total_; }
  bool same_counts(const SparseCounts& o) const;
  std::int64_t count_grand_total() const;

 private:
  int alphabet_;
  int total_;
  std::unordered_map<ContextKey, std::vector<std::int64_t>> table_;
  long double weight_sum_ = 0.0L;
};
}  // namespace detail

/// Order-k empirical context counts of a sequence (un-normalized Eq.-style
/// entries: entry (context b, symbol beta) counts cyclic positions i with
/// y_{i-k}^{i-1} = b and y_i = beta).
class CountMatrix {
 public:
  CountMatrix(const Sequence& y, int k);

  int order() const { return k_; }
  int alphabet() const { return counts_.alphabet(); }
  int total() const { return counts_.total(); }

  // H(Y_{k+1} | Y^k) of the empirical law, bits per symbol.
  double conditional_entropy() const { return static_cast<double>(counts_.weight_sum()) / total(); }
  double conditional_entropy_exact() const {
    return static_cast<double>(counts_.weight_sum_exact()) / total();
  }

  // Change of conditional_entropy if y[pos] were replaced by sym. `y` must be
  // the sequence the matrix currently describes.
  double substitution_entropy_delta(const Sequence& y, int pos, int sym) const;
  // Commit the substitution into the tables (the caller updates `y` itself).
  // Returns the touched context deltas.
  DeltaSet apply_substitution(const Sequence& y, int pos, int sym);

  const std::unordered_map<ContextKey, std::vector<std::int64_t>>& table() const {
    return counts_.table();
  }
  bool same_counts(const CountMatrix& o) const { return counts_.same_counts(o.counts_); }
  std::int64_t count_grand_total() const { return counts_.count_grand_total(); }

 private:
  DeltaSet collect(const Sequence& y, int pos, int sym) const;

  int k_;
  detail::SparseCounts counts_;
};

enum class Site { Y, Z, W };

/// Joint conditional context counts of w given (y, z): entry
/// (beta, b0, b1, b2) counts positions i with w_i = beta,
/// w_{i-k}^{i-1} = b0, y_{i-k1}^{i+k1} = b1, z_{i-k1}^{i+k1} = b2.
class JointCountMatrix {
 public:
  JointCountMatrix(const Sequence& w, const Sequence& y, const Sequence& z, int k, int k1);

  int order() const { return k_; }
  int side_order() const { return k1_; }
  int alphabet() const { return counts_.alphabet(); }
  int total() const { return counts_.total(); }

  double conditional_entropy() const { return static_cast<double>(counts_.weight_sum()) / total(); }
  double conditional_entropy_exact() const {
    return static_cast<double>(counts_.weight_sum_exact()) / total();
  }

  // Entropy change if sequence `site` had position pos replaced by sym.
  // Sequences must be the ones the matrix currently describes.
  double substitution_entropy_delta(Site site, const Sequence& w, const Sequence& y,
                                    const Sequence& z, int pos, int sym) const;
  DeltaSet apply_substitution(Site site, const Sequence& w, const Sequence& y, const Sequence& z,
                              int pos, int sym);

  const std::unordered_map<ContextKey, std::vector<std::int64_t>>& table() const {
    return counts_.table();
  }
  bool same_counts(const JointCountMatrix& o) const { return counts_.same_counts(o.counts_); }
  std::int64_t count_grand_total() const { return counts_.count_grand_total(); }

 private:
  ContextKey key_at(int i, const Sequence& w, const Sequence& y, const Sequence& z, Site sub_site,
                    int sub_pos, int sub_sym) const;
  DeltaSet collect(Site site, const Sequence& w, const Sequence& y, const Sequence& z, int pos,
                   int sym) const;

  int k_, k1_;
  std::uint64_t b0_radix_, b_side_radix_;
  detail::SparseCounts counts_;
};

/// build_counts / conditional_entropy convenience wrappers.
inline CountMatrix build_counts(const Sequence& y, int k) { return CountMatrix(y, k); }
inline double conditional_entropy(const Sequence& y, int k) {
  return CountMatrix(y, k).conditional_entropy();
}
JointCountMatrix build_joint_counts(const Sequence& w, const Sequence& y, const Sequence& z, int k,
                                    int k1);
inline double conditional_entropy_joint(const Sequence& w, const Sequence& y, const Sequence& z,
                                        int k, int k1) {
  return build_joint_counts(w, y, z, k, k1).conditional_entropy();
}

}  // namespace mdc

#endif  // MDC_STATS_HPP
