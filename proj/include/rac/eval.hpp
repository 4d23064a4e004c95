#pragma once

#include <span>
#include <vector>

#include "rac/core.hpp"

namespace rac {

// Flat labeling with labels in [0, k), every label used at least once.
struct FlatPartition {
  std::vector<int> labels;
  int k = 0;

  int n() const { return static_cast<int>(labels.size()); }

  bool operator==(const FlatPartition&) const = default;
};

// Relabels arbitrary integers densely by first appearance.
inline FlatPartition densify(std::span<const int> raw) {
  FlatPartition p;
  p.labels.reserve(raw.size());
  std::vector<std::pair<int, int>> seen;  // (raw label, dense label)
  for (int v : raw) {
    int dense = -1;
    for (const auto& [r, d] : seen)
      if (r == v) {
        dense = d;
        break;
      }
    if (dense < 0) {
      dense = static_cast<int>(seen.size());
      seen.emplace_back(v, dense);
    }
    p.labels.push_back(dense);
  }
  p.k = static_cast<int>(seen.size());
  return p;
}

// K_true x K_pred co-occurrence counts with marginals.
class ContingencyTable {
public:
  ContingencyTable(const FlatPartition& truth, const FlatPartition& pred)
      : k_true_(truth.k), k_pred_(pred.k), n_(truth.n()) {
    if (truth.n() != pred.n())
      throw InvalidInput("partitions must label the same number of objects");
    counts_.assign(static_cast<std::size_t>(k_true_) * k_pred_, 0);
    row_sums_.assign(k_true_, 0);
    col_sums_.assign(k_pred_, 0);
    for (int i = 0; i < n_; ++i) {
      const int t = truth.labels[i];
      const int p = pred.labels[i];
      ++counts_[static_cast<std::size_t>(t) * k_pred_ + p];
      ++row_sums_[t];
      ++col_sums_[p];
    }
  }

  int k_true() const { return k_true_; }
  int k_pred() const { return k_pred_; }
  int n() const { return n_; }
  long long count(int t, int p) const {
    return counts_[static_cast<std::size_t>(t) * k_pred_ + p];
  }
  long long row_sum(int t) const { return row_sums_[t]; }
  long long col_sum(int p) const { return col_sums_[p]; }

private:
  int k_true_;
  int k_pred_;
  int n_;
  std::vector<long long> counts_;
  std::vector<long long> row_sums_;
  std::vector<long long> col_sums_;
};

namespace detail {

// Entropy in nats of a count vector; 0 log 0 := 0 throughout.
inline double entropy(const std::vector<long long>& counts, double n) {
  double h = 0.0;
  for (long long c : counts) {
    if (c <= 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

inline double entropy_rows(const ContingencyTable& t) {
  std::vector<long long> c(t.k_true());
  for (int i = 0; i < t.k_true(); ++i) c[i] = t.row_sum(i);
  return entropy(c, t.n());
}

inline double entropy_cols(const ContingencyTable& t) {
  std::vector<long long> c(t.k_pred());
  for (int j = 0; j < t.k_pred(); ++j) c[j] = t.col_sum(j);
  return entropy(c, t.n());
}

inline double mutual_information(const ContingencyTable& t) {
  const double n = t.n();
  double info = 0.0;
  for (int i = 0; i < t.k_true(); ++i) {
    for (int j = 0; j < t.k_pred(); ++j) {
      const long long c = t.count(i, j);
      if (c <= 0) continue;
      const double pij = c / n;
      info += pij * std::log(pij / ((t.row_sum(i) / n) * (t.col_sum(j) / n)));
    }
  }
  return info;
}

// H(row partition | column partition)
inline double conditional_entropy_rows(const ContingencyTable& t) {
  const double n = t.n();
  double h = 0.0;
  for (int i = 0; i < t.k_true(); ++i) {
    for (int j = 0; j < t.k_pred(); ++j) {
      const long long c = t.count(i, j);
      if (c <= 0) continue;
      h -= (c / n) * std::log(static_cast<double>(c) / t.col_sum(j));
    }
  }
  return h;
}

inline double comb2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace detail

// Mutual information normalized by max(H(truth), H(pred)); 1 when both
// entropies vanish (two one-cluster partitions).
inline double nmi(const FlatPartition& truth, const FlatPartition& pred) {
  const ContingencyTable t(truth, pred);
  const double hmax = std::max(detail::entropy_rows(t), detail::entropy_cols(t));
  if (hmax == 0.0) return 1.0;
  return detail::mutual_information(t) / hmax;
}

// Hubert-Arabie adjusted Rand index: pair-counting agreement corrected for
// chance. 1 on identical partitions, expectation 0 under random labelings,
// possibly negative. Degenerate pairs whose expected index equals the
// maximum (both all-singleton or both one-cluster) score 1.
inline double adjusted_rand(const FlatPartition& truth, const FlatPartition& pred) {
  const ContingencyTable t(truth, pred);
  double sum_cells = 0.0;
  for (int i = 0; i < t.k_true(); ++i)
    for (int j = 0; j < t.k_pred(); ++j) sum_cells += detail::comb2(t.count(i, j));
  double sum_rows = 0.0;
  for (int i = 0; i < t.k_true(); ++i) sum_rows += detail::comb2(t.row_sum(i));
  double sum_cols = 0.0;
  for (int j = 0; j < t.k_pred(); ++j) sum_cols += detail::comb2(t.col_sum(j));
  const double pairs = detail::comb2(t.n());
  const double expected = sum_rows * sum_cols / pairs;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected) return 1.0;
  return (sum_cells - expected) / (maximum - expected);
}

// Harmonic mean of homogeneity and completeness (entropies in nats).
inline double v_measure(const FlatPartition& truth, const FlatPartition& pred) {
  const ContingencyTable t(truth, pred);
  const double h_true = detail::entropy_rows(t);
  const double h_pred = detail::entropy_cols(t);
  const ContingencyTable swapped(pred, truth);
  const double homogeneity =
      h_true == 0.0 ? 1.0 : 1.0 - detail::conditional_entropy_rows(t) / h_true;
  const double completeness =
      h_pred == 0.0 ? 1.0 : 1.0 - detail::conditional_entropy_rows(swapped) / h_pred;
  if (homogeneity + completeness == 0.0) return 0.0;
  return 2.0 * homogeneity * completeness / (homogeneity + completeness);
}

// Flat clusters from the first n-k linkage records (equivalently: delete the
// k-1 records with the largest order). Labels follow ascending smallest
// member. Works on any full record list, parsed or in-memory.
inline FlatPartition cut_records(std::span<const LinkageRecord> records, int n, int k) {
  if (k < 1 || k > n) throw InvalidInput("k must be in [1, n]");
  if (records.size() != static_cast<std::size_t>(n - 1))
    throw InvalidState("cut needs the full list of n-1 linkage records");
  std::vector<const LinkageRecord*> sorted;
  sorted.reserve(records.size());
  for (const LinkageRecord& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const LinkageRecord* a, const LinkageRecord* b) { return a->order < b->order; });

  UnionFind uf(n);
  for (int i = 0; i < n - k; ++i) uf.unite(sorted[i]->rep_a, sorted[i]->rep_b);

  FlatPartition p;
  p.labels.assign(n, -1);
  std::vector<int> label_of_root(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int root = uf.find(i);
    if (label_of_root[root] < 0) label_of_root[root] = next++;
    p.labels[i] = label_of_root[root];
  }
  p.k = next;
  return p;
}

inline FlatPartition cut(const Dendrogram& d, int k) {
  return cut_records(d.records, d.n, k);
}

// Join level of each object over the run's level count, in (0, 1]; higher
// means the object resisted joining longer. Degenerate one-object runs score 1.
inline std::vector<double> outlier_scores(const Dendrogram& d) {
  std::vector<double> scores(d.join_level.size(), 1.0);
  if (d.levels == 0) return scores;
  for (std::size_t i = 0; i < scores.size(); ++i)
    scores[i] = static_cast<double>(d.join_level[i]) / d.levels;
  return scores;
}

}  // namespace rac
