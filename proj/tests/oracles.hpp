// Test-only brute-force oracles and deterministic generators. Everything in
// here is deliberately written from the definitions, independent of the
// library code paths it checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "rac/core.hpp"
#include "rac/eval.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64), stable across platforms
// ---------------------------------------------------------------------------

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {  // Box-Muller
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

private:
  std::uint64_t state_;
};

inline rac::Dataset random_points(int n, int d, std::uint64_t seed, double scale = 10.0) {
  Rng rng(seed);
  rac::Matrix m(n, d, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = scale * rng.uniform();
  return rac::Dataset::points(std::move(m));
}

inline rac::Dataset points_1d(const std::vector<double>& xs) {
  rac::Matrix m(xs.size(), 1, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) m(i, 0) = xs[i];
  return rac::Dataset::points(std::move(m));
}

inline rac::FlatPartition random_partition(int n, int max_k, std::uint64_t seed) {
  Rng rng(seed);
  const int k = rng.uniform_int(1, max_k);
  std::vector<int> raw(n);
  for (int i = 0; i < n; ++i) raw[i] = rng.uniform_int(0, k - 1);
  return rac::densify(raw);
}

// ---------------------------------------------------------------------------
// Scalar-loop base dissimilarity
// ---------------------------------------------------------------------------

inline double scalar_dissimilarity(const rac::Dataset& ds, int i, int j, rac::Metric metric) {
  double acc = 0.0;
  for (int k = 0; k < ds.dim(); ++k) {
    const double a = ds.coords()(i, k);
    const double b = ds.coords()(j, k);
    acc += (a - b) * (a - b);
  }
  return metric == rac::Metric::Euclidean ? std::sqrt(acc) : acc;
}

// ---------------------------------------------------------------------------
// Brute-force inter-cluster distances straight from the definitions
// ---------------------------------------------------------------------------

inline std::vector<double> centroid_of(const rac::Dataset& ds, const std::vector<int>& members) {
  std::vector<double> c(ds.dim(), 0.0);
  for (int m : members)
    for (int k = 0; k < ds.dim(); ++k) c[k] += ds.coords()(m, k);
  for (double& v : c) v /= static_cast<double>(members.size());
  return c;
}

inline double brute_dist(rac::LinkageCriterion criterion, const std::vector<int>& a,
                         const std::vector<int>& b, const rac::Matrix& dissim,
                         const rac::Dataset& ds, rac::Metric metric) {
  using rac::LinkageCriterion;
  switch (criterion) {
    case LinkageCriterion::Single: {
      double best = std::numeric_limits<double>::infinity();
      for (int i : a)
        for (int j : b) best = std::min(best, dissim(i, j));
      return best;
    }
    case LinkageCriterion::Complete: {
      double worst = 0.0;
      for (int i : a)
        for (int j : b) worst = std::max(worst, dissim(i, j));
      return worst;
    }
    case LinkageCriterion::Average: {
      double sum = 0.0;
      for (int i : a)
        for (int j : b) sum += dissim(i, j);
      return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    }
    case LinkageCriterion::Centroid: {
      const auto ca = centroid_of(ds, a);
      const auto cb = centroid_of(ds, b);
      double acc = 0.0;
      for (std::size_t k = 0; k < ca.size(); ++k) acc += (ca[k] - cb[k]) * (ca[k] - cb[k]);
      return metric == rac::Metric::Euclidean ? std::sqrt(acc) : acc;
    }
    case LinkageCriterion::Ward: {
      const auto ca = centroid_of(ds, a);
      const auto cb = centroid_of(ds, b);
      double acc = 0.0;
      for (std::size_t k = 0; k < ca.size(); ++k) acc += (ca[k] - cb[k]) * (ca[k] - cb[k]);
      const double na = static_cast<double>(a.size());
      const double nb = static_cast<double>(b.size());
      return na * nb / (na + nb) * acc;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Minimum spanning trees by exhaustive enumeration (tiny graphs only)
// ---------------------------------------------------------------------------

struct Edge {
  int p, q;
  double w;
};

// Minimal total weight over all spanning edge subsets of size m-1.
inline double brute_mst_weight(int m, const std::vector<Edge>& edges) {
  const int e = static_cast<int>(edges.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    if (__builtin_popcount(mask) != m - 1) continue;
    rac::UnionFind uf(m);
    int joins = 0;
    double total = 0.0;
    for (int i = 0; i < e; ++i) {
      if (!(mask & (1u << i))) continue;
      if (uf.unite(edges[i].p, edges[i].q)) ++joins;
      total += edges[i].w;
    }
    if (joins == m - 1) best = std::min(best, total);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Pair-counting adjusted Rand (no contingency table)
// ---------------------------------------------------------------------------

inline double pair_counting_ari(const std::vector<int>& truth, const std::vector<int>& pred) {
  const int n = static_cast<int>(truth.size());
  double n11 = 0, n00 = 0, n10 = 0, n01 = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same_t = truth[i] == truth[j];
      const bool same_p = pred[i] == pred[j];
      if (same_t && same_p) ++n11;
      else if (!same_t && !same_p) ++n00;
      else if (same_t) ++n10;
      else ++n01;
    }
  }
  const double denom = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
  if (denom == 0.0) return 1.0;
  return 2.0 * (n11 * n00 - n10 * n01) / denom;
}

// ---------------------------------------------------------------------------
// Entropy-sum oracles over label maps
// ---------------------------------------------------------------------------

struct EntropyTerms {
  double h_truth = 0.0;
  double h_pred = 0.0;
  double mutual = 0.0;
};

inline EntropyTerms entropy_terms(const std::vector<int>& truth, const std::vector<int>& pred) {
  const double n = static_cast<double>(truth.size());
  std::map<int, int> ct, cp;
  std::map<std::pair<int, int>, int> joint;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++ct[truth[i]];
    ++cp[pred[i]];
    ++joint[{truth[i], pred[i]}];
  }
  EntropyTerms t;
  for (const auto& [label, c] : ct) t.h_truth -= c / n * std::log(c / n);
  for (const auto& [label, c] : cp) t.h_pred -= c / n * std::log(c / n);
  for (const auto& [cell, c] : joint)
    t.mutual += c / n * std::log((c / n) / ((ct[cell.first] / n) * (cp[cell.second] / n)));
  return t;
}

inline double entropy_nmi(const std::vector<int>& truth, const std::vector<int>& pred) {
  const EntropyTerms t = entropy_terms(truth, pred);
  const double hmax = std::max(t.h_truth, t.h_pred);
  return hmax == 0.0 ? 1.0 : t.mutual / hmax;
}

inline double entropy_v_measure(const std::vector<int>& truth, const std::vector<int>& pred) {
  const EntropyTerms t = entropy_terms(truth, pred);
  const double h = t.h_truth == 0.0 ? 1.0 : t.mutual / t.h_truth;   // 1 - H(T|P)/H(T)
  const double c = t.h_pred == 0.0 ? 1.0 : t.mutual / t.h_pred;     // 1 - H(P|T)/H(P)
  return h + c == 0.0 ? 0.0 : 2.0 * h * c / (h + c);
}

// ---------------------------------------------------------------------------
// Kruskal union-find stopped after n-k unions, labels by smallest member
// ---------------------------------------------------------------------------

inline rac::FlatPartition kruskal_partition(const rac::Matrix& dissim, int n, int k) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, dissim(i, j)});
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  });
  rac::UnionFind uf(n);
  int unions = 0;
  for (const Edge& e : edges) {
    if (unions == n - k) break;
    if (uf.unite(e.p, e.q)) ++unions;
  }
  std::vector<int> raw(n);
  std::vector<int> first(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int r = uf.find(i);
    if (first[r] < 0) first[r] = next++;
    raw[i] = first[r];
  }
  rac::FlatPartition p;
  p.labels = raw;
  p.k = next;
  return p;
}

}  // namespace oracle
