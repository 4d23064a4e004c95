#pragma once

#include <vector>

#include "rac/core.hpp"
#include "rac/strategy.hpp"

namespace rac {

struct TreeEdge {
  int i = 0;
  int j = 0;
  double weight = 0.0;

  bool operator==(const TreeEdge&) const = default;
};

// n-1 object-level edges plus their total weight. total_weight is summed in
// ascending weight order so the two constructions below agree bit for bit.
struct SpanningTree {
  std::vector<TreeEdge> edges;
  double total_weight = 0.0;
};

inline double ascending_weight_sum(const std::vector<TreeEdge>& edges) {
  std::vector<double> w;
  w.reserve(edges.size());
  for (const TreeEdge& e : edges) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  double acc = 0.0;
  for (double v : w) acc += v;
  return acc;
}

// Spanning tree read off a single-criterion mutual-NN run: each linkage
// record contributes its witness pair. Edges appear in record order.
inline SpanningTree mst_reliable(const Dataset& ds, Metric metric = Metric::SquaredEuclidean) {
  const Dendrogram d = cluster_reliable(ds, LinkageCriterion::Single, metric);
  SpanningTree tree;
  tree.edges.reserve(d.records.size());
  for (const LinkageRecord& r : d.records)
    tree.edges.push_back(TreeEdge{r.witness_a, r.witness_b, r.distance});
  tree.total_weight = ascending_weight_sum(tree.edges);
  return tree;
}

// Kruskal over the complete dissimilarity graph; edges considered in
// (weight, i, j) order.
inline SpanningTree mst_kruskal(const Dataset& ds, Metric metric = Metric::SquaredEuclidean) {
  const Matrix dist = pairwise_dissimilarities(ds, metric);
  const int n = ds.n();
  std::vector<TreeEdge> all;
  all.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      all.push_back(TreeEdge{i, j, dist(static_cast<std::size_t>(i),
                                        static_cast<std::size_t>(j))});
  std::sort(all.begin(), all.end(), [](const TreeEdge& a, const TreeEdge& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  SpanningTree tree;
  UnionFind uf(n);
  for (const TreeEdge& e : all) {
    if (!uf.unite(e.i, e.j)) continue;
    tree.edges.push_back(e);
    if (tree.edges.size() == static_cast<std::size_t>(n - 1)) break;
  }
  tree.total_weight = ascending_weight_sum(tree.edges);
  return tree;
}

}  // namespace rac
