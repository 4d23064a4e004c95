#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "rac/core.hpp"
#include "rac/linkage.hpp"

namespace rac {

enum class Strategy { Standard, Reliable, Alpha };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Standard: return "standard";
    case Strategy::Reliable: return "reliable";
    case Strategy::Alpha: return "alpha";
  }
  return "?";
}

struct StrategyConfig {
  Strategy strategy = Strategy::Reliable;
  LinkageCriterion criterion = LinkageCriterion::Single;
  double alpha = 1.0;  // only read when strategy == Alpha; must be in (0, 1]
  Metric metric = Metric::SquaredEuclidean;
  int max_level = 0;  // 0 = run until a single cluster remains
};

// Boolean adjacency over the current clusters: edge(p, q) iff dist(p, q)
// equals the nearest-neighbor distance of both p and q.
class MutualNnGraph {
public:
  MutualNnGraph() = default;

  explicit MutualNnGraph(const PairDistances& d) : MutualNnGraph(d, nearest_neighbors(d)) {}

  MutualNnGraph(const PairDistances& d, const NearestNeighbors& nn)
      : size_(d.size()), adj_(d.size() * d.size(), 0), min_dist_(nn.min_dist) {
    for (std::size_t p = 0; p < size_; ++p) {
      for (std::size_t q = p + 1; q < size_; ++q) {
        if (d(p, q) == nn.min_dist[p] && d(p, q) == nn.min_dist[q]) {
          adj_[p * size_ + q] = 1;
          adj_[q * size_ + p] = 1;
          edges_.emplace_back(static_cast<int>(p), static_cast<int>(q));
        }
      }
    }
  }

  std::size_t size() const { return size_; }
  bool edge(std::size_t p, std::size_t q) const { return adj_[p * size_ + q] != 0; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<double>& min_dist() const { return min_dist_; }

private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<double> min_dist_;
};

// Connected components of an undirected graph on [0, m), each component
// sorted ascending; components ordered by smallest vertex.
inline std::vector<std::vector<int>> connected_components(
    int m, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(m);
  for (const auto& [p, q] : edges) {
    adj[p].push_back(q);
    adj[q].push_back(p);
  }
  std::vector<std::vector<int>> components;
  std::vector<bool> seen(m, false);
  std::vector<int> stack;
  for (int start = 0; start < m; ++start) {
    if (seen[start]) continue;
    components.emplace_back();
    auto& comp = components.back();
    stack.assign(1, start);
    seen[start] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return components;
}

// Cluster-level edge inside one dendrogram level.
struct WeightedEdge {
  int p = 0;
  int q = 0;
  double weight = 0.0;
};

// Turns one connected component into its |component|-1 linkage records: a
// minimum spanning tree of the component under the given edge weights, ties
// broken by (smaller cluster id, larger cluster id). Witnesses come from the
// pair table when it carries them (Single runs), otherwise the cluster reps.
inline std::vector<LinkageRecord> decompose_component(const std::vector<int>& component,
                                                      std::vector<WeightedEdge> edges,
                                                      const std::vector<Cluster>& clusters,
                                                      int level,
                                                      const PairDistances* witnesses = nullptr) {
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    const int alo = std::min(a.p, a.q), ahi = std::max(a.p, a.q);
    const int blo = std::min(b.p, b.q), bhi = std::max(b.p, b.q);
    if (a.weight != b.weight) return a.weight < b.weight;
    if (alo != blo) return alo < blo;
    return ahi < bhi;
  });

  UnionFind uf(static_cast<int>(clusters.size()));
  std::vector<LinkageRecord> records;
  records.reserve(component.size() - 1);
  for (const WeightedEdge& e : edges) {
    if (!uf.unite(e.p, e.q)) continue;
    LinkageRecord r;
    const int ra = clusters[e.p].rep();
    const int rb = clusters[e.q].rep();
    r.rep_a = std::min(ra, rb);
    r.rep_b = std::max(ra, rb);
    auto w = witnesses ? witnesses->witness(e.p, e.q) : std::pair<int, int>{-1, -1};
    if (w.first < 0) w = {r.rep_a, r.rep_b};
    r.witness_a = std::min(w.first, w.second);
    r.witness_b = std::max(w.first, w.second);
    r.distance = e.weight;
    r.level = level;
    records.push_back(r);
    if (records.size() == component.size() - 1) break;
  }
  if (records.size() != component.size() - 1)
    throw InternalError("component is not connected by the given edges");
  return records;
}

// Per-level snapshot for property checks: the mutual-NN graph plus every
// cluster pair sitting at the globally minimal distance.
struct LevelTrace {
  int level = 0;
  MutualNnGraph graph;
  double global_min = 0.0;
  std::vector<std::pair<int, int>> global_min_pairs;
};

struct RunTrace {
  std::vector<LevelTrace> levels;
};

namespace detail {

// Accumulates merge levels into a dendrogram. Clusters stay ordered by
// smallest member, which is what assigns per-level ids.
class DendrogramBuilder {
public:
  explicit DendrogramBuilder(int n) : n_(n), join_level_(n, 0) {
    clusters_.reserve(n);
    for (int i = 0; i < n; ++i) clusters_.push_back(Cluster{i, {i}});
  }

  const std::vector<Cluster>& clusters() const { return clusters_; }
  int level() const { return level_; }

  // One level of merges: each group is (input cluster ids, its records).
  // Groups must be disjoint; unaffected clusters carry forward.
  void merge_level(std::vector<std::pair<std::vector<int>, std::vector<LinkageRecord>>> groups) {
    ++level_;
    struct Entry {
      std::vector<int> members;
      int group = -1;  // index into groups, -1 for carried clusters
    };
    std::vector<bool> consumed(clusters_.size(), false);
    std::vector<Entry> entries;
    entries.reserve(clusters_.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      Entry e;
      e.group = static_cast<int>(g);
      for (int id : groups[g].first) {
        consumed[id] = true;
        e.members.insert(e.members.end(), clusters_[id].members.begin(),
                         clusters_[id].members.end());
        if (clusters_[id].size() == 1) join_level_[clusters_[id].members[0]] = level_;
      }
      std::sort(e.members.begin(), e.members.end());
      entries.push_back(std::move(e));
    }
    for (std::size_t id = 0; id < clusters_.size(); ++id)
      if (!consumed[id]) entries.push_back(Entry{clusters_[id].members, -1});

    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.members[0] < b.members[0]; });

    std::vector<Cluster> next;
    next.reserve(entries.size());
    std::vector<MergeEvent> level_events;
    for (std::size_t id = 0; id < entries.size(); ++id) {
      next.push_back(Cluster{static_cast<int>(id), std::move(entries[id].members)});
      if (entries[id].group >= 0) {
        auto& [inputs, records] = groups[entries[id].group];
        std::sort(inputs.begin(), inputs.end());
        MergeEvent ev;
        ev.level = level_;
        ev.input_cluster_ids = inputs;
        ev.output_cluster_id = static_cast<int>(id);
        ev.linkages = std::move(records);
        level_events.push_back(std::move(ev));
      }
    }
    // entries are sorted by smallest member, so events come out ordered by
    // output cluster id already
    events_.insert(events_.end(), std::make_move_iterator(level_events.begin()),
                   std::make_move_iterator(level_events.end()));
    clusters_ = std::move(next);
  }

  Dendrogram finish() {
    Dendrogram d;
    d.n = n_;
    d.levels = level_;
    d.join_level = join_level_;
    for (const MergeEvent& ev : events_)
      d.records.insert(d.records.end(), ev.linkages.begin(), ev.linkages.end());
    std::sort(d.records.begin(), d.records.end(),
              [](const LinkageRecord& a, const LinkageRecord& b) {
                if (a.level != b.level) return a.level < b.level;
                if (a.distance != b.distance) return a.distance < b.distance;
                if (a.rep_a != b.rep_a) return a.rep_a < b.rep_a;
                return a.rep_b < b.rep_b;
              });
    std::map<std::pair<int, std::pair<int, int>>, int> order_of;
    for (std::size_t i = 0; i < d.records.size(); ++i) {
      d.records[i].order = static_cast<int>(i);
      order_of[{d.records[i].level, {d.records[i].rep_a, d.records[i].rep_b}}] =
          d.records[i].order;
    }
    d.events = std::move(events_);
    for (MergeEvent& ev : d.events)
      for (LinkageRecord& r : ev.linkages)
        r.order = order_of.at({r.level, {r.rep_a, r.rep_b}});
    if (clusters_.size() == 1 && d.records.size() != static_cast<std::size_t>(n_ - 1) &&
        n_ > 1)
      throw InternalError("dendrogram does not hold n-1 linkage records");
    return d;
  }

  bool done() const { return clusters_.size() <= 1; }

private:
  int n_;
  int level_ = 0;
  std::vector<Cluster> clusters_;
  std::vector<MergeEvent> events_;
  std::vector<int> join_level_;
};

inline void fill_trace(RunTrace* trace, int level, const PairDistances& d,
                       const MutualNnGraph& g) {
  if (!trace) return;
  LevelTrace t;
  t.level = level;
  t.graph = g;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < d.size(); ++p)
    for (std::size_t q = p + 1; q < d.size(); ++q) best = std::min(best, d(p, q));
  t.global_min = best;
  for (std::size_t p = 0; p < d.size(); ++p)
    for (std::size_t q = p + 1; q < d.size(); ++q)
      if (d(p, q) == best)
        t.global_min_pairs.emplace_back(static_cast<int>(p), static_cast<int>(q));
  trace->levels.push_back(std::move(t));
}

// Shared body of the reliable strategy and its alpha-thinned variant:
// establish the mutual-NN linkages of every level (all of them at alpha = 1,
// the ceil(alpha * E) smallest otherwise) and collapse the resulting
// components.
inline Dendrogram mutual_agglomerate(const Dataset& ds, LinkageCriterion criterion,
                                     double alpha, Metric metric, int max_level,
                                     RunTrace* trace) {
  LinkageContext ctx(ds, metric);
  DendrogramBuilder builder(ds.n());
  while (!builder.done() && (max_level == 0 || builder.level() < max_level)) {
    const std::vector<Cluster>& clusters = builder.clusters();
    const int m = static_cast<int>(clusters.size());
    const PairDistances table(clusters, criterion, ctx);
    const NearestNeighbors nn = nearest_neighbors(table);
    const MutualNnGraph graph(table, nn);
    fill_trace(trace, builder.level() + 1, table, graph);
    if (graph.edges().empty())
      throw InternalError("mutual-NN graph has no edges");  // impossible while m > 1

    std::vector<WeightedEdge> kept;
    kept.reserve(graph.edges().size());
    for (const auto& [p, q] : graph.edges())
      kept.push_back(WeightedEdge{p, q, table(static_cast<std::size_t>(p),
                                              static_cast<std::size_t>(q))});
    if (alpha < 1.0) {
      std::sort(kept.begin(), kept.end(),
                [&clusters](const WeightedEdge& a, const WeightedEdge& b) {
                  if (a.weight != b.weight) return a.weight < b.weight;
                  const int alo = std::min(clusters[a.p].rep(), clusters[a.q].rep());
                  const int blo = std::min(clusters[b.p].rep(), clusters[b.q].rep());
                  if (alo != blo) return alo < blo;
                  return std::max(clusters[a.p].rep(), clusters[a.q].rep()) <
                         std::max(clusters[b.p].rep(), clusters[b.q].rep());
                });
      const auto take = static_cast<std::size_t>(
          std::ceil(alpha * static_cast<double>(kept.size())));
      kept.resize(std::max<std::size_t>(1, std::min(take, kept.size())));
    }

    std::vector<std::pair<int, int>> kept_pairs;
    kept_pairs.reserve(kept.size());
    for (const WeightedEdge& e : kept) kept_pairs.emplace_back(e.p, e.q);
    std::vector<int> component_of(m, -1);
    const auto components = connected_components(m, kept_pairs);
    for (std::size_t c = 0; c < components.size(); ++c)
      for (int v : components[c]) component_of[v] = static_cast<int>(c);

    std::vector<std::vector<WeightedEdge>> comp_edges(components.size());
    for (const WeightedEdge& e : kept) comp_edges[component_of[e.p]].push_back(e);

    std::vector<std::pair<std::vector<int>, std::vector<LinkageRecord>>> merges;
    for (std::size_t c = 0; c < components.size(); ++c) {
      if (components[c].size() < 2) continue;
      merges.emplace_back(components[c],
                          decompose_component(components[c], comp_edges[c], clusters,
                                              builder.level() + 1, &table));
    }
    builder.merge_level(std::move(merges));
  }
  return builder.finish();
}

}  // namespace detail

// Classic agglomerative procedure: one merge per level, always the globally
// closest pair, ties to the lexicographically smallest (id, id) pair.
inline Dendrogram cluster_standard(const Dataset& ds, LinkageCriterion criterion,
                                   Metric metric = Metric::SquaredEuclidean,
                                   int max_level = 0) {
  LinkageContext ctx(ds, metric);
  detail::DendrogramBuilder builder(ds.n());
  while (!builder.done() && (max_level == 0 || builder.level() < max_level)) {
    const std::vector<Cluster>& clusters = builder.clusters();
    const std::size_t m = clusters.size();
    const PairDistances table(clusters, criterion, ctx);
    std::size_t bp = 0, bq = 1;
    double best = table(0, 1);
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        if (table(p, q) < best) {
          best = table(p, q);
          bp = p;
          bq = q;
        }
      }
    }
    LinkageRecord r;
    r.rep_a = clusters[bp].rep();
    r.rep_b = clusters[bq].rep();
    auto w = table.witness(bp, bq);
    if (w.first < 0) w = {r.rep_a, r.rep_b};
    r.witness_a = std::min(w.first, w.second);
    r.witness_b = std::max(w.first, w.second);
    r.distance = best;
    r.level = builder.level() + 1;
    builder.merge_level({{{static_cast<int>(bp), static_cast<int>(bq)}, {r}}});
  }
  return builder.finish();
}

// Mutual-nearest-neighbor strategy: every level establishes all reliable
// linkages at once and collapses the connected components they induce.
inline Dendrogram cluster_reliable(const Dataset& ds, LinkageCriterion criterion,
                                   Metric metric = Metric::SquaredEuclidean,
                                   int max_level = 0, RunTrace* trace = nullptr) {
  return detail::mutual_agglomerate(ds, criterion, 1.0, metric, max_level, trace);
}

// Interpolated family: keeps only the ceil(alpha * E) smallest reliable
// linkages per level. alpha = 1 reproduces cluster_reliable exactly; small
// alpha approaches one merge per level.
inline Dendrogram cluster_alpha(const Dataset& ds, LinkageCriterion criterion, double alpha,
                                Metric metric = Metric::SquaredEuclidean, int max_level = 0,
                                RunTrace* trace = nullptr) {
  if (!(alpha > 0.0) || alpha > 1.0) throw InvalidInput("alpha must be in (0, 1]");
  return detail::mutual_agglomerate(ds, criterion, alpha, metric, max_level, trace);
}

inline Dendrogram cluster(const Dataset& ds, const StrategyConfig& config,
                          RunTrace* trace = nullptr) {
  switch (config.strategy) {
    case Strategy::Standard:
      return cluster_standard(ds, config.criterion, config.metric, config.max_level);
    case Strategy::Reliable:
      return cluster_reliable(ds, config.criterion, config.metric, config.max_level, trace);
    case Strategy::Alpha:
      return cluster_alpha(ds, config.criterion, config.alpha, config.metric,
                           config.max_level, trace);
  }
  throw InternalError("unknown strategy");
}

}  // namespace rac
