#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "rac/core.hpp"

namespace rac {

// Binds a dataset to the base dissimilarity matrix used by the member-wise
// criteria. Built once per run; immutable afterwards.
class LinkageContext {
public:
  explicit LinkageContext(const Dataset& ds, Metric metric = Metric::SquaredEuclidean)
      : dataset_(&ds), metric_(metric), dissim_(pairwise_dissimilarities(ds, metric)) {}

  const Dataset& dataset() const { return *dataset_; }
  Metric metric() const { return metric_; }
  const Matrix& dissim() const { return dissim_; }
  int n() const { return dataset_->n(); }

private:
  const Dataset* dataset_;
  Metric metric_;
  Matrix dissim_;
};

// Mean coordinate vector of a cluster (Points datasets only).
struct ClusterGeometry {
  std::vector<double> centroid;
  int size = 0;
};

inline ClusterGeometry cluster_geometry(const Cluster& c, const Dataset& ds) {
  const Matrix& x = ds.coords();
  ClusterGeometry g;
  g.size = c.size();
  g.centroid.assign(x.cols(), 0.0);
  for (int m : c.members)
    for (std::size_t k = 0; k < x.cols(); ++k)
      g.centroid[k] += x(static_cast<std::size_t>(m), k);
  for (double& v : g.centroid) v /= static_cast<double>(g.size);
  return g;
}

namespace detail {

inline double metric_between(const std::vector<double>& a, const std::vector<double>& b,
                             Metric metric) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return metric == Metric::Euclidean ? std::sqrt(acc) : acc;
}

inline double squared_centroid_gap(const ClusterGeometry& a, const ClusterGeometry& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.centroid.size(); ++k) {
    const double diff = a.centroid[k] - b.centroid[k];
    acc += diff * diff;
  }
  return acc;
}

// Centroid uses the run's base metric on the means; Ward follows its
// size-weighted squared form regardless of the metric flag.
inline double geometry_distance(LinkageCriterion criterion, const ClusterGeometry& a,
                                const ClusterGeometry& b, Metric metric) {
  if (criterion == LinkageCriterion::Centroid)
    return metric_between(a.centroid, b.centroid, metric);
  const double na = static_cast<double>(a.size);
  const double nb = static_cast<double>(b.size);
  return na * nb / (na + nb) * squared_centroid_gap(a, b);
}

}  // namespace detail

// Closest cross pair between two clusters, with the pair achieving it.
// Ties break toward the smallest (i, j) object pair.
struct SingleResult {
  double distance = 0.0;
  int witness_a = 0;
  int witness_b = 0;
};

inline SingleResult single_distance(const Cluster& a, const Cluster& b, const Matrix& d) {
  SingleResult best;
  best.distance = std::numeric_limits<double>::infinity();
  best.witness_a = -1;
  best.witness_b = -1;
  for (int i : a.members) {
    for (int j : b.members) {
      const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      const int lo = i < j ? i : j;
      const int hi = i < j ? j : i;
      if (v < best.distance ||
          (v == best.distance &&
           (lo < best.witness_a || (lo == best.witness_a && hi < best.witness_b)))) {
        best.distance = v;
        best.witness_a = lo;
        best.witness_b = hi;
      }
    }
  }
  return best;
}

namespace detail {

inline double complete_distance(const Cluster& a, const Cluster& b, const Matrix& d) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int i : a.members)
    for (int j : b.members)
      worst = std::max(worst, d(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  return worst;
}

// Cross-pair mean; addends accumulate in ascending (i, j) order off the
// rep-canonical side so dist(p,q) and dist(q,p) are the same bits.
inline double average_distance(const Cluster& a, const Cluster& b, const Matrix& d) {
  double acc = 0.0;
  for (int i : a.members)
    for (int j : b.members)
      acc += d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return acc / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace detail

// Inter-cluster distance under a criterion. Symmetric in its cluster
// arguments; Centroid/Ward require a Points dataset.
inline double dist(LinkageCriterion criterion, const Cluster& p, const Cluster& q,
                   const LinkageContext& ctx) {
  if (p.members.empty() || q.members.empty())
    throw InvalidInput("clusters must be non-empty");
  const Cluster& a = p.rep() <= q.rep() ? p : q;
  const Cluster& b = p.rep() <= q.rep() ? q : p;
  switch (criterion) {
    case LinkageCriterion::Single:
      return single_distance(a, b, ctx.dissim()).distance;
    case LinkageCriterion::Complete:
      return detail::complete_distance(a, b, ctx.dissim());
    case LinkageCriterion::Average:
      return detail::average_distance(a, b, ctx.dissim());
    case LinkageCriterion::Centroid:
    case LinkageCriterion::Ward: {
      if (!ctx.dataset().has_points())
        throw CriterionUnsupported(std::string(to_string(criterion)) +
                                   " criterion requires coordinates");
      const ClusterGeometry ga = cluster_geometry(a, ctx.dataset());
      const ClusterGeometry gb = cluster_geometry(b, ctx.dataset());
      return detail::geometry_distance(criterion, ga, gb, ctx.metric());
    }
  }
  throw InternalError("unknown criterion");
}

// All pairwise inter-cluster distances at one level. For Single runs the
// witness (closest cross pair) of every cluster pair is kept alongside.
class PairDistances {
public:
  PairDistances(const std::vector<Cluster>& clusters, LinkageCriterion criterion,
                const LinkageContext& ctx)
      : size_(clusters.size()), dist_(clusters.size(), clusters.size(), 0.0) {
    const bool single = criterion == LinkageCriterion::Single;
    if (single) witness_.assign(size_ * size_, {-1, -1});
    if (needs_coordinates(criterion) && !ctx.dataset().has_points())
      throw CriterionUnsupported(std::string(to_string(criterion)) +
                                 " criterion requires coordinates");

    std::vector<ClusterGeometry> geom;
    if (needs_coordinates(criterion)) {
      geom.reserve(size_);
      for (const Cluster& c : clusters) geom.push_back(cluster_geometry(c, ctx.dataset()));
    }

    for (std::size_t p = 0; p < size_; ++p) {
      for (std::size_t q = p + 1; q < size_; ++q) {
        double v = 0.0;
        switch (criterion) {
          case LinkageCriterion::Single: {
            const SingleResult r = single_distance(clusters[p], clusters[q], ctx.dissim());
            v = r.distance;
            witness_[p * size_ + q] = {r.witness_a, r.witness_b};
            break;
          }
          case LinkageCriterion::Complete:
            v = detail::complete_distance(clusters[p], clusters[q], ctx.dissim());
            break;
          case LinkageCriterion::Average: {
            const bool swap = clusters[p].rep() > clusters[q].rep();
            v = detail::average_distance(clusters[swap ? q : p], clusters[swap ? p : q],
                                         ctx.dissim());
            break;
          }
          case LinkageCriterion::Centroid:
          case LinkageCriterion::Ward:
            v = detail::geometry_distance(criterion, geom[p], geom[q], ctx.metric());
            break;
        }
        dist_(p, q) = v;
        dist_(q, p) = v;
      }
    }
  }

  std::size_t size() const { return size_; }
  double operator()(std::size_t p, std::size_t q) const { return dist_(p, q); }

  // Witness cross pair for (p, q); falls back to (-1, -1) when the table was
  // not built under the Single criterion.
  std::pair<int, int> witness(std::size_t p, std::size_t q) const {
    if (witness_.empty()) return {-1, -1};
    return p < q ? witness_[p * size_ + q] : witness_[q * size_ + p];
  }

  bool has_witnesses() const { return !witness_.empty(); }

private:
  std::size_t size_;
  Matrix dist_;
  std::vector<std::pair<int, int>> witness_;
};

// Per-cluster nearest-neighbor distance and the full arg-min set (exact
// floating-point ties included).
struct NearestNeighbors {
  std::vector<double> min_dist;
  std::vector<std::vector<int>> nn;
};

inline NearestNeighbors nearest_neighbors(const PairDistances& d) {
  const std::size_t m = d.size();
  if (m < 2) throw InvalidState("nearest neighbors need at least two clusters");
  NearestNeighbors out;
  out.min_dist.resize(m);
  out.nn.resize(m);
  for (std::size_t p = 0; p < m; ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < m; ++q)
      if (q != p) best = std::min(best, d(p, q));
    out.min_dist[p] = best;
    for (std::size_t q = 0; q < m; ++q)
      if (q != p && d(p, q) == best) out.nn[p].push_back(static_cast<int>(q));
  }
  return out;
}

inline NearestNeighbors nearest_neighbors(const std::vector<Cluster>& clusters,
                                          LinkageCriterion criterion,
                                          const LinkageContext& ctx) {
  if (clusters.size() < 2)
    throw InvalidState("nearest neighbors need at least two clusters");
  return nearest_neighbors(PairDistances(clusters, criterion, ctx));
}

}  // namespace rac
