#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rac {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class CriterionUnsupported : public Error {
public:
  using Error::Error;
};

class InvalidState : public Error {
public:
  using Error::Error;
};

class InternalError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class IoError : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Dense row-major matrix of doubles
// ---------------------------------------------------------------------------

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Base dissimilarity metrics and linkage criteria
// ---------------------------------------------------------------------------

enum class Metric { SquaredEuclidean, Euclidean };

enum class LinkageCriterion { Single, Complete, Average, Centroid, Ward };

inline const char* to_string(Metric m) {
  switch (m) {
    case Metric::SquaredEuclidean: return "sqeuclidean";
    case Metric::Euclidean: return "euclidean";
  }
  return "?";
}

inline const char* to_string(LinkageCriterion c) {
  switch (c) {
    case LinkageCriterion::Single: return "single";
    case LinkageCriterion::Complete: return "complete";
    case LinkageCriterion::Average: return "average";
    case LinkageCriterion::Centroid: return "centroid";
    case LinkageCriterion::Ward: return "ward";
  }
  return "?";
}

// Centroid and Ward evaluate cluster means, so they need coordinates.
inline bool needs_coordinates(LinkageCriterion c) {
  return c == LinkageCriterion::Centroid || c == LinkageCriterion::Ward;
}

// ---------------------------------------------------------------------------
// Dataset: either an n x d coordinate matrix or an n x n dissimilarity matrix
// ---------------------------------------------------------------------------

class Dataset {
public:
  enum class Kind { Points, Dissimilarity };

  static Dataset points(Matrix coords) {
    if (coords.rows() < 1 || coords.cols() < 1)
      throw InvalidInput("points matrix must be at least 1x1");
    Dataset ds;
    ds.kind_ = Kind::Points;
    ds.n_ = static_cast<int>(coords.rows());
    ds.matrix_ = std::move(coords);
    return ds;
  }

  // Accepts a square nonnegative matrix with zero diagonal. Asymmetries up to
  // 1e-9 absolute (file round-trip noise) are averaged away; anything larger
  // is rejected.
  static Dataset dissimilarity(Matrix d) {
    if (d.rows() < 1 || d.rows() != d.cols())
      throw InvalidInput("dissimilarity matrix must be square and non-empty");
    const std::size_t n = d.rows();
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(d(i, i)) > 1e-12)
        throw InvalidInput("dissimilarity diagonal must be zero");
      d(i, i) = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (d(i, j) < 0.0 || d(j, i) < 0.0)
          throw InvalidInput("dissimilarities must be nonnegative");
        if (std::abs(d(i, j) - d(j, i)) > 1e-9)
          throw InvalidInput("dissimilarity matrix is not symmetric");
        const double v = 0.5 * (d(i, j) + d(j, i));
        d(i, j) = v;
        d(j, i) = v;
      }
    }
    Dataset ds;
    ds.kind_ = Kind::Dissimilarity;
    ds.n_ = static_cast<int>(n);
    ds.matrix_ = std::move(d);
    return ds;
  }

  Kind kind() const { return kind_; }
  int n() const { return n_; }

  bool has_points() const { return kind_ == Kind::Points; }

  int dim() const {
    if (!has_points()) throw InvalidState("dataset has no coordinates");
    return static_cast<int>(matrix_.cols());
  }

  const Matrix& coords() const {
    if (!has_points()) throw InvalidState("dataset has no coordinates");
    return matrix_;
  }

  const Matrix& dissim() const {
    if (has_points()) throw InvalidState("dataset has no dissimilarity matrix");
    return matrix_;
  }

private:
  Dataset() = default;

  Kind kind_ = Kind::Points;
  int n_ = 0;
  Matrix matrix_;
};

// Base dissimilarity between two coordinate rows, accumulated in ascending
// component order so results are reproducible bit for bit.
inline double point_dissimilarity(const Matrix& coords, std::size_t i, std::size_t j,
                                  Metric metric) {
  double acc = 0.0;
  for (std::size_t k = 0; k < coords.cols(); ++k) {
    const double diff = coords(i, k) - coords(j, k);
    acc += diff * diff;
  }
  return metric == Metric::Euclidean ? std::sqrt(acc) : acc;
}

// Full n x n matrix of base dissimilarities. Pass-through (metric ignored)
// when the dataset already is a dissimilarity matrix.
inline Matrix pairwise_dissimilarities(const Dataset& ds,
                                       Metric metric = Metric::SquaredEuclidean) {
  if (!ds.has_points()) return ds.dissim();
  const std::size_t n = static_cast<std::size_t>(ds.n());
  Matrix d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = point_dissimilarity(ds.coords(), i, j, metric);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Clusters, linkage records, dendrograms
// ---------------------------------------------------------------------------

// A cluster is a sorted, non-empty set of object indices. Ids are positions
// in the per-level cluster list, which is kept ordered by smallest member;
// that ordering fixes every index-based tie-break downstream.
struct Cluster {
  int id = 0;
  std::vector<int> members;

  int rep() const { return members.front(); }
  int size() const { return static_cast<int>(members.size()); }

  bool operator==(const Cluster&) const = default;
};

// One of the n-1 binary linkages accounting for a dendrogram. rep_a/rep_b
// are the smallest members of the joined clusters (rep_a < rep_b); the
// witness pair is the closest cross pair under the Single criterion and
// falls back to the reps for the other criteria.
struct LinkageRecord {
  int rep_a = 0;
  int rep_b = 0;
  int witness_a = 0;
  int witness_b = 0;
  double distance = 0.0;
  int level = 0;
  int order = -1;

  bool operator==(const LinkageRecord&) const = default;
};

// One connected component of the mutual-nearest-neighbor graph collapsing
// into a single higher-level cluster (always exactly two inputs under the
// standard strategy).
struct MergeEvent {
  int level = 0;
  std::vector<int> input_cluster_ids;  // ids at level-1
  int output_cluster_id = 0;           // id at level
  std::vector<LinkageRecord> linkages;

  bool operator==(const MergeEvent&) const = default;
};

struct Dendrogram {
  int n = 0;
  int levels = 0;  // highest merge level; 0 when n == 1
  std::vector<MergeEvent> events;         // ordered by (level, output id)
  std::vector<LinkageRecord> records;     // ordered by the `order` field
  std::vector<int> join_level;            // level at which each object first joins

  bool operator==(const Dendrogram&) const = default;
};

// ---------------------------------------------------------------------------
// Union-find over [0, n)
// ---------------------------------------------------------------------------

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false if the two were already connected.
  bool unite(int a, int b) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) return false;
    parent_[ra] = rb;
    return true;
  }

private:
  std::vector<int> parent_;
};

}  // namespace rac
