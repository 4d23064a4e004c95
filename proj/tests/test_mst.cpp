#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "rac/mst.hpp"

using namespace rac;

namespace {

void check_is_spanning_tree(const SpanningTree& tree, int n) {
  REQUIRE(tree.edges.size() == static_cast<std::size_t>(n - 1));
  UnionFind uf(n);
  for (const TreeEdge& e : tree.edges) CHECK(uf.unite(e.i, e.j));
}

std::multiset<std::pair<int, int>> edge_set(const SpanningTree& tree) {
  std::multiset<std::pair<int, int>> s;
  for (const TreeEdge& e : tree.edges) s.insert({std::min(e.i, e.j), std::max(e.i, e.j)});
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("mst");

TEST_CASE("both constructions on the line [0, 1, 10, 12]") {
  const Dataset ds = oracle::points_1d({0, 1, 10, 12});
  for (const SpanningTree& tree : {mst_reliable(ds), mst_kruskal(ds)}) {
    check_is_spanning_tree(tree, 4);
    CHECK(edge_set(tree) ==
          std::multiset<std::pair<int, int>>{{0, 1}, {2, 3}, {1, 2}});
    CHECK(tree.total_weight == 86.0);
  }
}

TEST_CASE("two objects form a single forced edge") {
  const Dataset ds = oracle::points_1d({0, 3});
  const SpanningTree tree = mst_reliable(ds);
  REQUIRE(tree.edges.size() == 1);
  CHECK(tree.edges[0].weight == 9.0);
  CHECK(tree.total_weight == 9.0);
}

TEST_CASE("a tie chain still reaches the minimal total") {
  // spanning trees of [0,1,2] weigh 2, 2 and 5 (squared gaps 1, 1, 4)
  const Dataset ds = oracle::points_1d({0, 1, 2});
  CHECK(mst_reliable(ds).total_weight == 2.0);
  CHECK(mst_kruskal(ds).total_weight == 2.0);
  CHECK(mst_reliable(ds).edges[0].weight == 1.0);
}

TEST_CASE("n = 1 yields an empty tree") {
  const Dataset ds = oracle::points_1d({5});
  const SpanningTree tree = mst_kruskal(ds);
  CHECK(tree.edges.empty());
  CHECK(tree.total_weight == 0.0);
  CHECK(mst_reliable(ds).edges.empty());
}

TEST_CASE("all-equal weights make every spanning tree minimal") {
  Matrix d(5, 5, 3.0);
  for (int i = 0; i < 5; ++i) d(i, i) = 0.0;
  const Dataset ds = Dataset::dissimilarity(std::move(d));
  for (const SpanningTree& tree : {mst_reliable(ds), mst_kruskal(ds)}) {
    check_is_spanning_tree(tree, 5);
    CHECK(tree.total_weight == 4 * 3.0);
  }
}

TEST_CASE("tiny instances agree with exhaustive spanning-tree enumeration") {
  for (std::uint64_t seed = 700; seed < 712; ++seed) {
    oracle::Rng rng(seed);
    const int n = rng.uniform_int(2, 6);
    const Dataset ds = oracle::random_points(n, 2, seed);
    const Matrix dm = pairwise_dissimilarities(ds);
    std::vector<oracle::Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.push_back({i, j, dm(i, j)});
    const double best = oracle::brute_mst_weight(n, edges);
    CHECK(mst_kruskal(ds).total_weight == doctest::Approx(best).epsilon(1e-12));
    CHECK(mst_reliable(ds).total_weight == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("property: weight equality, and edge equality under distinct distances") {
  for (std::uint64_t seed = 720; seed < 760; ++seed) {
    oracle::Rng rng(seed);
    const int n = rng.uniform_int(2, 40);
    const Dataset ds = oracle::random_points(n, rng.uniform_int(1, 3), seed);
    const SpanningTree a = mst_reliable(ds);
    const SpanningTree b = mst_kruskal(ds);
    check_is_spanning_tree(a, n);
    check_is_spanning_tree(b, n);
    CHECK(a.total_weight == b.total_weight);  // exact: both sum ascending

    const Matrix dm = pairwise_dissimilarities(ds);
    std::set<double> values;
    bool distinct = true;
    for (int i = 0; i < n && distinct; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!values.insert(dm(i, j)).second) {
          distinct = false;
          break;
        }
    if (distinct) CHECK(edge_set(a) == edge_set(b));
  }
}

TEST_CASE("single-criterion distance between trees is the min cross pair") {
  const Dataset ds = oracle::points_1d({0, 1, 10, 12});
  const LinkageContext ctx(ds);
  const Cluster tree_a{0, {0, 1}};
  const Cluster tree_b{1, {2, 3}};
  CHECK(dist(LinkageCriterion::Single, tree_a, tree_b, ctx) == 81.0);
  CHECK(single_distance(tree_a, tree_b, ctx.dissim()).witness_a == 1);
  CHECK(single_distance(tree_a, tree_b, ctx.dissim()).witness_b == 2);
}

TEST_SUITE_END();
