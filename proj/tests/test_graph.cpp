#include <algorithm>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "gracelab/graph.hpp"
#include "helpers.hpp"

using namespace gracelab;

namespace {

Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return Graph(n, std::move(e));
}

Graph star(int leaves) {
  std::vector<Edge> e;
  for (int v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, std::move(e));
}

Graph complete_binary(int depth) {
  const int n = (1 << (depth + 1)) - 1;
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.push_back({(v - 1) / 2, v});
  return Graph(n, std::move(e));
}

}  // namespace

TEST_CASE("graph construction normalises and validates") {
  Graph g(3, {{2, 1}, {0, 1}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
  CHECK(g == Graph(3, {{1, 2}, {1, 0}}));

  CHECK_THROWS_AS(Graph(2, {{0, 2}}), error);
  CHECK_THROWS_AS(Graph(2, {{-1, 0}}), error);
  CHECK_THROWS_AS(Graph(2, {{1, 1}}), error);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), error);
  try {
    Graph(3, {{0, 1}, {1, 0}});
  } catch (const error& e) {
    CHECK(e.code() == errc::duplicate_edge);
  }
  try {
    Graph(2, {{1, 1}});
  } catch (const error& e) {
    CHECK(e.code() == errc::self_loop);
  }
}

TEST_CASE("connectivity and tree checks") {
  CHECK(is_connected(path(5)));
  CHECK(is_tree(path(5)));
  CHECK(!is_tree(Graph(3, {{0, 1}, {1, 2}, {0, 2}})));
  Graph two_parts(4, {{0, 1}, {2, 3}});
  CHECK(!is_connected(two_parts));
  CHECK(!is_tree(two_parts));
  CHECK(leaves(path(4)) == std::vector<int>{0, 3});
  CHECK(leaves(star(3)) == std::vector<int>{1, 2, 3});
}

TEST_CASE("bipartition splits by parity from vertex 0") {
  Bipartition b = bipartition(path(4));
  CHECK(b.X == std::vector<int>{0, 2});
  CHECK(b.Y == std::vector<int>{1, 3});
  CHECK(b.s() == 2);
  CHECK(b.t() == 2);

  CHECK_THROWS_AS(bipartition(Graph(3, {{0, 1}, {1, 2}, {0, 2}})), error);
  try {
    bipartition(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  } catch (const error& e) {
    CHECK(e.code() == errc::odd_cycle);
  }
  try {
    bipartition(Graph(4, {{0, 1}, {2, 3}}));
  } catch (const error& e) {
    CHECK(e.code() == errc::disconnected);
  }
}

TEST_CASE("induced subgraph renumbers ascending") {
  Graph g = path(5);
  auto [sub, old_of] = induced_subgraph(g, {0, 1, 1, 1, 0});
  CHECK(old_of == std::vector<int>{1, 2, 3});
  CHECK(sub == path(3));
}

TEST_CASE("leaf residue strips degree-one vertices") {
  auto [res, old_of] = leaf_residue(path(4));
  CHECK(res == path(2));
  CHECK(old_of == std::vector<int>{1, 2});
  auto [core, centre] = leaf_residue(star(4));
  CHECK(core.vertex_count() == 1);
  CHECK(centre == std::vector<int>{0});
}

TEST_CASE("tree shapes") {
  CHECK(classify_tree(path(1)) == TreeShape::path);
  CHECK(classify_tree(path(2)) == TreeShape::path);
  CHECK(classify_tree(path(7)) == TreeShape::path);
  CHECK(classify_tree(star(3)) == TreeShape::caterpillar);
  CHECK(classify_tree(complete_binary(2)) == TreeShape::caterpillar);
  CHECK(classify_tree(complete_binary(3)) == TreeShape::lobster);
  CHECK(classify_tree(complete_binary(4)) == TreeShape::other_tree);
  CHECK(classify_tree(Graph(3, {{0, 1}, {1, 2}, {0, 2}})) == TreeShape::not_a_tree);

  // spider with legs 1,1,2
  Graph spider(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  CHECK(classify_tree(spider) == TreeShape::caterpillar);

  testutil::Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    Graph cat = testutil::random_caterpillar(rng, testutil::rand_int(rng, 1, 6), 3);
    TreeShape s = classify_tree(cat);
    CHECK((s == TreeShape::path || s == TreeShape::caterpillar));
    Graph lob = testutil::random_lobster(rng, testutil::rand_int(rng, 1, 5), 2, 2);
    TreeShape ls = classify_tree(lob);
    CHECK(ls != TreeShape::other_tree);
    CHECK(ls != TreeShape::not_a_tree);
  }
}

TEST_CASE("tree enumeration hits every labelled tree exactly once") {
  TreeEnumeration one(1);
  CHECK(one.size() == 1);
  CHECK(one.at(0).vertex_count() == 1);
  TreeEnumeration two(2);
  CHECK(two.size() == 1);
  CHECK(two.at(0) == path(2));
  TreeEnumeration three(3);
  CHECK(three.size() == 3);

  TreeEnumeration four(4);
  CHECK(four.size() == 16);
  std::set<std::vector<Edge>> seen;
  four.for_each([&](const Graph& t) {
    REQUIRE(is_tree(t));
    REQUIRE(t.vertex_count() == 4);
    seen.insert(t.edges());
  });
  CHECK(seen.size() == 16);

  CHECK_THROWS_AS(TreeEnumeration(10), error);
  CHECK_THROWS_AS(TreeEnumeration(4, 3), error);
  CHECK_THROWS_AS(TreeEnumeration(0), error);
}

TEST_CASE("leaf addition appends grouped leaves and is invertible") {
  Graph host = path(3);
  LeafAdditionSpec spec;
  spec.counts = {2, 0, 1};
  LeafAddition grown = add_leaves(host, spec);
  CHECK(grown.graph.vertex_count() == 6);
  REQUIRE(grown.added.size() == 3);
  CHECK(grown.added[0].vertex == 3);
  CHECK(grown.added[0].host == 0);
  CHECK(grown.added[0].index == 1);
  CHECK(grown.added[1].vertex == 4);
  CHECK(grown.added[1].host == 0);
  CHECK(grown.added[1].index == 2);
  CHECK(grown.added[2].vertex == 5);
  CHECK(grown.added[2].host == 2);
  CHECK(grown.added[2].index == 1);

  LeafAdditionSpec bad;
  bad.counts = {1, 2};
  CHECK_THROWS_AS(add_leaves(host, bad), error);
  LeafAdditionSpec negative;
  negative.counts = {1, -1, 0};
  CHECK_THROWS_AS(add_leaves(host, negative), error);

  testutil::Rng rng(11);
  for (int round = 0; round < 30; ++round) {
    Graph t = testutil::random_tree(rng, testutil::rand_int(rng, 1, 9));
    LeafAdditionSpec s;
    for (int v = 0; v < t.vertex_count(); ++v)
      s.counts.push_back(testutil::rand_int(rng, 0, 3));
    LeafAddition g = add_leaves(t, s);
    REQUIRE(is_tree(g.graph));
    CHECK(g.graph.vertex_count() == t.vertex_count() + s.total());
    // dropping the added vertices recovers the host
    std::vector<char> keep(g.graph.vertex_count(), 1);
    for (const LeafOrigin& o : g.added) {
      keep[o.vertex] = 0;
      CHECK(g.graph.degree(o.vertex) == 1);
      CHECK(g.graph.neighbors(o.vertex)[0] == o.host);
    }
    auto [back, old_of] = induced_subgraph(g.graph, keep);
    CHECK(back == t);
  }
}

TEST_CASE("random tree generator produces trees") {
  testutil::Rng rng(13);
  for (int round = 0; round < 40; ++round) {
    Graph t = testutil::random_tree(rng, testutil::rand_int(rng, 1, 12));
    CHECK(is_tree(t));
  }
}
