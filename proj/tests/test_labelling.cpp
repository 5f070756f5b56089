#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "gracelab/labelling.hpp"
#include "helpers.hpp"

using namespace gracelab;

namespace {

Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return Graph(n, std::move(e));
}

Labelling lab(std::vector<Label> values) {
  Labelling f;
  f.values = std::move(values);
  return f;
}

}  // namespace

TEST_CASE("labelling basics") {
  Labelling f = lab({0, 3, 1});
  CHECK(f.edge_label(0, 1) == 3);
  CHECK(f.edge_label(1, 2) == 2);
  CHECK(f == lab({0, 3, 1}));
  CHECK_THROWS_AS(require_total(path(3), lab({0, 1})), error);
  std::vector<Label> el = induced_edge_labels(path(3), lab({0, 2, 1}));
  CHECK(el == std::vector<Label>{2, 1});
}

TEST_CASE("all four graceful classes on the same labelling") {
  // path 0-1-2-3 labelled 0,3,1,2
  VerificationReport r = verify(path(4), lab({0, 3, 1, 2}));
  CHECK(r.labels_distinct);
  CHECK(r.range_graceful);
  CHECK(r.edges_graceful);
  CHECK(r.set_ordered);
  CHECK(r.matching_sum_graceful);
  CHECK(r.graceful);
  CHECK(r.set_ordered_graceful);
  CHECK(r.strongly_graceful);
  CHECK(r.strongly_set_ordered_graceful);
  CHECK(!r.odd_graceful);
}

TEST_CASE("all four odd classes on the same labelling") {
  VerificationReport r = verify(path(4), lab({0, 5, 2, 3}));
  CHECK(r.range_odd);
  CHECK(r.edges_odd);
  CHECK(r.set_ordered);
  CHECK(r.matching_sum_odd);
  CHECK(r.odd_graceful);
  CHECK(r.set_ordered_odd_graceful);
  CHECK(r.strongly_odd_graceful);
  CHECK(r.strongly_set_ordered_odd_graceful);
  CHECK(!r.graceful);
}

TEST_CASE("degenerate orders") {
  VerificationReport single = verify(Graph(1, {}), lab({0}));
  CHECK(single.graceful);
  CHECK(single.odd_graceful);
  CHECK(single.set_ordered);

  // one edge: [0,1] sits inside both ranges, so both kinds hold at once
  VerificationReport edge = verify(path(2), lab({0, 1}));
  CHECK(edge.graceful);
  CHECK(edge.odd_graceful);
  CHECK(edge.strongly_graceful);
  CHECK(edge.strongly_odd_graceful);
}

TEST_CASE("set order needs connected bipartite graphs") {
  Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  VerificationReport r = verify(triangle, lab({0, 1, 3}));
  CHECK(r.graceful);
  CHECK(!r.set_ordered);
  CHECK(std::count(r.notes.begin(), r.notes.end(),
                   "set-order needs a bipartite graph") == 1);

  Graph split(4, {{0, 1}, {2, 3}});
  VerificationReport s = verify(split, lab({0, 2, 1, 3}));
  CHECK(!s.set_ordered);
  CHECK(std::count(s.notes.begin(), s.notes.end(),
                   "set-order needs a connected graph") == 1);

  VerificationReport p3 = verify(path(3), lab({0, 2, 1}));
  CHECK(p3.set_ordered_graceful);
  CHECK(std::count(p3.notes.begin(), p3.notes.end(), "no perfect matching") == 1);
  CHECK(!p3.strongly_graceful);

  VerificationReport cyc = verify(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
                                  lab({0, 1, 2, 4}));
  CHECK(std::count(cyc.notes.begin(), cyc.notes.end(),
                   "matching sums apply to trees only") == 1);
}

TEST_CASE("perfect matchings of trees") {
  CHECK(tree_perfect_matching(path(4)) == std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK(tree_perfect_matching(path(6)) ==
        std::vector<Edge>{{0, 1}, {2, 3}, {4, 5}});
  CHECK(!tree_perfect_matching(path(3)));
  CHECK(!tree_perfect_matching(Graph(4, {{0, 1}, {0, 2}, {0, 3}})));
  CHECK_THROWS_AS(tree_perfect_matching(Graph(3, {{0, 1}, {1, 2}, {0, 2}})), error);

  testutil::Rng rng(23);
  for (int round = 0; round < 60; ++round) {
    Graph t = testutil::random_tree(rng, testutil::rand_int(rng, 1, 12));
    auto m = tree_perfect_matching(t);
    if (t.vertex_count() % 2 == 1) {
      CHECK(!m);
      continue;
    }
    if (!m) continue;
    std::set<int> covered;
    for (auto [u, v] : *m) {
      CHECK(t.has_edge(u, v));
      covered.insert(u);
      covered.insert(v);
    }
    CHECK(static_cast<int>(covered.size()) == t.vertex_count());
  }
}

TEST_CASE("improper classification") {
  ImproperClassification c2 = classify_improper(path(3), lab({0, 1, 3}));
  CHECK(c2.cls == ImproperClass::out_graceful);
  CHECK(c2.max_label == 3);
  CHECK(std::string(improper_class_code(c2.cls)) == "C2");

  Graph star3(3, {{0, 1}, {0, 2}});
  CHECK(classify_improper(star3, lab({0, 1, 2})).cls == ImproperClass::in_graceful);

  CHECK(classify_improper(path(3), lab({0, 1, 4})).cls == ImproperClass::out_odd);
  CHECK(classify_improper(path(3), lab({0, 3, 2})).cls == ImproperClass::in_odd);

  ImproperClassification off = classify_improper(path(3), lab({1, 2, 4}));
  CHECK(off.cls == ImproperClass::none);
  CHECK(!off.note.empty());

  CHECK(classify_improper(path(3), lab({0, 2, 5})).cls == ImproperClass::none);

  // repeats are fine as long as the edge set stays complete
  Graph spider(4, {{0, 1}, {0, 2}, {0, 3}});
  ImproperClassification rep = classify_improper(spider, lab({0, 1, 2, 3}));
  CHECK(rep.cls == ImproperClass::in_graceful);
}

TEST_CASE("repetition parameters") {
  ImproperParams p = improper_params(lab({0, 1, 1, 2, 2, 2}));
  CHECK(p.k == 5);
  CHECK(p.c == 3);
  CHECK(p.l == 3);
  CHECK(p.shared == std::vector<int>{1, 2, 3, 4, 5});

  ImproperParams proper = improper_params(lab({0, 3, 1, 2}));
  CHECK(proper.k == 0);
  CHECK(proper.l == 0);
  CHECK(proper.shared.empty());

  testutil::Rng rng(31);
  for (int round = 0; round < 200; ++round) {
    const int n = testutil::rand_int(rng, 1, 10);
    std::vector<Label> vals(n);
    for (Label& v : vals) v = testutil::rand_int(rng, 0, 6);
    ImproperParams r = improper_params(lab(vals));
    // k - l counts the repeated values; k = 0 forces l = 0 and k <= 2l else
    long long repeated = 0;
    std::map<Label, int> mult;
    for (Label v : vals) ++mult[v];
    for (auto& [value, m] : mult)
      if (m >= 2) ++repeated;
    CHECK(r.k - r.l == repeated);
    if (r.k == 0)
      CHECK(r.l == 0);
    else
      CHECK(r.k <= 2 * r.l);
    CHECK(r.c + r.l == n);
  }
}

TEST_CASE("complement flips a graceful labelling") {
  testutil::Rng rng(37);
  for (int round = 0; round < 120; ++round) {
    Graph t = testutil::random_tree(rng, testutil::rand_int(rng, 2, 8));
    const long long q = t.edge_count();
    std::vector<Label> pool(q + 1);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Label> vals(pool.begin(), pool.begin() + t.vertex_count());
    Labelling f = lab(vals);
    Labelling c;
    for (Label v : f.values) c.values.push_back(q - v);
    VerificationReport rf = verify(t, f), rc = verify(t, c);
    CHECK(rf.graceful == rc.graceful);
    CHECK(rf.edges_graceful == rc.edges_graceful);
    CHECK(rf.set_ordered == rc.set_ordered);
    CHECK(induced_edge_labels(t, f) == induced_edge_labels(t, c));
  }
}

TEST_CASE("doubling a set-ordered graceful labelling") {
  Graph p4 = path(4);
  Labelling f = lab({0, 3, 1, 2});
  Bipartition bip = bipartition(p4);
  Labelling alpha = odd_double_transform(p4, f, bip);
  CHECK(alpha == lab({0, 5, 2, 3}));
  CHECK(verify(p4, alpha).set_ordered_odd_graceful);

  // not set-ordered with X low: the doubling must refuse
  CHECK_THROWS_AS(odd_double_transform(p4, lab({3, 0, 2, 1}), bip), error);
  try {
    odd_double_transform(p4, lab({3, 0, 2, 1}), bip);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_set_ordered_graceful);
  }

  testutil::Rng rng(41);
  for (int round = 0; round < 60; ++round) {
    Graph cat = testutil::random_caterpillar(rng, testutil::rand_int(rng, 1, 5), 2);
    ConstructionResult base = caterpillar_set_ordered(cat, Mode::graceful);
    Bipartition b = bipartition(cat);
    Labelling doubled = odd_double_transform(cat, base.labelling, b);
    CHECK(verify(cat, doubled).set_ordered_odd_graceful);
  }
}
