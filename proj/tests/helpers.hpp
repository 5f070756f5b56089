#ifndef GRACELAB_TESTS_HELPERS_HPP
#define GRACELAB_TESTS_HELPERS_HPP

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gracelab/construct.hpp"
#include "gracelab/graph.hpp"
#include "gracelab/labelling.hpp"

namespace testutil {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Relabel vertices by a random permutation so generated shapes do not depend
// on construction order.
inline gracelab::Graph shuffle_ids(Rng& rng, const gracelab::Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<gracelab::Edge> edges;
  for (auto [u, v] : g.edges()) edges.push_back({perm[u], perm[v]});
  return gracelab::Graph(n, std::move(edges));
}

inline gracelab::Graph random_tree(Rng& rng, int n) {
  if (n <= 2) return gracelab::Graph(n, n == 2 ? std::vector<gracelab::Edge>{{0, 1}}
                                               : std::vector<gracelab::Edge>{});
  std::vector<int> seq(n - 2);
  for (int& s : seq) s = rand_int(rng, 0, n - 1);
  return gracelab::detail::prufer_decode(n, seq);
}

// Path of spine_len vertices with 0..max_legs pendant vertices on each spine
// vertex, ids shuffled.
inline gracelab::Graph random_caterpillar(Rng& rng, int spine_len, int max_legs) {
  std::vector<gracelab::Edge> edges;
  int next = spine_len;
  for (int s = 0; s + 1 < spine_len; ++s) edges.push_back({s, s + 1});
  for (int s = 0; s < spine_len; ++s)
    for (int legs = rand_int(rng, 0, max_legs); legs > 0; --legs)
      edges.push_back({s, next++});
  return shuffle_ids(rng, gracelab::Graph(next, std::move(edges)));
}

// Caterpillar plus a second level of pendants under the first level.
inline gracelab::Graph random_lobster(Rng& rng, int spine_len, int max_level1,
                                      int max_level2) {
  std::vector<gracelab::Edge> edges;
  int next = spine_len;
  for (int s = 0; s + 1 < spine_len; ++s) edges.push_back({s, s + 1});
  for (int s = 0; s < spine_len; ++s)
    for (int l1 = rand_int(rng, 0, max_level1); l1 > 0; --l1) {
      const int mid = next++;
      edges.push_back({s, mid});
      for (int l2 = rand_int(rng, 0, max_level2); l2 > 0; --l2)
        edges.push_back({mid, next++});
    }
  return shuffle_ids(rng, gracelab::Graph(next, std::move(edges)));
}

// Independent oracle: enumerate every injective assignment out of the label
// range and test the definition with plain std::set arithmetic.
inline long long naive_count(const gracelab::Graph& g, gracelab::Mode mode) {
  using gracelab::Label;
  const int n = g.vertex_count();
  const long long q = g.edge_count();
  const Label top =
      std::max<Label>(mode == gracelab::Mode::graceful ? q : 2 * q - 1, 0);
  std::vector<Label> f(n, 0);
  std::vector<char> used(static_cast<std::size_t>(top) + 1, 0);
  std::set<Label> want;
  for (long long e = 1; e <= q; ++e)
    want.insert(mode == gracelab::Mode::graceful ? e : 2 * e - 1);
  long long count = 0;
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      if (n > 0 && *std::min_element(f.begin(), f.end()) != 0) return;
      std::set<Label> got;
      for (auto [a, b] : g.edges()) got.insert(std::llabs(f[a] - f[b]));
      if (got == want) ++count;
      return;
    }
    for (Label c = 0; c <= top; ++c) {
      if (used[c]) continue;
      used[c] = 1;
      f[v] = c;
      self(self, v + 1);
      used[c] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

// Random composition input: caterpillar base and caterpillar attachments,
// everything labelled by the sweep construction.
inline gracelab::CompositionSpec random_composition(Rng& rng, gracelab::Mode mode) {
  using namespace gracelab;
  CompositionSpec spec;
  spec.base = random_caterpillar(rng, rand_int(rng, 1, 4), 2);
  spec.base_labelling = caterpillar_set_ordered(spec.base, mode).labelling;
  Bipartition bip = set_order_bipartition(
      spec.base, spec.base_labelling,
      mode == Mode::graceful ? errc::not_set_ordered_graceful
                             : errc::not_set_ordered_odd_graceful);
  spec.x_attachments.resize(bip.X.size());
  spec.y_attachments.resize(bip.Y.size());
  std::vector<int> side(spec.base.vertex_count()), pos(spec.base.vertex_count());
  for (std::size_t i = 0; i < bip.X.size(); ++i) {
    side[bip.X[i]] = 0;
    pos[bip.X[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < bip.Y.size(); ++i) {
    side[bip.Y[i]] = 1;
    pos[bip.Y[i]] = static_cast<int>(i);
  }
  const int pieces = rand_int(rng, 0, 4);
  for (int p = 0; p < pieces; ++p) {
    AttachmentComponent c;
    c.graph = random_caterpillar(rng, rand_int(rng, 1, 3), 2);
    c.labelling = caterpillar_set_ordered(c.graph, mode).labelling;
    for (int v = 0; v < c.graph.vertex_count(); ++v)
      if (c.labelling[v] == 0) c.attach = v;
    const int host = rand_int(rng, 0, spec.base.vertex_count() - 1);
    (side[host] == 0 ? spec.x_attachments[pos[host]]
                     : spec.y_attachments[pos[host]])
        .push_back(std::move(c));
  }
  return spec;
}

}  // namespace testutil

#endif  // GRACELAB_TESTS_HELPERS_HPP
