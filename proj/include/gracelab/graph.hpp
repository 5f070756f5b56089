#ifndef GRACELAB_GRAPH_HPP
#define GRACELAB_GRAPH_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gracelab/errors.hpp"

namespace gracelab {

using Edge = std::pair<int, int>;

// Undirected graph on vertices 0..n-1.  Edges are normalised to (u < v),
// sorted and unique, so structurally equal graphs compare equal.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) fail(errc::range_error, "negative vertex count");
    for (auto& [u, v] : edges) {
      if (u > v) std::swap(u, v);
      if (u < 0 || v >= n)
        fail(errc::range_error,
             "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
      if (u == v) fail(errc::self_loop, "loop at vertex " + std::to_string(u));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      fail(errc::duplicate_edge, "duplicate edge");
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
  }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;  // neighbour lists come out sorted
};

inline bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

inline bool is_tree(const Graph& g) {
  return g.vertex_count() >= 1 && g.edge_count() == g.vertex_count() - 1 &&
         is_connected(g);
}

// Degree-1 vertices, ascending.
inline std::vector<int> leaves(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) out.push_back(v);
  return out;
}

struct Bipartition {
  std::vector<int> X, Y;
  int s() const { return static_cast<int>(X.size()); }
  int t() const { return static_cast<int>(Y.size()); }
};

// Two-colouring of a connected bipartite graph; X is the class of vertex 0.
// Within each class vertices are listed ascending.
inline Bipartition bipartition(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) fail(errc::range_error, "empty graph");
  if (!is_connected(g)) fail(errc::disconnected, "graph is not connected");
  std::vector<int> color(n, -1);
  std::vector<int> queue{0};
  color[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int w : g.neighbors(v)) {
      if (color[w] == -1) {
        color[w] = 1 - color[v];
        queue.push_back(w);
      } else if (color[w] == color[v]) {
        fail(errc::odd_cycle, "graph contains an odd cycle");
      }
    }
  }
  Bipartition b;
  for (int v = 0; v < n; ++v) (color[v] == 0 ? b.X : b.Y).push_back(v);
  return b;
}

// Induced subgraph on the vertices with keep[v] != 0.  Kept vertices are
// renumbered 0..k-1 in ascending order of their old ids; the returned map
// sends new ids back to old ones.
inline std::pair<Graph, std::vector<int>> induced_subgraph(
    const Graph& g, const std::vector<char>& keep) {
  std::vector<int> old_of;
  std::vector<int> new_of(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (keep[v]) {
      new_of[v] = static_cast<int>(old_of.size());
      old_of.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (keep[u] && keep[v]) edges.push_back({new_of[u], new_of[v]});
  return {Graph(static_cast<int>(old_of.size()), std::move(edges)), old_of};
}

// The tree minus its degree-1 vertices (one simultaneous round).
inline std::pair<Graph, std::vector<int>> leaf_residue(const Graph& tree) {
  std::vector<char> keep(tree.vertex_count(), 0);
  for (int v = 0; v < tree.vertex_count(); ++v)
    if (tree.degree(v) != 1) keep[v] = 1;
  return induced_subgraph(tree, keep);
}

enum class TreeShape { path, caterpillar, lobster, other_tree, not_a_tree };

inline const char* tree_shape_name(TreeShape s) {
  switch (s) {
    case TreeShape::path: return "path";
    case TreeShape::caterpillar: return "caterpillar";
    case TreeShape::lobster: return "lobster";
    case TreeShape::other_tree: return "other-tree";
    case TreeShape::not_a_tree: return "not-a-tree";
  }
  return "unknown";
}

inline bool is_path_graph(const Graph& g) {
  if (!is_tree(g)) return false;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

// Most specific shape wins: path < caterpillar < lobster < other tree.
// A tree on at most two vertices counts as a path, and empty residues keep
// the small cases in the expected classes.
inline TreeShape classify_tree(const Graph& g) {
  if (!is_tree(g)) return TreeShape::not_a_tree;
  if (is_path_graph(g)) return TreeShape::path;
  auto [r1, map1] = leaf_residue(g);
  if (is_path_graph(r1)) return TreeShape::caterpillar;
  auto [r2, map2] = leaf_residue(r1);
  if (is_path_graph(r2)) return TreeShape::lobster;
  return TreeShape::other_tree;
}

namespace detail {

inline Graph prufer_decode(int n, const std::vector<int>& seq) {
  if (n == 1) return Graph(1, {});
  std::vector<int> degree(n, 1);
  for (int v : seq) ++degree[v];
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int v : seq) {
    int leaf = -1;
    for (int u = 0; u < n; ++u)
      if (degree[u] == 1) {
        leaf = u;
        break;
      }
    edges.push_back({leaf, v});
    --degree[leaf];
    --degree[v];
  }
  int a = -1, b = -1;
  for (int u = 0; u < n; ++u)
    if (degree[u] == 1) (a == -1 ? a : b) = u;
  edges.push_back({a, b});
  return Graph(n, std::move(edges));
}

}  // namespace detail

// Every labelled tree on n vertices, by decoding all n^(n-2) vertex
// sequences.  Random access by index keeps sweeps easy to split across
// workers.
class TreeEnumeration {
 public:
  static constexpr int default_cap = 9;

  explicit TreeEnumeration(int n, int cap = default_cap) : n_(n) {
    if (n < 1) fail(errc::range_error, "order must be at least 1");
    if (n > cap)
      fail(errc::cap_exceeded,
           "order " + std::to_string(n) + " above cap " + std::to_string(cap));
    total_ = 1;
    for (int i = 0; i < n - 2; ++i) total_ *= static_cast<unsigned long long>(n);
  }

  int order() const { return n_; }
  unsigned long long size() const { return total_; }

  Graph at(unsigned long long index) const {
    std::vector<int> seq(n_ >= 2 ? n_ - 2 : 0);
    unsigned long long rem = index;
    for (int pos = static_cast<int>(seq.size()) - 1; pos >= 0; --pos) {
      seq[pos] = static_cast<int>(rem % n_);
      rem /= n_;
    }
    return detail::prufer_decode(n_, seq);
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (unsigned long long i = 0; i < total_; ++i) fn(at(i));
  }

 private:
  int n_;
  unsigned long long total_;
};

// Per-host leaf counts for growing a tree by pendant vertices.
struct LeafAdditionSpec {
  std::vector<int> counts;
  long long total() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
  }
};

struct LeafOrigin {
  int vertex;  // id in the grown graph
  int host;    // id in the host graph
  int index;   // 1-based position among the host's new leaves
};

struct LeafAddition {
  Graph graph;
  std::vector<LeafOrigin> added;
};

// New leaves are appended after the host's vertices, grouped by host in
// ascending order; deleting them again recovers the host graph.
inline LeafAddition add_leaves(const Graph& host, const LeafAdditionSpec& spec) {
  const int n = host.vertex_count();
  if (static_cast<int>(spec.counts.size()) != n)
    fail(errc::range_error, "leaf counts must cover every host vertex");
  for (int c : spec.counts)
    if (c < 0) fail(errc::range_error, "negative leaf count");
  std::vector<Edge> edges = host.edges();
  std::vector<LeafOrigin> added;
  int next = n;
  for (int v = 0; v < n; ++v)
    for (int a = 1; a <= spec.counts[v]; ++a) {
      edges.push_back({v, next});
      added.push_back({next, v, a});
      ++next;
    }
  return {Graph(next, std::move(edges)), std::move(added)};
}

}  // namespace gracelab

#endif  // GRACELAB_GRAPH_HPP
