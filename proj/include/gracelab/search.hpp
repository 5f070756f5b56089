#ifndef GRACELAB_SEARCH_HPP
#define GRACELAB_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "gracelab/errors.hpp"
#include "gracelab/graph.hpp"
#include "gracelab/labelling.hpp"

namespace gracelab {

enum class ImproperMode { proper_only, in, out };

struct SearchOptions {
  Mode mode = Mode::graceful;
  ImproperMode improper = ImproperMode::proper_only;
  std::optional<Label> out_bound;  // vertex-label ceiling for out searches
  long long limit = 1;             // stop after this many labellings; 0 = count all
  bool deterministic_order = true;
  int threads = 1;
};

struct SearchOutcome {
  std::optional<Labelling> witness;  // first labelling in canonical order
  long long count = 0;
  bool exhausted = true;  // false when the limit stopped the search
};

namespace detail {

struct EngineSpec {
  Label label_max = 0;  // vertex labels live in [0, label_max]
  Label edge_cap = 0;   // edge labels live in [1, edge_cap]
  bool odd_edges = false;
  bool injective = false;
  std::optional<Label> max_above;  // completed max must exceed this
};

// Assignment order.  Highest degree first (ties to the smaller id); when
// adjacency-guided, later picks must touch the already-placed part so each new
// vertex is pinned down by at least one edge label.
inline std::vector<int> assignment_order(const Graph& g, bool adjacency_guided) {
  const int n = g.vertex_count();
  std::vector<int> order;
  order.reserve(n);
  auto better = [&](int a, int b) {
    if (b == -1) return true;
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  };
  if (!adjacency_guided) {
    order.resize(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return better(a, b); });
    return order;
  }
  std::vector<char> placed(n, 0), frontier(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    if (step > 0)
      for (int v = 0; v < n; ++v)
        if (!placed[v] && frontier[v] && better(v, best)) best = v;
    if (best == -1)
      for (int v = 0; v < n; ++v)
        if (!placed[v] && better(v, best)) best = v;
    placed[best] = 1;
    order.push_back(best);
    for (int w : g.neighbors(best)) frontier[w] = 1;
  }
  return order;
}

// Depth-first assignment in the fixed order.  Candidates for a vertex with an
// already-labelled neighbour come from the unused edge labels (two per label),
// tried in ascending label value; edge labels are kept pairwise distinct, so a
// full assignment realises the complete label set automatically.
class Dfs {
 public:
  Dfs(const Graph& g, const EngineSpec& spec, const std::vector<int>& order)
      : g_(g), spec_(spec), order_(order) {
    const int n = g.vertex_count();
    std::vector<int> pos(n, -1);
    for (int k = 0; k < n; ++k) pos[order[k]] = k;
    earlier_.resize(n);
    for (int k = 0; k < n; ++k)
      for (int w : g.neighbors(order[k]))
        if (pos[w] < k) earlier_[k].push_back(w);
    f_.values.assign(n, 0);
    used_vertex_.assign(static_cast<std::size_t>(spec.label_max) + 2, 0);
    used_edge_.assign(static_cast<std::size_t>(spec.edge_cap) + 2, 0);
    cand_.resize(n);
    marked_.resize(n);
  }

  void set_cancel(const std::atomic<long long>* winner, long long branch) {
    winner_ = winner;
    branch_ = branch;
  }

  // visit(f) returns false to stop everything; the return value is true when
  // the space was fully explored (no stop, no cancellation).
  template <class Visit>
  bool run(Visit&& visit) {
    return go(0, -1, 0, visit);
  }

  template <class Visit>
  bool run_first(Label first, Visit&& visit) {
    if (order_.empty()) return true;
    const int v = order_[0];
    f_[v] = first;
    if (spec_.injective) used_vertex_[first] = 1;
    const bool full = go(1, first, first == 0 ? 1 : 0, visit);
    if (spec_.injective) used_vertex_[first] = 0;
    return full;
  }

 private:
  template <class Visit>
  bool go(int k, Label cur_max, int zeros, Visit& visit) {
    if (winner_ && (++nodes_ & 255) == 0 &&
        winner_->load(std::memory_order_relaxed) < branch_)
      return false;
    const int n = g_.vertex_count();
    if (k == n) {
      if (zeros == 0) return true;
      if (spec_.max_above && cur_max <= *spec_.max_above) return true;
      return visit(std::as_const(f_));
    }
    const int v = order_[k];
    const auto& en = earlier_[k];
    if (en.empty()) {
      for (Label c = 0; c <= spec_.label_max; ++c)
        if (!try_label(k, v, c, cur_max, zeros, visit)) return false;
      return true;
    }
    auto& cand = cand_[k];
    cand.clear();
    const Label fu = f_[en[0]];
    const Label step = spec_.odd_edges ? 2 : 1;
    for (Label e = 1; e <= spec_.edge_cap; e += step) {
      if (used_edge_[e]) continue;
      if (fu - e >= 0) cand.push_back(fu - e);
      if (fu + e <= spec_.label_max) cand.push_back(fu + e);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (std::size_t idx = 0; idx < cand.size(); ++idx)
      if (!try_label(k, v, cand[idx], cur_max, zeros, visit)) return false;
    return true;
  }

  template <class Visit>
  bool try_label(int k, int v, Label c, Label cur_max, int zeros, Visit& visit) {
    if (spec_.injective && used_vertex_[c]) return true;
    auto& marked = marked_[k];
    marked.clear();
    for (int u : earlier_[k]) {
      const Label e = c > f_[u] ? c - f_[u] : f_[u] - c;
      if (e < 1 || e > spec_.edge_cap || (spec_.odd_edges && e % 2 == 0) ||
          used_edge_[e]) {
        for (Label m : marked) used_edge_[m] = 0;
        return true;
      }
      used_edge_[e] = 1;
      marked.push_back(e);
    }
    f_[v] = c;
    if (spec_.injective) used_vertex_[c] = 1;
    const bool keep_going =
        go(k + 1, std::max(cur_max, c), zeros + (c == 0 ? 1 : 0), visit);
    if (spec_.injective) used_vertex_[c] = 0;
    for (Label m : marked) used_edge_[m] = 0;
    return keep_going;
  }

  const Graph& g_;
  EngineSpec spec_;
  const std::vector<int>& order_;
  std::vector<std::vector<int>> earlier_;
  Labelling f_;
  std::vector<char> used_vertex_, used_edge_;
  std::vector<std::vector<Label>> cand_;
  std::vector<std::vector<Label>> marked_;
  const std::atomic<long long>* winner_ = nullptr;
  long long branch_ = -1;
  unsigned long long nodes_ = 0;
};

inline EngineSpec engine_spec(const Graph& g, const SearchOptions& opt) {
  const long long q = g.edge_count();
  EngineSpec es;
  es.odd_edges = opt.mode == Mode::odd;
  es.edge_cap = std::max<Label>(opt.mode == Mode::graceful ? q : 2 * q - 1, 0);
  es.label_max = es.edge_cap;
  es.injective = opt.improper == ImproperMode::proper_only;
  if (opt.improper == ImproperMode::out) {
    const Label cap = es.edge_cap;
    const Label bound = opt.out_bound ? *opt.out_bound : 2 * cap;
    if (bound <= cap)
      fail(errc::bound_too_small, "label bound must exceed the edge-label cap");
    es.label_max = bound;
    es.max_above = cap;
  }
  return es;
}

inline SearchOutcome search_sequential(const Graph& g, const EngineSpec& es,
                                       const std::vector<int>& order,
                                       long long limit) {
  SearchOutcome out;
  Dfs dfs(g, es, order);
  out.exhausted = dfs.run([&](const Labelling& f) {
    if (out.count == 0) out.witness = f;
    ++out.count;
    return limit == 0 || out.count < limit;
  });
  return out;
}

// Parallel split on the first vertex's label.  Branches are distributed
// round-robin and merged back in branch order, which reproduces the
// single-threaded traversal order exactly: same witness, same counts.
inline SearchOutcome search_parallel(const Graph& g, const EngineSpec& es,
                                     const std::vector<int>& order,
                                     long long limit, int threads) {
  struct Branch {
    long long count = 0;
    std::optional<Labelling> witness;
  };
  const long long branches = es.label_max + 1;
  std::vector<Branch> results(branches);
  std::atomic<long long> winner{branches};
  const bool cancelable = limit == 1;

  auto worker = [&](int w) {
    Dfs dfs(g, es, order);
    for (long long b = w; b < branches; b += threads) {
      if (cancelable && winner.load(std::memory_order_relaxed) < b) continue;
      if (cancelable) dfs.set_cancel(&winner, b);
      Branch& r = results[b];
      dfs.run_first(static_cast<Label>(b), [&](const Labelling& f) {
        if (r.count == 0) r.witness = f;
        ++r.count;
        return limit == 0 || r.count < limit;
      });
      if (cancelable && r.witness) {
        long long cur = winner.load(std::memory_order_relaxed);
        while (b < cur &&
               !winner.compare_exchange_weak(cur, b, std::memory_order_relaxed)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& th : pool) th.join();

  SearchOutcome out;
  if (limit == 0) {
    for (Branch& r : results) {
      if (!out.witness && r.witness) out.witness = std::move(r.witness);
      out.count += r.count;
    }
    out.exhausted = true;
    return out;
  }
  long long remaining = limit;
  for (Branch& r : results) {
    const long long take = std::min(r.count, remaining);
    if (take > 0 && !out.witness) out.witness = std::move(r.witness);
    out.count += take;
    remaining -= take;
    if (remaining == 0) {
      out.exhausted = false;
      return out;
    }
  }
  out.exhausted = true;
  return out;
}

}  // namespace detail

// Count or find labellings of the requested kind.  Proper searches ask for
// injective labellings with the full edge-label set; "in" allows repeated
// vertex labels within the usual range; "out" additionally raises the vertex
// ceiling and keeps only labellings that actually exceed the usual range.
inline SearchOutcome search(const Graph& g, const SearchOptions& opt) {
  if (opt.improper != ImproperMode::proper_only && !is_tree(g))
    fail(errc::not_a_tree, "improper searches are defined for trees");
  detail::EngineSpec es = detail::engine_spec(g, opt);
  const std::vector<int> order = detail::assignment_order(g, opt.deterministic_order);
  const int threads = std::max(1, opt.threads);
  if (threads == 1 || g.vertex_count() == 0)
    return detail::search_sequential(g, es, order, opt.limit);
  return detail::search_parallel(g, es, order, opt.limit, threads);
}

inline SearchOutcome search_graceful(const Graph& g, SearchOptions opt = {}) {
  opt.mode = Mode::graceful;
  opt.improper = ImproperMode::proper_only;
  return search(g, opt);
}

inline SearchOutcome search_odd_graceful(const Graph& g, SearchOptions opt = {}) {
  opt.mode = Mode::odd;
  opt.improper = ImproperMode::proper_only;
  return search(g, opt);
}

inline SearchOutcome search_improper(const Graph& g, const SearchOptions& opt) {
  if (opt.improper == ImproperMode::proper_only)
    fail(errc::range_error, "improper search needs the in or out mode");
  return search(g, opt);
}

// Stream every labelling the options describe through the callback, together
// with its repetition parameters; return false from the callback to stop.
// Returns true when the stream ran to the end.
inline bool enumerate_improper(
    const Graph& tree, const SearchOptions& opt,
    const std::function<bool(const Labelling&, const ImproperParams&)>& visit) {
  if (!is_tree(tree)) fail(errc::not_a_tree, "enumeration is defined for trees");
  detail::EngineSpec es = detail::engine_spec(tree, opt);
  const std::vector<int> order =
      detail::assignment_order(tree, opt.deterministic_order);
  detail::Dfs dfs(tree, es, order);
  return dfs.run(
      [&](const Labelling& f) { return visit(f, improper_params(f)); });
}

// ---------------------------------------------------------------------------
// Repetition extremes

struct ExtremalCell {
  long long count = 0;
  std::optional<Labelling> first;
};

struct ExtremalSlice {
  long long l = 0;
  long long k_min = 0;
  long long k_max = 0;
  std::vector<Labelling> witnesses;  // first witness per k, ascending k
};

using CellKey = std::pair<long long, long long>;  // (k, l)

struct ExtremalTable {
  std::map<CellKey, ExtremalCell> in_cells, out_cells;
  std::optional<ExtremalSlice> in_min, in_max, out_min;
  Label out_bound_used = 0;
};

namespace detail {

inline std::map<CellKey, ExtremalCell> cell_scan(const Graph& g,
                                                 const EngineSpec& es,
                                                 const std::vector<int>& order,
                                                 int threads) {
  auto fold = [](std::map<CellKey, ExtremalCell>& cells, const Labelling& f) {
    ImproperParams p = improper_params(f);
    ExtremalCell& cell = cells[{p.k, p.l}];
    if (cell.count == 0) cell.first = f;
    ++cell.count;
    return true;
  };
  if (threads <= 1 || g.vertex_count() == 0) {
    std::map<CellKey, ExtremalCell> cells;
    Dfs dfs(g, es, order);
    dfs.run([&](const Labelling& f) { return fold(cells, f); });
    return cells;
  }
  const long long branches = es.label_max + 1;
  std::vector<std::map<CellKey, ExtremalCell>> per_branch(branches);
  auto worker = [&](int w) {
    Dfs dfs(g, es, order);
    for (long long b = w; b < branches; b += threads)
      dfs.run_first(static_cast<Label>(b),
                    [&](const Labelling& f) { return fold(per_branch[b], f); });
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& th : pool) th.join();

  std::map<CellKey, ExtremalCell> cells;  // merge in branch order
  for (auto& part : per_branch)
    for (auto& [key, cell] : part) {
      ExtremalCell& into = cells[key];
      if (into.count == 0) into.first = std::move(cell.first);
      into.count += cell.count;
    }
  return cells;
}

inline std::optional<ExtremalSlice> slice_at(
    const std::map<CellKey, ExtremalCell>& cells, bool minimal_l,
    int witness_cap) {
  if (cells.empty()) return std::nullopt;
  bool have = false;
  long long target = 0;
  for (const auto& [key, cell] : cells) {
    if (!have || (minimal_l ? key.second < target : key.second > target))
      target = key.second;
    have = true;
  }
  ExtremalSlice s;
  s.l = target;
  bool first = true;
  for (const auto& [key, cell] : cells) {  // keys ascend by k first
    if (key.second != target) continue;
    if (first) s.k_min = key.first;
    s.k_max = key.first;
    first = false;
    if (static_cast<int>(s.witnesses.size()) < witness_cap && cell.first)
      s.witnesses.push_back(*cell.first);
  }
  return s;
}

}  // namespace detail

// Full census of the in- and out-labellings of a tree, bucketed by their
// repetition parameters (k shared vertices, l lost labels).  The slices pick
// out the smallest/largest l present and the k spread within it.
inline ExtremalTable extremal_params(const Graph& tree, const SearchOptions& opt,
                                     int witness_cap = 10) {
  if (!is_tree(tree)) fail(errc::not_a_tree, "repetition census is defined for trees");
  const int threads = std::max(1, opt.threads);
  const std::vector<int> order =
      detail::assignment_order(tree, opt.deterministic_order);

  SearchOptions in_opt = opt;
  in_opt.improper = ImproperMode::in;
  SearchOptions out_opt = opt;
  out_opt.improper = ImproperMode::out;

  ExtremalTable table;
  detail::EngineSpec in_spec = detail::engine_spec(tree, in_opt);
  table.in_cells = detail::cell_scan(tree, in_spec, order, threads);
  detail::EngineSpec out_spec = detail::engine_spec(tree, out_opt);
  table.out_cells = detail::cell_scan(tree, out_spec, order, threads);
  table.out_bound_used = out_spec.label_max;

  table.in_min = detail::slice_at(table.in_cells, true, witness_cap);
  table.in_max = detail::slice_at(table.in_cells, false, witness_cap);
  table.out_min = detail::slice_at(table.out_cells, true, witness_cap);
  return table;
}

// ---------------------------------------------------------------------------
// Exhaustive sweep over labelled trees

struct SweepReport {
  int n_max = 0;
  Mode mode = Mode::graceful;
  long long trees_checked = 0;
  std::vector<std::pair<int, long long>> counterexamples;  // (order, tree index)
  std::vector<std::pair<int, long long>> per_order;        // (order, trees checked)
};

// Check every labelled tree on up to n_max vertices for a proper labelling of
// the requested kind.  Trees are split across threads by index; results do
// not depend on the thread count.
inline SweepReport conjecture_sweep(int n_max, Mode mode, int threads = 1,
                                    int enumeration_cap = 8) {
  if (n_max < 1) fail(errc::range_error, "sweep needs at least order 1");
  if (n_max > enumeration_cap)
    fail(errc::cap_exceeded, "sweep order exceeds the enumeration cap");
  threads = std::max(1, threads);
  SweepReport rep;
  rep.n_max = n_max;
  rep.mode = mode;
  for (int n = 1; n <= n_max; ++n) {
    TreeEnumeration trees(n, enumeration_cap);
    const unsigned long long total = trees.size();
    std::vector<std::vector<long long>> found(threads);
    auto worker = [&](int w) {
      SearchOptions so;
      so.mode = mode;
      so.limit = 1;
      for (unsigned long long idx = w; idx < total;
           idx += static_cast<unsigned long long>(threads)) {
        Graph t = trees.at(idx);
        SearchOutcome o = search(t, so);
        if (!o.witness) found[w].push_back(static_cast<long long>(idx));
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < threads; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& th : pool) th.join();

    std::vector<long long> bad;
    for (auto& part : found) bad.insert(bad.end(), part.begin(), part.end());
    std::sort(bad.begin(), bad.end());
    for (long long idx : bad) rep.counterexamples.push_back({n, idx});
    rep.trees_checked += static_cast<long long>(total);
    rep.per_order.push_back({n, static_cast<long long>(total)});
  }
  return rep;
}

}  // namespace gracelab

#endif  // GRACELAB_SEARCH_HPP
