#ifndef GRACELAB_LABELLING_HPP
#define GRACELAB_LABELLING_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gracelab/errors.hpp"
#include "gracelab/graph.hpp"

namespace gracelab {

using Label = long long;

enum class Mode { graceful, odd };

inline const char* mode_name(Mode m) {
  return m == Mode::graceful ? "graceful" : "odd";
}

// Total vertex labelling; the induced label of an edge uv is |f(u) - f(v)|.
struct Labelling {
  std::vector<Label> values;

  Labelling() = default;
  explicit Labelling(std::vector<Label> v) : values(std::move(v)) {}

  int size() const { return static_cast<int>(values.size()); }
  Label operator[](int v) const { return values[v]; }
  Label& operator[](int v) { return values[v]; }

  Label edge_label(int u, int v) const {
    return std::abs(values[u] - values[v]);
  }

  bool operator==(const Labelling& other) const = default;
};

inline void require_total(const Graph& g, const Labelling& f) {
  if (f.size() != g.vertex_count())
    fail(errc::partial_labelling,
         "labelling covers " + std::to_string(f.size()) + " of " +
             std::to_string(g.vertex_count()) + " vertices");
}

// Induced edge labels in canonical edge order (a multiset; duplicates are
// meaningful to callers).
inline std::vector<Label> induced_edge_labels(const Graph& g, const Labelling& f) {
  require_total(g, f);
  std::vector<Label> out;
  out.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) out.push_back(f.edge_label(u, v));
  return out;
}

struct VerificationReport {
  // Constraint flags on f : V -> {0,1,2,...}.
  bool labels_distinct = false;        // |f(V)| = |V|
  bool range_graceful = false;         // f(V) within [0,q], minimum 0
  bool range_odd = false;              // f(V) within [0,2q-1], minimum 0
  bool edges_graceful = false;         // edge labels are exactly [1,q]
  bool edges_odd = false;              // edge labels are exactly the odds in [1,2q-1]
  bool set_ordered = false;            // bipartite with max f(X) < min f(Y)
  bool matching_sum_graceful = false;  // tree w/ perfect matching, f(x)+f(y)=q on it
  bool matching_sum_odd = false;       // as above with sum 2q-1

  // Named classes, each a fixed conjunction of the flags above.
  bool graceful = false;
  bool set_ordered_graceful = false;
  bool strongly_graceful = false;
  bool strongly_set_ordered_graceful = false;
  bool odd_graceful = false;
  bool set_ordered_odd_graceful = false;
  bool strongly_odd_graceful = false;
  bool strongly_set_ordered_odd_graceful = false;

  std::vector<std::string> notes;
};

// Unique perfect matching of a tree if one exists: leaves force their
// matching edge, so greedy peeling either succeeds or proves there is none.
inline std::optional<std::vector<Edge>> tree_perfect_matching(const Graph& t) {
  if (!is_tree(t)) fail(errc::not_a_tree, "perfect matching asked of a non-tree");
  const int n = t.vertex_count();
  if (n % 2 != 0) return std::nullopt;
  std::vector<int> degree(n);
  std::vector<char> alive(n, 1);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] == 1) queue.push_back(v);
  }
  std::vector<Edge> matching;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    if (!alive[u]) continue;
    int partner = -1;
    for (int w : t.neighbors(u))
      if (alive[w]) {
        partner = w;
        break;
      }
    if (partner == -1) return std::nullopt;  // isolated, unmatched
    alive[u] = alive[partner] = 0;
    matching.push_back({std::min(u, partner), std::max(u, partner)});
    for (int w : t.neighbors(partner))
      if (alive[w] && --degree[w] == 1) queue.push_back(w);
  }
  for (int v = 0; v < n; ++v)
    if (alive[v]) return std::nullopt;
  std::sort(matching.begin(), matching.end());
  return matching;
}

namespace detail {

// Two-colouring that tolerates any input: empty result means not bipartite
// or not connected.
inline std::optional<Bipartition> try_bipartition(const Graph& g) {
  if (g.vertex_count() == 0 || !is_connected(g)) return std::nullopt;
  try {
    return bipartition(g);
  } catch (const error&) {
    return std::nullopt;
  }
}

inline bool side_ordered(const std::vector<int>& lo, const std::vector<int>& hi,
                         const Labelling& f) {
  if (lo.empty() || hi.empty()) return true;
  Label max_lo = f[lo[0]], min_hi = f[hi[0]];
  for (int v : lo) max_lo = std::max(max_lo, f[v]);
  for (int v : hi) min_hi = std::min(min_hi, f[v]);
  return max_lo < min_hi;
}

}  // namespace detail

inline VerificationReport verify(const Graph& g, const Labelling& f) {
  require_total(g, f);
  VerificationReport r;
  const int n = g.vertex_count();
  const long long q = g.edge_count();
  if (n == 0) {
    r.notes.push_back("empty graph");
    return r;
  }

  std::vector<Label> sorted = f.values;
  std::sort(sorted.begin(), sorted.end());
  const Label lo = sorted.front(), hi = sorted.back();
  r.labels_distinct =
      std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  // For q = 0 both ranges degenerate to the single label 0.
  r.range_graceful = lo == 0 && hi <= std::max<Label>(q, 0);
  r.range_odd = lo == 0 && hi <= std::max<Label>(2 * q - 1, 0);

  std::vector<Label> el = induced_edge_labels(g, f);
  std::sort(el.begin(), el.end());
  r.edges_graceful = true;
  r.edges_odd = true;
  for (long long i = 0; i < q; ++i) {
    if (el[i] != i + 1) r.edges_graceful = false;
    if (el[i] != 2 * i + 1) r.edges_odd = false;
  }

  if (auto bip = detail::try_bipartition(g)) {
    r.set_ordered = detail::side_ordered(bip->X, bip->Y, f) ||
                    detail::side_ordered(bip->Y, bip->X, f);
    if (!r.set_ordered) r.notes.push_back("neither side ordering works");
  } else {
    r.notes.push_back(is_connected(g) ? "set-order needs a bipartite graph"
                                      : "set-order needs a connected graph");
  }

  if (is_tree(g)) {
    if (auto m = tree_perfect_matching(g)) {
      r.matching_sum_graceful = r.matching_sum_odd = true;
      for (auto [u, v] : *m) {
        if (f[u] + f[v] != q) r.matching_sum_graceful = false;
        if (f[u] + f[v] != 2 * q - 1) r.matching_sum_odd = false;
      }
    } else {
      r.notes.push_back("no perfect matching");
    }
  } else {
    r.notes.push_back("matching sums apply to trees only");
  }

  const bool base_graceful = r.labels_distinct && r.range_graceful && r.edges_graceful;
  const bool base_odd = r.labels_distinct && r.range_odd && r.edges_odd;
  r.graceful = base_graceful;
  r.set_ordered_graceful = base_graceful && r.set_ordered;
  r.strongly_graceful = base_graceful && r.matching_sum_graceful;
  r.strongly_set_ordered_graceful =
      base_graceful && r.set_ordered && r.matching_sum_graceful;
  r.odd_graceful = base_odd;
  r.set_ordered_odd_graceful = base_odd && r.set_ordered;
  r.strongly_odd_graceful = base_odd && r.matching_sum_odd;
  r.strongly_set_ordered_odd_graceful =
      base_odd && r.set_ordered && r.matching_sum_odd;
  return r;
}

// C1/C3: edge labels complete and every vertex label within the edge range.
// C2/C4: edge labels complete but some vertex label beyond it.
enum class ImproperClass { none, in_graceful, out_graceful, in_odd, out_odd };

inline const char* improper_class_code(ImproperClass c) {
  switch (c) {
    case ImproperClass::in_graceful: return "C1";
    case ImproperClass::out_graceful: return "C2";
    case ImproperClass::in_odd: return "C3";
    case ImproperClass::out_odd: return "C4";
    case ImproperClass::none: return "none";
  }
  return "none";
}

inline const char* improper_class_name(ImproperClass c) {
  switch (c) {
    case ImproperClass::in_graceful: return "in-improper-graceful";
    case ImproperClass::out_graceful: return "out-improper-graceful";
    case ImproperClass::in_odd: return "in-improper-odd-graceful";
    case ImproperClass::out_odd: return "out-improper-odd-graceful";
    case ImproperClass::none: return "none";
  }
  return "none";
}

struct ImproperClassification {
  ImproperClass cls = ImproperClass::none;
  Label max_label = 0;
  std::string note;
};

inline ImproperClassification classify_improper(const Graph& g, const Labelling& f) {
  require_total(g, f);
  ImproperClassification out;
  if (g.vertex_count() == 0) {
    out.note = "empty graph";
    return out;
  }
  const long long q = g.edge_count();
  const Label lo = *std::min_element(f.values.begin(), f.values.end());
  out.max_label = *std::max_element(f.values.begin(), f.values.end());
  if (lo != 0) {
    out.note = "minimum label is " + std::to_string(lo) + ", not 0";
    return out;
  }
  std::vector<Label> el = induced_edge_labels(g, f);
  std::sort(el.begin(), el.end());
  bool graceful_set = true, odd_set = true;
  for (long long i = 0; i < q; ++i) {
    if (el[i] != i + 1) graceful_set = false;
    if (el[i] != 2 * i + 1) odd_set = false;
  }
  if (graceful_set) {
    out.cls = out.max_label <= q ? ImproperClass::in_graceful
                                 : ImproperClass::out_graceful;
  } else if (odd_set) {
    out.cls = out.max_label <= 2 * q - 1 ? ImproperClass::in_odd
                                         : ImproperClass::out_odd;
  } else {
    out.note = "edge labels form neither complete set";
  }
  return out;
}

// k counts the vertices that share their label with another vertex; l is the
// number of labels lost to collisions (n minus distinct labels).  k - l is
// the number of repeated labels and k <= 2l whenever k > 0.
struct ImproperParams {
  long long k = 0;
  long long l = 0;
  long long c = 0;          // distinct labels
  std::vector<int> shared;  // the vertex set behind k, ascending
};

inline ImproperParams improper_params(const Labelling& f) {
  ImproperParams p;
  std::map<Label, int> mult;
  for (Label v : f.values) ++mult[v];
  p.c = static_cast<long long>(mult.size());
  p.l = static_cast<long long>(f.size()) - p.c;
  for (int v = 0; v < f.size(); ++v)
    if (mult[f[v]] >= 2) p.shared.push_back(v);
  p.k = static_cast<long long>(p.shared.size());
  return p;
}

// Doubling map: even labels on the low side, odd labels on the high side.
// Turns a set-ordered graceful labelling into a set-ordered odd-graceful one.
inline Labelling odd_double_transform(const Graph& g, const Labelling& f,
                                      const Bipartition& bip) {
  require_total(g, f);
  VerificationReport r = verify(g, f);
  if (!(r.graceful && detail::side_ordered(bip.X, bip.Y, f)))
    fail(errc::not_set_ordered_graceful,
         "doubling needs a set-ordered graceful labelling with X low");
  Labelling out;
  out.values.assign(g.vertex_count(), 0);
  for (int x : bip.X) out[x] = 2 * f[x];
  for (int y : bip.Y) out[y] = 2 * f[y] - 1;
  return out;
}

}  // namespace gracelab

#endif  // GRACELAB_LABELLING_HPP
