#ifndef GRACELAB_IO_HPP
#define GRACELAB_IO_HPP

#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gracelab/construct.hpp"
#include "gracelab/errors.hpp"
#include "gracelab/graph.hpp"
#include "gracelab/labelling.hpp"

namespace gracelab {

using Json = nlohmann::json;

struct GraphDocument {
  int n = 0;
  std::vector<Edge> edges;
  std::optional<Labelling> labels;
  std::map<std::string, std::string> metadata;
};

enum class GraphFormat { auto_detect, edgelist, json };

inline Graph document_graph(const GraphDocument& doc) { return Graph(doc.n, doc.edges); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline long long parse_int(const std::string& token) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    fail(errc::parse_error, "expected an integer, got '" + token + "'");
  }
  if (used != token.size())
    fail(errc::parse_error, "expected an integer, got '" + token + "'");
  return value;
}

}  // namespace detail

// Whitespace-separated "u v" pairs, one edge per line, '#' starts a comment.
// Vertex names may be any non-negative integers; they are compacted to
// 0..n-1 in ascending order of the names that actually appear.
inline GraphDocument parse_edgelist(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<long long, long long>> raw;
  std::map<long long, int> seen;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      fail(errc::parse_error, "expected two vertex names per line, got '" + line + "'");
    const long long u = detail::parse_int(tokens[0]);
    const long long v = detail::parse_int(tokens[1]);
    if (u < 0 || v < 0) fail(errc::range_error, "vertex names must be non-negative");
    if (u == v) fail(errc::parse_error, "an edge needs two distinct endpoints");
    raw.push_back({u, v});
    seen.emplace(u, 0);
    seen.emplace(v, 0);
  }
  if (raw.empty()) fail(errc::parse_error, "edge list is empty");
  int next = 0;
  for (auto& [name, id] : seen) id = next++;
  GraphDocument doc;
  doc.n = next;
  for (auto [u, v] : raw) doc.edges.push_back({seen[u], seen[v]});
  Graph check = document_graph(doc);  // surfaces duplicate edges
  (void)check;
  return doc;
}

inline GraphDocument parse_graph_json(const Json& j) {
  // Reports embed their output graph under result.graph; accept those
  // directly so one command's output feeds the next command's input.
  if (j.is_object() && j.contains("result") && j["result"].is_object() &&
      j["result"].contains("graph"))
    return parse_graph_json(j["result"]["graph"]);
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    fail(errc::parse_error, "graph object needs 'n' and 'edges'");
  if (!j["n"].is_number_integer())
    fail(errc::parse_error, "'n' must be an integer");
  GraphDocument doc;
  const long long n = j["n"].get<long long>();
  if (n < 0) fail(errc::range_error, "'n' must be non-negative");
  doc.n = static_cast<int>(n);
  if (!j["edges"].is_array()) fail(errc::parse_error, "'edges' must be an array");
  for (const Json& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      fail(errc::parse_error, "each edge must be a pair of integers");
    const long long u = e[0].get<long long>(), v = e[1].get<long long>();
    if (u == v) fail(errc::parse_error, "an edge needs two distinct endpoints");
    doc.edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  if (j.contains("labels") && !j["labels"].is_null()) {
    if (!j["labels"].is_array() ||
        static_cast<long long>(j["labels"].size()) != n)
      fail(errc::parse_error, "'labels' must list one value per vertex");
    Labelling f;
    for (const Json& v : j["labels"]) {
      if (!v.is_number_integer())
        fail(errc::parse_error, "labels must be integers");
      const long long value = v.get<long long>();
      if (value < 0) fail(errc::range_error, "labels must be non-negative");
      f.values.push_back(value);
    }
    doc.labels = std::move(f);
  }
  if (j.contains("metadata") && !j["metadata"].is_null()) {
    if (!j["metadata"].is_object())
      fail(errc::parse_error, "'metadata' must be an object");
    for (auto& [key, value] : j["metadata"].items()) {
      if (!value.is_string())
        fail(errc::parse_error, "metadata values must be strings");
      doc.metadata[key] = value.get<std::string>();
    }
  }
  Graph check = document_graph(doc);  // range / duplicate validation
  (void)check;
  return doc;
}

inline Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "malformed JSON");
  return j;
}

inline GraphDocument parse_graph(const std::string& text,
                                 GraphFormat format = GraphFormat::auto_detect) {
  if (format == GraphFormat::auto_detect) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    format = (i < text.size() && text[i] == '{') ? GraphFormat::json
                                                 : GraphFormat::edgelist;
  }
  if (format == GraphFormat::json) return parse_graph_json(parse_json_text(text));
  return parse_edgelist(text);
}

inline LeafAdditionSpec parse_leaf_spec(const Json& j, int n) {
  if (!j.is_object() || !j.contains("counts") || !j["counts"].is_array())
    fail(errc::parse_error, "leaf spec needs a 'counts' array");
  if (static_cast<int>(j["counts"].size()) != n)
    fail(errc::parse_error, "leaf spec needs one count per vertex");
  LeafAdditionSpec spec;
  for (const Json& c : j["counts"]) {
    if (!c.is_number_integer() || c.get<long long>() < 0)
      fail(errc::parse_error, "leaf counts must be non-negative integers");
    spec.counts.push_back(c.get<int>());
  }
  return spec;
}

// Composition input: a labelled base plus labelled attachment components,
// each glued at one base vertex.  Attachments keep their file order within
// each host; hosts are bucketed by their side in the base's ordered
// bipartition.
inline CompositionSpec parse_composition_spec(const Json& j) {
  if (!j.is_object() || !j.contains("base"))
    fail(errc::parse_error, "composition needs a 'base' graph");
  GraphDocument base = parse_graph_json(j["base"]);
  if (!base.labels) fail(errc::parse_error, "composition base needs labels");
  CompositionSpec spec;
  spec.base = document_graph(base);
  spec.base_labelling = *base.labels;

  Bipartition bip = set_order_bipartition(spec.base, spec.base_labelling,
                                          errc::spec_invariant_violated);
  const int n = spec.base.vertex_count();
  std::vector<int> side(n, -1), position(n, -1);
  for (std::size_t i = 0; i < bip.X.size(); ++i) {
    side[bip.X[i]] = 0;
    position[bip.X[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < bip.Y.size(); ++i) {
    side[bip.Y[i]] = 1;
    position[bip.Y[i]] = static_cast<int>(i);
  }
  spec.x_attachments.resize(bip.X.size());
  spec.y_attachments.resize(bip.Y.size());

  if (j.contains("attachments")) {
    if (!j["attachments"].is_array())
      fail(errc::parse_error, "'attachments' must be an array");
    for (const Json& a : j["attachments"]) {
      if (!a.is_object() || !a.contains("host") ||
          !a["host"].is_number_integer())
        fail(errc::parse_error, "each attachment needs an integer 'host'");
      const long long host = a["host"].get<long long>();
      if (host < 0 || host >= n)
        fail(errc::range_error, "attachment host is not a base vertex");
      GraphDocument comp = parse_graph_json(a);
      if (!comp.labels) fail(errc::parse_error, "attachments need labels");
      AttachmentComponent c;
      c.graph = document_graph(comp);
      c.labelling = *comp.labels;
      c.attach = 0;
      if (a.contains("attach")) {
        if (!a["attach"].is_number_integer())
          fail(errc::parse_error, "'attach' must be an integer");
        c.attach = a["attach"].get<int>();
      }
      auto& bucket = side[host] == 0 ? spec.x_attachments[position[host]]
                                     : spec.y_attachments[position[host]];
      bucket.push_back(std::move(c));
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Serialisation

inline Json labelling_json(const Labelling& f) {
  Json a = Json::array();
  for (Label v : f.values) a.push_back(v);
  return a;
}

inline Json graph_json(const Graph& g,
                       const std::optional<Labelling>& labels = std::nullopt) {
  Json j;
  j["n"] = g.vertex_count();
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  if (labels) j["labels"] = labelling_json(*labels);
  return j;
}

inline Json verification_json(const VerificationReport& r) {
  Json j;
  j["constraints"] = {{"labels_distinct", r.labels_distinct},
                      {"range_graceful", r.range_graceful},
                      {"range_odd", r.range_odd},
                      {"edges_graceful", r.edges_graceful},
                      {"edges_odd", r.edges_odd},
                      {"set_ordered", r.set_ordered},
                      {"matching_sum_graceful", r.matching_sum_graceful},
                      {"matching_sum_odd", r.matching_sum_odd}};
  j["classes"] = {{"graceful", r.graceful},
                  {"set_ordered_graceful", r.set_ordered_graceful},
                  {"strongly_graceful", r.strongly_graceful},
                  {"strongly_set_ordered_graceful", r.strongly_set_ordered_graceful},
                  {"odd_graceful", r.odd_graceful},
                  {"set_ordered_odd_graceful", r.set_ordered_odd_graceful},
                  {"strongly_odd_graceful", r.strongly_odd_graceful},
                  {"strongly_set_ordered_odd_graceful",
                   r.strongly_set_ordered_odd_graceful}};
  j["notes"] = r.notes;
  return j;
}

inline Json improper_json(const ImproperClassification& c, const ImproperParams& p) {
  Json j;
  j["class"] = improper_class_code(c.cls);
  j["kind"] = improper_class_name(c.cls);
  j["max_label"] = c.max_label;
  if (!c.note.empty()) j["note"] = c.note;
  j["k"] = p.k;
  j["l"] = p.l;
  j["distinct_labels"] = p.c;
  j["shared_vertices"] = p.shared;
  return j;
}

inline Json provenance_json(const std::vector<std::vector<SourceRef>>& prov) {
  Json out = Json::array();
  for (const auto& refs : prov) {
    Json per_vertex = Json::array();
    for (const SourceRef& r : refs) {
      Json e;
      e["component"] = r.component;
      if (r.host >= 0) e["host"] = r.host;
      if (r.i >= 0) e["i"] = r.i;
      if (r.j >= 0) e["j"] = r.j;
      if (r.vertex >= 0) e["vertex"] = r.vertex;
      per_vertex.push_back(std::move(e));
    }
    out.push_back(std::move(per_vertex));
  }
  return out;
}

inline Json construction_json(const ConstructionResult& r) {
  Json j;
  j["graph"] = graph_json(r.graph, r.labelling);
  j["verification"] = verification_json(r.report);
  j["improper"] = improper_json(r.improper, r.params);
  j["provenance"] = provenance_json(r.provenance);
  return j;
}

struct RunReport {
  std::string command;
  std::vector<std::string> notes;
  Json result;
  double timing_ms = 0.0;
};

inline Json report_json(const RunReport& r) {
  Json j;
  j["command"] = r.command;
  j["notes"] = r.notes;
  j["result"] = r.result;
  j["timing_ms"] = r.timing_ms;
  return j;
}

// Graphviz output; labelled vertices render as "id:label" and labelled edges
// carry their induced value.
inline void write_dot(std::ostream& out, const Graph& g,
                      const std::optional<Labelling>& f = std::nullopt) {
  out << "graph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (f)
      out << "  " << v << " [label=\"" << v << ":" << (*f)[v] << "\"];\n";
    else
      out << "  " << v << ";\n";
  }
  for (auto [u, v] : g.edges()) {
    if (f)
      out << "  " << u << " -- " << v << " [label=\""
          << (f->edge_label(u, v)) << "\"];\n";
    else
      out << "  " << u << " -- " << v << ";\n";
  }
  out << "}\n";
}

}  // namespace gracelab

#endif  // GRACELAB_IO_HPP
