#ifndef GRACELAB_CLI_HPP
#define GRACELAB_CLI_HPP

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "gracelab/construct.hpp"
#include "gracelab/errors.hpp"
#include "gracelab/graph.hpp"
#include "gracelab/io.hpp"
#include "gracelab/labelling.hpp"
#include "gracelab/search.hpp"

namespace gracelab {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse_error, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::parse_error, "cannot write '" + path + "'");
  out << text;
}

inline Json slice_json(const ExtremalSlice& s) {
  Json j;
  j["l"] = s.l;
  j["k_min"] = s.k_min;
  j["k_max"] = s.k_max;
  Json w = Json::array();
  for (const Labelling& f : s.witnesses) w.push_back(labelling_json(f));
  j["witnesses"] = std::move(w);
  return j;
}

inline Json cells_json(const std::map<CellKey, ExtremalCell>& cells) {
  Json out = Json::array();
  for (const auto& [key, cell] : cells) {
    Json c;
    c["k"] = key.first;
    c["l"] = key.second;
    c["count"] = cell.count;
    if (cell.first) c["witness"] = labelling_json(*cell.first);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

// Entry point shared by the binary and the tests.  Returns the process exit
// code: 0 on success / witness found, 1 when the requested property does not
// hold (nothing verified, no witness, counterexamples), 2 on usage, parsing
// or precondition errors, 3 when a construction's verification fails.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"graceful and odd-graceful labelling toolkit"};
  app.name("gracelab");
  app.fallthrough();
  app.require_subcommand(1);

  std::string format_name = "auto";
  std::string out_path, dot_path;
  long long seed = 0;
  int threads = 1;
  app.add_option("--format", format_name, "input graph format")
      ->check(CLI::IsMember({"auto", "edgelist", "json"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--dot", dot_path, "write the resulting graph as Graphviz dot");
  auto* seed_opt = app.add_option("--seed", seed, "echoed into the report");
  app.add_option("--threads", threads, "worker threads for searches")
      ->check(CLI::PositiveNumber);

  bool odd_flag = false;
  std::string file, kind, leaves_path, improper_name;
  long long bound = 0;
  bool count_flag = false;
  int sweep_n_max = 0, enum_n = 0;

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a labelled graph");
  verify_cmd->add_option("file", file)->required();

  CLI::App* construct_cmd =
      app.add_subcommand("construct", "build a labelling of a tree");
  construct_cmd->add_option("kind", kind, "t1, caterpillar or t2")
      ->required()
      ->check(CLI::IsMember({"t1", "caterpillar", "t2"}));
  construct_cmd->add_option("file", file)->required();
  construct_cmd->add_option("--leaves", leaves_path, "leaf counts (t2 only)");
  construct_cmd->add_flag("--odd", odd_flag);

  CLI::App* compose_cmd =
      app.add_subcommand("compose", "glue labelled components onto a base");
  compose_cmd->add_option("file", file)->required();
  compose_cmd->add_flag("--odd", odd_flag);

  CLI::App* lobster_cmd =
      app.add_subcommand("lobster", "label a lobster both ways");
  lobster_cmd->add_option("file", file)->required();

  CLI::App* quotient_cmd =
      app.add_subcommand("quotient", "merge vertices sharing a label");
  quotient_cmd->add_option("file", file)->required();

  CLI::App* search_cmd = app.add_subcommand("search", "look for labellings");
  search_cmd->add_option("file", file)->required();
  search_cmd->add_flag("--odd", odd_flag);
  search_cmd->add_option("--improper", improper_name, "allow repeats: in or out")
      ->check(CLI::IsMember({"in", "out"}));
  auto* bound_opt =
      search_cmd->add_option("--bound", bound, "vertex-label ceiling (out mode)");
  search_cmd->add_flag("--count", count_flag, "count every labelling");

  CLI::App* extremal_cmd =
      app.add_subcommand("extremal", "repetition census of a tree");
  extremal_cmd->add_option("file", file)->required();
  extremal_cmd->add_flag("--odd", odd_flag);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "check every labelled tree up to an order");
  sweep_cmd->add_option("--n-max", sweep_n_max)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--odd", odd_flag);

  CLI::App* enum_cmd = app.add_subcommand("enumerate", "list labelled trees");
  enum_cmd->add_option("--n", enum_n)->required()->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.push_back("gracelab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunReport report;
  report.command = "gracelab";
  for (const std::string& a : args) report.command += " " + a;
  if (seed_opt->count() > 0)
    report.notes.push_back("seed " + std::to_string(seed) +
                           " echoed; every command here is deterministic");
  const Mode mode = odd_flag ? Mode::odd : Mode::graceful;
  std::optional<std::pair<Graph, std::optional<Labelling>>> dot_payload;
  int exit_code = 0;

  auto load_doc = [&]() {
    GraphFormat fmt = format_name == "json"       ? GraphFormat::json
                      : format_name == "edgelist" ? GraphFormat::edgelist
                                                  : GraphFormat::auto_detect;
    return parse_graph(detail::read_file(file), fmt);
  };

  const auto started = std::chrono::steady_clock::now();
  try {
    if (verify_cmd->parsed()) {
      GraphDocument doc = load_doc();
      Graph g = document_graph(doc);
      if (!doc.labels) fail(errc::partial_labelling, "verify needs vertex labels");
      VerificationReport r = verify(g, *doc.labels);
      ImproperClassification ic = classify_improper(g, *doc.labels);
      ImproperParams ip = improper_params(*doc.labels);
      report.result["graph"] = graph_json(g, doc.labels);
      report.result["verification"] = verification_json(r);
      report.result["improper"] = improper_json(ic, ip);
      for (const std::string& n : r.notes) report.notes.push_back(n);
      if (!ic.note.empty()) report.notes.push_back(ic.note);
      const bool any = r.graceful || r.odd_graceful || ic.cls != ImproperClass::none;
      exit_code = any ? 0 : 1;
      dot_payload = {{g, doc.labels}};
    } else if (construct_cmd->parsed()) {
      GraphDocument doc = load_doc();
      Graph g = document_graph(doc);
      ConstructionResult r;
      if (kind == "t1") {
        r = inductive_labelling(g, mode);
      } else if (kind == "caterpillar") {
        r = caterpillar_set_ordered(g, mode);
      } else {
        if (!doc.labels)
          fail(errc::partial_labelling, "leaf extension needs base labels");
        if (leaves_path.empty())
          fail(errc::parse_error, "t2 needs --leaves with per-vertex counts");
        LeafAdditionSpec spec = parse_leaf_spec(
            parse_json_text(detail::read_file(leaves_path)), g.vertex_count());
        const errc order_err = mode == Mode::graceful
                                   ? errc::not_set_ordered_graceful
                                   : errc::not_set_ordered_odd_graceful;
        Bipartition bip = set_order_bipartition(g, *doc.labels, order_err);
        r = mode == Mode::graceful
                ? extend_over_leaves(g, *doc.labels, bip, spec)
                : extend_over_leaves_odd(g, *doc.labels, bip, spec);
      }
      report.result = construction_json(r);
      dot_payload = {{r.graph, r.labelling}};
    } else if (compose_cmd->parsed()) {
      CompositionSpec spec =
          parse_composition_spec(parse_json_text(detail::read_file(file)));
      ConstructionResult r = compose_identified(spec, mode);
      report.result = construction_json(r);
      dot_payload = {{r.graph, r.labelling}};
    } else if (lobster_cmd->parsed()) {
      GraphDocument doc = load_doc();
      Graph g = document_graph(doc);
      auto [graceful_r, odd_r] = lobster_labellings(g);
      report.result["graceful"] = construction_json(graceful_r);
      report.result["odd"] = construction_json(odd_r);
      dot_payload = {{graceful_r.graph, graceful_r.labelling}};
    } else if (quotient_cmd->parsed()) {
      GraphDocument doc = load_doc();
      Graph g = document_graph(doc);
      if (!doc.labels) fail(errc::partial_labelling, "quotient needs vertex labels");
      ConstructionResult r = quotient_by_labels(g, *doc.labels);
      report.result = construction_json(r);
      dot_payload = {{r.graph, r.labelling}};
    } else if (search_cmd->parsed()) {
      GraphDocument doc = load_doc();
      Graph g = document_graph(doc);
      SearchOptions so;
      so.mode = mode;
      so.threads = threads;
      if (improper_name == "in") so.improper = ImproperMode::in;
      if (improper_name == "out") so.improper = ImproperMode::out;
      if (bound_opt->count() > 0) {
        if (so.improper != ImproperMode::out)
          fail(errc::range_error, "--bound applies to --improper out searches");
        so.out_bound = bound;
      }
      if (count_flag) so.limit = 0;
      SearchOutcome o = search(g, so);
      report.result["count"] = o.count;
      report.result["exhausted"] = o.exhausted;
      if (o.witness) {
        Json w;
        w["labels"] = labelling_json(*o.witness);
        if (so.improper != ImproperMode::proper_only)
          w["improper"] = improper_json(classify_improper(g, *o.witness),
                                        improper_params(*o.witness));
        report.result["witness"] = std::move(w);
        dot_payload = {{g, *o.witness}};
      } else {
        report.result["witness"] = nullptr;
        dot_payload = {{g, std::nullopt}};
      }
      if (so.improper == ImproperMode::out)
        report.notes.push_back("vertex labels allowed up to " +
                               std::to_string(detail::engine_spec(g, so).label_max));
      exit_code = o.count > 0 ? 0 : 1;
    } else if (extremal_cmd->parsed()) {
      GraphDocument doc = load_doc();
      Graph g = document_graph(doc);
      SearchOptions so;
      so.mode = mode;
      so.threads = threads;
      ExtremalTable table = extremal_params(g, so);
      Json in_part, out_part;
      in_part["cells"] = detail::cells_json(table.in_cells);
      if (table.in_min) in_part["min"] = detail::slice_json(*table.in_min);
      if (table.in_max) in_part["max"] = detail::slice_json(*table.in_max);
      out_part["cells"] = detail::cells_json(table.out_cells);
      if (table.out_min) out_part["min"] = detail::slice_json(*table.out_min);
      report.result["in"] = std::move(in_part);
      report.result["out"] = std::move(out_part);
      report.result["out_bound"] = table.out_bound_used;
      if (table.in_min) {
        report.result["l_in_min"] = table.in_min->l;
        report.result["k_in_min"] = table.in_min->k_min;
      }
      if (table.in_max) {
        report.result["l_in_max"] = table.in_max->l;
        report.result["k_in_max"] = table.in_max->k_max;
      }
      if (table.out_min) {
        report.result["l_out_min"] = table.out_min->l;
        report.result["k_out_min"] = table.out_min->k_min;
      }
      dot_payload = {{g, doc.labels}};
    } else if (sweep_cmd->parsed()) {
      SweepReport rep = conjecture_sweep(sweep_n_max, mode, threads);
      report.result["n_max"] = rep.n_max;
      report.result["mode"] = mode_name(rep.mode);
      report.result["trees_checked"] = rep.trees_checked;
      Json per = Json::array(), bad = Json::array();
      for (auto [n, c] : rep.per_order) per.push_back(Json::array({n, c}));
      for (auto [n, i] : rep.counterexamples) bad.push_back(Json::array({n, i}));
      report.result["per_order"] = std::move(per);
      report.result["counterexamples"] = std::move(bad);
      exit_code = rep.counterexamples.empty() ? 0 : 1;
    } else if (enum_cmd->parsed()) {
      TreeEnumeration trees(enum_n);
      report.result["n"] = enum_n;
      report.result["count"] = trees.size();
      if (trees.size() <= 1000) {
        Json list = Json::array();
        trees.for_each([&](const Graph& t) { list.push_back(graph_json(t)); });
        report.result["trees"] = std::move(list);
      }
    }
  } catch (const error& e) {
    err << e.what() << "\n";
    return e.code() == errc::construction_failed ? 3 : 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  const auto finished = std::chrono::steady_clock::now();
  report.timing_ms =
      std::chrono::duration<double, std::milli>(finished - started).count();

  try {
    const std::string text = report_json(report).dump(2) + "\n";
    if (out_path.empty())
      out << text;
    else
      detail::write_file(out_path, text);
    if (!dot_path.empty() && dot_payload) {
      std::ostringstream dot;
      write_dot(dot, dot_payload->first, dot_payload->second);
      detail::write_file(dot_path, dot.str());
    }
  } catch (const error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace gracelab

#endif  // GRACELAB_CLI_HPP
