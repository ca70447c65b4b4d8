// Command-line front end: validation, conversion, statistics, hom counting,
// adjunction checking, and simplex queries over the JSON model format.
// Output is deterministic (no timestamps, sorted keys); JSON by default,
// `--format table` for humans.  Exit codes: 0 success, 1 validation or
// property-check failure (report printed), 2 usage or resource error.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "highergraph/io.hpp"
#include "highergraph/kan.hpp"
#include "highergraph/models.hpp"

namespace hg = highergraph;
using nlohmann::json;

namespace {

// Thrown for bad arguments, unreadable files, unknown names: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an input file parses but fails validation: exit code 1.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out << bytes;
}

hg::Presheaf load_model_file(const std::string& path) {
  std::string bytes = read_file(path);
  try {
    return hg::load_model(bytes);
  } catch (const std::runtime_error& e) {
    throw ModelError(path + ": " + e.what());
  }
}

std::optional<int> env_truncation() {
  const char* v = std::getenv("HIGHERGRAPH_TRUNCATION");
  if (!v || !*v) return std::nullopt;
  std::string s = v;
  std::size_t pos = 0;
  int k = 0;
  try {
    k = std::stoi(s, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != s.size()) throw UsageError("HIGHERGRAPH_TRUNCATION is not an integer: " + s);
  return k;
}

// Precedence: --truncation flag, HIGHERGRAPH_TRUNCATION, conversion default.
int pick_truncation(int flag_value, int fallback) {
  if (flag_value >= 0) return flag_value;
  if (auto e = env_truncation()) return *e;
  return fallback;
}

void print_output(const json& doc, const std::string& table, const std::string& format) {
  if (format == "table")
    std::cout << table;
  else
    std::cout << doc.dump(2) << "\n";
}

std::vector<int> flat_counts(const hg::Presheaf& p) {
  std::vector<int> out;
  for (const auto& o : p.cat().objects()) out.push_back(p.cell_count(o));
  return out;
}

std::string bracketed(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(v[k]);
  }
  return s + "]";
}

json counts_by_object(const hg::Presheaf& p) {
  json out = json::object();
  for (const auto& o : p.cat().objects()) out[hg::object_key(o)] = p.cell_count(o);
  return out;
}

json completeness_json(const hg::KanCompleteness& c) {
  json lv = json::object();
  for (const auto& [level, ok] : c.exact_level) lv[std::to_string(level)] = ok;
  json out = {{"all_exact", c.all_exact}, {"exact_level", lv}};
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

// Conversion names accept both "->" and the arrow character, plus the short
// aliases "clique" and "skeletal".
std::string normalize_via(std::string via) {
  const std::string arrow = "→";
  for (std::size_t at; (at = via.find(arrow)) != std::string::npos;)
    via.replace(at, arrow.size(), "->");
  if (via == "clique") return "graph->semisset-clique";
  if (via == "skeletal") return "graph->semisset-skeletal";
  return via;
}

const char* kConversionList =
    "graph->hypergraph, hypergraph->graph, hypergraph->sset, sset->hypergraph, "
    "graph->semisset-skeletal, graph->semisset-clique (alias: clique), "
    "semisset->symmetric";

std::string via_from_endpoints(std::string from, std::string to) {
  auto canon = [](std::string s) {
    if (s == "sset") return std::string("simplicial");
    if (s == "semisset") return std::string("semisimplicial");
    return s;
  };
  from = canon(from);
  to = canon(to);
  if (from == "graph" && to == "hypergraph") return "graph->hypergraph";
  if (from == "hypergraph" && to == "graph") return "hypergraph->graph";
  if (from == "hypergraph" && to == "simplicial") return "hypergraph->sset";
  if (from == "simplicial" && to == "hypergraph") return "sset->hypergraph";
  if (from == "semisimplicial" && to == "symmetric") return "semisset->symmetric";
  if (from == "graph" && to == "semisimplicial")
    throw UsageError(
        "graph->semisset is ambiguous: use --via graph->semisset-skeletal (free) or "
        "--via graph->semisset-clique (clique completion)");
  throw UsageError("no conversion from '" + from + "' to '" + to + "'; known: " + kConversionList);
}

struct ConvertOutcome {
  hg::Presheaf model;
  std::optional<hg::KanCompleteness> completeness;
  std::string functor;
  std::string kind;  // "left-kan", "right-kan", or "restriction"
};

ConvertOutcome run_conversion(const std::string& via_raw, const hg::Presheaf& in, int trunc_flag,
                              std::uint64_t budget) {
  using T = hg::CategoryTag;
  std::string via = normalize_via(via_raw);
  auto require_tag = [&](T t) {
    if (in.cat().tag() != t)
      throw UsageError("conversion '" + via + "' expects a " + hg::tag_name(t) + " model, got " +
                       hg::tag_name(in.cat().tag()));
  };
  int strunc = in.cat().truncation();

  if (via == "graph->hypergraph") {
    require_tag(T::Graph);
    auto h = hg::graph_to_hypergraph(
        in.index(), hg::standard_indexing(T::Hypergraph, pick_truncation(trunc_flag, 6)));
    auto L = hg::left_kan(h, in, budget);
    return {std::move(L.presheaf), L.completeness, h.name, "left-kan"};
  }
  if (via == "hypergraph->graph") {
    require_tag(T::Hypergraph);
    if (strunc < 2)
      throw UsageError("hypergraph->graph needs E_2 in the source vocabulary (truncation >= 2)");
    auto h = hg::graph_to_hypergraph(hg::standard_indexing(T::Graph, 2), in.index());
    return {hg::restrict_presheaf(h, in), std::nullopt, h.name, "restriction"};
  }
  if (via == "hypergraph->sset") {
    require_tag(T::Hypergraph);
    int t = pick_truncation(trunc_flag, std::max(0, strunc - 1));
    auto h = hg::hypergraph_to_simplicial(in.index(), hg::standard_indexing(T::Simplicial, t));
    auto L = hg::left_kan(h, in, budget);
    return {std::move(L.presheaf), L.completeness, h.name, "left-kan"};
  }
  if (via == "sset->hypergraph") {
    require_tag(T::Simplicial);
    int t = pick_truncation(trunc_flag, std::min(strunc + 1, 16));
    auto h = hg::hypergraph_to_simplicial(hg::standard_indexing(T::Hypergraph, t), in.index());
    return {hg::restrict_presheaf(h, in), std::nullopt, h.name, "restriction"};
  }
  if (via == "graph->semisset-skeletal" || via == "graph->semisset-clique") {
    require_tag(T::Graph);
    int t = pick_truncation(trunc_flag, 6);
    auto h = hg::graph_to_semisimplicial(in.index(), hg::standard_indexing(T::SemiSimplicial, t));
    if (via == "graph->semisset-skeletal") {
      auto L = hg::left_kan(h, in, budget);
      return {std::move(L.presheaf), L.completeness, h.name, "left-kan"};
    }
    auto R = hg::right_kan(h, in, budget);
    return {std::move(R.presheaf), R.completeness, h.name, "right-kan"};
  }
  if (via == "semisset->symmetric") {
    require_tag(T::SemiSimplicial);
    int t = pick_truncation(trunc_flag, strunc);
    auto h = hg::semisimplicial_to_symmetric(in.index(), hg::standard_indexing(T::Symmetric, t));
    auto L = hg::left_kan(h, in, budget);
    return {std::move(L.presheaf), L.completeness, h.name, "left-kan"};
  }
  throw UsageError("unknown conversion '" + via_raw + "'; known: " + kConversionList);
}

// The functor between the categories the two given models live over, named by
// a conversion name (either direction) or one of the short functor names.
hg::ModelFunctor functor_between(const std::string& via_raw, const hg::IndexingCategory& fidx,
                                 const hg::IndexingCategory& gidx) {
  std::string via = normalize_via(via_raw);
  try {
    if (via == "i" || via == "graph->hypergraph" || via == "hypergraph->graph")
      return hg::graph_to_hypergraph(fidx, gidx);
    if (via == "A" || via == "hypergraph->sset" || via == "sset->hypergraph")
      return hg::hypergraph_to_simplicial(fidx, gidx);
    if (via == "gs" || via == "graph->semisset-skeletal" || via == "graph->semisset-clique")
      return hg::graph_to_semisimplicial(fidx, gidx);
    if (via == "sym" || via == "semisset->symmetric")
      return hg::semisimplicial_to_symmetric(fidx, gidx);
    if (via == "ss" || via == "semisset->sset") return hg::semisimplicial_to_simplicial(fidx, gidx);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown functor '" + via_raw +
                   "'; known: i, A, gs, sym, ss, or any conversion name");
}

// Emits a converted model: bytes to --output (summary on stdout) or straight
// to stdout when no output path is given and the format is json.
void emit_model(const hg::Presheaf& model, const ConvertOutcome* how, const std::string& out_path,
                const std::string& format) {
  std::string bytes = hg::save_model(model);
  json summary = {{"model", hg::tag_name(model.cat().tag())},
                  {"truncation", model.cat().truncation()},
                  {"dimension", model.dimension()},
                  {"cells", flat_counts(model)},
                  {"cell_counts", counts_by_object(model)}};
  if (how) {
    summary["functor"] = how->functor;
    summary["kind"] = how->kind;
    if (how->completeness) summary["completeness"] = completeness_json(*how->completeness);
  }
  std::string table = "model " + std::string(hg::tag_name(model.cat().tag())) + ", dimension " +
                      std::to_string(model.dimension()) + ", cells " +
                      bracketed(flat_counts(model)) + "\n";
  if (!out_path.empty()) {
    write_file(out_path, bytes);
    summary["output"] = out_path;
    print_output(summary, table + "written to " + out_path + "\n", format);
  } else if (format == "table") {
    print_output(summary, table, format);
  } else {
    std::cout << bytes;
  }
}

int run_validate(const std::string& path, const std::string& format) {
  std::string bytes = read_file(path);
  hg::Presheaf model = [&] {
    try {
      return hg::load_document(bytes);
    } catch (const std::runtime_error& e) {
      throw ModelError(path + ": " + e.what());
    }
  }();
  auto report = hg::validate_presheaf(model);
  auto problems = report.all_problems();
  json out = {{"valid", report.ok()},
              {"model", hg::tag_name(model.cat().tag())},
              {"truncation", model.cat().truncation()},
              {"dimension", model.dimension()},
              {"cells", flat_counts(model)},
              {"cell_counts", counts_by_object(model)},
              {"problems", problems}};
  std::string table;
  if (report.ok()) {
    table = "valid, dimension " + std::to_string(model.dimension()) + ", cells " +
            bracketed(flat_counts(model)) + "\n";
  } else {
    table = "invalid, " + std::to_string(problems.size()) + " problem(s)\n";
    for (const auto& p : problems) table += "  - " + p + "\n";
  }
  print_output(out, table, format);
  return report.ok() ? 0 : 1;
}

int run_stats(const std::string& path, const std::string& format) {
  hg::Presheaf model = load_model_file(path);
  auto nd = hg::nondegenerate_counts(model);
  json ndj = json::object();
  for (const auto& [o, n] : nd) ndj[hg::object_key(o)] = n;
  int total = 0;
  for (int n : flat_counts(model)) total += n;
  json out = {{"model", hg::tag_name(model.cat().tag())},
              {"truncation", model.cat().truncation()},
              {"dimension", model.dimension()},
              {"cells", flat_counts(model)},
              {"cell_counts", counts_by_object(model)},
              {"nondegenerate_counts", ndj},
              {"total_cells", total}};
  std::string table = "model " + std::string(hg::tag_name(model.cat().tag())) + ", truncation " +
                      std::to_string(model.cat().truncation()) + ", dimension " +
                      std::to_string(model.dimension()) + "\n";
  for (const auto& o : model.cat().objects()) {
    table += "  " + hg::object_key(o) + ": " + std::to_string(model.cell_count(o));
    auto it = nd.find(o);
    if (it != nd.end() && it->second != model.cell_count(o))
      table += " (" + std::to_string(it->second) + " nondegenerate)";
    table += "\n";
  }
  print_output(out, table, format);
  return 0;
}

int run_homs(const std::string& fpath, const std::string& gpath, std::uint64_t budget,
             const std::string& format) {
  hg::Presheaf F = load_model_file(fpath), G = load_model_file(gpath);
  if (!(F.cat() == G.cat()))
    throw UsageError("homs: the two models live over different categories");
  auto morphs = hg::enumerate_morphisms(F, G, budget);
  json out = {{"count", morphs.size()}, {"budget", budget}};
  print_output(out, std::to_string(morphs.size()) + " natural transformation(s)\n", format);
  return 0;
}

int run_adjoint_check(const std::string& via, const std::string& fpath, const std::string& gpath,
                      std::uint64_t budget, const std::string& format) {
  hg::Presheaf F = load_model_file(fpath), G = load_model_file(gpath);
  hg::ModelFunctor h = functor_between(via, F.index(), G.index());
  auto rep = hg::check_adjunction(h, F, G, budget);
  auto tri = hg::triangle_identities(h, F, G, budget);
  bool ok = rep.ok() && tri.ok();
  std::vector<std::string> problems = rep.problems;
  problems.insert(problems.end(), tri.problems.begin(), tri.problems.end());
  json out = {{"functor", h.name},
              {"hom_F_RG", rep.hom_F_RG},
              {"hom_LF_G", rep.hom_LF_G},
              {"hom_RG_F", rep.hom_RG_F},
              {"hom_G_AF", rep.hom_G_AF},
              {"left_counts_equal", rep.left_counts_equal},
              {"left_bijective", rep.left_bijective},
              {"right_counts_equal", rep.right_counts_equal},
              {"right_bijective", rep.right_bijective},
              {"triangles",
               {{"left_unit", tri.left_unit_triangle},
                {"left_counit", tri.left_counit_triangle},
                {"right_counit", tri.right_counit_triangle},
                {"right_unit", tri.right_unit_triangle}}},
              {"problems", problems},
              {"ok", ok}};
  std::string table = std::string(ok ? "ok" : "FAILED") + ": |Hom(F,R G)| = " +
                      std::to_string(rep.hom_F_RG) + ", |Hom(L F,G)| = " +
                      std::to_string(rep.hom_LF_G) + ", |Hom(R G,F)| = " +
                      std::to_string(rep.hom_RG_F) + ", |Hom(G,A F)| = " +
                      std::to_string(rep.hom_G_AF) + "\n";
  for (const auto& p : problems) table += "  - " + p + "\n";
  print_output(out, table, format);
  return ok ? 0 : 1;
}

int run_clique(const std::string& path, int trunc_flag, std::uint64_t budget,
               const std::string& out_path, const std::string& format) {
  hg::DirectedGraph g = [&] {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
      auto edges = hg::load_edges_csv(read_file(path));
      return hg::graph_from_edge_list(hg::vertices_from_edges(edges), edges);
    }
    hg::Presheaf m = load_model_file(path);
    if (m.cat().tag() != hg::CategoryTag::Graph)
      throw UsageError("clique: expected a graph model, got " +
                       std::string(hg::tag_name(m.cat().tag())));
    return hg::DirectedGraph{std::move(m)};
  }();
  int t = pick_truncation(trunc_flag, 6);
  auto completion = hg::clique_completion(g, t, budget);
  ConvertOutcome how{completion.presheaf, std::nullopt, "graph_to_semisimplicial", "right-kan"};
  emit_model(completion.presheaf, &how, out_path, format);
  return 0;
}

int run_faces(const std::string& path, const std::string& okey, const std::string& label,
              const std::string& format) {
  hg::Presheaf model = load_model_file(path);
  auto o = hg::parse_object_key(model.cat(), okey);
  if (!o) throw UsageError("unknown object key '" + okey + "'");
  const auto& labels = model.labels(*o);
  int c = -1;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) c = static_cast<int>(k);
  if (c < 0) throw UsageError("no cell labelled '" + label + "' at " + okey);
  auto faces = hg::subsimplices(model, *o, c);
  json list = json::array();
  std::string table;
  for (const auto& [a, idx] : faces) {
    list.push_back({{"object", hg::object_key(a)},
                    {"cell", idx},
                    {"label", model.labels(a)[static_cast<std::size_t>(idx)]}});
    table += hg::object_key(a) + " " + model.labels(a)[static_cast<std::size_t>(idx)] + "\n";
  }
  json out = {{"object", okey}, {"label", label}, {"faces", list}};
  print_output(out, table, format);
  return 0;
}

int run_skeleton(const std::string& path, const std::string& out_path, const std::string& format) {
  hg::Presheaf model = load_model_file(path);
  if (model.cat().tag() != hg::CategoryTag::SemiSimplicial)
    throw UsageError("skeleton: expected a semisimplicial model, got " +
                     std::string(hg::tag_name(model.cat().tag())) +
                     " (convert simplicial models first)");
  auto g = hg::one_skeleton(hg::SemiSimplicialSet{std::move(model)});
  ConvertOutcome how{g.presheaf, std::nullopt, "graph_to_semisimplicial", "restriction"};
  emit_model(g.presheaf, &how, out_path, format);
  return 0;
}

int run_convert(const std::string& path, const std::string& via, const std::string& from,
                const std::string& to, int trunc_flag, std::uint64_t budget,
                const std::string& out_path, const std::string& format) {
  std::string name = via;
  if (name.empty()) {
    if (from.empty() || to.empty())
      throw UsageError("convert: give --via NAME or both --from and --to");
    name = via_from_endpoints(from, to);
  } else if (!from.empty() || !to.empty()) {
    std::string derived = via_from_endpoints(from.empty() ? "?" : from, to.empty() ? "?" : to);
    if (normalize_via(name) != derived &&
        !(derived == "graph->semisset-skeletal" || derived == "graph->semisset-clique"))
      throw UsageError("convert: --via disagrees with --from/--to");
  }
  hg::Presheaf in = load_model_file(path);
  ConvertOutcome out = run_conversion(name, in, trunc_flag, budget);
  emit_model(out.model, &out, out_path, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-dimensional network models: presheaves over shape categories"};
  app.require_subcommand(1);

  std::string format = "json";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  };

  std::string in_path, in2_path, out_path, via, from, to, okey, label;
  int truncation = -1;
  std::uint64_t budget = 1'000'000;

  CLI::App* validate = app.add_subcommand("validate", "check a model document and print a report");
  validate->add_option("file", in_path, "model JSON document")->required();
  add_format(validate);

  CLI::App* stats = app.add_subcommand("stats", "cell counts, dimension, degeneracy summary");
  stats->add_option("file", in_path, "model JSON document")->required();
  add_format(stats);

  CLI::App* convert = app.add_subcommand("convert", "change a model between shape categories");
  convert->add_option("file", in_path, "input model JSON document")->required();
  convert->add_option("--via", via, std::string("conversion name: ") + kConversionList);
  convert->add_option("--from", from, "source model kind (alternative to --via)");
  convert->add_option("--to", to, "target model kind (alternative to --via)");
  convert->add_option("--truncation", truncation, "target truncation (default: conversion-specific)");
  convert->add_option("--budget", budget, "enumeration budget")->capture_default_str();
  convert->add_option("-o,--output", out_path, "write the converted model here");
  add_format(convert);

  CLI::App* homs = app.add_subcommand("homs", "count natural transformations between two models");
  homs->add_option("source", in_path, "model JSON document (domain)")->required();
  homs->add_option("target", in2_path, "model JSON document (codomain)")->required();
  homs->add_option("--budget", budget, "enumeration budget")->capture_default_str();
  add_format(homs);

  CLI::App* adjoint = app.add_subcommand(
      "adjoint-check", "verify the adjunction bijections and triangle identities on a model pair");
  adjoint->add_option("source", in_path, "model over the functor's source category")->required();
  adjoint->add_option("target", in2_path, "model over the functor's target category")->required();
  adjoint->add_option("--via", via, "functor: i, A, gs, sym, ss, or a conversion name")->required();
  adjoint->add_option("--budget", budget, "enumeration budget")->capture_default_str();
  add_format(adjoint);

  CLI::App* clique = app.add_subcommand("clique",
                                        "clique completion of a graph (model JSON or edge CSV)");
  clique->add_option("file", in_path, "graph model JSON or .csv edge list")->required();
  clique->add_option("--truncation", truncation, "top simplex level (default 6)");
  clique->add_option("--budget", budget, "enumeration budget")->capture_default_str();
  clique->add_option("-o,--output", out_path, "write the completed model here");
  add_format(clique);

  CLI::App* faces = app.add_subcommand("faces", "list every sub-simplex of one cell");
  faces->add_option("file", in_path, "model JSON document")->required();
  faces->add_option("object", okey, "object key, e.g. [2] or E3")->required();
  faces->add_option("label", label, "cell label")->required();
  add_format(faces);

  CLI::App* skeleton = app.add_subcommand("skeleton", "underlying graph of a semisimplicial model");
  skeleton->add_option("file", in_path, "model JSON document")->required();
  skeleton->add_option("-o,--output", out_path, "write the graph model here");
  add_format(skeleton);

  int rc = 0;
  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }
    if (validate->parsed()) rc = run_validate(in_path, format);
    if (stats->parsed()) rc = run_stats(in_path, format);
    if (convert->parsed())
      rc = run_convert(in_path, via, from, to, truncation, budget, out_path, format);
    if (homs->parsed()) rc = run_homs(in_path, in2_path, budget, format);
    if (adjoint->parsed()) rc = run_adjoint_check(via, in_path, in2_path, budget, format);
    if (clique->parsed()) rc = run_clique(in_path, truncation, budget, out_path, format);
    if (faces->parsed()) rc = run_faces(in_path, okey, label, format);
    if (skeleton->parsed()) rc = run_skeleton(in_path, out_path, format);
  } catch (const ModelError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hg::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
