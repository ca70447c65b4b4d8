#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "highergraph/io.hpp"

using namespace highergraph;
using namespace hgtest;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch_dir() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("hgcli-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs the CLI through the shell; `env` is a space-separated VAR=value
/// prefix.  stdout and stderr are captured separately.
CliResult run_cli(const std::string& args, const std::string& env = "") {
  static int seq = 0;
  auto out = scratch_dir() / ("out" + std::to_string(seq));
  auto err = scratch_dir() / ("err" + std::to_string(seq));
  ++seq;
  std::string cmd = (env.empty() ? "" : env + " ") + std::string(HG_CLI_PATH) + " " + args +
                    " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_all(out);
  r.err = read_all(err);
  return r;
}

std::string fx(const std::string& name) { return fixture_path(name); }

std::string write_scratch(const std::string& name, const std::string& bytes) {
  auto p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << bytes;
  return p.string();
}

}  // namespace

TEST_CASE("validate reports the square model") {
  CliResult table = run_cli("validate " + fx("square.hg.json") + " --format table");
  REQUIRE(table.code == 0);
  REQUIRE(table.out == "valid, dimension 2, cells [4,5,2]\n");

  CliResult js = run_cli("validate " + fx("square.hg.json"));
  REQUIRE(js.code == 0);
  json doc = json::parse(js.out);
  REQUIRE(doc["valid"] == true);
  REQUIRE(doc["cells"] == json::array({4, 5, 2}));
  REQUIRE(doc["model"] == "semisimplicial");
  REQUIRE(doc["problems"].empty());
}

TEST_CASE("validate rejects a broken document with exit 1") {
  auto doc = json::parse(slurp(fx("square.hg.json")));
  doc["action"]["[1]->[2]:1.2"][0] = 0;
  std::string path = write_scratch("broken.hg.json", doc.dump() + "\n");

  CliResult r = run_cli("validate " + path + " --format table");
  REQUIRE(r.code == 1);
  REQUIRE_THAT(r.out, ContainsSubstring("invalid, "));
  REQUIRE_THAT(r.out, ContainsSubstring("abd"));

  CliResult js = run_cli("validate " + path);
  REQUIRE(js.code == 1);
  REQUIRE(json::parse(js.out)["valid"] == false);
}

TEST_CASE("missing files and unparseable documents") {
  CliResult gone = run_cli("validate /nonexistent/nothing.json");
  REQUIRE(gone.code == 2);
  REQUIRE_FALSE(gone.err.empty());

  std::string garbled = write_scratch("garbled.json", "{\"format_version\": ");
  CliResult bad = run_cli("validate " + garbled);
  REQUIRE(bad.code == 1);
  REQUIRE_THAT(bad.err, ContainsSubstring("load_model"));
}

TEST_CASE("stats of the empty model") {
  CliResult r = run_cli("stats " + fx("empty.hg.json"));
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["dimension"] == -1);
  REQUIRE(doc["total_cells"] == 0);
  REQUIRE(doc["model"] == "semisimplicial");
}

TEST_CASE("stats of a filled model") {
  CliResult r = run_cli("stats " + fx("collab.s.json") + " --format table");
  REQUIRE(r.code == 0);
  REQUIRE_THAT(r.out, ContainsSubstring("model simplicial"));
  REQUIRE_THAT(r.out, ContainsSubstring("nondegenerate"));
}

TEST_CASE("convert via the clique completion") {
  CliResult r = run_cli("convert " + fx("triangle.g.json") + " --via clique --truncation 3");
  REQUIRE(r.code == 0);
  Presheaf model = load_model(r.out);
  REQUIRE(model.cat().tag() == CategoryTag::SemiSimplicial);
  REQUIRE(model.cell_count(ObjectId{CategoryTag::SemiSimplicial, 2, {}}) == 1);
  REQUIRE(model.cell_count(ObjectId{CategoryTag::SemiSimplicial, 3, {}}) == 0);
}

TEST_CASE("conversion names accept the arrow in both spellings") {
  CliResult ascii = run_cli("convert " + fx("triangle.g.json") + " --via 'graph->hypergraph'");
  CliResult utf8 = run_cli("convert " + fx("triangle.g.json") + " --via 'graph→hypergraph'");
  REQUIRE(ascii.code == 0);
  REQUIRE(utf8.code == 0);
  REQUIRE(ascii.out == utf8.out);
  Presheaf model = load_model(ascii.out);
  REQUIRE(model.cat().tag() == CategoryTag::Hypergraph);
  REQUIRE(model.cell_count(model.cat().edge_object(2)) == 3);
}

TEST_CASE("endpoint flags are an alternative to --via") {
  CliResult via = run_cli("convert " + fx("collab.h.json") + " --via 'hypergraph->sset'");
  CliResult ends = run_cli("convert " + fx("collab.h.json") + " --from hypergraph --to sset");
  REQUIRE(via.code == 0);
  REQUIRE(ends.code == 0);
  REQUIRE(via.out == ends.out);

  // a graph can land in complexes two ways; the ambiguity is an error
  CliResult ambiguous = run_cli("convert " + fx("triangle.g.json") +
                                " --from graph --to semisset");
  REQUIRE(ambiguous.code == 2);
  REQUIRE_THAT(ambiguous.err, ContainsSubstring("skeletal"));
  REQUIRE_THAT(ambiguous.err, ContainsSubstring("clique"));
}

TEST_CASE("conversions are byte-reproducible") {
  std::string a = (scratch_dir() / "rep-a.json").string();
  std::string b = (scratch_dir() / "rep-b.json").string();
  REQUIRE(run_cli("convert " + fx("collab.h.json") + " --via 'hypergraph->sset' -o " + a).code == 0);
  REQUIRE(run_cli("convert " + fx("collab.h.json") + " --via 'hypergraph->sset' -o " + b).code == 0);
  REQUIRE(read_all(a) == read_all(b));
  REQUIRE(read_all(a) == slurp(fx("collab.s.json")));
}

TEST_CASE("hom counting between models") {
  CliResult r = run_cli("homs " + fx("square.hg.json") + " " + fx("square.hg.json"));
  REQUIRE(r.code == 0);
  REQUIRE(json::parse(r.out)["count"] == 4);

  CliResult mixed = run_cli("homs " + fx("square.hg.json") + " " + fx("triangle.g.json"));
  REQUIRE(mixed.code == 2);
  REQUIRE_THAT(mixed.err, ContainsSubstring("different categories"));
}

TEST_CASE("adjoint-check passes on the shipped pairs") {
  struct Pair {
    std::string via, f, g;
  };
  std::vector<Pair> pairs{
      {"i", "triangle.g.json", "collab.h.json"},
      {"A", "collab.h.json", "collab.s.json"},
      {"gs", "triangle.g.json", "square.hg.json"},
      {"sym", "edge.ss.json", "edge.sym.json"},
  };
  for (const auto& p : pairs) {
    CliResult r = run_cli("adjoint-check --via " + p.via + " " + fx(p.f) + " " + fx(p.g));
    INFO(p.via << " " << r.err);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc["ok"] == true);
    REQUIRE(doc["left_bijective"] == true);
    REQUIRE(doc["right_bijective"] == true);
    REQUIRE(doc["hom_F_RG"] == doc["hom_LF_G"]);
    REQUIRE(doc["hom_RG_F"] == doc["hom_G_AF"]);
  }
  CliResult unknown = run_cli("adjoint-check --via zz " + fx("triangle.g.json") + " " +
                              fx("collab.h.json"));
  REQUIRE(unknown.code == 2);
}

TEST_CASE("faces lists the sub-simplices of one cell") {
  CliResult r = run_cli("faces " + fx("square.hg.json") + " [2] abd --format table");
  REQUIRE(r.code == 0);
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  REQUIRE(lines == 7);
  REQUIRE_THAT(r.out, ContainsSubstring("[1] ad"));
  REQUIRE_THAT(r.out, ContainsSubstring("[2] abd"));

  CliResult miss = run_cli("faces " + fx("square.hg.json") + " [2] zz");
  REQUIRE(miss.code == 2);
  REQUIRE_THAT(miss.err, ContainsSubstring("no cell labelled 'zz'"));
}

TEST_CASE("skeleton extracts the level-1 graph") {
  CliResult r = run_cli("skeleton " + fx("square.hg.json") + " --format table");
  REQUIRE(r.code == 0);
  REQUIRE_THAT(r.out, ContainsSubstring("model graph, dimension 1, cells [4,5]"));

  // graphs are not complexes; the hint names the fix
  CliResult wrong = run_cli("skeleton " + fx("triangle.g.json"));
  REQUIRE(wrong.code == 2);
  REQUIRE_THAT(wrong.err, ContainsSubstring("expected a semisimplicial model"));
}

TEST_CASE("clique accepts csv edge lists") {
  CliResult r = run_cli("clique " + fx("k4-oneway.edges.csv") + " --format table");
  REQUIRE(r.code == 0);
  REQUIRE_THAT(r.out, ContainsSubstring("dimension 3, cells [4,6,4,1,0,0,0]"));
}

TEST_CASE("the truncation environment variable sets the default") {
  CliResult r = run_cli("clique " + fx("k4-oneway.edges.csv") + " --format table",
                        "HIGHERGRAPH_TRUNCATION=3");
  REQUIRE(r.code == 0);
  REQUIRE_THAT(r.out, ContainsSubstring("cells [4,6,4,1]"));
  // the explicit flag wins over the environment
  CliResult flag = run_cli("clique " + fx("k4-oneway.edges.csv") + " --truncation 2 --format table",
                           "HIGHERGRAPH_TRUNCATION=5");
  REQUIRE(flag.code == 0);
  REQUIRE_THAT(flag.out, ContainsSubstring("cells [4,6,4]"));

  CliResult bad = run_cli("stats " + fx("empty.hg.json"), "HIGHERGRAPH_TRUNCATION=maybe");
  // stats ignores the variable entirely, so it still succeeds
  REQUIRE(bad.code == 0);
}

TEST_CASE("usage errors exit with 2") {
  REQUIRE(run_cli("frobnicate").code == 2);
  REQUIRE(run_cli("").code == 2);
  REQUIRE(run_cli("convert " + fx("triangle.g.json")).code == 2);  // no conversion named
  CliResult tiny = run_cli("homs " + fx("square.hg.json") + " " + fx("square.hg.json") +
                           " --budget 1");
  REQUIRE(tiny.code == 2);
  REQUIRE_THAT(tiny.err, ContainsSubstring("budget"));
}
