#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "dpt/canonical.hpp"
#include "dpt/curve_fixtures.hpp"
#include "support.hpp"

using namespace dpt;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return testing::fixture_path(name + ".json"); }

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("dpt_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("invariant") {
  const Run r = run({"invariant", fx("j")});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"coefficients\":{\"3\":1}}\n");
  CHECK(run({"invariant", fx("mixed_4"), "--format", "pretty"}).out == "-1:3 1:-2\n");
}

TEST_CASE("validate") {
  CHECK(run({"validate", fx("e")}).code == 0);
  const Run bad = run({"validate", fx("twovertex")});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("\"ok\":false") != std::string::npos);
  CHECK(run({"validate", "/nonexistent.json"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"invariant"}).code == 1);
  CHECK(run({"invariant", fx("j"), "--format", "xml"}).code == 1);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("realize") != std::string::npos);
}

TEST_CASE("reach") {
  const Run r = run({"reach", fx("e"), fx("j")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"status\":\"CertifiedUnreachable\"") != std::string::npos);
  const Run same = run({"reach", fx("j"), fx("j")});
  CHECK(same.out.find("\"status\":\"Reached\"") != std::string::npos);
}

TEST_CASE("negate, sum, dot") {
  const Run n = run({"negate", fx("j")});
  REQUIRE(n.code == 0);
  CHECK(isomorphic(io::tree_from_json(io::parse(n.out)), testing::fixture("neg_j")));
  CHECK(run({"negate", fx("twovertex")}).code == 2);

  const Run s = run({"sum", fx("j"), "w1", fx("j"), "w2"});
  REQUIRE(s.code == 0);
  CHECK(invariant_of(io::tree_from_json(io::parse(s.out))) == parse_vector("3:2 1:-1"));
  const Run rel = run({"sum", fx("j"), "w1", fx("j"), "w2", "--with-relabel"});
  CHECK(io::parse(rel.out).contains("vertex_relabel"));
  CHECK(run({"sum", fx("j"), "v", fx("j"), "w2"}).code == 2);

  const Run d = run({"dot", fx("j")});
  CHECK(d.out.rfind("digraph", 0) == 0);
}

TEST_CASE("moves and apply round trip") {
  const Run m = run({"moves", fx("j")});
  REQUIRE(m.code == 0);
  const auto moves = io::parse(m.out);
  REQUIRE(moves.is_array());
  CHECK(moves.size() == 22);
  const std::string move_file = temp_file("move.json", moves[0].dump());
  const Run a = run({"apply", fx("j"), move_file});
  REQUIRE(a.code == 0);
  const Tree after = io::tree_from_json(io::parse(a.out));
  CHECK(invariant_of(after) == basis(3));
  const std::string seq_file = temp_file("moves.json", "[" + moves[0].dump() + "]");
  CHECK(run({"apply", fx("j"), seq_file}).out == a.out);
  const std::string bad_move = temp_file("bad_move.json", R"({"type":"EDeath","edges":["a1","zz"]})");
  CHECK(run({"apply", fx("j"), bad_move}).code == 2);
  const std::string garbled = temp_file("garbled.json", R"({"type":"EDeath"})");
  CHECK(run({"apply", fx("j"), garbled}).code == 1);
  const std::string illegal = temp_file("illegal.json", R"({"type":"EBirth","v1":"v","v2":"v","d1":9,"d2":9})");
  CHECK(run({"apply", fx("j"), illegal}).code == 2);
}

TEST_CASE("enum") {
  const Run r = run({"enum", "--max-vertices", "3", "--delta-bound", "3"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 12);
  CHECK(run({"enum", "--max-vertices", "9", "--delta-bound", "9", "--max-candidates", "10"}).code == 2);
}

TEST_CASE("realize") {
  const Run r = run({"realize", "--coeff", "5:1", "--coeff", "-3:1", "--coeff", "1:-1"});
  REQUIRE(r.code == 0);
  CHECK(invariant_of(io::tree_from_json(io::parse(r.out))) == parse_vector("5:1 -3:1 1:-1"));
  CHECK(r.err == "invariant -3:1 1:-1 5:1\n");
  CHECK(run({"realize", "--coeff", "2:1"}).code == 2);
  CHECK(run({"realize", "--coeff", "x"}).code == 1);
}

TEST_CASE("from-curve") {
  const std::string path = temp_file("j_curve.json", io::to_json(fixtures::j_curve()).dump());
  const Run r = run({"from-curve", path});
  REQUIRE(r.code == 0);
  CHECK(isomorphic(io::tree_from_json(io::parse(r.out)), testing::fixture("j")));
  const Run flipped = run({"from-curve", path, "--flip-orientation"});
  CHECK(isomorphic(io::tree_from_json(io::parse(flipped.out)), testing::fixture("neg_j")));
  const std::string open = temp_file("open_curve.json", R"({"points":[[1,0],[2,0],[0,1]]})");
  CHECK(run({"from-curve", open}).code == 2);
}
