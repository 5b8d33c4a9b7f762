#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pamlab/cli_lib.hpp"
#include "pamlab/generators.hpp"
#include "pamlab/io.hpp"

using namespace pamlab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("pamlab_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("graph serialization round trips") {
  SUBCASE("seed graph") {
    RngStream s(1, 0);
    const LabeledGraph g = generate_pad(2, 2, 1.0, s);
    const std::string text = serialize_graph(g);
    const LabeledGraph h = parse_graph(text);
    CHECK(h.edges == g.edges);
    CHECK(serialize_graph(h) == text);
  }
  SUBCASE("large graph with weights is bit exact") {
    RngStream s(2, 0);
    auto [g, w] =
        generate_polya_urn(20000, 2, 1.0 / 3.0, s, false, UrnSchedule::variant_d(2, 1.0 / 3.0));
    const std::string text = serialize_graph(g);
    const LabeledGraph h = parse_graph(text);
    CHECK(h.edges == g.edges);
    CHECK(h.psi == g.psi);
    CHECK(h.delta == g.delta);
    CHECK(serialize_graph(h) == text);
  }
  SUBCASE("variant-b seed edge survives the trip") {
    RngStream s(3, 0);
    const LabeledGraph g = generate_pa1(7, 0.25, Variant::b, s);
    const LabeledGraph h = parse_graph(serialize_graph(g));
    CHECK(h.edges == g.edges);
  }
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("missing header") {
    CHECK_THROWS_AS(parse_graph("1 1 1\n"), ParseError);
  }
  SUBCASE("bad edge line") {
    const std::string text =
        "#pamlab v1 variant=d n=3 m=1 delta=1 seed=0 construction=seq\n2 1 1\n3 x 1\n";
    try {
      parse_graph(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("self-loop under variant d is rejected") {
    const std::string text =
        "#pamlab v1 variant=d n=3 m=1 delta=1 seed=0 construction=seq\n2 1 1\n3 1 3\n";
    CHECK_THROWS_AS(parse_graph(text), ParseError);
  }
  SUBCASE("edge lines parse on their own") {
    const auto edges = parse_edge_lines("3 1 1\n4 2 2\n");
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == EdgeTriple{3, 1, 1});
    CHECK(edges[1] == EdgeTriple{4, 2, 2});
  }
}

TEST_CASE("cli runs are deterministic and honor the output dir") {
  TempDir tmp;
  setenv("PAMLAB_OUT", tmp.path.c_str(), 1);

  RunConfig c;
  c.command = "generate";
  c.variant = Variant::d;
  c.n = 1000;
  c.m = 2;
  c.delta = 1.0;
  c.seed = 7;
  c.output = "g1.txt";
  REQUIRE(run(c) == 0);
  c.output = "g2.txt";
  REQUIRE(run(c) == 0);
  const std::string a = read_file((tmp.path / "g1.txt").string());
  const std::string b = read_file((tmp.path / "g2.txt").string());
  CHECK(!a.empty());
  CHECK(a == b);

  const LabeledGraph g = parse_graph(a);
  CHECK(g.n == 1000);
  CHECK(g.edges.size() == 2 * 999);

  unsetenv("PAMLAB_OUT");
}

TEST_CASE("cli emits provenance and both formats") {
  TempDir tmp;
  setenv("PAMLAB_OUT", tmp.path.c_str(), 1);

  RunConfig c;
  c.command = "distances";
  c.variant = Variant::d;
  c.construction = Construction::urn;
  c.n = 2000;
  c.m = 2;
  c.delta = 1.0;
  c.pairs = 50;
  c.seed = 7;
  c.output = "d.csv";
  REQUIRE(run(c) == 0);
  const std::string csv = read_file((tmp.path / "d.csv").string());
  CHECK(csv.rfind("# pamlab v1", 0) == 0);
  CHECK(csv.find("command=distances") != std::string::npos);
  CHECK(csv.find("seed=7") != std::string::npos);
  CHECK(csv.find("mean") != std::string::npos);

  c.format = "json";
  c.output = "d.json";
  REQUIRE(run(c) == 0);
  const std::string json = read_file((tmp.path / "d.json").string());
  CHECK(json.find("\"config\"") != std::string::npos);
  CHECK(json.find("\"mean\"") != std::string::npos);

  unsetenv("PAMLAB_OUT");
}

TEST_CASE("cli rejects invalid configurations") {
  RunConfig c;
  c.command = "generate";
  c.variant = Variant::b;
  c.construction = Construction::urn;
  CHECK(run(c) == 2);

  RunConfig w;
  w.command = "walk";
  w.zeta = 0.5;
  CHECK(run(w) == 2);
}

TEST_CASE("spectrum subcommand reports a small relative error") {
  TempDir tmp;
  setenv("PAMLAB_OUT", tmp.path.c_str(), 1);
  RunConfig c;
  c.command = "spectrum";
  c.mode = "plain";
  c.m = 2;
  c.delta = 1.0;
  c.grid = 1200;
  c.output = "s.csv";
  REQUIRE(run(c) == 0);
  const std::string csv = read_file((tmp.path / "s.csv").string());
  // last column of the data row is the relative error
  const auto last_comma = csv.find_last_of(',');
  const double rel = std::abs(std::stod(csv.substr(last_comma + 1)));
  CHECK(rel < 0.02);
  unsetenv("PAMLAB_OUT");
}
