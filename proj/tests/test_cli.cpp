#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>
#include <sys/wait.h>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

/// Runs the CLI through the shell; stderr is folded into the captured text when asked.
Result run(const std::string& args, bool with_stderr = false, const std::string& env = "") {
  std::string cmd = env + " \"" + std::string(NERVEKIT_CLI) + "\" " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(NERVEKIT_DATA_DIR) + "/" + name; }

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "nervekit_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("nerve of the three-arc cover") {
  auto r = run("nerve --cover " + data("three_arcs.json") + " --max-dim 2");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["counts"] == nlohmann::json({3, 3, 0}));
  CHECK(j["vertices"] == 3);
}

TEST_CASE("homology of the torus boxes in both modes") {
  auto r = run("homology --cover " + data("torus_boxes.json"));
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rational"]["betti"] == nlohmann::json({1, 2, 1, 0}));
  CHECK(j["mod2"]["betti"] == nlohmann::json({1, 2, 1, 0}));
  CHECK(j["euler"] == 0);
  auto sq = nlohmann::json::parse(run("homology --cover " + data("abstract_square.json")).out);
  CHECK(sq["rational"]["betti"] == nlohmann::json({1, 1}));
}

TEST_CASE("per-dimension CSV for nerve and homology") {
  auto n = run("nerve --cover " + data("three_arcs.json") + " --format csv");
  REQUIRE(n.code == 0);
  CHECK(n.out == "dim,count\n0,3\n1,3\n2,0\n");
  auto h = run("homology --cover " + data("abstract_square.json") + " --format csv --coefficients rational");
  REQUIRE(h.code == 0);
  CHECK(h.out == "dim,count,betti_rational\n0,4,1\n1,4,1\n2,0,\n");
  CHECK(run("reduce --cover " + data("three_arcs.json") + " --format csv").code == 1);
  CHECK(run("realize --cover " + data("three_arcs.json") + " --format csv").code == 1);
}

TEST_CASE("grow emits one CSV row per stage") {
  auto r = run("grow --system doubling:2 --cover " + data("two_arcs.json") + " --stages 3");
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == 4);
  CHECK(r.out.rfind("n,sizeF,members,", 0) == 0);
}

TEST_CASE("validation errors exit with status 1") {
  auto missing = run("nerve --cover " + data("no_such_file.json"), true);
  CHECK(missing.code == 1);
  CHECK(missing.out.find("cannot open") != std::string::npos);

  auto bad = run("nerve --cover " + data("malformed.json"), true);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("sets[1].arcs[0][1]") != std::string::npos);

  auto path = scratch("syntax.json");
  std::ofstream(path) << "{\n  \"space\": {\"kind\": \"circle\"},\n  \"sets\": [\n    {\"type\": \"arcs\" \"arcs\": []}\n  ]\n}\n";
  auto syntax = run("nerve --cover " + path.string(), true);
  CHECK(syntax.code == 1);
  CHECK(syntax.out.find("line 4") != std::string::npos);

  CHECK(run("grow --system bogus:1 --cover " + data("two_arcs.json")).code == 1);
  CHECK(run("grow --system doubling:1 --cover " + data("two_arcs.json")).code == 1);
  CHECK(run("nerve --cover " + data("three_arcs.json") + " --format xml").code == 1);
  CHECK(run("nerve --cover " + data("three_arcs.json"), false, "NERVEKIT_BUDGET=0").code == 1);
  CHECK(run("bounds --lambda 0 --dim 2 --diameter 1 --epsilon 5").code == 1);
  CHECK(run("frobnicate").code == 1);
}

TEST_CASE("truncation exits with status 2 and keeps partial output") {
  auto r = run("grow --system doubling:2 --cover " + data("two_arcs.json") + " --stages 6 --member-cap 10", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("truncated") != std::string::npos);
  CHECK(r.out.find("\n2,2,8,") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
  for (const std::string& args : std::vector<std::string>{"example run doubling --stages 4", "realize --cover " + data("three_arcs.json"),
                                 "reduce --cover " + data("torus_boxes.json"), "example run prismatic"}) {
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("output file and bounds report") {
  auto path = scratch("bounds.json");
  std::filesystem::remove(path);
  auto r = run("--out " + path.string() +
               " bounds --lambda 0 --dim 2 --diameter 1 --epsilon 0.4 --ent0 0.6931471805599453 --generator-size 2");
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  CHECK(j["theta"] == "100");
  CHECK(j["sandwich"]["pass"] == true);
  CHECK(j["sandwich"]["lower"] == "2");
}

TEST_CASE("realize reports the triangle metric") {
  auto j = nlohmann::json::parse(run("realize --cover " + data("three_arcs.json")).out);
  CHECK(j["edges"].size() == 3);
  for (const auto& e : j["edges"]) CHECK(e["length"] == "1/3");
  CHECK(j["connected"] == true);
}

TEST_CASE("cat map prints its reference entropy") {
  auto r = run("example run cat-map --stages 1", true);
  CHECK(r.code == 0);
  CHECK(r.out.find("log((3+sqrt 5)/2)") != std::string::npos);
  CHECK(r.out.find("0.962423650119207") != std::string::npos);
}
