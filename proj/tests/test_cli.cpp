#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "experiments.hpp"
#include "expressions.hpp"

using namespace orlicz::cli;

namespace {

std::filesystem::path scratch(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("orlicz-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "orlicz");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  // keep the JSON printed on success out of the test log
  std::ostringstream sink;
  auto* old = std::cout.rdbuf(sink.rdbuf());
  const int code = main_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return code;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("strict params") {
  const Json cfg = {{"experiment", "young"}, {"young", "power:2"}, {"points", 10}};
  const Params p(cfg, {"young", "points"});
  CHECK(p.integer("points", 1, 2, 100) == 10);
  CHECK(p.str("young", "x") == "power:2");
  CHECK(p.strings("young", {}) == std::vector<std::string>{"power:2"});
  CHECK_THROWS_AS(Params(cfg, {"young"}), UsageError);
  CHECK_THROWS_AS(p.integer("points", 1, 20, 100), UsageError);
  CHECK_THROWS_AS(p.str("points", ""), UsageError);
  CHECK_THROWS_AS(Params(Json::array(), {}), UsageError);
}

TEST_CASE("config parse errors carry a position") {
  const auto dir = scratch("parse");
  std::ofstream(dir / "bad.json") << "{\n  \"experiment\": \"young\",\n  \"points\": ,\n}\n";
  try {
    load_json_file((dir / "bad.json").string());
    FAIL("no throw");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("bad.json:3:") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("report serialization") {
  CHECK(num(1.0 / 0.0) == "inf");
  CHECK(num(-1.0 / 0.0) == "-inf");
  CHECK(num(0.5) == 0.5);
  Table t{"t", {"a", "b"}, {{0.1, "x"}, {3, true}}};
  CHECK(table_csv(t) == "a,b\n0.10000000000000001,x\n3,true\n");
  t.rows.push_back({1});
  CHECK_THROWS(table_csv(t));
}

TEST_CASE("expression ids") {
  CHECK(scalar_function("step")({0.7, 0.0}) == 1.0);
  CHECK(scalar_function("radial")({0.0, 1.0}) == doctest::Approx(1.0 / 3.0));
  CHECK(scalar_function("random:3")({0.2, 0.4}) == scalar_function("random:3")({0.2, 0.4}));
  CHECK(scalar_function("random:3")({0.2, 0.4}) != scalar_function("random:4")({0.2, 0.4}));
  CHECK_THROWS(scalar_function("random:x"));
  CHECK_THROWS(scalar_function("nope"));
  CHECK(negnorm_corpus().size() == 10);
}

TEST_CASE("experiments run and are reproducible") {
  const Json cfg = {{"experiment", "balance"}, {"pair", "zygmund:1:1:zygmund:1:0"}};
  const Report a = run_experiment(cfg, {});
  const Report b = run_experiment(cfg, {});
  CHECK(a.passed());
  CHECK(dump(a.to_json()) == dump(b.to_json()));
  CHECK(a.to_json()["schema"] == 1);
  CHECK(a.results["c_11"].is_number());
  CHECK(a.results["c_12"].is_number());
  CHECK_THROWS_AS(run_experiment({{"experiment", "nope"}}, {}), UsageError);
  CHECK_THROWS_AS(run_experiment({{"experiment", "balance"}, {"pairs", "x"}}, {}), UsageError);
  CHECK_THROWS_AS(run_experiment({{"experiment", "balance"}, {"pair", "power:2"}}, {}), UsageError);
}

TEST_CASE("fem infsup through the runner matches the eigen-oracle") {
  const Report r = run_experiment({{"experiment", "fem"}, {"verb", "infsup"}, {"mesh", "square:1/4"}}, {});
  CHECK(r.passed());
  CHECK(r.results["values"][0].get<double>() == doctest::Approx(1.077660841328794).epsilon(1e-9));
}

TEST_CASE("exit codes") {
  const auto dir = scratch("exit");
  CHECK(cli({"balance", "--pair", "power:2:power:2", "--out", dir.string()}) == 0);
  CHECK(cli({"run", "balance", "--pair", "power:2:power:2", "--out", dir.string()}) == 0);
  CHECK(cli({"balance", "--pair", "power:2:", "--out", dir.string()}) == 2);
  CHECK(cli({"balance", "--bogus"}) == 2);
  CHECK(cli({"fem", "explode"}) == 2);
  CHECK(cli({"negnorm", "--family-depth", "three"}) == 2);
  CHECK(cli({"run"}) == 2);
  CHECK(cli({"--help"}) == 0);
  // an inadmissible expectation is an assertion failure
  CHECK(cli({"balance", "--pair", "power:1:power:1", "--expect", "admissible", "--out", dir.string()}) == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory does not leak into the report") {
  const auto a = scratch("out-a"), b = scratch("out-b");
  CHECK(cli({"young", "--young", "zygmund:1:2", "--points", "20", "--out", a.string()}) == 0);
  setenv("ORLICZ_OUT", b.string().c_str(), 1);
  CHECK(cli({"young", "--young", "zygmund:1:2", "--points", "20"}) == 0);
  unsetenv("ORLICZ_OUT");
  CHECK(std::filesystem::exists(a / "young.json"));
  CHECK(slurp(a / "young.json") == slurp(b / "young.json"));
  CHECK(slurp(a / "young.table.csv") == slurp(b / "young.table.csv"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("multi-experiment configs") {
  const auto dir = scratch("multi");
  std::ofstream(dir / "one.json") << R"({"experiment": "young", "name": "y", "young": "exp:0.5", "points": 10})";
  std::ofstream(dir / "all.json") << R"({"experiments": ["one.json", {"experiment": "balance", "pair": "power:2:power:2"}]})";
  const auto out1 = dir / "o1", out2 = dir / "o2";
  CHECK(cli({"run", "--config", (dir / "all.json").string(), "--out", out1.string()}) == 0);
  CHECK(cli({"run", "--config", (dir / "all.json").string(), "--out", out2.string(), "--jobs", "2"}) == 0);
  for (const auto* f : {"y.json", "y.table.csv", "balance.json"}) CHECK(slurp(out1 / f) == slurp(out2 / f));
  std::ofstream(dir / "strict.json") << R"({"experiments": [], "extra": 1})";
  CHECK(cli({"run", "--config", (dir / "strict.json").string()}) == 2);
  std::filesystem::remove_all(dir);
}
