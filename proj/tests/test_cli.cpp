#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "vilenkin/cli/config.hpp"
#include "vilenkin/cli/csv.hpp"
#include "vilenkin/cli/runners.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/io.hpp"

using namespace vilenkin;
using namespace vilenkin::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "vilenkin_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(VILENKIN_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const json& j) {
  const auto path = dir / "config.json";
  write_json_file(j, path);
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("radix forms") {
  CHECK(parse_radix(json::array({2, 3, 4})) == RadixSequence({2, 3, 4}));
  CHECK(parse_radix({{"constant", 2}, {"length", 5}}) == RadixSequence::constant(2, 5));
  CHECK(parse_radix({{"pattern", {2, 3}}, {"length", 5}}) == RadixSequence({2, 3, 2, 3, 2}));
  CHECK(parse_radix({{"pattern", {2, 3}}, {"repeat", 2}}) == RadixSequence({2, 3, 2, 3}));
  CHECK_THROWS_AS(parse_radix(json::array({2, 1})), ConfigError);
  CHECK_THROWS_AS(parse_radix({{"pattern", {2}}, {"repeat", 2}, {"length", 2}}), ConfigError);
  CHECK_THROWS_AS(parse_radix({{"constant", 2}}), ConfigError);
  CHECK_THROWS_AS(parse_radix("2x3"), ConfigError);
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config({{"radix", {{"constant", 3}, {"length", 4}}},
                                 {"resolution", 4},
                                 {"alphas", {0.5}},
                                 {"function", {{"family", "lacunary"}, {"s", 2.0}}},
                                 {"schedule", {{"kind", "list"}, {"n", {5, 1, 5}}}},
                                 {"seed", 42},
                                 {"suites", {"group", "routes"}}});
  CHECK(cfg.radix == RadixSequence::constant(3, 4));
  CHECK(cfg.alphas == std::vector<double>{0.5});
  CHECK(cfg.seed == 42);
  CHECK(cfg.suite_selected("group"));
  CHECK_FALSE(cfg.suite_selected("lemma1"));
  const auto ns = build_number_system(cfg.radix);
  CHECK(schedule_points(cfg.schedule, ns) == std::vector<Index>{1, 5});
  CHECK(describe(cfg.function) == "s=2.0");

  CHECK_THROWS_AS(parse_config({{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"alphas", {1.0}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"alphas", {0.0}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"radix", {2, 2}}, {"resolution", 3}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"suites", {"nope"}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"function", {{"family", "mystery"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"function", {{"family", "constant"}, {"s", 1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"seed", "one"}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"kernel_scan", {{"lemmas", {"lemma9"}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"young", {{"kind", "power"}, {"p", 0.5}}}}), Error);
}

TEST_CASE("schedules") {
  const auto ns = build_number_system(RadixSequence::constant(2, 5));
  Schedule s;
  CHECK(schedule_points(s, ns) == std::vector<Index>{2, 4, 8, 16});
  s.extra = {3, 31};
  CHECK(schedule_points(s, ns) == std::vector<Index>{2, 3, 4, 8, 16, 31});
  Schedule r;
  r.kind = Schedule::Kind::range;
  r.first = 30;
  CHECK(schedule_points(r, ns) == std::vector<Index>{30, 31, 32});
  r.last = 33;
  CHECK_THROWS_AS(schedule_points(r, ns), ConfigError);
}

TEST_CASE("memory cap") {
  CHECK_THROWS_AS(make_number_system(RadixSequence::constant(2, 10), 512), ConfigError);
  CHECK(make_number_system(RadixSequence::constant(2, 9), 512).size() == 512);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(0.001) == "0.001");
  CHECK(format_number(0.0001) == "0.0001");
  CHECK(format_number(0.00001) == "1e-05");
  CHECK(format_number(-3.25e-12) == "-3.25e-12");
  CHECK(format_number(1e20) == "100000000000000000000");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("CSV writer") {
  const auto dir = scratch("csv");
  {
    CsvWriter w(dir / "t.csv", {"name", "x", "flag", "maybe"});
    w.row({std::string("a,b"), 0.5, true, std::optional<double>{}});
    w.row({std::string("say \"hi\""), std::uint64_t{7}, false, std::optional<double>{1e-6}});
    CHECK_THROWS(w.row({std::string("short")}));
  }
  CHECK(slurp(dir / "t.csv") ==
        "schema_version,name,x,flag,maybe\n"
        "1,\"a,b\",0.5,true,\n"
        "1,\"say \"\"hi\"\"\",7,false,1e-06\n");
}

TEST_CASE("verify runs clean and the negative control fails") {
  ExperimentConfig cfg;
  cfg.out = scratch("verify");
  cfg.threads = 1;
  const auto ok = run_verify(cfg);
  CHECK(ok.passed());
  CHECK(ok.exit_code() == 0);
  CHECK(fs::exists(cfg.out / "verify.json"));

  cfg.kernel_weight_offset = 1e-3;
  cfg.suites = {"routes"};
  const auto bad = run_verify(cfg);
  CHECK(bad.exit_code() == 1);
  bool named = false;
  for (const auto& s : bad.suites) named |= (!s.passed && s.name.rfind("routes", 0) == 0);
  CHECK(named);
}

TEST_CASE("mixed radix verify") {
  ExperimentConfig cfg;
  cfg.radix = RadixSequence({2, 3, 4, 2});
  cfg.out = scratch("verify_mixed");
  CHECK(run_verify(cfg).exit_code() == 0);
}

TEST_CASE("converge on constants and a finite spectrum") {
  ExperimentConfig cfg;
  cfg.out = scratch("converge_const");
  cfg.function = {"constant", {{"value", 2.0}}};
  cfg.trend.enforce = false;
  auto report = run_converge(cfg);
  CHECK(report.exit_code() == 0);
  const auto csv = slurp(cfg.out / "converge.csv");
  CHECK(csv.find("schema_version,family,params,alpha,n") == 0);

  cfg.out = scratch("converge_psi3");
  cfg.function = {"character", {{"n", 3}}};
  report = run_converge(cfg);
  CHECK(report.exit_code() == 0);
}

TEST_CASE("tool exit codes") {
  const auto dir = scratch("tool");
  CHECK(run_tool("--help") == 0);
  CHECK(run_tool("") == 2);
  CHECK(run_tool("frobnicate") == 2);
  CHECK(run_tool("--out " + (dir / "v").string() + " verify") == 0);
  CHECK(run_tool("--out " + (dir / "v").string() + " --suites nope verify") == 2);
  CHECK(run_tool("--config " + (dir / "missing.json").string() + " verify") == 2);

  const auto unknown = write_config(dir, {{"radx", {2, 2}}});
  CHECK(run_tool("--config " + unknown.string() + " verify") == 2);

  const auto control = write_config(dir, {{"kernel_weight_offset", 1e-3},
                                          {"suites", {"routes"}},
                                          {"out", (dir / "neg").string()}});
  CHECK(run_tool("--config " + control.string() + " verify") == 1);

  CHECK(run_tool("--out " + (dir / "v").string() + " --max-cells 8 verify") == 2);
  CHECK(setenv("VILENKIN_MAX_CELLS", "8", 1) == 0);
  CHECK(run_tool("--out " + (dir / "v").string() + " verify") == 2);
  unsetenv("VILENKIN_MAX_CELLS");
}

TEST_CASE("identical config and seed give identical bytes") {
  ExperimentConfig cfg;
  cfg.function = {"random", json::object()};
  cfg.trend.enforce = false;
  cfg.seed = 7;
  const auto a = scratch("det_a"), b = scratch("det_b");
  cfg.out = a;
  cfg.threads = 1;
  run_converge(cfg);
  run_oscillation(cfg);
  cfg.out = b;
  cfg.threads = 3;
  run_converge(cfg);
  run_oscillation(cfg);
  for (const char* name : {"converge.csv", "converge.json", "oscillation.csv", "oscillation.json"}) {
    CHECK(slurp(a / name) == slurp(b / name));
    CHECK_FALSE(slurp(a / name).empty());
  }
}

TEST_CASE("file family resolves against the config directory") {
  const auto dir = scratch("file_family");
  const auto ns = build_number_system(RadixSequence({2, 3, 2}));
  const auto f = StepFunction::from_cells(ns, [](Index x) { return Complex(0.1 * x, 0.0); });
  save(f, dir / "f.json");
  const auto path = write_config(dir, {{"radix", {2, 3, 2}},
                                       {"function", {{"family", "file"}, {"path", "f.json"}}},
                                       {"out", (dir / "out").string()}});
  const auto cfg = load_config(path);
  const auto g = make_function(cfg.function, ns, cfg.seed, cfg.base_dir);
  for (Index x = 0; x < ns.size(); ++x) CHECK(g[x] == f[x]);
  CHECK(run_oscillation(cfg).exit_code() == 0);
  CHECK(fs::exists(dir / "out" / "oscillation.csv"));

  const auto wrong = build_number_system(RadixSequence({2, 2}));
  CHECK_THROWS_AS(make_function(cfg.function, wrong, 1, cfg.base_dir), Error);
}
