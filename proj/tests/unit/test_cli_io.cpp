#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pointnls_io/config.hpp"
#include "pointnls_io/oracle.hpp"
#include "pointnls_io/runner.hpp"

using namespace pointnls;
using namespace pointnls::io;
namespace fs = std::filesystem;

namespace {
const std::string kConfigs = POINTNLS_CONFIG_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pointnls_test_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kMinimal = R"(schema_version: 1
kind: run
name: tiny
p: 5
datum:
  kind: gaussian
  amplitude: 0.5
solver:
  dt: 0.01
  T: 1.0
grid:
  half_width: 8
  dx: 0.125
snapshots: [0, 0.5, 1]
)";
}  // namespace

TEST(Config, ParsesShippedConfigs) {
  for (const char* f : {"ground_state", "blowup", "subthreshold"}) {
    const auto c = load_run_config(kConfigs + "/" + f + ".yaml");
    EXPECT_EQ(c.name, f);
    EXPECT_EQ(config_kind_of_file(kConfigs + "/" + f + ".yaml"), ConfigKind::Run);
  }
  const auto s = load_sweep_config(kConfigs + "/amplitude_sweep.yaml");
  ASSERT_EQ(s.axes.size(), 1u);
  ASSERT_EQ(s.axes[0].values.size(), 20u);
  EXPECT_EQ(s.axes[0].values[2], 0.3);
  EXPECT_EQ(s.axes[0].values.back(), 2.0);
  EXPECT_EQ(s.points().size(), 20u);
  EXPECT_EQ(row_key(s, {0.3}), "amplitude=0.3");
}

TEST(Config, Overrides) {
  Overrides o;
  o.dt = 0.02;
  o.T = 2.0;
  o.out = "elsewhere";
  o.threads = 3;
  const auto c = parse_run_config(kMinimal, o);
  EXPECT_EQ(c.dt, 0.02);
  EXPECT_EQ(c.T, 2.0);
  EXPECT_EQ(c.output, "elsewhere");
  EXPECT_EQ(c.threads, 3u);
}

TEST(Config, ErrorsCarryFieldAndLine) {
  auto expect_error = [](const std::string& text, const std::string& field, int line) {
    try {
      parse_run_config(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.field(), field) << e.what();
      EXPECT_EQ(e.line(), line) << e.what();
    }
  };
  const std::string base = kMinimal;
  expect_error(base + "extra: 1\n", "extra", 15);
  expect_error("kind: run\np: 5\n", "schema_version", 1);
  expect_error("schema_version: 2\nkind: run\n", "schema_version", 1);
  expect_error("schema_version: 1\nkind: sweep\n", "kind", 2);
  expect_error("schema_version: 1\nkind: run\nsolver:\n  dt: -1\n", "solver.dt", 4);
  expect_error("schema_version: 1\nkind: run\nsolver:\n  dt: fast\n", "solver.dt", 4);
  expect_error("schema_version: 1\nkind: run\np: [5\n", "", 4);
  expect_error("schema_version: 1\nkind: run\ngrid:\n  half_width: 1\n  dx: 0.3\n", "grid", 4);
  expect_error("schema_version: 1\nkind: run\ndatum:\n  kind: square\n", "datum.kind", 4);
}

TEST(Config, EmptyAxisRejectedBeforeAnyRun) {
  TempDir tmp;
  const std::string text = "schema_version: 1\nkind: sweep\nbase:\n  p: 5\naxes:\n  - name: amplitude\n    values: []\noutput: " +
                           (tmp.path / "sweep").string() + "\n";
  EXPECT_THROW(parse_sweep_config(text), ConfigError);
  EXPECT_FALSE(fs::exists(tmp.path / "sweep"));
}

TEST(Config, OutputRoot) {
  ::setenv("POINTNLS_OUTPUT_ROOT", "/data/root", 1);
  EXPECT_EQ(resolve_output("runs/a"), "/data/root/runs/a");
  EXPECT_EQ(resolve_output("/abs/b"), "/abs/b");
  ::unsetenv("POINTNLS_OUTPUT_ROOT");
  EXPECT_EQ(resolve_output("runs/a"), "runs/a");
}

TEST(Run, GroundStateTrajectoryIsConstant) {
  TempDir tmp;
  auto c = load_run_config(kConfigs + "/ground_state.yaml");
  c.output = (tmp.path / "gs").string();
  const auto r = run(c);
  EXPECT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.status, "Completed");
  std::ifstream in(tmp.path / "gs" / "trajectory.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,re_q,im_q,abs_q");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const double abs_q = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_NEAR(abs_q, std::pow(2.0, 0.25), 1e-3);
    ++rows;
  }
  EXPECT_EQ(rows, 1001u);
  EXPECT_TRUE(fs::exists(tmp.path / "gs" / "observables.csv"));
  const auto meta = nlohmann::json::parse(slurp(tmp.path / "gs" / "metadata.json"));
  EXPECT_EQ(meta["result"]["status"], "Completed");
  EXPECT_EQ(meta["config"]["schema_version"], kSchemaVersion);
  EXPECT_EQ(meta["classification"]["verdict"], "AboveThresholdIndeterminate");
}

TEST(Run, BlowUpRecordsInterval) {
  TempDir tmp;
  auto c = load_run_config(kConfigs + "/blowup.yaml");
  c.output = (tmp.path / "b").string();
  const auto r = run(c);
  EXPECT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.status, "BlowUp");
  const auto meta = nlohmann::json::parse(slurp(tmp.path / "b" / "metadata.json"));
  EXPECT_EQ(meta["result"]["status"], "BlowUp");
  const double lo = meta["result"]["t_lower"], hi = meta["result"]["t_detect"];
  EXPECT_LT(lo, hi);
  EXPECT_LE(hi, 5.0);
  EXPECT_EQ(meta["result"]["predicted"], true);
}

TEST(Run, StallIsExitThree) {
  TempDir tmp;
  auto c = parse_run_config(std::string(kMinimal) + "output: " + (tmp.path / "st").string() + "\n");
  c.newton_max_iters = 1;
  c.newton_tol = 1e-300;
  const auto r = run(c);
  EXPECT_EQ(r.status, "Stalled");
  EXPECT_EQ(r.exit_code, kSolverStall);
  const auto meta = nlohmann::json::parse(slurp(tmp.path / "st" / "metadata.json"));
  EXPECT_EQ(meta["result"]["status"], "Stalled");
  EXPECT_EQ(meta["result"]["step"], 1);
}

TEST(Run, DeterministicOutputs) {
  TempDir tmp;
  auto c = parse_run_config(kMinimal);
  c.output = (tmp.path / "a").string();
  run(c);
  c.output = (tmp.path / "b").string();
  c.threads = 2;
  run(c);
  for (const char* f : {"trajectory.csv", "observables.csv"})
    EXPECT_EQ(slurp(tmp.path / "a" / f), slurp(tmp.path / "b" / f)) << f;
  auto ma = nlohmann::json::parse(slurp(tmp.path / "a" / "metadata.json"));
  auto mb = nlohmann::json::parse(slurp(tmp.path / "b" / "metadata.json"));
  for (auto* m : {&ma, &mb}) {
    m->erase("created");
    (*m)["config"].erase("output");
    (*m)["config"].erase("threads");
  }
  EXPECT_EQ(ma, mb);
}

TEST(Run, SeventeenDigits) {
  EXPECT_EQ(fmt(0.1), "0.10000000000000001");
  EXPECT_EQ(fmt(2.0), "2");
  EXPECT_EQ(std::stod(fmt(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Sweep, ResumeGivesIdenticalTable) {
  TempDir tmp;
  const std::string text = "schema_version: 1\nkind: sweep\nname: s\nbase:\n  p: 5\n  solver:\n    dt: 0.005\n    T: 2\n"
                           "axes:\n  - name: amplitude\n    values: [0.3, 0.6, 1.6]\n  - name: width\n    values: [1, 2]\n"
                           "parallelism: 2\noutput: " +
                           (tmp.path / "s").string() + "\n";
  const auto cfg = parse_sweep_config(text);
  const auto first = sweep(cfg);
  EXPECT_EQ(first.rows.size(), 6u);
  EXPECT_EQ(first.resumed, 0u);
  EXPECT_GT(first.decided, 0u);
  EXPECT_EQ(first.agreeing, first.decided);
  const std::string table = slurp(tmp.path / "s" / "phase_diagram.csv");

  // simulate a kill: one row missing, one truncated
  fs::remove(tmp.path / "s" / "rows" / "amplitude=0.6_width=1.json");
  std::ofstream(tmp.path / "s" / "rows" / "amplitude=1.6_width=2.json") << "{\"key\": ";
  fs::remove(tmp.path / "s" / "phase_diagram.csv");
  const auto second = sweep(cfg);
  EXPECT_EQ(second.resumed, 4u);
  EXPECT_EQ(slurp(tmp.path / "s" / "phase_diagram.csv"), table);

  // a changed base invalidates every stored row
  auto changed = cfg;
  changed.base.dt = 0.01;
  EXPECT_EQ(sweep(changed).resumed, 0u);
}

TEST(Sweep, RowErrorsDoNotStopTheSweep) {
  auto cfg = parse_sweep_config(
      "schema_version: 1\nkind: sweep\nbase:\n  p: 5\n  solver:\n    dt: 0.01\n    T: 0.5\n"
      "axes:\n  - name: amplitude\n    values: [0.5, 1.0e+200]\n");
  const auto s = sweep(cfg, false);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.rows[0].outcome, "Completed");
  EXPECT_EQ(s.rows[1].outcome, "Error");
  EXPECT_FALSE(s.rows[1].error.empty());
}

TEST(Oracle, Values) {
  EXPECT_NEAR(oracle("standing_wave", {})["abs_q"].get<double>(), std::pow(2.0, 0.25), 1e-15);
  EXPECT_NEAR(oracle("linear_gaussian", {{"t", 1.0}})["abs_q"].get<double>(), std::pow(17.0, -0.25), 1e-15);
  const auto g = oracle("gaussian", {{"A", 1.6}});
  EXPECT_NEAR(g["energy"].get<double>(), -1.191, 1e-3);
  EXPECT_EQ(g["verdict"], "BlowUpExpected");
  EXPECT_EQ(oracle("exponents", {{"p", 5.0}})["q"].get<double>(), 8.0);
  EXPECT_THROW(oracle("nope", {}), std::invalid_argument);
  EXPECT_EQ(oracle_names().size(), 4u);
}

#ifdef POINTNLS_CLI
TEST(Cli, ExitCodesAndNoPartialOutput) {
  TempDir tmp;
  const std::string cli = POINTNLS_CLI;
  const fs::path bad = tmp.path / "bad.yaml";
  std::ofstream(bad) << "schema_version: 1\nkind: run\nsolver:\n  dt: -1\n";
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  const std::string out = (tmp.path / "out").string();
  EXPECT_EQ(status(cli + " run " + bad.string() + " --out " + out), kConfigError);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(status(cli + " validate " + bad.string()), kConfigError);
  EXPECT_EQ(status(cli + " validate " + kConfigs + "/amplitude_sweep.yaml"), kOk);
  EXPECT_EQ(status(cli + " oracle standing_wave --p 5"), kOk);
  EXPECT_EQ(status(cli + " oracle nope"), kConfigError);
  EXPECT_EQ(status(cli + " run " + kConfigs + "/blowup.yaml --out " + out), kOk);
  EXPECT_TRUE(fs::exists(fs::path(out) / "metadata.json"));
  EXPECT_EQ(status(cli + " run " + kConfigs + "/blowup.yaml --out /proc/forbidden/x"), kIoError);
  EXPECT_EQ(status("POINTNLS_OUTPUT_ROOT=" + tmp.path.string() + " " + cli + " run " + kConfigs +
                   "/blowup.yaml --out rooted"),
            kOk);
  EXPECT_TRUE(fs::exists(tmp.path / "rooted" / "trajectory.csv"));
}
#endif
