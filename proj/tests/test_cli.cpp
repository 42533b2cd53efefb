#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "agsgr/synth.hpp"

namespace fs = std::filesystem;

namespace {

// Compile definition provided by the build: absolute path of the agsgr binary.
constexpr const char* kCli = AGSGR_CLI_PATH;

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "agsgr_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct CliResult {
  int code = -1;
  std::string out;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  static int seq = 0;
  const fs::path log = scratch() / ("log" + std::to_string(seq++) + ".txt");
  const std::string cmd =
      std::string(kCli) + " " + args + " > '" + log.string() + "' 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(log);
  r.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("usage and help") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code != 0);            // a subcommand is required
  CHECK(run_cli("frobnicate").code != 0);  // unknown subcommand
}

TEST_CASE("ingest/train/recommend/evaluate end to end") {
  const fs::path dir = scratch();
  agsgr::synth::PlantedInstance inst = agsgr::synth::make_planted(424242);
  agsgr::synth::write_planted_csvs(inst, dir);
  const fs::path checkins = dir / "checkins.csv";
  const fs::path edges = dir / "edges.csv";
  const fs::path ds = dir / "ds.bin";

  CliResult ing = run_cli("ingest --checkins " + q(checkins) + " --edges " + q(edges) +
                          " --dataset " + q(ds) + " --events-csv " + q(dir / "events.csv"));
  REQUIRE(ing.code == 0);
  CHECK(ing.out.find("group events") != std::string::npos);
  CHECK(fs::exists(ds));
  CHECK(fs::exists(dir / "events.csv"));

  // Input errors map to distinct exit codes.
  CHECK(run_cli("ingest --checkins " + q(checkins) + " --edges " + q(dir / "nope.csv") +
                " --dataset " + q(dir / "x.bin"))
            .code == 3);
  std::ofstream(dir / "garbage.csv") << "a\nb\nc\n1,2,3,40.0,-70.0,ok\n";
  CHECK(run_cli("ingest --checkins " + q(dir / "garbage.csv") + " --edges " + q(edges) +
                " --dataset " + q(dir / "x.bin"))
            .code == 2);

  // Training is reproducible artifact-for-artifact.
  const std::string train_common = "train --dataset " + q(ds) + " --epochs 25 --dim 8 --seed 7";
  REQUIRE(run_cli(train_common + " --model " + q(dir / "m1.bin") + " --loss-csv " +
                  q(dir / "l1.csv"))
              .code == 0);
  REQUIRE(run_cli(train_common + " --model " + q(dir / "m2.bin") + " --loss-csv " +
                  q(dir / "l2.csv"))
              .code == 0);
  CHECK(slurp(dir / "m1.bin") == slurp(dir / "m2.bin"));
  CHECK(slurp(dir / "l1.csv") == slurp(dir / "l2.csv"));
  CHECK(line_count(dir / "l1.csv") == 27);  // header + initial loss + one per epoch

  CliResult rec = run_cli("recommend --dataset " + q(ds) + " --model " + q(dir / "m1.bin") +
                          " --target-user 0 --group-size 5 --core 3 --top-k 5");
  REQUIRE(rec.code == 0);
  CHECK(rec.out.find("group:") != std::string::npos);
  CHECK(rec.out.find("topic:") != std::string::npos);
  CHECK(rec.out.find("rank,poi_id,adist_m") != std::string::npos);

  CHECK(run_cli("recommend --dataset " + q(ds) + " --model " + q(dir / "m1.bin") +
                " --target-user 987654321")
            .code == 6);
  CHECK(run_cli("recommend --dataset " + q(ds) + " --model " + q(dir / "m1.bin") +
                " --target-user 0 --core 50 --group-size 51")
            .code == 5);
  CHECK(run_cli("recommend --dataset " + q(ds) + " --model " + q(dir / "m1.bin") +
                " --core 0 --group-size 3")
            .code == 2);  // k must be positive

  // Evaluation through a narrowed config grid; reruns are byte-identical.
  std::ofstream(dir / "grid.ini") << "eval.k_range = 2:3\n"
                                     "eval.h_range = 3:4\n"
                                     "eval.K_range = 3\n"
                                     "eval.n_targets = 4\n"
                                     "threads = 2\n";
  const std::string eval_common = "--config " + q(dir / "grid.ini") + " evaluate --dataset " +
                                  q(ds) + " --model " + q(dir / "m1.bin") + " --seed 3";
  REQUIRE(run_cli(eval_common + " --report-dir " + q(dir / "r1")).code == 0);
  REQUIRE(run_cli(eval_common + " --report-dir " + q(dir / "r2")).code == 0);
  const std::string report = slurp(dir / "r1" / "report.csv");
  CHECK(!report.empty());
  CHECK(report == slurp(dir / "r2" / "report.csv"));
  CHECK(report.rfind("k,h,K,metric,value,n", 0) == 0);
  // The narrowed grid shows through: only k in {2,3} appears.
  CHECK(report.find("\n2,3,3,") != std::string::npos);
  CHECK(report.find("\n1,") == std::string::npos);
}

TEST_CASE("config file: precedence, env fallback, unknown keys") {
  const fs::path dir = scratch() / "config";
  fs::create_directories(dir);
  agsgr::synth::PlantedInstance inst = agsgr::synth::make_planted(5150);
  agsgr::synth::write_planted_csvs(inst, dir);
  const fs::path ds = dir / "ds.bin";
  REQUIRE(run_cli("ingest --checkins " + q(dir / "checkins.csv") + " --edges " +
                  q(dir / "edges.csv") + " --dataset " + q(ds))
              .code == 0);

  std::ofstream(dir / "train.ini") << "epochs = 10\ndim = 8\nseed = 7\n";

  // File value applies when the flag is absent…
  REQUIRE(run_cli("--config " + q(dir / "train.ini") + " train --dataset " + q(ds) +
                  " --model " + q(dir / "mf.bin") + " --loss-csv " + q(dir / "lf.csv"))
              .code == 0);
  CHECK(line_count(dir / "lf.csv") == 12);

  // …and the flag wins when both are given.
  REQUIRE(run_cli("--config " + q(dir / "train.ini") + " train --dataset " + q(ds) +
                  " --model " + q(dir / "mo.bin") + " --epochs 20 --loss-csv " +
                  q(dir / "lo.csv"))
              .code == 0);
  CHECK(line_count(dir / "lo.csv") == 22);

  // AGSGR_CONFIG is the fallback when no --config flag is present.
  REQUIRE(std::system(("AGSGR_CONFIG='" + (dir / "train.ini").string() + "' " + kCli +
                       " train --dataset '" + ds.string() + "' --model '" +
                       (dir / "me.bin").string() + "' --loss-csv '" + (dir / "le.csv").string() +
                       "' > /dev/null 2>&1")
                          .c_str()) == 0);
  CHECK(line_count(dir / "le.csv") == 12);

  std::ofstream(dir / "bad.ini") << "no_such_key = 1\n";
  CHECK(run_cli("--config " + q(dir / "bad.ini") + " train --dataset " + q(ds)).code == 2);
  std::ofstream(dir / "junk.ini") << "epochs ten\n";
  CHECK(run_cli("--config " + q(dir / "junk.ini") + " train --dataset " + q(ds)).code == 2);
  CHECK(run_cli("--config " + q(dir / "absent.ini") + " train --dataset " + q(ds)).code == 3);
}

TEST_CASE("oracle-check exercises the suites and flags injected faults") {
  const fs::path dir = scratch() / "oracle";
  fs::create_directories(dir);

  CliResult ok = run_cli("oracle-check --trials 2 --seed 1 --replay-dir " + q(dir / "replay"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("[PASS]") != std::string::npos);
  CHECK(ok.out.find("[FAIL]") == std::string::npos);

  CliResult bad = run_cli("oracle-check --trials 5 --seed 1 --inject-fault --replay-dir " +
                          q(dir / "replay_fault"));
  CHECK(bad.code == 7);
  CHECK(bad.out.find("[FAIL]") != std::string::npos);
}
