#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace agsgr::suites {

struct SuiteOptions {
  std::size_t trials = 0;            // 0 = suite default
  std::uint64_t seed = 0;            // root seed; trials derive from it
  double fault_slack = 0.0;          // >0 makes ANN pruning deliberately unsafe
  std::filesystem::path replay_dir;  // when set, the first failing instance is dumped here
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t allowed_failures = 0;  // planted recovery tolerates a small miss budget
  double seconds = 0;
  std::string detail;  // first failure / replay pointer / extra context

  bool passed() const { return failures <= allowed_failures; }
};

// Randomized equivalence and property suites.  Each generates its own
// instances from the root seed, compares against an independent reference,
// and reports the first divergence.
SuiteResult run_core_suite(const SuiteOptions& opt);         // vs brute-force peeling
SuiteResult run_enumeration_suite(const SuiteOptions& opt);  // vs exhaustive subsets
SuiteResult run_mec_suite(const SuiteOptions& opt);          // vs pair/triple circles
SuiteResult run_ann_suite(const SuiteOptions& opt);          // vs linear scan
SuiteResult run_pruning_suite(const SuiteOptions& opt);      // skipped subtrees never hold answers
SuiteResult run_gradient_suite(const SuiteOptions& opt);     // vs central finite differences
SuiteResult run_softmax_suite(const SuiteOptions& opt);      // normalization + shift invariance
SuiteResult run_metric_suite(const SuiteOptions& opt);       // nDCG/precision unit checks
SuiteResult run_planted_suite(const SuiteOptions& opt);      // end-to-end recovery

// The suites `oracle-check` runs (core, enumeration, MEC, ANN, pruning).
std::vector<SuiteResult> run_oracle_suites(const SuiteOptions& opt);

std::string format_suite(const SuiteResult& r);

}  // namespace agsgr::suites
