#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agsgr/attention.hpp"
#include "agsgr/ingest.hpp"

namespace agsgr {

// Share of `rec` found in `truth` (unordered); 0 when rec is empty.
double overlap_precision(std::span<const UserId> rec, std::span<const UserId> truth);
double overlap_precision_poi(std::span<const PoiId> rec, std::span<const PoiId> truth);

// DCG / MaxDCG with DCG = rel_1 + sum_{i>=2} rel_i / log2(i) — note the
// undiscounted second position.  All-zero relevance yields 0.
double ndcg_at_k(std::span<const int> rel, std::size_t k);

struct EvalConfig {
  std::size_t n_targets = 100;
  std::uint64_t seed = 0;
  int k_min = 1, k_max = 5;
  int h_min = 2, h_max = 10;
  std::vector<int> top_k_values{5};
  std::size_t group_cap = 10'000;
  int threads = 1;
};

struct MetricCell {
  int k = 0, h = 0, top_k = 0;
  std::string metric;  // pre_at_h | pre_at_k | ndcg_at_k
  double value = 0;
  std::size_t n = 0;  // targets contributing
};

struct MetricReport {
  std::vector<MetricCell> cells;
  std::size_t sampled_targets = 0;
  std::size_t failed_targets = 0;  // pipeline errors, excluded from means
  std::uint64_t seed = 0;
};

// Runs the full pipeline over a seeded sample of truth-bearing target users
// for every grid cell (k, h, K) with h >= k+1, and averages Pre@h, Pre@K and
// nDCG@K.  Empty recommendations count as zero; targets that error out are
// excluded and counted in failed_targets.
MetricReport run_experiment(const Dataset& ds, const AttentionModel& model,
                            const EvalConfig& cfg);

// CSV `k,h,K,metric,value,n`.
void write_report_csv(const std::filesystem::path& path, const MetricReport& report);
std::string format_report(const MetricReport& report);

}  // namespace agsgr
