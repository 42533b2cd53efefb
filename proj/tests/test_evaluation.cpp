#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <vector>

#include "agsgr/errors.hpp"
#include "agsgr/evaluation.hpp"
#include "agsgr/pipeline.hpp"
#include "agsgr/synth.hpp"

using namespace agsgr;

namespace {

// Straight transcription of the metric definition, kept deliberately naive:
// truncate, apply the 1-based discount, divide by the ideal ordering's DCG.
double direct_ndcg(std::vector<int> rel, std::size_t k) {
  if (rel.size() > k) rel.resize(k);
  auto dcg = [](const std::vector<int>& r) {
    double s = 0;
    for (std::size_t p = 1; p <= r.size(); ++p)
      s += (p == 1) ? r[p - 1] : r[p - 1] / std::log2(static_cast<double>(p));
    return s;
  };
  std::vector<int> ideal = rel;
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double max_dcg = dcg(ideal);
  return max_dcg == 0.0 ? 0.0 : dcg(rel) / max_dcg;
}

}  // namespace

TEST_CASE("overlap precision") {
  const std::vector<UserId> rec{1, 2, 3}, truth{2, 3, 4};
  CHECK(overlap_precision(rec, truth) == doctest::Approx(2.0 / 3.0));
  CHECK(overlap_precision({}, truth) == 0.0);
  CHECK(overlap_precision(rec, {}) == 0.0);
  CHECK(overlap_precision(rec, rec) == 1.0);

  const std::vector<PoiId> prec{10, 20}, ptruth{20};
  CHECK(overlap_precision_poi(prec, ptruth) == doctest::Approx(0.5));
}

TEST_CASE("ndcg hand values") {
  const std::vector<int> mixed{0, 1, 0, 0, 1};
  CHECK(ndcg_at_k(mixed, 5) == 0.71533827903669653);

  CHECK(ndcg_at_k(std::vector<int>{1, 1, 1}, 3) == doctest::Approx(1.0));
  CHECK(ndcg_at_k(std::vector<int>{0, 0, 0}, 3) == 0.0);
  CHECK(ndcg_at_k(std::vector<int>{}, 5) == 0.0);

  // Truncation: only the first k positions participate, ideal included.
  const std::vector<int> tail{1, 0, 0, 1};
  CHECK(ndcg_at_k(tail, 2) == doctest::Approx(1.0));
  CHECK(ndcg_at_k(tail, 4) == doctest::Approx(0.75));
}

TEST_CASE("ndcg agrees with a direct transcription on random vectors") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    std::uniform_int_distribution<std::size_t> len_d(1, 20);
    const std::size_t len = len_d(rng);
    std::uniform_int_distribution<std::size_t> k_d(1, len + 3);
    const std::size_t k = k_d(rng);
    std::bernoulli_distribution hit(0.3);
    std::vector<int> rel(len);
    for (int& r : rel) r = hit(rng) ? 1 : 0;
    CHECK(ndcg_at_k(rel, k) == direct_ndcg(rel, k));
  }
}

TEST_CASE("experiment over the planted world") {
  synth::PlantedInstance inst = synth::make_planted(31337);
  TrainConfig tc;
  tc.epochs = 120;
  tc.dim = 16;
  tc.seed = 31337;
  TrainOutput trained = train_on_dataset(inst.dataset, tc);

  EvalConfig cfg;
  cfg.n_targets = 6;
  cfg.seed = 5;
  cfg.k_min = 2;
  cfg.k_max = 3;
  cfg.h_min = 3;
  cfg.h_max = 5;
  cfg.top_k_values = {3};

  MetricReport report = run_experiment(inst.dataset, trained.model, cfg);
  CHECK(report.sampled_targets > 0);
  CHECK(report.sampled_targets <= cfg.n_targets);
  REQUIRE(!report.cells.empty());

  std::set<std::string> metrics;
  for (const MetricCell& cell : report.cells) {
    metrics.insert(cell.metric);
    CHECK(cell.value >= 0.0);
    CHECK(cell.value <= 1.0);
    CHECK(cell.n <= report.sampled_targets);
    CHECK(cell.k >= cfg.k_min);
    CHECK(cell.k <= cfg.k_max);
    CHECK(cell.h >= cell.k + 1);  // grid never emits h <= k
  }
  CHECK(metrics == std::set<std::string>{"ndcg_at_k", "pre_at_h", "pre_at_k"});

  // Reruns and thread counts must not change the report.
  MetricReport again = run_experiment(inst.dataset, trained.model, cfg);
  EvalConfig par = cfg;
  par.threads = 4;
  MetricReport threaded = run_experiment(inst.dataset, trained.model, par);
  REQUIRE(again.cells.size() == report.cells.size());
  REQUIRE(threaded.cells.size() == report.cells.size());
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    CHECK(again.cells[i].value == report.cells[i].value);
    CHECK(threaded.cells[i].value == report.cells[i].value);
    CHECK(threaded.cells[i].n == report.cells[i].n);
  }

  // CSV output is stable byte for byte.
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "agsgr_eval_csv";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_report_csv(dir / "a.csv", report);
  write_report_csv(dir / "b.csv", report);
  std::ifstream a(dir / "a.csv"), b(dir / "b.csv");
  std::string abytes((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string bbytes((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(!abytes.empty());
  CHECK(abytes == bbytes);
  CHECK(abytes.rfind("k,h,K,metric,value,n", 0) == 0);
  fs::remove_all(dir);

  const std::string text = format_report(report);
  CHECK(text.find("pre_at_h") != std::string::npos);
  CHECK(text.find("ndcg_at_k") != std::string::npos);

  EvalConfig zero = cfg;
  zero.n_targets = 0;
  CHECK_THROWS_AS(run_experiment(inst.dataset, trained.model, zero), FormatError);
}
