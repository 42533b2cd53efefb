#include "agsgr/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "agsgr/errors.hpp"
#include "agsgr/pipeline.hpp"
#include "agsgr/rng.hpp"

namespace agsgr {

namespace {

template <typename T>
double overlap_impl(std::span<const T> rec, std::span<const T> truth) {
  if (rec.empty()) return 0.0;
  std::set<T> truth_set(truth.begin(), truth.end());
  std::size_t hits = 0;
  for (const T& r : rec) hits += truth_set.count(r);
  return static_cast<double>(hits) / static_cast<double>(rec.size());
}

}  // namespace

double overlap_precision(std::span<const UserId> rec, std::span<const UserId> truth) {
  return overlap_impl(rec, truth);
}

double overlap_precision_poi(std::span<const PoiId> rec, std::span<const PoiId> truth) {
  return overlap_impl(rec, truth);
}

double ndcg_at_k(std::span<const int> rel, std::size_t k) {
  const std::size_t n = std::min(rel.size(), k);
  double dcg = 0;
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rel[i] != 0) {
      dcg += i == 0 ? 1.0 : 1.0 / std::log2(static_cast<double>(i + 1));
      ++ones;
    }
  }
  if (ones == 0) return 0.0;
  double max_dcg = 0;
  for (std::size_t i = 0; i < ones; ++i)
    max_dcg += i == 0 ? 1.0 : 1.0 / std::log2(static_cast<double>(i + 1));
  return dcg / max_dcg;
}

namespace {

struct TargetTruth {
  UserId target;
  std::vector<UserId> truth_group;  // members of the test event nearest the split boundary
  std::vector<PoiId> truth_pois;    // POIs of all the target's test events
};

// Users with at least one test event, each with their truth group/locations.
// Test events are time-sorted, so the first event seen per user is the one
// closest to the split boundary — that group becomes the truth group.
std::vector<TargetTruth> collect_truths(const Dataset& ds) {
  std::map<UserId, TargetTruth> by_user;
  for (const GroupEvent& ev : ds.split.test) {
    for (UserId u : ev.members) {
      auto it = by_user.try_emplace(u, TargetTruth{u, ev.members, {}}).first;
      it->second.truth_pois.push_back(ev.poi);
    }
  }
  std::vector<TargetTruth> out;
  out.reserve(by_user.size());
  for (auto& [u, t] : by_user) {
    std::sort(t.truth_pois.begin(), t.truth_pois.end());
    t.truth_pois.erase(std::unique(t.truth_pois.begin(), t.truth_pois.end()),
                       t.truth_pois.end());
    out.push_back(std::move(t));
  }
  return out;
}

struct TargetOutcome {
  bool failed = false;
  bool counted = false;
  double pre_h = 0, pre_k = 0, ndcg = 0;
};

}  // namespace

MetricReport run_experiment(const Dataset& ds, const AttentionModel& model,
                            const EvalConfig& cfg) {
  if (cfg.n_targets == 0) throw FormatError("evaluation: n_targets must be >= 1");

  MetricReport report;
  report.seed = cfg.seed;

  std::vector<TargetTruth> truths = collect_truths(ds);
  std::mt19937_64 rng(seed_for(cfg.seed, "eval.targets"));
  std::shuffle(truths.begin(), truths.end(), rng);
  if (truths.size() > cfg.n_targets) truths.resize(cfg.n_targets);
  std::sort(truths.begin(), truths.end(),
            [](const TargetTruth& a, const TargetTruth& b) { return a.target < b.target; });
  report.sampled_targets = truths.size();

  Pipeline pipeline(ds, model);

  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    for (int h = std::max(cfg.h_min, k + 1); h <= cfg.h_max; ++h) {
      for (int top_k : cfg.top_k_values) {
        std::vector<TargetOutcome> outcomes(truths.size());
        auto eval_target = [&](std::size_t i) {
          const TargetTruth& t = truths[i];
          Query q;
          q.target = t.target;
          q.group_size = h;
          q.core = k;
          q.top_k = top_k;
          q.group_cap = cfg.group_cap;
          TargetOutcome& out = outcomes[i];
          try {
            Recommendation rec = pipeline.recommend(q);
            out.counted = true;
            out.pre_h = overlap_precision(rec.group, t.truth_group);
            std::vector<PoiId> rec_pois;
            std::vector<int> rel;
            rec_pois.reserve(rec.locations.size());
            for (const RankedLocation& loc : rec.locations) {
              rec_pois.push_back(loc.poi);
              rel.push_back(std::binary_search(t.truth_pois.begin(), t.truth_pois.end(), loc.poi)
                                ? 1
                                : 0);
            }
            out.pre_k = overlap_precision_poi(rec_pois, t.truth_pois);
            out.ndcg = ndcg_at_k(rel, static_cast<std::size_t>(top_k));
          } catch (const EmptyResult&) {
            out.counted = true;  // empty recommendation counts as zero
          } catch (const NoTopic&) {
            out.counted = true;
          } catch (const Error&) {
            out.failed = true;
          }
        };

        const int threads = std::max(1, cfg.threads);
        if (threads == 1 || truths.size() < 2) {
          for (std::size_t i = 0; i < truths.size(); ++i) eval_target(i);
        } else {
          std::vector<std::thread> workers;
          std::atomic<std::size_t> next{0};
          for (int w = 0; w < threads; ++w)
            workers.emplace_back([&] {
              for (std::size_t i = next.fetch_add(1); i < truths.size(); i = next.fetch_add(1))
                eval_target(i);
            });
          for (auto& w : workers) w.join();
        }

        double sum_h = 0, sum_k = 0, sum_n = 0;
        std::size_t n = 0, failed = 0;
        for (const TargetOutcome& out : outcomes) {
          if (out.failed) {
            ++failed;
            continue;
          }
          if (!out.counted) continue;
          sum_h += out.pre_h;
          sum_k += out.pre_k;
          sum_n += out.ndcg;
          ++n;
        }
        report.failed_targets += failed;
        if (n == 0) continue;  // undefined: reported as absent
        const double dn = static_cast<double>(n);
        report.cells.push_back({k, h, top_k, "pre_at_h", sum_h / dn, n});
        report.cells.push_back({k, h, top_k, "pre_at_k", sum_k / dn, n});
        report.cells.push_back({k, h, top_k, "ndcg_at_k", sum_n / dn, n});
      }
    }
  }
  return report;
}

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

void write_report_csv(const std::filesystem::path& path, const MetricReport& report) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "k,h,K,metric,value,n\n";
  for (const MetricCell& c : report.cells)
    os << c.k << ',' << c.h << ',' << c.top_k << ',' << c.metric << ',' << format_value(c.value)
       << ',' << c.n << '\n';
  if (!os) throw IoError("failed writing " + path.string());
}

std::string format_report(const MetricReport& report) {
  std::string out;
  out += "targets sampled: " + std::to_string(report.sampled_targets) +
         ", failed: " + std::to_string(report.failed_targets) + "\n";
  out += "   k   h   K  metric      value       n\n";
  char line[128];
  for (const MetricCell& c : report.cells) {
    std::snprintf(line, sizeof(line), "%4d%4d%4d  %-10s  %.6f%8zu\n", c.k, c.h, c.top_k,
                  c.metric.c_str(), c.value, c.n);
    out += line;
  }
  return out;
}

}  // namespace agsgr
