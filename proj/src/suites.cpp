#include "agsgr/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "agsgr/attention.hpp"
#include "agsgr/errors.hpp"
#include "agsgr/evaluation.hpp"
#include "agsgr/geometry.hpp"
#include "agsgr/group_search.hpp"
#include "agsgr/oracles.hpp"
#include "agsgr/pipeline.hpp"
#include "agsgr/rng.hpp"
#include "agsgr/spatial_index.hpp"
#include "agsgr/synth.hpp"

namespace agsgr::suites {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string dump_replay(const SuiteOptions& opt, const std::string& suite, std::size_t trial,
                        const std::string& body) {
  if (opt.replay_dir.empty()) return {};
  std::error_code ec;
  std::filesystem::create_directories(opt.replay_dir, ec);
  const auto path = opt.replay_dir / (suite + "_trial" + std::to_string(trial) + ".txt");
  std::ofstream os(path, std::ios::trunc);
  if (!os) return {};
  os << "suite: " << suite << "\ntrial: " << trial << "\nroot_seed: " << opt.seed << "\n" << body;
  return "; replay: " + path.string();
}

void note_failure(SuiteResult& r, const SuiteOptions& opt, std::size_t trial,
                  const std::string& msg, const std::string& replay_body) {
  ++r.failures;
  if (r.detail.empty())
    r.detail =
        "trial " + std::to_string(trial) + ": " + msg + dump_replay(opt, r.name, trial, replay_body);
}

std::string graph_text(const SocialGraph& g) {
  std::ostringstream os;
  os << "users: " << g.user_count() << "\nedges:\n";
  for (std::uint32_t i = 0; i < g.user_count(); ++i)
    for (std::uint32_t j : g.neighbors(i))
      if (i < j) os << g.id_of(i) << ',' << g.id_of(j) << '\n';
  return os.str();
}

std::string points_text(std::span<const PlanarPoint> pts) {
  std::ostringstream os;
  os.precision(17);
  os << "points:\n";
  for (const PlanarPoint& p : pts) os << p.x << ',' << p.y << '\n';
  return os.str();
}

}  // namespace

SuiteResult run_core_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "core-oracle";
  r.trials = opt.trials ? opt.trials : 1000;
  Timer t;
  for (std::size_t i = 0; i < r.trials; ++i) {
    std::mt19937_64 rng(seed_for(opt.seed, "suite.core", i));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
    const double p = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
    SocialGraph g = synth::random_graph(rng, n, p);
    CoreNumbers fast = core_decomposition(g);
    auto slow = oracles::brute_force_core_numbers(g);
    if (fast.core != slow)
      note_failure(r, opt, i, "core numbers diverge (n=" + std::to_string(n) + ")", graph_text(g));
  }
  r.seconds = t.seconds();
  return r;
}

SuiteResult run_enumeration_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "group-enumeration";
  r.trials = opt.trials ? opt.trials : 200;
  Timer t;
  for (std::size_t i = 0; i < r.trials; ++i) {
    std::mt19937_64 rng(seed_for(opt.seed, "suite.enum", i));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 12)(rng);
    const double p = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
    SocialGraph g = synth::random_graph(rng, n, p);
    const auto target =
        static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    CoreNumbers cores = core_decomposition(g);

    bool trial_bad = false;
    for (std::uint32_t k = 1; k <= 3 && !trial_bad; ++k) {
      for (std::uint32_t h = k + 1; h <= 6 && !trial_bad; ++h) {
        for (bool friends_only : {true, false}) {
          auto expected = oracles::exhaustive_valid_groups(g, target, k, h, friends_only);

          std::vector<std::vector<UserId>> got;
          if (cores.of(target) >= k) {
            NodeSet sub = k_core_subgraph(g, k, cores);
            for (auto& comp : connected_components(g, sub)) {
              if (!std::binary_search(comp.begin(), comp.end(), target)) continue;
              NodeSet component;
              component.mask.assign(g.user_count(), 0);
              for (std::uint32_t v : comp) component.mask[v] = 1;
              component.nodes = std::move(comp);
              Query q;
              q.target = g.id_of(target);
              q.group_size = static_cast<int>(h);
              q.core = static_cast<int>(k);
              q.top_k = 1;
              q.friend_constraint = friends_only;
              q.group_cap = SIZE_MAX;
              CandidatePool pool = get_candidate_groups(g, component, target, q);
              for (CandidateGroup& cg : pool.groups) got.push_back(std::move(cg.members));
              break;
            }
          }
          std::sort(got.begin(), got.end());

          if (got != expected) {
            std::ostringstream msg;
            msg << "enumeration diverges at k=" << k << " h=" << h
                << (friends_only ? "" : " (friendship relaxed)") << ": got " << got.size()
                << " groups, expected " << expected.size();
            note_failure(r, opt, i, msg.str(),
                         graph_text(g) + "target: " + std::to_string(g.id_of(target)) + "\n");
            trial_bad = true;
            break;
          }
        }
      }
    }
  }
  r.seconds = t.seconds();
  return r;
}

SuiteResult run_mec_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "mec-oracle";
  r.trials = opt.trials ? opt.trials : 200;
  Timer t;
  for (std::size_t i = 0; i < r.trials; ++i) {
    std::mt19937_64 rng(seed_for(opt.seed, "suite.mec", i));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
    const int mode = static_cast<int>(i % 4);

    std::vector<PlanarPoint> pts;
    if (mode == 2 && n >= 2) {
      // Collinear: the degenerate case the circumcircle construction must dodge.
      auto base = synth::random_points(rng, 2, 10'000.0);
      std::uniform_real_distribution<double> along(-1.0, 1.0);
      pts.reserve(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double s = along(rng);
        pts.push_back({base[0].x + s * base[1].x, base[0].y + s * base[1].y});
      }
    } else if (mode == 3 && n >= 2) {
      auto distinct = synth::random_points(rng, std::max<std::size_t>(1, n / 3), 10'000.0);
      for (std::size_t j = 0; j < n; ++j) pts.push_back(distinct[j % distinct.size()]);
    } else {
      pts = synth::random_points(rng, n, 10'000.0);
    }

    Circle got = minimum_enclosing_circle(pts);
    Circle want = oracles::brute_force_mec(pts);
    bool ok = std::abs(got.radius - want.radius) <= 1e-6;
    for (const PlanarPoint& p : pts) ok = ok && got.contains(p, 1e-6);
    if (!ok) {
      char msg[128];
      std::snprintf(msg, sizeof(msg), "radius %.9f vs oracle %.9f", got.radius, want.radius);
      note_failure(r, opt, i, msg, points_text(pts));
    }
  }
  r.seconds = t.seconds();
  return r;
}

namespace {

struct AnnInstance {
  std::vector<PoiEntry> pois;
  std::vector<PlanarPoint> members;
  std::size_t k = 0;
};

AnnInstance make_ann_instance(std::uint64_t root, std::size_t trial) {
  std::mt19937_64 rng(seed_for(root, "suite.ann", trial));
  AnnInstance inst;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5000)(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
  inst.k = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
  inst.pois = synth::random_pois(rng, n, 25'000.0);
  inst.members = synth::random_points(rng, m, 25'000.0);
  return inst;
}

std::string ann_text(const AnnInstance& inst) {
  std::ostringstream os;
  os.precision(17);
  os << "k: " << inst.k << "\nmembers:\n";
  for (const PlanarPoint& p : inst.members) os << p.x << ',' << p.y << '\n';
  os << "pois:\n";
  for (const PoiEntry& e : inst.pois) os << e.id << ',' << e.loc.x << ',' << e.loc.y << '\n';
  return os.str();
}

}  // namespace

SuiteResult run_ann_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "ann-oracle";
  r.trials = opt.trials ? opt.trials : 500;
  Timer t;
  for (std::size_t i = 0; i < r.trials; ++i) {
    AnnInstance inst = make_ann_instance(opt.seed, i);
    SpatialIndex index = SpatialIndex::build(inst.pois);
    AnnResult got = spa_df(index, inst.members, inst.k, nullptr, opt.fault_slack);
    AnnResult want = brute_force_ann(inst.pois, inst.members, inst.k);

    bool ok = got.size() == want.size();
    for (std::size_t j = 0; ok && j < got.size(); ++j)
      ok = got[j].poi == want[j].poi && std::abs(got[j].adist - want[j].adist) <= 1e-6;
    if (!ok)
      note_failure(r, opt, i,
                   "top-" + std::to_string(inst.k) + " list diverges from the linear scan",
                   ann_text(inst));
  }
  r.seconds = t.seconds();
  return r;
}

SuiteResult run_pruning_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "prune-safety";
  r.trials = opt.trials ? opt.trials : 500;
  Timer t;
  for (std::size_t i = 0; i < r.trials; ++i) {
    AnnInstance inst = make_ann_instance(opt.seed, i);
    SpatialIndex index = SpatialIndex::build(inst.pois);
    SearchStats stats;
    AnnResult got = spa_df(index, inst.members, inst.k, &stats, opt.fault_slack);
    if (got.size() < inst.k) continue;  // heap never filled: nothing was pruned

    const double kth = got.back().adist;
    for (std::uint32_t node : stats.pruned_nodes) {
      for (const PoiEntry& e : index.collect_entries(node)) {
        if (adist(e.loc, inst.members) < kth) {
          char msg[160];
          std::snprintf(msg, sizeof(msg),
                        "pruned subtree holds poi %lld with adist %.6f < kth best %.6f",
                        static_cast<long long>(e.id), adist(e.loc, inst.members), kth);
          note_failure(r, opt, i, msg, ann_text(inst));
          break;
        }
      }
      if (!r.detail.empty() && r.failures > 0) break;
    }
  }
  r.seconds = t.seconds();
  return r;
}

namespace {

double& flat_param(AttentionModel& m, std::size_t i) {
  const std::size_t nu = m.user_vecs.size(), nt = m.topic_vecs.size();
  if (i < nu) return m.user_vecs[i];
  if (i < nu + nt) return m.topic_vecs[i - nu];
  return i == nu + nt ? m.w : m.c;
}

double flat_grad(const Gradients& g, std::size_t i) {
  const std::size_t nu = g.user_vecs.size(), nt = g.topic_vecs.size();
  if (i < nu) return g.user_vecs[i];
  if (i < nu + nt) return g.topic_vecs[i - nu];
  return i == nu + nt ? g.w : g.c;
}

}  // namespace

SuiteResult run_gradient_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "gradient-check";
  r.trials = opt.trials ? opt.trials : 50;
  Timer t;
  constexpr double kH = 1e-5;
  for (std::size_t i = 0; i < r.trials; ++i) {
    std::mt19937_64 rng(seed_for(opt.seed, "suite.grad", i));
    const std::size_t n_users = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
    const std::size_t n_topics = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
    const auto dim = static_cast<std::uint32_t>(std::uniform_int_distribution<int>(2, 4)(rng));

    std::vector<UserId> uids(n_users);
    for (std::size_t u = 0; u < n_users; ++u) uids[u] = static_cast<UserId>(u);
    std::vector<TopicId> tids(n_topics);
    for (std::size_t v = 0; v < n_topics; ++v) tids[v] = static_cast<TopicId>(v);
    AttentionModel model = AttentionModel::init(uids, tids, dim, rng());
    model.w = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
    model.c = std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
    model.lambda =
        i % 3 == 0 ? 0.0 : std::uniform_real_distribution<double>(0.001, 0.1)(rng);

    TrainingSet ts;
    const std::size_t n_pools = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t pi = 0; pi < n_pools; ++pi) {
      TrainingPool pool;
      pool.target = static_cast<UserId>(
          std::uniform_int_distribution<std::size_t>(0, n_users - 1)(rng));
      const std::size_t n_groups = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      for (std::size_t gi = 0; gi < n_groups; ++gi) {
        TrainingGroup tg;
        const std::size_t sz = std::uniform_int_distribution<std::size_t>(2, n_users + 1)(rng);
        tg.members.push_back(pool.target);
        for (std::size_t s = 1; s < sz; ++s)
          tg.members.push_back(static_cast<UserId>(1000 + s));  // distinct from real users
        tg.sigma.resize(sz - 1);
        for (double& v : tg.sigma) v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        pool.groups.push_back(std::move(tg));
      }
      const std::size_t n_pairs = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      for (std::size_t q = 0; q < n_pairs; ++q) {
        TrainingPair pr;
        pr.pool = static_cast<std::uint32_t>(pi);
        pr.group = static_cast<std::uint32_t>(
            std::uniform_int_distribution<std::size_t>(0, pool.groups.size() - 1)(rng));
        pr.pos = static_cast<TopicId>(
            std::uniform_int_distribution<std::size_t>(0, n_topics - 1)(rng));
        do {
          pr.neg = static_cast<TopicId>(
              std::uniform_int_distribution<std::size_t>(0, n_topics - 1)(rng));
        } while (pr.neg == pr.pos);
        ts.pairs.push_back(pr);
      }
      ts.pools.push_back(std::move(pool));
    }

    Gradients grad;
    abpr_loss_and_grad(model, ts, grad);

    double max_rel = 0;
    for (std::size_t pidx = 0; pidx < model.param_count(); ++pidx) {
      AttentionModel up = model, down = model;
      flat_param(up, pidx) += kH;
      flat_param(down, pidx) -= kH;
      const double fd = (abpr_loss(up, ts) - abpr_loss(down, ts)) / (2 * kH);
      const double a = flat_grad(grad, pidx);
      const double rel = std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-6});
      max_rel = std::max(max_rel, rel);
    }
    if (max_rel >= 1e-4) {
      char msg[96];
      std::snprintf(msg, sizeof(msg), "max relative gradient error %.3e", max_rel);
      note_failure(r, opt, i, msg,
                   "users: " + std::to_string(n_users) + "\ntopics: " + std::to_string(n_topics) +
                       "\ndim: " + std::to_string(dim) + "\n");
    }
  }
  r.seconds = t.seconds();
  return r;
}

SuiteResult run_softmax_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "softmax-props";
  r.trials = opt.trials ? opt.trials : 100;
  Timer t;
  for (std::size_t i = 0; i < r.trials; ++i) {
    std::mt19937_64 rng(seed_for(opt.seed, "suite.softmax", i));
    const std::size_t n_users = std::uniform_int_distribution<std::size_t>(3, 8)(rng);
    const std::size_t n_topics = std::uniform_int_distribution<std::size_t>(2, 5)(rng);

    std::unordered_map<PoiId, TopicId> poi_topics;
    for (std::size_t v = 0; v < n_topics; ++v)
      poi_topics[static_cast<PoiId>(v)] = static_cast<TopicId>(v);
    std::vector<CheckIn> checkins;
    for (std::size_t u = 0; u < n_users; ++u) {
      const std::size_t visits = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
      for (std::size_t v = 0; v < visits; ++v)
        checkins.push_back({static_cast<UserId>(u),
                            static_cast<PoiId>(std::uniform_int_distribution<std::size_t>(
                                0, n_topics - 1)(rng)),
                            static_cast<std::int64_t>(v)});
    }
    PreferenceTable prefs = PreferenceTable::build(checkins, poi_topics, n_topics);

    std::vector<UserId> uids(n_users);
    for (std::size_t u = 0; u < n_users; ++u) uids[u] = static_cast<UserId>(u);
    std::vector<TopicId> tids(n_topics);
    for (std::size_t v = 0; v < n_topics; ++v) tids[v] = static_cast<TopicId>(v);
    AttentionModel model = AttentionModel::init(uids, tids, 4, rng());
    model.w = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
    model.c = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);

    CandidatePool pool;
    const std::size_t n_groups = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    for (std::size_t gi = 0; gi < n_groups; ++gi) {
      CandidateGroup cg;
      const std::size_t sz =
          std::uniform_int_distribution<std::size_t>(2, std::min<std::size_t>(5, n_users))(rng);
      std::vector<UserId> others;
      for (std::size_t u = 1; u < n_users; ++u) others.push_back(static_cast<UserId>(u));
      for (std::size_t s = 0; s + 1 < sz; ++s) {
        std::uniform_int_distribution<std::size_t> pick(s, others.size() - 1);
        std::swap(others[s], others[pick(rng)]);
      }
      cg.members.assign(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(sz - 1));
      cg.members.push_back(0);
      std::sort(cg.members.begin(), cg.members.end());
      pool.groups.push_back(std::move(cg));
    }

    AttentionWeights w1 = attention_scores(pool, 0, model, prefs);
    double total = 0;
    bool in_range = true;  // (0, 1]; exactly 1 when only one member is scorable
    for (const auto& row : w1.normalized)
      for (double a : row) {
        total += a;
        in_range = in_range && a > 0.0 && a <= 1.0;
      }
    if (std::abs(total - 1.0) > 1e-9 || !in_range) {
      char msg[96];
      std::snprintf(msg, sizeof(msg), "weights %s, sum %.12f",
                    in_range ? "in range" : "out of range", total);
      note_failure(r, opt, i, msg, "");
      continue;
    }

    AttentionModel shifted = model;
    shifted.c += std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
    AttentionWeights w2 = attention_scores(pool, 0, shifted, prefs);
    if (select_group(w1) != select_group(w2))
      note_failure(r, opt, i, "argmax moved after shifting every raw score", "");
  }
  r.seconds = t.seconds();
  return r;
}

SuiteResult run_metric_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "metric-units";
  r.trials = opt.trials ? opt.trials : 1000;
  Timer t;

  // The same formula evaluated independently: 1-based positions, rel_1
  // undiscounted, rel_p / log2(p) afterwards, ideal = descending reorder.
  auto direct_ndcg = [](std::vector<int> rel, std::size_t k) {
    if (rel.size() > k) rel.resize(k);
    auto dcg_of = [](const std::vector<int>& v) {
      double s = 0;
      for (std::size_t p = 1; p <= v.size(); ++p)
        if (v[p - 1] != 0) s += p == 1 ? 1.0 : 1.0 / std::log2(static_cast<double>(p));
      return s;
    };
    const double dcg = dcg_of(rel);
    std::sort(rel.begin(), rel.end(), std::greater<int>());
    const double max_dcg = dcg_of(rel);
    return max_dcg == 0 ? 0.0 : dcg / max_dcg;
  };

  for (std::size_t i = 0; i < r.trials; ++i) {
    std::mt19937_64 rng(seed_for(opt.seed, "suite.metric", i));
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, len + 3)(rng);
    std::vector<int> rel(len);
    std::bernoulli_distribution one(0.3);
    for (int& v : rel) v = one(rng) ? 1 : 0;
    const double got = ndcg_at_k(rel, k);
    const double want = direct_ndcg(rel, k);
    if (got != want) {
      char msg[96];
      std::snprintf(msg, sizeof(msg), "ndcg %.17g != direct %.17g", got, want);
      note_failure(r, opt, i, msg, "");
    }
  }

  // Frozen asymmetric case, worked out by hand from the formula.
  {
    const std::vector<int> rel{0, 1, 0, 0, 1};
    if (ndcg_at_k(rel, 5) != 0.71533827903669653)
      note_failure(r, opt, r.trials, "frozen ndcg fixture diverges", "");
  }

  // Hand-computed precision fixtures.
  struct Fixture {
    std::vector<UserId> rec, truth;
    double want;
  };
  const Fixture fixtures[] = {
      {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}, 1.0},
      {{1, 2, 3, 4, 5}, {6, 7}, 0.0},
      {{1, 2, 3, 4, 5}, {1, 2, 3}, 3.0 / 5.0},
      {{1, 2}, {2}, 1.0 / 2.0},
      {{}, {1}, 0.0},
      {{7}, {7}, 1.0},
      {{1, 2, 3, 4}, {2, 4, 6, 8}, 2.0 / 4.0},
      {{10, 20, 30}, {30}, 1.0 / 3.0},
      {{5, 6, 7, 8, 9}, {5, 9, 11, 13}, 2.0 / 5.0},
      {{1, 3, 5, 7, 9}, {2, 4, 6, 8, 10}, 0.0},
  };
  for (std::size_t f = 0; f < std::size(fixtures); ++f)
    if (overlap_precision(fixtures[f].rec, fixtures[f].truth) != fixtures[f].want)
      note_failure(r, opt, r.trials + 1 + f, "precision fixture diverges", "");

  r.seconds = t.seconds();
  return r;
}

SuiteResult run_planted_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "planted-recovery";
  r.trials = opt.trials ? opt.trials : 20;
  r.allowed_failures = r.trials / 10;
  Timer t;
  std::size_t recovered = 0;
  for (std::size_t i = 0; i < r.trials; ++i) {
    const std::uint64_t seed = seed_for(opt.seed, "suite.planted", i);
    try {
      synth::PlantedInstance inst = synth::make_planted(seed);
      TrainConfig cfg;
      cfg.seed = seed;
      TrainOutput trained = train_on_dataset(inst.dataset, cfg);
      Pipeline pipeline(inst.dataset, trained.model);

      Query q;
      q.target = inst.truth.target;
      q.group_size = 5;
      q.core = 3;
      q.top_k = 5;
      Recommendation rec = pipeline.recommend(q);

      const bool ok = rec.group == inst.truth.group && rec.topic == inst.truth.topic &&
                      !rec.locations.empty() && rec.locations.front().poi == inst.truth.poi;
      if (ok) {
        ++recovered;
      } else {
        std::ostringstream body;
        body << "instance_seed: " << seed << "\ngot group:";
        for (UserId u : rec.group) body << ' ' << u;
        body << "\ngot topic: " << rec.topic_label << "\ngot top poi: "
             << (rec.locations.empty() ? -1 : rec.locations.front().poi) << '\n';
        note_failure(r, opt, i, "planted answer not recovered", body.str());
      }
    } catch (const Error& e) {
      note_failure(r, opt, i, std::string("pipeline error: ") + e.what(),
                   "instance_seed: " + std::to_string(seed) + "\n");
    }
  }
  if (r.detail.empty())
    r.detail = std::to_string(recovered) + "/" + std::to_string(r.trials) + " recovered";
  else
    r.detail = std::to_string(recovered) + "/" + std::to_string(r.trials) + " recovered; " +
               r.detail;
  r.seconds = t.seconds();
  return r;
}

std::vector<SuiteResult> run_oracle_suites(const SuiteOptions& opt) {
  return {run_core_suite(opt), run_enumeration_suite(opt), run_mec_suite(opt),
          run_ann_suite(opt), run_pruning_suite(opt)};
}

std::string format_suite(const SuiteResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "[%s] %-17s %zu/%zu trials clean (%.2fs)%s%s",
                r.passed() ? "PASS" : "FAIL", r.name.c_str(), r.trials - r.failures, r.trials,
                r.seconds, r.detail.empty() ? "" : " — ", r.detail.c_str());
  return buf;
}

}  // namespace agsgr::suites
