// agsgr: geo-social activity recommendation pipeline.
//
// Subcommands: ingest, train, recommend, evaluate, oracle-check.
// Configuration comes from a flat `key = value` file (--config or the
// AGSGR_CONFIG env var); any CLI flag overrides the file, the file overrides
// built-in defaults.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "agsgr/attention.hpp"
#include "agsgr/errors.hpp"
#include "agsgr/evaluation.hpp"
#include "agsgr/ingest.hpp"
#include "agsgr/pipeline.hpp"
#include "agsgr/suites.hpp"

namespace {

using namespace agsgr;

struct RunConfig {
  // paths
  std::string checkins, edges, groups, poi_edges;
  std::string dataset = "dataset.bin";
  std::string model = "model.bin";
  std::string events_csv = "group_events.csv";
  std::string loss_csv = "loss.csv";
  std::string report_dir = ".";
  // ingest
  std::int64_t window = 1800;
  // query
  UserId target_user = 0;
  int group_size = 3;
  int core = 2;
  int top_k = 5;
  bool friend_constraint = true;
  std::size_t group_cap = 10'000;
  // training
  int epochs = 200;
  double lr = 1e-2;
  std::uint32_t dim = 32;
  double l2 = 0.01;
  int neg_ratio = 4;
  std::uint64_t seed = 0;
  // evaluation
  std::size_t eval_n_targets = 100;
  std::optional<std::uint64_t> eval_seed;  // defaults to `seed`
  int eval_k_min = 1, eval_k_max = 5;
  int eval_h_min = 2, eval_h_max = 10;
  std::vector<int> eval_top_k{5};
  int threads = 1;
  // oracle suites
  std::size_t oracle_trials = 0;  // 0 = per-suite default
  std::string oracle_replay_dir = "oracle_replay";
};

constexpr const char* kConfigDoc =
    "Config file keys (flat `key = value`, # comments):\n"
    "  checkins, edges, groups, poi_edges   input CSV paths\n"
    "  dataset, model                       binary artifact paths\n"
    "  events_csv, loss_csv, report_dir     output locations\n"
    "  window                               co-check-in window, seconds\n"
    "  target_user, group_size, core, top_k query parameters (u_T, h, k, K)\n"
    "  friend_constraint, group_cap         candidate enumeration controls\n"
    "  epochs, lr, dim, l2, neg_ratio, seed training hyperparameters\n"
    "  eval.n_targets, eval.seed            evaluation sample\n"
    "  eval.k_range, eval.h_range           grids, `lo:hi`\n"
    "  eval.K_range                         comma-separated K values\n"
    "  threads                              evaluation worker threads\n"
    "  oracle.trials, oracle.replay_dir     oracle-check controls\n";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void parse_range(const std::string& key, const std::string& v, int& lo, int& hi) {
  const auto colon = v.find(':');
  try {
    if (colon == std::string::npos) {
      lo = hi = std::stoi(v);
    } else {
      lo = std::stoi(v.substr(0, colon));
      hi = std::stoi(v.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw FormatError("config key " + key + ": expected `lo:hi`, got `" + v + "`");
  }
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const auto comma = v.find(',', pos);
    const std::string tok = trim(v.substr(pos, comma == std::string::npos ? comma : comma - pos));
    if (!tok.empty()) {
      try {
        out.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw FormatError("config key " + key + ": bad integer `" + tok + "`");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw FormatError("config key " + key + ": empty list");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw FormatError("config key " + key + ": expected a boolean, got `" + v + "`");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    auto num = [&](auto& field) {
      try {
        if constexpr (std::is_floating_point_v<std::remove_reference_t<decltype(field)>>)
          field = std::stod(val);
        else
          field = static_cast<std::remove_reference_t<decltype(field)>>(std::stoll(val));
      } catch (const std::exception&) {
        throw FormatError("config key " + key + ": bad number `" + val + "`");
      }
    };

    if (key == "checkins") cfg.checkins = val;
    else if (key == "edges") cfg.edges = val;
    else if (key == "groups") cfg.groups = val;
    else if (key == "poi_edges") cfg.poi_edges = val;
    else if (key == "dataset") cfg.dataset = val;
    else if (key == "model") cfg.model = val;
    else if (key == "events_csv") cfg.events_csv = val;
    else if (key == "loss_csv") cfg.loss_csv = val;
    else if (key == "report_dir") cfg.report_dir = val;
    else if (key == "window") num(cfg.window);
    else if (key == "target_user") num(cfg.target_user);
    else if (key == "group_size") num(cfg.group_size);
    else if (key == "core") num(cfg.core);
    else if (key == "top_k") num(cfg.top_k);
    else if (key == "friend_constraint") cfg.friend_constraint = parse_bool(key, val);
    else if (key == "group_cap") num(cfg.group_cap);
    else if (key == "epochs") num(cfg.epochs);
    else if (key == "lr") num(cfg.lr);
    else if (key == "dim") num(cfg.dim);
    else if (key == "l2") num(cfg.l2);
    else if (key == "neg_ratio") num(cfg.neg_ratio);
    else if (key == "seed") num(cfg.seed);
    else if (key == "eval.n_targets") num(cfg.eval_n_targets);
    else if (key == "eval.seed") { std::uint64_t s = 0; { auto& f = s; num(f); } cfg.eval_seed = s; }
    else if (key == "eval.k_range") parse_range(key, val, cfg.eval_k_min, cfg.eval_k_max);
    else if (key == "eval.h_range") parse_range(key, val, cfg.eval_h_min, cfg.eval_h_max);
    else if (key == "eval.K_range") cfg.eval_top_k = parse_int_list(key, val);
    else if (key == "threads") num(cfg.threads);
    else if (key == "oracle.trials") num(cfg.oracle_trials);
    else if (key == "oracle.replay_dir") cfg.oracle_replay_dir = val;
    else throw FormatError("unknown config key: " + key);
  }
}

int cmd_ingest(const RunConfig& cfg) {
  IngestOptions opt;
  opt.checkins = cfg.checkins;
  opt.edges = cfg.edges;
  if (!cfg.groups.empty()) opt.explicit_groups = cfg.groups;
  if (!cfg.poi_edges.empty()) opt.poi_edges = cfg.poi_edges;
  opt.window = cfg.window;

  Dataset ds = ingest_dataset(opt);
  save_dataset(cfg.dataset, ds);
  write_group_events_csv(cfg.events_csv, ds.events);

  DatasetStats st = dataset_stats(ds.network, ds.events);
  std::printf("users            %zu\n", st.users);
  std::printf("items            %zu\n", st.items);
  std::printf("group events     %zu\n", st.group_events);
  std::printf("avg group size   %.2f\n", st.avg_group_size);
  std::printf("avg friends      %.2f\n", st.avg_friends);
  std::printf("train/test       %zu/%zu\n", ds.split.train.size(), ds.split.test.size());
  std::printf("dataset          %s\n", cfg.dataset.c_str());
  return kExitOk;
}

int cmd_train(const RunConfig& cfg) {
  Dataset ds = load_dataset(cfg.dataset);
  TrainConfig tc;
  tc.epochs = cfg.epochs;
  tc.lr = cfg.lr;
  tc.dim = cfg.dim;
  tc.lambda = cfg.l2;
  tc.neg_ratio = cfg.neg_ratio;
  tc.seed = cfg.seed;

  TrainOutput out = train_on_dataset(ds, tc);
  for (std::size_t i = 0; i < out.losses.size(); ++i) {
    if (i + 1 == out.losses.size())
      std::fprintf(stderr, "final  loss %.6f\n", out.losses[i]);
    else
      std::fprintf(stderr, "epoch %4zu  loss %.6f\n", i, out.losses[i]);
  }

  std::ofstream csv(cfg.loss_csv, std::ios::trunc);
  if (!csv) throw IoError("cannot write " + cfg.loss_csv);
  csv << "epoch,loss\n";
  char buf[64];
  for (std::size_t i = 0; i < out.losses.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, out.losses[i]);
    csv << buf;
  }

  out.model.save(cfg.model);
  std::printf("model            %s\n", cfg.model.c_str());
  std::printf("loss csv         %s\n", cfg.loss_csv.c_str());
  return kExitOk;
}

int cmd_recommend(const RunConfig& cfg) {
  Dataset ds = load_dataset(cfg.dataset);
  AttentionModel model = AttentionModel::load(cfg.model);
  Pipeline pipeline(ds, model);

  Query q;
  q.target = cfg.target_user;
  q.group_size = cfg.group_size;
  q.core = cfg.core;
  q.top_k = cfg.top_k;
  q.friend_constraint = cfg.friend_constraint;
  q.group_cap = cfg.group_cap;

  Recommendation rec = pipeline.recommend(q);
  std::printf("group:");
  for (UserId u : rec.group) std::printf(" %lld", static_cast<long long>(u));
  std::printf("\ntopic: %d (%s)\n", rec.topic, rec.topic_label.c_str());
  std::printf("group_score: %.6f\n", rec.group_score);
  std::printf("rank,poi_id,adist_m\n");
  for (std::size_t i = 0; i < rec.locations.size(); ++i)
    std::printf("%zu,%lld,%.6f\n", i + 1, static_cast<long long>(rec.locations[i].poi),
                rec.locations[i].adist);
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
  Dataset ds = load_dataset(cfg.dataset);
  AttentionModel model = AttentionModel::load(cfg.model);

  EvalConfig ec;
  ec.n_targets = cfg.eval_n_targets;
  ec.seed = cfg.eval_seed.value_or(cfg.seed);
  ec.k_min = cfg.eval_k_min;
  ec.k_max = cfg.eval_k_max;
  ec.h_min = cfg.eval_h_min;
  ec.h_max = cfg.eval_h_max;
  ec.top_k_values = cfg.eval_top_k;
  ec.group_cap = cfg.group_cap;
  ec.threads = cfg.threads;

  MetricReport report = run_experiment(ds, model, ec);
  const auto csv_path = std::filesystem::path(cfg.report_dir) / "report.csv";
  std::filesystem::create_directories(cfg.report_dir);
  write_report_csv(csv_path, report);
  std::fputs(format_report(report).c_str(), stdout);
  std::printf("targets          %zu sampled, %zu failed\n", report.sampled_targets,
              report.failed_targets);
  std::printf("report           %s\n", csv_path.string().c_str());
  return kExitOk;
}

int cmd_oracle_check(const RunConfig& cfg, bool inject_fault) {
  suites::SuiteOptions opt;
  opt.trials = cfg.oracle_trials;
  opt.seed = cfg.seed;
  opt.fault_slack = inject_fault ? 1e9 : 0.0;
  opt.replay_dir = cfg.oracle_replay_dir;

  bool all_ok = true;
  for (const suites::SuiteResult& r : suites::run_oracle_suites(opt)) {
    std::puts(suites::format_suite(r).c_str());
    all_ok = all_ok && r.passed();
  }
  return all_ok ? kExitOk : kExitOracleMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // The config file must be read before CLI11 binds flag defaults, so find
  // --config (or the env var) with a prescan; CLI > file > default follows.
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
    else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
  }
  if (config_path.empty())
    if (const char* env = std::getenv("AGSGR_CONFIG")) config_path = env;

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);

    CLI::App app{"Geo-social activity & group recommendation pipeline"};
    app.footer(kConfigDoc);
    app.require_subcommand(1);
    std::string config_opt;
    app.add_option("--config", config_opt, "key = value config file (also: AGSGR_CONFIG)");

    auto* ingest = app.add_subcommand("ingest", "Parse CSVs into a normalized binary dataset");
    ingest->add_option("--checkins", cfg.checkins, "check-in CSV (user,poi,time,lat,lon,category)");
    ingest->add_option("--edges", cfg.edges, "friendship CSV (user_a,user_b)");
    ingest->add_option("--groups", cfg.groups, "explicit group events CSV (optional)");
    ingest->add_option("--poi-edges", cfg.poi_edges, "POI association CSV (optional)");
    ingest->add_option("--window", cfg.window, "co-check-in window, seconds");
    ingest->add_option("--dataset", cfg.dataset, "output dataset path");
    ingest->add_option("--events-csv", cfg.events_csv, "output group-event CSV");

    auto* train = app.add_subcommand("train", "Fit the attention ranking model");
    train->add_option("--dataset", cfg.dataset, "ingested dataset");
    train->add_option("--model", cfg.model, "output checkpoint path");
    train->add_option("--epochs", cfg.epochs, "training epochs");
    train->add_option("--lr", cfg.lr, "learning rate");
    train->add_option("--dim", cfg.dim, "latent dimensionality");
    train->add_option("--l2", cfg.l2, "L2 regularization weight");
    train->add_option("--neg-ratio", cfg.neg_ratio, "negative samples per positive");
    train->add_option("--seed", cfg.seed, "root random seed");
    train->add_option("--loss-csv", cfg.loss_csv, "per-epoch loss CSV");

    auto* rec = app.add_subcommand("recommend", "Answer one query: group, topic, top-K locations");
    rec->add_option("--dataset", cfg.dataset, "ingested dataset");
    rec->add_option("--model", cfg.model, "trained checkpoint");
    rec->add_option("--target-user", cfg.target_user, "query user u_T");
    rec->add_option("--group-size", cfg.group_size, "required group size h");
    rec->add_option("--core", cfg.core, "required coreness k");
    rec->add_option("--top-k", cfg.top_k, "number of locations K");
    rec->add_flag("!--no-friend-constraint", cfg.friend_constraint,
                  "drop the direct-friendship requirement");
    rec->add_option("--group-cap", cfg.group_cap, "candidate enumeration cap");

    auto* eval = app.add_subcommand("evaluate", "Grid experiment: Pre@h, Pre@K, nDCG@K");
    eval->add_option("--dataset", cfg.dataset, "ingested dataset");
    eval->add_option("--model", cfg.model, "trained checkpoint");
    eval->add_option("--n-targets", cfg.eval_n_targets, "sampled target users");
    eval->add_option("--seed", cfg.seed, "root random seed");
    eval->add_option("--threads", cfg.threads, "per-target worker threads");
    eval->add_option("--report-dir", cfg.report_dir, "report output directory");
    eval->add_option("--group-cap", cfg.group_cap, "candidate enumeration cap");

    auto* oracle = app.add_subcommand("oracle-check",
                                      "Randomized equivalence suites against brute-force oracles");
    oracle->add_option("--trials", cfg.oracle_trials, "trials per suite (0 = suite default)");
    oracle->add_option("--seed", cfg.seed, "root random seed");
    oracle->add_option("--replay-dir", cfg.oracle_replay_dir, "failing-instance dump directory");
    bool inject_fault = false;
    oracle->add_flag("--inject-fault", inject_fault,
                     "deliberately weaken ANN pruning (sanity check: must fail)");

    CLI11_PARSE(app, argc, argv);

    if (ingest->parsed()) return cmd_ingest(cfg);
    if (train->parsed()) return cmd_train(cfg);
    if (rec->parsed()) return cmd_recommend(cfg);
    if (eval->parsed()) return cmd_evaluate(cfg);
    if (oracle->parsed()) return cmd_oracle_check(cfg, inject_fault);
    return kExitInternal;
  } catch (const agsgr::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  }
}
