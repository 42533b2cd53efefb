#include "agsgr/attention.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "agsgr/binary_io.hpp"
#include "agsgr/errors.hpp"
#include "agsgr/rng.hpp"

namespace agsgr {

// ---- preferences ---------------------------------------------------------

PreferenceTable PreferenceTable::build(const std::vector<CheckIn>& checkins,
                                       const std::unordered_map<PoiId, TopicId>& poi_topics,
                                       std::size_t n_topics) {
  std::map<UserId, std::vector<double>> counts;
  for (const CheckIn& ci : checkins) {
    auto it = poi_topics.find(ci.poi);
    if (it == poi_topics.end() || it->second == kNoTopic) continue;
    auto t = static_cast<std::size_t>(it->second);
    if (t >= n_topics) continue;
    auto& row = counts[ci.user];
    if (row.empty()) row.assign(n_topics, 0.0);
    row[t] += 1.0;
  }

  PreferenceTable table;
  table.n_topics_ = n_topics;
  table.users_.reserve(counts.size());
  table.rows_.reserve(counts.size() * n_topics);
  for (auto& [user, row] : counts) {
    double total = 0;
    for (double v : row) total += v;
    double norm2 = 0;
    for (double& v : row) {
      v /= total;
      norm2 += v * v;
    }
    table.users_.push_back(user);
    table.rows_.insert(table.rows_.end(), row.begin(), row.end());
    table.norms_.push_back(std::sqrt(norm2));
  }
  return table;
}

bool PreferenceTable::has_user(UserId u) const {
  return std::binary_search(users_.begin(), users_.end(), u);
}

std::span<const double> PreferenceTable::row(UserId u) const {
  auto it = std::lower_bound(users_.begin(), users_.end(), u);
  if (it == users_.end() || *it != u) return {};
  auto idx = static_cast<std::size_t>(it - users_.begin());
  return {rows_.data() + idx * n_topics_, n_topics_};
}

double PreferenceTable::preference(UserId u, TopicId t) const {
  auto r = row(u);
  if (r.empty() || t < 0 || static_cast<std::size_t>(t) >= n_topics_) return 0.0;
  return r[static_cast<std::size_t>(t)];
}

double influence(const PreferenceTable& prefs, UserId target, UserId other) {
  auto rt = prefs.row(target);
  auto ro = prefs.row(other);
  if (rt.empty() || ro.empty()) return 0.0;
  double num = 0;
  for (std::size_t t = 0; t < rt.size(); ++t)
    if (rt[t] > 0 && ro[t] > 0 && rt[t] >= ro[t]) num += rt[t] * ro[t];
  if (num == 0) return 0.0;
  double nt = 0, no = 0;
  for (double v : rt) nt += v * v;
  for (double v : ro) no += v * v;
  return num / (std::sqrt(nt) * std::sqrt(no));
}

// ---- model ---------------------------------------------------------------

AttentionModel AttentionModel::init(std::vector<UserId> users, std::vector<TopicId> topics,
                                    std::uint32_t dim, std::uint64_t seed) {
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  std::sort(topics.begin(), topics.end());
  topics.erase(std::unique(topics.begin(), topics.end()), topics.end());

  AttentionModel m;
  m.dim = dim;
  m.user_ids = std::move(users);
  m.topic_ids = std::move(topics);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 0.1);
  m.user_vecs.resize(m.user_ids.size() * dim);
  for (double& v : m.user_vecs) v = gauss(rng);
  m.topic_vecs.resize(m.topic_ids.size() * dim);
  for (double& v : m.topic_vecs) v = gauss(rng);
  return m;
}

bool AttentionModel::has_user(UserId u) const {
  return std::binary_search(user_ids.begin(), user_ids.end(), u);
}

bool AttentionModel::has_topic(TopicId t) const {
  return std::binary_search(topic_ids.begin(), topic_ids.end(), t);
}

std::size_t AttentionModel::user_index(UserId u) const {
  auto it = std::lower_bound(user_ids.begin(), user_ids.end(), u);
  if (it == user_ids.end() || *it != u)
    throw UnknownUser("user " + std::to_string(u) + " not present in the model");
  return static_cast<std::size_t>(it - user_ids.begin());
}

std::size_t AttentionModel::topic_index(TopicId t) const {
  auto it = std::lower_bound(topic_ids.begin(), topic_ids.end(), t);
  if (it == topic_ids.end() || *it != t)
    throw UnknownTopic("topic " + std::to_string(t) + " not present in the model");
  return static_cast<std::size_t>(it - topic_ids.begin());
}

std::span<const double> AttentionModel::user_vec(UserId u) const {
  return {user_vecs.data() + user_index(u) * dim, dim};
}

std::span<const double> AttentionModel::topic_vec(TopicId t) const {
  return {topic_vecs.data() + topic_index(t) * dim, dim};
}

namespace {
constexpr std::string_view kModelMagic = "AGSGR1";
}

void AttentionModel::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  io::write_magic(os, kModelMagic);
  io::write_pod<std::uint32_t>(os, dim);
  io::write_pod<std::uint64_t>(os, user_ids.size());
  io::write_pod<std::uint64_t>(os, topic_ids.size());
  for (std::size_t i = 0; i < user_ids.size(); ++i) {
    io::write_pod<std::int64_t>(os, user_ids[i]);
    for (std::uint32_t d = 0; d < dim; ++d) io::write_pod<double>(os, user_vecs[i * dim + d]);
  }
  for (std::size_t i = 0; i < topic_ids.size(); ++i) {
    io::write_pod<std::int32_t>(os, topic_ids[i]);
    for (std::uint32_t d = 0; d < dim; ++d) io::write_pod<double>(os, topic_vecs[i * dim + d]);
  }
  io::write_pod<double>(os, w);
  io::write_pod<double>(os, c);
  io::write_pod<double>(os, lambda);
  if (!os) throw IoError("failed writing " + path.string());
}

AttentionModel AttentionModel::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  io::expect_magic(is, kModelMagic, "model checkpoint");
  AttentionModel m;
  m.dim = io::read_pod<std::uint32_t>(is, "dim");
  auto n_users = io::read_pod<std::uint64_t>(is, "user count");
  auto n_topics = io::read_pod<std::uint64_t>(is, "topic count");
  m.user_ids.resize(n_users);
  m.user_vecs.resize(n_users * m.dim);
  for (std::size_t i = 0; i < n_users; ++i) {
    m.user_ids[i] = io::read_pod<std::int64_t>(is, "user id");
    for (std::uint32_t d = 0; d < m.dim; ++d)
      m.user_vecs[i * m.dim + d] = io::read_pod<double>(is, "user vector");
  }
  m.topic_ids.resize(n_topics);
  m.topic_vecs.resize(n_topics * m.dim);
  for (std::size_t i = 0; i < n_topics; ++i) {
    m.topic_ids[i] = io::read_pod<std::int32_t>(is, "topic id");
    for (std::uint32_t d = 0; d < m.dim; ++d)
      m.topic_vecs[i * m.dim + d] = io::read_pod<double>(is, "topic vector");
  }
  m.w = io::read_pod<double>(is, "w");
  m.c = io::read_pod<double>(is, "c");
  m.lambda = io::read_pod<double>(is, "lambda");
  if (!std::is_sorted(m.user_ids.begin(), m.user_ids.end()) ||
      !std::is_sorted(m.topic_ids.begin(), m.topic_ids.end()))
    throw FormatError("model checkpoint: id tables not sorted");
  return m;
}

// ---- pool attention --------------------------------------------------------

AttentionWeights attention_scores(const CandidatePool& pool, UserId target,
                                  const AttentionModel& model, const PreferenceTable& prefs) {
  AttentionWeights out;
  out.raw.resize(pool.groups.size());
  out.normalized.resize(pool.groups.size());
  out.group_score.assign(pool.groups.size(), 0.0);

  double max_raw = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < pool.groups.size(); ++j) {
    for (UserId m : pool.groups[j].members) {
      if (m == target) continue;
      double r = model.w * influence(prefs, target, m) + model.c;
      out.raw[j].push_back(r);
      max_raw = std::max(max_raw, r);
    }
  }
  if (!std::isfinite(max_raw)) throw EmptyGroup("attention over a pool with no scorable members");

  double total = 0;
  for (const auto& row : out.raw)
    for (double r : row) total += std::exp(r - max_raw);
  for (std::size_t j = 0; j < pool.groups.size(); ++j) {
    out.normalized[j].reserve(out.raw[j].size());
    for (double r : out.raw[j]) {
      double a = std::exp(r - max_raw) / total;
      out.normalized[j].push_back(a);
      out.group_score[j] += a;
    }
  }
  return out;
}

std::size_t select_group(const AttentionWeights& weights) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < weights.group_score.size(); ++j)
    if (weights.group_score[j] > weights.group_score[best]) best = j;
  return best;
}

double predicted_score(double group_score, UserId target, TopicId topic,
                       const AttentionModel& model) {
  auto u = model.user_vec(target);
  auto v = model.topic_vec(topic);
  double dot = 0;
  for (std::uint32_t d = 0; d < model.dim; ++d) dot += u[d] * v[d];
  return group_score * dot;
}

TopicId select_topic(UserId target, double group_score, std::span<const TopicId> vocabulary,
                     const AttentionModel& model) {
  if (vocabulary.empty()) throw NoTopic("no candidate topics to rank");
  TopicId best = kNoTopic;
  double best_score = 0;
  for (TopicId t : vocabulary) {
    double s = predicted_score(group_score, target, t, model);
    if (best == kNoTopic || s > best_score || (s == best_score && t < best)) {
      best = t;
      best_score = s;
    }
  }
  return best;
}

// ---- training-set assembly -------------------------------------------------

std::unordered_map<UserId, std::vector<TopicId>> visited_topics(
    const std::vector<CheckIn>& checkins, const std::unordered_map<PoiId, TopicId>& poi_topics) {
  std::unordered_map<UserId, std::vector<TopicId>> visited;
  for (const CheckIn& ci : checkins) {
    auto it = poi_topics.find(ci.poi);
    if (it == poi_topics.end() || it->second == kNoTopic) continue;
    visited[ci.user].push_back(it->second);
  }
  for (auto& [user, topics] : visited) {
    std::sort(topics.begin(), topics.end());
    topics.erase(std::unique(topics.begin(), topics.end()), topics.end());
  }
  return visited;
}

std::vector<std::pair<TopicId, TopicId>> build_pairs(
    std::span<const UserId> members,
    const std::unordered_map<UserId, std::vector<TopicId>>& visited,
    std::span<const TopicId> vocabulary, int neg_ratio, std::uint64_t seed) {
  std::vector<TopicId> positives;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto it = visited.find(members[i]);
    if (it == visited.end()) return {};
    if (i == 0) {
      positives = it->second;
    } else {
      std::vector<TopicId> merged;
      std::set_intersection(positives.begin(), positives.end(), it->second.begin(),
                            it->second.end(), std::back_inserter(merged));
      positives = std::move(merged);
    }
    if (positives.empty()) return {};
  }

  std::vector<TopicId> vocab(vocabulary.begin(), vocabulary.end());
  std::sort(vocab.begin(), vocab.end());
  std::vector<TopicId> negatives;
  std::set_difference(vocab.begin(), vocab.end(), positives.begin(), positives.end(),
                      std::back_inserter(negatives));

  std::vector<std::pair<TopicId, TopicId>> pairs;
  if (negatives.empty()) return pairs;
  std::mt19937_64 rng(seed);
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(neg_ratio), negatives.size());
  std::vector<TopicId> cand;
  for (TopicId pos : positives) {
    cand = negatives;
    for (std::size_t j = 0; j < take; ++j) {
      std::uniform_int_distribution<std::size_t> pick(j, cand.size() - 1);
      std::swap(cand[j], cand[pick(rng)]);
      pairs.emplace_back(pos, cand[j]);
    }
  }
  return pairs;
}

TrainingSet build_training_set(const std::vector<GroupObservation>& observations,
                               const PreferenceTable& prefs,
                               const std::unordered_map<UserId, std::vector<TopicId>>& visited,
                               std::span<const TopicId> vocabulary, int neg_ratio,
                               std::uint64_t seed) {
  std::map<UserId, std::set<std::vector<UserId>>> by_target;
  for (const GroupObservation& obs : observations) {
    std::vector<UserId> members = obs.members;
    std::sort(members.begin(), members.end());
    by_target[obs.target].insert(std::move(members));
  }

  TrainingSet ts;
  for (const auto& [target, group_sets] : by_target) {
    TrainingPool pool;
    pool.target = target;
    std::vector<std::pair<std::uint32_t, std::vector<std::pair<TopicId, TopicId>>>> pool_pairs;
    std::uint32_t gi = 0;
    for (const auto& members : group_sets) {
      TrainingGroup tg;
      tg.members = members;
      for (UserId m : members)
        if (m != target) tg.sigma.push_back(influence(prefs, target, m));
      const std::uint64_t salt =
          static_cast<std::uint64_t>(target) * 1000003u + gi;
      auto pairs = build_pairs(members, visited, vocabulary, neg_ratio, mix64(seed ^ salt));
      if (!pairs.empty()) pool_pairs.emplace_back(gi, std::move(pairs));
      pool.groups.push_back(std::move(tg));
      ++gi;
    }
    if (pool_pairs.empty()) continue;  // nothing to learn from this pool
    const auto pool_idx = static_cast<std::uint32_t>(ts.pools.size());
    for (auto& [group_idx, pairs] : pool_pairs)
      for (auto& [pos, neg] : pairs)
        ts.pairs.push_back(TrainingPair{pool_idx, group_idx, pos, neg});
    ts.pools.push_back(std::move(pool));
  }
  return ts;
}

// ---- loss / gradient -------------------------------------------------------

namespace {

struct PoolSoftmax {
  std::vector<double> group_score;      // s_j
  std::vector<double> group_sigma_sum;  // sum_i alpha_{j,i} * sigma_{j,i}
  double sigma_bar = 0;                 // sum over the whole pool of alpha * sigma
};

PoolSoftmax pool_softmax(const TrainingPool& pool, double w, double c) {
  PoolSoftmax ps;
  ps.group_score.assign(pool.groups.size(), 0.0);
  ps.group_sigma_sum.assign(pool.groups.size(), 0.0);
  double max_raw = -std::numeric_limits<double>::infinity();
  for (const TrainingGroup& g : pool.groups)
    for (double s : g.sigma) max_raw = std::max(max_raw, w * s + c);
  if (!std::isfinite(max_raw)) return ps;  // no scorable members anywhere
  double total = 0;
  for (const TrainingGroup& g : pool.groups)
    for (double s : g.sigma) total += std::exp(w * s + c - max_raw);
  for (std::size_t j = 0; j < pool.groups.size(); ++j) {
    for (double s : pool.groups[j].sigma) {
      double a = std::exp(w * s + c - max_raw) / total;
      ps.group_score[j] += a;
      ps.group_sigma_sum[j] += a * s;
      ps.sigma_bar += a * s;
    }
  }
  return ps;
}

// -ln sigmoid(x), computed without overflow.
double softplus_neg(double x) {
  return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

double loss_impl(const AttentionModel& model, const TrainingSet& ts, Gradients* grad) {
  if (grad) {
    grad->user_vecs.assign(model.user_vecs.size(), 0.0);
    grad->topic_vecs.assign(model.topic_vecs.size(), 0.0);
    grad->w = 0;
    grad->c = 0;
  }

  std::vector<PoolSoftmax> softmaxes;
  softmaxes.reserve(ts.pools.size());
  std::vector<std::size_t> target_idx;
  target_idx.reserve(ts.pools.size());
  for (const TrainingPool& pool : ts.pools) {
    softmaxes.push_back(pool_softmax(pool, model.w, model.c));
    target_idx.push_back(model.user_index(pool.target));
  }

  const std::uint32_t d = model.dim;
  double loss = 0;
  for (const TrainingPair& pr : ts.pairs) {
    const PoolSoftmax& ps = softmaxes[pr.pool];
    const double s = ps.group_score[pr.group];
    const std::size_t ui = target_idx[pr.pool];
    const std::size_t qi = model.topic_index(pr.pos);
    const std::size_t si = model.topic_index(pr.neg);
    const double* u = model.user_vecs.data() + ui * d;
    const double* vq = model.topic_vecs.data() + qi * d;
    const double* vs = model.topic_vecs.data() + si * d;

    double dot_q = 0, dot_s = 0;
    for (std::uint32_t i = 0; i < d; ++i) {
      dot_q += u[i] * vq[i];
      dot_s += u[i] * vs[i];
    }
    const double x = s * (dot_q - dot_s);
    loss += softplus_neg(x);

    if (grad) {
      const double gx = -1.0 / (1.0 + std::exp(x));  // d(-ln sigmoid(x))/dx
      double* gu = grad->user_vecs.data() + ui * d;
      double* gq = grad->topic_vecs.data() + qi * d;
      double* gs = grad->topic_vecs.data() + si * d;
      for (std::uint32_t i = 0; i < d; ++i) {
        gu[i] += gx * s * (vq[i] - vs[i]);
        gq[i] += gx * s * u[i];
        gs[i] -= gx * s * u[i];
      }
      const double ds_dw = ps.group_sigma_sum[pr.group] - s * ps.sigma_bar;
      grad->w += gx * (dot_q - dot_s) * ds_dw;
      // ds/dc = 0: adding c to every raw score leaves the softmax unchanged.
    }
  }

  double norm2 = model.w * model.w + model.c * model.c;
  for (double v : model.user_vecs) norm2 += v * v;
  for (double v : model.topic_vecs) norm2 += v * v;
  loss += model.lambda * norm2;
  if (grad) {
    const double two_lambda = 2.0 * model.lambda;
    for (std::size_t i = 0; i < model.user_vecs.size(); ++i)
      grad->user_vecs[i] += two_lambda * model.user_vecs[i];
    for (std::size_t i = 0; i < model.topic_vecs.size(); ++i)
      grad->topic_vecs[i] += two_lambda * model.topic_vecs[i];
    grad->w += two_lambda * model.w;
    grad->c += two_lambda * model.c;
  }
  return loss;
}

}  // namespace

double abpr_loss(const AttentionModel& model, const TrainingSet& ts) {
  return loss_impl(model, ts, nullptr);
}

double abpr_loss_and_grad(const AttentionModel& model, const TrainingSet& ts, Gradients& grad) {
  return loss_impl(model, ts, &grad);
}

std::vector<double> train_abpr(AttentionModel& model, const TrainingSet& ts,
                               const TrainOptions& opt) {
  if (ts.empty()) throw NoTrainingData("no ranking pairs: need groups with commonly-visited topics");

  const std::size_t n = model.param_count();
  if (model.adam.m.size() != n) {
    model.adam.m.assign(n, 0.0);
    model.adam.v.assign(n, 0.0);
    model.adam.step = 0;
  }

  const std::size_t nu = model.user_vecs.size();
  const std::size_t nt = model.topic_vecs.size();
  auto param = [&](std::size_t i) -> double& {
    if (i < nu) return model.user_vecs[i];
    if (i < nu + nt) return model.topic_vecs[i - nu];
    return i == nu + nt ? model.w : model.c;
  };

  std::vector<double> losses;
  losses.reserve(static_cast<std::size_t>(opt.epochs) + 1);
  Gradients grad;
  for (int epoch = 0; epoch < opt.epochs; ++epoch) {
    losses.push_back(abpr_loss_and_grad(model, ts, grad));
    auto g = [&](std::size_t i) -> double {
      if (i < nu) return grad.user_vecs[i];
      if (i < nu + nt) return grad.topic_vecs[i - nu];
      return i == nu + nt ? grad.w : grad.c;
    };
    model.adam.step += 1;
    const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(model.adam.step));
    const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(model.adam.step));
    for (std::size_t i = 0; i < n; ++i) {
      const double gi = g(i);
      model.adam.m[i] = opt.beta1 * model.adam.m[i] + (1.0 - opt.beta1) * gi;
      model.adam.v[i] = opt.beta2 * model.adam.v[i] + (1.0 - opt.beta2) * gi * gi;
      const double mhat = model.adam.m[i] / bc1;
      const double vhat = model.adam.v[i] / bc2;
      param(i) -= opt.lr * mhat / (std::sqrt(vhat) + opt.eps);
    }
  }
  losses.push_back(abpr_loss(model, ts));
  return losses;
}

}  // namespace agsgr
