#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <unordered_map>
#include <vector>

#include "agsgr/group_search.hpp"
#include "agsgr/types.hpp"

namespace agsgr {

// Per-user topic-preference distribution: p(t, u) = share of u's check-ins
// landing on topic t.  Rows sum to 1 for users with history; users without
// check-ins have no row.
class PreferenceTable {
 public:
  static PreferenceTable build(const std::vector<CheckIn>& checkins,
                               const std::unordered_map<PoiId, TopicId>& poi_topics,
                               std::size_t n_topics);

  std::size_t topic_count() const { return n_topics_; }
  const std::vector<UserId>& users() const { return users_; }
  bool has_user(UserId u) const;
  // Empty span when the user has no check-ins.
  std::span<const double> row(UserId u) const;
  double preference(UserId u, TopicId t) const;

 private:
  std::size_t n_topics_ = 0;
  std::vector<UserId> users_;   // sorted
  std::vector<double> rows_;    // |users_| x n_topics_, row-major
  std::vector<double> norms_;   // Euclidean norm per row
};

// Influence of target on another user: cosine-style overlap of preference
// rows where a topic counts only while the target's preference for it is at
// least the other user's.  Always in [0, 1]; 0 when either row is empty.
double influence(const PreferenceTable& prefs, UserId target, UserId other);

struct AdamState {
  std::vector<double> m, v;  // flat, matching the model's parameter layout
  std::uint64_t step = 0;
};

// Learned parameters: latent vectors per user and topic plus the affine
// attention scalars w, c.
struct AttentionModel {
  std::uint32_t dim = 32;
  std::vector<UserId> user_ids;    // sorted
  std::vector<TopicId> topic_ids;  // sorted
  std::vector<double> user_vecs;   // |user_ids| x dim, row-major
  std::vector<double> topic_vecs;  // |topic_ids| x dim, row-major
  double w = 1.0;
  double c = 0.0;
  double lambda = 0.01;
  AdamState adam;  // training scratch; not persisted

  static AttentionModel init(std::vector<UserId> users, std::vector<TopicId> topics,
                             std::uint32_t dim, std::uint64_t seed);

  bool has_user(UserId u) const;
  bool has_topic(TopicId t) const;
  std::size_t user_index(UserId u) const;    // throws UnknownUser
  std::size_t topic_index(TopicId t) const;  // throws UnknownTopic
  std::span<const double> user_vec(UserId u) const;
  std::span<const double> topic_vec(TopicId t) const;

  std::size_t param_count() const { return (user_ids.size() + topic_ids.size()) * dim + 2; }

  void save(const std::filesystem::path& path) const;
  static AttentionModel load(const std::filesystem::path& path);
};

// Attention over a candidate pool.  raw(j,i) = w * sigma(target, member) + c
// for every non-target member; one softmax spans all (group, member) pairs
// in the pool, so group scores are comparable and sum to 1.
struct AttentionWeights {
  // Per group, per non-target member in ascending member order.
  std::vector<std::vector<double>> raw;
  std::vector<std::vector<double>> normalized;
  std::vector<double> group_score;
};

AttentionWeights attention_scores(const CandidatePool& pool, UserId target,
                                  const AttentionModel& model, const PreferenceTable& prefs);

// Hard attention: index of the highest-scoring group, ties to the smallest index.
std::size_t select_group(const AttentionWeights& weights);

// Predicted group-topic affinity: group_score * <target vector, topic vector>.
double predicted_score(double group_score, UserId target, TopicId topic,
                       const AttentionModel& model);

// Top-1 topic among `vocabulary` by predicted score, ties to the smallest
// TopicId.  Throws NoTopic when the vocabulary is empty.
TopicId select_topic(UserId target, double group_score, std::span<const TopicId> vocabulary,
                     const AttentionModel& model);

// ---- A-BPR training ----------------------------------------------------

// Ranked pairs for one group: positives are topics every member has visited,
// negatives are sampled from the rest of the vocabulary (`neg_ratio` per
// positive, uniform without replacement).
std::vector<std::pair<TopicId, TopicId>> build_pairs(
    std::span<const UserId> members,
    const std::unordered_map<UserId, std::vector<TopicId>>& visited_topics,
    std::span<const TopicId> vocabulary, int neg_ratio, std::uint64_t seed);

// Sorted distinct topics each user has checked into.
std::unordered_map<UserId, std::vector<TopicId>> visited_topics(
    const std::vector<CheckIn>& checkins, const std::unordered_map<PoiId, TopicId>& poi_topics);

struct TrainingGroup {
  std::vector<UserId> members;  // sorted, includes the pool target
  std::vector<double> sigma;    // influence per non-target member, ascending member order
};

// All training groups sharing one target user; the softmax that produces
// group scores spans exactly this pool.
struct TrainingPool {
  UserId target;
  std::vector<TrainingGroup> groups;
};

struct TrainingPair {
  std::uint32_t pool, group;
  TopicId pos, neg;
};

struct TrainingSet {
  std::vector<TrainingPool> pools;
  std::vector<TrainingPair> pairs;
  bool empty() const { return pairs.empty(); }
};

struct GroupObservation {
  UserId target;                 // group initiator
  std::vector<UserId> members;   // sorted
};

// Pools observations by target, removes duplicate member sets per pool and
// builds ranking pairs for each group.
TrainingSet build_training_set(const std::vector<GroupObservation>& observations,
                               const PreferenceTable& prefs,
                               const std::unordered_map<UserId, std::vector<TopicId>>& visited,
                               std::span<const TopicId> vocabulary, int neg_ratio,
                               std::uint64_t seed);

// Gradients mirroring the model's parameter shapes.
struct Gradients {
  std::vector<double> user_vecs, topic_vecs;
  double w = 0, c = 0;
};

// Full-batch loss sum(-ln sigmoid(R_pos - R_neg)) + lambda * |Theta|^2 and
// its analytic gradient.
double abpr_loss(const AttentionModel& model, const TrainingSet& ts);
double abpr_loss_and_grad(const AttentionModel& model, const TrainingSet& ts, Gradients& grad);

struct TrainOptions {
  int epochs = 200;
  double lr = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Full-batch Adam; one step per epoch.  Returns the loss recorded at every
// epoch (evaluated before the step, plus the final loss appended).
std::vector<double> train_abpr(AttentionModel& model, const TrainingSet& ts,
                               const TrainOptions& opt);

}  // namespace agsgr
