#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "agsgr/attention.hpp"
#include "agsgr/ingest.hpp"
#include "agsgr/spatial_index.hpp"

namespace agsgr {

struct Recommendation {
  std::vector<UserId> group;  // U*, sorted
  TopicId topic = kNoTopic;   // T*
  std::string topic_label;
  double group_score = 0;
  AnnResult locations;  // top-K, ascending (adist, PoiId)
};

// Query-time orchestration over one ingested dataset and trained model.
// The dataset and model must outlive the pipeline.  Queries are const and
// safe to run concurrently; the per-topic spatial index cache is locked.
class Pipeline {
 public:
  Pipeline(const Dataset& ds, const AttentionModel& model);

  struct GroupChoice {
    CandidateGroup group;
    TopicId topic = kNoTopic;
    double group_score = 0;
  };

  // Candidate enumeration + hard attention + topic ranking.  Throws
  // UnknownUser for an unregistered target and EmptyResult when no valid
  // group exists (including the degree < k fast path).
  GroupChoice social_group_category_query(const Query& q) const;

  // Full recommendation including the top-K aggregate nearest locations.
  Recommendation recommend(const Query& q) const;

  const PreferenceTable& preferences() const { return prefs_; }

  // Latest check-in location; ties on time resolve to the later input row.
  std::optional<PlanarPoint> current_location(UserId u) const;

  std::shared_ptr<const SpatialIndex> index_for(TopicId topic) const;

 private:
  const Dataset& ds_;
  const AttentionModel& model_;
  PreferenceTable prefs_;
  std::unordered_map<UserId, PlanarPoint> current_locs_;
  mutable std::mutex cache_mutex_;
  mutable std::map<TopicId, std::shared_ptr<const SpatialIndex>> index_cache_;
};

// CSV `rank,poi_id,adist_meters`, ranks from 1, distances with 3 decimals.
void write_ann_csv(std::ostream& os, const AnnResult& result);

// Training observations from the train split: one per event, the target
// being the member whose check-in opened the event window (the user checked
// in at the event's POI at exactly the event time), falling back to the
// smallest member id when no such check-in exists.
std::vector<GroupObservation> group_observations(const Dataset& ds);

struct TrainConfig {
  int epochs = 200;
  double lr = 1e-2;
  std::uint32_t dim = 32;
  double lambda = 0.01;
  int neg_ratio = 4;
  std::uint64_t seed = 0;
};

struct TrainOutput {
  AttentionModel model;
  std::vector<double> losses;  // one per epoch plus the final value
};

/// End-to-end training: a fresh model over every graph user and every topic,
// ranking pairs from the train-split events, full-batch Adam.
TrainOutput train_on_dataset(const Dataset& ds, const TrainConfig& cfg);

}  // namespace agsgr
