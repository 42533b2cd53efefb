#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace agsgr {

using UserId = std::int64_t;
using PoiId = std::int64_t;
using TopicId = std::int32_t;

constexpr TopicId kNoTopic = -1;

// A user activity record: user checked in at a POI at a point in time.
struct CheckIn {
  UserId user = 0;
  PoiId poi = 0;
  std::int64_t time = 0;  // UTC epoch seconds
};

struct Poi {
  PoiId id = 0;
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]
  TopicId topic = kNoTopic;
};

// Maps raw category labels to dense topic ids, in first-seen order.
class TopicVocabulary {
 public:
  TopicId intern(const std::string& label) {
    auto it = by_label_.find(label);
    if (it != by_label_.end()) return it->second;
    TopicId id = static_cast<TopicId>(labels_.size());
    labels_.push_back(label);
    by_label_.emplace(label, id);
    return id;
  }

  const std::string& label(TopicId id) const { return labels_.at(static_cast<std::size_t>(id)); }
  bool has(TopicId id) const { return id >= 0 && static_cast<std::size_t>(id) < labels_.size(); }
  std::size_t size() const { return labels_.size(); }

  // All topic ids, ascending.
  std::vector<TopicId> all_ids() const {
    std::vector<TopicId> out(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) out[i] = static_cast<TopicId>(i);
    return out;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, TopicId> by_label_;
};

}  // namespace agsgr
