#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "agsgr/geometry.hpp"
#include "agsgr/network.hpp"
#include "agsgr/types.hpp"

namespace agsgr {

struct ParseStats {
  std::size_t rows = 0;       // data rows seen (header excluded)
  std::size_t malformed = 0;  // rows skipped
};

struct CheckinData {
  std::vector<CheckIn> checkins;
  std::vector<Poi> pois;  // first occurrence of each poi_id wins
  TopicVocabulary topics;
  ParseStats stats;
};

// CSV `user_id,poi_id,timestamp,lat,lon,category`; a header line is detected
// by a non-numeric first token.  Malformed rows are skipped and counted;
// more than half malformed raises FormatError.
CheckinData parse_checkins(const std::filesystem::path& path);

// CSV `u,v`, same header/malformed policy.
std::vector<std::pair<UserId, UserId>> parse_edges(const std::filesystem::path& path,
                                                   ParseStats* stats = nullptr);

// CSV `poi_a,poi_b` association edges (stored, unused).
std::vector<std::pair<PoiId, PoiId>> parse_poi_edges(const std::filesystem::path& path,
                                                     ParseStats* stats = nullptr);

struct GroupEvent {
  std::vector<UserId> members;  // sorted, >= 2 entries
  PoiId poi = 0;
  std::int64_t time = 0;  // earliest member check-in
};

bool operator==(const GroupEvent& a, const GroupEvent& b);

// CSV `event_id,user_id,poi_id,timestamp` for datasets that carry explicit
// groups; rows sharing an event_id form one event (time = earliest row).
// Single-member events are dropped.
std::vector<GroupEvent> parse_explicit_groups(const std::filesystem::path& path,
                                              ParseStats* stats = nullptr);

// Implicit groups: for each check-in, the anchor user plus every friend who
// checked into the same POI strictly less than `window` seconds apart.
// Size-1 results are dropped; (member set, poi) duplicates collapse to the
// earliest event time.  Output sorted by (time, poi, members).
std::vector<GroupEvent> extract_implicit_groups(const std::vector<CheckIn>& checkins,
                                                const SocialGraph& graph,
                                                std::int64_t window = 1800);

struct DatasetSplit {
  std::vector<GroupEvent> train, test;
};

// Chronological 80/20: events sorted by (time, poi, members); the last
// floor(n/5) become the test set.
DatasetSplit split_by_time(std::vector<GroupEvent> events);

struct DatasetStats {
  std::size_t users = 0;
  std::size_t group_events = 0;
  std::size_t items = 0;
  double avg_group_size = 0;
  double avg_friends = 0;
};

DatasetStats dataset_stats(const GeoSocialNetwork& net, const std::vector<GroupEvent>& events);

void write_group_events_csv(const std::filesystem::path& path,
                            const std::vector<GroupEvent>& events);

// One ingested dataset: the network, all group events (sorted), their
// train/test split, and the projection origin (mean POI coordinate).
struct Dataset {
  GeoSocialNetwork network;
  std::vector<GroupEvent> events;
  DatasetSplit split;
  GeoOrigin origin;
};

struct IngestOptions {
  std::filesystem::path checkins;
  std::filesystem::path edges;
  std::optional<std::filesystem::path> explicit_groups;
  std::optional<std::filesystem::path> poi_edges;
  std::int64_t window = 1800;
};

Dataset ingest_dataset(const IngestOptions& opt);

void save_dataset(const std::filesystem::path& path, const Dataset& ds);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace agsgr
