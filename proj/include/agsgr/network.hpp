#pragma once

#include <unordered_map>
#include <vector>

#include "agsgr/social_graph.hpp"
#include "agsgr/types.hpp"

namespace agsgr {

// The heterogeneous geo-social network: users with social edges, the POI
// catalog, raw check-ins, and the interned topic vocabulary.  POI-POI
// association edges are carried through for completeness; no algorithm
// consumes them.
struct GeoSocialNetwork {
  SocialGraph graph;
  std::unordered_map<PoiId, Poi> pois;
  std::vector<CheckIn> checkins;
  TopicVocabulary topics;
  std::vector<std::pair<PoiId, PoiId>> poi_edges;

  std::unordered_map<PoiId, TopicId> poi_topics() const {
    std::unordered_map<PoiId, TopicId> m;
    m.reserve(pois.size());
    for (const auto& [id, poi] : pois) m.emplace(id, poi.topic);
    return m;
  }
};

}  // namespace agsgr
