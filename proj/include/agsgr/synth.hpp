#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "agsgr/ingest.hpp"
#include "agsgr/spatial_index.hpp"
#include "agsgr/types.hpp"

// Synthetic-instance generators for the randomized check suites and tests.
namespace agsgr::synth {

// G(n, p) on user ids 0..n-1 (each unordered pair independently an edge).
std::vector<std::pair<UserId, UserId>> random_edges(std::mt19937_64& rng, std::size_t n, double p);

// A graph whose node set is exactly 0..n-1, isolated nodes included.
SocialGraph random_graph(std::mt19937_64& rng, std::size_t n, double p);

// Uniform points in [-extent, extent]^2 (meters).
std::vector<PlanarPoint> random_points(std::mt19937_64& rng, std::size_t n, double extent);

// POI entries with ids 1..n in shuffled storage order and uniform locations.
std::vector<PoiEntry> random_pois(std::mt19937_64& rng, std::size_t n, double extent);

// A synthetic geo-social world with a known-best answer: user 0 sits in a
// planted 5-clique whose members repeatedly co-check-in at coffee venues and
// whose latest check-ins all land on one planted POI.  A (k=3, h=5, K=5)
// query for user 0 should recover the clique, the coffee topic, and the
// planted POI at rank 1.
struct PlantedTruth {
  UserId target = 0;
  std::vector<UserId> group;  // sorted member ids
  TopicId topic = kNoTopic;
  std::string topic_label;
  PoiId poi = 0;
};

struct PlantedInstance {
  Dataset dataset;
  PlantedTruth truth;
};

PlantedInstance make_planted(std::uint64_t seed);

// Writes the instance back out as `checkins.csv` + `edges.csv` so the same
// world can be driven through file ingest end to end.
void write_planted_csvs(const PlantedInstance& inst, const std::filesystem::path& dir);

}  // namespace agsgr::synth
