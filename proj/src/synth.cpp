#include "agsgr/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "agsgr/errors.hpp"

namespace agsgr::synth {

std::vector<std::pair<UserId, UserId>> random_edges(std::mt19937_64& rng, std::size_t n,
                                                    double p) {
  std::vector<std::pair<UserId, UserId>> edges;
  std::bernoulli_distribution flip(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (flip(rng)) edges.emplace_back(static_cast<UserId>(i), static_cast<UserId>(j));
  return edges;
}

SocialGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<UserId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<UserId>(i);
  return SocialGraph::build(random_edges(rng, n, p), all);
}

std::vector<PlanarPoint> random_points(std::mt19937_64& rng, std::size_t n, double extent) {
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::vector<PlanarPoint> pts(n);
  for (PlanarPoint& p : pts) p = {coord(rng), coord(rng)};
  return pts;
}

std::vector<PoiEntry> random_pois(std::mt19937_64& rng, std::size_t n, double extent) {
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::vector<PoiEntry> pois(n);
  for (std::size_t i = 0; i < n; ++i)
    pois[i] = {static_cast<PoiId>(i + 1), {coord(rng), coord(rng)}, 0};
  std::shuffle(pois.begin(), pois.end(), rng);
  return pois;
}

namespace {

constexpr std::size_t kUsers = 200;
constexpr std::size_t kCliqueSize = 5;
constexpr std::size_t kSlots = 48;       // POI grid, topic = slot % 6
constexpr PoiId kPoiBase = 1000;
constexpr std::int64_t kBase = 1'600'000'000;
constexpr std::int64_t kDay = 86'400;

const char* const kTopicNames[6] = {"coffee", "bar", "gym", "museum", "park", "pizza"};

struct RawRow {
  UserId user;
  std::size_t slot;
  std::int64_t time;
};

}  // namespace

PlantedInstance make_planted(std::uint64_t seed) {
  std::mt19937_64 rng(seed);

  // Venue grid around lower Manhattan, ~1 km spacing with ~90 m jitter, so
  // the planted venue is never shadowed by a near-duplicate.
  std::uniform_real_distribution<double> jitter(-0.0008, 0.0008);
  std::vector<Poi> slots(kSlots);
  for (std::size_t s = 0; s < kSlots; ++s) {
    slots[s].id = kPoiBase + static_cast<PoiId>(s);
    slots[s].lat = 40.70 + static_cast<double>(s / 8) * 0.009 + jitter(rng);
    slots[s].lon = -74.00 + static_cast<double>(s % 8) * 0.012 + jitter(rng);
  }

  std::vector<RawRow> rows;

  // Clique co-visits: four full sessions at distinct coffee venues, then a
  // few partial sessions to diversify the training pools.  Member offsets of
  // 2 minutes keep every pair well inside the half-hour window.
  const std::size_t coffee_slots[4] = {0, 6, 12, 18};
  for (std::size_t e = 0; e < 4; ++e)
    for (std::size_t m = 0; m < kCliqueSize; ++m)
      rows.push_back({static_cast<UserId>(m), coffee_slots[e],
                      kBase + static_cast<std::int64_t>(e) * kDay +
                          static_cast<std::int64_t>(m) * 120});
  const std::vector<std::vector<UserId>> partials = {{0, 1, 2}, {0, 2, 3}, {0, 1, 3, 4}};
  const std::size_t partial_slots[3] = {24, 30, 36};
  for (std::size_t e = 0; e < partials.size(); ++e)
    for (std::size_t i = 0; i < partials[e].size(); ++i)
      rows.push_back({partials[e][i], partial_slots[e],
                      kBase + static_cast<std::int64_t>(4 + e) * kDay +
                          static_cast<std::int64_t>(i) * 120});

  // Personal decoy visits: two non-coffee topics per member, no two members
  // sharing both, so the commonly-visited set of any clique group is exactly
  // {coffee}.  An hour between members prevents accidental co-visits.
  for (std::size_t m = 0; m < kCliqueSize; ++m) {
    const std::size_t t1 = 1 + (m % 5), t2 = 1 + ((m + 2) % 5);
    rows.push_back({static_cast<UserId>(m), t1,
                    kBase + 10 * kDay + static_cast<std::int64_t>(m) * 3600});
    rows.push_back({static_cast<UserId>(m), t2,
                    kBase + 11 * kDay + static_cast<std::int64_t>(m) * 3600});
  }

  // Background crowd: users 5..199 wander the non-coffee venues.
  std::vector<std::size_t> noncoffee;
  for (std::size_t s = 0; s < kSlots; ++s)
    if (s % 6 != 0) noncoffee.push_back(s);
  std::uniform_int_distribution<std::size_t> pick_slot(0, noncoffee.size() - 1);
  std::uniform_int_distribution<std::int64_t> pick_time(kBase, kBase + 29 * kDay);
  for (std::size_t u = kCliqueSize; u < kUsers; ++u)
    for (int i = 0; i < 5; ++i)
      rows.push_back({static_cast<UserId>(u), noncoffee[pick_slot(rng)], pick_time(rng)});

  // Location pins: every clique member's latest check-in is the planted
  // venue, so the group's current locations all sit on it.
  for (std::size_t m = 0; m < kCliqueSize; ++m)
    rows.push_back({static_cast<UserId>(m), 0, kBase + 40 * kDay + static_cast<std::int64_t>(m) * 60});

  // Social edges: the planted clique, a sparse background graph, and three
  // background friends per clique member so the target's neighborhood is
  // bigger than the answer.
  std::vector<std::pair<UserId, UserId>> edges;
  for (std::size_t i = 0; i < kCliqueSize; ++i)
    for (std::size_t j = i + 1; j < kCliqueSize; ++j)
      edges.emplace_back(static_cast<UserId>(i), static_cast<UserId>(j));
  {
    std::bernoulli_distribution flip(0.03);
    for (std::size_t i = kCliqueSize; i < kUsers; ++i)
      for (std::size_t j = i + 1; j < kUsers; ++j)
        if (flip(rng)) edges.emplace_back(static_cast<UserId>(i), static_cast<UserId>(j));
    std::vector<UserId> bg;
    for (std::size_t u = kCliqueSize; u < kUsers; ++u) bg.push_back(static_cast<UserId>(u));
    for (std::size_t m = 0; m < kCliqueSize; ++m) {
      std::vector<UserId> cand = bg;
      for (int take = 0; take < 3; ++take) {
        std::uniform_int_distribution<std::size_t> pick(take, cand.size() - 1);
        std::swap(cand[take], cand[pick(rng)]);
        edges.emplace_back(static_cast<UserId>(m), cand[take]);
      }
    }
  }

  // Assemble exactly the way file ingest would: topics interned in row
  // order, first occurrence of a POI fixing the catalog, origin at the mean
  // venue coordinate.
  PlantedInstance inst;
  GeoSocialNetwork net;
  std::set<PoiId> seen;
  std::vector<Poi> catalog;
  std::vector<UserId> extra_users;
  for (const RawRow& r : rows) {
    const Poi& slot = slots[r.slot];
    TopicId t = net.topics.intern(kTopicNames[r.slot % 6]);
    if (seen.insert(slot.id).second) {
      Poi p = slot;
      p.topic = t;
      catalog.push_back(p);
    }
    net.checkins.push_back({r.user, slot.id, r.time});
    extra_users.push_back(r.user);
  }
  double lat = 0, lon = 0;
  for (const Poi& p : catalog) {
    lat += p.lat;
    lon += p.lon;
    net.pois.emplace(p.id, p);
  }
  inst.dataset.origin = {lat / static_cast<double>(catalog.size()),
                         lon / static_cast<double>(catalog.size())};
  net.graph = SocialGraph::build(edges, extra_users);

  inst.dataset.network = std::move(net);
  inst.dataset.events =
      extract_implicit_groups(inst.dataset.network.checkins, inst.dataset.network.graph, 1800);
  inst.dataset.split = split_by_time(inst.dataset.events);

  inst.truth.target = 0;
  inst.truth.group = {0, 1, 2, 3, 4};
  inst.truth.topic = inst.dataset.network.topics.intern("coffee");
  inst.truth.topic_label = "coffee";
  inst.truth.poi = kPoiBase;
  return inst;
}

void write_planted_csvs(const PlantedInstance& inst, const std::filesystem::path& dir) {
  const GeoSocialNetwork& net = inst.dataset.network;
  {
    std::ofstream os(dir / "checkins.csv", std::ios::trunc);
    if (!os) throw IoError("cannot open " + (dir / "checkins.csv").string() + " for writing");
    os << "user_id,poi_id,timestamp,lat,lon,category\n";
    char buf[64];
    for (const CheckIn& ci : net.checkins) {
      const Poi& p = net.pois.at(ci.poi);
      os << ci.user << ',' << ci.poi << ',' << ci.time << ',';
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", p.lat, p.lon);
      os << buf << ',' << net.topics.label(p.topic) << '\n';
    }
  }
  {
    std::ofstream os(dir / "edges.csv", std::ios::trunc);
    if (!os) throw IoError("cannot open " + (dir / "edges.csv").string() + " for writing");
    os << "user_a,user_b\n";
    for (std::uint32_t i = 0; i < net.graph.user_count(); ++i)
      for (std::uint32_t j : net.graph.neighbors(i))
        if (i < j) os << net.graph.id_of(i) << ',' << net.graph.id_of(j) << '\n';
  }
}

}  // namespace agsgr::synth
