#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "agsgr/errors.hpp"
#include "agsgr/ingest.hpp"
#include "agsgr/synth.hpp"

using namespace agsgr;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("agsgr_ingest_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  fs::path p = dir / name;
  std::ofstream(p, std::ios::trunc) << content;
  return p;
}

// Same-venue check-ins by pairwise friends.
std::vector<GroupEvent> groups_of(const std::vector<CheckIn>& cs,
                                  const std::vector<std::pair<UserId, UserId>>& edges,
                                  std::int64_t window = 1800) {
  std::vector<UserId> users;
  for (const CheckIn& c : cs) users.push_back(c.user);
  return extract_implicit_groups(cs, SocialGraph::build(edges, users), window);
}

}  // namespace

TEST_CASE("check-in parsing: header, malformed rows, first-poi-wins") {
  auto dir = scratch_dir("parse");
  auto path = write_file(dir, "c.csv",
                         "user_id,poi_id,timestamp,lat,lon,category\n"
                         "1,100,1000,40.7,-74.0,coffee\n"
                         "2,100,1100,41.0,-75.0,bar\n"   // poi 100 re-seen: keeps coffee
                         "3,200,1200,40.8,-74.1,bar\n"
                         "4,300,oops,40.8,-74.1,bar\n"   // bad timestamp
                         "5,400,1300,95.0,-74.1,bar\n"   // latitude out of range
                         "6,500,1400,40.9,-74.2,\n");    // empty category

  CheckinData data = parse_checkins(path);
  CHECK(data.stats.rows == 6);
  CHECK(data.stats.malformed == 3);
  REQUIRE(data.checkins.size() == 3);
  REQUIRE(data.pois.size() == 2);
  CHECK(data.pois[0].id == 100);
  CHECK(data.pois[0].topic == data.topics.intern("coffee"));
  CHECK(data.topics.size() == 2);  // coffee, bar — interned in first-seen order
  CHECK(data.topics.label(0) == "coffee");
}

TEST_CASE("more than half malformed rows is a format error") {
  auto dir = scratch_dir("budget");
  auto bad = write_file(dir, "bad.csv",
                        "1,100,1000,40.7,-74.0,a\n"
                        "x\n"
                        "y\n"
                        "z\n"
                        "2,100,1000,40.7,-74.0,a\n");
  CHECK_THROWS_AS(parse_checkins(bad), FormatError);

  // Exactly half is still tolerated.
  auto half = write_file(dir, "half.csv",
                         "1,100,1000,40.7,-74.0,a\n"
                         "x\n"
                         "y\n"
                         "2,100,1000,40.7,-74.0,a\n");
  CHECK(parse_checkins(half).stats.malformed == 2);

  CHECK_THROWS_AS(parse_checkins(dir / "missing.csv"), IoError);
  CHECK_THROWS_AS(parse_edges(dir / "missing.csv"), IoError);
}

TEST_CASE("co-check-in window is strict at 1800 seconds") {
  const std::vector<std::pair<UserId, UserId>> friends{{1, 2}};

  auto close = groups_of({{1, 100, 1000}, {2, 100, 2799}}, friends);  // dt = 1799
  REQUIRE(close.size() == 1);
  CHECK(close[0].members == std::vector<UserId>{1, 2});
  CHECK(close[0].poi == 100);
  CHECK(close[0].time == 1000);

  auto apart = groups_of({{1, 100, 1000}, {2, 100, 2800}}, friends);  // dt = 1800
  CHECK(apart.empty());
}

TEST_CASE("co-located strangers never form a group") {
  auto none = groups_of({{1, 100, 1000}, {2, 100, 1010}}, /*edges=*/{});
  CHECK(none.empty());
}

TEST_CASE("different venues never form a group") {
  auto none = groups_of({{1, 100, 1000}, {2, 200, 1000}}, {{1, 2}});
  CHECK(none.empty());
}

TEST_CASE("each anchor spans its own window") {
  const std::vector<std::pair<UserId, UserId>> edges{{1, 2}, {2, 3}, {1, 3}};
  auto events = groups_of({{1, 100, 0}, {2, 100, 1000}, {3, 100, 2000}}, edges);
  // Anchor 1 reaches 2 only; anchor 2 reaches both; anchor 3 reaches 2 only.
  REQUIRE(events.size() == 3);
  CHECK(events[0].members == std::vector<UserId>{1, 2});
  CHECK(events[0].time == 0);
  CHECK(events[1].members == std::vector<UserId>{1, 2, 3});
  CHECK(events[1].time == 0);
  CHECK(events[2].members == std::vector<UserId>{2, 3});
  CHECK(events[2].time == 1000);
}

TEST_CASE("repeat visits by the same set collapse to the earliest time") {
  auto events = groups_of(
      {{1, 100, 0}, {2, 100, 100}, {1, 100, 50'000}, {2, 100, 50'100}}, {{1, 2}});
  REQUIRE(events.size() == 1);
  CHECK(events[0].time == 0);
}

TEST_CASE("group extraction ignores input row order") {
  std::vector<CheckIn> cs;
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 80; ++i)
    cs.push_back({static_cast<UserId>(rng() % 12), static_cast<PoiId>(100 + rng() % 4),
                  static_cast<std::int64_t>(rng() % 20'000)});
  std::vector<std::pair<UserId, UserId>> edges;
  for (UserId a = 0; a < 12; ++a)
    for (UserId b = a + 1; b < 12; ++b)
      if ((a + b) % 3 != 0) edges.emplace_back(a, b);

  auto base = groups_of(cs, edges);
  std::shuffle(cs.begin(), cs.end(), rng);
  CHECK(groups_of(cs, edges) == base);
}

TEST_CASE("widening the window never loses companions") {
  std::vector<CheckIn> cs;
  std::mt19937_64 rng(777);
  for (int i = 0; i < 60; ++i)
    cs.push_back({static_cast<UserId>(rng() % 8), static_cast<PoiId>(100 + rng() % 3),
                  static_cast<std::int64_t>(rng() % 10'000)});
  std::vector<std::pair<UserId, UserId>> edges;
  for (UserId a = 0; a < 8; ++a)
    for (UserId b = a + 1; b < 8; ++b) edges.emplace_back(a, b);

  // A wider window can only grow each anchor's companion set, so every narrow
  // event's members sit inside some wide event's members at the same venue.
  auto narrow = groups_of(cs, edges, 600);
  auto wide = groups_of(cs, edges, 3600);
  CHECK(!narrow.empty());
  for (const GroupEvent& ev : narrow) {
    bool covered = false;
    for (const GroupEvent& w : wide)
      if (w.poi == ev.poi &&
          std::includes(w.members.begin(), w.members.end(), ev.members.begin(),
                        ev.members.end())) {
        covered = true;
        break;
      }
    CHECK(covered);
  }
}

TEST_CASE("chronological split keeps the last fifth for testing") {
  std::vector<GroupEvent> events;
  for (int i = 0; i < 10; ++i)
    events.push_back(GroupEvent{{1, 2}, 100, static_cast<std::int64_t>(1000 - i * 10)});

  DatasetSplit split = split_by_time(events);
  REQUIRE(split.train.size() == 8);
  REQUIRE(split.test.size() == 2);
  CHECK(split.train.front().time == 910);  // re-sorted by time first
  CHECK(split.test.front().time == 990);
  CHECK(split.test.back().time == 1000);

  DatasetSplit tiny = split_by_time({GroupEvent{{1, 2}, 100, 5}});
  CHECK(tiny.train.size() == 1);
  CHECK(tiny.test.empty());

  std::vector<GroupEvent> five(5, GroupEvent{{1, 2}, 100, 5});
  CHECK(split_by_time(five).test.size() == 1);
}

TEST_CASE("explicit group rows merge by event id") {
  auto dir = scratch_dir("explicit");
  auto path = write_file(dir, "g.csv",
                         "event_id,user_id,poi_id,timestamp\n"
                         "1,5,700,2000\n"
                         "1,6,700,1500\n"
                         "1,7,700,2500\n"
                         "2,9,800,100\n"        // single member: dropped
                         "3,1,900,50\n"
                         "3,2,900,60\n"
                         "3,2,901,60\n");       // venue mismatch: malformed row

  ParseStats stats;
  auto events = parse_explicit_groups(path, &stats);
  CHECK(stats.malformed == 1);
  REQUIRE(events.size() == 2);
  CHECK(events[0].members == std::vector<UserId>{1, 2});
  CHECK(events[0].time == 50);
  CHECK(events[1].members == std::vector<UserId>{5, 6, 7});
  CHECK(events[1].time == 1500);
}

TEST_CASE("dataset statistics on a 5-clique with one group") {
  GeoSocialNetwork net;
  std::vector<std::pair<UserId, UserId>> edges;
  for (UserId a = 0; a < 5; ++a)
    for (UserId b = a + 1; b < 5; ++b) edges.emplace_back(a, b);
  net.graph = SocialGraph::build(edges);
  net.pois.emplace(100, Poi{100, 40.0, -74.0, 0});

  std::vector<GroupEvent> events{GroupEvent{{0, 1, 2, 3, 4}, 100, 1000}};
  DatasetStats st = dataset_stats(net, events);
  CHECK(st.users == 5);
  CHECK(st.items == 1);
  CHECK(st.group_events == 1);
  CHECK(st.avg_group_size == doctest::Approx(5.0));
  CHECK(st.avg_friends == doctest::Approx(4.0));
}

TEST_CASE("file ingest reproduces the in-memory pipeline and survives a round trip") {
  auto dir = scratch_dir("roundtrip");
  synth::PlantedInstance inst = synth::make_planted(2026);
  synth::write_planted_csvs(inst, dir);

  IngestOptions opt;
  opt.checkins = dir / "checkins.csv";
  opt.edges = dir / "edges.csv";
  Dataset ds = ingest_dataset(opt);

  CHECK(ds.network.graph.user_count() == inst.dataset.network.graph.user_count());
  CHECK(ds.network.graph.edge_count() == inst.dataset.network.graph.edge_count());
  CHECK(ds.network.checkins.size() == inst.dataset.network.checkins.size());
  CHECK(ds.origin.lat0 == doctest::Approx(inst.dataset.origin.lat0).epsilon(1e-12));
  REQUIRE(ds.events == inst.dataset.events);
  CHECK(ds.split.train == inst.dataset.split.train);
  CHECK(ds.split.test == inst.dataset.split.test);

  const auto bin = dir / "ds.bin";
  save_dataset(bin, ds);
  Dataset back = load_dataset(bin);
  CHECK(back.events == ds.events);
  CHECK(back.split.train.size() == ds.split.train.size());
  CHECK(back.split.test.size() == ds.split.test.size());
  CHECK(back.origin.lat0 == ds.origin.lat0);
  CHECK(back.origin.lon0 == ds.origin.lon0);
  CHECK(back.network.graph.user_count() == ds.network.graph.user_count());
  CHECK(back.network.graph.edge_count() == ds.network.graph.edge_count());
  CHECK(back.network.pois.size() == ds.network.pois.size());
  CHECK(back.network.checkins.size() == ds.network.checkins.size());
  REQUIRE(back.network.topics.size() == ds.network.topics.size());
  for (std::size_t t = 0; t < ds.network.topics.size(); ++t)
    CHECK(back.network.topics.label(static_cast<TopicId>(t)) ==
          ds.network.topics.label(static_cast<TopicId>(t)));

  // A second save of the reloaded dataset is byte-identical.
  const auto bin2 = dir / "ds2.bin";
  save_dataset(bin2, back);
  std::ifstream a(bin, std::ios::binary), b(bin2, std::ios::binary);
  std::string abytes((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string bbytes((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(abytes == bbytes);
  fs::remove_all(dir);
}
