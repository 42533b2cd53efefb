#include "agsgr/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>

#include "agsgr/binary_io.hpp"
#include "agsgr/errors.hpp"

namespace agsgr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_i64(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_f64(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// Epoch seconds; fractional timestamps are truncated toward zero.
bool parse_time(std::string_view s, std::int64_t& out) {
  if (parse_i64(s, out)) return true;
  double d;
  if (!parse_f64(s, d)) return false;
  out = static_cast<std::int64_t>(d);
  return true;
}

bool numeric_token(std::string_view s) {
  std::int64_t ignored;
  return parse_i64(s, ignored);
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  return is;
}

void enforce_malformed_budget(const std::filesystem::path& path, const ParseStats& stats) {
  if (stats.rows > 0 && stats.malformed * 2 > stats.rows)
    throw FormatError(path.string() + ": " + std::to_string(stats.malformed) + " of " +
                      std::to_string(stats.rows) + " rows malformed");
}

// Runs `row` over every data line; a leading non-numeric first token is
// treated as a header.  `row` returns false for malformed lines.
template <typename RowFn>
ParseStats for_each_row(const std::filesystem::path& path, RowFn&& row) {
  auto is = open_text(path);
  ParseStats stats;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    auto fields = split_csv(sv);
    if (first) {
      first = false;
      if (!numeric_token(fields[0])) continue;  // header
    }
    ++stats.rows;
    if (!row(fields)) ++stats.malformed;
  }
  enforce_malformed_budget(path, stats);
  return stats;
}

}  // namespace

CheckinData parse_checkins(const std::filesystem::path& path) {
  CheckinData data;
  std::set<PoiId> seen_pois;
  data.stats = for_each_row(path, [&](const std::vector<std::string_view>& f) {
    if (f.size() != 6) return false;
    std::int64_t user, poi, time;
    double lat, lon;
    if (!parse_i64(f[0], user) || !parse_i64(f[1], poi) || !parse_time(f[2], time) ||
        !parse_f64(f[3], lat) || !parse_f64(f[4], lon))
      return false;
    if (time < 0 || lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0 || f[5].empty())
      return false;
    TopicId topic = data.topics.intern(std::string(f[5]));
    if (seen_pois.insert(poi).second) data.pois.push_back(Poi{poi, lat, lon, topic});
    data.checkins.push_back(CheckIn{user, poi, time});
    return true;
  });
  return data;
}

std::vector<std::pair<UserId, UserId>> parse_edges(const std::filesystem::path& path,
                                                   ParseStats* stats) {
  std::vector<std::pair<UserId, UserId>> edges;
  ParseStats st = for_each_row(path, [&](const std::vector<std::string_view>& f) {
    std::int64_t u, v;
    if (f.size() != 2 || !parse_i64(f[0], u) || !parse_i64(f[1], v)) return false;
    edges.emplace_back(u, v);
    return true;
  });
  if (stats) *stats = st;
  return edges;
}

std::vector<std::pair<PoiId, PoiId>> parse_poi_edges(const std::filesystem::path& path,
                                                     ParseStats* stats) {
  std::vector<std::pair<PoiId, PoiId>> edges;
  ParseStats st = for_each_row(path, [&](const std::vector<std::string_view>& f) {
    std::int64_t a, b;
    if (f.size() != 2 || !parse_i64(f[0], a) || !parse_i64(f[1], b)) return false;
    edges.emplace_back(a, b);
    return true;
  });
  if (stats) *stats = st;
  return edges;
}

bool operator==(const GroupEvent& a, const GroupEvent& b) {
  return a.poi == b.poi && a.time == b.time && a.members == b.members;
}

namespace {

bool event_less(const GroupEvent& a, const GroupEvent& b) {
  if (a.time != b.time) return a.time < b.time;
  if (a.poi != b.poi) return a.poi < b.poi;
  return a.members < b.members;
}

}  // namespace

std::vector<GroupEvent> parse_explicit_groups(const std::filesystem::path& path,
                                              ParseStats* stats) {
  struct Acc {
    std::set<UserId> members;
    PoiId poi = 0;
    std::int64_t time = std::numeric_limits<std::int64_t>::max();
    bool first = true;
  };
  std::map<std::int64_t, Acc> by_event;
  ParseStats st = for_each_row(path, [&](const std::vector<std::string_view>& f) {
    std::int64_t event, user, poi, time;
    if (f.size() != 4 || !parse_i64(f[0], event) || !parse_i64(f[1], user) ||
        !parse_i64(f[2], poi) || !parse_time(f[3], time) || time < 0)
      return false;
    Acc& acc = by_event[event];
    if (acc.first) {
      acc.poi = poi;
      acc.first = false;
    } else if (acc.poi != poi) {
      return false;  // rows of one event must agree on the venue
    }
    acc.members.insert(user);
    acc.time = std::min(acc.time, time);
    return true;
  });
  if (stats) *stats = st;

  std::vector<GroupEvent> events;
  for (auto& [event_id, acc] : by_event) {
    if (acc.members.size() < 2) continue;
    GroupEvent ev;
    ev.members.assign(acc.members.begin(), acc.members.end());
    ev.poi = acc.poi;
    ev.time = acc.time;
    events.push_back(std::move(ev));
  }
  std::sort(events.begin(), events.end(), event_less);
  return events;
}

std::vector<GroupEvent> extract_implicit_groups(const std::vector<CheckIn>& checkins,
                                                const SocialGraph& graph, std::int64_t window) {
  std::unordered_map<PoiId, std::vector<std::pair<std::int64_t, UserId>>> per_poi;
  for (const CheckIn& ci : checkins) per_poi[ci.poi].emplace_back(ci.time, ci.user);

  std::map<std::pair<PoiId, std::vector<UserId>>, std::int64_t> dedup;
  for (auto& [poi, visits] : per_poi) {
    std::sort(visits.begin(), visits.end());
    for (const auto& [t0, anchor] : visits) {
      auto anchor_idx = graph.index_of(anchor);
      if (!anchor_idx) continue;
      // Strict window: |t - t0| < window, i.e. t in [t0-window+1, t0+window-1].
      auto lo = std::lower_bound(visits.begin(), visits.end(),
                                 std::make_pair(t0 - window + 1, std::numeric_limits<UserId>::min()));
      auto hi = std::upper_bound(visits.begin(), visits.end(),
                                 std::make_pair(t0 + window - 1, std::numeric_limits<UserId>::max()));
      std::set<UserId> members{anchor};
      std::int64_t earliest = t0;
      for (auto it = lo; it != hi; ++it) {
        const auto& [t, u] = *it;
        if (u == anchor) continue;
        auto idx = graph.index_of(u);
        if (!idx || !graph.has_edge(*anchor_idx, *idx)) continue;
        members.insert(u);
        earliest = std::min(earliest, t);
      }
      if (members.size() < 2) continue;
      std::vector<UserId> key(members.begin(), members.end());
      auto [slot, inserted] = dedup.try_emplace({poi, std::move(key)}, earliest);
      if (!inserted) slot->second = std::min(slot->second, earliest);
    }
  }

  std::vector<GroupEvent> events;
  events.reserve(dedup.size());
  for (auto& [key, time] : dedup)
    events.push_back(GroupEvent{key.second, key.first, time});
  std::sort(events.begin(), events.end(), event_less);
  return events;
}

DatasetSplit split_by_time(std::vector<GroupEvent> events) {
  std::sort(events.begin(), events.end(), event_less);
  const std::size_t n_test = events.size() / 5;
  DatasetSplit split;
  split.train.assign(events.begin(), events.end() - static_cast<std::ptrdiff_t>(n_test));
  split.test.assign(events.end() - static_cast<std::ptrdiff_t>(n_test), events.end());
  return split;
}

DatasetStats dataset_stats(const GeoSocialNetwork& net, const std::vector<GroupEvent>& events) {
  DatasetStats s;
  s.users = net.graph.user_count();
  s.group_events = events.size();
  s.items = net.pois.size();
  if (!events.empty()) {
    double total = 0;
    for (const GroupEvent& ev : events) total += static_cast<double>(ev.members.size());
    s.avg_group_size = total / static_cast<double>(events.size());
  }
  if (s.users > 0)
    s.avg_friends = 2.0 * static_cast<double>(net.graph.edge_count()) / static_cast<double>(s.users);
  return s;
}

void write_group_events_csv(const std::filesystem::path& path,
                            const std::vector<GroupEvent>& events) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "poi_id,time,members\n";
  for (const GroupEvent& ev : events) {
    os << ev.poi << ',' << ev.time << ',';
    for (std::size_t i = 0; i < ev.members.size(); ++i) {
      if (i) os << '|';
      os << ev.members[i];
    }
    os << '\n';
  }
  if (!os) throw IoError("failed writing " + path.string());
}

Dataset ingest_dataset(const IngestOptions& opt) {
  CheckinData cd = parse_checkins(opt.checkins);
  auto edges = parse_edges(opt.edges);

  Dataset ds;
  if (!cd.pois.empty()) {
    double lat = 0, lon = 0;
    for (const Poi& p : cd.pois) {
      lat += p.lat;
      lon += p.lon;
    }
    ds.origin = {lat / static_cast<double>(cd.pois.size()),
                 lon / static_cast<double>(cd.pois.size())};
  }

  std::vector<GroupEvent> events;
  std::vector<UserId> extra_users;
  for (const CheckIn& ci : cd.checkins) extra_users.push_back(ci.user);

  GeoSocialNetwork net;
  net.checkins = std::move(cd.checkins);
  net.topics = std::move(cd.topics);
  for (const Poi& p : cd.pois) net.pois.emplace(p.id, p);
  if (opt.poi_edges) net.poi_edges = parse_poi_edges(*opt.poi_edges);

  if (opt.explicit_groups) {
    events = parse_explicit_groups(*opt.explicit_groups);
    for (const GroupEvent& ev : events) {
      extra_users.insert(extra_users.end(), ev.members.begin(), ev.members.end());
      if (!net.pois.count(ev.poi)) {
        // Venue unseen in check-ins: register it with a synthetic per-event
        // topic and no usable coordinates.
        TopicId t = net.topics.intern("event#" + std::to_string(ev.poi));
        net.pois.emplace(ev.poi, Poi{ev.poi, 0, 0, t});
      }
    }
    net.graph = SocialGraph::build(edges, extra_users);
  } else {
    net.graph = SocialGraph::build(edges, extra_users);
    events = extract_implicit_groups(net.checkins, net.graph, opt.window);
  }

  ds.network = std::move(net);
  ds.events = std::move(events);
  ds.split = split_by_time(ds.events);
  return ds;
}

// ---- dataset persistence ---------------------------------------------------

namespace {
constexpr std::string_view kDatasetMagic = "AGSGRDS1";
}

void save_dataset(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  io::write_magic(os, kDatasetMagic);
  io::write_pod<double>(os, ds.origin.lat0);
  io::write_pod<double>(os, ds.origin.lon0);

  const SocialGraph& g = ds.network.graph;
  io::write_pod<std::uint64_t>(os, g.user_count());
  for (UserId u : g.users()) io::write_pod<std::int64_t>(os, u);
  io::write_pod<std::uint64_t>(os, g.edge_count());
  for (std::uint32_t a = 0; a < g.user_count(); ++a)
    for (std::uint32_t b : g.neighbors(a))
      if (a < b) {
        io::write_pod<std::int64_t>(os, g.id_of(a));
        io::write_pod<std::int64_t>(os, g.id_of(b));
      }

  io::write_pod<std::uint64_t>(os, ds.network.topics.size());
  for (TopicId t = 0; t < static_cast<TopicId>(ds.network.topics.size()); ++t) {
    const std::string& label = ds.network.topics.label(t);
    io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(label.size()));
    os.write(label.data(), static_cast<std::streamsize>(label.size()));
  }

  std::vector<PoiId> poi_ids;
  poi_ids.reserve(ds.network.pois.size());
  for (const auto& [id, poi] : ds.network.pois) poi_ids.push_back(id);
  std::sort(poi_ids.begin(), poi_ids.end());
  io::write_pod<std::uint64_t>(os, poi_ids.size());
  for (PoiId id : poi_ids) {
    const Poi& p = ds.network.pois.at(id);
    io::write_pod<std::int64_t>(os, p.id);
    io::write_pod<double>(os, p.lat);
    io::write_pod<double>(os, p.lon);
    io::write_pod<std::int32_t>(os, p.topic);
  }

  io::write_pod<std::uint64_t>(os, ds.network.checkins.size());
  for (const CheckIn& ci : ds.network.checkins) {
    io::write_pod<std::int64_t>(os, ci.user);
    io::write_pod<std::int64_t>(os, ci.poi);
    io::write_pod<std::int64_t>(os, ci.time);
  }

  io::write_pod<std::uint64_t>(os, ds.network.poi_edges.size());
  for (const auto& [a, b] : ds.network.poi_edges) {
    io::write_pod<std::int64_t>(os, a);
    io::write_pod<std::int64_t>(os, b);
  }

  io::write_pod<std::uint64_t>(os, ds.events.size());
  io::write_pod<std::uint64_t>(os, ds.split.test.size());
  for (const GroupEvent& ev : ds.events) {
    io::write_pod<std::int64_t>(os, ev.poi);
    io::write_pod<std::int64_t>(os, ev.time);
    io::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(ev.members.size()));
    for (UserId u : ev.members) io::write_pod<std::int64_t>(os, u);
  }
  if (!os) throw IoError("failed writing " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  io::expect_magic(is, kDatasetMagic, "dataset");

  Dataset ds;
  ds.origin.lat0 = io::read_pod<double>(is, "origin lat");
  ds.origin.lon0 = io::read_pod<double>(is, "origin lon");

  auto n_users = io::read_pod<std::uint64_t>(is, "user count");
  std::vector<UserId> users(n_users);
  for (auto& u : users) u = io::read_pod<std::int64_t>(is, "user id");
  auto n_edges = io::read_pod<std::uint64_t>(is, "edge count");
  std::vector<std::pair<UserId, UserId>> edges(n_edges);
  for (auto& [a, b] : edges) {
    a = io::read_pod<std::int64_t>(is, "edge endpoint");
    b = io::read_pod<std::int64_t>(is, "edge endpoint");
  }
  ds.network.graph = SocialGraph::build(edges, users);

  auto n_topics = io::read_pod<std::uint64_t>(is, "topic count");
  for (std::uint64_t i = 0; i < n_topics; ++i) {
    auto len = io::read_pod<std::uint32_t>(is, "topic label length");
    std::string label(len, '\0');
    if (!is.read(label.data(), len)) throw FormatError("truncated topic label");
    ds.network.topics.intern(label);
  }

  auto n_pois = io::read_pod<std::uint64_t>(is, "poi count");
  for (std::uint64_t i = 0; i < n_pois; ++i) {
    Poi p;
    p.id = io::read_pod<std::int64_t>(is, "poi id");
    p.lat = io::read_pod<double>(is, "poi lat");
    p.lon = io::read_pod<double>(is, "poi lon");
    p.topic = io::read_pod<std::int32_t>(is, "poi topic");
    ds.network.pois.emplace(p.id, p);
  }

  auto n_checkins = io::read_pod<std::uint64_t>(is, "checkin count");
  ds.network.checkins.resize(n_checkins);
  for (auto& ci : ds.network.checkins) {
    ci.user = io::read_pod<std::int64_t>(is, "checkin user");
    ci.poi = io::read_pod<std::int64_t>(is, "checkin poi");
    ci.time = io::read_pod<std::int64_t>(is, "checkin time");
  }

  auto n_poi_edges = io::read_pod<std::uint64_t>(is, "poi edge count");
  ds.network.poi_edges.resize(n_poi_edges);
  for (auto& [a, b] : ds.network.poi_edges) {
    a = io::read_pod<std::int64_t>(is, "poi edge endpoint");
    b = io::read_pod<std::int64_t>(is, "poi edge endpoint");
  }

  auto n_events = io::read_pod<std::uint64_t>(is, "event count");
  auto n_test = io::read_pod<std::uint64_t>(is, "test count");
  if (n_test > n_events) throw FormatError("dataset: test split larger than event list");
  ds.events.resize(n_events);
  for (auto& ev : ds.events) {
    ev.poi = io::read_pod<std::int64_t>(is, "event poi");
    ev.time = io::read_pod<std::int64_t>(is, "event time");
    auto n_members = io::read_pod<std::uint32_t>(is, "event member count");
    ev.members.resize(n_members);
    for (auto& u : ev.members) u = io::read_pod<std::int64_t>(is, "event member");
  }
  ds.split.train.assign(ds.events.begin(), ds.events.end() - static_cast<std::ptrdiff_t>(n_test));
  ds.split.test.assign(ds.events.end() - static_cast<std::ptrdiff_t>(n_test), ds.events.end());
  return ds;
}

}  // namespace agsgr
