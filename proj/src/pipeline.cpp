#include "agsgr/pipeline.hpp"

#include <algorithm>
#include <cstdio>

#include "agsgr/errors.hpp"
#include "agsgr/rng.hpp"

namespace agsgr {

Pipeline::Pipeline(const Dataset& ds, const AttentionModel& model) : ds_(ds), model_(model) {
  prefs_ = PreferenceTable::build(ds.network.checkins, ds.network.poi_topics(),
                                  ds.network.topics.size());
  std::unordered_map<UserId, std::int64_t> latest;
  for (const CheckIn& ci : ds.network.checkins) {
    auto poi = ds.network.pois.find(ci.poi);
    if (poi == ds.network.pois.end()) continue;
    auto it = latest.find(ci.user);
    if (it != latest.end() && it->second > ci.time) continue;
    latest[ci.user] = ci.time;
    current_locs_[ci.user] = project(poi->second.lat, poi->second.lon, ds.origin);
  }
}

std::optional<PlanarPoint> Pipeline::current_location(UserId u) const {
  auto it = current_locs_.find(u);
  if (it == current_locs_.end()) return std::nullopt;
  return it->second;
}

Pipeline::GroupChoice Pipeline::social_group_category_query(const Query& q) const {
  validate(q);
  const SocialGraph& g = ds_.network.graph;
  auto target = g.index_of(q.target);
  if (!target) throw UnknownUser("user " + std::to_string(q.target) + " not in the network");

  const auto k = static_cast<std::uint32_t>(q.core);
  if (g.degree(*target) < k)
    throw EmptyResult("target degree below k: no k-core can contain the user");

  CoreNumbers cores = core_decomposition(g);
  if (cores.of(*target) < k)
    throw EmptyResult("target outside the " + std::to_string(q.core) + "-core");

  NodeSet sub = k_core_subgraph(g, k, cores);
  auto components = connected_components(g, sub);
  int component_id = -1;
  NodeSet component;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (std::binary_search(components[i].begin(), components[i].end(), *target)) {
      component_id = static_cast<int>(i);
      component.nodes = std::move(components[i]);
      component.mask.assign(g.user_count(), 0);
      for (std::uint32_t n : component.nodes) component.mask[n] = 1;
      break;
    }
  }
  if (component_id < 0) throw EmptyResult("target not in any k-core component");

  CandidatePool pool = get_candidate_groups(g, component, *target, q);
  if (pool.empty()) throw EmptyResult("no valid candidate group of the requested size");
  for (CandidateGroup& cg : pool.groups) cg.component_id = component_id;

  AttentionWeights weights = attention_scores(pool, q.target, model_, prefs_);
  std::size_t best = select_group(weights);

  GroupChoice choice;
  choice.group = pool.groups[best];
  choice.group_score = weights.group_score[best];
  choice.topic = select_topic(q.target, choice.group_score, model_.topic_ids, model_);
  return choice;
}

std::shared_ptr<const SpatialIndex> Pipeline::index_for(TopicId topic) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = index_cache_.find(topic);
  if (it != index_cache_.end()) return it->second;

  std::vector<PoiId> ids;
  for (const auto& [id, poi] : ds_.network.pois)
    if (poi.topic == topic) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  std::vector<PoiEntry> entries;
  entries.reserve(ids.size());
  for (PoiId id : ids) {
    const Poi& p = ds_.network.pois.at(id);
    entries.push_back(PoiEntry{id, project(p.lat, p.lon, ds_.origin), topic});
  }
  auto index = std::make_shared<const SpatialIndex>(SpatialIndex::build(std::move(entries)));
  index_cache_.emplace(topic, index);
  return index;
}

Recommendation Pipeline::recommend(const Query& q) const {
  GroupChoice choice = social_group_category_query(q);

  std::vector<PlanarPoint> locs;
  for (UserId m : choice.group.members)
    if (auto p = current_location(m)) locs.push_back(*p);
  if (locs.empty())
    throw EmptyResult("no group member has a known current location");

  Recommendation rec;
  rec.group = choice.group.members;
  rec.topic = choice.topic;
  rec.topic_label = ds_.network.topics.has(choice.topic)
                        ? ds_.network.topics.label(choice.topic)
                        : "topic#" + std::to_string(choice.topic);
  rec.group_score = choice.group_score;
  rec.locations = spa_df(*index_for(choice.topic), locs, static_cast<std::size_t>(q.top_k));
  return rec;
}

void write_ann_csv(std::ostream& os, const AnnResult& result) {
  os << "rank,poi_id,adist_meters\n";
  char buf[64];
  for (std::size_t i = 0; i < result.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.3f", result[i].adist);
    os << (i + 1) << ',' << result[i].poi << ',' << buf << '\n';
  }
}

std::vector<GroupObservation> group_observations(const Dataset& ds) {
  std::map<std::pair<PoiId, std::int64_t>, UserId> anchor;
  for (const CheckIn& ci : ds.network.checkins) {
    auto [it, inserted] = anchor.try_emplace({ci.poi, ci.time}, ci.user);
    if (!inserted && ci.user < it->second) it->second = ci.user;
  }

  std::vector<GroupObservation> obs;
  obs.reserve(ds.split.train.size());
  for (const GroupEvent& ev : ds.split.train) {
    GroupObservation o;
    o.members = ev.members;
    auto it = anchor.find({ev.poi, ev.time});
    o.target = it != anchor.end() &&
                       std::binary_search(ev.members.begin(), ev.members.end(), it->second)
                   ? it->second
                   : ev.members.front();
    obs.push_back(std::move(o));
  }
  return obs;
}

TrainOutput train_on_dataset(const Dataset& ds, const TrainConfig& cfg) {
  const auto poi_topics = ds.network.poi_topics();
  const auto vocab = ds.network.topics.all_ids();

  TrainOutput out;
  std::vector<UserId> users(ds.network.graph.users().begin(), ds.network.graph.users().end());
  out.model =
      AttentionModel::init(std::move(users), vocab, cfg.dim, seed_for(cfg.seed, "model.init"));
  out.model.lambda = cfg.lambda;

  PreferenceTable prefs =
      PreferenceTable::build(ds.network.checkins, poi_topics, ds.network.topics.size());
  auto visited = visited_topics(ds.network.checkins, poi_topics);
  TrainingSet ts = build_training_set(group_observations(ds), prefs, visited, vocab,
                                      cfg.neg_ratio, seed_for(cfg.seed, "train.pairs"));

  TrainOptions opt;
  opt.epochs = cfg.epochs;
  opt.lr = cfg.lr;
  out.losses = train_abpr(out.model, ts, opt);
  return out;
}

}  // namespace agsgr
