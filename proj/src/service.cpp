#include "hijaiyah/service.hpp"

#include <algorithm>
#include <charconv>
#include <thread>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"

namespace hijaiyah {

using nlohmann::json;

namespace {

Timestamp system_now() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

int int_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer())
    throw Error(Errc::schema, fmt::format("profile field '{}' must be an integer", key));
  return it->get<int>();
}

void check_profile_ranges(int age, int class_level) {
  if (age < 4 || age > 17) throw Error(Errc::schema, fmt::format("profile age {} outside 4..17", age));
  if (class_level < 1 || class_level > 6)
    throw Error(Errc::schema, fmt::format("profile class_level {} outside 1..6", class_level));
}

std::string name_field(const json& j) {
  auto it = j.find("display_name");
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty())
    throw Error(Errc::schema, "profile field 'display_name' must be a non-empty string");
  return it->get<std::string>();
}

}  // namespace

json to_json(const PlayerProfile& p) {
  return {{"player_id", p.player_id.str()},
          {"display_name", p.display_name},
          {"age", p.age},
          {"class_level", p.class_level},
          {"created_at", format_rfc3339(p.created_at)}};
}

PlayerProfile profile_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::schema, "profile must be an object");
  PlayerProfile p;
  auto id = j.find("player_id");
  if (id == j.end() || !id->is_string()) throw Error(Errc::schema, "profile field 'player_id' must be a string");
  p.player_id = PlayerId(id->get<std::string>());
  p.display_name = name_field(j);
  p.age = int_field(j, "age");
  p.class_level = int_field(j, "class_level");
  check_profile_ranges(p.age, p.class_level);
  auto at = j.find("created_at");
  if (at == j.end() || !at->is_string()) throw Error(Errc::schema, "profile field 'created_at' must be a string");
  p.created_at = parse_rfc3339(at->get<std::string>());
  return p;
}

ProfileRequest profile_request_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::schema, "profile must be an object");
  ProfileRequest r;
  if (auto id = j.find("player_id"); id != j.end() && !id->is_null()) {
    if (!id->is_string()) throw Error(Errc::schema, "profile field 'player_id' must be a string");
    r.player_id = PlayerId(id->get<std::string>());
  }
  r.display_name = name_field(j);
  r.age = int_field(j, "age");
  r.class_level = int_field(j, "class_level");
  check_profile_ranges(r.age, r.class_level);
  return r;
}

CohortSelector CohortSelector::parse(std::string_view text) {
  if (text.empty() || text == "all") return {};
  int level = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), level);
  if (ec != std::errc{} || ptr != text.data() + text.size() || level < 1 || level > 6)
    throw Error(Errc::invalid_argument, fmt::format("cohort must be 'all' or a class level 1..6, got '{}'", text));
  return CohortSelector{level};
}

Dashboard make_dashboard(const PlayerProfile& profile, const ProgressRecord& record) {
  Dashboard d;
  d.player_id = profile.player_id;
  d.display_name = profile.display_name;
  d.level = record.level.level;
  const auto& s = record.sessions;
  d.sessions = s.count;
  d.active_days = s.active_days();
  d.sessions_per_day = d.active_days > 0 ? static_cast<double>(s.count) / d.active_days : 0.0;
  d.total_minutes = s.total_minutes;
  d.mean_session_minutes = s.paired > 0 ? s.total_minutes / s.paired : 0.0;
  d.total_points = record.ledger.total();
  for (std::size_t i = 0; i < 3; ++i)
    d.completion_rates[i] = s.count > 0 ? static_cast<double>(s.phases_completed[i]) / s.count : 0.0;
  for (const auto& [id, lp] : record.letters)
    if (lp.mastered_at) d.mastered.push_back(id);
  for (const auto& b : record.badges) d.badges.push_back(b.rule_id);
  return d;
}

namespace {

json rates_json(const std::array<double, 3>& r) {
  return {{"introduction", r[0]}, {"practice", r[1]}, {"evaluation", r[2]}};
}

json mean_sd_json(const stats::MeanSd<double>& m) { return {{"mean", m.mean}, {"sd", m.sd}, {"n", m.n}}; }

}  // namespace

json to_json(const Dashboard& d) {
  return {{"player_id", d.player_id.str()},
          {"display_name", d.display_name},
          {"level", d.level},
          {"sessions", d.sessions},
          {"active_days", d.active_days},
          {"sessions_per_day", d.sessions_per_day},
          {"mean_session_minutes", d.mean_session_minutes},
          {"total_minutes", d.total_minutes},
          {"total_points", d.total_points},
          {"completion_rates", rates_json(d.completion_rates)},
          {"mastered", d.mastered},
          {"badges", d.badges}};
}

json to_json(const CohortDashboard& d) {
  return {{"cohort", d.cohort},
          {"players", d.players},
          {"active_players", d.active_players},
          {"sessions_per_day", mean_sd_json(d.sessions_per_day)},
          {"session_minutes", mean_sd_json(d.session_minutes)},
          {"total_points", d.total_points},
          {"points_per_player", mean_sd_json(d.points_per_player)},
          {"completion_rates", rates_json(d.completion_rates)},
          {"mean_letters_mastered", d.mean_letters_mastered}};
}

// --- SyncService --------------------------------------------------------------

SyncService::SyncService(std::shared_ptr<const Catalog> catalog, std::vector<economy::BadgeRule> rules,
                         ServiceConfig config, Clock clock)
    : catalog_(std::move(catalog)), rules_(std::move(rules)), config_(std::move(config)), clock_(std::move(clock)) {
  if (!catalog_) throw Error(Errc::invalid_argument, "service needs a catalog");
  if (!clock_) clock_ = system_now;
  if (config_.snapshot_every == 0) config_.snapshot_every = 1;
  if (!config_.data_dir.empty()) {
    store_.emplace(config_.data_dir);
    load_from_store();
  }
}

FoldContext SyncService::fold_context() const noexcept {
  return FoldContext{rules_, config_.tz, config_.challenge_sessions_target};
}

void SyncService::load_from_store() {
  const auto ctx = fold_context();
  for (const auto& j : store_->load_profiles()) {
    auto state = std::make_unique<PlayerState>();
    state->profile = profile_from_json(j);
    const auto id = state->profile.player_id;
    std::vector<SessionEvent> log;
    std::unordered_set<std::string> own;
    for (auto& e : store_->load_events(id))
      if (own.insert(e.event_id.str()).second) log.push_back(std::move(e));
    std::sort(log.begin(), log.end(), fold_order);
    for (const auto& e : log) seen_events_.insert(e.event_id.str());

    auto snap = store_->load_snapshot(id);
    if (snap && snap->player_id == id && snap->events_folded == log.size()) {
      state->snapshot = std::make_shared<const ProgressRecord>(std::move(*snap));
    } else {
      state->snapshot = std::make_shared<const ProgressRecord>(fold_log(id, log, ctx));
    }
    state->log = std::move(log);
    players_.emplace(id, std::move(state));
  }
}

SyncService::PlayerState* SyncService::find(const PlayerId& id) const {
  std::shared_lock lock(players_mutex_);
  auto it = players_.find(id);
  return it == players_.end() ? nullptr : it->second.get();
}

std::shared_ptr<const ProgressRecord> SyncService::snapshot_of(const PlayerState& state) const {
  std::lock_guard lock(snapshot_mutex_);
  return state.snapshot;
}

void SyncService::publish(PlayerState& state, std::shared_ptr<const ProgressRecord> record) {
  std::lock_guard lock(snapshot_mutex_);
  state.snapshot = std::move(record);
}

PlayerProfile SyncService::create_profile(const ProfileRequest& request) {
  check_profile_ranges(request.age, request.class_level);
  if (request.display_name.empty()) throw Error(Errc::schema, "profile field 'display_name' must be a non-empty string");

  auto state = std::make_unique<PlayerState>();
  auto& p = state->profile;
  if (request.player_id) {
    p.player_id = *request.player_id;
  } else {
    thread_local Rng rng(static_cast<std::uint64_t>(to_unix_ms(system_now())) ^
                         std::hash<std::thread::id>{}(std::this_thread::get_id()));
    p.player_id = PlayerId(make_uuid(rng));
  }
  p.display_name = request.display_name;
  p.age = request.age;
  p.class_level = request.class_level;
  p.created_at = clock_();
  state->snapshot = std::make_shared<const ProgressRecord>(empty_record(p.player_id));

  std::unique_lock lock(players_mutex_);
  if (players_.contains(p.player_id))
    throw Error(Errc::duplicate_profile, fmt::format("profile {} already exists", p.player_id.str()));
  if (store_) {
    std::lock_guard file_lock(profile_file_mutex_);
    store_->append_profile(to_json(p));
  }
  PlayerProfile out = p;
  players_.emplace(out.player_id, std::move(state));
  return out;
}

std::optional<PlayerProfile> SyncService::profile(const PlayerId& id) const {
  if (auto* s = find(id)) return s->profile;
  return std::nullopt;
}

std::vector<PlayerProfile> SyncService::profiles() const {
  std::shared_lock lock(players_mutex_);
  std::vector<PlayerProfile> out;
  out.reserve(players_.size());
  for (const auto& [id, s] : players_) out.push_back(s->profile);
  return out;
}

AppendResult SyncService::append_events(const SyncEnvelope& envelope) {
  PlayerState* state = find(envelope.player_id);
  if (!state) throw Error(Errc::unknown_player, fmt::format("unknown player {}", envelope.player_id.str()));

  // Whole-batch validation before anything is touched.
  for (std::size_t i = 0; i < envelope.events.size(); ++i) {
    const auto& e = envelope.events[i];
    if (e.player_id != envelope.player_id)
      throw Error(Errc::malformed_payload, fmt::format("events[{}] belongs to another player", i));
    if (i > 0 && e.client_time < envelope.events[i - 1].client_time)
      throw Error(Errc::malformed_payload, fmt::format("events[{}] breaks client_time order", i));
    try {
      validate_payload(e, catalog_.get());
    } catch (const Error& err) {
      throw Error(Errc::malformed_payload, fmt::format("events[{}]: {}", i, err.what()));
    }
  }

  AppendResult result;
  result.last_acked_event_id = envelope.events.empty() ? envelope.last_acked_event_id
                                                       : std::optional(envelope.events.back().event_id);
  PushNotice notice{envelope.player_id, false, {}};
  {
    std::lock_guard write_lock(state->write_mutex);
    const Timestamp ingest = clock_();

    std::vector<SessionEvent> fresh;
    {
      std::lock_guard seen_lock(seen_mutex_);
      for (const auto& e : envelope.events) {
        if (!seen_events_.insert(e.event_id.str()).second) {
          ++result.duplicates;
          continue;
        }
        auto copy = e;
        copy.server_time = ingest;
        fresh.push_back(std::move(copy));
      }
    }

    auto before = snapshot_of(*state);
    if (fresh.empty()) {
      result.record = before;
      return result;
    }

    if (store_) {
      try {
        store_->append_events(envelope.player_id, fresh);
      } catch (...) {
        std::lock_guard seen_lock(seen_mutex_);
        for (const auto& e : fresh) seen_events_.erase(e.event_id.str());
        throw;
      }
    }

    std::sort(fresh.begin(), fresh.end(), fold_order);
    const auto ctx = fold_context();
    const bool appends_at_tail = state->log.empty() || fold_order(state->log.back(), fresh.front());
    std::shared_ptr<const ProgressRecord> after;
    if (appends_at_tail) {
      auto next = *before;
      for (const auto& e : fresh) fold_into(next, e, ctx);
      state->log.insert(state->log.end(), fresh.begin(), fresh.end());
      after = std::make_shared<const ProgressRecord>(std::move(next));
    } else {
      // Late arrivals from another device: merge and refold from empty.
      std::vector<SessionEvent> merged;
      merged.reserve(state->log.size() + fresh.size());
      std::merge(state->log.begin(), state->log.end(), fresh.begin(), fresh.end(), std::back_inserter(merged),
                 fold_order);
      state->log = std::move(merged);
      after = std::make_shared<const ProgressRecord>(fold_log(envelope.player_id, state->log, ctx));
    }

    result.accepted = fresh.size();
    for (const auto& b : after->badges)
      if (!before->has_badge(b.rule_id)) result.new_badges.push_back(b);
    result.points_changed = after->ledger.total() != before->ledger.total() ||
                            after->ledger.entries().size() != before->ledger.entries().size();
    result.record = after;
    publish(*state, after);

    if (store_ && ++state->batches_since_snapshot >= config_.snapshot_every) {
      store_->write_snapshot(*after);
      state->batches_since_snapshot = 0;
    }
    notice.leaderboard_changed = result.points_changed;
    notice.badges = result.new_badges;
  }

  if (notice.leaderboard_changed || !notice.badges.empty()) {
    std::vector<std::function<void(const PushNotice&)>> listeners;
    {
      std::lock_guard lock(listeners_mutex_);
      listeners = listeners_;
    }
    for (const auto& l : listeners) l(notice);
  }
  return result;
}

std::shared_ptr<const ProgressRecord> SyncService::record(const PlayerId& id) const {
  auto* s = find(id);
  if (!s) throw Error(Errc::unknown_player, fmt::format("unknown player {}", id.str()));
  return snapshot_of(*s);
}

std::vector<economy::LeaderboardEntry> SyncService::leaderboard(economy::Scope scope, Timestamp now) const {
  std::vector<std::pair<PlayerProfile, std::shared_ptr<const ProgressRecord>>> snaps;
  {
    std::shared_lock lock(players_mutex_);
    for (const auto& [id, s] : players_) snaps.emplace_back(s->profile, snapshot_of(*s));
  }
  std::vector<economy::LedgerView> views;
  views.reserve(snaps.size());
  for (const auto& [p, r] : snaps) views.push_back({p.player_id, p.display_name, &r->ledger});
  return economy::leaderboard(scope, now, views, config_.tz);
}

Dashboard SyncService::dashboard(const PlayerId& id) const {
  auto* s = find(id);
  if (!s) throw Error(Errc::unknown_player, fmt::format("unknown player {}", id.str()));
  return make_dashboard(s->profile, *snapshot_of(*s));
}

CohortDashboard SyncService::dashboard(const CohortSelector& cohort) const {
  CohortDashboard out;
  out.cohort = cohort.class_level ? std::to_string(*cohort.class_level) : "all";
  std::vector<std::pair<PlayerProfile, std::shared_ptr<const ProgressRecord>>> snaps;
  {
    std::shared_lock lock(players_mutex_);
    for (const auto& [id, s] : players_)
      if (cohort.matches(s->profile)) snaps.emplace_back(s->profile, snapshot_of(*s));
  }
  out.players = snaps.size();
  std::vector<double> per_day, minutes, points;
  std::array<double, 3> rate_sum{};
  std::size_t with_sessions = 0;
  double mastered = 0;
  for (const auto& [p, r] : snaps) {
    if (r->events_folded == 0) continue;
    ++out.active_players;
    const auto d = make_dashboard(p, *r);
    if (d.sessions > 0) {
      per_day.push_back(d.sessions_per_day);
      ++with_sessions;
      for (std::size_t i = 0; i < 3; ++i) rate_sum[i] += d.completion_rates[i];
    }
    if (r->sessions.paired > 0) minutes.push_back(d.mean_session_minutes);
    points.push_back(static_cast<double>(d.total_points));
    out.total_points += d.total_points;
    mastered += static_cast<double>(d.mastered.size());
  }
  out.sessions_per_day = stats::mean_sd(std::span<const double>(per_day));
  out.session_minutes = stats::mean_sd(std::span<const double>(minutes));
  out.points_per_player = stats::mean_sd(std::span<const double>(points));
  if (with_sessions > 0)
    for (std::size_t i = 0; i < 3; ++i) out.completion_rates[i] = rate_sum[i] / static_cast<double>(with_sessions);
  if (out.active_players > 0) out.mean_letters_mastered = mastered / static_cast<double>(out.active_players);
  return out;
}

std::vector<SessionEvent> SyncService::export_events(const CohortSelector& cohort) const {
  std::vector<PlayerState*> states;
  {
    std::shared_lock lock(players_mutex_);
    for (const auto& [id, s] : players_)
      if (cohort.matches(s->profile)) states.push_back(s.get());
  }
  std::vector<SessionEvent> out;
  for (auto* s : states) {
    std::lock_guard lock(s->write_mutex);
    out.insert(out.end(), s->log.begin(), s->log.end());
  }
  return out;
}

std::size_t SyncService::event_count() const {
  std::lock_guard lock(seen_mutex_);
  return seen_events_.size();
}

void SyncService::subscribe(std::function<void(const PushNotice&)> listener) {
  std::lock_guard lock(listeners_mutex_);
  listeners_.push_back(std::move(listener));
}

}  // namespace hijaiyah
