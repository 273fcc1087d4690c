#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "hijaiyah/catalog.hpp"
#include "hijaiyah/economy.hpp"
#include "hijaiyah/progress.hpp"
#include "hijaiyah/stats.hpp"
#include "hijaiyah/store.hpp"

namespace hijaiyah {

struct PlayerProfile {
  PlayerId player_id;
  std::string display_name;
  int age = 0;
  int class_level = 0;
  Timestamp created_at{};
  bool operator==(const PlayerProfile&) const = default;
};

nlohmann::json to_json(const PlayerProfile& p);
PlayerProfile profile_from_json(const nlohmann::json& j);

struct ProfileRequest {
  std::optional<PlayerId> player_id;  // generated when absent
  std::string display_name;
  int age = 0;
  int class_level = 0;
};

/// Throws Error{schema} for a missing name, age outside 4..17 or class outside 1..6.
ProfileRequest profile_request_from_json(const nlohmann::json& j);

/// `all` or a class level `1`..`6`.
struct CohortSelector {
  std::optional<int> class_level;
  static CohortSelector parse(std::string_view text);
  bool matches(const PlayerProfile& p) const noexcept { return !class_level || *class_level == p.class_level; }
};

struct AppendResult {
  std::size_t accepted = 0;
  std::size_t duplicates = 0;
  std::shared_ptr<const ProgressRecord> record;
  std::optional<EventId> last_acked_event_id;
  std::vector<BadgeAward> new_badges;
  bool points_changed = false;
};

struct Dashboard {
  PlayerId player_id;
  std::string display_name;
  int level = learning::kMinLevel;
  int sessions = 0;
  int active_days = 0;
  double sessions_per_day = 0;
  double mean_session_minutes = 0;
  double total_minutes = 0;
  std::int64_t total_points = 0;
  std::array<double, 3> completion_rates{};  // introduction, practice, evaluation
  std::vector<std::string> mastered;
  std::vector<std::string> badges;
};

struct CohortDashboard {
  std::string cohort;
  std::size_t players = 0;
  std::size_t active_players = 0;  // players with at least one event
  stats::MeanSd<double> sessions_per_day;
  stats::MeanSd<double> session_minutes;
  std::int64_t total_points = 0;
  stats::MeanSd<double> points_per_player;
  std::array<double, 3> completion_rates{};
  double mean_letters_mastered = 0;
};

Dashboard make_dashboard(const PlayerProfile& profile, const ProgressRecord& record);
nlohmann::json to_json(const Dashboard& d);
nlohmann::json to_json(const CohortDashboard& d);

/// What subscribers learn after an accepted batch.
struct PushNotice {
  PlayerId player_id;
  bool leaderboard_changed = false;
  std::vector<BadgeAward> badges;
};

struct ServiceConfig {
  std::filesystem::path data_dir;  // empty: in-memory only
  UtcOffset tz{};
  int challenge_sessions_target = 3;
  std::size_t snapshot_every = 1;  // batches between snapshot writes
};

/// Offline-first progress store: profiles, de-duplicated event sets and the
/// folded per-player records. Ingest is serialized per player; reads work on
/// immutable snapshots.
class SyncService {
 public:
  using Clock = std::function<Timestamp()>;

  SyncService(std::shared_ptr<const Catalog> catalog, std::vector<economy::BadgeRule> rules, ServiceConfig config,
              Clock clock = {});

  const Catalog& catalog() const noexcept { return *catalog_; }
  std::span<const economy::BadgeRule> badge_rules() const noexcept { return rules_; }
  FoldContext fold_context() const noexcept;
  Timestamp now() const { return clock_(); }

  /// Throws Error{duplicate_profile} when the requested id exists.
  PlayerProfile create_profile(const ProfileRequest& request);
  std::optional<PlayerProfile> profile(const PlayerId& id) const;
  std::vector<PlayerProfile> profiles() const;

  /// Atomic: either every unseen event is persisted and folded or none is.
  /// Throws Error{unknown_player} / Error{malformed_payload}.
  AppendResult append_events(const SyncEnvelope& envelope);

  /// Throws Error{unknown_player}.
  std::shared_ptr<const ProgressRecord> record(const PlayerId& id) const;

  std::vector<economy::LeaderboardEntry> leaderboard(economy::Scope scope, Timestamp now) const;
  Dashboard dashboard(const PlayerId& id) const;
  CohortDashboard dashboard(const CohortSelector& cohort) const;

  /// Events of matching players; players by id, events in fold order.
  std::vector<SessionEvent> export_events(const CohortSelector& cohort) const;
  std::size_t event_count() const;

  void subscribe(std::function<void(const PushNotice&)> listener);

 private:
  struct PlayerState {
    PlayerProfile profile;
    std::mutex write_mutex;
    std::vector<SessionEvent> log;  // fold order
    std::shared_ptr<const ProgressRecord> snapshot;
    std::size_t batches_since_snapshot = 0;
  };

  PlayerState* find(const PlayerId& id) const;
  std::shared_ptr<const ProgressRecord> snapshot_of(const PlayerState& state) const;
  void publish(PlayerState& state, std::shared_ptr<const ProgressRecord> record);
  void load_from_store();

  std::shared_ptr<const Catalog> catalog_;
  std::vector<economy::BadgeRule> rules_;
  ServiceConfig config_;
  Clock clock_;
  std::optional<EventStore> store_;

  mutable std::shared_mutex players_mutex_;
  std::map<PlayerId, std::unique_ptr<PlayerState>> players_;

  mutable std::mutex seen_mutex_;
  std::unordered_set<std::string> seen_events_;

  mutable std::mutex snapshot_mutex_;

  std::mutex listeners_mutex_;
  std::vector<std::function<void(const PushNotice&)>> listeners_;

  std::mutex profile_file_mutex_;
};

}  // namespace hijaiyah
