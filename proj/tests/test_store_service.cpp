#include <doctest.h>

#include <fstream>
#include <thread>

#include "hijaiyah/analytics.hpp"
#include "hijaiyah/error.hpp"
#include "hijaiyah/progress.hpp"
#include "hijaiyah/store.hpp"
#include "support/event_fixtures.hpp"
#include "support/service_fixtures.hpp"

using namespace hijaiyah;

namespace {

PlayerProfile add_player(SyncService& svc, Rng& rng, int class_level = 3) {
  return svc.create_profile({fx::player(rng), "Aisyah", 8, class_level});
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::io;  // sentinel: not expected in these tests
}

}  // namespace

TEST_CASE("profiles") {
  Rng rng(1);
  auto svc = fx::make_service();
  const auto p = add_player(svc, rng);
  CHECK(svc.profile(p.player_id)->display_name == "Aisyah");
  CHECK(code_of([&] { svc.create_profile({p.player_id, "Again", 8, 3}); }) == Errc::duplicate_profile);
  const auto generated = svc.create_profile({std::nullopt, "Budi", 9, 4});
  CHECK(generated.player_id != p.player_id);
  CHECK(svc.profiles().size() == 2);
  CHECK_THROWS_AS(profile_request_from_json({{"display_name", "x"}, {"age", 3}, {"class_level", 1}}), Error);
  CHECK_THROWS_AS(profile_request_from_json({{"display_name", "x"}, {"age", 8}, {"class_level", 7}}), Error);
  CHECK_THROWS_AS(profile_request_from_json({{"age", 8}, {"class_level", 2}}), Error);
  CHECK(profile_from_json(to_json(p)) == p);
  CHECK(CohortSelector::parse("all").matches(p));
  CHECK(CohortSelector::parse("3").matches(p));
  CHECK_FALSE(CohortSelector::parse("2").matches(p));
  CHECK_THROWS_AS(CohortSelector::parse("7"), Error);
  CHECK_THROWS_AS(CohortSelector::parse("x"), Error);
}

TEST_CASE("append: accept, replay, atomic rejection") {
  Rng rng(2);
  auto svc = fx::make_service({}, [] { return fx::at("2026-02-09T12:00:00Z"); });
  const auto p = add_player(svc, rng);
  auto log = fx::random_log(rng, p.player_id, 5, fx::at("2026-02-09T10:00:00Z"));
  std::sort(log.begin(), log.end(), fold_order);

  const auto first = svc.append_events({p.player_id, log, {}});
  CHECK(first.accepted == 5);
  CHECK(first.duplicates == 0);
  CHECK(first.last_acked_event_id == log.back().event_id);
  CHECK(*first.record == fold_log(p.player_id, log, svc.fold_context()));

  const auto again = svc.append_events({p.player_id, log, {}});
  CHECK(again.accepted == 0);
  CHECK(again.duplicates == 5);
  CHECK(*again.record == *first.record);
  CHECK_FALSE(again.points_changed);
  CHECK(svc.event_count() == 5);

  // Server time stamped, client time untouched.
  const auto exported = svc.export_events(CohortSelector{});
  REQUIRE(exported.size() == 5);
  for (const auto& e : exported) CHECK(e.server_time == fx::at("2026-02-09T12:00:00Z"));

  // One bad event rejects the whole batch.
  auto bad = fx::random_log(rng, p.player_id, 4, fx::at("2026-02-10T10:00:00Z"));
  std::sort(bad.begin(), bad.end(), fold_order);
  bad[2] = fx::event(rng, p.player_id, EventKind::quiz_scored, {{"score", 140}}, bad[2].client_time);
  CHECK(code_of([&] { svc.append_events({p.player_id, bad, {}}); }) == Errc::malformed_payload);
  CHECK(svc.event_count() == 5);
  CHECK(*svc.record(p.player_id) == *first.record);

  auto foreign = bad;
  foreign[2] = fx::event(rng, fx::player(rng), EventKind::quiz_scored, {{"score", 40}}, bad[2].client_time);
  CHECK(code_of([&] { svc.append_events({p.player_id, foreign, {}}); }) == Errc::malformed_payload);
  CHECK(code_of([&] { svc.append_events({fx::player(rng), {}, {}}); }) == Errc::unknown_player);
  CHECK(code_of([&] { svc.record(fx::player(rng)); }) == Errc::unknown_player);
  CHECK(code_of([&] { svc.dashboard(fx::player(rng)); }) == Errc::unknown_player);
}

TEST_CASE("late events from a second device refold") {
  Rng rng(3);
  auto svc = fx::make_service();
  const auto p = add_player(svc, rng);
  auto a = fx::random_log(rng, p.player_id, 30, fx::at("2026-02-09T10:00:00Z"));
  auto b = fx::random_log(rng, p.player_id, 30, fx::at("2026-02-09T10:00:00Z"));
  std::sort(a.begin(), a.end(), fold_order);
  std::sort(b.begin(), b.end(), fold_order);
  for (std::size_t i = 0; i < 30; i += 10) {
    svc.append_events({p.player_id, {a.begin() + i, a.begin() + i + 10}, {}});
    svc.append_events({p.player_id, {b.begin() + i, b.begin() + i + 10}, {}});
  }
  auto all = a;
  all.insert(all.end(), b.begin(), b.end());
  CHECK(*svc.record(p.player_id) == fold_log(p.player_id, all, svc.fold_context()));
}

TEST_CASE("durability across restart and snapshot = fold(log)") {
  Rng rng(4);
  fx::TempDir dir("svc");
  std::vector<PlayerProfile> players;
  std::vector<std::vector<SessionEvent>> logs;
  {
    auto svc = fx::make_service(dir.path);
    for (int i = 0; i < 3; ++i) {
      players.push_back(add_player(svc, rng, i + 1));
      auto log = fx::random_log(rng, players.back().player_id, 40, fx::at("2026-02-09T10:00:00Z"));
      std::sort(log.begin(), log.end(), fold_order);
      for (std::size_t k = 0; k < 40; k += 8) svc.append_events({players.back().player_id, {log.begin() + k, log.begin() + k + 8}, {}});
      logs.push_back(log);
    }
  }
  auto svc = fx::make_service(dir.path);
  CHECK(svc.profiles().size() == 3);
  CHECK(svc.event_count() == 120);
  EventStore store(dir.path);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& id = players[i].player_id;
    CHECK(*svc.profile(id) == players[i]);
    const auto replay = fold_log(id, store.load_events(id), svc.fold_context());
    CHECK(*svc.record(id) == replay);
    REQUIRE(store.load_snapshot(id));
    CHECK(*store.load_snapshot(id) == replay);
    CHECK(store.load_events(id).size() == 40);
  }
  // Replayed batches after restart are still duplicates.
  CHECK(svc.append_events({players[0].player_id, logs[0], {}}).duplicates == 40);
}

TEST_CASE("torn tail and stale snapshot") {
  Rng rng(5);
  fx::TempDir dir("torn");
  PlayerProfile p;
  std::vector<SessionEvent> log;
  {
    ServiceConfig cfg;
    cfg.data_dir = dir.path;
    cfg.snapshot_every = 1000;  // snapshot never rewritten after the first batch
    SyncService svc(fx::shared_catalog(), fx::badges(), cfg);
    p = add_player(svc, rng);
    log = fx::random_log(rng, p.player_id, 20, fx::at("2026-02-09T10:00:00Z"));
    std::sort(log.begin(), log.end(), fold_order);
    svc.append_events({p.player_id, {log.begin(), log.begin() + 10}, {}});
    svc.append_events({p.player_id, {log.begin() + 10, log.end()}, {}});
  }
  for (const auto& f : std::filesystem::directory_iterator(dir.path / "events")) {
    std::ofstream(f.path(), std::ios::app) << R"({"event_id":"trunc)";
  }
  auto svc = fx::make_service(dir.path);
  CHECK(*svc.record(p.player_id) == fold_log(p.player_id, log, svc.fold_context()));
}

TEST_CASE("player dashboard arithmetic") {
  Rng rng(6);
  auto svc = fx::make_service();
  const auto p = add_player(svc, rng);
  CHECK(svc.dashboard(p.player_id).sessions == 0);
  CHECK(svc.dashboard(p.player_id).sessions_per_day == 0);
  CHECK(svc.dashboard(p.player_id).completion_rates == std::array<double, 3>{});

  // 12 sessions over 4 weeks on 10 distinct days, 2..13 minutes, evaluation done in 9.
  std::vector<SessionEvent> log;
  const auto day0 = fx::at("2026-02-09T15:00:00Z");
  const int day_of[12] = {0, 0, 2, 4, 7, 9, 9, 11, 14, 16, 18, 21};
  double minutes = 0;
  for (int i = 0; i < 12; ++i) {
    const auto t = day0 + std::chrono::hours(24 * day_of[i]) + std::chrono::hours(i % 2);
    const auto sid = "s" + std::to_string(i);
    log.push_back(fx::event(rng, p.player_id, EventKind::session_start, {{"session_id", sid}}, t));
    nlohmann::json phases = {"introduction", "practice"};
    if (i < 9) phases.push_back("evaluation");
    log.push_back(fx::event(rng, p.player_id, EventKind::session_end, {{"session_id", sid}, {"phases_completed", phases}},
                            t + std::chrono::minutes(2 + i)));
    minutes += 2 + i;
  }
  std::sort(log.begin(), log.end(), fold_order);
  svc.append_events({p.player_id, log, {}});
  const auto d = svc.dashboard(p.player_id);
  CHECK(d.sessions == 12);
  CHECK(d.active_days == 10);
  CHECK(d.sessions_per_day == doctest::Approx(1.2));
  CHECK(d.total_minutes == doctest::Approx(minutes));
  CHECK(d.mean_session_minutes == doctest::Approx(minutes / 12));
  CHECK(d.completion_rates[0] == 1.0);
  CHECK(d.completion_rates[2] == doctest::Approx(0.75));
  CHECK(d.total_points == 60);  // three weeks reach 3 sessions
}

TEST_CASE("cohort dashboard equals the analytics recomputation") {
  const auto sim = fx::small_sim(50, 4, 7);
  auto svc = fx::make_service();
  CHECK(fx::ingest(svc, sim) == sim.events.size());
  const auto all = svc.dashboard(CohortSelector{});
  const auto exported = svc.export_events(CohortSelector{});
  CHECK(exported.size() == sim.events.size());
  const auto eng = analytics::engagement_report(exported);

  CHECK(all.players == 50);
  CHECK(all.active_players == eng.students);
  CHECK(all.total_points == eng.total_points);
  CHECK(all.sessions_per_day.mean == doctest::Approx(eng.sessions_per_day.mean).epsilon(1e-12));
  CHECK(all.sessions_per_day.sd == doctest::Approx(eng.sessions_per_day.sd).epsilon(1e-12));
  CHECK(all.session_minutes.mean == doctest::Approx(eng.session_minutes.mean).epsilon(1e-12));
  CHECK(all.session_minutes.sd == doctest::Approx(eng.session_minutes.sd).epsilon(1e-12));
  CHECK(all.points_per_player.mean == doctest::Approx(eng.points_per_student.mean).epsilon(1e-12));

  // Per-class cohorts partition the whole.
  std::size_t players = 0;
  std::int64_t points = 0;
  std::size_t events = 0;
  for (int c = 1; c <= 6; ++c) {
    const auto d = svc.dashboard(CohortSelector{c});
    players += d.players;
    points += d.total_points;
    events += svc.export_events(CohortSelector{c}).size();
  }
  CHECK(players == 50);
  CHECK(points == all.total_points);
  CHECK(events == exported.size());
}

TEST_CASE("leaderboard through the service and push notices") {
  Rng rng(7);
  auto svc = fx::make_service();
  CHECK(svc.leaderboard(economy::Scope::all_time, fx::at("2026-02-09T12:00:00Z")).empty());
  std::vector<PushNotice> notices;
  svc.subscribe([&](const PushNotice& n) { notices.push_back(n); });
  const auto a = add_player(svc, rng);
  const auto b = add_player(svc, rng);
  const auto t = fx::at("2026-02-09T10:00:00Z");
  svc.append_events({a.player_id, {fx::event(rng, a.player_id, EventKind::quiz_scored, {{"score", 90}, {"letters", {"jim"}}}, t)}, {}});
  svc.append_events({b.player_id, {fx::event(rng, b.player_id, EventKind::matching_scored, {{"score", 40}}, t)}, {}});
  svc.append_events({b.player_id, {fx::event(rng, b.player_id, EventKind::session_end, {{"session_id", "x"}}, t)}, {}});
  REQUIRE(notices.size() == 2);
  CHECK(notices[0].player_id == a.player_id);
  CHECK(notices[0].leaderboard_changed);
  CHECK(notices[0].badges.size() == 1);
  const auto board = svc.leaderboard(economy::Scope::daily, fx::at("2026-02-09T23:00:00Z"));
  REQUIRE(board.size() == 2);
  CHECK(board[0].player_id == a.player_id);
  CHECK(svc.leaderboard(economy::Scope::daily, fx::at("2026-02-10T00:00:00Z")).empty());
}

TEST_CASE("concurrent uploads for many players") {
  const auto sim = fx::small_sim(16, 2, 3);
  auto svc = fx::make_service();
  for (const auto& p : sim.profiles) svc.create_profile({p.player_id, p.display_name, p.age, p.class_level});
  std::vector<std::thread> threads;
  for (int w = 0; w < 4; ++w) {
    threads.emplace_back([&, w] {
      // Every worker uploads every event in its own chunking; duplicates collapse.
      for (std::size_t i = static_cast<std::size_t>(w); i < sim.events.size(); i += 7) {
        const auto& e = sim.events[i];
        svc.append_events({e.player_id, {e}, {}});
      }
      for (const auto& e : sim.events) svc.append_events({e.player_id, {e}, {}});
    });
  }
  for (auto& t : threads) t.join();
  CHECK(svc.event_count() == sim.events.size());
  for (const auto& p : sim.profiles) {
    std::vector<SessionEvent> mine;
    for (const auto& e : sim.events)
      if (e.player_id == p.player_id) mine.push_back(e);
    CHECK(*svc.record(p.player_id) == fold_log(p.player_id, mine, svc.fold_context()));
  }
}
