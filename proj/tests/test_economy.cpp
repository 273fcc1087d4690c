#include <doctest.h>

#include "hijaiyah/economy.hpp"
#include "hijaiyah/error.hpp"
#include "support/fixtures.hpp"
#include "support/leaderboard_oracle.hpp"

using namespace hijaiyah;
using namespace hijaiyah::economy;

TEST_CASE("matching score") {
  CHECK(matching_score({3, 30, 2}) == 60);
  CHECK(matching_score({3, 0, 0}) == 100);
  CHECK(matching_score({4, 120, 10}) == 0);
  CHECK(matching_score({4, 12.4, 1}) == 83);
  CHECK(matching_score({4, 12.6, 1}) == 82);
  CHECK(MatchingRound{4, 0, 0}.cards() == 8);
  for (int m = 0; m < 12; ++m) {
    for (double s = 0; s < 130; s += 0.7) {
      const int a = matching_score({3, s, m});
      CHECK(a >= 0);
      CHECK(a <= 100);
      CHECK(matching_score({3, s + 0.7, m}) <= a);
      CHECK(matching_score({3, s, m + 1}) <= a);
    }
  }
  CHECK_THROWS_AS(matching_score({2, 10, 0}), Error);
  CHECK_THROWS_AS(matching_score({5, 10, 0}), Error);
  CHECK_THROWS_AS(matching_score({3, 10, -1}), Error);
  CHECK_THROWS_AS(matching_score({3, -1, 0}), Error);
}

TEST_CASE("points ledger") {
  PointsLedger l;
  const auto t = fx::at("2026-02-09T10:00:00Z");
  l = award_points(l, {PointsSource::quiz, 85, t, false});
  CHECK(l.total() == 85);
  l = award_points(l, {PointsSource::quiz, 85, t, false});
  CHECK(l.total() == 170);
  l = award_points(l, {PointsSource::trace, 0, t, false});
  CHECK(l.entries().size() == 3);
  CHECK(l.total() == 170);
  l = award_points(l, {PointsSource::matching, 50, t, true});
  CHECK(l.entries().size() == 5);
  CHECK(l.entries().back().source == PointsSource::challenge);
  CHECK(l.total() == 240);
  l = award_challenge(l, t);
  CHECK(l.total() == 260);
  long long sum = 0;
  for (const auto& e : l.entries()) sum += e.points;
  CHECK(sum == l.total());
  CHECK_THROWS_AS(award_points(l, {PointsSource::quiz, 101, t, false}), Error);
  CHECK_THROWS_AS(l.append({PointsSource::quiz, -5, t}), Error);
}

TEST_CASE("badges") {
  Rng rng(4);
  ProgressRecord r;
  r.player_id = fx::player(rng);
  const auto& rules = fx::badges();
  const auto t = fx::at("2026-02-09T10:00:00Z");
  CHECK(evaluate_badges(r, rules, t).empty());

  r.letters["jim"].mastered_at = t;
  auto fresh = evaluate_badges(r, rules, t);
  REQUIRE(fresh.size() == 1);
  CHECK(fresh[0].rule_id == "mastered-jim");
  CHECK(fresh[0].player_id == r.player_id);
  r.badges = fresh;
  CHECK(evaluate_badges(r, rules, t).empty());

  for (const auto& l : fx::catalog().letters()) r.letters[l.id].mastered_at = t;
  fresh = evaluate_badges(r, rules, t);
  CHECK(fresh.size() == 28);  // 27 letters + capstone
  CHECK(std::any_of(fresh.begin(), fresh.end(), [](const BadgeAward& b) { return b.rule_id == "all-letters"; }));

  // Rule file shape.
  std::set<std::string> ids;
  for (const auto& rule : rules) CHECK(ids.insert(rule.id).second);
  CHECK(rules.size() > 30);
  CHECK_THROWS_AS(badge_rules_from_json(nlohmann::json::parse(R"([{"id":"x","kind":"bogus"}])")), Error);
  CHECK_THROWS_AS(badge_rules_from_json(nlohmann::json::parse(R"([{"id":"x","kind":"streak_days"}])")), Error);
}

TEST_CASE("weekly challenge") {
  ProgressRecord r;
  const IsoWeek w{2026, 7};
  const auto monday = iso_week_monday(w);
  CHECK_FALSE(weekly_challenge_status(r, {w, ChallengeTarget::sessions, 3, {}}).completed);
  r.sessions.per_day[monday] = 1;
  auto s = weekly_challenge_status(r, {w, ChallengeTarget::sessions, 3, {}});
  CHECK(s.progress == doctest::Approx(1.0 / 3));
  CHECK_FALSE(s.completed);
  r.sessions.per_day[monday + 2] = 1;
  r.sessions.per_day[monday + 7] = 4;  // next week does not count
  r.sessions.per_day[monday - 1] = 4;  // nor the previous Sunday
  CHECK_FALSE(weekly_challenge_status(r, {w, ChallengeTarget::sessions, 3, {}}).completed);
  r.sessions.per_day[monday + 6] = 1;
  s = weekly_challenge_status(r, {w, ChallengeTarget::sessions, 3, {}});
  CHECK(s.completed);
  CHECK(s.progress == 1.0);
  r.sessions.per_day[monday + 4] = 2;
  CHECK(weekly_challenge_status(r, {w, ChallengeTarget::sessions, 3, {}}).progress == 1.0);
  try {
    weekly_challenge_status(r, {w, ChallengeTarget::sessions, 0, {}});
    FAIL("expected degenerate challenge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_challenge);
  }
}

TEST_CASE("leaderboard basics") {
  Rng rng(8);
  fx::LedgerFixture f;
  const auto t = fx::at("2026-02-09T10:00:00Z");
  for (int i = 0; i < 3; ++i) {
    f.ids.push_back(fx::player(rng));
    f.names.push_back("p" + std::to_string(i));
    f.ledgers.emplace_back();
  }
  f.ledgers[0].append({PointsSource::quiz, 100, t});
  f.ledgers[1].append({PointsSource::quiz, 90, t});
  auto board = leaderboard(Scope::all_time, t, f.views());
  REQUIRE(board.size() == 2);  // silent players are omitted
  CHECK(board[0].player_id == f.ids[0]);
  CHECK(board[0].rank == 1);
  CHECK(board[1].rank == 2);

  f.ledgers[1].append({PointsSource::quiz, 10, t + std::chrono::minutes(5)});
  f.ledgers[2].append({PointsSource::quiz, 100, t - std::chrono::minutes(5)});
  board = leaderboard(Scope::all_time, t, f.views());
  REQUIRE(board.size() == 3);
  CHECK(board[0].player_id == f.ids[2]);  // earlier last activity wins the tie
  CHECK(board[1].player_id == f.ids[0]);
  CHECK(board[2].player_id == f.ids[1]);

  CHECK(leaderboard(Scope::daily, t, {}).empty());
  CHECK(parse_scope("all") == Scope::all_time);
  CHECK(parse_scope("all_time") == Scope::all_time);
  CHECK_THROWS_AS(parse_scope("monthly"), Error);
}

TEST_CASE("daily scope excludes yesterday across midnight") {
  Rng rng(1);
  fx::LedgerFixture f;
  f.ids.push_back(fx::player(rng));
  f.names.push_back("a");
  f.ledgers.emplace_back();
  f.ledgers[0].append({PointsSource::quiz, 70, fx::at("2026-02-09T23:59:59.999Z")});
  f.ledgers[0].append({PointsSource::quiz, 30, fx::at("2026-02-10T00:00:00.000Z")});
  const auto now = fx::at("2026-02-10T08:00:00Z");
  auto board = leaderboard(Scope::daily, now, f.views());
  REQUIRE(board.size() == 1);
  CHECK(board[0].points_in_scope == 30);
  CHECK(leaderboard(Scope::weekly, now, f.views())[0].points_in_scope == 100);
  // At +07:00 both entries fall on local Feb 10.
  CHECK(leaderboard(Scope::daily, now, f.views(), {420})[0].points_in_scope == 100);
}

TEST_CASE("leaderboard equals the brute-force oracle") {
  Rng rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const long long now_ms = 1'770'000'000'000 + static_cast<long long>(rng.below(40ULL * 86'400'000ULL));
    const int tz = static_cast<int>(rng.below(25 * 60)) - 12 * 60;
    const auto f = fx::random_ledgers(rng, 50, now_ms, tz);
    for (auto scope : {Scope::daily, Scope::weekly, Scope::all_time}) {
      const auto got = leaderboard(scope, from_unix_ms(now_ms), f.views(), {tz});
      const auto want = fx::oracle_leaderboard(f, scope, now_ms, tz);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].player_id.str() == want[i].player_id);
        CHECK(got[i].points_in_scope == want[i].points);
        CHECK(to_unix_ms(got[i].last_activity) == want[i].last_ms);
        CHECK(got[i].rank == want[i].rank);
      }
    }
  }
}
