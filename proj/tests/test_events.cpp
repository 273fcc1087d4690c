#include <doctest.h>

#include "hijaiyah/error.hpp"
#include "hijaiyah/events.hpp"
#include "support/event_fixtures.hpp"

using namespace hijaiyah;
using nlohmann::json;

namespace {

json wire(const char* kind, json payload) {
  return {{"event_id", "8f7d3a56-0c2b-4e5f-9a1d-2b3c4d5e6f70"},
          {"player_id", "11111111-2222-4333-8444-555555555555"},
          {"kind", kind},
          {"payload", std::move(payload)},
          {"client_time", "2026-02-09T10:00:00.000Z"}};
}

std::string rejected(const json& j) {
  try {
    event_from_json(j, &fx::catalog());
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_payload);
    return e.what();
  }
  FAIL("accepted: " << j.dump());
  return {};
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (auto k : {EventKind::session_start, EventKind::session_end, EventKind::trace_graded, EventKind::quiz_scored,
                 EventKind::matching_scored, EventKind::level_changed, EventKind::badge_awarded,
                 EventKind::points_awarded}) {
    CHECK(parse_event_kind(to_string(k)) == k);
  }
  CHECK(parse_event_kind("sticker_collected") == EventKind::unknown);
}

TEST_CASE("valid payloads parse") {
  const auto e = event_from_json(wire("trace_graded", {{"letter_id", "jim"}, {"score", 90}, {"guided", false}}), &fx::catalog());
  CHECK(e.kind == EventKind::trace_graded);
  CHECK(e.payload["score"] == 90);
  CHECK_FALSE(e.server_time);
  CHECK_NOTHROW(event_from_json(wire("session_start", {{"session_id", "a"}})));
  CHECK_NOTHROW(event_from_json(wire("session_end", {{"session_id", "a"}, {"phases_completed", {"evaluation"}}})));
  CHECK_NOTHROW(event_from_json(wire("quiz_scored", {{"score", 0}, {"letters", {"ba", "ta"}}}), &fx::catalog()));
  CHECK_NOTHROW(event_from_json(wire("matching_scored", {{"score", 100}})));
  CHECK_NOTHROW(event_from_json(wire("level_changed", {{"from", 3}, {"to", 4}})));
  CHECK_NOTHROW(event_from_json(wire("badge_awarded", {{"rule_id", "mastered-jim"}})));
  CHECK_NOTHROW(event_from_json(wire("points_awarded", {{"source", "challenge"}, {"points", 20}})));

  // Unknown kinds keep their spelling and payload.
  const auto u = event_from_json(wire("sticker_collected", {{"x", [] { return json::array({1, 2}); }()}}));
  CHECK(u.kind == EventKind::unknown);
  CHECK(to_json(u)["kind"] == "sticker_collected");
  CHECK(event_from_json(to_json(u)) == u);
}

TEST_CASE("malformed payloads name the field") {
  CHECK(rejected(wire("trace_graded", {{"letter_id", "jim"}, {"score", 101}, {"guided", true}})).find("score") != std::string::npos);
  CHECK(rejected(wire("trace_graded", {{"letter_id", "zeta"}, {"score", 50}, {"guided", true}})).find("letter_id") != std::string::npos);
  CHECK(rejected(wire("trace_graded", {{"letter_id", "jim"}, {"score", 50}})).find("guided") != std::string::npos);
  CHECK(rejected(wire("quiz_scored", {{"score", "85"}})).find("score") != std::string::npos);
  CHECK(rejected(wire("quiz_scored", {{"score", 85}, {"letters", {"nope"}}})).find("letters") != std::string::npos);
  CHECK(rejected(wire("session_start", json::object())).find("session_id") != std::string::npos);
  CHECK(rejected(wire("session_end", {{"session_id", "a"}, {"phases_completed", {"complete"}}})).find("phases_completed") != std::string::npos);
  CHECK(rejected(wire("session_end", {{"session_id", "a"}, {"phases_completed", {"nap"}}})).find("phases_completed") != std::string::npos);
  CHECK(rejected(wire("level_changed", {{"from", 0}, {"to", 1}})).find("from") != std::string::npos);
  CHECK(rejected(wire("points_awarded", {{"source", "gift"}, {"points", 5}})).find("source") != std::string::npos);
  CHECK(rejected(wire("points_awarded", {{"source", "quiz"}, {"points", -5}})).find("points") != std::string::npos);
  CHECK(rejected(wire("quiz_scored", json::array())).find("payload") != std::string::npos);

  auto j = wire("matching_scored", {{"score", 1}});
  j["client_time"] = "yesterday";
  rejected(j);
  j = wire("matching_scored", {{"score", 1}});
  j.erase("event_id");
  CHECK(rejected(j).find("event_id") != std::string::npos);
  j = wire("matching_scored", {{"score", 1}});
  j["player_id"] = "not-a-uuid";
  rejected(j);
}

TEST_CASE("event json round-trip") {
  Rng rng(3);
  const auto p = fx::player(rng);
  auto log = fx::random_log(rng, p, 200, fx::at("2026-02-09T10:00:00Z"));
  log[5].server_time = fx::at("2026-02-09T11:00:00.123Z");
  for (const auto& e : log) CHECK(event_from_json(to_json(e), &fx::catalog()) == e);
}

TEST_CASE("envelope invariants") {
  Rng rng(5);
  const auto p = fx::player(rng);
  auto log = fx::random_log(rng, p, 12, fx::at("2026-02-09T10:00:00Z"));
  std::sort(log.begin(), log.end(), fold_order);
  SyncEnvelope env{p, log, log.front().event_id};
  const auto back = envelope_from_json(to_json(env), &fx::catalog());
  CHECK(back.events == env.events);
  CHECK(back.last_acked_event_id == env.last_acked_event_id);

  auto j = to_json(env);
  std::swap(j["events"][0], j["events"][11]);
  if (log.front().client_time != log.back().client_time) {
    CHECK_THROWS_WITH_AS(envelope_from_json(j), doctest::Contains("client_time"), Error);
  }
  j = to_json(env);
  j["events"][3]["player_id"] = fx::player(rng).str();
  CHECK_THROWS_WITH_AS(envelope_from_json(j), doctest::Contains("events[3].player_id"), Error);
  j = to_json(env);
  j.erase("events");
  CHECK_THROWS_AS(envelope_from_json(j), Error);
}

TEST_CASE("fold order is (client_time, event_id)") {
  Rng rng(9);
  const auto p = fx::player(rng);
  const auto t = fx::at("2026-02-09T10:00:00Z");
  auto a = fx::event(rng, p, EventKind::quiz_scored, {{"score", 1}}, t);
  auto b = fx::event(rng, p, EventKind::quiz_scored, {{"score", 1}}, t);
  if (b.event_id < a.event_id) std::swap(a, b);
  CHECK(fold_order(a, b));
  CHECK_FALSE(fold_order(b, a));
  b.client_time = t - std::chrono::milliseconds(1);
  CHECK(fold_order(b, a));
  // server_time does not participate.
  a.server_time = t + std::chrono::hours(5);
  b.server_time = t;
  CHECK(fold_order(b, a));
}
