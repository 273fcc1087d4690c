#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "hijaiyah/analytics.hpp"
#include "hijaiyah/catalog.hpp"
#include "hijaiyah/economy.hpp"
#include "hijaiyah/events.hpp"
#include "hijaiyah/service.hpp"

namespace hijaiyah::sim {

struct SimConfig {
  int players = 50;
  int weeks = 4;
  int sessions_per_week = 3;     // scheduled Mon/Wed/Fri (then Tue/Thu/Sat/Sun)
  double session_minutes = 10.0;
  double ability_mean = 0.43;    // pre-test skill ~ N(mean, sd), clipped to [0.02, 0.98]
  double ability_sd = 0.12;
  double learning_rate = 0.125;  // per completed session: s += eta * (1 - s)
  double learning_rate_spread = 0.25;  // eta_i = eta * exp(N(0, spread))
  double test_noise_sd = 4.0;    // score points on pre and post tests
  double extra_session_rate = 0.35;  // weekly chance of a voluntary session, scaled by motivation
  int questionnaire_items = 20;
  std::uint64_t seed = 7;
  Timestamp start = from_unix_ms(1'770'000'000'000);  // normalized to the Monday of its week
  UtcOffset tz{};

  /// Throws Error{invalid_argument}.
  void validate() const;
};

/// Synthetic learner; parameters stay within the declared bounds.
struct SimLearner {
  double ability = 0;         // [0, 1]
  double learning_rate = 0;   // [0, 1]
  double motivation = 0;      // [0, 1], drives voluntary sessions and session length
};

struct SimOutput {
  std::vector<PlayerProfile> profiles;
  std::vector<SimLearner> learners;  // parallel to profiles
  std::vector<SessionEvent> events;  // by player id, then fold order
  std::vector<analytics::ScorePair> pairs;
  analytics::ItemResponses items;
};

SimOutput simulate(const Catalog& catalog, std::span<const economy::BadgeRule> rules, const SimConfig& config);

/// JSON lines: `{"record":"profile",...}`, bare SessionEvent objects,
/// `{"record":"score_pair",...}` and `{"record":"items",...}`.
void write_jsonl(std::ostream& out, const SimOutput& sim);

/// Reads the stream written by `write_jsonl` or by event export (events only).
/// Throws Error{schema} naming the line.
SimOutput read_jsonl(std::istream& in);

}  // namespace hijaiyah::sim
