#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hijaiyah/catalog.hpp"
#include "hijaiyah/time.hpp"

namespace hijaiyah::learning {

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 10;
inline constexpr int kMasteryScore = 80;
inline constexpr int kMaxDistractors = 5;

struct ScoreEntry {
  int score = 0;
  Timestamp at{};
  bool operator==(const ScoreEntry&) const = default;
};

struct LevelState {
  int level = kMinLevel;
  std::vector<ScoreEntry> history;
  bool operator==(const LevelState&) const = default;
};

/// Adaptive rule: +1 at score >= 80, unchanged for 50..79, -1 below 50,
/// clamped to [1, 10]. Throws Error{invalid_argument} for scores outside 0..100.
LevelState next_level(const LevelState& current, int score, Timestamp at = {});

struct LevelParams {
  double timer_seconds = 0.0;
  int distractors = 0;
  int complexity_tier = 0;
  bool operator==(const LevelParams&) const = default;
};

/// timer = 20 * 0.9^(level-1) rounded to 0.1 s; distractors = min(2 + ceil(level/3), 5);
/// complexity_tier = min(level, tier_max).
LevelParams level_params(int level, int tier_max);

enum class QuizKind { audio_to_letter, glyph_to_name, form_position };
const char* to_string(QuizKind k) noexcept;

struct QuizItem {
  QuizKind kind = QuizKind::glyph_to_name;
  std::string prompt;                  // audio uri or glyph
  std::string correct_option;          // letter id
  std::vector<std::string> distractor_options;
  std::vector<std::string> options;    // display order: correct + distractors, shuffled
  double timer_seconds = 0.0;
  bool operator==(const QuizItem&) const = default;
};

nlohmann::json to_json(const QuizItem& item);
QuizItem quiz_item_from_json(const nlohmann::json& j);

/// Items drawn from letters admitted at params.complexity_tier; a pure
/// function of its arguments. Throws Error{insufficient_pool}.
std::vector<QuizItem> generate_quiz(const Catalog& catalog, const LevelParams& params, std::size_t n_items,
                                    std::uint64_t rng_seed);

struct Answer {
  std::string chosen;
  double elapsed_seconds = 0.0;
};

/// round(100 * correct_within_time / n); answers past the item timer count as wrong.
int score_quiz(std::span<const Answer> answers, std::span<const QuizItem> items);

enum class Phase { introduction, practice, evaluation, complete };
const char* to_string(Phase p) noexcept;
Phase parse_phase(std::string_view text);

struct SessionPlan {
  Phase phase = Phase::introduction;
  std::vector<std::string> letter_set;
  int target_minutes = 10;
  bool operator==(const SessionPlan&) const = default;
};

/// Moves to the next phase. Throws Error{phase_mismatch} unless
/// `completed == plan.phase` and the session is not already complete.
SessionPlan advance_session(const SessionPlan& plan, Phase completed);

constexpr bool mastery_check(int score) noexcept { return score >= kMasteryScore; }

}  // namespace hijaiyah::learning
