#include "hijaiyah/learning.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"
#include "hijaiyah/rng.hpp"

namespace hijaiyah::learning {

using nlohmann::json;

LevelState next_level(const LevelState& current, int score, Timestamp at) {
  if (score < 0 || score > 100) throw Error(Errc::invalid_argument, fmt::format("score {} outside 0..100", score));
  LevelState next = current;
  if (score >= 80) {
    next.level += 1;
  } else if (score < 50) {
    next.level -= 1;
  }
  next.level = std::clamp(next.level, kMinLevel, kMaxLevel);
  next.history.push_back({score, at});
  return next;
}

LevelParams level_params(int level, int tier_max) {
  if (level < kMinLevel || level > kMaxLevel) {
    throw Error(Errc::invalid_argument, fmt::format("level {} outside {}..{}", level, kMinLevel, kMaxLevel));
  }
  LevelParams p;
  p.timer_seconds = std::round(200.0 * std::pow(0.9, level - 1)) / 10.0;
  p.distractors = std::min(2 + (level + 2) / 3, kMaxDistractors);
  p.complexity_tier = std::min(level, std::max(tier_max, 1));
  return p;
}

const char* to_string(QuizKind k) noexcept {
  switch (k) {
    case QuizKind::audio_to_letter: return "audio_to_letter";
    case QuizKind::glyph_to_name: return "glyph_to_name";
    case QuizKind::form_position: return "form_position";
  }
  return "?";
}

json to_json(const QuizItem& item) {
  return {{"kind", to_string(item.kind)},
          {"prompt", item.prompt},
          {"correct_option", item.correct_option},
          {"distractor_options", item.distractor_options},
          {"options", item.options},
          {"timer_seconds", item.timer_seconds}};
}

QuizItem quiz_item_from_json(const json& j) {
  try {
    QuizItem item;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "audio_to_letter") {
      item.kind = QuizKind::audio_to_letter;
    } else if (kind == "glyph_to_name") {
      item.kind = QuizKind::glyph_to_name;
    } else if (kind == "form_position") {
      item.kind = QuizKind::form_position;
    } else {
      throw Error(Errc::schema, "unknown quiz kind '" + kind + "'");
    }
    item.prompt = j.at("prompt").get<std::string>();
    item.correct_option = j.at("correct_option").get<std::string>();
    item.distractor_options = j.at("distractor_options").get<std::vector<std::string>>();
    item.options = j.value("options", std::vector<std::string>{});
    item.timer_seconds = j.at("timer_seconds").get<double>();
    return item;
  } catch (const json::exception& e) {
    throw Error(Errc::schema, fmt::format("quiz item: {}", e.what()));
  }
}

std::vector<QuizItem> generate_quiz(const Catalog& catalog, const LevelParams& params, std::size_t n_items,
                                    std::uint64_t rng_seed) {
  if (params.distractors < 1 || !(params.timer_seconds > 0.0)) {
    throw Error(Errc::invalid_argument, "level params need >= 1 distractor and a positive timer");
  }
  const auto pool = catalog.letters_by_complexity(params.complexity_tier);
  const auto needed = static_cast<std::size_t>(params.distractors) + 1;
  if (pool.size() < needed) {
    throw Error(Errc::insufficient_pool,
                fmt::format("tier {} admits {} letters, quiz needs {}", params.complexity_tier, pool.size(), needed));
  }

  Rng rng(rng_seed);
  std::vector<QuizItem> items;
  items.reserve(n_items);
  for (std::size_t n = 0; n < n_items; ++n) {
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Partial Fisher-Yates: the first `needed` slots are a uniform sample without replacement.
    for (std::size_t i = 0; i < needed; ++i) {
      std::swap(order[i], order[i + rng.below(order.size() - i)]);
    }
    const Letter& correct = *pool[order[0]];

    QuizItem item;
    item.kind = static_cast<QuizKind>(rng.below(3));
    item.timer_seconds = params.timer_seconds;
    item.correct_option = correct.id;
    for (std::size_t i = 1; i < needed; ++i) item.distractor_options.push_back(pool[order[i]]->id);

    switch (item.kind) {
      case QuizKind::audio_to_letter:
        item.prompt = correct.audio.empty() ? correct.isolated().glyph
                                            : correct.audio[rng.below(correct.audio.size())].uri;
        break;
      case QuizKind::glyph_to_name:
        item.prompt = correct.isolated().glyph;
        break;
      case QuizKind::form_position:
        item.prompt = correct.forms[rng.below(correct.forms.size())].glyph;
        break;
    }

    item.options.push_back(item.correct_option);
    item.options.insert(item.options.end(), item.distractor_options.begin(), item.distractor_options.end());
    for (std::size_t i = item.options.size(); i > 1; --i) {
      std::swap(item.options[i - 1], item.options[rng.below(i)]);
    }
    items.push_back(std::move(item));
  }
  return items;
}

int score_quiz(std::span<const Answer> answers, std::span<const QuizItem> items) {
  if (answers.size() != items.size()) {
    throw Error(Errc::length_mismatch,
                fmt::format("{} answers for {} quiz items", answers.size(), items.size()));
  }
  if (items.empty()) throw Error(Errc::invalid_argument, "cannot score an empty quiz");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (answers[i].chosen == items[i].correct_option && answers[i].elapsed_seconds <= items[i].timer_seconds) {
      ++correct;
    }
  }
  return static_cast<int>(std::lround(100.0 * static_cast<double>(correct) / static_cast<double>(items.size())));
}

const char* to_string(Phase p) noexcept {
  switch (p) {
    case Phase::introduction: return "introduction";
    case Phase::practice: return "practice";
    case Phase::evaluation: return "evaluation";
    case Phase::complete: return "complete";
  }
  return "?";
}

Phase parse_phase(std::string_view text) {
  for (auto p : {Phase::introduction, Phase::practice, Phase::evaluation, Phase::complete}) {
    if (text == to_string(p)) return p;
  }
  throw Error(Errc::schema, fmt::format("unknown phase '{}'", text));
}

SessionPlan advance_session(const SessionPlan& plan, Phase completed) {
  if (plan.phase == Phase::complete || completed != plan.phase) {
    throw Error(Errc::phase_mismatch, fmt::format("phase mismatch: session is in {}, completed {}",
                                                  to_string(plan.phase), to_string(completed)));
  }
  SessionPlan next = plan;
  next.phase = static_cast<Phase>(static_cast<int>(plan.phase) + 1);
  return next;
}

}  // namespace hijaiyah::learning
