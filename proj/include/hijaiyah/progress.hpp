#pragma once

#include <span>

#include "hijaiyah/economy.hpp"
#include "hijaiyah/events.hpp"
#include "hijaiyah/record.hpp"

namespace hijaiyah {

struct FoldContext {
  std::span<const economy::BadgeRule> badge_rules;
  UtcOffset tz{};
  /// Sessions per ISO week that complete the weekly challenge; 0 disables it.
  int challenge_sessions_target = 3;
};

/// Deterministic reducer step. Bests are max-registers, the ledger is
/// append-only, level follows the adaptive rule for evaluation activities
/// (quiz, matching, unguided trace) and badges are re-evaluated after every event.
void fold_into(ProgressRecord& record, const SessionEvent& event, const FoldContext& ctx);
ProgressRecord fold(const ProgressRecord& record, const SessionEvent& event, const FoldContext& ctx);

ProgressRecord empty_record(const PlayerId& player);

/// Folds the de-duplicated event set in (client_time, event_id) order.
/// The result depends only on the set, not on the order of `events`.
ProgressRecord fold_log(const PlayerId& player, std::span<const SessionEvent> events, const FoldContext& ctx);

}  // namespace hijaiyah
