#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "hijaiyah/events.hpp"
#include "hijaiyah/record.hpp"

namespace hijaiyah {

/// Append-only JSON-lines persistence rooted at a data directory:
///   profiles.jsonl, events/<player>.jsonl, snapshots/<player>.json
/// Appends are fsync'ed before returning.
class EventStore {
 public:
  explicit EventStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  std::vector<nlohmann::json> load_profiles() const;
  void append_profile(const nlohmann::json& profile);

  /// Events in file order. A torn trailing line (crash mid-append) is ignored.
  std::vector<SessionEvent> load_events(const PlayerId& player) const;
  void append_events(const PlayerId& player, std::span<const SessionEvent> events);

  void write_snapshot(const ProgressRecord& record);
  std::optional<ProgressRecord> load_snapshot(const PlayerId& player) const;

 private:
  std::filesystem::path events_path(const PlayerId& player) const;
  std::filesystem::path snapshot_path(const PlayerId& player) const;

  std::filesystem::path root_;
};

}  // namespace hijaiyah
