#include "hijaiyah/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"

namespace hijaiyah {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void append_durably(const fs::path& path, const std::string& data) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw Error(Errc::io, fmt::format("open {}: {}", path.string(), std::strerror(errno)));
  std::size_t written = 0;
  while (written < data.size()) {
    const auto n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw Error(Errc::io, fmt::format("write {}: {}", path.string(), std::strerror(err)));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    const int err = errno;
    ::close(fd);
    throw Error(Errc::io, fmt::format("fsync {}: {}", path.string(), std::strerror(err)));
  }
  ::close(fd);
}

std::vector<json> read_lines(const fs::path& path) {
  std::vector<json> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      if (in.peek() == std::char_traits<char>::eof()) break;  // torn tail
      throw Error(Errc::io, fmt::format("corrupt record in {}", path.string()));
    }
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace

EventStore::EventStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "events");
  fs::create_directories(root_ / "snapshots");
}

fs::path EventStore::events_path(const PlayerId& player) const { return root_ / "events" / (player.str() + ".jsonl"); }

fs::path EventStore::snapshot_path(const PlayerId& player) const {
  return root_ / "snapshots" / (player.str() + ".json");
}

std::vector<json> EventStore::load_profiles() const { return read_lines(root_ / "profiles.jsonl"); }

void EventStore::append_profile(const json& profile) { append_durably(root_ / "profiles.jsonl", profile.dump() + "\n"); }

std::vector<SessionEvent> EventStore::load_events(const PlayerId& player) const {
  std::vector<SessionEvent> out;
  for (const auto& j : read_lines(events_path(player))) out.push_back(event_from_json(j));
  return out;
}

void EventStore::append_events(const PlayerId& player, std::span<const SessionEvent> events) {
  if (events.empty()) return;
  std::string data;
  for (const auto& e : events) data += to_json(e).dump() + "\n";
  append_durably(events_path(player), data);
}

void EventStore::write_snapshot(const ProgressRecord& record) {
  const auto path = snapshot_path(record.player_id);
  const auto tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_json(record).dump() << '\n';
    if (!out) throw Error(Errc::io, "cannot write snapshot " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::optional<ProgressRecord> EventStore::load_snapshot(const PlayerId& player) const {
  std::ifstream in(snapshot_path(player));
  if (!in) return std::nullopt;
  auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  try {
    return record_from_json(j);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace hijaiyah
