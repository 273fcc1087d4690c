#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hijaiyah/catalog.hpp"
#include "hijaiyah/economy.hpp"
#include "hijaiyah/events.hpp"
#include "hijaiyah/rng.hpp"

namespace fx {

inline std::string asset(const std::string& name) { return std::string(HIJAIYAH_ASSETS_DIR) + "/" + name; }

inline const hijaiyah::Catalog& catalog() {
  static const hijaiyah::Catalog c = hijaiyah::Catalog::load(asset("catalog.json"));
  return c;
}

inline std::shared_ptr<const hijaiyah::Catalog> shared_catalog() {
  static const auto c = std::make_shared<const hijaiyah::Catalog>(catalog());
  return c;
}

inline const std::vector<hijaiyah::economy::BadgeRule>& badges() {
  static const auto rules = hijaiyah::economy::load_badge_rules(asset("badges.json"));
  return rules;
}

inline hijaiyah::Timestamp at(const char* rfc3339) { return hijaiyah::parse_rfc3339(rfc3339); }

inline hijaiyah::PlayerId player(hijaiyah::Rng& rng) { return hijaiyah::PlayerId(hijaiyah::make_uuid(rng)); }

inline hijaiyah::SessionEvent event(hijaiyah::Rng& rng, const hijaiyah::PlayerId& p, hijaiyah::EventKind kind,
                                    nlohmann::json payload, hijaiyah::Timestamp t) {
  hijaiyah::SessionEvent e;
  e.event_id = hijaiyah::EventId(hijaiyah::make_uuid(rng));
  e.player_id = p;
  e.kind = kind;
  e.kind_name = hijaiyah::to_string(kind);
  e.payload = std::move(payload);
  e.client_time = t;
  return e;
}

}  // namespace fx

#include <unistd.h>

#include <filesystem>

namespace fx {

/// Fresh directory removed on scope exit.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("hijaiyah-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fx
