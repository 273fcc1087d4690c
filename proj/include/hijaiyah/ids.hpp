#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "hijaiyah/rng.hpp"

namespace hijaiyah {

bool is_uuid(std::string_view text) noexcept;

/// Random (version 4 layout) UUID drawn from `rng`, lowercase canonical form.
std::string make_uuid(Rng& rng);

/// Strongly typed UUID-valued identifier. Construction validates the format.
template <typename Tag>
class Uuid {
 public:
  Uuid() = default;
  explicit Uuid(std::string text);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }
  auto operator<=>(const Uuid&) const = default;

 private:
  std::string value_;
};

struct PlayerTag;
struct EventTag;
using PlayerId = Uuid<PlayerTag>;
using EventId = Uuid<EventTag>;

extern template class Uuid<PlayerTag>;
extern template class Uuid<EventTag>;

}  // namespace hijaiyah

template <typename Tag>
struct std::hash<hijaiyah::Uuid<Tag>> {
  std::size_t operator()(const hijaiyah::Uuid<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
