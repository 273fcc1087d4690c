#include "hijaiyah/ids.hpp"

#include "hijaiyah/error.hpp"

namespace hijaiyah {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::schema: return "schema";
    case Errc::catalog_incomplete: return "catalog_incomplete";
    case Errc::duplicate_id: return "duplicate_id";
    case Errc::audio_budget_exceeded: return "audio_budget_exceeded";
    case Errc::unknown_letter: return "unknown_letter";
    case Errc::degenerate_input: return "degenerate_input";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::insufficient_pool: return "insufficient_pool";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::phase_mismatch: return "phase_mismatch";
    case Errc::degenerate_challenge: return "degenerate_challenge";
    case Errc::unknown_player: return "unknown_player";
    case Errc::malformed_payload: return "malformed_payload";
    case Errc::duplicate_profile: return "duplicate_profile";
    case Errc::zero_variance: return "zero_variance";
    case Errc::rank_deficient: return "rank_deficient";
    case Errc::io: return "io";
  }
  return "unknown";
}

bool is_uuid(std::string_view text) noexcept {
  if (text.size() != 36) return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (i == 8 || i == 13 || i == 18 || i == 23) {
      if (c != '-') return false;
    } else if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'))) {
      return false;
    }
  }
  return true;
}

std::string make_uuid(Rng& rng) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t hi = rng.next();
  std::uint64_t lo = rng.next();
  hi = (hi & ~0xF000ULL) | 0x4000ULL;                 // version 4
  lo = (lo & ~(0xC0ULL << 56)) | (0x80ULL << 56);     // RFC 4122 variant
  std::string out;
  out.reserve(36);
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t word = i < 8 ? hi : lo;
    const auto byte = static_cast<unsigned>((word >> (8 * (7 - (i % 8)))) & 0xFF);
    if (i == 4 || i == 6 || i == 8 || i == 10) out.push_back('-');
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0xF]);
  }
  return out;
}

template <typename Tag>
Uuid<Tag>::Uuid(std::string text) : value_(std::move(text)) {
  if (!is_uuid(value_)) throw Error(Errc::schema, "invalid UUID: '" + value_ + "'");
  for (auto& c : value_) {
    if (c >= 'A' && c <= 'F') c = static_cast<char>(c - 'A' + 'a');
  }
}

template class Uuid<PlayerTag>;
template class Uuid<EventTag>;

}  // namespace hijaiyah
