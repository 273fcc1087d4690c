#pragma once

#include <stdexcept>
#include <string>

namespace hijaiyah {

enum class Errc {
  schema,
  catalog_incomplete,
  duplicate_id,
  audio_budget_exceeded,
  unknown_letter,
  degenerate_input,
  invalid_argument,
  insufficient_pool,
  length_mismatch,
  phase_mismatch,
  degenerate_challenge,
  unknown_player,
  malformed_payload,
  duplicate_profile,
  zero_variance,
  rank_deficient,
  io,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hijaiyah
