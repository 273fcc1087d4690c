#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hijaiyah/geometry.hpp"

namespace hijaiyah {

inline constexpr std::size_t kLetterCount = 28;
inline constexpr std::uint64_t kAudioBudgetBytes = 50ULL << 20;

enum class Position { isolated, initial, medial, final_ };
enum class Harakat { fathah, kasrah, dammah, sukun };

const char* to_string(Position p) noexcept;
const char* to_string(Harakat h) noexcept;
Position parse_position(std::string_view text);
Harakat parse_harakat(std::string_view text);

struct StrokeTemplate {
  std::vector<Polyline2d> strokes;  // canonical writing order, coordinates in [0,1]^2
  int complexity = 1;               // stroke count, +1 for dotted letters
};

struct LetterForm {
  std::string letter_id;
  Position position = Position::isolated;
  std::string glyph;
  StrokeTemplate stroke_template;
};

struct AudioRef {
  std::string letter_id;
  Harakat harakat = Harakat::fathah;
  std::string uri;
  std::uint64_t bytes = 0;
};

struct Letter {
  std::string id;
  int ordinal = 0;
  std::string name;
  std::string romanization;
  std::string base_glyph;  // unjoined code point, empty if not declared
  bool dotted = false;
  std::vector<LetterForm> forms;  // isolated, initial, medial, final (absent forms omitted)
  std::vector<AudioRef> audio;

  const LetterForm& isolated() const { return forms.front(); }
  int complexity() const { return isolated().stroke_template.complexity; }
};

/// Validated, immutable letter inventory.
class Catalog {
 public:
  static Catalog from_json(const nlohmann::json& manifest);
  static Catalog load(const std::filesystem::path& path);

  nlohmann::json to_json() const;

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  const Letter& letter(std::string_view id) const;
  bool contains(std::string_view id) const noexcept;

  /// Forms ordered isolated -> initial -> medial -> final.
  const std::vector<LetterForm>& forms_for(std::string_view id) const { return letter(id).forms; }
  const LetterForm& form(std::string_view id, Position position) const;

  /// Letters with complexity class <= tier, in ordinal order. Empty for tier < 1.
  std::vector<const Letter*> letters_by_complexity(int tier) const;
  int max_complexity() const noexcept { return max_complexity_; }

  std::uint64_t audio_bytes() const noexcept;

  friend bool operator==(const Catalog& a, const Catalog& b);

 private:
  std::vector<Letter> letters_;
  std::map<std::string, std::size_t, std::less<>> index_;
  int max_complexity_ = 0;
};

bool operator==(const StrokeTemplate& a, const StrokeTemplate& b);
bool operator==(const LetterForm& a, const LetterForm& b);
bool operator==(const AudioRef& a, const AudioRef& b);
bool operator==(const Letter& a, const Letter& b);

}  // namespace hijaiyah
