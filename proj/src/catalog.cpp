#include "hijaiyah/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"

namespace hijaiyah {

using nlohmann::json;

const char* to_string(Position p) noexcept {
  switch (p) {
    case Position::isolated: return "isolated";
    case Position::initial: return "initial";
    case Position::medial: return "medial";
    case Position::final_: return "final";
  }
  return "?";
}

const char* to_string(Harakat h) noexcept {
  switch (h) {
    case Harakat::fathah: return "fathah";
    case Harakat::kasrah: return "kasrah";
    case Harakat::dammah: return "dammah";
    case Harakat::sukun: return "sukun";
  }
  return "?";
}

Position parse_position(std::string_view text) {
  for (auto p : {Position::isolated, Position::initial, Position::medial, Position::final_}) {
    if (text == to_string(p)) return p;
  }
  throw Error(Errc::schema, fmt::format("unknown position '{}'", text));
}

Harakat parse_harakat(std::string_view text) {
  if (text == "none") return Harakat::sukun;
  for (auto h : {Harakat::fathah, Harakat::kasrah, Harakat::dammah, Harakat::sukun}) {
    if (text == to_string(h)) return h;
  }
  throw Error(Errc::schema, fmt::format("unknown harakat '{}'", text));
}

namespace {

[[noreturn]] void schema_error(const std::string& field, std::string_view what) {
  throw Error(Errc::schema, fmt::format("schema violation at {}: {}", field, what));
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_string()) schema_error(path + "." + key, "expected string");
  return v.get<std::string>();
}

std::vector<Polyline2d> parse_strokes(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) schema_error(path, "expected non-empty array of strokes");
  std::vector<Polyline2d> strokes;
  for (std::size_t s = 0; s < v.size(); ++s) {
    const auto spath = fmt::format("{}[{}]", path, s);
    const auto& line = v[s];
    if (!line.is_array() || line.size() < 2) schema_error(spath, "stroke needs at least 2 points");
    Polyline2d poly;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const auto ppath = fmt::format("{}[{}]", spath, i);
      const auto& pt = line[i];
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
        schema_error(ppath, "expected [x, y]");
      }
      const Point2d p(pt[0].get<double>(), pt[1].get<double>());
      if (!(p.x() >= 0.0 && p.x() <= 1.0 && p.y() >= 0.0 && p.y() <= 1.0)) {
        schema_error(ppath, "coordinate outside [0,1]^2");
      }
      poly.push_back(p);
    }
    strokes.push_back(std::move(poly));
  }
  return strokes;
}

json strokes_to_json(const std::vector<Polyline2d>& strokes) {
  json out = json::array();
  for (const auto& line : strokes) {
    json jl = json::array();
    for (const auto& p : line) jl.push_back({p.x(), p.y()});
    out.push_back(std::move(jl));
  }
  return out;
}

Letter parse_letter(const json& j, const std::string& path) {
  Letter letter;
  letter.id = require_string(j, "id", path);
  if (letter.id.empty()) schema_error(path + ".id", "empty id");
  const auto& ord = require(j, "ordinal", path);
  if (!ord.is_number_integer()) schema_error(path + ".ordinal", "expected integer");
  letter.ordinal = ord.get<int>();
  if (letter.ordinal < 1 || letter.ordinal > static_cast<int>(kLetterCount)) {
    schema_error(path + ".ordinal", "must be in 1..28");
  }
  letter.name = j.value("name", letter.id);
  letter.romanization = j.value("romanization", std::string{});
  letter.base_glyph = j.value("base_glyph", std::string{});
  if (auto it = j.find("dotted"); it != j.end()) {
    if (!it->is_boolean()) schema_error(path + ".dotted", "expected boolean");
    letter.dotted = it->get<bool>();
  }

  StrokeTemplate base;
  base.strokes = parse_strokes(require(j, "strokes", path), path + ".strokes");
  base.complexity = static_cast<int>(base.strokes.size()) + (letter.dotted ? 1 : 0);

  letter.forms.push_back({letter.id, Position::isolated, require_string(j, "glyph_isolated", path), base});

  if (auto it = j.find("forms"); it != j.end()) {
    if (!it->is_array()) schema_error(path + ".forms", "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto fpath = fmt::format("{}.forms[{}]", path, i);
      const auto& fj = (*it)[i];
      LetterForm form{letter.id, Position::isolated, {}, base};
      try {
        form.position = parse_position(require_string(fj, "position", fpath));
      } catch (const Error& e) {
        if (e.code() != Errc::schema) throw;
        schema_error(fpath + ".position", e.what());
      }
      if (form.position == Position::isolated) schema_error(fpath + ".position", "isolated form is implicit");
      form.glyph = require_string(fj, "glyph", fpath);
      if (auto st = fj.find("strokes"); st != fj.end()) {
        form.stroke_template.strokes = parse_strokes(*st, fpath + ".strokes");
        form.stroke_template.complexity =
            static_cast<int>(form.stroke_template.strokes.size()) + (letter.dotted ? 1 : 0);
      }
      for (const auto& existing : letter.forms) {
        if (existing.position == form.position) schema_error(fpath + ".position", "duplicate position");
      }
      letter.forms.push_back(std::move(form));
    }
  }
  std::sort(letter.forms.begin(), letter.forms.end(),
            [](const LetterForm& a, const LetterForm& b) { return a.position < b.position; });

  if (auto it = j.find("audio"); it != j.end()) {
    if (!it->is_array()) schema_error(path + ".audio", "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto apath = fmt::format("{}.audio[{}]", path, i);
      const auto& aj = (*it)[i];
      AudioRef ref;
      ref.letter_id = letter.id;
      try {
        ref.harakat = parse_harakat(require_string(aj, "harakat", apath));
      } catch (const Error& e) {
        if (e.code() != Errc::schema) throw;
        schema_error(apath + ".harakat", e.what());
      }
      ref.uri = require_string(aj, "uri", apath);
      const auto& bytes = require(aj, "bytes", apath);
      if (!bytes.is_number_unsigned() && !(bytes.is_number_integer() && bytes.get<std::int64_t>() >= 0)) {
        schema_error(apath + ".bytes", "expected non-negative integer");
      }
      ref.bytes = bytes.get<std::uint64_t>();
      letter.audio.push_back(std::move(ref));
    }
  }
  return letter;
}

}  // namespace

Catalog Catalog::from_json(const json& manifest) {
  const auto& list = require(manifest, "letters", "$");
  if (!list.is_array()) schema_error("$.letters", "expected array");

  Catalog cat;
  std::set<int> ordinals;
  for (std::size_t i = 0; i < list.size(); ++i) {
    Letter letter = parse_letter(list[i], fmt::format("$.letters[{}]", i));
    if (cat.index_.contains(letter.id)) {
      throw Error(Errc::duplicate_id, fmt::format("duplicate letter id '{}'", letter.id));
    }
    if (!ordinals.insert(letter.ordinal).second) {
      throw Error(Errc::duplicate_id, fmt::format("duplicate ordinal {}", letter.ordinal));
    }
    cat.index_.emplace(letter.id, 0);
    cat.letters_.push_back(std::move(letter));
  }
  if (cat.letters_.size() != kLetterCount) {
    throw Error(Errc::catalog_incomplete,
                fmt::format("catalog incomplete: {} letters, expected {}", cat.letters_.size(), kLetterCount));
  }
  std::sort(cat.letters_.begin(), cat.letters_.end(),
            [](const Letter& a, const Letter& b) { return a.ordinal < b.ordinal; });
  for (std::size_t i = 0; i < cat.letters_.size(); ++i) {
    cat.index_[cat.letters_[i].id] = i;
    for (const auto& f : cat.letters_[i].forms) {
      cat.max_complexity_ = std::max(cat.max_complexity_, f.stroke_template.complexity);
    }
  }
  if (const auto total = cat.audio_bytes(); total >= kAudioBudgetBytes) {
    throw Error(Errc::audio_budget_exceeded,
                fmt::format("audio budget exceeded: {} bytes declared, limit {}", total, kAudioBudgetBytes));
  }
  return cat;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open catalog manifest " + path.string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::parse_error& e) {
    throw Error(Errc::schema, fmt::format("schema violation at $: {}", e.what()));
  }
  return from_json(manifest);
}

json Catalog::to_json() const {
  json letters = json::array();
  for (const auto& l : letters_) {
    json forms = json::array();
    for (const auto& f : l.forms) {
      if (f.position == Position::isolated) continue;
      forms.push_back({{"position", to_string(f.position)},
                       {"glyph", f.glyph},
                       {"strokes", strokes_to_json(f.stroke_template.strokes)}});
    }
    json audio = json::array();
    for (const auto& a : l.audio) {
      audio.push_back({{"harakat", to_string(a.harakat)}, {"uri", a.uri}, {"bytes", a.bytes}});
    }
    json lj = {{"id", l.id},
               {"ordinal", l.ordinal},
               {"name", l.name},
               {"romanization", l.romanization},
               {"glyph_isolated", l.isolated().glyph},
               {"dotted", l.dotted},
               {"forms", std::move(forms)},
               {"strokes", strokes_to_json(l.isolated().stroke_template.strokes)},
               {"audio", std::move(audio)}};
    if (!l.base_glyph.empty()) lj["base_glyph"] = l.base_glyph;
    letters.push_back(std::move(lj));
  }
  return {{"letters", std::move(letters)}};
}

const Letter& Catalog::letter(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(Errc::unknown_letter, fmt::format("unknown letter '{}'", id));
  return letters_[it->second];
}

bool Catalog::contains(std::string_view id) const noexcept { return index_.find(id) != index_.end(); }

const LetterForm& Catalog::form(std::string_view id, Position position) const {
  for (const auto& f : forms_for(id)) {
    if (f.position == position) return f;
  }
  throw Error(Errc::unknown_letter, fmt::format("letter '{}' has no {} form", id, to_string(position)));
}

std::vector<const Letter*> Catalog::letters_by_complexity(int tier) const {
  std::vector<const Letter*> out;
  for (const auto& l : letters_) {
    if (l.complexity() <= tier) out.push_back(&l);
  }
  return out;
}

std::uint64_t Catalog::audio_bytes() const noexcept {
  std::uint64_t total = 0;
  for (const auto& l : letters_) {
    for (const auto& a : l.audio) total += a.bytes;
  }
  return total;
}

bool operator==(const StrokeTemplate& a, const StrokeTemplate& b) {
  return a.complexity == b.complexity && a.strokes == b.strokes;
}
bool operator==(const LetterForm& a, const LetterForm& b) {
  return a.letter_id == b.letter_id && a.position == b.position && a.glyph == b.glyph &&
         a.stroke_template == b.stroke_template;
}
bool operator==(const AudioRef& a, const AudioRef& b) {
  return a.letter_id == b.letter_id && a.harakat == b.harakat && a.uri == b.uri && a.bytes == b.bytes;
}
bool operator==(const Letter& a, const Letter& b) {
  return a.id == b.id && a.ordinal == b.ordinal && a.name == b.name && a.romanization == b.romanization &&
         a.base_glyph == b.base_glyph && a.dotted == b.dotted && a.forms == b.forms && a.audio == b.audio;
}
bool operator==(const Catalog& a, const Catalog& b) { return a.letters_ == b.letters_; }

}  // namespace hijaiyah
