#include "hijaiyah/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"
#include "hijaiyah/learning.hpp"
#include "hijaiyah/progress.hpp"
#include "hijaiyah/trace.hpp"

namespace hijaiyah::sim {

using nlohmann::json;
using std::chrono::milliseconds;
using std::chrono::minutes;
using std::chrono::seconds;

void SimConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(Errc::invalid_argument, "invalid simulation config: " + what); };
  if (players <= 0) bad("players must be positive");
  if (weeks <= 0) bad("weeks must be positive");
  if (sessions_per_week <= 0 || sessions_per_week > 7) bad("sessions_per_week must be in 1..7");
  if (!(session_minutes > 0)) bad("session_minutes must be positive");
  if (!(ability_mean >= 0 && ability_mean <= 1)) bad("ability_mean must be in [0, 1]");
  if (!(ability_sd >= 0)) bad("ability_sd must be non-negative");
  if (!(learning_rate >= 0 && learning_rate <= 1)) bad("learning_rate must be in [0, 1]");
  if (!(learning_rate_spread >= 0)) bad("learning_rate_spread must be non-negative");
  if (!(test_noise_sd >= 0)) bad("test_noise_sd must be non-negative");
  if (!(extra_session_rate >= 0 && extra_session_rate <= 1)) bad("extra_session_rate must be in [0, 1]");
  if (questionnaire_items < 2) bad("questionnaire_items must be at least 2");
}

namespace {

constexpr int kLettersPerSession = 3;
constexpr std::size_t kQuizItems = 5;

int clamp_score(double x) { return static_cast<int>(std::lround(std::clamp(x, 0.0, 100.0))); }

/// Noisy rendition of a template: per-stroke drift plus per-point jitter,
/// both shrinking with skill. Low skill also reverses or swaps strokes.
trace::TraceSample synthetic_trace(const StrokeTemplate& tmpl, double skill, bool guided, Rng& rng) {
  const double sigma = 0.03 + 0.45 * (1.0 - skill) * (1.0 - skill);
  trace::TraceSample s;
  s.guided = guided;
  const double scale = rng.uniform(120.0, 360.0);
  const Point2d origin(rng.uniform(0.0, 200.0), rng.uniform(0.0, 200.0));
  std::int64_t t = 0;
  for (const auto& stroke : tmpl.strokes) {
    const auto pts = resample<double>(stroke, 24);
    const Point2d drift(rng.normal(0, 0.6 * sigma), rng.normal(0, 0.6 * sigma));
    trace::SampleStroke out;
    for (const auto& p : pts) {
      const Point2d jitter(rng.normal(0, 0.6 * sigma), rng.normal(0, 0.6 * sigma));
      out.points.push_back(origin + scale * (p + drift + jitter));
      out.t.push_back(t);
      t += 15 + static_cast<std::int64_t>(rng.below(20));
    }
    t += 250;
    s.strokes.push_back(std::move(out));
  }
  if (rng.bernoulli(0.25 * (1.0 - skill))) {
    const auto k = rng.below(s.strokes.size());
    std::reverse(s.strokes[k].points.begin(), s.strokes[k].points.end());
  }
  if (s.strokes.size() > 1 && rng.bernoulli(0.15 * (1.0 - skill))) {
    std::swap(s.strokes[0].points, s.strokes[1].points);
  }
  return s;
}

std::vector<int> weekday_offsets(int sessions_per_week) {
  static constexpr int kOrder[] = {0, 2, 4, 1, 3, 5, 6};
  std::vector<int> days(kOrder, kOrder + sessions_per_week);
  std::sort(days.begin(), days.end());
  return days;
}

class PlayerRun {
 public:
  PlayerRun(const Catalog& catalog, const FoldContext& ctx, const SimConfig& config, PlayerId id, Rng rng)
      : catalog_(catalog), ctx_(ctx), config_(config), id_(std::move(id)), rng_(rng), record_(empty_record(id_)) {}

  Rng& rng() { return rng_; }
  std::vector<SessionEvent>& events() { return events_; }
  std::size_t badges() const { return record_.badges.size(); }

  void session(Timestamp start, double& skill, const SimLearner& learner) {
    const double length = std::clamp(rng_.normal(config_.session_minutes * (0.9 + 0.5 * learner.motivation), 1.5),
                                     0.4 * config_.session_minutes, 3.0 * config_.session_minutes);
    const auto end = start + milliseconds(static_cast<std::int64_t>(length * 60'000.0));
    const auto step = (end - start) / 16;
    Timestamp at = start;
    auto tick = [&] { return at += step; };

    const std::string session_id = make_uuid(rng_);
    emit(EventKind::session_start, {{"session_id", session_id}}, at);

    const auto params = learning::level_params(record_.level.level, catalog_.max_complexity());
    auto pool = catalog_.letters_by_complexity(params.complexity_tier);
    std::vector<std::string> letters;
    for (int i = 0; i < kLettersPerSession && !pool.empty(); ++i) {
      const auto k = rng_.below(pool.size());
      letters.push_back(pool[k]->id);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }

    learning::SessionPlan plan{learning::Phase::introduction, letters,
                               static_cast<int>(std::lround(config_.session_minutes))};
    tick();  // introduction: listening and recognition, nothing graded
    plan = learning::advance_session(plan, learning::Phase::introduction);

    for (const auto& letter : letters) {
      const auto grade = trace::grade_trace(
          synthetic_trace(catalog_.letter(letter).isolated().stroke_template, skill, true, rng_),
          catalog_.letter(letter).isolated(), tolerance_);
      emit(EventKind::trace_graded, {{"letter_id", letter}, {"score", grade.score}, {"guided", true}}, tick());
    }
    plan = learning::advance_session(plan, learning::Phase::practice);

    const auto& target = letters[rng_.below(letters.size())];
    const auto grade = trace::grade_trace(
        synthetic_trace(catalog_.letter(target).isolated().stroke_template, skill, false, rng_),
        catalog_.letter(target).isolated(), tolerance_);
    emit(EventKind::trace_graded, {{"letter_id", target}, {"score", grade.score}, {"guided", false}}, tick());

    const auto quiz = learning::generate_quiz(catalog_, params, kQuizItems, rng_.next());
    std::vector<learning::Answer> answers;
    std::vector<std::string> quizzed;
    for (const auto& item : quiz) {
      learning::Answer a;
      if (rng_.bernoulli(0.2 + 0.8 * skill) || item.distractor_options.empty()) {
        a.chosen = item.correct_option;
      } else {
        a.chosen = item.distractor_options[rng_.below(item.distractor_options.size())];
      }
      a.elapsed_seconds = item.timer_seconds * rng_.uniform(0.2, 0.6 + 0.6 * (1.0 - skill));
      answers.push_back(std::move(a));
      if (std::find(quizzed.begin(), quizzed.end(), item.correct_option) == quizzed.end())
        quizzed.push_back(item.correct_option);
    }
    std::sort(quizzed.begin(), quizzed.end());
    emit(EventKind::quiz_scored, {{"score", learning::score_quiz(answers, quiz)}, {"letters", quizzed}}, tick());

    economy::MatchingRound round;
    round.pairs = record_.level.level >= 5 ? 4 : 3;
    round.elapsed_seconds = std::max(4.0, 6.0 + 30.0 * (1.0 - skill) + rng_.normal(0, 3));
    for (int i = 0; i < round.pairs; ++i) round.mistakes += rng_.bernoulli(0.5 * (1.0 - skill)) ? 1 : 0;
    std::vector<std::string> matched(letters.begin(), letters.end());
    std::sort(matched.begin(), matched.end());
    emit(EventKind::matching_scored, {{"score", economy::matching_score(round)}, {"letters", matched}}, tick());
    plan = learning::advance_session(plan, learning::Phase::evaluation);

    emit(EventKind::session_end,
         {{"session_id", session_id}, {"phases_completed", {"introduction", "practice", "evaluation"}}}, end);
    skill += learner.learning_rate * (1.0 - skill);
  }

 private:
  SessionEvent make(EventKind kind, json payload, Timestamp at) {
    SessionEvent e;
    e.event_id = EventId(make_uuid(rng_));
    e.player_id = id_;
    e.kind = kind;
    e.kind_name = to_string(kind);
    e.payload = std::move(payload);
    e.client_time = at;
    return e;
  }

  void push(SessionEvent e) {
    fold_into(record_, e, ctx_);
    events_.push_back(std::move(e));
  }

  void emit(EventKind kind, json payload, Timestamp at) {
    const int level_before = record_.level.level;
    const std::size_t badges_before = record_.badges.size();
    push(make(kind, std::move(payload), at));
    auto t = at;
    if (record_.level.level != level_before) {
      push(make(EventKind::level_changed, {{"from", level_before}, {"to", record_.level.level}}, t += milliseconds(1)));
    }
    const std::vector<BadgeAward> fresh(record_.badges.begin() + static_cast<std::ptrdiff_t>(badges_before),
                                        record_.badges.end());
    for (const auto& b : fresh) push(make(EventKind::badge_awarded, {{"rule_id", b.rule_id}}, t += milliseconds(1)));
  }

  const Catalog& catalog_;
  const FoldContext& ctx_;
  const SimConfig& config_;
  PlayerId id_;
  Rng rng_;
  ProgressRecord record_;
  std::vector<SessionEvent> events_;
  trace::ToleranceProfile tolerance_{};
};

}  // namespace

SimOutput simulate(const Catalog& catalog, std::span<const economy::BadgeRule> rules, const SimConfig& config) {
  config.validate();
  const FoldContext ctx{rules, config.tz, 3};
  Rng master(config.seed);
  const Timestamp week0 = local_week_start(config.start, config.tz);
  const auto schedule = weekday_offsets(config.sessions_per_week);

  SimOutput out;
  std::vector<double> engagement;
  for (int i = 0; i < config.players; ++i) {
    Rng rng = master.fork(static_cast<std::uint64_t>(i));
    PlayerProfile profile;
    profile.player_id = PlayerId(make_uuid(rng));
    profile.display_name = fmt::format("Student {:02}", i + 1);
    profile.age = 6 + static_cast<int>(rng.below(4));
    profile.class_level = 1 + static_cast<int>(rng.below(3));
    profile.created_at = week0 - std::chrono::hours(24);

    SimLearner learner;
    learner.ability = std::clamp(rng.normal(config.ability_mean, config.ability_sd), 0.02, 0.98);
    learner.learning_rate = std::clamp(config.learning_rate * std::exp(rng.normal(0, config.learning_rate_spread)), 0.0, 1.0);
    learner.motivation = rng.uniform();

    const double pre = clamp_score(100.0 * learner.ability + rng.normal(0, config.test_noise_sd));
    double skill = learner.ability;

    PlayerRun run(catalog, ctx, config, profile.player_id, rng.fork(1));
    Rng& r = run.rng();
    for (int w = 0; w < config.weeks; ++w) {
      const std::size_t badges_before = run.badges();
      for (int day : schedule) {
        const auto start = week0 + std::chrono::days(7 * w + day) + std::chrono::hours(15) +
                           minutes(30 + static_cast<int>(r.below(60))) -
                           minutes(config.tz.minutes);
        run.session(start, skill, learner);
      }
      // Voluntary practice, more likely after a badge-earning week.
      const double boost = run.badges() > badges_before ? 1.5 : 1.0;
      if (r.bernoulli(std::min(1.0, config.extra_session_rate * learner.motivation * boost))) {
        const int day = r.bernoulli(0.5) ? schedule.back() : 5;
        const int hour = day == schedule.back() ? 19 : 10;
        const auto start = week0 + std::chrono::days(7 * w + day) + std::chrono::hours(hour) +
                           minutes(static_cast<int>(r.below(45))) - minutes(config.tz.minutes);
        run.session(start, skill, learner);
      }
    }
    const double post = clamp_score(100.0 * skill + rng.normal(0, config.test_noise_sd));

    out.pairs.push_back({profile.player_id.str(), pre, post});
    out.events.insert(out.events.end(), run.events().begin(), run.events().end());
    engagement.push_back(0.7 * learner.motivation + 0.3 * (post / 100.0));
    out.profiles.push_back(std::move(profile));
    out.learners.push_back(learner);
  }

  // Likert questionnaire driven by a single latent engagement trait.
  out.items.items.resize(config.players, config.questionnaire_items);
  for (int i = 0; i < config.players; ++i) {
    out.items.subject_ids.push_back(out.profiles[static_cast<std::size_t>(i)].player_id.str());
    const double z = (engagement[static_cast<std::size_t>(i)] - 0.5) / 0.22;
    for (int j = 0; j < config.questionnaire_items; ++j) {
      out.items.items(i, j) = std::clamp(std::round(3.0 + z + master.normal(0, 0.9)), 1.0, 5.0);
    }
  }

  // Canonical order: player id, then fold order.
  std::vector<std::size_t> order(out.profiles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.profiles[a].player_id < out.profiles[b].player_id; });
  SimOutput sorted;
  for (auto i : order) {
    sorted.profiles.push_back(out.profiles[i]);
    sorted.learners.push_back(out.learners[i]);
    sorted.pairs.push_back(out.pairs[i]);
  }
  sorted.items.subject_ids.resize(order.size());
  sorted.items.items.resize(out.items.items.rows(), out.items.items.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted.items.subject_ids[k] = out.items.subject_ids[order[k]];
    sorted.items.items.row(static_cast<Eigen::Index>(k)) = out.items.items.row(static_cast<Eigen::Index>(order[k]));
  }
  sorted.events = std::move(out.events);
  std::stable_sort(sorted.events.begin(), sorted.events.end(), [](const SessionEvent& a, const SessionEvent& b) {
    if (a.player_id != b.player_id) return a.player_id < b.player_id;
    return fold_order(a, b);
  });
  return sorted;
}

void write_jsonl(std::ostream& out, const SimOutput& sim) {
  for (const auto& p : sim.profiles) {
    auto j = to_json(p);
    j["record"] = "profile";
    out << j.dump() << '\n';
  }
  for (const auto& e : sim.events) out << to_json(e).dump() << '\n';
  for (const auto& p : sim.pairs) {
    out << json{{"record", "score_pair"}, {"subject_id", p.subject_id}, {"pre", p.pre}, {"post", p.post}}.dump()
        << '\n';
  }
  for (Eigen::Index i = 0; i < sim.items.items.rows(); ++i) {
    std::vector<double> row(sim.items.items.row(i).begin(), sim.items.items.row(i).end());
    out << json{{"record", "items"}, {"subject_id", sim.items.subject_ids[static_cast<std::size_t>(i)]}, {"responses", row}}
               .dump()
        << '\n';
  }
}

SimOutput read_jsonl(std::istream& in) {
  SimOutput out;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& what) {
      throw Error(Errc::schema, fmt::format("line {}: {}", line_no, what));
    };
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail("expected a JSON object");
    try {
      const auto rec = j.find("record");
      if (rec == j.end()) {
        out.events.push_back(event_from_json(j));
      } else if (*rec == "profile") {
        out.profiles.push_back(profile_from_json(j));
      } else if (*rec == "score_pair") {
        if (!j.contains("subject_id") || !j["subject_id"].is_string() || !j.contains("pre") ||
            !j["pre"].is_number() || !j.contains("post") || !j["post"].is_number())
          fail("score_pair needs subject_id, pre and post");
        out.pairs.push_back({j["subject_id"].get<std::string>(), j["pre"].get<double>(), j["post"].get<double>()});
      } else if (*rec == "items") {
        if (!j.contains("subject_id") || !j["subject_id"].is_string() || !j.contains("responses") ||
            !j["responses"].is_array())
          fail("items needs subject_id and responses");
        std::vector<double> row;
        for (const auto& v : j["responses"]) {
          if (!v.is_number()) fail("items responses must be numbers");
          row.push_back(v.get<double>());
        }
        if (!rows.empty() && row.size() != rows.front().size()) fail("items rows differ in length");
        out.items.subject_ids.push_back(j["subject_id"].get<std::string>());
        rows.push_back(std::move(row));
      } else {
        fail("unknown record type");
      }
    } catch (const Error& err) {
      if (std::string_view(err.what()).starts_with("line ")) throw;
      fail(err.what());
    }
  }
  if (!rows.empty()) {
    out.items.items.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < rows[i].size(); ++k)
        out.items.items(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  }
  return out;
}

}  // namespace hijaiyah::sim
