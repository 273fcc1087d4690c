// hijaiyah: service, catalog seeding, cohort simulation and reporting.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hijaiyah/analytics.hpp"
#include "hijaiyah/error.hpp"
#include "hijaiyah/http_server.hpp"
#include "hijaiyah/service.hpp"
#include "hijaiyah/simulate.hpp"

namespace fs = std::filesystem;
using namespace hijaiyah;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Paths {
  std::string catalog;
  std::string badges;
  std::string data_dir;
  int tz_minutes = 0;
};

std::string default_asset(const char* name) { return (fs::path(HIJAIYAH_DEFAULT_ASSETS) / name).string(); }

std::string resolve_catalog(const Paths& p) {
  if (!p.catalog.empty()) return p.catalog;
  if (!p.data_dir.empty() && fs::exists(fs::path(p.data_dir) / "catalog.json"))
    return (fs::path(p.data_dir) / "catalog.json").string();
  return default_asset("catalog.json");
}

std::string resolve_badges(const Paths& p) { return p.badges.empty() ? default_asset("badges.json") : p.badges; }

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// "-" means stdin/stdout.
std::string read_input(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, fmt::format("cannot read {}", path));
  return read_all(in);
}

void write_output(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, fmt::format("cannot write {}", path));
  out << data;
}

bool is_config_error(Errc c) {
  switch (c) {
    case Errc::schema:
    case Errc::catalog_incomplete:
    case Errc::duplicate_id:
    case Errc::audio_budget_exceeded:
    case Errc::unknown_letter:
    case Errc::invalid_argument:
    case Errc::malformed_payload:
      return true;
    default:
      return false;
  }
}

std::unique_ptr<SyncService> open_service(const Paths& p, std::uint64_t snapshot_every = 1) {
  auto catalog = std::make_shared<const Catalog>(Catalog::load(resolve_catalog(p)));
  ServiceConfig cfg;
  cfg.data_dir = p.data_dir;
  cfg.tz = UtcOffset{p.tz_minutes};
  cfg.snapshot_every = snapshot_every;
  return std::make_unique<SyncService>(std::move(catalog), economy::load_badge_rules(resolve_badges(p)), cfg);
}

int cmd_serve(const Paths& p, const std::string& address, std::uint16_t port, std::string token, std::size_t threads) {
  if (token.empty()) {
    if (const char* env = std::getenv("HIJAIYAH_OPERATOR_TOKEN")) token = env;
  }
  if (token.empty()) {
    std::random_device rd;
    Rng rng((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
    token = make_uuid(rng);
    std::cerr << "operator token: " << token << '\n';
  }
  auto service = open_service(p);
  HttpServer server(*service, api::ApiConfig{token}, address, port, threads);
  std::cerr << fmt::format("listening on {}:{} ({} players, {} events)\n", address, server.port(),
                           service->profiles().size(), service->event_count());
  server.run_until_signal();
  return 0;
}

int cmd_seed(const Paths& p, const std::string& events_path) {
  const auto source = resolve_catalog(Paths{p.catalog, "", "", 0});
  const auto catalog = Catalog::load(source);
  const auto rules = economy::load_badge_rules(resolve_badges(p));
  std::cerr << fmt::format("catalog ok: {} letters, {} forms, audio {:.2f} MiB; {} badge rules\n",
                           catalog.letters().size(),
                           [&] {
                             std::size_t n = 0;
                             for (const auto& l : catalog.letters()) n += l.forms.size();
                             return n;
                           }(),
                           static_cast<double>(catalog.audio_bytes()) / (1 << 20), rules.size());
  if (p.data_dir.empty()) return 0;

  fs::create_directories(p.data_dir);
  std::ofstream(fs::path(p.data_dir) / "catalog.json") << catalog.to_json().dump(1) << '\n';
  std::ofstream(fs::path(p.data_dir) / "badges.json") << read_input(resolve_badges(p));
  if (events_path.empty()) return 0;

  // Load a cohort (simulate output) through the regular ingest path.
  std::istringstream in(read_input(events_path));
  const auto sim = sim::read_jsonl(in);
  Paths seeded = p;
  seeded.catalog = (fs::path(p.data_dir) / "catalog.json").string();
  auto service = open_service(seeded, 64);
  for (const auto& prof : sim.profiles) {
    if (service->profile(prof.player_id)) continue;
    service->create_profile({prof.player_id, prof.display_name, prof.age, prof.class_level});
  }
  std::map<PlayerId, std::vector<SessionEvent>> by_player;
  for (const auto& e : sim.events) by_player[e.player_id].push_back(e);
  std::size_t accepted = 0, duplicates = 0;
  for (auto& [player, events] : by_player) {
    std::stable_sort(events.begin(), events.end(),
                     [](const SessionEvent& a, const SessionEvent& b) { return a.client_time < b.client_time; });
    for (std::size_t i = 0; i < events.size(); i += 200) {
      SyncEnvelope env{player, {}, std::nullopt};
      env.events.assign(events.begin() + static_cast<std::ptrdiff_t>(i),
                        events.begin() + static_cast<std::ptrdiff_t>(std::min(events.size(), i + 200)));
      const auto r = service->append_events(env);
      accepted += r.accepted;
      duplicates += r.duplicates;
    }
  }
  std::cerr << fmt::format("ingested {} events ({} duplicates) for {} players\n", accepted, duplicates,
                           by_player.size());
  return 0;
}

int cmd_simulate(const Paths& p, const sim::SimConfig& cfg, const std::string& out) {
  const auto catalog = Catalog::load(resolve_catalog(p));
  const auto rules = economy::load_badge_rules(resolve_badges(p));
  std::ostringstream ss;
  sim::write_jsonl(ss, sim::simulate(catalog, rules, cfg));
  write_output(out, ss.str());
  return 0;
}

int cmd_report(const Paths& p, const std::string& in_path, const std::string& format, const std::string& json_out,
               const std::string& csv_out) {
  std::istringstream in(read_input(in_path));
  const auto data = sim::read_jsonl(in);
  analytics::EngagementConfig ecfg;
  ecfg.tz = UtcOffset{p.tz_minutes};
  const auto engagement = analytics::engagement_report(data.events, data.pairs, ecfg);
  const auto* items = data.items.items.rows() > 0 ? &data.items : nullptr;
  const auto stats = analytics::stats_report(data.pairs, &engagement, items);
  const nlohmann::json j = {{"stats", analytics::to_json(stats)}, {"engagement", analytics::to_json(engagement)}};

  if (format == "json") {
    write_output("-", j.dump(2) + "\n");
  } else if (format == "csv") {
    write_output("-", analytics::weekly_series_csv(engagement));
  } else {
    write_output("-", analytics::format_report(stats, engagement));
  }
  if (!json_out.empty()) write_output(json_out, j.dump(2) + "\n");
  if (!csv_out.empty()) write_output(csv_out, analytics::weekly_series_csv(engagement));
  return 0;
}

int cmd_export(const Paths& p, const std::string& cohort, const std::string& out) {
  if (p.data_dir.empty()) throw Error(Errc::invalid_argument, "export needs --data-dir");
  auto service = open_service(p);
  std::string body;
  for (const auto& e : service->export_events(CohortSelector::parse(cohort))) {
    body += to_json(e).dump();
    body += '\n';
  }
  write_output(out, body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hijaiyah learning service and cohort tools"};
  app.require_subcommand(1);
  Paths paths;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--catalog", paths.catalog, "Letter catalog manifest (JSON)");
    cmd->add_option("--badges", paths.badges, "Badge rules (JSON)");
    cmd->add_option("--tz-offset", paths.tz_minutes, "Local UTC offset in minutes for day/week boundaries")
        ->check(CLI::Range(-14 * 60, 14 * 60));
  };

  auto* serve = app.add_subcommand("serve", "Run the HTTP/WebSocket sync service");
  std::string address = "127.0.0.1";
  std::uint16_t port = 8080;
  std::string token;
  std::size_t threads = 2;
  add_common(serve);
  serve->add_option("--data-dir", paths.data_dir, "Persistence directory (omit for in-memory)");
  serve->add_option("--address", address, "Listen address");
  serve->add_option("--port", port, "Listen port");
  serve->add_option("--token", token, "Operator token for dashboard/export (default: $HIJAIYAH_OPERATOR_TOKEN)");
  serve->add_option("--threads", threads, "I/O threads")->check(CLI::Range(1, 64));

  auto* seed = app.add_subcommand("seed", "Validate and install the catalog, optionally loading a cohort");
  std::string seed_events;
  add_common(seed);
  seed->add_option("--data-dir", paths.data_dir, "Install into this data directory");
  seed->add_option("--events", seed_events, "Simulation output to ingest (JSON lines, - for stdin)");

  auto* simulate = app.add_subcommand("simulate", "Simulate a learner cohort through the 4-week protocol");
  sim::SimConfig cfg;
  std::string sim_out = "-";
  add_common(simulate);
  simulate->add_option("--seed", cfg.seed, "RNG seed");
  simulate->add_option("--players", cfg.players, "Number of learners");
  simulate->add_option("--weeks", cfg.weeks, "Protocol length in weeks");
  simulate->add_option("--sessions-per-week", cfg.sessions_per_week, "Scheduled sessions per week");
  simulate->add_option("--session-minutes", cfg.session_minutes, "Nominal session length");
  simulate->add_option("--learning-rate", cfg.learning_rate, "Mean per-session skill gain rate");
  simulate->add_option("--ability-mean", cfg.ability_mean, "Mean pre-test skill in [0,1]");
  simulate->add_option("--ability-sd", cfg.ability_sd, "Pre-test skill spread");
  simulate->add_option("--out", sim_out, "Output file (- for stdout)");

  auto* report = app.add_subcommand("report", "Statistics and engagement report from simulation or export output");
  std::string report_in = "-", format = "text", json_out, csv_out;
  add_common(report);
  report->add_option("--in", report_in, "Input JSON lines (- for stdin)");
  report->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json", "csv"}));
  report->add_option("--json", json_out, "Also write the JSON report here");
  report->add_option("--csv", csv_out, "Also write the weekly series CSV here");

  auto* exp = app.add_subcommand("export", "Write stored events as JSON lines");
  std::string cohort = "all", export_out = "-";
  add_common(exp);
  exp->add_option("--data-dir", paths.data_dir, "Data directory")->required();
  exp->add_option("--cohort", cohort, "all or a class level 1..6");
  exp->add_option("--out", export_out, "Output file (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*serve) return cmd_serve(paths, address, port, token, threads);
    if (*seed) return cmd_seed(paths, seed_events);
    if (*simulate) return cmd_simulate(paths, cfg, sim_out);
    if (*report) return cmd_report(paths, report_in, format, json_out, csv_out);
    if (*exp) return cmd_export(paths, cohort, export_out);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
