// mazo: actor balance probes and the in-process two-player soak.
//
//   mazo actor --runs 1000 --seed-start 1 [--players 2] [--report machine]
//   mazo soak  --runs 5 --seed-start 1 [--idle-limit N] [--budget N]
//
// Exit status: 0 clean, 2 when any run aborted (actor) or stalled (soak),
// 1 for bad arguments or an unloadable content pack.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mazo/actor.hpp"
#include "mazo/error.hpp"
#include "mazo/netsync.hpp"

namespace {

struct CommonArgs {
  int runs = 0;
  std::uint64_t seed_start = 1;
  std::string content;
  std::string report = "text";
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--runs", a.runs, "Number of consecutive seeds")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--seed-start", a.seed_start, "First seed")->capture_default_str();
  cmd->add_option("--content", a.content, "Content pack file (default: built-in baseline)");
  cmd->add_option("--report", a.report, "Report format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
}

mazo::ContentDb load_pack(const std::string& path) {
  if (path.empty()) return mazo::baseline_content();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read content pack '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return mazo::load_content(text.str());
}

std::vector<mazo::Seed> seed_range(const CommonArgs& a) {
  std::vector<mazo::Seed> seeds;
  for (int i = 0; i < a.runs; ++i) seeds.push_back(mazo::Seed{a.seed_start + static_cast<std::uint64_t>(i)});
  return seeds;
}

int run_actor(const CommonArgs& a, int players, const mazo::Limits& limits) {
  const auto db = load_pack(a.content);
  mazo::RunConfig config;
  config.players = players;
  mazo::validate_config(config);
  std::vector<mazo::RunRecord> records;
  for (const auto seed : seed_range(a)) records.push_back(mazo::play_run(seed, config, db, {}, limits));
  const auto report = mazo::aggregate(records);
  if (a.report == "machine")
    std::cout << mazo::render_machine(report, records) << '\n';
  else
    std::cout << mazo::render_text(report);
  return report.aborts == 0 ? 0 : 2;
}

int run_soak(const CommonArgs& a, const mazo::SoakLimits& limits) {
  const auto db = load_pack(a.content);
  mazo::RunConfig config;
  config.players = 2;
  const auto report = mazo::soak_run(seed_range(a), config, db, {}, limits);
  if (a.report == "machine")
    std::cout << mazo::render_machine(report) << '\n';
  else
    std::cout << mazo::render_text(report);
  return report.stalls == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mazo: deterministic deckbuilder probes"};
  app.require_subcommand(1);

  CommonArgs actor_args;
  int players = 1;
  mazo::Limits limits;
  auto* actor = app.add_subcommand("actor", "Play seeds with the heuristic actor and print a report");
  add_common(actor, actor_args);
  actor->add_option("--players", players, "Heroes per run")->check(CLI::Range(1, 2))->capture_default_str();
  actor->add_option("--combat-step-limit", limits.combat_step_limit, "Actions allowed per combat")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  actor->add_option("--run-step-limit", limits.run_step_limit, "Decisions allowed per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CommonArgs soak_args;
  mazo::SoakLimits soak_limits;
  auto* soak = app.add_subcommand("soak", "Drive host and guest sessions in process and report stalls");
  add_common(soak, soak_args);
  soak->add_option("--idle-limit", soak_limits.idle_limit_ticks, "Ticks without any action that count as a stall")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  soak->add_option("--budget", soak_limits.budget_ticks, "Ticks allowed per seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*actor) return run_actor(actor_args, players, limits);
    return run_soak(soak_args, soak_limits);
  } catch (const mazo::ContentError& e) {
    std::cerr << "mazo: invalid content pack\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
  } catch (const std::exception& e) {
    std::cerr << "mazo: " << e.what() << '\n';
  }
  return 1;
}
