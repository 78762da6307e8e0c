#pragma once

// Deterministic heuristic autoplay: combat action scoring, progression
// choices, the run driver and the aggregate report.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mazo/run.hpp"

namespace mazo {

struct PolicyWeights {
  std::int64_t w_lethal = 1'000'000;
  std::int64_t w_survive = 10'000;
  std::int64_t w_zero_cost = 1'000;
  std::int64_t w_setup = 100;
  std::int64_t w_trade = 1;

  // Strict ladder: every weight exceeds the full span of the terms below it.
  bool valid() const noexcept;
  bool operator==(const PolicyWeights&) const = default;
};

struct Limits {
  int combat_step_limit = 500;
  int run_step_limit = 10'000;
  bool operator==(const Limits&) const = default;
};

enum class RunOutcome { Win, Loss, Abort };
enum class AbortReason { MissingProgression, InvalidSetup, StepLimit };

std::string_view to_string(RunOutcome o) noexcept;
std::string_view to_string(AbortReason r) noexcept;

struct RunRecord {
  Seed seed;
  RunOutcome outcome = RunOutcome::Loss;
  std::optional<AbortReason> abort_reason;
  int combats = 0;
  int elites = 0;
  int bosses = 0;
  int final_hp = 0;
  int surviving_heroes = 0;
  int steps = 0;
  bool operator==(const RunRecord&) const = default;
};

// Score of one legal combat action for hero_index; EndTurn scores 0.
// Throws IllegalAction when the action is not legal.
std::int64_t score_action(const CombatState& state, int hero_index, const CombatAction& action, const ContentDb& db,
                          const PolicyWeights& weights = {});

// Throws WrongPhase unless it is hero_index's turn.
CombatAction choose_combat_action(const CombatState& state, int hero_index, const ContentDb& db,
                                  const PolicyWeights& weights = {});

// Static worth of a card offered as a reward: damage plus shield minus
// twice the cost, before any axis scaling.
int card_trade_value(const CardDef& card) noexcept;

// Decision for the scene's current owner. Throws WrongPhase when finished.
Decision choose_progression(const RunState& run, const ContentDb& db, const PolicyWeights& weights = {});

// Called before each decision is applied.
using StepObserver = std::function<void(const RunState& before, int hero_index, const Decision& decision)>;

// Drives run to completion in place; steps_taken seeds the step counter.
RunRecord continue_run(RunState& run, const ContentDb& db, const PolicyWeights& weights = {},
                       const Limits& limits = {}, const StepObserver& observer = {}, int steps_taken = 0);

RunRecord play_run(Seed seed, const RunConfig& config, const ContentDb& db, const PolicyWeights& weights = {},
                   const Limits& limits = {}, RunState* final_state = nullptr);

// Exact non-negative rational.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool operator==(const Ratio&) const = default;
  // Rounded half-up to two decimals, scaled by `scale` first (100 for a percentage).
  std::string fixed2(std::int64_t scale = 1) const;
};

struct Report {
  int runs = 0;
  int wins = 0;
  int losses = 0;
  int aborts = 0;
  Ratio win_rate;
  Ratio avg_combats;
  Ratio avg_elites;
  Ratio avg_bosses;
  std::optional<Ratio> avg_victory_hp;
  std::optional<Ratio> avg_surviving_heroes;
  bool operator==(const Report&) const = default;
};

// Throws ContractViolation on an empty list.
Report aggregate(const std::vector<RunRecord>& records);

std::string render_text(const Report& report);
// Canonical JSON with the per-seed records in the given order.
std::string render_machine(const Report& report, const std::vector<RunRecord>& records);
std::string encode_record(const RunRecord& record);

}  // namespace mazo
