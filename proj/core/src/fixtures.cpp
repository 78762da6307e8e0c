#include "mazo/fixtures.hpp"

#include "mazo/actor.hpp"
#include "mazo/persist.hpp"

namespace mazo {

namespace {

// Actor trajectory from seed 1, stopped before the fourth combat action.
RunState mid_combat(const ContentDb& db) {
  RunState run = start_run(Seed{1}, RunConfig{}, db);
  int combat_actions = 0;
  while (!run.finished()) {
    const bool in_combat = std::holds_alternative<scene::InCombat>(run.scene);
    if (in_combat && combat_actions == 3) break;
    const Decision d = choose_progression(run, db);
    const int owner = *decision_owner(run);
    run = apply_decision(std::move(run), owner, d, db);
    if (in_combat) ++combat_actions;
  }
  return run;
}

}  // namespace

std::vector<FixtureDoc> baseline_fixtures(const ContentDb& db) {
  RunConfig duo;
  duo.players = 2;
  return {
      {"seed1_start.mazosave.json", save_run(start_run(Seed{1}, RunConfig{}, db))},
      {"seed1_mid_combat.mazosave.json", save_run(mid_combat(db))},
      {"seed1_duo_start.mazosave.json", save_run(start_run(Seed{1}, duo, db))},
  };
}

}  // namespace mazo
