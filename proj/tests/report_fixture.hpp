#pragma once

// Ten hand-tallied run records and the report they must produce.
//
//   combats 12+5+14+9+3+11+7+10+13+2 = 86  -> 8.60 over all ten runs
//   elites   2+0+1+1+0+2+1+2+0+0    =  9  -> 0.90
//   bosses   3+0+3+1+0+3+0+2+3+0    = 15  -> 1.50
//   wins are seeds 1, 3, 6, 9: hp 55+38+60+20 = 173 -> 43.25 over four wins
//   surviving heroes on wins 1+1+2+1 = 5 -> 1.25
//   the abort (seed 5) keeps 41 hp and one hero; neither counts.

#include <string>
#include <vector>

#include "mazo/actor.hpp"

namespace report_fixture {

inline std::vector<mazo::RunRecord> records() {
  using mazo::AbortReason;
  using mazo::RunOutcome;
  using mazo::Seed;
  return {
      {Seed{1}, RunOutcome::Win, std::nullopt, 12, 2, 3, 55, 1, 310},
      {Seed{2}, RunOutcome::Loss, std::nullopt, 5, 0, 0, 0, 0, 120},
      {Seed{3}, RunOutcome::Win, std::nullopt, 14, 1, 3, 38, 1, 342},
      {Seed{4}, RunOutcome::Loss, std::nullopt, 9, 1, 1, 0, 0, 230},
      {Seed{5}, RunOutcome::Abort, AbortReason::StepLimit, 3, 0, 0, 41, 1, 10000},
      {Seed{6}, RunOutcome::Win, std::nullopt, 11, 2, 3, 60, 2, 401},
      {Seed{7}, RunOutcome::Loss, std::nullopt, 7, 1, 0, 0, 0, 190},
      {Seed{8}, RunOutcome::Loss, std::nullopt, 10, 2, 2, 0, 0, 260},
      {Seed{9}, RunOutcome::Win, std::nullopt, 13, 0, 3, 20, 1, 333},
      {Seed{10}, RunOutcome::Loss, std::nullopt, 2, 0, 0, 0, 0, 44},
  };
}

inline const std::string kText =
    "runs=10 wins=4 losses=5 aborts=1\n"
    "win_rate=40.00%\n"
    "avg_combats=8.60 avg_elites=0.90 avg_bosses=1.50\n"
    "avg_victory_hp=43.25 avg_surviving_heroes=1.25\n";

}  // namespace report_fixture
