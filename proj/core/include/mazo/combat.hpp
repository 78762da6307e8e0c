#pragma once

// Turn-based combat. CombatState is a plain value; every transition takes a
// state and returns its successor. Axes scale additively with a floor at zero:
//   damage = max(0, base + focus), shield = max(0, base + rhythm),
//   energy = max(0, base + momentum), intent = max(0, base + enemy momentum).

#include <optional>
#include <string>
#include <vector>

#include "mazo/axes.hpp"
#include "mazo/content.hpp"
#include "mazo/rng.hpp"

namespace mazo {

constexpr int scaled_damage(int base, int focus) noexcept { return base + focus > 0 ? base + focus : 0; }
constexpr int scaled_shield(int base, int rhythm) noexcept { return base + rhythm > 0 ? base + rhythm : 0; }
constexpr int scaled_energy(int base, int momentum) noexcept { return base + momentum > 0 ? base + momentum : 0; }
constexpr int scaled_intent(int base, int enemy_momentum) noexcept {
  return base + enemy_momentum > 0 ? base + enemy_momentum : 0;
}

struct CombatRules {
  int hand_size = 5;
  int base_energy = 3;
  int enemy_hp_percent = 100;
  bool operator==(const CombatRules&) const = default;
};

struct Combatant {
  int hp = 1;
  int max_hp = 1;
  int shield = 0;
  AxisState axes;

  bool alive() const noexcept { return hp > 0; }
  bool operator==(const Combatant&) const = default;
};

struct EnemyInstance {
  EnemyId def_id;
  Combatant combatant;
  int cycle_pos = 0;
  bool operator==(const EnemyInstance&) const = default;
};

struct HeroCombat {
  int hero_index = 0;
  Combatant combatant;
  std::vector<ModuleId> modules;
  std::vector<CardId> hand;
  std::vector<CardId> draw_pile;
  std::vector<CardId> discard_pile;
  int energy = 0;
  int credits_gained = 0;  // settled into HeroState when the combat ends
  bool operator==(const HeroCombat&) const = default;
};

enum class CombatOutcome { Ongoing, Victory, Defeat };
enum class PhaseKind { HeroTurn, EnemyTurn, Finished };

struct Phase {
  PhaseKind kind = PhaseKind::HeroTurn;
  int hero = 0;                                   // HeroTurn only
  CombatOutcome outcome = CombatOutcome::Ongoing;  // Finished only

  static Phase hero_turn(int h) { return {PhaseKind::HeroTurn, h, CombatOutcome::Ongoing}; }
  static Phase enemy_turn() { return {PhaseKind::EnemyTurn, 0, CombatOutcome::Ongoing}; }
  static Phase finished(CombatOutcome o) { return {PhaseKind::Finished, 0, o}; }
  bool operator==(const Phase&) const = default;
};

enum class CombatEventKind { CardPlayed, DamageDealt, ShieldGained, AxisChanged, IntentExecuted, Death, TurnStart };
enum class Side { Hero, Enemy };

// value/ref by kind: CardPlayed (cost, card id), DamageDealt (amount incl.
// absorbed shield), ShieldGained (amount), AxisChanged (applied delta, axis),
// IntentExecuted (cycle position, intent kind), Death (0), TurnStart (turn).
struct CombatEvent {
  CombatEventKind kind = CombatEventKind::TurnStart;
  Side side = Side::Hero;
  int index = 0;
  int value = 0;
  std::string ref;
  bool operator==(const CombatEvent&) const = default;
};

struct CombatState {
  std::vector<HeroCombat> heroes;
  std::vector<EnemyInstance> enemies;
  Phase phase;
  int turn_number = 1;
  RngStream shuffle_stream;
  RngStream ai_stream;
  CombatRules rules;
  std::vector<CombatEvent> log;
  bool operator==(const CombatState&) const = default;
};

struct CombatAction {
  enum class Kind { PlayCard, EndTurn };
  Kind kind = Kind::EndTurn;
  int hand_index = 0;
  std::optional<int> target;

  static CombatAction end_turn() { return {}; }
  static CombatAction play(int hand_index, std::optional<int> target = std::nullopt) {
    return {Kind::PlayCard, hand_index, target};
  }
  bool operator==(const CombatAction&) const = default;
};

// What a hero brings into combat.
struct HeroSnapshot {
  int hero_index = 0;
  std::vector<CardId> deck;
  std::vector<ModuleId> modules;
  int hp = 1;
  int max_hp = 1;
};

CombatState begin_combat(const std::vector<HeroSnapshot>& party, const std::vector<EnemyId>& encounter,
                         const ContentDb& db, RngStream shuffle_stream, RngStream ai_stream,
                         CombatRules rules = {});

std::vector<CombatAction> legal_actions(const CombatState& state, int hero_index, const ContentDb& db);

// Throws IllegalAction for anything not in legal_actions.
CombatState apply_action(CombatState state, int hero_index, const CombatAction& action, const ContentDb& db);

CombatState resolve_enemy_phase(CombatState state, const ContentDb& db);

CombatOutcome combat_outcome(const CombatState& state) noexcept;

// Total attack damage the living enemies' visible intents would deal this
// enemy phase, after momentum scaling.
int incoming_intent_damage(const CombatState& state, const ContentDb& db);

const IntentDef& current_intent(const EnemyInstance& enemy, const ContentDb& db);

std::string_view to_string(CombatEventKind k) noexcept;
std::string_view to_string(CombatOutcome o) noexcept;

}  // namespace mazo
