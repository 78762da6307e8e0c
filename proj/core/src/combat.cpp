#include "mazo/combat.hpp"

#include <algorithm>

#include "mazo/error.hpp"

namespace mazo {

std::string_view to_string(CombatEventKind k) noexcept {
  switch (k) {
    case CombatEventKind::CardPlayed: return "CardPlayed";
    case CombatEventKind::DamageDealt: return "DamageDealt";
    case CombatEventKind::ShieldGained: return "ShieldGained";
    case CombatEventKind::AxisChanged: return "AxisChanged";
    case CombatEventKind::IntentExecuted: return "IntentExecuted";
    case CombatEventKind::Death: return "Death";
    case CombatEventKind::TurnStart: return "TurnStart";
  }
  return "?";
}

std::string_view to_string(CombatOutcome o) noexcept {
  switch (o) {
    case CombatOutcome::Ongoing: return "Ongoing";
    case CombatOutcome::Victory: return "Victory";
    case CombatOutcome::Defeat: return "Defeat";
  }
  return "?";
}

CombatOutcome combat_outcome(const CombatState& state) noexcept {
  const bool heroes_dead = std::none_of(state.heroes.begin(), state.heroes.end(),
                                        [](const HeroCombat& h) { return h.combatant.alive(); });
  if (heroes_dead) return CombatOutcome::Defeat;
  const bool enemies_dead = std::none_of(state.enemies.begin(), state.enemies.end(),
                                         [](const EnemyInstance& e) { return e.combatant.alive(); });
  return enemies_dead ? CombatOutcome::Victory : CombatOutcome::Ongoing;
}

const IntentDef& current_intent(const EnemyInstance& enemy, const ContentDb& db) {
  const auto& def = lookup_enemy(db, enemy.def_id);
  return def.intent_cycle[static_cast<std::size_t>(enemy.cycle_pos) % def.intent_cycle.size()];
}

int incoming_intent_damage(const CombatState& state, const ContentDb& db) {
  int total = 0;
  for (const auto& e : state.enemies) {
    if (!e.combatant.alive()) continue;
    const auto& intent = current_intent(e, db);
    if (intent.kind == IntentKind::Attack || intent.kind == IntentKind::Multi)
      total += scaled_intent(intent.magnitude, e.combatant.axes.momentum) * intent.hits;
  }
  return total;
}

namespace {

// Mutating rules engine over one CombatState. All public transitions copy the
// state first and run one of these over the copy.
class Engine {
 public:
  Engine(CombatState& s, const ContentDb& db) : s_(s), db_(db) {}

  bool finished() const { return s_.phase.kind == PhaseKind::Finished; }

  // Returns true once the combat has ended.
  bool check_outcome() {
    if (finished()) return true;
    const auto o = combat_outcome(s_);
    if (o == CombatOutcome::Ongoing) return false;
    s_.phase = Phase::finished(o);
    return true;
  }

  void log(CombatEventKind kind, Side side, int index, int value, std::string ref = {}) {
    s_.log.push_back(CombatEvent{kind, side, index, value, std::move(ref)});
  }

  Combatant& hero(int h) { return s_.heroes[static_cast<std::size_t>(h)].combatant; }
  Combatant& enemy(int e) { return s_.enemies[static_cast<std::size_t>(e)].combatant; }

  // Shield absorbs first. Returns hp actually lost.
  int hit(Combatant& c, Side side, int index, int amount) {
    if (!c.alive() || amount <= 0) return 0;
    const int absorbed = std::min(c.shield, amount);
    c.shield -= absorbed;
    const int hp_loss = std::min(c.hp, amount - absorbed);
    c.hp -= hp_loss;
    log(CombatEventKind::DamageDealt, side, index, absorbed + hp_loss);
    if (!c.alive()) log(CombatEventKind::Death, side, index, 0);
    return hp_loss;
  }

  void gain_shield(Combatant& c, Side side, int index, int amount) {
    if (!c.alive() || amount <= 0) return;
    c.shield += amount;
    log(CombatEventKind::ShieldGained, side, index, amount);
  }

  void shift_axis(Combatant& c, Side side, int index, Axis axis, int delta) {
    if (!c.alive()) return;
    const int applied = c.axes.add(axis, delta);
    if (applied != 0) log(CombatEventKind::AxisChanged, side, index, applied, std::string(to_string(axis)));
  }

  void heal(Combatant& c, int amount) {
    if (!c.alive() || amount <= 0) return;
    c.hp = std::min(c.max_hp, c.hp + amount);
  }

  int most_wounded_hero() const {
    int best = -1;
    for (int i = 0; i < static_cast<int>(s_.heroes.size()); ++i) {
      const auto& c = s_.heroes[static_cast<std::size_t>(i)].combatant;
      if (!c.alive()) continue;
      if (best < 0 || c.hp < s_.heroes[static_cast<std::size_t>(best)].combatant.hp) best = i;
    }
    return best;
  }

  int first_living_enemy() const {
    for (int i = 0; i < static_cast<int>(s_.enemies.size()); ++i)
      if (s_.enemies[static_cast<std::size_t>(i)].combatant.alive()) return i;
    return -1;
  }

  template <typename Fn>
  void for_hero_targets(Target t, int actor, Fn fn) {
    switch (t) {
      case Target::Self: fn(actor); break;
      case Target::SingleHero:
        if (int h = most_wounded_hero(); h >= 0) fn(h);
        break;
      case Target::Party:
        for (int h = 0; h < static_cast<int>(s_.heroes.size()); ++h) fn(h);
        break;
      default: break;
    }
  }

  template <typename Fn>
  void for_enemy_targets(Target t, std::optional<int> single, Fn fn) {
    if (t == Target::SingleEnemy) {
      if (single && enemy(*single).alive()) fn(*single);
    } else if (t == Target::AllEnemies) {
      for (int e = 0; e < static_cast<int>(s_.enemies.size()); ++e)
        if (enemy(e).alive()) fn(e);
    }
  }

  // One effect with a hero as its source. Returns true if the combat ended.
  bool hero_effect(int actor, const EffectSpec& fx, std::optional<int> target_enemy) {
    auto& self = s_.heroes[static_cast<std::size_t>(actor)];
    const AxisState axes = self.combatant.axes;
    switch (fx.op) {
      case EffectOp::Damage:
        if (fx.target == Target::Self) {
          hit(self.combatant, Side::Hero, actor, fx.magnitude);
        } else {
          const int amount = scaled_damage(fx.magnitude, axes.focus);
          for_enemy_targets(fx.target, target_enemy, [&](int e) { hit(enemy(e), Side::Enemy, e, amount); });
        }
        break;
      case EffectOp::Shield: {
        const int amount = scaled_shield(fx.magnitude, axes.rhythm);
        for_hero_targets(fx.target, actor, [&](int h) { gain_shield(hero(h), Side::Hero, h, amount); });
        break;
      }
      case EffectOp::AxisDelta:
        if (fx.target == Target::SingleEnemy || fx.target == Target::AllEnemies)
          for_enemy_targets(fx.target, target_enemy,
                            [&](int e) { shift_axis(enemy(e), Side::Enemy, e, *fx.axis, fx.magnitude); });
        else
          for_hero_targets(fx.target, actor,
                           [&](int h) { shift_axis(hero(h), Side::Hero, h, *fx.axis, fx.magnitude); });
        break;
      case EffectOp::GainEnergy: self.energy = std::max(0, self.energy + fx.magnitude); break;
      case EffectOp::Draw: draw(actor, fx.magnitude); break;
      case EffectOp::Heal: for_hero_targets(fx.target, actor, [&](int h) { heal(hero(h), fx.magnitude); }); break;
      case EffectOp::GainCredits: self.credits_gained += fx.magnitude; break;
      case EffectOp::RemoveShield:
        for_enemy_targets(fx.target, target_enemy, [&](int e) {
          auto& c = enemy(e);
          c.shield -= std::min(c.shield, fx.magnitude);
        });
        break;
    }
    return check_outcome();
  }

  bool run_hooks(int h, ModuleHook hook, std::optional<int> target_enemy = std::nullopt) {
    const auto modules = s_.heroes[static_cast<std::size_t>(h)].modules;
    for (const auto& id : modules) {
      const auto& m = lookup_module(db_, id);
      if (m.hook != hook) continue;
      if (!hero(h).alive()) return finished();
      std::optional<int> t = target_enemy;
      if (!t || !enemy(*t).alive()) {
        const int first = first_living_enemy();
        if (first >= 0) t = first;
      }
      if (hero_effect(h, m.effect, t)) return true;
    }
    return finished();
  }

  void draw(int h, int count) {
    auto& hc = s_.heroes[static_cast<std::size_t>(h)];
    for (int i = 0; i < count; ++i) {
      if (hc.draw_pile.empty()) {
        if (hc.discard_pile.empty()) return;
        s_.shuffle_stream.shuffle(hc.discard_pile);
        hc.draw_pile = std::move(hc.discard_pile);
        hc.discard_pile.clear();
      }
      // The top of the draw pile is its back.
      hc.hand.push_back(std::move(hc.draw_pile.back()));
      hc.draw_pile.pop_back();
    }
  }

  void discard_hand(int h) {
    auto& hc = s_.heroes[static_cast<std::size_t>(h)];
    for (auto& c : hc.hand) hc.discard_pile.push_back(std::move(c));
    hc.hand.clear();
  }

  // Start of a round: every living hero resets shield, gets energy, draws, and
  // fires TurnStart hooks.
  void round_start() {
    for (int h = 0; h < static_cast<int>(s_.heroes.size()); ++h) {
      auto& hc = s_.heroes[static_cast<std::size_t>(h)];
      if (!hc.combatant.alive()) continue;
      if (s_.turn_number > 1) hc.combatant.shield = 0;
      hc.energy = scaled_energy(s_.rules.base_energy, hc.combatant.axes.momentum);
      draw(h, s_.rules.hand_size);
      log(CombatEventKind::TurnStart, Side::Hero, h, s_.turn_number);
      if (run_hooks(h, ModuleHook::TurnStart)) return;
    }
    s_.phase = next_hero_phase(-1);
  }

  Phase next_hero_phase(int after) const {
    for (int h = after + 1; h < static_cast<int>(s_.heroes.size()); ++h)
      if (s_.heroes[static_cast<std::size_t>(h)].combatant.alive()) return Phase::hero_turn(h);
    return Phase::enemy_turn();
  }

  void end_turn(int h) {
    discard_hand(h);
    s_.phase = next_hero_phase(h);
  }

  void play_card(int h, const CombatAction& action) {
    auto& hc = s_.heroes[static_cast<std::size_t>(h)];
    const auto idx = static_cast<std::size_t>(action.hand_index);
    CardId card_id = std::move(hc.hand[idx]);
    hc.hand.erase(hc.hand.begin() + static_cast<std::ptrdiff_t>(idx));
    const auto& card = lookup_card(db_, card_id);
    hc.energy -= card.cost;
    log(CombatEventKind::CardPlayed, Side::Hero, h, card.cost, card_id);
    bool ended = false;
    for (const auto& fx : card.effects) {
      if (hero_effect(h, fx, action.target)) {
        ended = true;
        break;
      }
    }
    hc.discard_pile.push_back(std::move(card_id));
    if (!ended) ended = run_hooks(h, ModuleHook::CardPlayed, action.target);
    if (!ended && !hero(h).alive()) end_turn(h);
  }

  void enemy_phase() {
    for (auto& e : s_.enemies) e.combatant.shield = 0;
    for (int ei = 0; ei < static_cast<int>(s_.enemies.size()); ++ei) {
      auto& inst = s_.enemies[static_cast<std::size_t>(ei)];
      if (!inst.combatant.alive()) continue;
      const auto& def = lookup_enemy(db_, inst.def_id);
      const auto& intent = def.intent_cycle[static_cast<std::size_t>(inst.cycle_pos) % def.intent_cycle.size()];
      log(CombatEventKind::IntentExecuted, Side::Enemy, ei, inst.cycle_pos, std::string(to_string(intent.kind)));
      inst.cycle_pos = static_cast<int>((static_cast<std::size_t>(inst.cycle_pos) + 1) % def.intent_cycle.size());
      switch (intent.kind) {
        case IntentKind::Attack:
        case IntentKind::Multi:
          for (int k = 0; k < intent.hits; ++k) {
            const int target = most_wounded_hero();
            if (target < 0) break;
            const int amount = scaled_intent(intent.magnitude, enemy(ei).axes.momentum);
            const int lost = hit(hero(target), Side::Hero, target, amount);
            if (check_outcome()) return;
            if (lost > 0 && hero(target).alive() && run_hooks(target, ModuleHook::DamageTaken, ei)) return;
            if (!enemy(ei).alive()) break;
          }
          break;
        case IntentKind::Shield:
          gain_shield(enemy(ei), Side::Enemy, ei, scaled_intent(intent.magnitude, enemy(ei).axes.momentum));
          break;
        case IntentKind::AxisDelta: shift_axis(enemy(ei), Side::Enemy, ei, *intent.axis, intent.magnitude); break;
      }
    }
    if (check_outcome()) return;
    ++s_.turn_number;
    round_start();
  }

 private:
  CombatState& s_;
  const ContentDb& db_;
};

bool is_legal(const std::vector<CombatAction>& legal, const CombatAction& a) {
  return std::find(legal.begin(), legal.end(), a) != legal.end();
}

}  // namespace

CombatState begin_combat(const std::vector<HeroSnapshot>& party, const std::vector<EnemyId>& encounter,
                         const ContentDb& db, RngStream shuffle_stream, RngStream ai_stream, CombatRules rules) {
  if (party.empty()) throw ContractViolation("begin_combat: empty party");
  if (encounter.empty()) throw ContractViolation("begin_combat: empty encounter");
  CombatState s;
  s.shuffle_stream = shuffle_stream;
  s.ai_stream = ai_stream;
  s.rules = rules;
  for (const auto& id : encounter) {
    const auto& def = lookup_enemy(db, id);
    const int hp = std::max(1, static_cast<int>(static_cast<long>(def.max_hp) * rules.enemy_hp_percent / 100));
    s.enemies.push_back(EnemyInstance{id, Combatant{hp, hp, 0, def.start_axes}, 0});
  }
  for (std::size_t i = 0; i < party.size(); ++i) {
    const auto& p = party[i];
    for (const auto& c : p.deck) (void)lookup_card(db, c);
    for (const auto& m : p.modules) (void)lookup_module(db, m);
    HeroCombat hc;
    hc.hero_index = static_cast<int>(i);
    hc.combatant = Combatant{std::clamp(p.hp, 0, p.max_hp), p.max_hp, 0, AxisState{}};
    hc.modules = p.modules;
    hc.draw_pile = p.deck;
    s.shuffle_stream.shuffle(hc.draw_pile);
    s.heroes.push_back(std::move(hc));
  }
  Engine engine(s, db);
  for (int h = 0; h < static_cast<int>(s.heroes.size()); ++h) {
    if (!s.heroes[static_cast<std::size_t>(h)].combatant.alive()) continue;
    if (engine.run_hooks(h, ModuleHook::CombatStart)) return s;
  }
  if (engine.check_outcome()) return s;
  engine.round_start();
  return s;
}

std::vector<CombatAction> legal_actions(const CombatState& state, int hero_index, const ContentDb& db) {
  if (state.phase != Phase::hero_turn(hero_index))
    throw WrongPhase("legal_actions: not hero " + std::to_string(hero_index) + "'s turn");
  const auto& hc = state.heroes[static_cast<std::size_t>(hero_index)];
  std::vector<CombatAction> out;
  for (int i = 0; i < static_cast<int>(hc.hand.size()); ++i) {
    const auto& card = lookup_card(db, hc.hand[static_cast<std::size_t>(i)]);
    if (card.cost > hc.energy) continue;
    if (card.needs_enemy_target()) {
      for (int e = 0; e < static_cast<int>(state.enemies.size()); ++e)
        if (state.enemies[static_cast<std::size_t>(e)].combatant.alive()) out.push_back(CombatAction::play(i, e));
    } else {
      out.push_back(CombatAction::play(i));
    }
  }
  out.push_back(CombatAction::end_turn());
  return out;
}

CombatState apply_action(CombatState state, int hero_index, const CombatAction& action, const ContentDb& db) {
  if (state.phase != Phase::hero_turn(hero_index) || !is_legal(legal_actions(state, hero_index, db), action))
    throw IllegalAction("apply_action: action not legal for hero " + std::to_string(hero_index));
  Engine engine(state, db);
  if (action.kind == CombatAction::Kind::EndTurn)
    engine.end_turn(hero_index);
  else
    engine.play_card(hero_index, action);
  return state;
}

CombatState resolve_enemy_phase(CombatState state, const ContentDb& db) {
  if (state.phase.kind != PhaseKind::EnemyTurn) throw WrongPhase("resolve_enemy_phase: not the enemy turn");
  Engine engine(state, db);
  engine.enemy_phase();
  return state;
}

}  // namespace mazo
