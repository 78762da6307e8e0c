#include "mazo/actor.hpp"

#include <algorithm>

#include "mazo/error.hpp"

namespace mazo {

bool PolicyWeights::valid() const noexcept {
  if (w_trade <= 0 || w_setup <= 0 || w_zero_cost <= 0 || w_survive <= 0 || w_lethal <= 0) return false;
  const std::int64_t trade_span = 2 * ((w_setup - 1) / (2 * w_trade)) * w_trade;
  return w_setup > trade_span && w_zero_cost > w_setup + trade_span &&
         w_survive / 2 > w_zero_cost + w_setup + trade_span &&
         w_lethal > w_survive + w_zero_cost + w_setup + trade_span;
}

std::string_view to_string(RunOutcome o) noexcept {
  switch (o) {
    case RunOutcome::Win: return "Win";
    case RunOutcome::Loss: return "Loss";
    case RunOutcome::Abort: return "Abort";
  }
  return "?";
}

std::string_view to_string(AbortReason r) noexcept {
  switch (r) {
    case AbortReason::MissingProgression: return "MissingProgression";
    case AbortReason::InvalidSetup: return "InvalidSetup";
    case AbortReason::StepLimit: return "StepLimit";
  }
  return "?";
}

namespace {

bool targets_enemies(Target t) noexcept { return t == Target::SingleEnemy || t == Target::AllEnemies; }

bool positive_effect(const EffectSpec& e) noexcept {
  if (e.op == EffectOp::AxisDelta) return targets_enemies(e.target) ? e.magnitude < 0 : e.magnitude > 0;
  if (e.op == EffectOp::Damage) return targets_enemies(e.target) && e.magnitude > 0;
  return e.magnitude > 0;
}

// Intent damage this round that current hero shields would not absorb.
int unblocked_incoming(const CombatState& state, const ContentDb& db) {
  int shields = 0;
  for (const auto& h : state.heroes)
    if (h.combatant.alive()) shields += h.combatant.shield;
  return incoming_intent_damage(state, db) - shields;
}

std::int64_t score_unchecked(const CombatState& state, int hero_index, const CombatAction& action,
                             const ContentDb& db, const PolicyWeights& w) {
  if (action.kind == CombatAction::Kind::EndTurn) return 0;
  const auto& hero = state.heroes[static_cast<std::size_t>(hero_index)];
  const auto& card = lookup_card(db, hero.hand[static_cast<std::size_t>(action.hand_index)]);
  const CombatState after = apply_action(state, hero_index, action, db);

  int damage = 0;
  int shield = 0;
  for (std::size_t i = state.log.size(); i < after.log.size(); ++i) {
    const auto& ev = after.log[i];
    if (ev.kind == CombatEventKind::DamageDealt && ev.side == Side::Enemy) damage += ev.value;
    if (ev.kind == CombatEventKind::ShieldGained && ev.side == Side::Hero) shield += ev.value;
  }

  std::int64_t score = 0;
  const auto any_alive = [](const CombatState& s) {
    return std::any_of(s.enemies.begin(), s.enemies.end(), [](const auto& e) { return e.combatant.alive(); });
  };
  if (any_alive(state) && !any_alive(after)) score += w.w_lethal;

  const int needed = unblocked_incoming(state, db);
  const int covered = needed - std::max(0, unblocked_incoming(after, db));
  if (needed > 0 && covered > 0) {
    const std::int64_t half = w.w_survive / 2;
    score += half + half * std::min(covered, needed) / needed;
  }

  if (card.cost == 0 && std::any_of(card.effects.begin(), card.effects.end(), positive_effect))
    score += w.w_zero_cost;

  const auto& self_after = after.heroes[static_cast<std::size_t>(hero_index)].combatant.axes;
  if (self_after.sum() > hero.combatant.axes.sum()) score += w.w_setup;

  const std::int64_t cap = (w.w_setup - 1) / (2 * w.w_trade);
  const std::int64_t trade = std::clamp<std::int64_t>(damage + shield - 2 * card.cost, -cap, cap);
  return score + w.w_trade * trade;
}

}  // namespace

std::int64_t score_action(const CombatState& state, int hero_index, const CombatAction& action, const ContentDb& db,
                          const PolicyWeights& weights) {
  std::vector<CombatAction> legal;
  try {
    legal = legal_actions(state, hero_index, db);
  } catch (const WrongPhase& e) {
    throw IllegalAction(e.what());
  }
  if (std::find(legal.begin(), legal.end(), action) == legal.end())
    throw IllegalAction("score_action: action not legal");
  return score_unchecked(state, hero_index, action, db, weights);
}

CombatAction choose_combat_action(const CombatState& state, int hero_index, const ContentDb& db,
                                  const PolicyWeights& weights) {
  const auto legal = legal_actions(state, hero_index, db);
  CombatAction best = CombatAction::end_turn();
  std::int64_t best_score = 0;
  for (const auto& a : legal) {
    const auto s = score_unchecked(state, hero_index, a, db, weights);
    if (s > best_score) {
      best = a;
      best_score = s;
    }
  }
  return best;
}

int card_trade_value(const CardDef& card) noexcept {
  int value = -2 * card.cost;
  for (const auto& e : card.effects) {
    if (e.op == EffectOp::Damage && targets_enemies(e.target)) value += e.magnitude;
    if (e.op == EffectOp::Shield) value += e.magnitude;
  }
  return value;
}

namespace {

bool below_fraction(const HeroState& h, int num, int den) { return h.hp * den < h.max_hp * num; }

decision::ChooseNode choose_node(const RunState& run) {
  const auto moves = available_moves(run);
  if (moves.empty()) throw IllegalAction("no map moves available");
  bool any_low = false;
  bool all_high = true;
  for (const auto& h : run.heroes) {
    if (!h.alive()) continue;
    any_low = any_low || below_fraction(h, 1, 2);
    all_high = all_high && h.hp * 5 > h.max_hp * 4;
  }
  std::vector<RoomKind> prefs;
  if (any_low) prefs.push_back(RoomKind::Rest);
  if (all_high) prefs.push_back(RoomKind::Elite);
  prefs.push_back(RoomKind::Combat);
  for (RoomKind want : prefs) {
    int pick = -1;
    for (int id : moves)
      if (run.party.map.nodes[static_cast<std::size_t>(id)].kind == want && (pick < 0 || id < pick)) pick = id;
    if (pick >= 0) return {pick};
  }
  return {*std::min_element(moves.begin(), moves.end())};
}

Decision choose_reward(const scene::ChoosingReward& s, const ContentDb& db) {
  const auto& offer = s.offers[static_cast<std::size_t>(s.acting_hero)];
  RewardPick pick;
  int best = 0;
  for (const auto& id : offer.cards) {
    const int v = card_trade_value(lookup_card(db, id));
    if (v > best) {
      best = v;
      pick.card = id;
    }
  }
  if (!offer.modules.empty()) pick.module = offer.modules.front();
  return decision::PickReward{pick};
}

Decision choose_shop(const scene::AtShop& s, const HeroState& hero) {
  auto cheapest = [&](ShopItemKind kind) {
    int pick = -1;
    for (std::size_t i = 0; i < s.inventory.size(); ++i) {
      const auto& item = s.inventory[i];
      if (item.kind != kind || item.sold || item.price > hero.credits) continue;
      if (pick < 0 || item.price < s.inventory[static_cast<std::size_t>(pick)].price) pick = static_cast<int>(i);
    }
    return pick;
  };
  if (below_fraction(hero, 1, 2))
    if (int i = cheapest(ShopItemKind::Heal); i >= 0) return decision::BuyItem{i};
  if (int i = cheapest(ShopItemKind::Module); i >= 0) return decision::BuyItem{i};
  return decision::LeaveShop{};
}

Decision choose_event(const scene::AtEvent& s, const HeroState& hero, const ContentDb& db) {
  const auto& ev = lookup_event(db, s.event_id);
  for (std::size_t i = 0; i < ev.choices.size(); ++i) {
    const auto& c = ev.choices[i];
    if (!requirement_met(c, hero, db)) continue;
    int net = 0;
    for (const auto& o : c.outcomes) net += o.op == EffectOp::Damage ? -o.magnitude : o.magnitude;
    if (net >= 0) return decision::PickEvent{static_cast<int>(i)};
  }
  for (std::size_t i = 0; i < ev.choices.size(); ++i)
    if (ev.choices[i].unconditional()) return decision::PickEvent{static_cast<int>(i)};
  throw IllegalAction("event has no resolvable choice");
}

}  // namespace

Decision choose_progression(const RunState& run, const ContentDb& db, const PolicyWeights& weights) {
  return std::visit(
      [&](const auto& s) -> Decision {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, scene::ChoosingNode>) {
          return choose_node(run);
        } else if constexpr (std::is_same_v<T, scene::InCombat>) {
          return decision::PlayCombat{choose_combat_action(s.combat, s.combat.phase.hero, db, weights)};
        } else if constexpr (std::is_same_v<T, scene::ChoosingReward>) {
          return choose_reward(s, db);
        } else if constexpr (std::is_same_v<T, scene::AtShop>) {
          return choose_shop(s, run.heroes[static_cast<std::size_t>(s.acting_hero)]);
        } else if constexpr (std::is_same_v<T, scene::AtEvent>) {
          return choose_event(s, run.heroes[static_cast<std::size_t>(s.acting_hero)], db);
        } else if constexpr (std::is_same_v<T, scene::AtRest>) {
          const auto& h = run.heroes[static_cast<std::size_t>(s.acting_hero)];
          return decision::Rest{below_fraction(h, 7, 10) ? RestOption::Heal : RestOption::UpgradeMaxHp};
        } else {
          throw WrongPhase("choose_progression: run is finished");
        }
      },
      run.scene);
}

namespace {

RunRecord finish_record(const RunState& run, RunRecord rec) {
  const auto count = [&](RoomKind k) {
    auto it = run.party.room_counters.find(k);
    return it == run.party.room_counters.end() ? 0 : it->second;
  };
  rec.combats = count(RoomKind::Combat);
  rec.elites = count(RoomKind::Elite);
  rec.bosses = count(RoomKind::Boss);
  rec.final_hp = 0;
  rec.surviving_heroes = 0;
  for (const auto& h : run.heroes) {
    if (!h.alive()) continue;
    rec.final_hp += h.hp;
    ++rec.surviving_heroes;
  }
  return rec;
}

RunRecord aborted(const RunState& run, RunRecord rec, AbortReason reason) {
  rec.outcome = RunOutcome::Abort;
  rec.abort_reason = reason;
  return finish_record(run, rec);
}

}  // namespace

RunRecord continue_run(RunState& run, const ContentDb& db, const PolicyWeights& weights, const Limits& limits,
                       const StepObserver& observer, int steps_taken) {
  RunRecord rec;
  rec.seed = run.seed;
  rec.steps = steps_taken;
  int combat_steps = 0;
  while (!run.finished()) {
    const bool in_combat = std::holds_alternative<scene::InCombat>(run.scene);
    if (!in_combat) combat_steps = 0;
    if (rec.steps >= limits.run_step_limit || (in_combat && combat_steps >= limits.combat_step_limit))
      return aborted(run, rec, AbortReason::StepLimit);
    const auto owner = decision_owner(run);
    if (!owner) return aborted(run, rec, AbortReason::MissingProgression);
    Decision d;
    try {
      d = choose_progression(run, db, weights);
      if (observer) observer(run, *owner, d);
      run = apply_decision(run, *owner, d, db);
    } catch (const Error&) {
      return aborted(run, rec, AbortReason::MissingProgression);
    }
    ++rec.steps;
    if (in_combat) ++combat_steps;
  }
  rec.outcome = std::get<scene::Finished>(run.scene).result == RunResult::Won ? RunOutcome::Win : RunOutcome::Loss;
  return finish_record(run, rec);
}

RunRecord play_run(Seed seed, const RunConfig& config, const ContentDb& db, const PolicyWeights& weights,
                   const Limits& limits, RunState* final_state) {
  RunRecord rec;
  rec.seed = seed;
  if (limits.combat_step_limit <= 0 || limits.run_step_limit <= 0 || !weights.valid() ||
      !validate_content(db).empty()) {
    rec.outcome = RunOutcome::Abort;
    rec.abort_reason = AbortReason::InvalidSetup;
    return rec;
  }
  RunState run;
  try {
    run = start_run(seed, config, db);
  } catch (const Error&) {
    rec.outcome = RunOutcome::Abort;
    rec.abort_reason = AbortReason::InvalidSetup;
    return rec;
  }
  rec = continue_run(run, db, weights, limits);
  if (final_state) *final_state = std::move(run);
  return rec;
}

}  // namespace mazo
