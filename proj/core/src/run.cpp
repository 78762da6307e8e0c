#include "mazo/run.hpp"

#include <algorithm>
#include <numeric>

#include "mazo/error.hpp"

namespace mazo {

namespace {

constexpr std::array<std::string_view, 7> kSceneNames = {"ChoosingNode", "InCombat",       "AtShop", "AtEvent",
                                                         "AtRest",       "ChoosingReward", "Finished"};

Tier tier_for(RoomKind k) {
  switch (k) {
    case RoomKind::Elite:
    case RoomKind::Treasure: return Tier::Elite;
    case RoomKind::Boss: return Tier::Boss;
    default: return Tier::Normal;
  }
}

const MapNode& current(const RunState& run) {
  return run.party.map.nodes.at(static_cast<std::size_t>(run.party.current_node));
}

void check_hero(const RunState& run, int hero_index) {
  if (hero_index < 0 || hero_index >= static_cast<int>(run.heroes.size()))
    throw IllegalAction("hero index " + std::to_string(hero_index) + " out of range");
}

// First living hero with index >= from, or -1.
int living_from(const RunState& run, int from) {
  for (int h = from; h < static_cast<int>(run.heroes.size()); ++h)
    if (run.heroes[static_cast<std::size_t>(h)].alive()) return h;
  return -1;
}

// Weighted draw without replacement; stops early when the pool runs dry.
template <typename Item, typename WeightFn>
std::vector<Item> weighted_pick(RngStream& rng, std::vector<Item> pool, int count, WeightFn weight) {
  std::vector<Item> out;
  while (count-- > 0 && !pool.empty()) {
    std::uint64_t total = 0;
    for (const auto& it : pool) total += static_cast<std::uint64_t>(weight(it));
    std::uint64_t r = rng.next_below(total);
    std::size_t i = 0;
    for (; i < pool.size(); ++i) {
      const auto w = static_cast<std::uint64_t>(weight(pool[i]));
      if (r < w) break;
      r -= w;
    }
    out.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

std::vector<CardId> pick_cards(RngStream& rng, const RewardTable& table, int count) {
  auto picked = weighted_pick(rng, table.cards, count, [](const WeightedCard& w) { return w.weight; });
  std::vector<CardId> out;
  for (auto& w : picked) out.push_back(std::move(w.card));
  return out;
}

std::vector<ModuleId> pick_modules(RngStream& rng, const ContentDb& db, int count) {
  std::vector<ModuleId> pool;
  for (const auto& [id, m] : db.modules) pool.push_back(id);
  return weighted_pick(rng, std::move(pool), count, [](const ModuleId&) { return 1; });
}

scene::ChoosingReward make_rewards(RunState& run, Tier tier, bool with_modules, const ContentDb& db) {
  const auto& table = db.reward_tables.at(tier);
  auto& rng = run.stream(StreamLabel::Rewards);
  scene::ChoosingReward r;
  r.offers.resize(run.heroes.size());
  for (std::size_t h = 0; h < run.heroes.size(); ++h) {
    if (!run.heroes[h].alive()) continue;
    r.offers[h].cards = pick_cards(rng, table, kRewardCardChoices);
    r.offers[h].credits = rng.next_in_range(table.credits_min, table.credits_max);
    if (with_modules) r.offers[h].modules = pick_modules(rng, db, kBossModuleChoices);
  }
  r.acting_hero = std::max(0, living_from(run, 0));
  return r;
}

void finish_room(RunState& run) {
  const RoomKind kind = current(run).kind;
  if (kind == RoomKind::Shop || kind == RoomKind::Event || kind == RoomKind::Rest || kind == RoomKind::Treasure)
    ++run.party.room_counters[kind];
  run.scene = scene::ChoosingNode{};
}

// Moves the scene's acting hero past `hero_index`, or closes the room.
template <typename SceneT>
void advance_acting(RunState& run, int hero_index) {
  const int next = living_from(run, hero_index + 1);
  if (next < 0)
    finish_room(run);
  else
    std::get<SceneT>(run.scene).acting_hero = next;
}

template <typename SceneT>
SceneT& expect_scene(RunState& run, int hero_index, std::string_view op) {
  check_hero(run, hero_index);
  auto* s = std::get_if<SceneT>(&run.scene);
  if (!s) throw WrongPhase(std::string(op) + ": wrong scene " + std::string(to_string(scene_kind(run.scene))));
  if (s->acting_hero != hero_index)
    throw IllegalAction(std::string(op) + ": hero " + std::to_string(hero_index) + " is not acting");
  return *s;
}

void apply_outcome(HeroState& hero, const EffectSpec& fx) {
  switch (fx.op) {
    case EffectOp::Damage: hero.hp = std::max(1, hero.hp - fx.magnitude); break;
    case EffectOp::Heal: hero.hp = std::min(hero.max_hp, hero.hp + fx.magnitude); break;
    case EffectOp::GainCredits: hero.credits = std::max(0, hero.credits + fx.magnitude); break;
    default: break;
  }
}

void begin_room_combat(RunState& run, RoomKind kind, const ContentDb& db) {
  const auto sector = static_cast<std::size_t>(current(run).sector);
  const auto& table = db.encounters[std::min(sector, db.encounters.size() - 1)];
  const auto& groups = table.groups.at(tier_for(kind));
  auto picked = weighted_pick(run.stream(StreamLabel::EnemyAi), groups, 1, [](const EnemyGroup& g) { return g.weight; });

  std::vector<HeroSnapshot> party;
  for (std::size_t h = 0; h < run.heroes.size(); ++h) party.push_back(snapshot_of(run.heroes[h], static_cast<int>(h)));
  CombatRules rules;
  rules.enemy_hp_percent = run.config.players == 2 ? kTwoPlayerEnemyHpPercent : 100;
  // Each room gets its own streams keyed by its position along the path.
  const auto ordinal = static_cast<std::uint64_t>(run.party.visited_path.size());
  run.scene = scene::InCombat{begin_combat(party, picked.front().enemies, db,
                                           derive_stream(run.seed, StreamLabel::Shuffle, ordinal),
                                           derive_stream(run.seed, StreamLabel::EnemyAi, ordinal), rules)};
  if (combat_outcome(std::get<scene::InCombat>(run.scene).combat) != CombatOutcome::Ongoing)
    run = resolve_combat_end(std::move(run), db);
}

}  // namespace

SceneKind scene_kind(const Scene& s) noexcept { return static_cast<SceneKind>(s.index()); }
std::string_view to_string(SceneKind k) noexcept { return kSceneNames[static_cast<std::size_t>(k)]; }
std::optional<SceneKind> parse_scene_kind(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kSceneNames.size(); ++i)
    if (kSceneNames[i] == s) return static_cast<SceneKind>(i);
  return std::nullopt;
}
std::string_view to_string(RunResult r) noexcept { return r == RunResult::Won ? "Won" : "Lost"; }

HeroSnapshot snapshot_of(const HeroState& hero, int index) {
  return HeroSnapshot{index, hero.deck, hero.modules, hero.hp, hero.max_hp};
}

AxisState standing_axes(const HeroState& hero, const ContentDb& db) {
  AxisState axes;
  for (const auto& id : hero.modules) {
    const auto& m = lookup_module(db, id);
    if (m.hook == ModuleHook::CombatStart && m.effect.op == EffectOp::AxisDelta && m.effect.target == Target::Self)
      axes.add(*m.effect.axis, m.effect.magnitude);
  }
  return axes;
}

bool requirement_met(const EventChoice& choice, const HeroState& hero, const ContentDb& db) {
  if (choice.credits_requirement && hero.credits < choice.credits_requirement->credits_min) return false;
  if (choice.axis_requirement &&
      standing_axes(hero, db).get(choice.axis_requirement->axis) < choice.axis_requirement->min)
    return false;
  return true;
}

RunState start_run(Seed seed, const RunConfig& config, const ContentDb& db) {
  validate_config(config);
  if (db.starter_deck.empty() || db.encounters.empty()) throw ConfigError("content pack lacks starter deck or encounters");
  RunState run;
  run.config = config;
  run.seed = seed;
  for (StreamLabel l : kAllStreamLabels) run.stream(l) = derive_stream(seed, l, 0);
  run.party.map = generate_map(run.stream(StreamLabel::MapGen), config);
  for (RoomKind k : kAllRoomKinds) run.party.room_counters[k] = 0;
  HeroState hero;
  hero.deck = db.starter_deck;
  run.heroes.assign(static_cast<std::size_t>(config.players), hero);
  run.scene = scene::ChoosingNode{};
  return run;
}

std::vector<int> available_moves(const RunState& run) {
  if (!std::holds_alternative<scene::ChoosingNode>(run.scene)) throw WrongPhase("available_moves: not choosing a node");
  if (run.party.current_node < 0) return run.party.map.sector_entries.front();
  return run.party.map.successors(run.party.current_node);
}

RunState enter_node(RunState run, int node_id, const ContentDb& db) {
  const auto moves = available_moves(run);
  if (std::find(moves.begin(), moves.end(), node_id) == moves.end())
    throw IllegalAction("enter_node: node " + std::to_string(node_id) + " is not reachable");
  run.party.visited_path.push_back(node_id);
  run.party.current_node = node_id;
  const RoomKind kind = current(run).kind;
  switch (kind) {
    case RoomKind::Combat:
    case RoomKind::Elite:
    case RoomKind::Boss: begin_room_combat(run, kind, db); break;
    case RoomKind::Shop: {
      const auto& rules = db.shop_rules;
      auto& rng = run.stream(StreamLabel::Shop);
      scene::AtShop shop;
      for (auto& id : pick_cards(rng, db.reward_tables.at(Tier::Normal), rules.card_slots))
        shop.inventory.push_back({ShopItemKind::Card, std::move(id), rng.next_in_range(rules.card.min, rules.card.max), 0, false});
      for (auto& id : pick_modules(rng, db, rules.module_slots))
        shop.inventory.push_back(
            {ShopItemKind::Module, std::move(id), rng.next_in_range(rules.module.min, rules.module.max), 0, false});
      shop.inventory.push_back(
          {ShopItemKind::Heal, {}, rng.next_in_range(rules.heal.min, rules.heal.max), rules.heal_amount, false});
      shop.acting_hero = std::max(0, living_from(run, 0));
      run.scene = std::move(shop);
      break;
    }
    case RoomKind::Event: {
      std::vector<EventId> ids;
      for (const auto& [id, e] : db.events) ids.push_back(id);
      if (ids.empty()) {
        finish_room(run);
        break;
      }
      const auto pick = run.stream(StreamLabel::Events).next_below(ids.size());
      run.scene = scene::AtEvent{ids[static_cast<std::size_t>(pick)], std::max(0, living_from(run, 0))};
      break;
    }
    case RoomKind::Rest: run.scene = scene::AtRest{std::max(0, living_from(run, 0))}; break;
    case RoomKind::Treasure: run.scene = make_rewards(run, Tier::Elite, false, db); break;
  }
  return run;
}

RunState resolve_combat_end(RunState run, const ContentDb& db) {
  auto* s = std::get_if<scene::InCombat>(&run.scene);
  if (!s) throw WrongPhase("resolve_combat_end: not in combat");
  const auto outcome = combat_outcome(s->combat);
  if (outcome == CombatOutcome::Ongoing) throw WrongPhase("resolve_combat_end: combat still ongoing");
  for (std::size_t h = 0; h < run.heroes.size(); ++h) {
    const auto& hc = s->combat.heroes[h];
    run.heroes[h].hp = hc.combatant.hp;
    run.heroes[h].max_hp = hc.combatant.max_hp;
    run.heroes[h].credits = std::max(0, run.heroes[h].credits + hc.credits_gained);
  }
  if (outcome == CombatOutcome::Defeat) {
    run.scene = scene::Finished{RunResult::Lost};
    return run;
  }
  const RoomKind kind = current(run).kind;
  ++run.party.room_counters[kind];
  if (kind == RoomKind::Boss) {
    ++run.party.level_progression;
    if (current(run).sector + 1 >= run.config.sector_count) {
      run.scene = scene::Finished{RunResult::Won};
      return run;
    }
  }
  run.scene = make_rewards(run, tier_for(kind), kind == RoomKind::Boss, db);
  return run;
}

RunState combat_action(RunState run, int hero_index, const CombatAction& action, const ContentDb& db) {
  auto* s = std::get_if<scene::InCombat>(&run.scene);
  if (!s) throw WrongPhase("combat_action: not in combat");
  s->combat = apply_action(std::move(s->combat), hero_index, action, db);
  if (s->combat.phase.kind == PhaseKind::EnemyTurn) s->combat = resolve_enemy_phase(std::move(s->combat), db);
  if (s->combat.phase.kind == PhaseKind::Finished) run = resolve_combat_end(std::move(run), db);
  return run;
}

RunState resolve_reward(RunState run, int hero_index, const RewardPick& pick, const ContentDb& db) {
  auto& r = expect_scene<scene::ChoosingReward>(run, hero_index, "resolve_reward");
  const auto& offer = r.offers[static_cast<std::size_t>(hero_index)];
  if (pick.card && std::find(offer.cards.begin(), offer.cards.end(), *pick.card) == offer.cards.end())
    throw IllegalAction("resolve_reward: card '" + *pick.card + "' not offered");
  if (pick.module && std::find(offer.modules.begin(), offer.modules.end(), *pick.module) == offer.modules.end())
    throw IllegalAction("resolve_reward: module '" + *pick.module + "' not offered");
  auto& hero = run.heroes[static_cast<std::size_t>(hero_index)];
  if (pick.card) hero.deck.push_back(lookup_card(db, *pick.card).id);
  if (pick.module) hero.modules.push_back(lookup_module(db, *pick.module).id);
  hero.credits += offer.credits;
  advance_acting<scene::ChoosingReward>(run, hero_index);
  return run;
}

RunState shop_buy(RunState run, int hero_index, int item_index, const ContentDb& db) {
  auto& shop = expect_scene<scene::AtShop>(run, hero_index, "shop_buy");
  if (item_index < 0 || item_index >= static_cast<int>(shop.inventory.size()))
    throw IllegalAction("shop_buy: no item " + std::to_string(item_index));
  auto& item = shop.inventory[static_cast<std::size_t>(item_index)];
  if (item.sold) throw IllegalAction("shop_buy: item sold out");
  auto& hero = run.heroes[static_cast<std::size_t>(hero_index)];
  if (hero.credits < item.price) throw InsufficientCredits(item.price, hero.credits);
  hero.credits -= item.price;
  item.sold = true;
  switch (item.kind) {
    case ShopItemKind::Card: hero.deck.push_back(lookup_card(db, item.id).id); break;
    case ShopItemKind::Module: hero.modules.push_back(lookup_module(db, item.id).id); break;
    case ShopItemKind::Heal: hero.hp = std::min(hero.max_hp, hero.hp + item.amount); break;
  }
  return run;
}

RunState shop_leave(RunState run, int hero_index) {
  expect_scene<scene::AtShop>(run, hero_index, "shop_leave");
  advance_acting<scene::AtShop>(run, hero_index);
  return run;
}

RunState rest_choice(RunState run, int hero_index, RestOption option) {
  expect_scene<scene::AtRest>(run, hero_index, "rest_choice");
  auto& hero = run.heroes[static_cast<std::size_t>(hero_index)];
  if (option == RestOption::Heal)
    hero.hp = std::min(hero.max_hp, hero.hp + hero.max_hp * kRestHealPercent / 100);
  else
    hero.max_hp += kMaxHpUpgrade;
  advance_acting<scene::AtRest>(run, hero_index);
  return run;
}

RunState event_choice(RunState run, int hero_index, int choice_index, const ContentDb& db) {
  auto& ev = expect_scene<scene::AtEvent>(run, hero_index, "event_choice");
  const auto& def = lookup_event(db, ev.event_id);
  if (choice_index < 0 || choice_index >= static_cast<int>(def.choices.size()))
    throw IllegalAction("event_choice: no choice " + std::to_string(choice_index));
  const auto& choice = def.choices[static_cast<std::size_t>(choice_index)];
  auto& hero = run.heroes[static_cast<std::size_t>(hero_index)];
  if (!requirement_met(choice, hero, db))
    throw RequirementNotMet("event '" + def.id + "' choice " + std::to_string(choice_index));
  for (const auto& fx : choice.outcomes) apply_outcome(hero, fx);
  if (choice.grant_card) hero.deck.push_back(*choice.grant_card);
  if (choice.remove_card && hero.deck.size() > 1) {
    auto it = std::find(hero.deck.begin(), hero.deck.end(), *choice.remove_card);
    if (it != hero.deck.end()) hero.deck.erase(it);
  }
  advance_acting<scene::AtEvent>(run, hero_index);
  return run;
}

std::optional<int> decision_owner(const RunState& run) {
  return std::visit(
      [](const auto& s) -> std::optional<int> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, scene::ChoosingNode>) {
          return 0;
        } else if constexpr (std::is_same_v<T, scene::InCombat>) {
          if (s.combat.phase.kind == PhaseKind::HeroTurn) return s.combat.phase.hero;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, scene::Finished>) {
          return std::nullopt;
        } else {
          return s.acting_hero;
        }
      },
      run.scene);
}

RunState apply_decision(RunState run, int hero_index, const Decision& d, const ContentDb& db) {
  return std::visit(
      [&](const auto& x) -> RunState {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, decision::ChooseNode>) {
          if (hero_index != 0) throw IllegalAction("only the party leader chooses nodes");
          return enter_node(std::move(run), x.node_id, db);
        } else if constexpr (std::is_same_v<T, decision::PlayCombat>) {
          return combat_action(std::move(run), hero_index, x.action, db);
        } else if constexpr (std::is_same_v<T, decision::PickReward>) {
          return resolve_reward(std::move(run), hero_index, x.pick, db);
        } else if constexpr (std::is_same_v<T, decision::BuyItem>) {
          return shop_buy(std::move(run), hero_index, x.item_index, db);
        } else if constexpr (std::is_same_v<T, decision::LeaveShop>) {
          return shop_leave(std::move(run), hero_index);
        } else if constexpr (std::is_same_v<T, decision::Rest>) {
          return rest_choice(std::move(run), hero_index, x.option);
        } else {
          return event_choice(std::move(run), hero_index, x.choice_index, db);
        }
      },
      d);
}

}  // namespace mazo
