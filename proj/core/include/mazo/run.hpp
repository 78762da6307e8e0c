#pragma once

// Run progression. The party shares the map, current node, visited path,
// level progression, and room counters; each hero owns its deck, modules,
// hit points, and credits. Map decisions are single party choices; rewards,
// shops, rests, and events resolve per living hero in hero-index order.

#include <array>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "mazo/combat.hpp"
#include "mazo/content.hpp"
#include "mazo/map.hpp"
#include "mazo/rng.hpp"

namespace mazo {

inline constexpr int kHeroBaseHp = 70;
inline constexpr int kStartingCredits = 50;
inline constexpr int kRestHealPercent = 30;
inline constexpr int kMaxHpUpgrade = 5;
inline constexpr int kRewardCardChoices = 3;
inline constexpr int kBossModuleChoices = 2;
inline constexpr int kTwoPlayerEnemyHpPercent = 200;

struct HeroState {
  std::vector<CardId> deck;  // acquisition order
  std::vector<ModuleId> modules;
  int hp = kHeroBaseHp;
  int max_hp = kHeroBaseHp;
  int credits = kStartingCredits;

  bool alive() const noexcept { return hp > 0; }
  bool operator==(const HeroState&) const = default;
};

struct PartyState {
  MapGraph map;
  int current_node = -1;  // -1 before the first room
  std::vector<int> visited_path;
  int level_progression = 0;  // bosses defeated
  std::map<RoomKind, int> room_counters;
  bool operator==(const PartyState&) const = default;
};

enum class ShopItemKind { Card, Module, Heal };
enum class RestOption { Heal, UpgradeMaxHp };
enum class RunResult { Won, Lost };

struct ShopItem {
  ShopItemKind kind = ShopItemKind::Card;
  std::string id;  // card or module id; empty for Heal
  int price = 0;
  int amount = 0;  // hp restored, Heal only
  bool sold = false;
  bool operator==(const ShopItem&) const = default;
};

struct RewardOffer {
  std::vector<CardId> cards;
  std::vector<ModuleId> modules;
  int credits = 0;
  bool operator==(const RewardOffer&) const = default;
};

namespace scene {

struct ChoosingNode {
  bool operator==(const ChoosingNode&) const = default;
};
struct InCombat {
  CombatState combat;
  bool operator==(const InCombat&) const = default;
};
struct AtShop {
  std::vector<ShopItem> inventory;
  int acting_hero = 0;
  bool operator==(const AtShop&) const = default;
};
struct AtEvent {
  EventId event_id;
  int acting_hero = 0;
  bool operator==(const AtEvent&) const = default;
};
struct AtRest {
  int acting_hero = 0;
  bool operator==(const AtRest&) const = default;
};
struct ChoosingReward {
  std::vector<RewardOffer> offers;  // one per hero
  int acting_hero = 0;
  bool operator==(const ChoosingReward&) const = default;
};
struct Finished {
  RunResult result = RunResult::Lost;
  bool operator==(const Finished&) const = default;
};

}  // namespace scene

using Scene = std::variant<scene::ChoosingNode, scene::InCombat, scene::AtShop, scene::AtEvent, scene::AtRest,
                           scene::ChoosingReward, scene::Finished>;

enum class SceneKind { ChoosingNode, InCombat, AtShop, AtEvent, AtRest, ChoosingReward, Finished };

SceneKind scene_kind(const Scene& s) noexcept;
std::string_view to_string(SceneKind k) noexcept;
std::optional<SceneKind> parse_scene_kind(std::string_view s) noexcept;
std::string_view to_string(RunResult r) noexcept;

struct RunState {
  RunConfig config;
  Seed seed;
  PartyState party;
  std::vector<HeroState> heroes;
  Scene scene;
  std::array<RngStream, kAllStreamLabels.size()> streams;

  RngStream& stream(StreamLabel l) { return streams[static_cast<std::size_t>(l)]; }
  const RngStream& stream(StreamLabel l) const { return streams[static_cast<std::size_t>(l)]; }
  bool finished() const noexcept { return std::holds_alternative<scene::Finished>(scene); }
  bool operator==(const RunState&) const = default;
};

struct RewardPick {
  std::optional<CardId> card;  // nullopt = skip
  std::optional<ModuleId> module;
  bool operator==(const RewardPick&) const = default;
};

namespace decision {

struct ChooseNode {
  int node_id = 0;
  bool operator==(const ChooseNode&) const = default;
};
struct PlayCombat {
  CombatAction action;
  bool operator==(const PlayCombat&) const = default;
};
struct PickReward {
  RewardPick pick;
  bool operator==(const PickReward&) const = default;
};
struct BuyItem {
  int item_index = 0;
  bool operator==(const BuyItem&) const = default;
};
struct LeaveShop {
  bool operator==(const LeaveShop&) const = default;
};
struct Rest {
  RestOption option = RestOption::Heal;
  bool operator==(const Rest&) const = default;
};
struct PickEvent {
  int choice_index = 0;
  bool operator==(const PickEvent&) const = default;
};

}  // namespace decision

using Decision = std::variant<decision::ChooseNode, decision::PlayCombat, decision::PickReward, decision::BuyItem,
                              decision::LeaveShop, decision::Rest, decision::PickEvent>;

RunState start_run(Seed seed, const RunConfig& config, const ContentDb& db);

std::vector<int> available_moves(const RunState& run);
RunState enter_node(RunState run, int node_id, const ContentDb& db);
RunState resolve_combat_end(RunState run, const ContentDb& db);

// Applies one hero combat action, then resolves the enemy phase and the end
// of combat when they follow.
RunState combat_action(RunState run, int hero_index, const CombatAction& action, const ContentDb& db);

RunState resolve_reward(RunState run, int hero_index, const RewardPick& pick, const ContentDb& db);
RunState shop_buy(RunState run, int hero_index, int item_index, const ContentDb& db);
RunState shop_leave(RunState run, int hero_index);
RunState rest_choice(RunState run, int hero_index, RestOption option);
RunState event_choice(RunState run, int hero_index, int choice_index, const ContentDb& db);

// Hero whose input the current scene waits on; node choices belong to hero 0
// (the party leader). nullopt once finished.
std::optional<int> decision_owner(const RunState& run);

RunState apply_decision(RunState run, int hero_index, const Decision& d, const ContentDb& db);

// Axis values a hero would open combat with: CombatStart module AxisDelta
// effects on self, clamped. Event requirements read these.
AxisState standing_axes(const HeroState& hero, const ContentDb& db);

bool requirement_met(const EventChoice& choice, const HeroState& hero, const ContentDb& db);

HeroSnapshot snapshot_of(const HeroState& hero, int index);

}  // namespace mazo
