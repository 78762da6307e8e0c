#pragma once

// Data-driven content tables. Every effect the rules core executes comes from
// a pack; the engine hard-codes no cards, enemies, or events.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mazo/axes.hpp"

namespace mazo {

using CardId = std::string;
using EnemyId = std::string;
using ModuleId = std::string;
using EventId = std::string;
using LocaleKey = std::string;

inline constexpr int kMaxMagnitude = 999;
inline constexpr int kPackVersion = 1;

enum class EffectOp { Damage, Shield, AxisDelta, GainEnergy, Draw, Heal, GainCredits, RemoveShield };
enum class Target { Self, SingleEnemy, AllEnemies, SingleHero, Party };
enum class CardKind { Attack, Skill, Power };
enum class IntentKind { Attack, Shield, AxisDelta, Multi };
enum class Tier { Normal, Elite, Boss };
enum class ModuleHook { CombatStart, TurnStart, CardPlayed, DamageTaken };

struct EffectSpec {
  EffectOp op = EffectOp::Damage;
  int magnitude = 0;
  std::optional<Axis> axis;
  Target target = Target::Self;
  bool operator==(const EffectSpec&) const = default;
};

struct CardDef {
  CardId id;
  LocaleKey name_key;
  int cost = 0;
  CardKind kind = CardKind::Skill;
  std::vector<EffectSpec> effects;

  bool needs_enemy_target() const noexcept;
  bool operator==(const CardDef&) const = default;
};

struct IntentDef {
  IntentKind kind = IntentKind::Attack;
  int magnitude = 0;
  std::optional<Axis> axis;
  int hits = 1;
  bool operator==(const IntentDef&) const = default;
};

struct EnemyDef {
  EnemyId id;
  LocaleKey name_key;
  int max_hp = 1;
  Tier tier = Tier::Normal;
  std::vector<IntentDef> intent_cycle;
  AxisState start_axes;
  bool operator==(const EnemyDef&) const = default;
};

struct ModuleDef {
  ModuleId id;
  LocaleKey name_key;
  ModuleHook hook = ModuleHook::CombatStart;
  EffectSpec effect;
  bool operator==(const ModuleDef&) const = default;
};

struct AxisRequirement {
  Axis axis = Axis::Focus;
  int min = 0;
  bool operator==(const AxisRequirement&) const = default;
};

struct CreditsRequirement {
  int credits_min = 0;
  bool operator==(const CreditsRequirement&) const = default;
};

struct EventChoice {
  LocaleKey label_key;
  std::optional<AxisRequirement> axis_requirement;
  std::optional<CreditsRequirement> credits_requirement;
  std::vector<EffectSpec> outcomes;
  std::optional<CardId> grant_card;
  std::optional<CardId> remove_card;

  bool unconditional() const noexcept { return !axis_requirement && !credits_requirement; }
  bool operator==(const EventChoice&) const = default;
};

struct EventDef {
  EventId id;
  LocaleKey prompt_key;
  std::vector<EventChoice> choices;
  bool operator==(const EventDef&) const = default;
};

struct WeightedCard {
  CardId card;
  int weight = 1;
  bool operator==(const WeightedCard&) const = default;
};

struct RewardTable {
  std::vector<WeightedCard> cards;
  int credits_min = 0;
  int credits_max = 0;
  bool operator==(const RewardTable&) const = default;
};

struct PriceRange {
  int min = 0;
  int max = 0;
  bool operator==(const PriceRange&) const = default;
};

struct ShopRules {
  PriceRange card;
  PriceRange module;
  PriceRange heal;
  int heal_amount = 0;
  int card_slots = 3;
  int module_slots = 1;
  bool operator==(const ShopRules&) const = default;
};

struct EnemyGroup {
  std::vector<EnemyId> enemies;
  int weight = 1;
  bool operator==(const EnemyGroup&) const = default;
};

// Weighted enemy groups for one sector, keyed by tier.
struct SectorEncounters {
  std::map<Tier, std::vector<EnemyGroup>> groups;
  bool operator==(const SectorEncounters&) const = default;
};

using LocaleTable = std::map<LocaleKey, std::string>;

struct ContentDb {
  int version = kPackVersion;
  std::map<CardId, CardDef> cards;
  std::map<EnemyId, EnemyDef> enemies;
  std::map<ModuleId, ModuleDef> modules;
  std::map<EventId, EventDef> events;
  std::map<Tier, RewardTable> reward_tables;
  ShopRules shop_rules;
  std::vector<SectorEncounters> encounters;  // index = sector; last entry repeats
  std::vector<CardId> starter_deck;
  std::map<std::string, LocaleTable> locales;

  bool operator==(const ContentDb&) const = default;
};

inline constexpr std::array<std::string_view, 2> kRequiredLocales = {"en", "es"};

// Structural parse only; throws ContentError naming the first malformed field.
ContentDb parse_pack(std::string_view pack_text);

// Every invariant violation, each naming the offending id. Empty iff valid.
std::vector<std::string> validate_content(const ContentDb& db);

// parse_pack + validate_content; throws ContentError with the full list.
ContentDb load_content(std::string_view pack_text);

// Canonical text: key-sorted, compact, UTF-8, integers only.
std::string serialize_content(const ContentDb& db);

// FNV-1a 64 over serialize_content(db).
std::uint64_t content_hash(const ContentDb& db);

std::string_view baseline_pack_text();
const ContentDb& baseline_content();

const CardDef& lookup_card(const ContentDb& db, std::string_view id);
const EnemyDef& lookup_enemy(const ContentDb& db, std::string_view id);
const ModuleDef& lookup_module(const ContentDb& db, std::string_view id);
const EventDef& lookup_event(const ContentDb& db, std::string_view id);

const std::string& localize(const ContentDb& db, std::string_view locale, std::string_view key);

std::string_view to_string(EffectOp v) noexcept;
std::string_view to_string(Target v) noexcept;
std::string_view to_string(CardKind v) noexcept;
std::string_view to_string(IntentKind v) noexcept;
std::string_view to_string(Tier v) noexcept;
std::string_view to_string(ModuleHook v) noexcept;

std::optional<EffectOp> parse_effect_op(std::string_view s) noexcept;
std::optional<Target> parse_target(std::string_view s) noexcept;
std::optional<CardKind> parse_card_kind(std::string_view s) noexcept;
std::optional<IntentKind> parse_intent_kind(std::string_view s) noexcept;
std::optional<Tier> parse_tier(std::string_view s) noexcept;
std::optional<ModuleHook> parse_module_hook(std::string_view s) noexcept;

}  // namespace mazo
