#include "mazo/content.hpp"

#include <algorithm>
#include <set>

#include "enum_tables.hpp"
#include "json_util.hpp"
#include "mazo/error.hpp"
#include "mazo/rng.hpp"

namespace mazo {

using detail::Json;

std::string_view to_string(Axis a) noexcept { return detail::kAxisNames.name(a); }
std::optional<Axis> parse_axis(std::string_view s) noexcept { return detail::kAxisNames.parse(s); }
std::string_view to_string(EffectOp v) noexcept { return detail::kEffectOpNames.name(v); }
std::string_view to_string(Target v) noexcept { return detail::kTargetNames.name(v); }
std::string_view to_string(CardKind v) noexcept { return detail::kCardKindNames.name(v); }
std::string_view to_string(IntentKind v) noexcept { return detail::kIntentKindNames.name(v); }
std::string_view to_string(Tier v) noexcept { return detail::kTierNames.name(v); }
std::string_view to_string(ModuleHook v) noexcept { return detail::kModuleHookNames.name(v); }
std::optional<EffectOp> parse_effect_op(std::string_view s) noexcept { return detail::kEffectOpNames.parse(s); }
std::optional<Target> parse_target(std::string_view s) noexcept { return detail::kTargetNames.parse(s); }
std::optional<CardKind> parse_card_kind(std::string_view s) noexcept { return detail::kCardKindNames.parse(s); }
std::optional<IntentKind> parse_intent_kind(std::string_view s) noexcept { return detail::kIntentKindNames.parse(s); }
std::optional<Tier> parse_tier(std::string_view s) noexcept { return detail::kTierNames.parse(s); }
std::optional<ModuleHook> parse_module_hook(std::string_view s) noexcept { return detail::kModuleHookNames.parse(s); }

bool CardDef::needs_enemy_target() const noexcept {
  return std::any_of(effects.begin(), effects.end(),
                     [](const EffectSpec& e) { return e.target == Target::SingleEnemy; });
}

namespace {

// ---- reading ---------------------------------------------------------------

EffectSpec read_effect(const Json& j) {
  EffectSpec e;
  e.op = detail::kEffectOpNames.require(detail::field(j, "op"), "op");
  e.magnitude = detail::get_i32(j, "magnitude");
  e.target = detail::kTargetNames.require(detail::field(j, "target"), "target");
  if (detail::has(j, "axis")) e.axis = detail::kAxisNames.require(j.at("axis"), "axis");
  return e;
}

std::vector<EffectSpec> read_effects(const Json& j, std::string_view key) {
  std::vector<EffectSpec> out;
  for (const auto& e : detail::as_array(detail::field(j, key), key)) out.push_back(read_effect(e));
  return out;
}

AxisState read_axes(const Json& j) {
  return AxisState{detail::get_i32(j, "focus"), detail::get_i32(j, "rhythm"), detail::get_i32(j, "momentum")};
}

CardDef read_card(const Json& j) {
  CardDef c;
  c.id = detail::get_str(j, "id");
  c.name_key = detail::get_str(j, "name_key");
  c.cost = detail::get_i32(j, "cost");
  c.kind = detail::kCardKindNames.require(detail::field(j, "kind"), "kind");
  c.effects = read_effects(j, "effects");
  return c;
}

EnemyDef read_enemy(const Json& j) {
  EnemyDef e;
  e.id = detail::get_str(j, "id");
  e.name_key = detail::get_str(j, "name_key");
  e.max_hp = detail::get_i32(j, "max_hp");
  e.tier = detail::kTierNames.require(detail::field(j, "tier"), "tier");
  for (const auto& ij : detail::as_array(detail::field(j, "intent_cycle"), "intent_cycle")) {
    IntentDef i;
    i.kind = detail::kIntentKindNames.require(detail::field(ij, "kind"), "kind");
    i.magnitude = detail::get_i32(ij, "magnitude");
    i.hits = detail::get_i32(ij, "hits");
    if (detail::has(ij, "axis")) i.axis = detail::kAxisNames.require(ij.at("axis"), "axis");
    e.intent_cycle.push_back(i);
  }
  e.start_axes = read_axes(detail::field(j, "start_axes"));
  return e;
}

ModuleDef read_module(const Json& j) {
  ModuleDef m;
  m.id = detail::get_str(j, "id");
  m.name_key = detail::get_str(j, "name_key");
  m.hook = detail::kModuleHookNames.require(detail::field(j, "hook"), "hook");
  m.effect = read_effect(detail::field(j, "effect"));
  return m;
}

EventDef read_event(const Json& j) {
  EventDef e;
  e.id = detail::get_str(j, "id");
  e.prompt_key = detail::get_str(j, "prompt_key");
  for (const auto& cj : detail::as_array(detail::field(j, "choices"), "choices")) {
    EventChoice c;
    c.label_key = detail::get_str(cj, "label_key");
    if (detail::has(cj, "requirement")) {
      const auto& r = detail::as_object(cj.at("requirement"), "requirement");
      if (detail::has(r, "credits_min")) {
        if (detail::has(r, "axis")) detail::shape_error("requirement has both axis and credits_min");
        c.credits_requirement = CreditsRequirement{detail::get_i32(r, "credits_min")};
      } else {
        c.axis_requirement =
            AxisRequirement{detail::kAxisNames.require(detail::field(r, "axis"), "axis"), detail::get_i32(r, "min")};
      }
    }
    c.outcomes = read_effects(cj, "outcomes");
    if (detail::has(cj, "grant_card")) c.grant_card = detail::get_str(cj, "grant_card");
    if (detail::has(cj, "remove_card")) c.remove_card = detail::get_str(cj, "remove_card");
    e.choices.push_back(std::move(c));
  }
  return e;
}

PriceRange read_range(const Json& j) { return PriceRange{detail::get_i32(j, "min"), detail::get_i32(j, "max")}; }

template <typename Def, typename Reader>
void read_keyed(const Json& root, std::string_view key, std::string_view kind, std::map<std::string, Def>& out,
                Reader reader) {
  for (const auto& item : detail::as_array(detail::field(root, key), key)) {
    Def d = reader(item);
    const std::string id = d.id;
    if (!out.emplace(id, std::move(d)).second)
      throw ContentError({"duplicate " + std::string(kind) + " id '" + id + "'"});
  }
}

// ---- writing ---------------------------------------------------------------

Json write_effect(const EffectSpec& e) {
  Json j{{"op", to_string(e.op)}, {"magnitude", e.magnitude}, {"target", to_string(e.target)}};
  if (e.axis) j["axis"] = to_string(*e.axis);
  return j;
}

Json write_effects(const std::vector<EffectSpec>& v) {
  Json arr = Json::array();
  for (const auto& e : v) arr.push_back(write_effect(e));
  return arr;
}

Json write_axes(const AxisState& a) {
  return Json{{"focus", a.focus}, {"rhythm", a.rhythm}, {"momentum", a.momentum}};
}

Json write_pack(const ContentDb& db) {
  Json j;
  j["version"] = db.version;
  Json cards = Json::array();
  for (const auto& [id, c] : db.cards)
    cards.push_back({{"id", c.id}, {"name_key", c.name_key}, {"cost", c.cost}, {"kind", to_string(c.kind)},
                     {"effects", write_effects(c.effects)}});
  j["cards"] = std::move(cards);

  Json enemies = Json::array();
  for (const auto& [id, e] : db.enemies) {
    Json cycle = Json::array();
    for (const auto& i : e.intent_cycle) {
      Json ij{{"kind", to_string(i.kind)}, {"magnitude", i.magnitude}, {"hits", i.hits}};
      if (i.axis) ij["axis"] = to_string(*i.axis);
      cycle.push_back(std::move(ij));
    }
    enemies.push_back({{"id", e.id}, {"name_key", e.name_key}, {"max_hp", e.max_hp}, {"tier", to_string(e.tier)},
                       {"intent_cycle", std::move(cycle)}, {"start_axes", write_axes(e.start_axes)}});
  }
  j["enemies"] = std::move(enemies);

  Json modules = Json::array();
  for (const auto& [id, m] : db.modules)
    modules.push_back({{"id", m.id}, {"name_key", m.name_key}, {"hook", to_string(m.hook)},
                       {"effect", write_effect(m.effect)}});
  j["modules"] = std::move(modules);

  Json events = Json::array();
  for (const auto& [id, e] : db.events) {
    Json choices = Json::array();
    for (const auto& c : e.choices) {
      Json cj{{"label_key", c.label_key}, {"outcomes", write_effects(c.outcomes)}};
      if (c.axis_requirement)
        cj["requirement"] = {{"axis", to_string(c.axis_requirement->axis)}, {"min", c.axis_requirement->min}};
      if (c.credits_requirement) cj["requirement"] = {{"credits_min", c.credits_requirement->credits_min}};
      if (c.grant_card) cj["grant_card"] = *c.grant_card;
      if (c.remove_card) cj["remove_card"] = *c.remove_card;
      choices.push_back(std::move(cj));
    }
    events.push_back({{"id", e.id}, {"prompt_key", e.prompt_key}, {"choices", std::move(choices)}});
  }
  j["events"] = std::move(events);

  Json rewards = Json::object();
  for (const auto& [tier, t] : db.reward_tables) {
    Json cards_j = Json::array();
    for (const auto& w : t.cards) cards_j.push_back({{"card", w.card}, {"weight", w.weight}});
    rewards[std::string(to_string(tier))] = {
        {"cards", std::move(cards_j)}, {"credits_min", t.credits_min}, {"credits_max", t.credits_max}};
  }
  j["reward_tables"] = std::move(rewards);

  const auto& s = db.shop_rules;
  auto range = [](const PriceRange& r) { return Json{{"min", r.min}, {"max", r.max}}; };
  j["shop_rules"] = {{"card", range(s.card)},       {"module", range(s.module)},
                     {"heal", range(s.heal)},       {"heal_amount", s.heal_amount},
                     {"card_slots", s.card_slots},  {"module_slots", s.module_slots}};

  Json encounters = Json::array();
  for (const auto& sector : db.encounters) {
    Json sj = Json::object();
    for (const auto& [tier, groups] : sector.groups) {
      Json gs = Json::array();
      for (const auto& g : groups) gs.push_back({{"enemies", g.enemies}, {"weight", g.weight}});
      sj[std::string(to_string(tier))] = std::move(gs);
    }
    encounters.push_back(std::move(sj));
  }
  j["encounters"] = std::move(encounters);
  j["starter_deck"] = db.starter_deck;
  j["locales"] = db.locales;
  return j;
}

// ---- validation ------------------------------------------------------------

class Validator {
 public:
  explicit Validator(const ContentDb& db) : db_(db) {}

  std::vector<std::string> run() {
    check_locales_present();
    for (const auto& [id, c] : db_.cards) check_card(c);
    for (const auto& [id, e] : db_.enemies) check_enemy(e);
    for (const auto& [id, m] : db_.modules) check_module(m);
    for (const auto& [id, e] : db_.events) check_event(e);
    check_rewards();
    check_shop();
    check_encounters();
    check_starter_deck();
    return std::move(out_);
  }

 private:
  void fail(std::string msg) { out_.push_back(std::move(msg)); }

  void check_locales_present() {
    if (db_.version != kPackVersion) fail("pack version " + std::to_string(db_.version) + " unsupported");
    for (auto loc : kRequiredLocales)
      if (!db_.locales.count(std::string(loc))) fail("missing locale '" + std::string(loc) + "'");
  }

  void check_key(const std::string& owner, const LocaleKey& key) {
    for (const auto& [loc, table] : db_.locales)
      if (!table.count(key)) fail(owner + ": key '" + key + "' missing from locale '" + loc + "'");
  }

  void check_card_ref(const std::string& owner, const CardId& id) {
    if (!db_.cards.count(id)) fail(owner + ": unknown card '" + id + "'");
  }

  void check_effect(const std::string& owner, const EffectSpec& e, const std::vector<Target>& allowed) {
    if (e.magnitude > kMaxMagnitude || e.magnitude < -kMaxMagnitude)
      fail(owner + ": magnitude " + std::to_string(e.magnitude) + " exceeds 999");
    if ((e.op == EffectOp::AxisDelta) != e.axis.has_value())
      fail(owner + ": axis must be present iff op is AxisDelta");
    if ((e.op == EffectOp::Damage || e.op == EffectOp::Shield || e.op == EffectOp::RemoveShield ||
         e.op == EffectOp::Heal || e.op == EffectOp::Draw) &&
        e.magnitude < 0)
      fail(owner + ": " + std::string(to_string(e.op)) + " magnitude must be >= 0");
    if (std::find(allowed.begin(), allowed.end(), e.target) == allowed.end())
      fail(owner + ": target " + std::string(to_string(e.target)) + " not allowed for " +
           std::string(to_string(e.op)));
  }

  // Targets an in-combat effect may name, by op.
  static std::vector<Target> combat_targets(EffectOp op) {
    switch (op) {
      case EffectOp::Damage: return {Target::Self, Target::SingleEnemy, Target::AllEnemies};
      case EffectOp::Shield:
      case EffectOp::Heal: return {Target::Self, Target::SingleHero, Target::Party};
      case EffectOp::AxisDelta:
        return {Target::Self, Target::SingleEnemy, Target::AllEnemies, Target::SingleHero, Target::Party};
      case EffectOp::RemoveShield: return {Target::SingleEnemy, Target::AllEnemies};
      case EffectOp::GainEnergy:
      case EffectOp::Draw:
      case EffectOp::GainCredits: return {Target::Self};
    }
    return {Target::Self};
  }

  void check_card(const CardDef& c) {
    const std::string owner = "card '" + c.id + "'";
    if (c.id.empty()) fail("card with empty id");
    if (c.cost < 0) fail(owner + ": negative cost");
    if (c.effects.empty()) fail(owner + ": no effects");
    if (c.kind == CardKind::Attack &&
        std::none_of(c.effects.begin(), c.effects.end(), [](const auto& e) { return e.op == EffectOp::Damage; }))
      fail(owner + ": Attack card without Damage effect");
    for (const auto& e : c.effects) check_effect(owner, e, combat_targets(e.op));
    check_key(owner, c.name_key);
  }

  void check_enemy(const EnemyDef& e) {
    const std::string owner = "enemy '" + e.id + "'";
    if (e.max_hp < 1) fail(owner + ": max_hp must be >= 1");
    if (e.intent_cycle.empty()) fail(owner + ": empty intent cycle");
    for (const auto& i : e.intent_cycle) {
      if (i.magnitude < 0 || i.magnitude > kMaxMagnitude) fail(owner + ": intent magnitude out of range");
      if (i.hits < 1) fail(owner + ": intent hits must be >= 1");
      if (i.kind == IntentKind::Multi && i.hits < 2) fail(owner + ": Multi intent needs hits >= 2");
      if ((i.kind == IntentKind::AxisDelta) != i.axis.has_value())
        fail(owner + ": intent axis must be present iff kind is AxisDelta");
    }
    for (Axis a : kAllAxes) {
      const int v = e.start_axes.get(a);
      if (v < kAxisMin || v > kAxisMax) fail(owner + ": start axis out of [-9, 9]");
    }
    check_key(owner, e.name_key);
  }

  void check_module(const ModuleDef& m) {
    const std::string owner = "module '" + m.id + "'";
    check_effect(owner, m.effect, combat_targets(m.effect.op));
    check_key(owner, m.name_key);
  }

  void check_event(const EventDef& e) {
    const std::string owner = "event '" + e.id + "'";
    if (e.choices.empty()) fail(owner + ": no choices");
    if (std::none_of(e.choices.begin(), e.choices.end(), [](const auto& c) { return c.unconditional(); }))
      fail(owner + ": no unconditional choice");
    check_key(owner, e.prompt_key);
    for (std::size_t i = 0; i < e.choices.size(); ++i) {
      const auto& c = e.choices[i];
      const std::string cowner = owner + " choice " + std::to_string(i);
      check_key(cowner, c.label_key);
      for (const auto& o : c.outcomes) {
        if (o.op != EffectOp::Damage && o.op != EffectOp::Heal && o.op != EffectOp::GainCredits)
          fail(cowner + ": outcome op " + std::string(to_string(o.op)) + " has no meaning outside combat");
        check_effect(cowner, o, {Target::Self});
      }
      if (c.grant_card) check_card_ref(cowner, *c.grant_card);
      if (c.remove_card) check_card_ref(cowner, *c.remove_card);
      if (c.credits_requirement && c.credits_requirement->credits_min < 0)
        fail(cowner + ": negative credits requirement");
    }
  }

  void check_rewards() {
    for (Tier t : {Tier::Normal, Tier::Elite, Tier::Boss}) {
      const std::string owner = "reward_table '" + std::string(to_string(t)) + "'";
      auto it = db_.reward_tables.find(t);
      if (it == db_.reward_tables.end()) {
        fail(owner + ": missing");
        continue;
      }
      if (it->second.cards.empty()) fail(owner + ": empty");
      for (const auto& w : it->second.cards) {
        check_card_ref(owner, w.card);
        if (w.weight < 1) fail(owner + ": weight of '" + w.card + "' must be >= 1");
      }
      if (it->second.credits_min < 0 || it->second.credits_max < it->second.credits_min)
        fail(owner + ": bad credits range");
    }
  }

  void check_shop() {
    const auto& s = db_.shop_rules;
    for (const auto& [name, r] : {std::pair{"card", s.card}, std::pair{"module", s.module}, std::pair{"heal", s.heal}})
      if (r.min < 0 || r.max < r.min) fail(std::string("shop_rules '") + name + "': bad price range");
    if (s.heal_amount < 0 || s.card_slots < 0 || s.module_slots < 0) fail("shop_rules: negative amount");
  }

  void check_encounters() {
    if (db_.encounters.empty()) fail("encounters: no sectors");
    for (std::size_t i = 0; i < db_.encounters.size(); ++i) {
      for (Tier t : {Tier::Normal, Tier::Elite, Tier::Boss}) {
        const std::string owner = "encounters sector " + std::to_string(i) + " " + std::string(to_string(t));
        auto it = db_.encounters[i].groups.find(t);
        if (it == db_.encounters[i].groups.end() || it->second.empty()) {
          fail(owner + ": no groups");
          continue;
        }
        for (const auto& g : it->second) {
          if (g.enemies.empty()) fail(owner + ": empty group");
          if (g.weight < 1) fail(owner + ": weight must be >= 1");
          for (const auto& id : g.enemies) {
            auto e = db_.enemies.find(id);
            if (e == db_.enemies.end())
              fail(owner + ": unknown enemy '" + id + "'");
            else if (e->second.tier != t)
              fail(owner + ": enemy '" + id + "' has tier " + std::string(to_string(e->second.tier)));
          }
        }
      }
    }
  }

  void check_starter_deck() {
    if (db_.starter_deck.empty()) fail("starter_deck: empty");
    for (const auto& id : db_.starter_deck) check_card_ref("starter_deck", id);
  }

  const ContentDb& db_;
  std::vector<std::string> out_;
};

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, std::string_view kind, std::string_view id) {
  auto it = m.find(std::string(id));
  if (it == m.end()) throw NotFound(std::string(kind), std::string(id));
  return it->second;
}

}  // namespace

ContentDb parse_pack(std::string_view pack_text) {
  Json root;
  try {
    root = Json::parse(pack_text);
  } catch (const Json::parse_error& e) {
    throw ContentError({std::string("parse error: ") + e.what()});
  }
  try {
    ContentDb db;
    db.version = detail::get_i32(root, "version");
    read_keyed(root, "cards", "card", db.cards, read_card);
    read_keyed(root, "enemies", "enemy", db.enemies, read_enemy);
    read_keyed(root, "modules", "module", db.modules, read_module);
    read_keyed(root, "events", "event", db.events, read_event);

    for (const auto& [tier_name, tj] : detail::as_object(detail::field(root, "reward_tables"), "reward_tables").items()) {
      auto tier = parse_tier(tier_name);
      if (!tier) detail::shape_error("reward_tables: unknown tier '" + tier_name + "'");
      RewardTable t;
      for (const auto& w : detail::as_array(detail::field(tj, "cards"), "cards"))
        t.cards.push_back(WeightedCard{detail::get_str(w, "card"), detail::get_i32(w, "weight")});
      t.credits_min = detail::get_i32(tj, "credits_min");
      t.credits_max = detail::get_i32(tj, "credits_max");
      db.reward_tables[*tier] = std::move(t);
    }

    const auto& sj = detail::field(root, "shop_rules");
    db.shop_rules.card = read_range(detail::field(sj, "card"));
    db.shop_rules.module = read_range(detail::field(sj, "module"));
    db.shop_rules.heal = read_range(detail::field(sj, "heal"));
    db.shop_rules.heal_amount = detail::get_i32(sj, "heal_amount");
    db.shop_rules.card_slots = detail::get_i32(sj, "card_slots");
    db.shop_rules.module_slots = detail::get_i32(sj, "module_slots");

    for (const auto& sector : detail::as_array(detail::field(root, "encounters"), "encounters")) {
      SectorEncounters se;
      for (const auto& [tier_name, groups] : detail::as_object(sector, "encounters[]").items()) {
        auto tier = parse_tier(tier_name);
        if (!tier) detail::shape_error("encounters: unknown tier '" + tier_name + "'");
        auto& out = se.groups[*tier];
        for (const auto& g : detail::as_array(groups, tier_name)) {
          EnemyGroup eg;
          for (const auto& id : detail::as_array(detail::field(g, "enemies"), "enemies"))
            eg.enemies.push_back(detail::as_str(id, "enemies[]"));
          eg.weight = detail::get_i32(g, "weight");
          out.push_back(std::move(eg));
        }
      }
      db.encounters.push_back(std::move(se));
    }

    for (const auto& id : detail::as_array(detail::field(root, "starter_deck"), "starter_deck"))
      db.starter_deck.push_back(detail::as_str(id, "starter_deck[]"));

    for (const auto& [loc, table] : detail::as_object(detail::field(root, "locales"), "locales").items()) {
      auto& out = db.locales[loc];
      for (const auto& [key, text] : detail::as_object(table, loc).items()) out[key] = detail::as_str(text, key);
    }
    return db;
  } catch (const detail::JsonShapeError& e) {
    throw ContentError({"malformed pack: " + e.what});
  }
}

std::vector<std::string> validate_content(const ContentDb& db) { return Validator(db).run(); }

ContentDb load_content(std::string_view pack_text) {
  ContentDb db = parse_pack(pack_text);
  auto violations = validate_content(db);
  if (!violations.empty()) throw ContentError(std::move(violations));
  return db;
}

std::string serialize_content(const ContentDb& db) { return detail::canonical(write_pack(db)); }

std::uint64_t content_hash(const ContentDb& db) { return fnv1a64(serialize_content(db)); }

const ContentDb& baseline_content() {
  static const ContentDb db = load_content(baseline_pack_text());
  return db;
}

const CardDef& lookup_card(const ContentDb& db, std::string_view id) { return lookup(db.cards, "card", id); }
const EnemyDef& lookup_enemy(const ContentDb& db, std::string_view id) { return lookup(db.enemies, "enemy", id); }
const ModuleDef& lookup_module(const ContentDb& db, std::string_view id) { return lookup(db.modules, "module", id); }
const EventDef& lookup_event(const ContentDb& db, std::string_view id) { return lookup(db.events, "event", id); }

const std::string& localize(const ContentDb& db, std::string_view locale, std::string_view key) {
  const auto& table = lookup(db.locales, "locale", locale);
  return lookup(table, "locale key", key);
}

}  // namespace mazo
