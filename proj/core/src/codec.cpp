#include "codec.hpp"

#include <cstdio>

#include "enum_tables.hpp"

namespace mazo::detail {

namespace {

constexpr EnumTable<StreamLabel, 7> kLabelNames{{{
    {StreamLabel::MapGen, "MapGen"}, {StreamLabel::Shuffle, "Shuffle"}, {StreamLabel::Rewards, "Rewards"},
    {StreamLabel::Events, "Events"}, {StreamLabel::EnemyAi, "EnemyAi"}, {StreamLabel::Shop, "Shop"},
    {StreamLabel::Misc, "Misc"}}}};

constexpr EnumTable<PhaseKind, 3> kPhaseNames{{{
    {PhaseKind::HeroTurn, "HeroTurn"}, {PhaseKind::EnemyTurn, "EnemyTurn"}, {PhaseKind::Finished, "Finished"}}}};

constexpr EnumTable<CombatOutcome, 3> kOutcomeNames{{{
    {CombatOutcome::Ongoing, "Ongoing"}, {CombatOutcome::Victory, "Victory"}, {CombatOutcome::Defeat, "Defeat"}}}};

constexpr EnumTable<CombatEventKind, 7> kEventNames{{{
    {CombatEventKind::CardPlayed, "CardPlayed"}, {CombatEventKind::DamageDealt, "DamageDealt"},
    {CombatEventKind::ShieldGained, "ShieldGained"}, {CombatEventKind::AxisChanged, "AxisChanged"},
    {CombatEventKind::IntentExecuted, "IntentExecuted"}, {CombatEventKind::Death, "Death"},
    {CombatEventKind::TurnStart, "TurnStart"}}}};

constexpr EnumTable<Side, 2> kSideNames{{{{Side::Hero, "Hero"}, {Side::Enemy, "Enemy"}}}};

constexpr EnumTable<ShopItemKind, 3> kShopItemNames{{{
    {ShopItemKind::Card, "Card"}, {ShopItemKind::Module, "Module"}, {ShopItemKind::Heal, "Heal"}}}};

constexpr EnumTable<RestOption, 2> kRestNames{{{{RestOption::Heal, "Heal"}, {RestOption::UpgradeMaxHp, "UpgradeMaxHp"}}}};

constexpr EnumTable<RunResult, 2> kResultNames{{{{RunResult::Won, "Won"}, {RunResult::Lost, "Lost"}}}};

RoomKind decode_room(const Json& j, std::string_view ctx) {
  if (auto k = parse_room_kind(as_str(j, ctx))) return *k;
  shape_error("unknown room kind '" + as_str(j, ctx) + "'");
}

std::vector<std::string> decode_strings(const Json& j, std::string_view ctx) {
  std::vector<std::string> out;
  for (const auto& s : as_array(j, ctx)) out.push_back(as_str(s, ctx));
  return out;
}

std::vector<int> decode_ints(const Json& j, std::string_view ctx) {
  std::vector<int> out;
  for (const auto& s : as_array(j, ctx)) out.push_back(as_i32(s, ctx));
  return out;
}

Json encode(const AxisState& a) { return Json{{"focus", a.focus}, {"rhythm", a.rhythm}, {"momentum", a.momentum}}; }

AxisState decode_axes(const Json& j) { return AxisState{get_i32(j, "focus"), get_i32(j, "rhythm"), get_i32(j, "momentum")}; }

Json encode(const Combatant& c) {
  return Json{{"hp", c.hp}, {"max_hp", c.max_hp}, {"shield", c.shield}, {"axes", encode(c.axes)}};
}

Combatant decode_combatant(const Json& j) {
  return Combatant{get_i32(j, "hp"), get_i32(j, "max_hp"), get_i32(j, "shield"), decode_axes(field(j, "axes"))};
}

Json encode(const RewardOffer& o) {
  return Json{{"cards", o.cards}, {"modules", o.modules}, {"credits", o.credits}};
}

RewardOffer decode_offer(const Json& j) {
  return RewardOffer{decode_strings(field(j, "cards"), "cards"), decode_strings(field(j, "modules"), "modules"),
                     get_i32(j, "credits")};
}

Json encode(const ShopItem& i) {
  return Json{{"kind", kShopItemNames.name(i.kind)}, {"id", i.id},       {"price", i.price},
              {"amount", i.amount},                  {"sold", i.sold}};
}

ShopItem decode_item(const Json& j) {
  return ShopItem{kShopItemNames.require(field(j, "kind"), "kind"), get_str(j, "id"), get_i32(j, "price"),
                  get_i32(j, "amount"), as_bool(field(j, "sold"), "sold")};
}

Json encode(const RewardPick& p) {
  Json j = Json::object();
  if (p.card) j["card"] = *p.card;
  if (p.module) j["module"] = *p.module;
  return j;
}

RewardPick decode_pick(const Json& j) {
  as_object(j, "pick");
  RewardPick p;
  if (has(j, "card")) p.card = get_str(j, "card");
  if (has(j, "module")) p.module = get_str(j, "module");
  return p;
}

}  // namespace

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const Json& j, std::string_view ctx) {
  const auto& s = as_str(j, ctx);
  if (s.size() != 16) shape_error("'" + std::string(ctx) + "' must be 16 hex digits");
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else
      shape_error("'" + std::string(ctx) + "' must be lowercase hex");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

Json encode(const RngStream& s) {
  return Json{{"label", kLabelNames.name(s.label())}, {"state", hex64(s.state())}, {"draws", s.draws()}};
}

RngStream decode_stream(const Json& j) {
  return RngStream(parse_hex64(field(j, "state"), "state"), kLabelNames.require(field(j, "label"), "label"),
                   get_u64(j, "draws"));
}

Json encode(const RunConfig& c) {
  return Json{{"sector_count", c.sector_count},
              {"players", c.players},
              {"layers_per_sector", c.layers_per_sector},
              {"map_width", c.map_width}};
}

RunConfig decode_config(const Json& j) {
  return RunConfig{get_i32(j, "sector_count"), get_i32(j, "players"), get_i32(j, "layers_per_sector"),
                   get_i32(j, "map_width")};
}

Json encode(const HeroState& h) {
  return Json{{"deck", h.deck}, {"modules", h.modules}, {"hp", h.hp}, {"max_hp", h.max_hp}, {"credits", h.credits}};
}

HeroState decode_hero(const Json& j) {
  HeroState h;
  h.deck = decode_strings(field(j, "deck"), "deck");
  h.modules = decode_strings(field(j, "modules"), "modules");
  h.hp = get_i32(j, "hp");
  h.max_hp = get_i32(j, "max_hp");
  h.credits = get_i32(j, "credits");
  return h;
}

Json encode(const PartyState& p) {
  Json nodes = Json::array();
  for (const auto& n : p.map.nodes)
    nodes.push_back({{"id", n.id}, {"sector", n.sector}, {"layer", n.layer}, {"kind", to_string(n.kind)}});
  Json edges = Json::array();
  for (const auto& e : p.map.edges) edges.push_back(Json::array({e.from, e.to}));
  Json counters = Json::object();
  for (const auto& [k, v] : p.room_counters) counters[std::string(to_string(k))] = v;
  return Json{{"map",
               {{"nodes", std::move(nodes)},
                {"edges", std::move(edges)},
                {"sector_entries", p.map.sector_entries},
                {"sector_bosses", p.map.sector_bosses}}},
              {"current_node", p.current_node},
              {"visited_path", p.visited_path},
              {"level_progression", p.level_progression},
              {"room_counters", std::move(counters)}};
}

PartyState decode_party(const Json& j) {
  PartyState p;
  const auto& m = field(j, "map");
  for (const auto& n : as_array(field(m, "nodes"), "nodes"))
    p.map.nodes.push_back(
        MapNode{get_i32(n, "id"), get_i32(n, "sector"), get_i32(n, "layer"), decode_room(field(n, "kind"), "kind")});
  for (const auto& e : as_array(field(m, "edges"), "edges")) {
    if (!e.is_array() || e.size() != 2) shape_error("edge must be a [from, to] pair");
    p.map.edges.push_back(MapEdge{as_i32(e[0], "from"), as_i32(e[1], "to")});
  }
  for (const auto& s : as_array(field(m, "sector_entries"), "sector_entries"))
    p.map.sector_entries.push_back(decode_ints(s, "sector_entries"));
  p.map.sector_bosses = decode_ints(field(m, "sector_bosses"), "sector_bosses");
  p.current_node = get_i32(j, "current_node");
  p.visited_path = decode_ints(field(j, "visited_path"), "visited_path");
  p.level_progression = get_i32(j, "level_progression");
  for (const auto& [k, v] : as_object(field(j, "room_counters"), "room_counters").items()) {
    auto kind = parse_room_kind(k);
    if (!kind) shape_error("unknown room kind '" + k + "'");
    p.room_counters[*kind] = as_i32(v, k);
  }
  for (int id : p.visited_path)
    if (id < 0 || id >= static_cast<int>(p.map.nodes.size())) shape_error("visited_path names a missing node");
  if (p.current_node < -1 || p.current_node >= static_cast<int>(p.map.nodes.size()))
    shape_error("current_node out of range");
  return p;
}

Json encode(const CombatState& c) {
  Json heroes = Json::array();
  for (const auto& h : c.heroes)
    heroes.push_back({{"hero_index", h.hero_index},
                      {"combatant", encode(h.combatant)},
                      {"modules", h.modules},
                      {"hand", h.hand},
                      {"draw_pile", h.draw_pile},
                      {"discard_pile", h.discard_pile},
                      {"energy", h.energy},
                      {"credits_gained", h.credits_gained}});
  Json enemies = Json::array();
  for (const auto& e : c.enemies)
    enemies.push_back({{"def_id", e.def_id}, {"combatant", encode(e.combatant)}, {"cycle_pos", e.cycle_pos}});
  Json log = Json::array();
  for (const auto& ev : c.log)
    log.push_back(Json::array({kEventNames.name(ev.kind), kSideNames.name(ev.side), ev.index, ev.value, ev.ref}));
  return Json{{"heroes", std::move(heroes)},
              {"enemies", std::move(enemies)},
              {"phase",
               {{"kind", kPhaseNames.name(c.phase.kind)},
                {"hero", c.phase.hero},
                {"outcome", kOutcomeNames.name(c.phase.outcome)}}},
              {"turn_number", c.turn_number},
              {"shuffle_stream", encode(c.shuffle_stream)},
              {"ai_stream", encode(c.ai_stream)},
              {"rules",
               {{"hand_size", c.rules.hand_size},
                {"base_energy", c.rules.base_energy},
                {"enemy_hp_percent", c.rules.enemy_hp_percent}}},
              {"log", std::move(log)}};
}

CombatState decode_combat(const Json& j) {
  CombatState c;
  for (const auto& h : as_array(field(j, "heroes"), "heroes")) {
    HeroCombat hc;
    hc.hero_index = get_i32(h, "hero_index");
    hc.combatant = decode_combatant(field(h, "combatant"));
    hc.modules = decode_strings(field(h, "modules"), "modules");
    hc.hand = decode_strings(field(h, "hand"), "hand");
    hc.draw_pile = decode_strings(field(h, "draw_pile"), "draw_pile");
    hc.discard_pile = decode_strings(field(h, "discard_pile"), "discard_pile");
    hc.energy = get_i32(h, "energy");
    hc.credits_gained = get_i32(h, "credits_gained");
    c.heroes.push_back(std::move(hc));
  }
  for (const auto& e : as_array(field(j, "enemies"), "enemies"))
    c.enemies.push_back(
        EnemyInstance{get_str(e, "def_id"), decode_combatant(field(e, "combatant")), get_i32(e, "cycle_pos")});
  const auto& ph = field(j, "phase");
  c.phase = Phase{kPhaseNames.require(field(ph, "kind"), "kind"), get_i32(ph, "hero"),
                  kOutcomeNames.require(field(ph, "outcome"), "outcome")};
  c.turn_number = get_i32(j, "turn_number");
  c.shuffle_stream = decode_stream(field(j, "shuffle_stream"));
  c.ai_stream = decode_stream(field(j, "ai_stream"));
  const auto& r = field(j, "rules");
  c.rules = CombatRules{get_i32(r, "hand_size"), get_i32(r, "base_energy"), get_i32(r, "enemy_hp_percent")};
  for (const auto& ev : as_array(field(j, "log"), "log")) {
    if (!ev.is_array() || ev.size() != 5) shape_error("log entry must have 5 fields");
    c.log.push_back(CombatEvent{kEventNames.require(ev[0], "log.kind"), kSideNames.require(ev[1], "log.side"),
                                as_i32(ev[2], "log.index"), as_i32(ev[3], "log.value"), as_str(ev[4], "log.ref")});
  }
  return c;
}

Json encode(const Scene& s) {
  Json j = std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, scene::ChoosingNode>) {
          return Json::object();
        } else if constexpr (std::is_same_v<T, scene::InCombat>) {
          return Json{{"combat", encode(x.combat)}};
        } else if constexpr (std::is_same_v<T, scene::AtShop>) {
          Json inv = Json::array();
          for (const auto& i : x.inventory) inv.push_back(encode(i));
          return Json{{"inventory", std::move(inv)}, {"acting_hero", x.acting_hero}};
        } else if constexpr (std::is_same_v<T, scene::AtEvent>) {
          return Json{{"event_id", x.event_id}, {"acting_hero", x.acting_hero}};
        } else if constexpr (std::is_same_v<T, scene::AtRest>) {
          return Json{{"acting_hero", x.acting_hero}};
        } else if constexpr (std::is_same_v<T, scene::ChoosingReward>) {
          Json offers = Json::array();
          for (const auto& o : x.offers) offers.push_back(encode(o));
          return Json{{"offers", std::move(offers)}, {"acting_hero", x.acting_hero}};
        } else {
          return Json{{"result", kResultNames.name(x.result)}};
        }
      },
      s);
  j["kind"] = to_string(scene_kind(s));
  return j;
}

Scene decode_scene(const Json& j) {
  const auto kind = parse_scene_kind(get_str(j, "kind"));
  if (!kind) shape_error("unknown scene kind '" + get_str(j, "kind") + "'");
  switch (*kind) {
    case SceneKind::ChoosingNode: return scene::ChoosingNode{};
    case SceneKind::InCombat: return scene::InCombat{decode_combat(field(j, "combat"))};
    case SceneKind::AtShop: {
      scene::AtShop s;
      for (const auto& i : as_array(field(j, "inventory"), "inventory")) s.inventory.push_back(decode_item(i));
      s.acting_hero = get_i32(j, "acting_hero");
      return s;
    }
    case SceneKind::AtEvent: return scene::AtEvent{get_str(j, "event_id"), get_i32(j, "acting_hero")};
    case SceneKind::AtRest: return scene::AtRest{get_i32(j, "acting_hero")};
    case SceneKind::ChoosingReward: {
      scene::ChoosingReward s;
      for (const auto& o : as_array(field(j, "offers"), "offers")) s.offers.push_back(decode_offer(o));
      s.acting_hero = get_i32(j, "acting_hero");
      return s;
    }
    case SceneKind::Finished: return scene::Finished{kResultNames.require(field(j, "result"), "result")};
  }
  shape_error("unreachable scene kind");
}

Json encode(const RunState& r) {
  Json heroes = Json::array();
  for (const auto& h : r.heroes) heroes.push_back(encode(h));
  Json streams = Json::array();
  for (const auto& s : r.streams) streams.push_back(encode(s));
  return Json{{"config", encode(r.config)}, {"seed", hex64(r.seed.value)}, {"party", encode(r.party)},
              {"heroes", std::move(heroes)}, {"scene", encode(r.scene)},    {"streams", std::move(streams)}};
}

RunState decode_run(const Json& j) {
  RunState r;
  r.config = decode_config(field(j, "config"));
  r.seed = Seed{parse_hex64(field(j, "seed"), "seed")};
  r.party = decode_party(field(j, "party"));
  for (const auto& h : as_array(field(j, "heroes"), "heroes")) r.heroes.push_back(decode_hero(h));
  r.scene = decode_scene(field(j, "scene"));
  const auto& streams = as_array(field(j, "streams"), "streams");
  if (streams.size() != r.streams.size()) shape_error("streams must list every label");
  for (std::size_t i = 0; i < r.streams.size(); ++i) {
    r.streams[i] = decode_stream(streams[i]);
    if (r.streams[i].label() != kAllStreamLabels[i]) shape_error("streams out of label order");
  }
  if (static_cast<int>(r.heroes.size()) != r.config.players) shape_error("hero count does not match players");
  const int heroes = static_cast<int>(r.heroes.size());
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, scene::InCombat>) {
          if (x.combat.heroes.size() != r.heroes.size()) shape_error("combat hero count does not match players");
          if (x.combat.phase.hero < 0 || x.combat.phase.hero >= heroes) shape_error("phase hero out of range");
        } else if constexpr (requires { x.acting_hero; }) {
          if constexpr (std::is_same_v<T, scene::ChoosingReward>)
            if (x.offers.size() != r.heroes.size()) shape_error("reward offers do not match players");
          if (x.acting_hero < 0 || x.acting_hero >= heroes) shape_error("acting_hero out of range");
        }
      },
      r.scene);
  return r;
}

Json encode(const CombatAction& a) {
  if (a.kind == CombatAction::Kind::EndTurn) return Json{{"kind", "EndTurn"}};
  Json j{{"kind", "PlayCard"}, {"hand_index", a.hand_index}};
  if (a.target) j["target"] = *a.target;
  return j;
}

CombatAction decode_action(const Json& j) {
  const auto& kind = get_str(j, "kind");
  if (kind == "EndTurn") return CombatAction::end_turn();
  if (kind != "PlayCard") shape_error("unknown combat action '" + kind + "'");
  std::optional<int> target;
  if (has(j, "target")) target = get_i32(j, "target");
  return CombatAction::play(get_i32(j, "hand_index"), target);
}

Json encode(const Decision& d) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, decision::ChooseNode>)
          return Json{{"kind", "ChooseNode"}, {"node_id", x.node_id}};
        else if constexpr (std::is_same_v<T, decision::PlayCombat>)
          return Json{{"kind", "PlayCombat"}, {"action", encode(x.action)}};
        else if constexpr (std::is_same_v<T, decision::PickReward>)
          return Json{{"kind", "PickReward"}, {"pick", encode(x.pick)}};
        else if constexpr (std::is_same_v<T, decision::BuyItem>)
          return Json{{"kind", "BuyItem"}, {"item_index", x.item_index}};
        else if constexpr (std::is_same_v<T, decision::LeaveShop>)
          return Json{{"kind", "LeaveShop"}};
        else if constexpr (std::is_same_v<T, decision::Rest>)
          return Json{{"kind", "Rest"}, {"option", kRestNames.name(x.option)}};
        else
          return Json{{"kind", "PickEvent"}, {"choice_index", x.choice_index}};
      },
      d);
}

Decision decode_decision(const Json& j) {
  const auto& kind = get_str(j, "kind");
  if (kind == "ChooseNode") return decision::ChooseNode{get_i32(j, "node_id")};
  if (kind == "PlayCombat") return decision::PlayCombat{decode_action(field(j, "action"))};
  if (kind == "PickReward") return decision::PickReward{decode_pick(field(j, "pick"))};
  if (kind == "BuyItem") return decision::BuyItem{get_i32(j, "item_index")};
  if (kind == "LeaveShop") return decision::LeaveShop{};
  if (kind == "Rest") return decision::Rest{kRestNames.require(field(j, "option"), "option")};
  if (kind == "PickEvent") return decision::PickEvent{get_i32(j, "choice_index")};
  shape_error("unknown decision '" + kind + "'");
}

std::vector<std::string> dangling_ids(const RunState& run, const ContentDb& db) {
  std::vector<std::string> out;
  auto card = [&](const std::string& id) {
    if (!db.cards.count(id)) out.push_back("card '" + id + "'");
  };
  auto module = [&](const std::string& id) {
    if (!db.modules.count(id)) out.push_back("module '" + id + "'");
  };
  for (const auto& h : run.heroes) {
    for (const auto& c : h.deck) card(c);
    for (const auto& m : h.modules) module(m);
  }
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, scene::InCombat>) {
          for (const auto& h : x.combat.heroes) {
            for (const auto* pile : {&h.hand, &h.draw_pile, &h.discard_pile})
              for (const auto& c : *pile) card(c);
            for (const auto& m : h.modules) module(m);
          }
          for (const auto& e : x.combat.enemies) {
            auto it = db.enemies.find(e.def_id);
            if (it == db.enemies.end())
              out.push_back("enemy '" + e.def_id + "'");
            else if (e.cycle_pos < 0 || e.cycle_pos >= static_cast<int>(it->second.intent_cycle.size()))
              out.push_back("intent position of enemy '" + e.def_id + "'");
          }
        } else if constexpr (std::is_same_v<T, scene::AtShop>) {
          for (const auto& i : x.inventory) {
            if (i.kind == ShopItemKind::Card) card(i.id);
            if (i.kind == ShopItemKind::Module) module(i.id);
          }
        } else if constexpr (std::is_same_v<T, scene::AtEvent>) {
          if (!db.events.count(x.event_id)) out.push_back("event '" + x.event_id + "'");
        } else if constexpr (std::is_same_v<T, scene::ChoosingReward>) {
          for (const auto& o : x.offers) {
            for (const auto& c : o.cards) card(c);
            for (const auto& m : o.modules) module(m);
          }
        }
      },
      run.scene);
  return out;
}

}  // namespace mazo::detail
