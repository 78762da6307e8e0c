#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mazo/content.hpp"
#include "mazo/error.hpp"
#include "oracles.hpp"

using namespace mazo;
using nlohmann::json;

namespace {

json baseline_json() { return json::parse(baseline_pack_text()); }

std::vector<std::string> violations_of(const json& pack) {
  try {
    load_content(pack.dump());
  } catch (const ContentError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, std::string_view needle) {
  return std::any_of(v.begin(), v.end(), [&](const auto& s) { return s.find(needle) != std::string::npos; });
}

json& find_id(json& arr, std::string_view id) {
  for (auto& x : arr)
    if (x["id"] == id) return x;
  throw std::runtime_error("no such id");
}

}  // namespace

TEST(Content, BaselineLoadsAndMatchesShippedFile) {
  const auto& db = baseline_content();
  EXPECT_TRUE(validate_content(db).empty());
  EXPECT_EQ(db.cards.size(), 16u);
  EXPECT_EQ(db.starter_deck.size(), 10u);
  std::ifstream in(std::string(MAZO_CONTENT_DIR) + "/baseline.pack.json", std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  EXPECT_EQ(load_content(text.str()), db);
}

TEST(Content, SerializeIsCanonicalAndRoundTrips) {
  const auto& db = baseline_content();
  const std::string text = serialize_content(db);
  EXPECT_EQ(text, json::parse(text).dump());
  EXPECT_EQ(load_content(text), db);
  EXPECT_EQ(serialize_content(load_content(text)), text);
  EXPECT_EQ(content_hash(db), oracle::fnv1a64(text));
}

TEST(Content, LoadingIsPure) {
  const auto a = load_content(baseline_pack_text());
  const auto b = load_content(baseline_pack_text());
  EXPECT_EQ(a, b);
}

TEST(Content, EveryNameKeyPresentInEveryLocale) {
  const auto& db = baseline_content();
  for (const auto& loc : kRequiredLocales) {
    for (const auto& [id, c] : db.cards) EXPECT_FALSE(localize(db, loc, c.name_key).empty());
    for (const auto& [id, e] : db.enemies) EXPECT_FALSE(localize(db, loc, e.name_key).empty());
    for (const auto& [id, m] : db.modules) EXPECT_FALSE(localize(db, loc, m.name_key).empty());
  }
  EXPECT_EQ(localize(db, "en", "card.strike"), "Strike");
  EXPECT_EQ(localize(db, "es", "card.strike"), "Golpe");
  EXPECT_THROW(localize(db, "fr", "card.strike"), NotFound);
  EXPECT_THROW(localize(db, "en", "card.nope"), NotFound);
}

TEST(Content, LookupThrowsNotFound) {
  const auto& db = baseline_content();
  EXPECT_EQ(lookup_card(db, "strike").cost, 1);
  EXPECT_THROW(lookup_card(db, "nope"), NotFound);
  EXPECT_THROW(lookup_enemy(db, "nope"), NotFound);
  EXPECT_THROW(lookup_module(db, "nope"), NotFound);
  EXPECT_THROW(lookup_event(db, "nope"), NotFound);
}

TEST(Content, MalformedTextIsRejected) {
  EXPECT_THROW(load_content("{"), ContentError);
  EXPECT_THROW(load_content("[]"), ContentError);
  auto pack = baseline_json();
  pack["cards"][0]["cost"] = "one";
  EXPECT_THROW(load_content(pack.dump()), ContentError);
  pack = baseline_json();
  pack["cards"][0]["effects"][0]["op"] = "Teleport";
  EXPECT_THROW(load_content(pack.dump()), ContentError);
}

TEST(Content, DuplicateIdRejected) {
  auto pack = baseline_json();
  pack["cards"].push_back(pack["cards"][0]);
  EXPECT_THROW(load_content(pack.dump()), ContentError);
}

TEST(Content, ValidatorReportsEachViolation) {
  auto pack = baseline_json();
  find_id(pack["cards"], "strike")["effects"] = json::array({{{"op", "Shield"}, {"magnitude", 3}, {"target", "Self"}}});
  EXPECT_TRUE(mentions(violations_of(pack), "Attack card without Damage"));

  pack = baseline_json();
  find_id(pack["cards"], "guard")["effects"] = json::array();
  EXPECT_TRUE(mentions(violations_of(pack), "no effects"));

  pack = baseline_json();
  find_id(pack["cards"], "guard")["effects"][0]["magnitude"] = 1000;
  EXPECT_TRUE(mentions(violations_of(pack), "exceeds 999"));

  pack = baseline_json();
  find_id(pack["cards"], "guard")["effects"][0]["magnitude"] = -1;
  EXPECT_TRUE(mentions(violations_of(pack), "must be >= 0"));

  pack = baseline_json();
  find_id(pack["cards"], "focus_shift")["effects"][0].erase("axis");
  EXPECT_TRUE(mentions(violations_of(pack), "axis must be present iff"));

  pack = baseline_json();
  find_id(pack["enemies"], "drone")["intent_cycle"] = json::array();
  EXPECT_TRUE(mentions(violations_of(pack), "empty intent cycle"));

  pack = baseline_json();
  find_id(pack["enemies"], "skitter")["intent_cycle"][0]["hits"] = 1;
  EXPECT_TRUE(mentions(violations_of(pack), "Multi intent needs hits >= 2"));

  pack = baseline_json();
  find_id(pack["enemies"], "drone")["max_hp"] = 0;
  EXPECT_TRUE(mentions(violations_of(pack), "max_hp"));

  pack = baseline_json();
  pack["locales"]["es"].erase("card.strike");
  EXPECT_TRUE(mentions(violations_of(pack), "missing from locale 'es'"));

  pack = baseline_json();
  pack["locales"].erase("es");
  EXPECT_TRUE(mentions(violations_of(pack), "missing locale 'es'"));

  pack = baseline_json();
  pack["starter_deck"].push_back("ghost");
  EXPECT_TRUE(mentions(violations_of(pack), "unknown card 'ghost'"));

  pack = baseline_json();
  pack["reward_tables"]["Normal"]["cards"].push_back({{"card", "ghost"}, {"weight", 1}});
  EXPECT_TRUE(mentions(violations_of(pack), "unknown card 'ghost'"));

  pack = baseline_json();
  pack["encounters"][0]["Normal"][0]["enemies"] = json::array({"colossus"});
  EXPECT_TRUE(mentions(violations_of(pack), "has tier Boss"));
}

TEST(Content, EventMustHaveUnconditionalChoice) {
  auto pack = baseline_json();
  auto& cache = find_id(pack["events"], "cache");
  for (auto& c : cache["choices"]) c["requirement"] = {{"credits_min", 5}};
  EXPECT_TRUE(mentions(violations_of(pack), "no unconditional choice"));
}

TEST(Content, EnumNamesRoundTrip) {
  for (auto op : {EffectOp::Damage, EffectOp::Shield, EffectOp::AxisDelta, EffectOp::GainEnergy, EffectOp::Draw,
                  EffectOp::Heal, EffectOp::GainCredits, EffectOp::RemoveShield})
    EXPECT_EQ(parse_effect_op(to_string(op)), op);
  for (auto t : {Tier::Normal, Tier::Elite, Tier::Boss}) EXPECT_EQ(parse_tier(to_string(t)), t);
  for (auto a : kAllAxes) EXPECT_EQ(parse_axis(to_string(a)), a);
  EXPECT_FALSE(parse_target("Everyone"));
}

TEST(Content, CardIdsAreShortTokens) {
  for (const auto& [id, c] : baseline_content().cards) {
    EXPECT_LE(id.size(), 15u);
    EXPECT_TRUE(std::all_of(id.begin(), id.end(), [](char ch) { return (ch >= 'a' && ch <= 'z') || ch == '_'; }));
  }
}
