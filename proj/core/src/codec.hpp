#pragma once

// JSON codecs for run-level values. Readers are strict: a missing field, a
// wrong type, or an unknown enum name raises JsonShapeError.

#include "json_util.hpp"
#include "mazo/run.hpp"

namespace mazo::detail {

std::string hex64(std::uint64_t v);
std::uint64_t parse_hex64(const Json& j, std::string_view ctx);

Json encode(const RngStream& s);
RngStream decode_stream(const Json& j);

Json encode(const RunConfig& c);
RunConfig decode_config(const Json& j);

Json encode(const HeroState& h);
HeroState decode_hero(const Json& j);

Json encode(const PartyState& p);
PartyState decode_party(const Json& j);

Json encode(const CombatState& c);
CombatState decode_combat(const Json& j);

Json encode(const Scene& s);
Scene decode_scene(const Json& j);

Json encode(const RunState& r);
RunState decode_run(const Json& j);

Json encode(const CombatAction& a);
CombatAction decode_action(const Json& j);

Json encode(const Decision& d);
Decision decode_decision(const Json& j);

// Every content id referenced by the run; used to reject dangling saves.
std::vector<std::string> dangling_ids(const RunState& run, const ContentDb& db);

}  // namespace mazo::detail
