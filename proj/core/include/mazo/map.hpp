#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "mazo/rng.hpp"

namespace mazo {

enum class RoomKind { Combat, Elite, Boss, Shop, Event, Rest, Treasure };

inline constexpr std::array<RoomKind, 7> kAllRoomKinds = {RoomKind::Combat, RoomKind::Elite, RoomKind::Boss,
                                                          RoomKind::Shop,   RoomKind::Event, RoomKind::Rest,
                                                          RoomKind::Treasure};

std::string_view to_string(RoomKind k) noexcept;
std::optional<RoomKind> parse_room_kind(std::string_view s) noexcept;

struct RunConfig {
  int sector_count = 3;
  int players = 1;
  int layers_per_sector = 6;
  int map_width = 4;
  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError naming the first field out of bounds.
void validate_config(const RunConfig& config);

struct MapNode {
  int id = 0;
  int sector = 0;  // zero-based
  int layer = 0;   // layers_per_sector for the boss
  RoomKind kind = RoomKind::Combat;
  bool operator==(const MapNode&) const = default;
};

struct MapEdge {
  int from = 0;
  int to = 0;
  auto operator<=>(const MapEdge&) const = default;
};

// Node ids equal their index in `nodes`. Edges are sorted and unique.
struct MapGraph {
  std::vector<MapNode> nodes;
  std::vector<MapEdge> edges;
  std::vector<std::vector<int>> sector_entries;
  std::vector<int> sector_bosses;

  std::vector<int> successors(int node) const;
  bool operator==(const MapGraph&) const = default;
};

// Layered DAG per sector: layers of 2..map_width nodes, each node with at
// least one edge in (except entries) and out; last layer feeds a single boss,
// which feeds the next sector's entries. Room quotas per sector, in priority
// order while slots remain: one Rest, one Shop, 1-2 Elites, 0-1 Treasure; the
// remainder is Combat or Event at 3:1. The first layer of the first sector is
// all Combat.
MapGraph generate_map(Seed seed, const RunConfig& config);
MapGraph generate_map(RngStream& stream, const RunConfig& config);

}  // namespace mazo
