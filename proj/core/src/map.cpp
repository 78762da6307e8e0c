#include "mazo/map.hpp"

#include <algorithm>
#include <array>

#include "mazo/error.hpp"

namespace mazo {

namespace {

constexpr std::array<std::string_view, 7> kRoomNames = {"Combat", "Elite", "Boss", "Shop",
                                                        "Event",  "Rest",  "Treasure"};

// Picks one of the up-to-three positions around `center` in [0, n).
int near(RngStream& rng, int center, int n) {
  const int lo = std::max(0, center - 1);
  const int hi = std::min(n - 1, center + 1);
  return rng.next_in_range(lo, hi);
}

int project(int i, int from_count, int to_count) {
  if (from_count <= 1) return (to_count - 1) / 2;
  return (i * (to_count - 1) + (from_count - 1) / 2) / (from_count - 1);
}

void connect_layers(RngStream& rng, const std::vector<int>& a, const std::vector<int>& b,
                    std::vector<MapEdge>& edges) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(b.size());
  std::vector<bool> has_in(static_cast<std::size_t>(n), false);
  for (int i = 0; i < m; ++i) {
    const int j = near(rng, project(i, m, n), n);
    edges.push_back({a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]});
    has_in[static_cast<std::size_t>(j)] = true;
    // Occasional fork for branching choices.
    if (rng.next_below(3) == 0) {
      const int k = near(rng, j, n);
      edges.push_back({a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(k)]});
      has_in[static_cast<std::size_t>(k)] = true;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (has_in[static_cast<std::size_t>(j)]) continue;
    const int i = near(rng, project(j, n, m), m);
    edges.push_back({a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]});
  }
}

void assign_kinds(RngStream& rng, std::vector<MapNode>& nodes, std::vector<int> slots) {
  rng.shuffle(slots);
  std::vector<RoomKind> quota = {RoomKind::Rest, RoomKind::Shop, RoomKind::Elite};
  if (rng.next_below(2) == 1) quota.push_back(RoomKind::Elite);
  if (rng.next_below(2) == 1) quota.push_back(RoomKind::Treasure);
  std::size_t q = 0;
  for (int id : slots) {
    RoomKind kind;
    if (q < quota.size())
      kind = quota[q++];
    else
      kind = rng.next_below(4) == 0 ? RoomKind::Event : RoomKind::Combat;
    nodes[static_cast<std::size_t>(id)].kind = kind;
  }
}

}  // namespace

std::string_view to_string(RoomKind k) noexcept { return kRoomNames[static_cast<std::size_t>(k)]; }

std::optional<RoomKind> parse_room_kind(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kRoomNames.size(); ++i)
    if (kRoomNames[i] == s) return static_cast<RoomKind>(i);
  return std::nullopt;
}

void validate_config(const RunConfig& c) {
  if (c.sector_count < 1 || c.sector_count > 10) throw ConfigError("sector_count must be in [1, 10]");
  if (c.players != 1 && c.players != 2) throw ConfigError("players must be 1 or 2");
  if (c.layers_per_sector < 2 || c.layers_per_sector > 20) throw ConfigError("layers_per_sector must be in [2, 20]");
  if (c.map_width < 2 || c.map_width > 8) throw ConfigError("map_width must be in [2, 8]");
}

std::vector<int> MapGraph::successors(int node) const {
  std::vector<int> out;
  auto it = std::lower_bound(edges.begin(), edges.end(), MapEdge{node, INT32_MIN});
  for (; it != edges.end() && it->from == node; ++it) out.push_back(it->to);
  return out;
}

MapGraph generate_map(Seed seed, const RunConfig& config) {
  RngStream rng = derive_stream(seed, StreamLabel::MapGen, 0);
  return generate_map(rng, config);
}

MapGraph generate_map(RngStream& rng, const RunConfig& config) {
  validate_config(config);
  MapGraph g;
  int next_id = 0;
  auto add_node = [&](int sector, int layer, RoomKind kind) {
    g.nodes.push_back(MapNode{next_id, sector, layer, kind});
    return next_id++;
  };

  for (int sector = 0; sector < config.sector_count; ++sector) {
    std::vector<std::vector<int>> layers;
    std::vector<int> slots;
    for (int layer = 0; layer < config.layers_per_sector; ++layer) {
      const int count = rng.next_in_range(2, config.map_width);
      std::vector<int> ids;
      for (int i = 0; i < count; ++i) {
        const int id = add_node(sector, layer, RoomKind::Combat);
        ids.push_back(id);
        if (!(sector == 0 && layer == 0)) slots.push_back(id);
      }
      layers.push_back(std::move(ids));
    }
    const int boss = add_node(sector, config.layers_per_sector, RoomKind::Boss);

    for (std::size_t l = 0; l + 1 < layers.size(); ++l) connect_layers(rng, layers[l], layers[l + 1], g.edges);
    for (int id : layers.back()) g.edges.push_back({id, boss});
    if (sector > 0)
      for (int id : layers.front()) g.edges.push_back({g.sector_bosses.back(), id});

    assign_kinds(rng, g.nodes, std::move(slots));
    g.sector_entries.push_back(layers.front());
    g.sector_bosses.push_back(boss);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

}  // namespace mazo
