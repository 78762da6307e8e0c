#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace oracle {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint32_t crc32(std::string_view bytes) {
  std::uint32_t crc = 0xffffffffu;
  for (unsigned char c : bytes) {
    crc ^= c;
    for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xedb88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

std::string base64url(std::string_view bytes) {
  static const char* std_alpha = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    unsigned b[3] = {0, 0, 0};
    const std::size_t n = std::min<std::size_t>(3, bytes.size() - i);
    for (std::size_t k = 0; k < n; ++k) b[k] = static_cast<unsigned char>(bytes[i + k]);
    const unsigned v = (b[0] << 16) | (b[1] << 8) | b[2];
    const char quad[4] = {std_alpha[(v >> 18) & 63], std_alpha[(v >> 12) & 63], std_alpha[(v >> 6) & 63],
                          std_alpha[v & 63]};
    out.append(quad, n + 1);
  }
  for (char& c : out) {
    if (c == '+') c = '-';
    if (c == '/') c = '_';
  }
  return out;
}

std::vector<std::string> map_violations(const mazo::MapGraph& g, const mazo::RunConfig& cfg) {
  using mazo::RoomKind;
  std::vector<std::string> bad;
  auto fail = [&](std::string s) { bad.push_back(std::move(s)); };
  const int n = static_cast<int>(g.nodes.size());
  const int L = cfg.layers_per_sector;

  for (int i = 0; i < n; ++i)
    if (g.nodes[i].id != i) fail("node id differs from index " + std::to_string(i));
  if (static_cast<int>(g.sector_bosses.size()) != cfg.sector_count) fail("boss list size");
  if (static_cast<int>(g.sector_entries.size()) != cfg.sector_count) fail("entry list size");
  if (!bad.empty()) return bad;

  std::vector<std::vector<int>> out(n), in(n);
  for (const auto& e : g.edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      fail("edge endpoint out of range");
      continue;
    }
    out[e.from].push_back(e.to);
    in[e.to].push_back(e.from);
    const auto& a = g.nodes[e.from];
    const auto& b = g.nodes[e.to];
    const bool next_layer = a.sector == b.sector && b.layer == a.layer + 1;
    const bool boss_to_entry = a.kind == RoomKind::Boss && b.sector == a.sector + 1 && b.layer == 0;
    if (!next_layer && !boss_to_entry) fail("edge skips layers: " + std::to_string(e.from) + "->" + std::to_string(e.to));
  }

  // Acyclicity by Kahn's algorithm.
  std::vector<int> indeg(n);
  for (int i = 0; i < n; ++i) indeg[i] = static_cast<int>(in[i].size());
  std::queue<int> q;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) q.push(i);
  int seen = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    ++seen;
    for (int w : out[v])
      if (--indeg[w] == 0) q.push(w);
  }
  if (seen != n) fail("graph has a cycle");

  // Reachability from the first sector's entries, and to the final boss.
  std::vector<bool> fwd(n), back(n);
  std::queue<int> f;
  for (int e : g.sector_entries[0]) {
    fwd[e] = true;
    f.push(e);
  }
  while (!f.empty()) {
    const int v = f.front();
    f.pop();
    for (int w : out[v])
      if (!fwd[w]) fwd[w] = true, f.push(w);
  }
  const int final_boss = g.sector_bosses.back();
  back[final_boss] = true;
  f.push(final_boss);
  while (!f.empty()) {
    const int v = f.front();
    f.pop();
    for (int w : in[v])
      if (!back[w]) back[w] = true, f.push(w);
  }
  for (int i = 0; i < n; ++i) {
    if (!fwd[i]) fail("node " + std::to_string(i) + " unreachable from the start");
    if (!back[i]) fail("node " + std::to_string(i) + " cannot reach the final boss");
  }

  for (int s = 0; s < cfg.sector_count; ++s) {
    std::map<int, int> layer_size;
    std::map<RoomKind, int> kinds;
    int bosses = 0;
    for (const auto& node : g.nodes) {
      if (node.sector != s) continue;
      if (node.kind == RoomKind::Boss) {
        ++bosses;
        if (node.layer != L) fail("boss not on the last layer");
        if (node.id != g.sector_bosses[s]) fail("boss id mismatch");
        continue;
      }
      if (node.layer < 0 || node.layer >= L) fail("layer out of range");
      ++layer_size[node.layer];
      ++kinds[node.kind];
      if (s == 0 && node.layer == 0 && node.kind != RoomKind::Combat) fail("first layer is not all Combat");
      if (in[node.id].empty() && !(s == 0 && node.layer == 0)) fail("node without in-edge");
    }
    if (bosses != 1) fail("sector " + std::to_string(s) + " has " + std::to_string(bosses) + " bosses");
    for (int l = 0; l < L; ++l) {
      const int size = layer_size[l];
      if (size < 2 || size > cfg.map_width) fail("layer width out of range");
    }
    std::set<int> entries(g.sector_entries[s].begin(), g.sector_entries[s].end());
    std::set<int> layer0;
    for (const auto& node : g.nodes)
      if (node.sector == s && node.layer == 0) layer0.insert(node.id);
    if (entries != layer0) fail("sector entries are not the first layer");
    // Quotas are filled Rest, Shop, Elite first; a sector with fewer open
    // slots than that (only the first, at two layers) keeps the prefix.
    int slots = 0;
    for (const auto& [layer, size] : layer_size)
      if (!(s == 0 && layer == 0)) slots += size;
    if (kinds[RoomKind::Rest] < std::min(1, slots)) fail("sector without Rest");
    if (kinds[RoomKind::Shop] < std::min(1, slots - 1)) fail("sector without Shop");
    if (kinds[RoomKind::Elite] < std::min(1, slots - 2) || kinds[RoomKind::Elite] > 2) fail("Elite count outside 1-2");
    if (kinds[RoomKind::Treasure] > 1) fail("more than one Treasure");
  }
  for (int i = 0; i < n; ++i)
    if (out[i].empty() && i != final_boss) fail("dead end at node " + std::to_string(i));
  return bad;
}

}  // namespace oracle
