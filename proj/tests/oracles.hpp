#pragma once

// Independent reference implementations used to cross-check the library.
// None of these call into the code they verify.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mazo/map.hpp"

namespace oracle {

// Vigna's reference splitmix64 generator.
struct SplitMix64 {
  std::uint64_t x;
  std::uint64_t next() {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// One splitmix64 output step applied to a raw value (no increment).
std::uint64_t mix(std::uint64_t v);

std::uint64_t fnv1a64(std::string_view s);

// Bit-at-a-time reflected CRC-32 (polynomial 0xEDB88320).
std::uint32_t crc32(std::string_view bytes);

// RFC 4648 base64 with the URL alphabet substituted and padding stripped.
std::string base64url(std::string_view bytes);

// Structural and quota violations of a generated map; empty when valid.
std::vector<std::string> map_violations(const mazo::MapGraph& g, const mazo::RunConfig& config);

}  // namespace oracle
