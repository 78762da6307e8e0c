#include "mazo/rng.hpp"

#include "mazo/error.hpp"

namespace mazo {

namespace {

constexpr std::array<std::string_view, 7> kLabelNames = {"MapGen", "Shuffle", "Rewards", "Events",
                                                         "EnemyAi", "Shop", "Misc"};

// Published for cross-implementation parity; rng_test re-derives every entry.
constexpr std::array<std::uint64_t, 7> kLabelConstants = {
    0x360c0a4cd8b6ff11ULL,  // MapGen
    0xc3862d7652fbd40eULL,  // Shuffle
    0xa478cf2baff0ae2bULL,  // Rewards
    0xc265a3e29e1206e4ULL,  // Events
    0x22ddb092f8ea6fb5ULL,  // EnemyAi
    0x716a5f24e3fe97e9ULL,  // Shop
    0x04e610aea9079cc9ULL,  // Misc
};

}  // namespace

std::string_view label_name(StreamLabel label) noexcept {
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::uint64_t label_constant(StreamLabel label) noexcept {
  return kLabelConstants[static_cast<std::size_t>(label)];
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n == 0) throw ContractViolation("next_below: n must be >= 1");
  std::uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    const std::uint64_t v = next_u64() & mask;
    if (v < n) return v;
  }
}

int RngStream::next_in_range(int lo, int hi) {
  if (hi < lo) throw ContractViolation("next_in_range: empty range");
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return lo + static_cast<int>(next_below(span));
}

RngStream derive_stream(Seed seed, StreamLabel label, std::uint64_t index) noexcept {
  const std::uint64_t mixed = seed.value ^ label_constant(label) ^ (index * kGoldenGamma);
  return RngStream(splitmix64_finalize(mixed), label, 0);
}

}  // namespace mazo
