#pragma once

// Labeled SplitMix64 streams. Every random decision in the engine is drawn
// from one of these; there is no ambient RNG anywhere.

#include <array>
#include <compare>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace mazo {

struct Seed {
  std::uint64_t value = 0;
  auto operator<=>(const Seed&) const = default;
};

enum class StreamLabel : std::uint8_t { MapGen, Shuffle, Rewards, Events, EnemyAi, Shop, Misc };

inline constexpr std::array<StreamLabel, 7> kAllStreamLabels = {
    StreamLabel::MapGen, StreamLabel::Shuffle, StreamLabel::Rewards, StreamLabel::Events,
    StreamLabel::EnemyAi, StreamLabel::Shop, StreamLabel::Misc};

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x00000100000001b3ULL;
  }
  return h;
}

// SplitMix64 output finalizer (no gamma increment).
constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view label_name(StreamLabel label) noexcept;

// Frozen table: FNV-1a 64 of the label's ASCII name.
std::uint64_t label_constant(StreamLabel label) noexcept;

class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t state, StreamLabel label, std::uint64_t draws = 0) noexcept
      : state_(state), label_(label), draws_(draws) {}

  std::uint64_t state() const noexcept { return state_; }
  StreamLabel label() const noexcept { return label_; }
  std::uint64_t draws() const noexcept { return draws_; }

  std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    ++draws_;
    return splitmix64_finalize(state_);
  }

  // Uniform in [0, n) by bitmask rejection. Throws ContractViolation for n == 0.
  std::uint64_t next_below(std::uint64_t n);

  // Convenience for small signed ranges: uniform in [lo, hi].
  int next_in_range(int lo, int hi);

  // Fisher-Yates, high index down; exactly size()-1 bounded draws.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(next_below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  bool operator==(const RngStream&) const = default;

 private:
  std::uint64_t state_ = 0;
  StreamLabel label_ = StreamLabel::Misc;
  std::uint64_t draws_ = 0;
};

// state = finalize(seed ^ label_constant(label) ^ index * golden gamma)
RngStream derive_stream(Seed seed, StreamLabel label, std::uint64_t index = 0) noexcept;

}  // namespace mazo
