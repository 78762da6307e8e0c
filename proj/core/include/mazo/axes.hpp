#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mazo {

enum class Axis { Focus, Rhythm, Momentum };

inline constexpr std::array<Axis, 3> kAllAxes = {Axis::Focus, Axis::Rhythm, Axis::Momentum};
inline constexpr int kAxisMin = -9;
inline constexpr int kAxisMax = 9;

struct AxisState {
  int focus = 0;
  int rhythm = 0;
  int momentum = 0;

  int get(Axis a) const noexcept {
    switch (a) {
      case Axis::Focus: return focus;
      case Axis::Rhythm: return rhythm;
      case Axis::Momentum: return momentum;
    }
    return 0;
  }

  // Adds delta and clamps to [kAxisMin, kAxisMax]. Returns the applied change.
  int add(Axis a, int delta) noexcept {
    int& slot = a == Axis::Focus ? focus : a == Axis::Rhythm ? rhythm : momentum;
    const int before = slot;
    long next = static_cast<long>(slot) + delta;
    if (next < kAxisMin) next = kAxisMin;
    if (next > kAxisMax) next = kAxisMax;
    slot = static_cast<int>(next);
    return slot - before;
  }

  int sum() const noexcept { return focus + rhythm + momentum; }

  bool operator==(const AxisState&) const = default;
};

std::string_view to_string(Axis a) noexcept;
std::optional<Axis> parse_axis(std::string_view s) noexcept;

}  // namespace mazo
