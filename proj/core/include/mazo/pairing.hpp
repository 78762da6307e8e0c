#pragma once

// Signaling payload codec: opaque bytes -> optional raw deflate -> base64url
// (no padding) -> frames of at most 512 characters:
//
//   MZ1:<index>/<total>:<crc32-hex8>:<flags>:<chunk>
//
// flags is "-" (stored) or "z" (deflated). The crc covers the transmitted
// bytes; deflated payloads carry that crc with all bits inverted, so a
// corrupted flag character can never validate.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mazo {

inline constexpr std::size_t kMaxPayloadBytes = 256 * 1024;
inline constexpr std::size_t kMaxChunkChars = 512;
inline constexpr std::size_t kMaxFrames = ((kMaxPayloadBytes * 4 + 2) / 3 + kMaxChunkChars - 1) / kMaxChunkChars;
inline constexpr std::string_view kFramePrefix = "MZ1:";

struct Frame {
  int index = 1;  // 1-based
  int total = 1;
  std::uint32_t crc = 0;
  bool compressed = false;
  std::string chunk;
  bool operator==(const Frame&) const = default;
};

std::string base64url_encode(std::string_view bytes);
// Rejects padding, foreign characters, impossible lengths and nonzero
// trailing bits.
std::optional<std::string> base64url_decode(std::string_view text);

// Raw deflate, level 9, 15-bit window, default strategy.
std::string deflate_raw(std::string_view bytes);
// nullopt when the stream is invalid, truncated, trailed by garbage or
// inflates past kMaxPayloadBytes.
std::optional<std::string> inflate_raw(std::string_view bytes);

std::uint32_t payload_crc(std::string_view transmitted, bool compressed) noexcept;

// Throws FrameError when the payload exceeds kMaxPayloadBytes.
std::vector<std::string> encode_payload(std::string_view payload, bool compress);

std::string format_frame(const Frame& f);
// Throws FrameError naming the violated rule.
Frame decode_frame(std::string_view text);

// True when every character is in [A-Za-z0-9_:/-].
bool frame_charset_ok(std::string_view text) noexcept;

struct AssemblyState {
  std::optional<int> expected_total;
  std::optional<std::uint32_t> crc_expected;
  std::optional<bool> compressed;
  std::map<int, std::string> received;
  bool operator==(const AssemblyState&) const = default;
};

enum class AbsorbStatus { NeedMore, Complete, Conflict, IntegrityError };

std::string_view to_string(AbsorbStatus s) noexcept;

struct AbsorbResult {
  AssemblyState state;
  AbsorbStatus status = AbsorbStatus::NeedMore;
  std::vector<int> missing;  // NeedMore
  std::string payload;       // Complete
};

// A conflicting frame leaves the state unchanged. IntegrityError is reported
// once every index is present but the bytes fail the crc or do not decode.
AbsorbResult absorb(AssemblyState state, const Frame& frame);

// Manual paste: whitespace-separated frames absorbed in order, stopping at
// the first Conflict or IntegrityError. Throws FrameError on a bad token.
AbsorbResult absorb_text(AssemblyState state, std::string_view blob);

}  // namespace mazo
