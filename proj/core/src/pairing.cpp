#include "mazo/pairing.hpp"

#include <zlib.h>

#include <array>
#include <cctype>
#include <charconv>

#include "mazo/error.hpp"

namespace mazo {

namespace {

constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

constexpr std::array<int, 256> make_reverse() {
  std::array<int, 256> r{};
  for (auto& v : r) v = -1;
  for (std::size_t i = 0; i < kAlphabet.size(); ++i) r[static_cast<unsigned char>(kAlphabet[i])] = static_cast<int>(i);
  return r;
}

constexpr auto kReverse = make_reverse();

}  // namespace

std::string base64url_encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() * 4 + 2) / 3);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const auto v = static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i])) << 16 |
                   static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i + 1])) << 8 |
                   static_cast<unsigned char>(bytes[i + 2]);
    for (int s = 18; s >= 0; s -= 6) out.push_back(kAlphabet[(v >> s) & 63]);
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const auto v = static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i])) << 16;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
  } else if (rest == 2) {
    const auto v = static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i])) << 16 |
                   static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i + 1])) << 8;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
  }
  return out;
}

std::optional<std::string> base64url_decode(std::string_view text) {
  if (text.size() % 4 == 1) return std::nullopt;
  std::string out;
  out.reserve(text.size() * 3 / 4);
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    const int v = kReverse[static_cast<unsigned char>(c)];
    if (v < 0) return std::nullopt;
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((acc >> bits) & 0xff));
    }
  }
  if (bits > 0 && (acc & ((1u << bits) - 1)) != 0) return std::nullopt;
  return out;
}

std::string deflate_raw(std::string_view bytes) {
  z_stream zs{};
  if (deflateInit2(&zs, 9, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK) throw Error("deflateInit2 failed");
  std::string out(deflateBound(&zs, static_cast<uLong>(bytes.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error("deflate did not finish");
  return out;
}

std::optional<std::string> inflate_raw(std::string_view bytes) {
  z_stream zs{};
  if (inflateInit2(&zs, -15) != Z_OK) return std::nullopt;
  std::string out(kMaxPayloadBytes + 1, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const bool ok = rc == Z_STREAM_END && zs.avail_in == 0 && zs.total_out <= kMaxPayloadBytes;
  out.resize(zs.total_out);
  inflateEnd(&zs);
  if (!ok) return std::nullopt;
  return out;
}

std::uint32_t payload_crc(std::string_view transmitted, bool compressed) noexcept {
  const auto crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(transmitted.data()), static_cast<uInt>(transmitted.size())));
  return compressed ? ~crc : crc;
}

std::vector<std::string> encode_payload(std::string_view payload, bool compress) {
  if (payload.size() > kMaxPayloadBytes) throw FrameError("payload exceeds 256 KiB");
  std::string bytes(payload);
  bool compressed = false;
  if (compress) {
    std::string packed = deflate_raw(payload);
    if (packed.size() < payload.size()) {
      bytes = std::move(packed);
      compressed = true;
    }
  }
  const std::string text = base64url_encode(bytes);
  const std::uint32_t crc = payload_crc(bytes, compressed);
  const std::size_t total = text.empty() ? 1 : (text.size() + kMaxChunkChars - 1) / kMaxChunkChars;
  std::vector<std::string> frames;
  frames.reserve(total);
  for (std::size_t i = 0; i < total; ++i)
    frames.push_back(format_frame(Frame{static_cast<int>(i + 1), static_cast<int>(total), crc, compressed,
                                        text.substr(i * kMaxChunkChars, kMaxChunkChars)}));
  return frames;
}

std::string format_frame(const Frame& f) {
  char crc[9];
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 0; i < 8; ++i) crc[i] = kHex[(f.crc >> (28 - 4 * i)) & 0xf];
  crc[8] = '\0';
  return std::string(kFramePrefix) + std::to_string(f.index) + "/" + std::to_string(f.total) + ":" + crc + ":" +
         (f.compressed ? "z" : "-") + ":" + f.chunk;
}

bool frame_charset_ok(std::string_view text) noexcept {
  for (char c : text) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == ':' || c == '/' || c == '-';
    if (!ok) return false;
  }
  return true;
}

namespace {

int parse_count(std::string_view s, const char* what) {
  if (s.empty() || s.size() > 6 || s[0] == '0') throw FrameError(std::string("malformed frame: bad ") + what);
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw FrameError(std::string("malformed frame: bad ") + what);
  return v;
}

}  // namespace

Frame decode_frame(std::string_view text) {
  if (text.substr(0, kFramePrefix.size()) != kFramePrefix) throw FrameError("malformed frame: missing MZ1: prefix");
  if (!frame_charset_ok(text)) throw FrameError("malformed frame: illegal characters");
  std::string_view rest = text.substr(kFramePrefix.size());
  auto take = [&](char sep, const char* what) {
    const auto pos = rest.find(sep);
    if (pos == std::string_view::npos) throw FrameError(std::string("malformed frame: missing ") + what);
    const auto field = rest.substr(0, pos);
    rest.remove_prefix(pos + 1);
    return field;
  };
  Frame f;
  f.index = parse_count(take('/', "index"), "index");
  f.total = parse_count(take(':', "total"), "total");
  if (f.total > static_cast<int>(kMaxFrames)) throw FrameError("malformed frame: total exceeds the payload limit");
  if (f.index < 1 || f.index > f.total) throw FrameError("malformed frame: index out of range");
  const auto crc = take(':', "crc");
  if (crc.size() != 8) throw FrameError("malformed frame: crc must be 8 hex digits");
  for (char c : crc) {
    const bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!hex) throw FrameError("malformed frame: non-hex crc");
    f.crc = (f.crc << 4) | static_cast<std::uint32_t>(c <= '9' ? c - '0' : c - 'a' + 10);
  }
  const auto flags = take(':', "flags");
  if (flags != "-" && flags != "z") throw FrameError("malformed frame: flags must be '-' or 'z'");
  f.compressed = flags == "z";
  if (rest.size() > kMaxChunkChars) throw FrameError("malformed frame: chunk longer than 512");
  for (char c : rest)
    if (kReverse[static_cast<unsigned char>(c)] < 0) throw FrameError("malformed frame: illegal chunk character");
  f.chunk = std::string(rest);
  return f;
}

std::string_view to_string(AbsorbStatus s) noexcept {
  switch (s) {
    case AbsorbStatus::NeedMore: return "NeedMore";
    case AbsorbStatus::Complete: return "Complete";
    case AbsorbStatus::Conflict: return "Conflict";
    case AbsorbStatus::IntegrityError: return "IntegrityError";
  }
  return "?";
}

AbsorbResult absorb(AssemblyState state, const Frame& frame) {
  AbsorbResult r;
  const bool disagrees = (state.expected_total && *state.expected_total != frame.total) ||
                         (state.crc_expected && *state.crc_expected != frame.crc) ||
                         (state.compressed && *state.compressed != frame.compressed);
  if (auto it = state.received.find(frame.index);
      disagrees || (it != state.received.end() && it->second != frame.chunk)) {
    r.state = std::move(state);
    r.status = AbsorbStatus::Conflict;
    return r;
  }
  state.expected_total = frame.total;
  state.crc_expected = frame.crc;
  state.compressed = frame.compressed;
  state.received.emplace(frame.index, frame.chunk);

  for (int i = 1; i <= frame.total; ++i)
    if (!state.received.count(i)) r.missing.push_back(i);
  if (!r.missing.empty()) {
    r.state = std::move(state);
    return r;
  }
  std::string text;
  for (const auto& [_, chunk] : state.received) text += chunk;
  r.state = std::move(state);
  r.status = AbsorbStatus::IntegrityError;
  auto bytes = base64url_decode(text);
  if (!bytes || payload_crc(*bytes, frame.compressed) != frame.crc) return r;
  if (frame.compressed) {
    auto plain = inflate_raw(*bytes);
    if (!plain) return r;
    r.payload = std::move(*plain);
  } else {
    if (bytes->size() > kMaxPayloadBytes) return r;
    r.payload = std::move(*bytes);
  }
  r.status = AbsorbStatus::Complete;
  return r;
}

AbsorbResult absorb_text(AssemblyState state, std::string_view blob) {
  AbsorbResult r;
  r.state = std::move(state);
  bool any = false;
  std::size_t pos = 0;
  while (pos < blob.size()) {
    while (pos < blob.size() && std::isspace(static_cast<unsigned char>(blob[pos]))) ++pos;
    std::size_t end = pos;
    while (end < blob.size() && !std::isspace(static_cast<unsigned char>(blob[end]))) ++end;
    if (end == pos) break;
    const Frame f = decode_frame(blob.substr(pos, end - pos));
    r = absorb(std::move(r.state), f);
    any = true;
    if (r.status == AbsorbStatus::Conflict || r.status == AbsorbStatus::IntegrityError) return r;
    pos = end;
  }
  if (!any) throw FrameError("no frames in pasted text");
  return r;
}

}  // namespace mazo
