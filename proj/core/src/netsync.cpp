#include "mazo/netsync.hpp"

#include "codec.hpp"
#include "mazo/error.hpp"
#include "mazo/persist.hpp"

namespace mazo {

using detail::Json;

namespace {

template <typename>
inline constexpr bool kAlwaysFalse = false;

}  // namespace

std::string_view message_type(const WireMessage& m) noexcept {
  static constexpr std::string_view kNames[] = {"Hello",       "Welcome",     "Start", "NodeChoice",
                                                "HeroAction",  "StateUpdate", "HeroSummary", "Bye",
                                                "Ping",        "Pong",        "Reject"};
  return kNames[m.index()];
}

std::string_view to_string(SessionPhase p) noexcept {
  switch (p) {
    case SessionPhase::AwaitingHello: return "AwaitingHello";
    case SessionPhase::Lobby: return "Lobby";
    case SessionPhase::Running: return "Running";
    case SessionPhase::Ended: return "Ended";
  }
  return "?";
}

std::string encode_message(const WireMessage& m) {
  Json j = std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, wire::Hello>)
          return Json{{"protocol_version", x.protocol_version},
                      {"display_name", x.display_name},
                      {"content_hash", detail::hex64(x.content_hash)}};
        else if constexpr (std::is_same_v<T, wire::Welcome>)
          return Json{{"assigned_hero_index", x.assigned_hero_index}};
        else if constexpr (std::is_same_v<T, wire::Start>)
          return Json{{"seed", detail::hex64(x.seed.value)},
                      {"config", detail::encode(x.config)},
                      {"content_hash", detail::hex64(x.content_hash)}};
        else if constexpr (std::is_same_v<T, wire::NodeChoice>)
          return Json{{"node_id", x.node_id}};
        else if constexpr (std::is_same_v<T, wire::HeroAction>)
          return Json{{"hero_index", x.hero_index},
                      {"scene_kind", to_string(x.scene_kind)},
                      {"action", detail::encode(x.action)}};
        else if constexpr (std::is_same_v<T, wire::StateUpdate>) {
          Json heroes = Json::array();
          for (const auto& h : x.heroes) heroes.push_back(detail::encode(h));
          return Json{{"sequence", x.sequence},
                      {"party", detail::encode(x.party)},
                      {"scene", detail::encode(x.scene)},
                      {"heroes", std::move(heroes)}};
        } else if constexpr (std::is_same_v<T, wire::HeroSummary>)
          return Json{{"hero_index", x.hero_index}, {"hp", x.hp}, {"max_hp", x.max_hp}, {"credits", x.credits}};
        else if constexpr (std::is_same_v<T, wire::Bye> || std::is_same_v<T, wire::Reject>)
          return Json{{"reason", x.reason}};
        else if constexpr (std::is_same_v<T, wire::Ping> || std::is_same_v<T, wire::Pong>)
          return Json::object();
        else
          static_assert(kAlwaysFalse<T>);
      },
      m);
  j["type"] = message_type(m);
  return detail::canonical(j);
}

WireMessage decode_message(std::string_view body) {
  const Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ProtocolError("wire message is not a JSON object");
  try {
    const auto& type = detail::get_str(j, "type");
    if (type == "Hello")
      return wire::Hello{detail::get_i32(j, "protocol_version"), detail::get_str(j, "display_name"),
                         detail::parse_hex64(detail::field(j, "content_hash"), "content_hash")};
    if (type == "Welcome") return wire::Welcome{detail::get_i32(j, "assigned_hero_index")};
    if (type == "Start")
      return wire::Start{Seed{detail::parse_hex64(detail::field(j, "seed"), "seed")},
                         detail::decode_config(detail::field(j, "config")),
                         detail::parse_hex64(detail::field(j, "content_hash"), "content_hash")};
    if (type == "NodeChoice") return wire::NodeChoice{detail::get_i32(j, "node_id")};
    if (type == "HeroAction") {
      const auto kind = parse_scene_kind(detail::get_str(j, "scene_kind"));
      if (!kind) detail::shape_error("unknown scene kind");
      return wire::HeroAction{detail::get_i32(j, "hero_index"), *kind,
                              detail::decode_decision(detail::field(j, "action"))};
    }
    if (type == "StateUpdate") {
      wire::StateUpdate u;
      u.sequence = detail::get_u64(j, "sequence");
      u.party = detail::decode_party(detail::field(j, "party"));
      u.scene = detail::decode_scene(detail::field(j, "scene"));
      for (const auto& h : detail::as_array(detail::field(j, "heroes"), "heroes"))
        u.heroes.push_back(detail::decode_hero(h));
      return u;
    }
    if (type == "HeroSummary")
      return wire::HeroSummary{detail::get_i32(j, "hero_index"), detail::get_i32(j, "hp"),
                               detail::get_i32(j, "max_hp"), detail::get_i32(j, "credits")};
    if (type == "Bye") return wire::Bye{detail::get_str(j, "reason")};
    if (type == "Reject") return wire::Reject{detail::get_str(j, "reason")};
    if (type == "Ping") return wire::Ping{};
    if (type == "Pong") return wire::Pong{};
    throw ProtocolError("unknown message type '" + type + "'");
  } catch (const detail::JsonShapeError& e) {
    throw ProtocolError("bad wire message: " + e.what);
  }
}

std::string frame_message(const WireMessage& m) {
  const std::string body = encode_message(m);
  if (body.size() > kMaxWireMessage) throw ProtocolError("wire message too large");
  const auto n = static_cast<std::uint32_t>(body.size());
  std::string out;
  out.reserve(4 + body.size());
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((n >> shift) & 0xff));
  out += body;
  return out;
}

void FrameReader::feed(std::string_view bytes) { buffer_.append(bytes); }

std::optional<WireMessage> FrameReader::next() {
  if (buffer_.size() < 4) return std::nullopt;
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n = (n << 8) | static_cast<std::uint8_t>(buffer_[static_cast<std::size_t>(i)]);
  if (n > kMaxWireMessage) throw ProtocolError("wire length prefix exceeds limit");
  if (buffer_.size() < 4 + std::size_t{n}) return std::nullopt;
  const std::string body = buffer_.substr(4, n);
  buffer_.erase(0, 4 + std::size_t{n});
  return decode_message(body);
}

namespace {

wire::StateUpdate snapshot(SessionState& s) {
  return wire::StateUpdate{s.next_sequence++, s.run->party, s.run->scene, s.run->heroes};
}

Handled end_session(SessionState s, std::string reason) {
  s.phase = SessionPhase::Ended;
  s.end_reason = reason;
  return Handled{std::move(s), {wire::Bye{std::move(reason)}}};
}

Handled reject(SessionState s, std::string reason) { return Handled{std::move(s), {wire::Reject{std::move(reason)}}}; }

constexpr const char* kViolation = "protocol violation";

Handled host_hero_action(SessionState s, const wire::HeroAction& a, const ContentDb& db) {
  if (a.hero_index != 1) return reject(std::move(s), "hero_index does not match the sender");
  if (std::holds_alternative<decision::ChooseNode>(a.action)) return reject(std::move(s), "node choice is host-only");
  if (a.scene_kind != scene_kind(s.run->scene)) return reject(std::move(s), "action for a different scene");
  if (decision_owner(*s.run) != a.hero_index) return reject(std::move(s), "not this hero's decision");
  try {
    s.run = apply_decision(*s.run, a.hero_index, a.action, db);
  } catch (const Error& e) {
    return reject(std::move(s), e.what());
  }
  auto update = snapshot(s);
  return Handled{std::move(s), {std::move(update)}};
}

}  // namespace

SessionState make_host(const ContentDb& db, std::string display_name) {
  SessionState s;
  s.role = SessionRole::Host;
  s.content_hash = content_hash(db);
  s.display_name = std::move(display_name);
  return s;
}

Handled make_guest(const ContentDb& db, std::string display_name) {
  SessionState s;
  s.role = SessionRole::Guest;
  s.content_hash = content_hash(db);
  s.display_name = std::move(display_name);
  s.hero_index = -1;
  wire::Hello hello{kProtocolVersion, s.display_name, s.content_hash};
  return Handled{std::move(s), {std::move(hello)}};
}

Handled host_handle(SessionState s, const WireMessage& incoming, const ContentDb& db) {
  if (s.role != SessionRole::Host) throw WrongPhase("host_handle: session is not a host");
  if (s.phase == SessionPhase::Ended) return Handled{std::move(s), {}};
  if (std::holds_alternative<wire::Ping>(incoming)) return Handled{std::move(s), {wire::Pong{}}};
  if (std::holds_alternative<wire::Pong>(incoming)) return Handled{std::move(s), {}};
  if (const auto* bye = std::get_if<wire::Bye>(&incoming)) {
    s.phase = SessionPhase::Ended;
    s.end_reason = "peer left: " + bye->reason;
    return Handled{std::move(s), {}};
  }
  if (const auto* hello = std::get_if<wire::Hello>(&incoming)) {
    if (s.phase != SessionPhase::AwaitingHello) return end_session(std::move(s), kViolation);
    if (hello->protocol_version != kProtocolVersion) return end_session(std::move(s), "protocol version mismatch");
    if (hello->content_hash != s.content_hash) return end_session(std::move(s), "content hash mismatch");
    s.phase = SessionPhase::Lobby;
    return Handled{std::move(s), {wire::Welcome{1}}};
  }
  if (s.phase != SessionPhase::Running) return end_session(std::move(s), kViolation);
  if (const auto* a = std::get_if<wire::HeroAction>(&incoming)) return host_hero_action(std::move(s), *a, db);
  if (std::holds_alternative<wire::NodeChoice>(incoming)) return reject(std::move(s), "node choice is host-only");
  if (const auto* sum = std::get_if<wire::HeroSummary>(&incoming)) {
    if (sum->hero_index != 1) return reject(std::move(s), "hero_index does not match the sender");
    return Handled{std::move(s), {}};
  }
  return end_session(std::move(s), kViolation);
}

Handled host_start(SessionState s, Seed seed, const RunConfig& config, const ContentDb& db) {
  if (s.role != SessionRole::Host || s.phase != SessionPhase::Lobby) throw WrongPhase("host_start: not in lobby");
  if (config.players != 2) throw ConfigError("host_start: a session needs players = 2");
  s.run = start_run(seed, config, db);
  s.phase = SessionPhase::Running;
  wire::Start start{seed, config, s.content_hash};
  auto update = snapshot(s);
  return Handled{std::move(s), {std::move(start), std::move(update)}};
}

Handled host_decide(SessionState s, const Decision& d, const ContentDb& db) {
  if (s.role != SessionRole::Host || s.phase != SessionPhase::Running) throw WrongPhase("host_decide: not running");
  if (decision_owner(*s.run) != 0) throw WrongPhase("host_decide: not the host's decision");
  s.run = apply_decision(*s.run, 0, d, db);
  auto update = snapshot(s);
  return Handled{std::move(s), {std::move(update)}};
}

Handled guest_handle(SessionState s, const WireMessage& incoming, const ContentDb& db) {
  if (s.role != SessionRole::Guest) throw WrongPhase("guest_handle: session is not a guest");
  if (s.phase == SessionPhase::Ended) return Handled{std::move(s), {}};
  if (std::holds_alternative<wire::Ping>(incoming)) return Handled{std::move(s), {wire::Pong{}}};
  if (std::holds_alternative<wire::Pong>(incoming) || std::holds_alternative<wire::Reject>(incoming))
    return Handled{std::move(s), {}};
  if (const auto* bye = std::get_if<wire::Bye>(&incoming)) {
    s.phase = SessionPhase::Ended;
    s.end_reason = "peer left: " + bye->reason;
    return Handled{std::move(s), {}};
  }
  if (const auto* w = std::get_if<wire::Welcome>(&incoming)) {
    if (s.phase != SessionPhase::AwaitingHello || w->assigned_hero_index != 1)
      return end_session(std::move(s), kViolation);
    s.hero_index = w->assigned_hero_index;
    s.phase = SessionPhase::Lobby;
    return Handled{std::move(s), {}};
  }
  if (const auto* st = std::get_if<wire::Start>(&incoming)) {
    if (s.phase != SessionPhase::Lobby) return end_session(std::move(s), kViolation);
    if (st->content_hash != s.content_hash) return end_session(std::move(s), "content hash mismatch");
    try {
      s.run = start_run(st->seed, st->config, db);
    } catch (const Error&) {
      return end_session(std::move(s), "invalid run configuration");
    }
    s.phase = SessionPhase::Running;
    return Handled{std::move(s), {}};
  }
  if (const auto* u = std::get_if<wire::StateUpdate>(&incoming)) {
    if (s.phase != SessionPhase::Running) return end_session(std::move(s), kViolation);
    if (u->sequence <= s.last_seen_sequence) {
      ++s.dropped_updates;
      return Handled{std::move(s), {}};
    }
    if (u->heroes.size() != s.run->heroes.size()) return end_session(std::move(s), kViolation);
    const auto own = static_cast<std::size_t>(s.hero_index);
    const HeroState before = s.run->heroes[own];
    s.last_seen_sequence = u->sequence;
    s.run->party = u->party;
    s.run->scene = u->scene;
    s.run->heroes = u->heroes;
    const HeroState& after = s.run->heroes[own];
    std::vector<WireMessage> out;
    if (after.hp != before.hp || after.max_hp != before.max_hp || after.credits != before.credits)
      out.push_back(wire::HeroSummary{s.hero_index, after.hp, after.max_hp, after.credits});
    return Handled{std::move(s), std::move(out)};
  }
  return end_session(std::move(s), kViolation);
}

WireMessage guest_action(const SessionState& s, const Decision& d) {
  if (s.role != SessionRole::Guest || s.phase != SessionPhase::Running) throw WrongPhase("guest_action: not running");
  return wire::HeroAction{s.hero_index, scene_kind(s.run->scene), d};
}

std::uint64_t run_hash(const SessionState& s) { return s.run ? fnv1a64(save_run(*s.run)) : 0; }

}  // namespace mazo
