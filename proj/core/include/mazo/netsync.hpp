#pragma once

// Host-authoritative two-player sessions. The host owns the RunState and
// answers every accepted guest action with a full snapshot; the guest renders
// snapshots and submits actions for its own hero.

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mazo/actor.hpp"
#include "mazo/run.hpp"

namespace mazo {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::size_t kMaxWireMessage = 16u << 20;

namespace wire {

struct Hello {
  int protocol_version = kProtocolVersion;
  std::string display_name;
  std::uint64_t content_hash = 0;
  bool operator==(const Hello&) const = default;
};
struct Welcome {
  int assigned_hero_index = 1;
  bool operator==(const Welcome&) const = default;
};
struct Start {
  Seed seed;
  RunConfig config;
  std::uint64_t content_hash = 0;
  bool operator==(const Start&) const = default;
};
struct NodeChoice {
  int node_id = 0;
  bool operator==(const NodeChoice&) const = default;
};
struct HeroAction {
  int hero_index = 0;
  SceneKind scene_kind = SceneKind::ChoosingNode;
  Decision action;
  bool operator==(const HeroAction&) const = default;
};
struct StateUpdate {
  std::uint64_t sequence = 0;
  PartyState party;
  Scene scene;
  std::vector<HeroState> heroes;
  bool operator==(const StateUpdate&) const = default;
};
struct HeroSummary {
  int hero_index = 0;
  int hp = 0;
  int max_hp = 0;
  int credits = 0;
  bool operator==(const HeroSummary&) const = default;
};
struct Bye {
  std::string reason;
  bool operator==(const Bye&) const = default;
};
struct Ping {
  bool operator==(const Ping&) const = default;
};
struct Pong {
  bool operator==(const Pong&) const = default;
};
// Host answer to a well-formed but illegal game action; no state changed.
struct Reject {
  std::string reason;
  bool operator==(const Reject&) const = default;
};

}  // namespace wire

using WireMessage = std::variant<wire::Hello, wire::Welcome, wire::Start, wire::NodeChoice, wire::HeroAction,
                                 wire::StateUpdate, wire::HeroSummary, wire::Bye, wire::Ping, wire::Pong,
                                 wire::Reject>;

std::string_view message_type(const WireMessage& m) noexcept;

// Canonical JSON body, {"type": ..., ...}.
std::string encode_message(const WireMessage& m);
// Throws ProtocolError.
WireMessage decode_message(std::string_view body);

// 4-byte big-endian length prefix followed by the canonical body.
std::string frame_message(const WireMessage& m);

// Incremental reader for a byte stream of framed messages.
class FrameReader {
 public:
  void feed(std::string_view bytes);
  // Next complete message, nullopt when more bytes are needed. Throws
  // ProtocolError on an oversized prefix or an undecodable body.
  std::optional<WireMessage> next();
  std::size_t buffered() const noexcept { return buffer_.size(); }

 private:
  std::string buffer_;
};

enum class SessionRole { Host, Guest };
enum class SessionPhase { AwaitingHello, Lobby, Running, Ended };

std::string_view to_string(SessionPhase p) noexcept;

struct SessionState {
  SessionRole role = SessionRole::Host;
  SessionPhase phase = SessionPhase::AwaitingHello;
  std::uint64_t content_hash = 0;
  std::string display_name;
  int hero_index = 0;
  std::optional<RunState> run;
  std::uint64_t next_sequence = 1;      // host: sequence of the next StateUpdate
  std::uint64_t last_seen_sequence = 0;  // guest: newest applied StateUpdate
  std::uint64_t dropped_updates = 0;
  std::optional<std::string> end_reason;
  bool operator==(const SessionState&) const = default;
};

struct Handled {
  SessionState session;
  std::vector<WireMessage> outbound;
};

SessionState make_host(const ContentDb& db, std::string display_name = "host");
// A fresh guest plus the Hello it opens with.
Handled make_guest(const ContentDb& db, std::string display_name = "guest");

Handled host_handle(SessionState session, const WireMessage& incoming, const ContentDb& db);
Handled guest_handle(SessionState session, const WireMessage& incoming, const ContentDb& db);

// Host-local commands. Throw WrongPhase / IllegalAction on misuse.
Handled host_start(SessionState session, Seed seed, const RunConfig& config, const ContentDb& db);
Handled host_decide(SessionState session, const Decision& decision, const ContentDb& db);

// Guest-local: the HeroAction to send for its own hero. Does not touch state.
WireMessage guest_action(const SessionState& session, const Decision& decision);

// FNV-1a over the canonical save of the session's run (0 when absent).
std::uint64_t run_hash(const SessionState& session);

// In-process soak: a host and a guest driven by the actor over an ordered
// in-memory channel, one tick at a time.
struct SoakLimits {
  int idle_limit_ticks = 64;
  int budget_ticks = 200'000;
  bool operator==(const SoakLimits&) const = default;
};

struct SoakReport {
  int completed = 0;
  int stalls = 0;
  int progress_timeouts = 0;
  std::optional<Seed> first_stall_seed;
  bool operator==(const SoakReport&) const = default;
};

// Invoked after each tick's delivery phase, when both queues are empty.
using QuiescenceObserver = std::function<void(Seed seed, const SessionState& host, const SessionState& guest)>;

SoakReport soak_run(const std::vector<Seed>& seeds, const RunConfig& config, const ContentDb& db,
                    const PolicyWeights& weights = {}, const SoakLimits& limits = {},
                    const QuiescenceObserver& observer = {});

std::string render_text(const SoakReport& report);
std::string render_machine(const SoakReport& report);

}  // namespace mazo
