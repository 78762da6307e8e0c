#include <deque>
#include <sstream>

#include "codec.hpp"
#include "mazo/error.hpp"
#include "mazo/netsync.hpp"

namespace mazo {

namespace {

enum class SeedResult { Completed, Stall, ProgressTimeout };

class SoakSession {
 public:
  SoakSession(Seed seed, const RunConfig& config, const ContentDb& db, const PolicyWeights& weights)
      : seed_(seed), config_(config), db_(db), weights_(weights), host_(make_host(db)) {
    auto g = make_guest(db);
    guest_ = std::move(g.session);
    send(to_host_, g.outbound);
  }

  SeedResult run(const SoakLimits& limits, const QuiescenceObserver& observer) {
    int idle = 0;
    for (int tick = 0; tick < limits.budget_ticks; ++tick) {
      if (!deliver()) return SeedResult::Stall;
      if (observer) observer(seed_, host_, guest_);
      if (host_finished()) return SeedResult::Completed;
      const bool host_acted = host_act();
      const bool guest_acted = guest_act();
      if (host_acted || guest_acted) {
        idle = 0;
      } else if (++idle >= limits.idle_limit_ticks) {
        return SeedResult::Stall;
      }
    }
    return SeedResult::ProgressTimeout;
  }

 private:
  static void send(std::deque<std::string>& q, const std::vector<WireMessage>& msgs) {
    for (const auto& m : msgs) q.push_back(frame_message(m));
  }

  // Delivers until both directions are empty; false if a stream is corrupt.
  bool deliver() {
    try {
      while (!to_host_.empty() || !to_guest_.empty()) {
        while (!to_host_.empty()) {
          host_reader_.feed(to_host_.front());
          to_host_.pop_front();
          while (auto m = host_reader_.next()) {
            auto h = host_handle(std::move(host_), *m, db_);
            host_ = std::move(h.session);
            send(to_guest_, h.outbound);
          }
        }
        while (!to_guest_.empty()) {
          guest_reader_.feed(to_guest_.front());
          to_guest_.pop_front();
          while (auto m = guest_reader_.next()) {
            auto h = guest_handle(std::move(guest_), *m, db_);
            guest_ = std::move(h.session);
            send(to_host_, h.outbound);
          }
        }
      }
    } catch (const ProtocolError&) {
      return false;
    }
    return true;
  }

  bool host_finished() const { return host_.run && host_.run->finished(); }

  bool host_act() {
    try {
      if (host_.phase == SessionPhase::Lobby) {
        auto h = host_start(std::move(host_), seed_, config_, db_);
        host_ = std::move(h.session);
        send(to_guest_, h.outbound);
        return true;
      }
      if (host_.phase != SessionPhase::Running || host_.run->finished() || decision_owner(*host_.run) != 0)
        return false;
      const auto d = choose_progression(*host_.run, db_, weights_);
      auto h = host_decide(host_, d, db_);
      host_ = std::move(h.session);
      send(to_guest_, h.outbound);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  bool guest_act() {
    if (guest_.phase != SessionPhase::Running || guest_.run->finished() ||
        decision_owner(*guest_.run) != guest_.hero_index)
      return false;
    try {
      const auto d = choose_progression(*guest_.run, db_, weights_);
      to_host_.push_back(frame_message(guest_action(guest_, d)));
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  Seed seed_;
  RunConfig config_;
  const ContentDb& db_;
  PolicyWeights weights_;
  SessionState host_;
  SessionState guest_;
  std::deque<std::string> to_host_;
  std::deque<std::string> to_guest_;
  FrameReader host_reader_;
  FrameReader guest_reader_;
};

}  // namespace

SoakReport soak_run(const std::vector<Seed>& seeds, const RunConfig& config, const ContentDb& db,
                    const PolicyWeights& weights, const SoakLimits& limits, const QuiescenceObserver& observer) {
  if (limits.idle_limit_ticks <= 0 || limits.budget_ticks <= 0)
    throw ContractViolation("soak_run: limits must be positive");
  SoakReport report;
  for (const Seed seed : seeds) {
    switch (SoakSession(seed, config, db, weights).run(limits, observer)) {
      case SeedResult::Completed: ++report.completed; break;
      case SeedResult::Stall:
        ++report.stalls;
        if (!report.first_stall_seed) report.first_stall_seed = seed;
        break;
      case SeedResult::ProgressTimeout: ++report.progress_timeouts; break;
    }
  }
  return report;
}

std::string render_text(const SoakReport& r) {
  std::ostringstream out;
  out << "completed=" << r.completed << " stalls=" << r.stalls << " progress_timeouts=" << r.progress_timeouts
      << '\n';
  if (r.first_stall_seed) out << "first_stall_seed=" << r.first_stall_seed->value << '\n';
  return out.str();
}

std::string render_machine(const SoakReport& r) {
  detail::Json j{{"completed", r.completed}, {"stalls", r.stalls}, {"progress_timeouts", r.progress_timeouts}};
  if (r.first_stall_seed) j["first_stall_seed"] = detail::hex64(r.first_stall_seed->value);
  return detail::canonical(j);
}

}  // namespace mazo
