#include <sstream>

#include "codec.hpp"
#include "mazo/actor.hpp"
#include "mazo/error.hpp"

namespace mazo {

using detail::Json;

std::string Ratio::fixed2(std::int64_t scale) const {
  if (den <= 0 || num < 0) throw ContractViolation("Ratio::fixed2: needs num >= 0 and den > 0");
  const std::int64_t hundredths = (2 * num * scale * 100 + den) / (2 * den);
  const std::int64_t frac = hundredths % 100;
  return std::to_string(hundredths / 100) + (frac < 10 ? ".0" : ".") + std::to_string(frac);
}

Report aggregate(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ContractViolation("aggregate: no records");
  Report r;
  std::int64_t combats = 0, elites = 0, bosses = 0, victory_hp = 0, survivors = 0;
  for (const auto& rec : records) {
    ++r.runs;
    combats += rec.combats;
    elites += rec.elites;
    bosses += rec.bosses;
    switch (rec.outcome) {
      case RunOutcome::Win:
        ++r.wins;
        victory_hp += rec.final_hp;
        survivors += rec.surviving_heroes;
        break;
      case RunOutcome::Loss: ++r.losses; break;
      case RunOutcome::Abort: ++r.aborts; break;
    }
  }
  r.win_rate = {r.wins, r.runs};
  r.avg_combats = {combats, r.runs};
  r.avg_elites = {elites, r.runs};
  r.avg_bosses = {bosses, r.runs};
  if (r.wins > 0) {
    r.avg_victory_hp = Ratio{victory_hp, r.wins};
    r.avg_surviving_heroes = Ratio{survivors, r.wins};
  }
  return r;
}

std::string render_text(const Report& r) {
  const auto opt = [](const std::optional<Ratio>& v) { return v ? v->fixed2() : std::string("n/a"); };
  std::ostringstream out;
  out << "runs=" << r.runs << " wins=" << r.wins << " losses=" << r.losses << " aborts=" << r.aborts << '\n'
      << "win_rate=" << r.win_rate.fixed2(100) << "%\n"
      << "avg_combats=" << r.avg_combats.fixed2() << " avg_elites=" << r.avg_elites.fixed2()
      << " avg_bosses=" << r.avg_bosses.fixed2() << '\n'
      << "avg_victory_hp=" << opt(r.avg_victory_hp) << " avg_surviving_heroes=" << opt(r.avg_surviving_heroes)
      << '\n';
  return out.str();
}

namespace {

Json ratio_json(const Ratio& r) { return Json{{"num", r.num}, {"den", r.den}}; }

Json record_json(const RunRecord& rec) {
  Json j{{"seed", detail::hex64(rec.seed.value)},
         {"outcome", to_string(rec.outcome)},
         {"combats", rec.combats},
         {"elites", rec.elites},
         {"bosses", rec.bosses},
         {"final_hp", rec.final_hp},
         {"surviving_heroes", rec.surviving_heroes},
         {"steps", rec.steps}};
  if (rec.abort_reason) j["abort_reason"] = to_string(*rec.abort_reason);
  return j;
}

}  // namespace

std::string encode_record(const RunRecord& record) { return detail::canonical(record_json(record)); }

std::string render_machine(const Report& r, const std::vector<RunRecord>& records) {
  Json summary{{"runs", r.runs},
               {"wins", r.wins},
               {"losses", r.losses},
               {"aborts", r.aborts},
               {"win_rate", ratio_json(r.win_rate)},
               {"avg_combats", ratio_json(r.avg_combats)},
               {"avg_elites", ratio_json(r.avg_elites)},
               {"avg_bosses", ratio_json(r.avg_bosses)}};
  if (r.avg_victory_hp) summary["avg_victory_hp"] = ratio_json(*r.avg_victory_hp);
  if (r.avg_surviving_heroes) summary["avg_surviving_heroes"] = ratio_json(*r.avg_surviving_heroes);
  Json recs = Json::array();
  for (const auto& rec : records) recs.push_back(record_json(rec));
  return detail::canonical(Json{{"report", std::move(summary)}, {"records", std::move(recs)}});
}

}  // namespace mazo
