#include "mazo/persist.hpp"

#include "codec.hpp"
#include "mazo/error.hpp"

namespace mazo {

using detail::Json;

std::string save_run(const RunState& run) {
  return detail::canonical(Json{{"state", detail::encode(run)}, {"version", kSaveVersion}});
}

RunState load_run(std::string_view doc, const ContentDb& db) {
  Json j = Json::parse(doc, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw PersistError(PersistError::Kind::Malformed, "save is not a JSON object");
  RunState run;
  try {
    const auto version = detail::get_i32(j, "version");
    if (version != kSaveVersion)
      throw PersistError(PersistError::Kind::UnsupportedVersion,
                         "unsupported save version " + std::to_string(version));
    run = detail::decode_run(detail::field(j, "state"));
  } catch (const detail::JsonShapeError& e) {
    throw PersistError(PersistError::Kind::Malformed, e.what);
  }
  const auto missing = detail::dangling_ids(run, db);
  if (!missing.empty()) throw PersistError(PersistError::Kind::DanglingId, "save references unknown " + missing.front());
  return run;
}

std::string encode_scene(const Scene& scene) { return detail::canonical(detail::encode(scene)); }

std::string encode_party(const PartyState& party) { return detail::canonical(detail::encode(party)); }

}  // namespace mazo
