#pragma once

// Versioned save documents: canonical key-sorted JSON of the form
// {"state":{...},"version":1}. Stream states are stored verbatim.

#include <string>
#include <string_view>

#include "mazo/run.hpp"

namespace mazo {

inline constexpr int kSaveVersion = 1;
inline constexpr std::string_view kSaveExtension = ".mazosave.json";

std::string save_run(const RunState& run);

// Throws PersistError: Malformed, UnsupportedVersion or DanglingId.
RunState load_run(std::string_view doc, const ContentDb& db);

// Canonical encodings shared with netsync and the reports.
std::string encode_scene(const Scene& scene);
std::string encode_party(const PartyState& party);

}  // namespace mazo
