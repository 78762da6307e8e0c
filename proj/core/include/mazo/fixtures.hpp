#pragma once

// The frozen save documents shipped under fixtures/. Tests regenerate them
// and compare bytes; the mazo-fixtures tool writes them.

#include <string>
#include <vector>

#include "mazo/content.hpp"

namespace mazo {

struct FixtureDoc {
  std::string name;      // file name, *.mazosave.json
  std::string document;  // canonical save text without trailing newline
};

std::vector<FixtureDoc> baseline_fixtures(const ContentDb& db);

}  // namespace mazo
