// Regenerates the frozen save fixtures:  mazo-fixtures <output-dir>

#include <fstream>
#include <iostream>

#include "mazo/actor.hpp"
#include "mazo/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: mazo-fixtures <output-dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  for (const auto& f : mazo::baseline_fixtures(mazo::baseline_content())) {
    const std::string path = dir + "/" + f.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "mazo-fixtures: cannot write " << path << '\n';
      return 1;
    }
    out << f.document << '\n';
    std::cout << path << '\n';
  }
  return 0;
}
