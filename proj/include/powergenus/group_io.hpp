#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "powergenus/group.hpp"

namespace pg {

// Table format:
//   group <label>
//   order <n>
//   <n lines of n element indices, row-major>
void write_group(std::ostream& os, const FiniteGroup& g);
FiniteGroup read_group(std::istream& is);

/// Parses "(0 1 2)(3 4)" (or "()") as a permutation of the given degree.
Permutation parse_cycles(const std::string& text, std::size_t degree);
std::string format_cycles(const Permutation& p);

struct GeneratorList {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

// Generator format:
//   degree <n>
//   <one permutation per line in cycle notation>
// Blank lines and lines starting with '#' are ignored.
GeneratorList read_generators(std::istream& is);
void write_generators(std::ostream& os, const GeneratorList& list);

}  // namespace pg
