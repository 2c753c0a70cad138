#include "powergenus/group_io.hpp"

#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "powergenus/error.hpp"

namespace pg {

namespace {

bool next_content_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

void write_group(std::ostream& os, const FiniteGroup& g) {
  os << "group " << (g.label().empty() ? "-" : g.label()) << '\n';
  os << "order " << g.order() << '\n';
  for (Element i = 0; i < g.order(); ++i) {
    for (Element j = 0; j < g.order(); ++j) os << (j ? " " : "") << g.mul(i, j);
    os << '\n';
  }
}

FiniteGroup read_group(std::istream& is) {
  std::string line, word, label;
  if (!next_content_line(is, line)) throw ParseError("missing 'group' line");
  {
    std::istringstream ls(line);
    ls >> word;
    if (word != "group") throw ParseError("expected 'group <label>'");
    std::getline(ls >> std::ws, label);
    if (label == "-") label.clear();
  }
  std::size_t order = 0;
  if (!next_content_line(is, line)) throw ParseError("missing 'order' line");
  {
    std::istringstream ls(line);
    if (!(ls >> word >> order) || word != "order" || order == 0)
      throw ParseError("expected 'order <n>'");
  }
  std::vector<Element> table;
  table.reserve(order * order);
  for (std::size_t r = 0; r < order; ++r) {
    if (!next_content_line(is, line)) throw ParseError("table has too few rows");
    std::istringstream ls(line);
    long long v;
    std::size_t count = 0;
    while (ls >> v) {
      if (v < 0) throw ParseError("negative table entry");
      table.push_back(static_cast<Element>(v));
      ++count;
    }
    if (count != order) throw ParseError("row " + std::to_string(r) + " has wrong length");
  }
  return FiniteGroup(order, std::move(table), label);
}

Permutation parse_cycles(const std::string& text, std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<bool> moved(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<std::uint32_t> cycle;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("bad cycle notation: " + text);
      std::size_t v = std::stoul(text.substr(start, i - start));
      if (v >= degree) throw ParseError("point " + std::to_string(v) + " exceeds degree");
      if (moved[v]) throw ParseError("point repeated in cycles: " + text);
      moved[v] = true;
      cycle.push_back(static_cast<std::uint32_t>(v));
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_ws();
  }
  return p;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

GeneratorList read_generators(std::istream& is) {
  GeneratorList out;
  std::string line, word;
  if (!next_content_line(is, line)) throw ParseError("missing 'degree' line");
  std::istringstream ls(line);
  if (!(ls >> word >> out.degree) || word != "degree" || out.degree == 0)
    throw ParseError("expected 'degree <n>'");
  while (next_content_line(is, line)) out.generators.push_back(parse_cycles(line, out.degree));
  if (out.generators.empty()) throw ParseError("no generators listed");
  return out;
}

void write_generators(std::ostream& os, const GeneratorList& list) {
  os << "degree " << list.degree << '\n';
  for (const auto& g : list.generators) os << format_cycles(g) << '\n';
}

}  // namespace pg
