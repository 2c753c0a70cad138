#include "powergenus/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "powergenus/error.hpp"
#include "powergenus/group_io.hpp"
#include "powergenus/isomorphism.hpp"

namespace pg {

namespace {

// auto:k indexes automorphisms(N) in its fixed enumeration order (the
// smallest matching k); the comment above each such entry names the action.
constexpr const char* kBuiltinCatalog = R"(# label | recipe | order | spectrum | tags
# Orders 8 and 16: every group, GAP numbering.
[8,1] | cyclic(8) | 8 | {1:1,2:1,4:2,8:4} | curated table1
[8,2] | direct(cyclic(4),cyclic(2)) | 8 | {1:1,2:3,4:4} | curated
[8,3] | dihedral(8) | 8 | {1:1,2:5,4:2} | curated
[8,4] | dicyclic(2) | 8 | {1:1,2:1,4:6} | curated
[8,5] | direct(direct(cyclic(2),cyclic(2)),cyclic(2)) | 8 | {1:1,2:7} | curated
[16,1] | cyclic(16) | 16 | {1:1,2:1,4:2,8:4,16:8} | curated
[16,2] | direct(cyclic(4),cyclic(4)) | 16 | {1:1,2:3,4:12} | curated
# (Z4 x Z2) : Z2 with a -> ab, b -> b
[16,3] | semidirect(direct(cyclic(4),cyclic(2)),cyclic(2),auto:1) | 16 | {1:1,2:7,4:8} | curated
[16,4] | semidirect(cyclic(4),cyclic(4),inv) | 16 | {1:1,2:3,4:12} | curated
[16,5] | direct(cyclic(8),cyclic(2)) | 16 | {1:1,2:3,4:4,8:8} | curated
[16,6] | semidirect(cyclic(8),cyclic(2),pow:5) | 16 | {1:1,2:3,4:4,8:8} | curated
[16,7] | dihedral(16) | 16 | {1:1,2:9,4:2,8:4} | curated table1
[16,8] | semidihedral(16) | 16 | {1:1,2:5,4:6,8:4} | curated table1
[16,9] | dicyclic(4) | 16 | {1:1,2:1,4:10,8:4} | curated table1
[16,10] | direct(direct(cyclic(4),cyclic(2)),cyclic(2)) | 16 | {1:1,2:7,4:8} | curated
[16,11] | direct(cyclic(2),dihedral(8)) | 16 | {1:1,2:11,4:4} | curated
[16,12] | direct(cyclic(2),dicyclic(2)) | 16 | {1:1,2:3,4:12} | curated
# Pauli group: (Z4 x Z2) : Z2 with a -> a, b -> a^2 b
[16,13] | semidirect(direct(cyclic(4),cyclic(2)),cyclic(2),auto:4) | 16 | {1:1,2:7,4:8} | curated
[16,14] | direct(direct(direct(cyclic(2),cyclic(2)),cyclic(2)),cyclic(2)) | 16 | {1:1,2:15} | curated
# Orders 12, 18, 36: complete classifications.
[12,1] | dicyclic(3) | 12 | {1:1,2:1,3:2,4:6,6:2} | order12-complete
[12,2] | cyclic(12) | 12 | {1:1,2:1,3:2,4:2,6:2,12:4} | order12-complete
[12,3] | alt(4) | 12 | {1:1,2:3,3:8} | order12-complete
[12,4] | dihedral(12) | 12 | {1:1,2:7,3:2,6:2} | order12-complete
[12,5] | direct(cyclic(2),cyclic(6)) | 12 | {1:1,2:3,3:2,6:6} | order12-complete table1 table2
[18,1] | dihedral(18) | 18 | {1:1,2:9,3:2,9:6} | order18-complete
[18,2] | cyclic(18) | 18 | {1:1,2:1,3:2,6:2,9:6,18:6} | order18-complete
[18,3] | direct(cyclic(3),sym(3)) | 18 | {1:1,2:3,3:8,6:6} | order18-complete table1 table2
[18,4] | semidirect(direct(cyclic(3),cyclic(3)),cyclic(2),inv) | 18 | {1:1,2:9,3:8} | order18-complete
[18,5] | direct(cyclic(6),cyclic(3)) | 18 | {1:1,2:1,3:8,6:8} | order18-complete
[36,1] | dicyclic(9) | 36 | {1:1,2:1,3:2,4:18,6:2,9:6,18:6} | order36-complete
[36,2] | cyclic(36) | 36 | {1:1,2:1,3:2,4:2,6:2,9:6,12:4,18:6,36:12} | order36-complete
# (Z2 x Z2) : Z9, the generator of Z9 cycling the involutions
[36,3] | semidirect(direct(cyclic(2),cyclic(2)),cyclic(9),auto:3) | 36 | {1:1,2:3,3:2,6:6,9:24} | order36-complete
[36,4] | dihedral(36) | 36 | {1:1,2:19,3:2,6:2,9:6,18:6} | order36-complete
[36,5] | direct(cyclic(18),cyclic(2)) | 36 | {1:1,2:3,3:2,6:6,9:6,18:18} | order36-complete
[36,6] | direct(cyclic(3),dicyclic(3)) | 36 | {1:1,2:1,3:8,4:6,6:8,12:12} | order36-complete
[36,7] | semidirect(direct(cyclic(3),cyclic(3)),cyclic(4),inv) | 36 | {1:1,2:1,3:8,4:18,6:8} | order36-complete
[36,8] | direct(cyclic(12),cyclic(3)) | 36 | {1:1,2:1,3:8,4:2,6:8,12:16} | order36-complete
# (Z3 x Z3) : Z4, faithful: (x, y) -> (y, -x)
[36,9] | semidirect(direct(cyclic(3),cyclic(3)),cyclic(4),auto:13) | 36 | {1:1,2:9,3:8,4:18} | order36-complete
[36,10] | direct(sym(3),sym(3)) | 36 | {1:1,2:15,3:8,6:12} | order36-complete
[36,11] | direct(cyclic(3),alt(4)) | 36 | {1:1,2:3,3:26,6:6} | order36-complete table1 table2
[36,12] | direct(cyclic(6),sym(3)) | 36 | {1:1,2:7,3:8,6:20} | order36-complete
[36,13] | direct(cyclic(2),[18,4]) | 36 | {1:1,2:19,3:8,6:8} | order36-complete
[36,14] | direct(cyclic(6),cyclic(6)) | 36 | {1:1,2:3,3:8,6:24} | order36-complete
# Order 24: every group, GAP numbering.
[24,1] | semidirect(cyclic(3),cyclic(8),inv) | 24 | {1:1,2:1,3:2,4:2,6:2,8:12,12:4} | curated
[24,2] | cyclic(24) | 24 | {1:1,2:1,3:2,4:2,6:2,8:4,12:4,24:8} | curated
# SL(2,3) on the nonzero vectors of F3^2
[24,3] | perms(8:(0 3 6)(1 7 4);(2 3 4)(5 7 6)) | 24 | {1:1,2:1,3:8,4:6,6:8} | curated
[24,4] | dicyclic(6) | 24 | {1:1,2:1,3:2,4:14,6:2,12:4} | curated
[24,5] | direct(cyclic(4),sym(3)) | 24 | {1:1,2:7,3:2,4:8,6:2,12:4} | curated
[24,6] | dihedral(24) | 24 | {1:1,2:13,3:2,4:2,6:2,12:4} | curated
[24,7] | direct(cyclic(2),semidirect(cyclic(3),cyclic(4),inv)) | 24 | {1:1,2:3,3:2,4:12,6:6} | curated table1 table2
# (Z6 x Z2) : Z2, the candidate action with an element of order 4
[24,8] | semidirect(direct(cyclic(6),cyclic(2)),cyclic(2),auto:7) | 24 | {1:1,2:9,3:2,4:6,6:6} | curated table1 table2
[24,9] | direct(cyclic(12),cyclic(2)) | 24 | {1:1,2:3,3:2,4:4,6:6,12:8} | curated
[24,10] | direct(cyclic(3),dihedral(8)) | 24 | {1:1,2:5,3:2,4:2,6:10,12:4} | curated
[24,11] | direct(cyclic(3),dicyclic(2)) | 24 | {1:1,2:1,3:2,4:6,6:2,12:12} | curated
[24,12] | sym(4) | 24 | {1:1,2:9,3:8,4:6} | curated
[24,13] | direct(cyclic(2),alt(4)) | 24 | {1:1,2:7,3:8,6:8} | curated
[24,14] | direct(direct(cyclic(2),cyclic(2)),sym(3)) | 24 | {1:1,2:15,3:2,6:6} | curated table1 table2
[24,15] | direct(direct(cyclic(6),cyclic(2)),cyclic(2)) | 24 | {1:1,2:7,3:2,6:14} | curated
# (Z3 x A4) : Z2, the action meeting the three-hexagon conditions
[72,43] | semidirect(direct(cyclic(3),alt(4)),cyclic(2),auto:85) | 72 | {1:1,2:21,3:26,4:18,6:6} | curated table1 table2
# Further small groups exercising each branch of the classification.
trivial | cyclic(1) | 1 | {1:1} | no-gap-id
Z2 | cyclic(2) | 2 | {1:1,2:1} | no-gap-id
Z3 | cyclic(3) | 3 | {1:1,3:2} | no-gap-id
Z4 | cyclic(4) | 4 | {1:1,2:1,4:2} | no-gap-id
Z2xZ2 | direct(cyclic(2),cyclic(2)) | 4 | {1:1,2:3} | no-gap-id
Z5 | cyclic(5) | 5 | {1:1,5:4} | no-gap-id
S3 | sym(3) | 6 | {1:1,2:3,3:2} | no-gap-id
Z6 | cyclic(6) | 6 | {1:1,2:1,3:2,6:2} | no-gap-id
Z7 | cyclic(7) | 7 | {1:1,7:6} | no-gap-id
Z9 | cyclic(9) | 9 | {1:1,3:2,9:6} | no-gap-id
Z3xZ3 | direct(cyclic(3),cyclic(3)) | 9 | {1:1,3:8} | no-gap-id
D10 | dihedral(10) | 10 | {1:1,2:5,5:4} | no-gap-id
Z10 | cyclic(10) | 10 | {1:1,2:1,5:4,10:4} | no-gap-id
D14 | dihedral(14) | 14 | {1:1,2:7,7:6} | no-gap-id
Z5:Z4 | semidirect(cyclic(5),cyclic(4),pow:2) | 20 | {1:1,2:5,4:10,5:4} | no-gap-id
Z7:Z3 | semidirect(cyclic(7),cyclic(3),pow:2) | 21 | {1:1,3:14,7:6} | no-gap-id
Z5xZ5 | direct(cyclic(5),cyclic(5)) | 25 | {1:1,5:24} | no-gap-id
Q32 | dicyclic(8) | 32 | {1:1,2:1,4:18,8:4,16:8} | no-gap-id
Z2xQ16 | direct(cyclic(2),dicyclic(4)) | 32 | {1:1,2:3,4:20,8:8} | no-gap-id
Z7:Z6 | semidirect(cyclic(7),cyclic(6),pow:3) | 42 | {1:1,2:7,3:14,6:14,7:6} | no-gap-id
A5 | alt(5) | 60 | {1:1,2:15,3:20,5:24} | no-gap-id
)";

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// Recipe parser

class RecipeParser {
 public:
  RecipeParser(const std::string& text, const Catalog* catalog, int depth)
      : s_(text), catalog_(catalog), depth_(depth) {}

  FiniteGroup parse_all() {
    FiniteGroup g = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("recipe '" + s_ + "' at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(b, pos_ - b);
  }
  long long integer() {
    skip();
    std::size_t b = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_ || (pos_ == b + 1 && s_[b] == '-')) fail("expected an integer");
    return std::stoll(s_.substr(b, pos_ - b));
  }
  std::size_t positive() {
    long long v = integer();
    if (v < 1) fail("expected a positive integer");
    return static_cast<std::size_t>(v);
  }

  FiniteGroup expr() {
    skip();
    if (accept('[')) {
      std::size_t b = pos_ - 1;
      positive();
      expect(',');
      positive();
      expect(']');
      std::string label = s_.substr(b, pos_ - b);
      label.erase(std::remove_if(label.begin(), label.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                  label.end());
      if (!catalog_) throw UnknownLabel(label + " (no catalog to resolve it)");
      if (depth_ > 8) fail("label references nest too deeply");
      const CatalogEntry& e = catalog_->entry(label);
      return RecipeParser(e.recipe, catalog_, depth_ + 1).parse_all().relabeled(label);
    }
    std::string name = word();
    if (name.empty()) fail("expected a constructor name or [n,m]");
    expect('(');
    FiniteGroup out = [&]() -> FiniteGroup {
      if (name == "cyclic") return named(Family::cyclic, positive());
      if (name == "dihedral") return named(Family::dihedral, positive());
      if (name == "dicyclic") return named(Family::dicyclic, positive());
      if (name == "semidihedral") return named(Family::semidihedral, positive());
      if (name == "sym") return named(Family::symmetric, positive());
      if (name == "alt") return named(Family::alternating, positive());
      if (name == "direct") {
        FiniteGroup a = expr();
        expect(',');
        FiniteGroup b = expr();
        return direct_product(a, b);
      }
      if (name == "semidirect") {
        FiniteGroup n = expr();
        expect(',');
        FiniteGroup h = expr();
        expect(',');
        return semidirect(n, h);
      }
      if (name == "perms") return perms();
      fail("unknown constructor '" + name + "'");
    }();
    expect(')');
    return out;
  }

  FiniteGroup perms() {
    std::size_t degree = positive();
    expect(':');
    std::vector<Permutation> gens;
    do {
      skip();
      std::size_t b = pos_;
      while (pos_ < s_.size() && s_[pos_] != ';' && s_[pos_] != ')') {
        if (s_[pos_] == '(') {
          while (pos_ < s_.size() && s_[pos_] != ')') ++pos_;
          if (pos_ == s_.size()) fail("unterminated cycle");
        }
        ++pos_;
      }
      gens.push_back(parse_cycles(s_.substr(b, pos_ - b), degree));
    } while (accept(';'));
    return from_generators(degree, gens);
  }

  FiniteGroup semidirect(const FiniteGroup& n, const FiniteGroup& h) {
    std::string action = word();
    std::vector<Element> alpha(n.order());
    if (action == "triv") {
      std::vector<std::vector<Element>> maps(h.order());
      for (auto& m : maps)
        for (Element x = 0; x < n.order(); ++x) m.push_back(x);
      return semidirect_product(n, h, maps);
    }
    if (action == "inv" || action == "pow") {
      long long k = -1;
      if (action == "pow") {
        expect(':');
        k = integer();
      }
      if (!is_abelian(n)) throw InvalidParameter("power maps need an abelian N");
      for (Element x = 0; x < n.order(); ++x) alpha[x] = n.pow(x, k);
    } else if (action == "auto") {
      expect(':');
      long long k = integer();
      auto autos = automorphisms(n);
      if (k < 0 || static_cast<std::size_t>(k) >= autos.size())
        throw InvalidParameter("auto:" + std::to_string(k) + " out of range; N has " +
                               std::to_string(autos.size()) + " automorphisms");
      alpha = autos[static_cast<std::size_t>(k)];
    } else {
      fail("unknown action '" + action + "'");
    }

    // Generator of H: smallest index of order |H|.
    Element gen = 0;
    bool cyclic = h.order() == 1;
    for (Element x = 0; x < h.order() && !cyclic; ++x)
      if (element_order(h, x) == h.order()) {
        gen = x;
        cyclic = true;
      }
    if (!cyclic) throw InvalidParameter("a non-trivial action needs a cyclic H");
    std::vector<std::vector<Element>> maps(h.order());
    std::vector<Element> current(n.order());
    for (Element x = 0; x < n.order(); ++x) current[x] = x;
    Element hp = 0;
    for (std::size_t j = 0; j < h.order(); ++j) {
      maps[hp] = current;
      for (Element x = 0; x < n.order(); ++x) current[x] = alpha[current[x]];
      hp = h.mul(hp, gen);
    }
    return semidirect_product(n, h, maps);
  }

  std::string s_;
  const Catalog* catalog_;
  int depth_;
  std::size_t pos_ = 0;
};

}  // namespace

FiniteGroup build_recipe(const std::string& recipe, const Catalog* catalog) {
  return RecipeParser(recipe, catalog, 0).parse_all();
}

const std::vector<std::string>& table1_labels() {
  static const std::vector<std::string> v = {"[8,1]",  "[12,5]", "[16,7]",  "[16,8]",
                                             "[16,9]", "[18,3]", "[24,7]",  "[24,8]",
                                             "[24,14]", "[36,11]", "[72,43]"};
  return v;
}

const std::vector<std::string>& table2_labels() {
  static const std::vector<std::string> v = {"[12,5]",  "[18,3]",  "[24,7]", "[24,8]",
                                             "[24,14]", "[36,11]", "[72,43]"};
  return v;
}

// ---------------------------------------------------------------------------
// Catalog

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].label, i).second)
      throw ParseError("duplicate catalog label " + entries_[i].label);
  }
}

Catalog& Catalog::operator=(const Catalog& other) {
  if (this != &other) {
    Catalog tmp(other.entries_);
    std::lock_guard lock(cache_mutex_);
    entries_ = std::move(tmp.entries_);
    index_ = std::move(tmp.index_);
    cache_.clear();
  }
  return *this;
}

const Catalog& Catalog::builtin() {
  static const Catalog c = [] {
    std::istringstream is(kBuiltinCatalog);
    return parse(is);
  }();
  return c;
}

Catalog Catalog::parse(std::istream& is) {
  std::vector<CatalogEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::size_t b = 0;
    for (std::size_t p; (p = line.find('|', b)) != std::string::npos; b = p + 1)
      fields.push_back(trim(line.substr(b, p - b)));
    fields.push_back(trim(line.substr(b)));
    if (fields.size() != 5)
      throw ParseError("catalog line " + std::to_string(lineno) + ": expected 5 '|' fields");
    CatalogEntry e;
    e.label = fields[0];
    e.recipe = fields[1];
    try {
      e.expected_order = std::stoul(fields[2]);
    } catch (const std::exception&) {
      throw ParseError("catalog line " + std::to_string(lineno) + ": bad order");
    }
    e.expected_spectrum = OrderSpectrum::parse(fields[3]);
    std::istringstream ts(fields[4]);
    std::string tag;
    while (ts >> tag) e.tags.insert(tag);
    if (e.label.empty() || e.recipe.empty())
      throw ParseError("catalog line " + std::to_string(lineno) + ": empty label or recipe");
    entries.push_back(std::move(e));
  }
  return Catalog(std::move(entries));
}

Catalog Catalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog file " + path);
  return parse(in);
}

void Catalog::dump(std::ostream& os) const {
  os << "# label | recipe | order | spectrum | tags\n";
  for (const auto& e : entries_) {
    os << e.label << " | " << e.recipe << " | " << e.expected_order << " | "
       << e.expected_spectrum.to_string() << " |";
    for (const auto& t : e.tags) os << ' ' << t;
    os << '\n';
  }
}

const CatalogEntry& Catalog::entry(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw UnknownLabel(label);
  return entries_[it->second];
}

FiniteGroup Catalog::get(const std::string& label) const {
  const CatalogEntry& e = entry(label);
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(label);
    if (it != cache_.end()) return *it->second;
  }
  FiniteGroup g = [&] {
    try {
      return build_recipe(e.recipe, this).relabeled(label);
    } catch (const UnknownLabel&) {
      throw;
    } catch (const Error& err) {
      throw ValidationFailed(label + ": construction failed: " + err.what());
    }
  }();
  if (g.order() != e.expected_order)
    throw ValidationFailed(label + ": order " + std::to_string(g.order()) + ", expected " +
                           std::to_string(e.expected_order));
  auto spec = order_spectrum(g);
  if (spec != e.expected_spectrum)
    throw ValidationFailed(label + ": spectrum " + spec.to_string() + ", expected " +
                           e.expected_spectrum.to_string());
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(label, std::make_shared<const FiniteGroup>(g));
  return g;
}

std::vector<CatalogEntry> Catalog::enumerate_complete(std::size_t order) const {
  if (order != 12 && order != 18 && order != 36)
    throw UnsupportedOrder("complete enumerations exist for orders 12, 18 and 36 only, not " +
                           std::to_string(order));
  return with_tag("order" + std::to_string(order) + "-complete");
}

std::vector<CatalogEntry> Catalog::with_tag(const std::string& tag) const {
  std::vector<CatalogEntry> out;
  for (const auto& e : entries_)
    if (e.has_tag(tag)) out.push_back(e);
  return out;
}

ValidationReport Catalog::validate_all() const {
  ValidationReport rep;
  std::map<std::string, FiniteGroup> built;
  for (const auto& e : entries_) {
    ++rep.entries_checked;
    try {
      FiniteGroup g = build_recipe(e.recipe, this).relabeled(e.label);
      if (g.order() != e.expected_order) {
        rep.failures.push_back({e.label, "order",
                                "built " + std::to_string(g.order()) + ", expected " +
                                    std::to_string(e.expected_order)});
        continue;
      }
      auto spec = order_spectrum(g);
      if (spec != e.expected_spectrum) {
        rep.failures.push_back({e.label, "spectrum",
                                "built " + spec.to_string() + ", expected " +
                                    e.expected_spectrum.to_string()});
        continue;
      }
      built.emplace(e.label, std::move(g));
    } catch (const Error& err) {
      rep.failures.push_back({e.label, "construction", err.what()});
    }
  }

  // Sets that must be pairwise non-isomorphic, with their expected sizes.
  struct Slice {
    std::string name;
    std::vector<std::string> labels;
    std::size_t expected;
  };
  std::vector<Slice> slices = {{"order12-complete", {}, 5},
                               {"order18-complete", {}, 5},
                               {"order36-complete", {}, 14}};
  for (std::size_t order : {8, 16, 24}) {
    Slice s{"curated order " + std::to_string(order), {}, 0};
    for (const auto& e : entries_)
      if (e.has_tag("curated") && e.expected_order == order) s.labels.push_back(e.label);
    s.expected = s.labels.size();
    slices.push_back(std::move(s));
  }
  for (auto& s : slices) {
    if (s.labels.empty())
      for (const auto& e : entries_)
        if (e.has_tag(s.name)) s.labels.push_back(e.label);
    if (s.labels.size() != s.expected)
      rep.failures.push_back({s.name, "count",
                              std::to_string(s.labels.size()) + " entries, expected " +
                                  std::to_string(s.expected)});
    for (std::size_t i = 0; i < s.labels.size(); ++i)
      for (std::size_t j = i + 1; j < s.labels.size(); ++j) {
        auto a = built.find(s.labels[i]), b = built.find(s.labels[j]);
        if (a == built.end() || b == built.end()) continue;
        if (is_isomorphic(a->second, b->second))
          rep.failures.push_back({s.name, "isomorphic-pair", s.labels[i] + " ~ " + s.labels[j]});
      }
  }

  auto tagged = [&](const std::string& tag) {
    std::vector<std::string> v;
    for (const auto& e : entries_)
      if (e.has_tag(tag)) v.push_back(e.label);
    std::sort(v.begin(), v.end());
    return v;
  };
  for (const auto& [tag, want] : {std::pair{std::string("table1"), table1_labels()},
                                  std::pair{std::string("table2"), table2_labels()}}) {
    auto sorted = want;
    std::sort(sorted.begin(), sorted.end());
    if (tagged(tag) != sorted)
      rep.failures.push_back({tag, "tag-set",
                              std::to_string(tagged(tag).size()) + " tagged entries, expected " +
                                  std::to_string(sorted.size())});
  }
  return rep;
}

}  // namespace pg
