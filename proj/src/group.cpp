#include "powergenus/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "powergenus/error.hpp"

namespace pg {

namespace {

// Full O(n^3) associativity sweeps are run up to this order; larger groups
// only arise from permutation closures, where associativity is inherited.
constexpr std::size_t kAssociativitySweepLimit = 256;

}  // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Element> table, std::string label)
    : order_(order), table_(std::move(table)), label_(std::move(label)) {
  check_axioms();
}

void FiniteGroup::check_axioms() {
  const std::size_t n = order_;
  if (n == 0) throw InvalidGroup("order must be positive");
  if (table_.size() != n * n) throw InvalidGroup("table size is not order^2");
  for (Element v : table_)
    if (v >= n) throw InvalidGroup("table entry out of range");

  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x)
      ok = table_[e * n + x] == x && table_[x * n + e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw InvalidGroup("no two-sided identity");

  if (*identity != 0) {
    // Swap indices 0 and identity everywhere.
    const Element id = *identity;
    auto swap_idx = [id](Element v) -> Element { return v == 0 ? id : (v == id ? 0 : v); };
    std::vector<Element> t(n * n);
    for (Element i = 0; i < n; ++i)
      for (Element j = 0; j < n; ++j)
        t[swap_idx(i) * n + swap_idx(j)] = swap_idx(table_[i * n + j]);
    table_ = std::move(t);
  }

  inverse_.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    bool found = false;
    for (Element y = 0; y < n; ++y) {
      if (table_[x * n + y] == 0) {
        if (table_[y * n + x] != 0) throw InvalidGroup("inverse is not two-sided");
        inverse_[x] = y;
        found = true;
        break;
      }
    }
    if (!found) throw InvalidGroup("element without inverse");
  }

  if (n <= kAssociativitySweepLimit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Element ab = table_[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
            throw InvalidGroup("associativity fails");
      }
  } else {
    // Latin-square property still has to hold.
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<bool> seen(n, false);
      for (std::size_t b = 0; b < n; ++b) {
        Element v = table_[a * n + b];
        if (seen[v]) throw InvalidGroup("row is not a permutation");
        seen[v] = true;
      }
    }
  }
}

Element FiniteGroup::pow(Element a, long long k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  Element result = 0;
  Element base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

FiniteGroup FiniteGroup::relabeled(std::string label) const {
  FiniteGroup g = *this;
  g.label_ = std::move(label);
  return g;
}

bool ElementSet::contains(Element x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

ElementSet make_element_set(const FiniteGroup& g, std::vector<Element> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && members.back() >= g.order())
    throw InvalidParameter("element index out of range");
  return ElementSet{&g, std::move(members)};
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out{a.parent, {}};
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                 std::back_inserter(out.members));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out{a.parent, {}};
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out.members));
  return out;
}

std::set<std::size_t> OrderSpectrum::orders() const {
  std::set<std::size_t> out;
  for (const auto& [k, _] : multiplicities) out.insert(k);
  return out;
}

bool OrderSpectrum::subset_of(std::initializer_list<std::size_t> allowed) const {
  for (const auto& [k, _] : multiplicities)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) return false;
  return true;
}

std::size_t OrderSpectrum::total() const {
  std::size_t t = 0;
  for (const auto& [_, m] : multiplicities) t += m;
  return t;
}

std::string OrderSpectrum::set_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, _] : multiplicities) {
    if (!first) os << ',';
    os << k;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string OrderSpectrum::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, m] : multiplicities) {
    if (!first) os << ',';
    os << k << ':' << m;
    first = false;
  }
  os << '}';
  return os.str();
}

OrderSpectrum OrderSpectrum::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw ParseError("spectrum must be enclosed in braces: " + text);
  s = s.substr(1, s.size() - 2);
  OrderSpectrum out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        out.multiplicities[std::stoul(item)] = 0;
      } else {
        out.multiplicities[std::stoul(item.substr(0, colon))] =
            std::stoul(item.substr(colon + 1));
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad spectrum item '" + item + "'");
    }
  }
  return out;
}

std::string SixProfile::to_string() const {
  std::ostringstream os;
  os << '(' << count;
  if (!pairwise_intersections.empty()) {
    os << ';';
    for (std::size_t i = 0; i < pairwise_intersections.size(); ++i)
      os << (i ? "," : " ") << pairwise_intersections[i];
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Construction

namespace {

std::string family_label(Family f, std::size_t p) {
  switch (f) {
    case Family::cyclic: return "Z" + std::to_string(p);
    case Family::dihedral: return "D" + std::to_string(p);
    case Family::dicyclic: {
      std::size_t n = p;
      bool pow2 = n >= 2 && (n & (n - 1)) == 0;
      return pow2 ? "Q" + std::to_string(4 * n) : "Dic" + std::to_string(n);
    }
    case Family::semidihedral: return "QD" + std::to_string(p);
    case Family::symmetric: return "S" + std::to_string(p);
    case Family::alternating: return "A" + std::to_string(p);
  }
  return "?";
}

// <a, b | a^n = 1, b^2 = 1, b a b = a^t>; element a^k b^e at index k + n*e.
FiniteGroup metacyclic_involution(std::size_t n, std::size_t t, std::string label) {
  const std::size_t order = 2 * n;
  std::vector<Element> table(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t k = x % n, e = x / n, m = y % n, f = y / n;
      std::size_t twisted = e ? (m * t) % n : m;
      table[x * order + y] = static_cast<Element>((k + twisted) % n + n * ((e + f) % 2));
    }
  return FiniteGroup(order, std::move(table), std::move(label));
}

}  // namespace

FiniteGroup from_generators(std::size_t degree, const std::vector<Permutation>& generators,
                            std::size_t cap, std::string label) {
  if (generators.empty()) throw EmptyGeneratorList("at least one generator is required");
  for (const auto& g : generators) {
    if (g.size() != degree) throw InvalidParameter("generator degree mismatch");
    std::vector<bool> seen(degree, false);
    for (auto v : g) {
      if (v >= degree || seen[v]) throw InvalidParameter("generator is not a permutation");
      seen[v] = true;
    }
  }

  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::map<Permutation, Element> index;
  std::vector<Permutation> elems{id};
  std::vector<Element> parent{0};
  std::vector<std::size_t> via{0};
  index.emplace(id, 0);
  const std::size_t ngen = generators.size();
  std::vector<Element> right;  // right[x * ngen + i] = x * gen_i

  for (std::size_t x = 0; x < elems.size(); ++x) {
    for (std::size_t i = 0; i < ngen; ++i) {
      Permutation p(degree);
      for (std::size_t k = 0; k < degree; ++k) p[k] = generators[i][elems[x][k]];
      auto [it, inserted] = index.emplace(p, static_cast<Element>(elems.size()));
      if (inserted) {
        if (elems.size() >= cap)
          throw ClosureCapExceeded("closure exceeds " + std::to_string(cap) + " elements");
        elems.push_back(std::move(p));
        parent.push_back(static_cast<Element>(x));
        via.push_back(i);
      }
      right.push_back(it->second);
    }
  }

  const std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    table[i * n] = static_cast<Element>(i);
    for (std::size_t j = 1; j < n; ++j)
      table[i * n + j] = right[table[i * n + parent[j]] * ngen + via[j]];
  }
  return FiniteGroup(n, std::move(table), std::move(label));
}

FiniteGroup named(Family family, std::size_t p) {
  const std::string label = family_label(family, p);
  switch (family) {
    case Family::cyclic: {
      if (p < 1) throw InvalidParameter("cyclic order must be >= 1");
      std::vector<Element> t(p * p);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) t[i * p + j] = static_cast<Element>((i + j) % p);
      return FiniteGroup(p, std::move(t), label);
    }
    case Family::dihedral: {
      if (p < 2 || p % 2) throw InvalidParameter("dihedral order must be even and >= 2");
      const std::size_t n = p / 2;
      return metacyclic_involution(n, n - 1 == 0 ? 0 : n - 1, label);
    }
    case Family::dicyclic: {
      if (p < 2) throw InvalidParameter("dicyclic parameter must be >= 2");
      // a^k at k, a^k x at 2n + k; a^{2n} = 1, x^2 = a^n, x a x^-1 = a^-1.
      const std::size_t m = 2 * p, order = 4 * p;
      std::vector<Element> t(order * order);
      for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y) {
          std::size_t k = x % m, e = x / m, j = y % m, f = y / m;
          std::size_t r;
          if (!e && !f) r = (k + j) % m;
          else if (!e && f) r = m + (k + j) % m;
          else if (e && !f) r = m + (k + m - j) % m;
          else r = (k + m - j + p) % m;
          t[x * order + y] = static_cast<Element>(r);
        }
      return FiniteGroup(order, std::move(t), label);
    }
    case Family::semidihedral: {
      if (p < 16 || (p & (p - 1)) != 0)
        throw InvalidParameter("semidihedral order must be a power of two >= 16");
      const std::size_t n = p / 2;
      return metacyclic_involution(n, n / 2 - 1, label);
    }
    case Family::symmetric: {
      if (p < 1) throw InvalidParameter("symmetric degree must be >= 1");
      if (p == 1) return named(Family::cyclic, 1).relabeled(label);
      Permutation cycle(p), swap(p);
      for (std::size_t i = 0; i < p; ++i) {
        cycle[i] = static_cast<std::uint32_t>((i + 1) % p);
        swap[i] = static_cast<std::uint32_t>(i);
      }
      std::swap(swap[0], swap[1]);
      return from_generators(p, {cycle, swap}, kDefaultClosureCap, label);
    }
    case Family::alternating: {
      if (p < 1) throw InvalidParameter("alternating degree must be >= 1");
      if (p < 3) return named(Family::cyclic, 1).relabeled(label);
      std::vector<Permutation> gens;
      for (std::size_t k = 2; k < p; ++k) {
        Permutation c(p);
        std::iota(c.begin(), c.end(), 0u);
        c[0] = 1;
        c[1] = static_cast<std::uint32_t>(k);
        c[k] = 0;
        gens.push_back(std::move(c));
      }
      return from_generators(p, gens, kDefaultClosureCap, label);
    }
  }
  throw InvalidParameter("unknown family");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Element pa = a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
      Element pb = b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      t[x * n + y] = static_cast<Element>(pa * nb + pb);
    }
  return FiniteGroup(n, std::move(t), a.label() + "x" + b.label());
}

FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                               const std::vector<std::vector<Element>>& action) {
  const std::size_t nn = n.order(), nh = h.order();
  if (action.size() != nh) throw NotAHomomorphism("action must list one map per element of H");
  for (std::size_t i = 0; i < nh; ++i) {
    const auto& phi = action[i];
    if (phi.size() != nn) throw NotAnAutomorphism("map has wrong size");
    std::vector<bool> seen(nn, false);
    for (Element v : phi) {
      if (v >= nn || seen[v]) throw NotAnAutomorphism("map is not a bijection");
      seen[v] = true;
    }
    for (Element x = 0; x < nn; ++x)
      for (Element y = 0; y < nn; ++y)
        if (phi[n.mul(x, y)] != n.mul(phi[x], phi[y]))
          throw NotAnAutomorphism("map does not respect multiplication");
  }
  for (Element a = 0; a < nh; ++a)
    for (Element b = 0; b < nh; ++b) {
      const auto& ab = action[h.mul(a, b)];
      for (Element x = 0; x < nn; ++x)
        if (ab[x] != action[a][action[b][x]])
          throw NotAHomomorphism("action(h1*h2) != action(h1) o action(h2)");
    }

  const std::size_t order = nn * nh;
  std::vector<Element> t(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      Element n1 = static_cast<Element>(x % nn), h1 = static_cast<Element>(x / nn);
      Element n2 = static_cast<Element>(y % nn), h2 = static_cast<Element>(y / nn);
      Element nr = n.mul(n1, action[h1][n2]);
      Element hr = h.mul(h1, h2);
      t[x * order + y] = static_cast<Element>(nr + nn * hr);
    }
  return FiniteGroup(order, std::move(t), "(" + n.label() + "):" + h.label());
}

// ---------------------------------------------------------------------------
// Element arithmetic

std::size_t element_order(const FiniteGroup& g, Element x) {
  std::size_t k = 1;
  Element y = x;
  while (y != g.identity()) {
    y = g.mul(y, x);
    ++k;
  }
  return k;
}

std::vector<std::size_t> element_orders(const FiniteGroup& g) {
  std::vector<std::size_t> out(g.order());
  for (Element x = 0; x < g.order(); ++x) out[x] = element_order(g, x);
  return out;
}

OrderSpectrum order_spectrum(const FiniteGroup& g) {
  OrderSpectrum s;
  for (Element x = 0; x < g.order(); ++x) ++s.multiplicities[element_order(g, x)];
  return s;
}

OrderSpectrum order_spectrum(const FiniteGroup& g, const std::vector<Element>& subset) {
  OrderSpectrum s;
  for (Element x : subset) ++s.multiplicities[element_order(g, x)];
  return s;
}

std::size_t euler_phi(std::size_t n) {
  std::size_t result = n;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subgroups

ElementSet cyclic_subgroup(const FiniteGroup& g, Element x) {
  std::vector<Element> m{g.identity()};
  for (Element y = x; y != g.identity(); y = g.mul(y, x)) m.push_back(y);
  return make_element_set(g, std::move(m));
}

ElementSet generated_subgroup(const FiniteGroup& g, const std::vector<Element>& generators) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> members{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element s : generators) {
      Element y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  return make_element_set(g, std::move(members));
}

bool is_subgroup(const FiniteGroup& g, const std::vector<Element>& members) {
  if (members.empty()) return false;
  std::vector<bool> in(g.order(), false);
  for (Element x : members) in[x] = true;
  if (!in[g.identity()]) return false;
  for (Element a : members)
    for (Element b : members)
      if (!in[g.mul(a, g.inverse(b))]) return false;
  return true;
}

std::vector<ElementSet> cyclic_subgroups_of_order(const FiniteGroup& g, std::size_t k) {
  std::vector<ElementSet> out;
  std::vector<bool> covered(g.order(), false);
  for (Element x = 0; x < g.order(); ++x) {
    if (covered[x] || element_order(g, x) != k) continue;
    ElementSet c = cyclic_subgroup(g, x);
    for (Element y : c.members)
      if (element_order(g, y) == k) covered[y] = true;
    out.push_back(std::move(c));
  }
  return out;
}

SixProfile six_profile(const FiniteGroup& g) {
  SixProfile p;
  auto subs = cyclic_subgroups_of_order(g, 6);
  p.count = subs.size();
  if (subs.empty()) return p;
  ElementSet common = subs.front();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    common = set_intersection(common, subs[i]);
    for (std::size_t j = i + 1; j < subs.size(); ++j)
      p.pairwise_intersections.push_back(set_intersection(subs[i], subs[j]).size());
  }
  std::sort(p.pairwise_intersections.begin(), p.pairwise_intersections.end());
  p.common_intersection_order = common.size();
  return p;
}

ElementSet centralizer(const FiniteGroup& g, Element x) {
  std::vector<Element> m;
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) m.push_back(y);
  return make_element_set(g, std::move(m));
}

ElementSet center(const FiniteGroup& g) {
  std::vector<Element> m;
  for (Element y = 0; y < g.order(); ++y) {
    bool central = true;
    for (Element x = 0; x < g.order() && central; ++x) central = g.mul(x, y) == g.mul(y, x);
    if (central) m.push_back(y);
  }
  return make_element_set(g, std::move(m));
}

ElementSet conjugacy_class(const FiniteGroup& g, Element x) {
  std::vector<Element> m;
  for (Element y = 0; y < g.order(); ++y) m.push_back(g.mul(g.mul(g.inverse(y), x), y));
  return make_element_set(g, std::move(m));
}

std::size_t count_involutions(const FiniteGroup& g) {
  std::size_t c = 0;
  for (Element x = 1; x < g.order(); ++x)
    if (g.mul(x, x) == g.identity()) ++c;
  return c;
}

std::size_t count_subgroups_of_prime_order(const FiniteGroup& g, std::size_t p) {
  if (!is_prime(p)) throw PNotPrime(std::to_string(p) + " is not prime");
  std::size_t c = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (element_order(g, x) == p) ++c;
  return c / (p - 1);
}

bool is_abelian(const FiniteGroup& g) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = x + 1; y < g.order(); ++y)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

std::optional<std::size_t> prime_of_p_group(const FiniteGroup& g) {
  std::size_t n = g.order();
  if (n == 1) return std::size_t{1};
  for (std::size_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    if (n == 1) return p;
    return std::nullopt;
  }
  return std::nullopt;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const ElementSet& members,
                              std::string label) {
  if (!is_subgroup(g, members.members)) throw InvalidParameter("set is not a subgroup");
  const std::size_t n = members.size();
  std::vector<Element> pos(g.order(), 0);
  for (std::size_t i = 0; i < n; ++i) pos[members.members[i]] = static_cast<Element>(i);
  std::vector<Element> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[i * n + j] = pos[g.mul(members.members[i], members.members[j])];
  return FiniteGroup(n, std::move(t), std::move(label));
}

}  // namespace pg
