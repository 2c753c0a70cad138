#include "powergenus/classifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include "powergenus/error.hpp"
#include "powergenus/graph.hpp"
#include "powergenus/isomorphism.hpp"
#include "powergenus/topology.hpp"

namespace pg {

std::string to_string(GenusClass c) {
  switch (c) {
    case GenusClass::planar: return "planar";
    case GenusClass::one: return "one";
    case GenusClass::two: return "two";
    case GenusClass::at_least_three: return "at_least_three";
    case GenusClass::other_with_bounds: return "other_with_bounds";
  }
  return "?";
}

std::string to_string(CrosscapClass c) {
  switch (c) {
    case CrosscapClass::planar: return "planar";
    case CrosscapClass::one: return "one";
    case CrosscapClass::not_two: return "not_two";
    case CrosscapClass::exact: return "exact";
  }
  return "?";
}

std::string to_string(RuleStatus s) {
  switch (s) {
    case RuleStatus::pass: return "PASS";
    case RuleStatus::fail: return "FAIL";
    case RuleStatus::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::agree: return "agree";
    case Agreement::consistent_with: return "consistent-with";
    case Agreement::mismatch: return "mismatch";
  }
  return "?";
}

std::string Verdict::category() const {
  if (surface == Surface::orientable) return to_string(orientable);
  if (nonorientable == CrosscapClass::exact) return "exact(" + std::to_string(lower) + ")";
  return to_string(nonorientable);
}

std::string RuleReport::summary() const {
  std::ostringstream os;
  os << to_string(status) << ": " << witnesses.size() << " witnesses in " << scanned << ' '
     << unit << " scanned";
  return os.str();
}

namespace {

std::string surface_name(Surface s) {
  return s == Surface::orientable ? "orientable" : "nonorientable";
}

std::string invariant_name(const Json& in) {
  return in.at("surface").get<std::string>() == "orientable" ? "genus" : "crosscap";
}

OrderSpectrum spectrum_of(const Json& in, const char* key = "spectrum") {
  return OrderSpectrum::parse(in.at(key).get<std::string>());
}

std::size_t count_threes(const Json& in) {
  std::size_t n = 0;
  for (const auto& v : in.at("pairwise")) n += v.get<std::size_t>() == 3;
  return n;
}

// Conclusions are pure functions of the step inputs so that trails replay.
using Conclude = std::function<std::string(const Json&)>;

struct Rule {
  RuleInfo info;
  Conclude conclude;
};

std::string conclude_planarity(const Json& in) {
  return spectrum_of(in).subset_of({1, 2, 3, 4}) ? "planar: element orders within {1,2,3,4}"
                                                 : "nonplanar: an element order lies outside {1,2,3,4}";
}

std::string conclude_cyclic_genus(const Json& in) {
  const auto n = in.at("max_order").get<std::size_t>();
  if (n >= 9) return "genus >= 3 via the cyclic subgroup of order " + std::to_string(n);
  if (n == 8) return "cyclic subgroup of order 8 spans K8 of genus 2";
  return "no cyclic subgroup of order >= 8";
}

std::string conclude_cyclic_crosscap(const Json& in) {
  const auto n = in.at("max_order").get<std::size_t>();
  if (n >= 7) return "crosscap >= 3 via the cyclic subgroup of order " + std::to_string(n);
  return "no cyclic subgroup of order >= 7";
}

std::string conclude_sylow(const Json& in) {
  const auto a = in.at("z5_subgroups").get<std::size_t>();
  const auto b = in.at("z7_subgroups").get<std::size_t>();
  const auto t = a + b;
  if (t >= 3)
    return std::to_string(t) + " K5/K7 blocks at the identity: " + invariant_name(in) + " >= " +
           std::to_string(t);
  if (t == 2) return "contradiction: two subgroups of order 5 or 7 force an element of order >= 10";
  if (t == 1) {
    if (a == 1 && in.at("has_order_six").get<bool>())
      return "contradiction: a normal Z5 and an element of order 6 force an element of order 15";
    return "unique subgroup of order " + std::string(a == 1 ? "5" : "7") + ", normal";
  }
  return "no elements of order 5 or 7";
}

std::optional<std::size_t> single_subgroup_value(std::size_t n, bool orientable) {
  // Gamma of Z_6 contains K5 and embeds in the torus and the projective plane.
  if (n == 6) return 1;
  std::size_t m = n, p = 0;
  for (std::size_t q = 2; q <= m; ++q)
    if (m % q == 0) {
      p = q;
      break;
    }
  while (p && m % p == 0) m /= p;
  if (m != 1) return std::nullopt;
  // Cyclic of prime-power order: the power graph is complete.
  return orientable ? kn_genus(n) : kn_crosscap(n);
}

std::string conclude_reduction(const Json& in) {
  const auto comp = spectrum_of(in, "complement_spectrum");
  if (!comp.subset_of({2, 3, 4})) return "reduction does not apply";
  const auto& orders = in.at("subgroup_orders");
  const std::string inv = invariant_name(in);
  if (orders.empty()) return inv + "(G) = 0: S is trivial";
  if (orders.size() == 1) {
    const auto n = orders[0].get<std::size_t>();
    if (auto v = single_subgroup_value(n, inv == "genus"))
      return inv + "(G) = " + inv + "(Gamma_Z" + std::to_string(n) + ") = " + std::to_string(*v);
    return inv + "(G) = " + inv + "(Gamma_Z" + std::to_string(n) + ")";
  }
  return inv + "(G) = " + inv + "(Gamma_S), S a union of " + std::to_string(orders.size()) +
         " cyclic subgroups";
}

std::string conclude_blocks(const Json& in) {
  std::vector<BlockGenus> blocks;
  for (const auto& b : in.at("blocks"))
    for (std::size_t i = 0; i < b.at("count").get<std::size_t>(); ++i)
      blocks.push_back({b.at("genus").get<std::size_t>(), b.at("crosscap").get<std::size_t>()});
  auto c = compose_blocks(blocks);
  return "blocks compose to genus " + std::to_string(c.orientable) + " and crosscap " +
         std::to_string(c.nonorientable);
}

std::string conclude_octic(const Json& in) {
  const auto k = in.at("z8_subgroups").get<std::size_t>();
  if (k >= 2) return "genus >= 3: two cyclic subgroups of order 8 contain K1+(K7 u K4)";
  if (k == 0) return "no cyclic subgroup of order 8";
  const auto spec = spectrum_of(in);
  if (in.at("prime").get<std::size_t>() == 2 && spec.set_string() == "{1,2,4,8}") {
    const auto label = in.at("label").get<std::string>();
    if (!label.empty()) return "genus 2: 2-group with a unique Z8, isomorphic to " + label;
    return "contradiction: 2-group with a unique Z8 outside the known list";
  }
  return "unique Z8 but not a 2-group with spectrum {1,2,4,8}";
}

std::string conclude_octic_three(const Json& in) {
  const auto spec = spectrum_of(in);
  if (spec.contains(8) && spec.contains(3))
    return "contradiction: <a,g> would have order 24 and spectrum {1,2,3,4,8}";
  return "no element of order 3 next to the unique Z8";
}

std::string conclude_two_hexagons(const Json& in) {
  const auto c = in.at("count").get<std::size_t>();
  if (c == 2) return "contradiction: exactly two cyclic subgroups of order 6";
  return "hexagon count " + std::to_string(c) + " is not 2";
}

std::string conclude_uniform(const Json& in) {
  if (in.at("count").get<std::size_t>() != 3) return "not three hexagons";
  const auto t = count_threes(in);
  if (t == 3) return "all pairwise intersections have order 3";
  if (t == 0) return "no pairwise intersection has order 3";
  return "contradiction: only some pairwise intersections have order 3";
}

std::string conclude_three_genus(const Json& in) {
  if (in.at("count").get<std::size_t>() != 3) return "not three hexagons";
  const auto t = count_threes(in);
  if (t == 3) return "genus 2: three hexagons through one Z3";
  if (t == 0) return "genus >= 3: K1+3K4 subgraph";
  return "mixed intersections";
}

std::string conclude_three_groups(const Json& in) {
  const bool cond = spectrum_of(in).subset_of({1, 2, 3, 4, 6}) &&
                    in.at("count").get<std::size_t>() == 3 && count_threes(in) > 0;
  if (!cond) return "three-hexagon conditions fail";
  const auto label = in.at("label").get<std::string>();
  if (!label.empty()) return "three-hexagon conditions hold: " + label;
  return "contradiction: three-hexagon conditions hold outside the known list";
}

std::string conclude_four_pairing(const Json& in) {
  if (in.at("count").get<std::size_t>() != 4) return "not four hexagons";
  if (in.at("pairing").get<bool>())
    return "contradiction: four hexagons pair off through order-3 intersections";
  return "no pairing of the four hexagons through order-3 intersections";
}

std::string conclude_four_genus(const Json& in) {
  if (in.at("count").get<std::size_t>() != 4) return "not four hexagons";
  if (in.at("pairing").get<bool>()) return "pairing present";
  return "genus >= 3: four hexagons without a pairing";
}

std::string conclude_five_genus(const Json& in) {
  if (in.at("count").get<std::size_t>() >= 5) return "genus >= 3: at least five hexagons";
  return "fewer than five hexagons";
}

std::string conclude_hex_crosscap(const Json& in) {
  if (in.at("count").get<std::size_t>() >= 3) return "crosscap >= 3: at least three hexagons";
  return "fewer than three hexagons";
}

const std::vector<Rule>& rules() {
  static const std::vector<Rule> r = {
      {{"planarity-criterion",
        "Gamma_G is planar iff every element order lies in {1,2,3,4} (subset form; the trivial "
        "group is planar)"},
       conclude_planarity},
      {{"reduction-union",
        "S = union of the cyclic subgroups of order not in {1,2,3,4}; when G\\S has orders in "
        "{2,3,4} only, Gamma_G and Gamma_S have the same genus and crosscap"},
       conclude_reduction},
      {{"no-two-hexagons", "no group has exactly two cyclic subgroups of order 6"},
       conclude_two_hexagons},
      {{"hexagon-intersection-uniform",
        "with exactly three hexagons, one order-3 intersection forces all three"},
       conclude_uniform},
      {{"three-hexagon-groups",
        "spectrum within {1,2,3,4,6}, exactly three hexagons and an order-3 intersection: "
        "exactly [12,5],[18,3],[24,7],[24,8],[24,14],[36,11],[72,43]"},
       conclude_three_groups},
      {{"no-four-hexagon-pairing",
        "four hexagons never split into two pairs with order-3 intersections"},
       conclude_four_pairing},
      {{"cyclic-power-graph", "Gamma_Zn has genus 2 iff n = 8 and genus >= 3 for n >= 9"},
       conclude_cyclic_genus},
      {{"two-group-octic",
        "2-groups of genus 2 are Z8, D16, QD16, Q16; two cyclic subgroups of order 8 give genus "
        ">= 3"},
       conclude_octic},
      {{"three-hexagons-genus",
        "three hexagons: genus 2 iff all pairwise intersections have order 3"},
       conclude_three_genus},
      {{"four-hexagons-genus", "four hexagons of genus 2 would need a pairing"},
       conclude_four_genus},
      {{"five-hexagons-genus", "five or more hexagons give genus >= 3"}, conclude_five_genus},
      {{"cyclic-crosscap", "Gamma_Zn has crosscap >= 3 for n >= 7"}, conclude_cyclic_crosscap},
      {{"hexagons-crosscap",
        "spectrum within {1,2,3,4,6} and three or more hexagons give crosscap >= 3"},
       conclude_hex_crosscap},
      {{"block-composition",
        "genus is additive over blocks; crosscap follows the block formula"},
       conclude_blocks},
      {{"sylow-five-seven",
        "elements of order 5 or 7 with no element of order >= 9: one normal subgroup of order 5 "
        "or 7, or >= 3 K5/K7 blocks"},
       conclude_sylow},
      {{"octic-with-order-three",
        "registry fact, checked only against the curated order-24 catalog: no group of order 24 "
        "has spectrum {1,2,3,4,8}"},
       conclude_octic_three},
  };
  return r;
}

const Rule& find_rule(const std::string& id) {
  for (const auto& r : rules())
    if (r.info.id == id) return r;
  throw UnknownRule(id);
}

// ---------------------------------------------------------------------------
// Group facts consumed by the decision trees.

struct Facts {
  OrderSpectrum spectrum;
  std::size_t max_order = 1;
  std::vector<ElementSet> hexagons;
  std::vector<std::size_t> pairwise;  // sorted
  bool pairing = false;
};

Facts gather(const FiniteGroup& g) {
  Facts f;
  f.spectrum = order_spectrum(g);
  f.max_order = *f.spectrum.orders().rbegin();
  f.hexagons = cyclic_subgroups_of_order(g, 6);
  const auto& h = f.hexagons;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j)
      f.pairwise.push_back(set_intersection(h[i], h[j]).size());
  std::sort(f.pairwise.begin(), f.pairwise.end());
  if (h.size() == 4) {
    auto three = [&](int i, int j) { return set_intersection(h[i], h[j]).size() == 3; };
    f.pairing = (three(0, 1) && three(2, 3)) || (three(0, 2) && three(1, 3)) ||
                (three(0, 3) && three(1, 2));
  }
  return f;
}

Json hex_inputs(const Facts& f) {
  Json in;
  in["count"] = f.hexagons.size();
  in["pairwise"] = f.pairwise;
  return in;
}

std::optional<std::string> match_label(const FiniteGroup& g, const Catalog& catalog,
                                       const std::string& tag) {
  const auto spec = order_spectrum(g);
  for (const auto& e : catalog.with_tag(tag)) {
    if (e.expected_order != g.order() || !(e.expected_spectrum == spec)) continue;
    if (is_isomorphic(g, catalog.get(e.label))) return e.label;
  }
  return std::nullopt;
}

class TrailBuilder {
 public:
  explicit TrailBuilder(Verdict& v) : v_(v) {}
  const std::string& add(const std::string& rule, Json inputs) {
    std::string c = find_rule(rule).conclude(inputs);
    v_.trail.push_back({rule, std::move(inputs), std::move(c)});
    const auto& s = v_.trail.back();
    if (s.conclusion.rfind("contradiction", 0) == 0)
      throw InternalContradiction(rule + ": " + s.conclusion);
    return s.conclusion;
  }

 private:
  Verdict& v_;
};

Json reduction_inputs(const FiniteGroup& g, const ReductionSet& rs, Surface s) {
  Json in;
  in["surface"] = surface_name(s);
  std::vector<std::size_t> orders;
  for (const auto& h : rs.subgroups) orders.push_back(h.size());
  in["subgroup_orders"] = orders;
  in["set_size"] = rs.set.size();
  in["complement_spectrum"] = rs.complement_spectrum.to_string();
  (void)g;
  return in;
}

void check_cap(const FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap)
    throw OrderCapExceeded("order " + std::to_string(g.order()) + " exceeds the cap " +
                           std::to_string(cap));
}

Json sylow_inputs(const FiniteGroup& g, const Facts& f, Surface s) {
  Json in;
  in["surface"] = surface_name(s);
  in["z5_subgroups"] = f.spectrum.contains(5) ? count_subgroups_of_prime_order(g, 5) : 0;
  in["z7_subgroups"] = f.spectrum.contains(7) ? count_subgroups_of_prime_order(g, 7) : 0;
  in["has_order_six"] = f.spectrum.contains(6);
  return in;
}

/// Blocks K5 (one per Z5) and K7 (one per Z7) when S consists of them only.
std::optional<Json> prime_blocks(const ReductionSet& rs, Surface s) {
  if (!rs.valid || rs.subgroups.empty()) return std::nullopt;
  std::size_t n5 = 0, n7 = 0;
  for (const auto& h : rs.subgroups) {
    if (h.size() == 5) ++n5;
    else if (h.size() == 7) ++n7;
    else return std::nullopt;
  }
  Json in;
  in["surface"] = surface_name(s);
  Json blocks = Json::array();
  if (n5) blocks.push_back(Json{{"graph", "K5"}, {"genus", 1}, {"crosscap", 1}, {"count", n5}});
  if (n7) blocks.push_back(Json{{"graph", "K7"}, {"genus", 1}, {"crosscap", 3}, {"count", n7}});
  in["blocks"] = blocks;
  return in;
}

std::size_t composed_value(const Json& blocks_in, Surface s) {
  std::vector<BlockGenus> blocks;
  for (const auto& b : blocks_in.at("blocks"))
    for (std::size_t i = 0; i < b.at("count").get<std::size_t>(); ++i)
      blocks.push_back({b.at("genus").get<std::size_t>(), b.at("crosscap").get<std::size_t>()});
  auto c = compose_blocks(blocks);
  return s == Surface::orientable ? c.orientable : c.nonorientable;
}

}  // namespace

// ---------------------------------------------------------------------------

ReductionSet reduction_set(const FiniteGroup& g) {
  const auto orders = element_orders(g);
  std::vector<ElementSet> cyc;
  std::set<std::vector<Element>> seen;
  for (Element x = 0; x < g.order(); ++x) {
    if (orders[x] <= 4) continue;
    auto h = cyclic_subgroup(g, x);
    if (seen.insert(h.members).second) cyc.push_back(std::move(h));
  }
  ReductionSet rs;
  ElementSet acc = make_element_set(g, {0});
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cyc.size() && maximal; ++j) {
      if (i == j || cyc[j].size() <= cyc[i].size()) continue;
      maximal = set_intersection(cyc[i], cyc[j]).size() != cyc[i].size();
    }
    if (!maximal) continue;
    if (!is_subgroup(g, cyc[i].members))
      throw InternalContradiction("cyclic_subgroup returned a non-subgroup");
    acc = set_union(acc, cyc[i]);
    rs.subgroups.push_back(cyc[i]);
  }
  std::sort(rs.subgroups.begin(), rs.subgroups.end(),
            [](const ElementSet& a, const ElementSet& b) {
              return a.size() != b.size() ? a.size() > b.size() : a.members < b.members;
            });
  rs.set = acc;
  std::vector<Element> rest;
  for (Element x = 0; x < g.order(); ++x)
    if (!rs.set.contains(x)) rest.push_back(x);
  rs.complement_spectrum = order_spectrum(g, rest);
  rs.valid = rs.complement_spectrum.subset_of({2, 3, 4});
  return rs;
}

Verdict classify_orientable(const FiniteGroup& g, const Catalog& catalog, std::size_t cap) {
  check_cap(g, cap);
  Verdict v;
  v.surface = Surface::orientable;
  TrailBuilder t(v);
  const Facts f = gather(g);
  auto set = [&](GenusClass c, std::size_t lo, std::optional<std::size_t> hi) {
    v.orientable = c;
    v.lower = lo;
    v.upper = hi;
    return v;
  };

  {
    Json in;
    in["spectrum"] = f.spectrum.to_string();
    if (f.spectrum.subset_of({1, 2, 3, 4})) {
      t.add("planarity-criterion", in);
      return set(GenusClass::planar, 0, 0);
    }
    t.add("planarity-criterion", in);
  }
  {
    Json in;
    in["max_order"] = f.max_order;
    t.add("cyclic-power-graph", in);
    if (f.max_order >= 9) return set(GenusClass::at_least_three, 3, std::nullopt);
  }

  if (f.spectrum.contains(5) || f.spectrum.contains(7)) {
    Json in = sylow_inputs(g, f, Surface::orientable);
    const std::size_t total =
        in["z5_subgroups"].get<std::size_t>() + in["z7_subgroups"].get<std::size_t>();
    t.add("sylow-five-seven", in);
    const auto rs = reduction_set(g);
    if (total >= 3) {
      if (auto blocks = prime_blocks(rs, Surface::orientable)) {
        t.add("reduction-union", reduction_inputs(g, rs, Surface::orientable));
        t.add("block-composition", *blocks);
        const auto k = composed_value(*blocks, Surface::orientable);
        return set(GenusClass::at_least_three, k, k);
      }
      return set(GenusClass::at_least_three, total, std::nullopt);
    }
    // A unique normal subgroup of order 5 or 7: its K5 or K7 is a block of genus 1.
    t.add("reduction-union", reduction_inputs(g, rs, Surface::orientable));
    if (rs.valid && rs.subgroups.size() == 1) return set(GenusClass::other_with_bounds, 1, 1);
    return set(GenusClass::other_with_bounds, 1, std::nullopt);
  }

  if (f.spectrum.contains(8)) {
    Json in;
    in["z8_subgroups"] = cyclic_subgroups_of_order(g, 8).size();
    in["prime"] = prime_of_p_group(g).value_or(0);
    in["spectrum"] = f.spectrum.to_string();
    in["label"] = "";
    if (in["z8_subgroups"].get<std::size_t>() >= 2) {
      t.add("two-group-octic", in);
      return set(GenusClass::at_least_three, 3, std::nullopt);
    }
    if (f.spectrum.contains(3)) {
      Json in3;
      in3["spectrum"] = f.spectrum.to_string();
      t.add("octic-with-order-three", in3);
    }
    const auto rs = reduction_set(g);
    t.add("reduction-union", reduction_inputs(g, rs, Surface::orientable));
    in["label"] = match_label(g, catalog, "table1").value_or("");
    const auto c = t.add("two-group-octic", in);
    if (c.rfind("genus 2", 0) == 0) {
      v.table1_label = in["label"].get<std::string>();
      return set(GenusClass::two, 2, 2);
    }
    throw InternalContradiction("order-8 branch left undecided: " + c);
  }

  // Element orders now lie in {1,2,3,4,6} and 6 occurs.
  const Json hex = hex_inputs(f);
  const std::size_t count = f.hexagons.size();
  t.add("no-two-hexagons", hex);
  if (count == 1) {
    const auto rs = reduction_set(g);
    t.add("reduction-union", reduction_inputs(g, rs, Surface::orientable));
    if (!rs.valid) throw InternalContradiction("single hexagon without a valid reduction set");
    return set(GenusClass::one, 1, 1);
  }
  if (count == 3) {
    const auto c = t.add("hexagon-intersection-uniform", hex);
    t.add("three-hexagons-genus", hex);
    if (c.rfind("all", 0) == 0) {
      Json in = hex;
      in["spectrum"] = f.spectrum.to_string();
      in["label"] = match_label(g, catalog, "table1").value_or("");
      t.add("three-hexagon-groups", in);
      v.table1_label = in["label"].get<std::string>();
      return set(GenusClass::two, 2, 2);
    }
    return set(GenusClass::at_least_three, 3, std::nullopt);
  }
  if (count == 4) {
    Json in = hex;
    in["pairing"] = f.pairing;
    t.add("no-four-hexagon-pairing", in);
    t.add("four-hexagons-genus", in);
    return set(GenusClass::at_least_three, 3, std::nullopt);
  }
  t.add("five-hexagons-genus", hex);
  return set(GenusClass::at_least_three, 3, std::nullopt);
}

Verdict classify_nonorientable(const FiniteGroup& g, const Catalog& catalog, std::size_t cap) {
  (void)catalog;
  check_cap(g, cap);
  Verdict v;
  v.surface = Surface::nonorientable;
  TrailBuilder t(v);
  const Facts f = gather(g);
  auto set = [&](CrosscapClass c, std::size_t lo, std::optional<std::size_t> hi) {
    v.nonorientable = c;
    v.lower = lo;
    v.upper = hi;
    if (c == CrosscapClass::exact && lo == 2)
      throw InternalContradiction("crosscap two derived for a group");
    return v;
  };

  {
    Json in;
    in["spectrum"] = f.spectrum.to_string();
    t.add("planarity-criterion", in);
    if (f.spectrum.subset_of({1, 2, 3, 4})) return set(CrosscapClass::planar, 0, 0);
  }
  {
    Json in;
    in["max_order"] = f.max_order;
    t.add("cyclic-crosscap", in);
    if (f.max_order >= 7) return set(CrosscapClass::not_two, 3, std::nullopt);
  }

  if (f.spectrum.contains(5)) {
    Json in = sylow_inputs(g, f, Surface::nonorientable);
    const std::size_t total = in["z5_subgroups"].get<std::size_t>();
    t.add("sylow-five-seven", in);
    const auto rs = reduction_set(g);
    if (total >= 3) {
      if (auto blocks = prime_blocks(rs, Surface::nonorientable)) {
        t.add("reduction-union", reduction_inputs(g, rs, Surface::nonorientable));
        t.add("block-composition", *blocks);
        const auto k = composed_value(*blocks, Surface::nonorientable);
        return set(CrosscapClass::exact, k, k);
      }
      return set(CrosscapClass::not_two, total, std::nullopt);
    }
    t.add("reduction-union", reduction_inputs(g, rs, Surface::nonorientable));
    if (!rs.valid || rs.subgroups.size() != 1)
      throw InternalContradiction("unique Z5 without a valid reduction set");
    return set(CrosscapClass::one, 1, 1);
  }

  // Element orders now lie in {1,2,3,4,6} and 6 occurs.
  const Json hex = hex_inputs(f);
  t.add("no-two-hexagons", hex);
  if (f.hexagons.size() == 1) {
    const auto rs = reduction_set(g);
    t.add("reduction-union", reduction_inputs(g, rs, Surface::nonorientable));
    if (!rs.valid) throw InternalContradiction("single hexagon without a valid reduction set");
    return set(CrosscapClass::one, 1, 1);
  }
  t.add("hexagons-crosscap", hex);
  return set(CrosscapClass::not_two, 3, std::nullopt);
}

std::string replay_step(const CertificateStep& step) {
  return find_rule(step.rule_id).conclude(step.inputs);
}

const std::vector<RuleInfo>& rule_registry() {
  static const std::vector<RuleInfo> r = [] {
    std::vector<RuleInfo> out;
    for (const auto& x : rules()) out.push_back(x.info);
    return out;
  }();
  return r;
}

const std::map<std::string, std::string>& table2_spectrum_column() {
  static const std::map<std::string, std::string> m = {
      {"[12,5]", "{1,2,3,6}"},    {"[18,3]", "{1,2,3,6}"},  {"[24,7]", "{1,2,3,4,6}"},
      {"[24,8]", "{1,2,3,4,6}"},  {"[24,14]", "{1,2,3,6}"}, {"[36,11]", "{1,2,3,6}"},
      {"[72,43]", "{1,2,3,4,6}"},
  };
  return m;
}

bool three_hexagon_conditions(const FiniteGroup& g) {
  const Facts f = gather(g);
  return f.spectrum.subset_of({1, 2, 3, 4, 6}) && f.hexagons.size() == 3 &&
         std::count(f.pairwise.begin(), f.pairwise.end(), 3) > 0;
}

// ---------------------------------------------------------------------------
// Engine cross-check

namespace {

// Solved blocks, shared by every engine_genus call with the same budget.
// Catalog sweeps meet the same blocks (K_n, hexagon unions) over and over.
struct BlockCache {
  std::vector<std::pair<Graph, BlockReport>> seen;
};

using BudgetKey = std::tuple<std::uint64_t, double, bool, double>;

std::mutex cache_mutex;
std::map<BudgetKey, BlockCache> caches;

std::optional<BlockReport> cached(const BlockCache& cache, const Graph& b) {
  for (const auto& [g, r] : cache.seen)
    if (g.vertex_count() == b.vertex_count() && g.edge_count() == b.edge_count() &&
        graphs_isomorphic(g, b))
      return r;
  return std::nullopt;
}

BlockReport solve_block(const Graph& b, const SearchBudget& budget) {
  const BudgetKey key{budget.max_nodes, budget.max_seconds, budget.use_subgraph_bounds,
                      budget.total_seconds};
  {
    std::lock_guard lock(cache_mutex);
    if (auto r = cached(caches[key], b)) return *r;
  }
  BlockReport r;
  r.vertices = b.vertex_count();
  r.edges = b.edge_count();
  r.planar = is_planar(b);
  r.orientable = genus_exact(b, budget);
  r.nonorientable = crosscap_exact(b, budget);
  std::lock_guard lock(cache_mutex);
  auto& cache = caches[key];
  if (!cached(cache, b)) cache.seen.emplace_back(b, r);
  return r;
}

Agreement compare(std::size_t vl, std::optional<std::size_t> vu, std::size_t el, std::size_t eu,
                  bool exact) {
  const std::size_t hi = vu.value_or(static_cast<std::size_t>(-1));
  if (exact) return el >= vl && el <= hi ? Agreement::agree : Agreement::mismatch;
  return eu >= vl && el <= hi ? Agreement::consistent_with : Agreement::mismatch;
}

}  // namespace

EngineGenus engine_genus(const Graph& g, const SearchBudget& budget,
                         std::vector<BlockReport>* reports) {
  EngineGenus e;
  std::vector<BlockReport> rs;
  for (const auto& b : blocks(g)) rs.push_back(solve_block(b, budget));
  bool all_exact = true;
  std::size_t eg_lower = 0, nsum_upper = 0, osum_upper = 0, nmax_lower = 0;
  for (const auto& r : rs) {
    all_exact = all_exact && r.orientable.exact() && r.nonorientable.exact();
    e.orientable_lower += r.orientable.lower;
    osum_upper += r.orientable.upper;
    nsum_upper += r.nonorientable.upper;
    nmax_lower = std::max(nmax_lower, r.nonorientable.lower);
    eg_lower += std::min(2 * r.orientable.lower, r.nonorientable.lower);
  }
  e.orientable_upper = osum_upper;
  e.orientable_exact = std::all_of(rs.begin(), rs.end(),
                                   [](const BlockReport& r) { return r.orientable.exact(); });
  if (all_exact) {
    std::vector<std::pair<GenusResult, GenusResult>> pairs;
    for (const auto& r : rs) pairs.emplace_back(r.orientable, r.nonorientable);
    const auto c = compose_blocks(pairs);
    e.nonorientable_lower = e.nonorientable_upper = c.nonorientable;
    e.nonorientable_exact = true;
  } else {
    // Euler genus is additive over blocks and bounds the crosscap from below.
    e.nonorientable_lower = std::max(nmax_lower, eg_lower);
    e.nonorientable_upper = std::min(nsum_upper, 2 * osum_upper + 1);
    if (osum_upper == 0) e.nonorientable_upper = nsum_upper;
    e.nonorientable_exact = e.nonorientable_lower == e.nonorientable_upper;
  }
  if (reports) *reports = std::move(rs);
  return e;
}

CrossValidation cross_validate(const FiniteGroup& g, const SearchBudget& budget,
                               const Catalog& catalog) {
  CrossValidation cv;
  cv.orientable_verdict = classify_orientable(g, catalog);
  cv.nonorientable_verdict = classify_nonorientable(g, catalog);
  cv.engine = engine_genus(power_graph(g), budget, &cv.blocks);
  for (const auto& b : cv.blocks)
    cv.budget_exhausted = cv.budget_exhausted || b.orientable.budget_exhausted ||
                          b.nonorientable.budget_exhausted || !b.orientable.exact() ||
                          !b.nonorientable.exact();
  const auto& e = cv.engine;
  cv.orientable = compare(cv.orientable_verdict.lower, cv.orientable_verdict.upper,
                          e.orientable_lower, e.orientable_upper, e.orientable_exact);
  cv.nonorientable = compare(cv.nonorientable_verdict.lower, cv.nonorientable_verdict.upper,
                             e.nonorientable_lower, e.nonorientable_upper, e.nonorientable_exact);
  if (e.nonorientable_exact && e.nonorientable_lower == 2) cv.nonorientable = Agreement::mismatch;
  return cv;
}

// ---------------------------------------------------------------------------
// Rule verification

namespace {

using Check = std::function<void(RuleReport&, const Catalog&, const SearchBudget&)>;

void scan(RuleReport& rep, const Catalog& catalog,
          const std::function<bool(const CatalogEntry&)>& select,
          const std::function<std::optional<std::string>(const CatalogEntry&, const FiniteGroup&)>&
              witness) {
  for (const auto& e : catalog.entries()) {
    if (!select(e)) continue;
    ++rep.scanned;
    const auto g = catalog.get(e.label);
    if (auto w = witness(e, g)) rep.witnesses.push_back(e.label + ": " + *w);
  }
}

bool all_entries(const CatalogEntry&) { return true; }

bool hexagon_spectrum(const CatalogEntry& e) {
  return e.expected_spectrum.subset_of({1, 2, 3, 4, 6}) && e.expected_spectrum.contains(6);
}

std::string labels_string(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

/// Lower bound on the genus of g from Euler and clique bounds per block.
std::size_t block_bound(const Graph& g, Surface s) {
  std::size_t sum = 0, best = 0;
  for (const auto& b : blocks(g)) {
    std::size_t w = clique_number(b);
    std::size_t v = std::max(euler_lower_bound(b, s),
                             s == Surface::orientable ? kn_genus(w) : kn_crosscap(w));
    sum += v;
    best = std::max(best, v);
  }
  return s == Surface::orientable ? sum : best;
}

Graph union_subgraph(const FiniteGroup& g, const std::vector<ElementSet>& parts) {
  ElementSet u = make_element_set(g, {});
  for (const auto& p : parts) u = set_union(u, p);
  std::vector<Vertex> vs(u.members.begin(), u.members.end());
  return induced(power_graph(g), vs);
}

const std::map<std::string, Check>& checks() {
  static const std::map<std::string, Check> m = {
      {"planarity-criterion",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         scan(rep, c, all_entries, [](const CatalogEntry& e, const FiniteGroup& g)
                                       -> std::optional<std::string> {
           const bool planar = is_planar(power_graph(g));
           if (planar != e.expected_spectrum.subset_of({1, 2, 3, 4}))
             return std::string("planarity disagrees with the spectrum");
           return std::nullopt;
         });
       }},
      {"reduction-union",
       [](RuleReport& rep, const Catalog& c, const SearchBudget& budget) {
         std::size_t unresolved = 0;
         scan(rep, c, all_entries, [&](const CatalogEntry&, const FiniteGroup& g)
                                       -> std::optional<std::string> {
           const auto rs = reduction_set(g);
           for (const auto& h : rs.subgroups)
             if (!is_subgroup(g, h.members)) return std::string("S part is not a subgroup");
           if (g.order() > 16 || !rs.valid) return std::nullopt;
           // Small groups: the engine compares Gamma_G with Gamma_S directly.
           const auto whole = engine_genus(power_graph(g), budget, nullptr);
           std::vector<Vertex> vs(rs.set.members.begin(), rs.set.members.end());
           const auto part = engine_genus(induced(power_graph(g), vs), budget, nullptr);
           if (!whole.orientable_exact || !part.orientable_exact || !whole.nonorientable_exact ||
               !part.nonorientable_exact) {
             ++unresolved;
             return std::nullopt;
           }
           if (whole.orientable_lower != part.orientable_lower ||
               whole.nonorientable_lower != part.nonorientable_lower)
             return "engine genus/crosscap " + std::to_string(whole.orientable_lower) + "/" +
                    std::to_string(whole.nonorientable_lower) + " vs Gamma_S " +
                    std::to_string(part.orientable_lower) + "/" +
                    std::to_string(part.nonorientable_lower);
           return std::nullopt;
         });
         rep.notes.push_back("engine comparison for orders <= 16; " + std::to_string(unresolved) +
                             " unresolved within budget");
       }},
      {"no-two-hexagons",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         std::set<std::string> complete;
         for (std::size_t n : {12, 18, 36})
           for (const auto& e : c.enumerate_complete(n)) complete.insert(e.label);
         scan(rep, c, [&](const CatalogEntry& e) { return complete.count(e.label) != 0; },
              [](const CatalogEntry&, const FiniteGroup& g) -> std::optional<std::string> {
                if (cyclic_subgroups_of_order(g, 6).size() == 2)
                  return std::string("exactly two cyclic subgroups of order 6");
                return std::nullopt;
              });
       }},
      {"hexagon-intersection-uniform",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         scan(rep, c, hexagon_spectrum, [](const CatalogEntry&, const FiniteGroup& g)
                                            -> std::optional<std::string> {
           const Facts f = gather(g);
           if (f.hexagons.size() != 3) return std::nullopt;
           const auto t = std::count(f.pairwise.begin(), f.pairwise.end(), 3);
           if (t != 0 && t != 3) return "six-profile " + six_profile(g).to_string();
           return std::nullopt;
         });
       }},
      {"three-hexagon-groups",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         std::set<std::string> found;
         const auto& column = table2_spectrum_column();
         scan(rep, c, all_entries, [&](const CatalogEntry& e, const FiniteGroup& g)
                                       -> std::optional<std::string> {
           if (!three_hexagon_conditions(g)) return std::nullopt;
           found.insert(e.label);
           auto it = column.find(e.label);
           if (it == column.end()) return std::string("meets the conditions but is not listed");
           if (order_spectrum(g).set_string() != it->second)
             return "spectrum " + order_spectrum(g).set_string() + " vs listed " + it->second;
           return std::nullopt;
         });
         for (const auto& [label, spec] : column)
           if (!found.count(label)) rep.witnesses.push_back(label + ": listed but not found");
         rep.notes.push_back("groups meeting the conditions: " + labels_string(found));
       }},
      {"no-four-hexagon-pairing",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         scan(rep, c, hexagon_spectrum, [](const CatalogEntry&, const FiniteGroup& g)
                                            -> std::optional<std::string> {
           const Facts f = gather(g);
           if (f.hexagons.size() == 4 && f.pairing) return std::string("pairing found");
           return std::nullopt;
         });
       }},
      {"cyclic-power-graph",
       [](RuleReport& rep, const Catalog&, const SearchBudget& budget) {
         rep.unit = "cyclic groups";
         for (std::size_t n = 1; n <= 40; ++n) {
           ++rep.scanned;
           const auto pg = power_graph(named(Family::cyclic, n));
           if (n >= 9) {
             if (kn_genus(clique_number(pg)) < 3)
               rep.witnesses.push_back("Z" + std::to_string(n) + ": clique bound below 3");
             continue;
           }
           const auto e = engine_genus(pg, budget, nullptr);
           const std::size_t want_max = n == 8 ? 2 : 1;
           if (!e.orientable_exact) {
             rep.status = RuleStatus::inconclusive;
             rep.notes.push_back("Z" + std::to_string(n) + " unresolved");
           } else if ((n == 8 && e.orientable_lower != 2) || e.orientable_lower > want_max) {
             rep.witnesses.push_back("Z" + std::to_string(n) + ": engine genus " +
                                     std::to_string(e.orientable_lower));
           }
         }
       }},
      {"two-group-octic",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         std::set<std::string> found;
         scan(rep, c,
              [](const CatalogEntry& e) {
                std::size_t n = e.expected_order;
                while (n > 1 && n % 2 == 0) n /= 2;
                return n == 1 && e.expected_order > 1;
              },
              [&](const CatalogEntry& e, const FiniteGroup& g) -> std::optional<std::string> {
                if (order_spectrum(g).set_string() == "{1,2,4,8}" &&
                    cyclic_subgroups_of_order(g, 8).size() == 1)
                  found.insert(e.label);
                return std::nullopt;
              });
         const std::set<std::string> want = {"[8,1]", "[16,7]", "[16,8]", "[16,9]"};
         if (found != want) rep.witnesses.push_back("found " + labels_string(found));
         rep.notes.push_back("2-groups with a unique Z8 and spectrum {1,2,4,8}: " +
                             labels_string(found));
       }},
      {"three-hexagons-genus",
       [](RuleReport& rep, const Catalog& c, const SearchBudget& budget) {
         rep.unit = "graphs";
         rep.scanned = 2;
         const auto lambda = hexagon_union_graph(c.get("[12,5]"));
         const auto r = genus_exact(lambda, budget);
         rep.notes.push_back("three-hexagon union " + std::to_string(lambda.vertex_count()) + "/" +
                             std::to_string(lambda.edge_count()) + ": " + r.describe());
         if (r.exact() && r.upper != 2) rep.witnesses.push_back("three-hexagon union genus " + r.describe());
         if (!r.exact()) {
           rep.status = RuleStatus::inconclusive;
           rep.notes.push_back("lower bound paper-asserted, not machine-exhausted");
         }
         Graph k4s = complete_graph(4);
         k4s = disjoint_union(disjoint_union(k4s, complete_graph(4)), complete_graph(4));
         const auto comp = engine_genus(join_apex(k4s), budget, nullptr);
         if (!comp.orientable_exact || comp.orientable_lower != 3)
           rep.witnesses.push_back("K1+3K4 engine genus " + std::to_string(comp.orientable_lower));
       }},
      {"four-hexagons-genus",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         scan(rep, c, hexagon_spectrum, [&](const CatalogEntry& e, const FiniteGroup& g)
                                            -> std::optional<std::string> {
           const Facts f = gather(g);
           if (f.hexagons.size() != 4) return std::nullopt;
           if (f.pairing) return std::string("pairing present");
           const auto b = block_bound(union_subgraph(g, f.hexagons), Surface::orientable);
           rep.notes.push_back(e.label + ": hexagon-union block bound " + std::to_string(b));
           if (b < 3) rep.status = RuleStatus::inconclusive;
           return std::nullopt;
         });
       }},
      {"five-hexagons-genus",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         if (kmn_genus(3, 8) != 2) rep.witnesses.push_back("K3,8 genus is not 2");
         scan(rep, c, hexagon_spectrum, [&](const CatalogEntry& e, const FiniteGroup& g)
                                            -> std::optional<std::string> {
           const Facts f = gather(g);
           if (f.hexagons.size() < 5) return std::nullopt;
           const auto b = block_bound(union_subgraph(g, f.hexagons), Surface::orientable);
           rep.notes.push_back(e.label + ": hexagon-union block bound " + std::to_string(b));
           if (b < 3) rep.status = RuleStatus::inconclusive;
           return std::nullopt;
         });
       }},
      {"cyclic-crosscap",
       [](RuleReport& rep, const Catalog&, const SearchBudget& budget) {
         rep.unit = "cyclic groups";
         for (std::size_t n = 1; n <= 40; ++n) {
           ++rep.scanned;
           const auto pg = power_graph(named(Family::cyclic, n));
           if (n >= 7) {
             if (kn_crosscap(clique_number(pg)) < 3)
               rep.witnesses.push_back("Z" + std::to_string(n) + ": clique bound below 3");
             continue;
           }
           const auto e = engine_genus(pg, budget, nullptr);
           if (!e.nonorientable_exact) {
             rep.status = RuleStatus::inconclusive;
             rep.notes.push_back("Z" + std::to_string(n) + " unresolved");
           } else if (e.nonorientable_lower == 2) {
             rep.witnesses.push_back("Z" + std::to_string(n) + ": engine crosscap 2");
           }
         }
       }},
      {"hexagons-crosscap",
       [](RuleReport& rep, const Catalog& c, const SearchBudget& budget) {
         rep.unit = "graphs";
         rep.scanned = 2;
         const auto g = c.get("[12,5]");
         const auto hex = cyclic_subgroups_of_order(g, 6);
         const auto delta = union_subgraph(g, {hex[0], hex[1]});
         const auto d = crosscap_exact(delta, budget);
         rep.notes.push_back("two-hexagon union crosscap " + d.describe());
         if (!d.exact()) rep.status = RuleStatus::inconclusive;
         else if (d.upper != 2) rep.witnesses.push_back("two-hexagon union crosscap " + d.describe());
         Graph k4s = disjoint_union(disjoint_union(complete_graph(4), complete_graph(4)),
                                    complete_graph(4));
         const auto comp = engine_genus(join_apex(k4s), budget, nullptr);
         if (!comp.nonorientable_exact || comp.nonorientable_lower != 3)
           rep.witnesses.push_back("K1+3K4 engine crosscap " +
                                   std::to_string(comp.nonorientable_lower));
       }},
      {"block-composition",
       [](RuleReport& rep, const Catalog&, const SearchBudget&) {
         rep.unit = "graphs";
         auto apex_of = [](std::vector<std::size_t> cliques) {
           Graph u = complete_graph(cliques[0]);
           for (std::size_t i = 1; i < cliques.size(); ++i)
             u = disjoint_union(u, complete_graph(cliques[i]));
           return join_apex(u);
         };
         struct Case {
           std::string name;
           Graph g;
           Surface s;
           std::size_t want;
         };
         const std::vector<Case> cases = {
             {"K1+3K4", apex_of({4, 4, 4}), Surface::orientable, 3},
             {"K1+(K7 u K4)", apex_of({7, 4}), Surface::orientable, 3},
             {"K1+8K6", apex_of({6, 6, 6, 6, 6, 6, 6, 6}), Surface::orientable, 8},
             {"three K5 at a cut vertex", apex_of({4, 4, 4}), Surface::nonorientable, 3},
         };
         for (const auto& cs : cases) {
           ++rep.scanned;
           std::vector<BlockGenus> bs;
           for (const auto& b : blocks(cs.g)) {
             const auto n = b.vertex_count();
             if (b.edge_count() != n * (n - 1) / 2)
               throw InternalContradiction("block is not complete");
             bs.push_back({kn_genus(n), kn_crosscap(n)});
           }
           const auto c = compose_blocks(bs);
           const auto got = cs.s == Surface::orientable ? c.orientable : c.nonorientable;
           if (got != cs.want)
             rep.witnesses.push_back(cs.name + ": " + std::to_string(got) + " vs " +
                                     std::to_string(cs.want));
         }
       }},
      {"sylow-five-seven",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         scan(rep, c,
              [](const CatalogEntry& e) {
                return e.expected_spectrum.contains(5) || e.expected_spectrum.contains(7);
              },
              [](const CatalogEntry&, const FiniteGroup& g) -> std::optional<std::string> {
                const auto spec = order_spectrum(g);
                const std::size_t a = spec.contains(5) ? count_subgroups_of_prime_order(g, 5) : 0;
                const std::size_t b = spec.contains(7) ? count_subgroups_of_prime_order(g, 7) : 0;
                if (a % 5 != (a ? 1u : 0u) || b % 7 != (b ? 1u : 0u))
                  return std::string("subgroup count not 1 mod p");
                if (*spec.orders().rbegin() >= 9) return std::nullopt;
                if (a + b == 2) return std::string("two subgroups of order 5 or 7");
                if (a == 1 && b == 0 && spec.contains(6))
                  return std::string("normal Z5 next to an element of order 6");
                return std::nullopt;
              });
       }},
      {"octic-with-order-three",
       [](RuleReport& rep, const Catalog& c, const SearchBudget&) {
         scan(rep, c,
              [](const CatalogEntry& e) {
                return e.expected_order == 24 && e.has_tag("curated");
              },
              [](const CatalogEntry&, const FiniteGroup& g) -> std::optional<std::string> {
                if (order_spectrum(g).set_string() == "{1,2,3,4,8}")
                  return std::string("spectrum {1,2,3,4,8}");
                return std::nullopt;
              });
         rep.notes.push_back("checked against the curated order-24 catalog only; not re-proved");
       }},
  };
  return m;
}

}  // namespace

RuleReport verify_rule(const std::string& rule_id, const Catalog& catalog,
                       const SearchBudget& budget) {
  find_rule(rule_id);
  RuleReport rep;
  rep.rule_id = rule_id;
  checks().at(rule_id)(rep, catalog, budget);
  if (!rep.witnesses.empty()) rep.status = RuleStatus::fail;
  return rep;
}

// ---------------------------------------------------------------------------
// Records

Json to_json(const CertificateStep& s) {
  Json j;
  j["rule"] = s.rule_id;
  j["inputs"] = s.inputs;
  j["conclusion"] = s.conclusion;
  return j;
}

namespace {

Json verdict_json(const Verdict& v) {
  Json j;
  j["category"] = v.category();
  j["lower"] = v.lower;
  j["upper"] = v.upper ? Json(*v.upper) : Json(nullptr);
  if (v.surface == Surface::orientable)
    j["table1_label"] = v.table1_label ? Json(*v.table1_label) : Json(nullptr);
  Json trail = Json::array();
  for (const auto& s : v.trail) trail.push_back(to_json(s));
  j["trail"] = trail;
  return j;
}

}  // namespace

Json verdict_record(const std::string& label, const FiniteGroup& g, const Verdict& orientable,
                    const Verdict& nonorientable) {
  Json j;
  j["label"] = label;
  j["order"] = g.order();
  j["spectrum"] = order_spectrum(g).to_string();
  j["six_profile"] = six_profile(g).to_string();
  j["orientable"] = verdict_json(orientable);
  j["nonorientable"] = verdict_json(nonorientable);
  return j;
}

}  // namespace pg
