#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "powergenus/catalog.hpp"
#include "powergenus/error.hpp"
#include "powergenus/group_io.hpp"
#include "powergenus/isomorphism.hpp"

using namespace pg;

namespace {

// Tables written by tests/oracles/catalog_oracle.py from textbook
// presentations, independent of the recipe grammar.
std::map<std::string, FiniteGroup> oracle_groups() {
  std::ifstream in(std::string(POWERGENUS_TEST_DATA) + "/oracle_groups.txt");
  REQUIRE(in);
  std::map<std::string, FiniteGroup> out;
  while (in >> std::ws && in.peek() != EOF) {
    auto g = read_group(in);
    out.emplace(g.label(), g);
  }
  return out;
}

std::map<std::string, std::pair<std::size_t, std::string>> oracle_spectra() {
  std::ifstream in(std::string(POWERGENUS_TEST_DATA) + "/oracle_spectra.txt");
  REQUIRE(in);
  std::map<std::string, std::pair<std::size_t, std::string>> out;
  std::string label, spec;
  std::size_t order;
  while (in >> label >> order >> spec) out[label] = {order, spec};
  return out;
}

bool three_hexagon(const FiniteGroup& g) {
  if (!order_spectrum(g).subset_of({1, 2, 3, 4, 6})) return false;
  auto hex = cyclic_subgroups_of_order(g, 6);
  if (hex.size() != 3) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (set_intersection(hex[i], hex[j]).size() == 3) return true;
  return false;
}

}  // namespace

TEST_CASE("every catalog entry matches its independent construction") {
  const auto& cat = Catalog::builtin();
  auto oracle = oracle_groups();
  auto spectra = oracle_spectra();
  CHECK(oracle.size() == cat.entries().size());
  for (const auto& e : cat.entries()) {
    CAPTURE(e.label);
    auto g = cat.get(e.label);
    REQUIRE(oracle.count(e.label));
    CHECK(is_isomorphic(g, oracle.at(e.label)));
    REQUIRE(spectra.count(e.label));
    CHECK(spectra.at(e.label).first == g.order());
    CHECK(spectra.at(e.label).second == order_spectrum(g).to_string());
  }
}

TEST_CASE("get") {
  const auto& cat = Catalog::builtin();
  CHECK(is_isomorphic(cat.get("[16,9]"), named(Family::dicyclic, 4)));
  CHECK(is_isomorphic(cat.get("[18,3]"),
                      direct_product(named(Family::cyclic, 3), named(Family::symmetric, 3))));
  CHECK(is_isomorphic(cat.get("[36,11]"),
                      direct_product(named(Family::cyclic, 3), named(Family::alternating, 4))));
  CHECK(cat.get("[16,9]").label() == "[16,9]");
  CHECK_THROWS_AS(cat.get("[99,1]"), UnknownLabel);
}

TEST_CASE("complete enumerations") {
  const auto& cat = Catalog::builtin();
  for (auto [order, count] : {std::pair{12u, 5u}, std::pair{18u, 5u}, std::pair{36u, 14u}}) {
    auto list = cat.enumerate_complete(order);
    REQUIRE(list.size() == count);
    std::vector<FiniteGroup> gs;
    for (const auto& e : list) gs.push_back(cat.get(e.label));
    for (std::size_t i = 0; i < gs.size(); ++i) {
      CHECK(gs[i].order() == order);
      for (std::size_t j = i + 1; j < gs.size(); ++j) CHECK_FALSE(is_isomorphic(gs[i], gs[j]));
    }
  }
  CHECK_THROWS_AS(cat.enumerate_complete(24), UnsupportedOrder);
  CHECK_THROWS_AS(cat.enumerate_complete(8), UnsupportedOrder);
}

TEST_CASE("validate_all on the built-in catalog") {
  auto rep = Catalog::builtin().validate_all();
  for (const auto& f : rep.failures) MESSAGE(f.label << " " << f.check << " " << f.message);
  CHECK(rep.ok());
  CHECK(rep.entries_checked == Catalog::builtin().entries().size());
  CHECK(Catalog::builtin().with_tag("table1").size() == 11);
  CHECK(Catalog::builtin().with_tag("table2").size() == 7);
  CHECK(table1_labels().size() == 11);
  CHECK(table2_labels().size() == 7);
}

TEST_CASE("validate_all reports corrupted entries") {
  auto entries = Catalog::builtin().entries();
  for (auto& e : entries) {
    if (e.label == "[24,3]")  // one generator point moved: no longer SL(2,3)
      e.recipe = "perms(8:(0 3 6)(1 7 4);(2 3 4 5 7 6))";
    if (e.label == "[12,2]") e.expected_spectrum = OrderSpectrum::parse("{1:1,2:1,3:2,4:2,6:2,12:3}");
    if (e.label == "S3") e.recipe = "sym(3";
    if (e.label == "[18,5]") {  // duplicates [18,3]
      e.recipe = "direct(cyclic(3),sym(3))";
      e.expected_spectrum = OrderSpectrum::parse("{1:1,2:3,3:8,6:6}");
    }
    if (e.label == "[16,9]") e.tags.erase("table1");
  }
  auto rep = Catalog(entries).validate_all();
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& f : rep.failures) got.insert({f.label, f.check});
  CHECK_FALSE(rep.ok());
  CHECK(got.count({"[12,2]", "spectrum"}));
  CHECK(got.count({"S3", "construction"}));
  CHECK(got.count({"order18-complete", "isomorphic-pair"}));
  CHECK(got.count({"table1", "tag-set"}));
  CHECK((got.count({"[24,3]", "order"}) || got.count({"[24,3]", "spectrum"})));
}

TEST_CASE("catalog text format") {
  std::stringstream ss;
  Catalog::builtin().dump(ss);
  auto back = Catalog::parse(ss);
  REQUIRE(back.entries().size() == Catalog::builtin().entries().size());
  for (std::size_t i = 0; i < back.entries().size(); ++i) {
    const auto& a = back.entries()[i];
    const auto& b = Catalog::builtin().entries()[i];
    CHECK(a.label == b.label);
    CHECK(a.recipe == b.recipe);
    CHECK(a.expected_order == b.expected_order);
    CHECK(a.expected_spectrum == b.expected_spectrum);
    CHECK(a.tags == b.tags);
  }
  std::istringstream bad("X | cyclic(2) | 2\n");
  CHECK_THROWS_AS(Catalog::parse(bad), ParseError);
  std::istringstream bad_order("X | cyclic(2) | two | {1:1,2:1} | t\n");
  CHECK_THROWS_AS(Catalog::parse(bad_order), ParseError);
  CHECK_THROWS_AS(Catalog::load("/nonexistent/catalog.txt"), ParseError);
}

TEST_CASE("recipes") {
  const auto& cat = Catalog::builtin();
  CHECK(build_recipe("direct(cyclic(2),cyclic(6))").order() == 12);
  CHECK(build_recipe("semidirect(cyclic(3),cyclic(4),inv)").order() == 12);
  CHECK(is_isomorphic(build_recipe("semidirect(cyclic(3),cyclic(4),triv)"), named(Family::cyclic, 12)));
  CHECK(is_isomorphic(build_recipe("direct(cyclic(2),[18,4])", &cat), cat.get("[36,13]")));
  CHECK(build_recipe("perms(3:(0 1 2);(0 1))").order() == 6);
  CHECK_THROWS_AS(build_recipe("cyclic(8"), ParseError);
  CHECK_THROWS_AS(build_recipe("bogus(3)"), ParseError);
  CHECK_THROWS_AS(build_recipe("[12,1]"), UnknownLabel);
  CHECK_THROWS_AS(build_recipe("[99,9]", &cat), UnknownLabel);
  CHECK_THROWS_AS(build_recipe("dihedral(9)"), InvalidParameter);
  // Inversion needs an abelian N; pow:k needs a power map that is an automorphism.
  CHECK_THROWS_AS(build_recipe("semidirect(sym(3),cyclic(2),inv)"), Error);
  CHECK_THROWS_AS(build_recipe("semidirect(cyclic(6),cyclic(2),pow:2)"), Error);
}

TEST_CASE("auto:k recipes use the smallest index giving the group") {
  const auto& cat = Catalog::builtin();
  auto oracle = oracle_groups();
  const std::regex auto_re(R"(^(.*),auto:(\d+)\)$)");
  std::size_t checked = 0;
  for (const auto& e : cat.entries()) {
    std::smatch m;
    if (!std::regex_match(e.recipe, m, auto_re)) continue;
    CAPTURE(e.label);
    const int k = std::stoi(m[2]);
    const auto& target = oracle.at(e.label);
    const auto target_spec = order_spectrum(target);
    for (int j = 0; j < k; ++j) {
      try {
        auto g = build_recipe(m[1].str() + ",auto:" + std::to_string(j) + ")", &cat);
        if (order_spectrum(g) == target_spec) CHECK_FALSE(is_isomorphic(g, target));
      } catch (const Error&) {
      }
    }
    CHECK(is_isomorphic(build_recipe(e.recipe, &cat), target));
    ++checked;
  }
  CHECK(checked == 6);
}

TEST_CASE("pinning the actions of [24,8] and [72,43]") {
  const auto& cat = Catalog::builtin();
  // Every Z2-action on N; keep the products meeting the three-hexagon
  // conditions and sort them into isomorphism classes.
  auto classes = [&](const FiniteGroup& n) {
    auto z2 = named(Family::cyclic, 2);
    std::vector<Element> id(n.order());
    std::iota(id.begin(), id.end(), 0);
    std::vector<FiniteGroup> reps;
    for (const auto& a : automorphisms(n)) {
      bool involutive = true;
      for (Element x = 0; x < n.order(); ++x) involutive &= a[a[x]] == x;
      if (!involutive) continue;
      auto g = semidirect_product(n, z2, {id, a});
      if (!three_hexagon(g)) continue;
      bool seen = false;
      for (const auto& r : reps) seen = seen || is_isomorphic(r, g);
      if (!seen) reps.push_back(g);
    }
    return reps;
  };

  auto c24 = classes(direct_product(named(Family::cyclic, 6), named(Family::cyclic, 2)));
  REQUIRE(c24.size() == 2);
  std::set<std::string> spectra;
  for (const auto& g : c24) spectra.insert(order_spectrum(g).set_string());
  CHECK(spectra == std::set<std::string>{"{1,2,3,4,6}", "{1,2,3,6}"});
  for (const auto& g : c24) {
    if (order_spectrum(g).contains(4))
      CHECK(is_isomorphic(g, cat.get("[24,8]")));
    else
      CHECK(is_isomorphic(g, cat.get("[24,14]")));
  }

  auto c72 = classes(direct_product(named(Family::cyclic, 3), named(Family::alternating, 4)));
  REQUIRE(c72.size() == 1);
  CHECK(is_isomorphic(c72[0], cat.get("[72,43]")));
  CHECK(order_spectrum(c72[0]).set_string() == "{1,2,3,4,6}");
}

TEST_CASE("catalog-level properties") {
  const auto& cat = Catalog::builtin();
  for (std::size_t order : {12u, 18u, 36u})
    for (const auto& e : cat.enumerate_complete(order)) {
      CAPTURE(e.label);
      CHECK(cyclic_subgroups_of_order(cat.get(e.label), 6).size() != 2);
    }
  std::set<std::string> qualifying;
  for (const auto& e : cat.entries())
    if (three_hexagon(cat.get(e.label))) qualifying.insert(e.label);
  CHECK(qualifying == std::set<std::string>(table2_labels().begin(), table2_labels().end()));
  for (const auto& label : table1_labels()) {
    auto g = cat.get(label);
    if (g.order() == 16) CHECK(cyclic_subgroups_of_order(g, 8).size() == 1);
  }
}
