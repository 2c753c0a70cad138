#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "powergenus/catalog.hpp"
#include "powergenus/classifier.hpp"
#include "powergenus/error.hpp"

using namespace pg;

namespace {

FiniteGroup z2z6() { return direct_product(named(Family::cyclic, 2), named(Family::cyclic, 6)); }

std::vector<std::string> rule_ids(const Verdict& v) {
  std::vector<std::string> out;
  for (const auto& s : v.trail) out.push_back(s.rule_id);
  return out;
}

bool has_rule(const Verdict& v, const std::string& id) {
  auto ids = rule_ids(v);
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

}  // namespace

TEST_CASE("reduction sets") {
  auto q16 = named(Family::dicyclic, 4);
  auto r = reduction_set(q16);
  CHECK(r.valid);
  CHECK(r.set.size() == 8);
  REQUIRE(r.subgroups.size() == 1);
  CHECK(r.subgroups[0] == cyclic_subgroups_of_order(q16, 8)[0]);
  CHECK(r.complement_spectrum.set_string() == "{4}");

  auto z = reduction_set(z2z6());
  CHECK(z.valid);
  CHECK(z.set.size() == 12);
  CHECK(z.subgroups.size() == 3);

  auto s3 = reduction_set(named(Family::symmetric, 3));
  CHECK(s3.set.members == std::vector<Element>{0});
  CHECK(s3.subgroups.empty());

  // S is a union of subgroups and its complement avoids orders outside {2,3,4}.
  for (const auto& e : Catalog::builtin().entries()) {
    auto g = Catalog::builtin().get(e.label);
    auto rs = reduction_set(g);
    for (const auto& h : rs.subgroups) CHECK(is_subgroup(g, h.members));
    if (rs.valid) CHECK(rs.complement_spectrum.subset_of({2, 3, 4}));
  }
}

TEST_CASE("orientable verdicts") {
  auto z8 = classify_orientable(named(Family::cyclic, 8));
  CHECK(z8.orientable == GenusClass::two);
  CHECK(z8.table1_label == std::optional<std::string>("[8,1]"));
  CHECK(has_rule(z8, "cyclic-power-graph"));

  auto a = classify_orientable(z2z6());
  CHECK(a.orientable == GenusClass::two);
  CHECK(a.table1_label == std::optional<std::string>("[12,5]"));
  CHECK(has_rule(a, "three-hexagons-genus"));
  bool saw_profile = false;
  for (const auto& s : a.trail)
    if (s.rule_id == "hexagon-intersection-uniform") {
      CHECK(s.inputs["count"] == 3);
      CHECK(s.inputs["pairwise"] == Json::array({3, 3, 3}));
      saw_profile = true;
    }
  CHECK(saw_profile);

  auto z12 = classify_orientable(named(Family::cyclic, 12));
  CHECK(z12.orientable == GenusClass::at_least_three);
  CHECK(z12.lower == 3);
  CHECK(rule_ids(z12).back() == "cyclic-power-graph");

  auto s3 = classify_orientable(named(Family::symmetric, 3));
  CHECK(s3.orientable == GenusClass::planar);
  CHECK(s3.category() == "planar");
  CHECK(classify_orientable(named(Family::cyclic, 1)).orientable == GenusClass::planar);

  auto z7 = classify_orientable(named(Family::cyclic, 7));
  CHECK(z7.orientable == GenusClass::other_with_bounds);
  CHECK(z7.lower == 1);
  CHECK(z7.upper == std::optional<std::size_t>(1));

  CHECK_THROWS_AS(classify_orientable(named(Family::cyclic, 145)), OrderCapExceeded);
  CHECK_THROWS_AS(classify_orientable(named(Family::cyclic, 20), Catalog::builtin(), 16), OrderCapExceeded);
}

TEST_CASE("nonorientable verdicts") {
  auto a = classify_nonorientable(z2z6());
  CHECK(a.nonorientable == CrosscapClass::not_two);
  CHECK(has_rule(a, "hexagons-crosscap"));
  auto z8 = classify_nonorientable(named(Family::cyclic, 8));
  CHECK(z8.nonorientable == CrosscapClass::not_two);
  CHECK(has_rule(z8, "cyclic-crosscap"));
  auto z4 = classify_nonorientable(named(Family::cyclic, 4));
  CHECK(z4.nonorientable == CrosscapClass::planar);
  CHECK(rule_ids(z4) == std::vector<std::string>{"planarity-criterion"});
  auto a5 = classify_nonorientable(named(Family::alternating, 5));
  CHECK(a5.category() == "exact(6)");
  CHECK_THROWS_AS(classify_nonorientable(named(Family::cyclic, 145)), OrderCapExceeded);
}

TEST_CASE("catalog sweep") {
  std::set<std::string> two;
  for (const auto& e : Catalog::builtin().entries()) {
    CAPTURE(e.label);
    auto g = Catalog::builtin().get(e.label);
    auto o = classify_orientable(g);
    auto n = classify_nonorientable(g);
    CHECK_FALSE(o.trail.empty());
    CHECK_FALSE(n.trail.empty());
    if (o.orientable == GenusClass::two) {
      two.insert(e.label);
      CHECK(o.table1_label == std::optional<std::string>(e.label));
    }
    CHECK(n.category() != "exact(2)");
    CHECK_FALSE((n.nonorientable == CrosscapClass::exact && n.lower == 2));
    if (o.upper) CHECK(o.lower <= *o.upper);

    const bool planar = is_planar(power_graph(g));
    CHECK(planar == order_spectrum(g).subset_of({1, 2, 3, 4}));
    CHECK(planar == (o.orientable == GenusClass::planar));
    CHECK(planar == (n.nonorientable == CrosscapClass::planar));

    for (const auto* v : {&o, &n})
      for (const auto& s : v->trail) {
        CAPTURE(s.rule_id);
        CHECK(replay_step(s) == s.conclusion);
      }
  }
  CHECK(two == std::set<std::string>(table1_labels().begin(), table1_labels().end()));
}

TEST_CASE("replay rejects altered steps") {
  auto v = classify_orientable(z2z6());
  auto step = v.trail.back();
  step.inputs["label"] = "[18,3]";
  CHECK(replay_step(step) != v.trail.back().conclusion);
  CertificateStep unknown{"no-such-rule", Json::object(), ""};
  CHECK_THROWS_AS(replay_step(unknown), UnknownRule);
}

TEST_CASE("rule registry and desk checks") {
  std::set<std::string> ids;
  for (const auto& r : rule_registry()) {
    CHECK_FALSE(r.statement.empty());
    ids.insert(r.id);
  }
  CHECK(ids.size() == rule_registry().size());
  CHECK(ids.size() == 16);

  auto l = verify_rule("no-two-hexagons");
  CHECK(l.status == RuleStatus::pass);
  CHECK(l.scanned == 24);
  CHECK(l.summary() == "PASS: 0 witnesses in 24 groups scanned");

  auto t = verify_rule("three-hexagon-groups");
  CHECK(t.status == RuleStatus::pass);
  CHECK(t.witnesses.empty());
  REQUIRE(t.notes.size() == 1);
  for (const auto& label : table2_labels()) CHECK(t.notes[0].find(label) != std::string::npos);
  CHECK(table2_spectrum_column().size() == 7);
  for (const auto& label : table2_labels())
    CHECK(table2_spectrum_column().at(label) == order_spectrum(Catalog::builtin().get(label)).set_string());

  auto o = verify_rule("two-group-octic");
  CHECK(o.status == RuleStatus::pass);
  CHECK(o.witnesses.empty());
  REQUIRE(o.notes.size() == 1);
  CHECK(o.notes[0].substr(o.notes[0].rfind('{')) == "{[16,7],[16,8],[16,9],[8,1]}");

  for (const auto* id : {"planarity-criterion", "hexagon-intersection-uniform", "no-four-hexagon-pairing",
                         "cyclic-crosscap", "block-composition", "sylow-five-seven",
                         "octic-with-order-three", "hexagons-crosscap"}) {
    CAPTURE(id);
    CHECK(verify_rule(id).status == RuleStatus::pass);
  }
  CHECK_THROWS_AS(verify_rule("not-a-rule"), UnknownRule);
}

TEST_CASE("three-hexagon conditions") {
  CHECK(three_hexagon_conditions(z2z6()));
  CHECK_FALSE(three_hexagon_conditions(named(Family::cyclic, 12)));
  CHECK_FALSE(three_hexagon_conditions(Catalog::builtin().get("[36,14]")));
}

TEST_CASE("cross-validation against the search") {
  SearchBudget b;
  b.max_seconds = 60;
  auto s3 = cross_validate(named(Family::symmetric, 3), b);
  CHECK(s3.orientable == Agreement::agree);
  CHECK(s3.nonorientable == Agreement::agree);
  CHECK(s3.engine.orientable_upper == 0);

  auto z7 = cross_validate(named(Family::cyclic, 7), b);
  CHECK(z7.engine.orientable_exact);
  CHECK(z7.engine.orientable_upper == kn_genus(7));
  CHECK(z7.orientable == Agreement::agree);
  CHECK(z7.nonorientable != Agreement::mismatch);

  // The genus-1 level of the three-hexagon union is not exhausted in a few
  // seconds, so only bounds are expected here.
  b.max_seconds = 5;
  auto a = cross_validate(z2z6(), b);
  CHECK(a.orientable != Agreement::mismatch);
  CHECK(a.nonorientable != Agreement::mismatch);
  CHECK(a.engine.orientable_lower >= 1);
  CHECK(a.engine.orientable_upper == 2);
}

TEST_CASE("records keep a fixed field order") {
  auto g = z2z6();
  auto rec = verdict_record("[12,5]", g, classify_orientable(g), classify_nonorientable(g));
  std::vector<std::string> keys;
  for (auto it = rec.begin(); it != rec.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"label", "order", "spectrum", "six_profile", "orientable",
                                         "nonorientable"});
  CHECK(rec["orientable"]["category"] == "two");
  CHECK(rec["orientable"]["table1_label"] == "[12,5]");
  CHECK(rec["six_profile"] == "(3; 3,3,3)");
  CHECK(rec.dump() == verdict_record("[12,5]", g, classify_orientable(g), classify_nonorientable(g)).dump());
  auto step = to_json(classify_orientable(g).trail.front());
  CHECK(step.begin().key() == "rule");
}
