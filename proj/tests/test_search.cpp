#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "powergenus/catalog.hpp"
#include "powergenus/embedding.hpp"
#include "powergenus/error.hpp"
#include "powergenus/search.hpp"
#include "powergenus/topology.hpp"

using namespace pg;

namespace {

SearchBudget plain() {
  SearchBudget b;
  b.use_subgraph_bounds = false;
  return b;
}

// Power graph of Z2 x Z6 restricted to `count` of its three hexagons.
Graph hexagons_of_z2z6(std::size_t count, bool with_involutions = true) {
  auto g = direct_product(named(Family::cyclic, 2), named(Family::cyclic, 6));
  auto hex = cyclic_subgroups_of_order(g, 6);
  REQUIRE(hex.size() == 3);
  std::set<Vertex> s;
  for (std::size_t i = 0; i < count; ++i)
    for (auto x : hex[i].members)
      if (with_involutions || element_order(g, x) != 2) s.insert(x);
  return induced(power_graph(g), {s.begin(), s.end()});
}

void check_certificate(const Graph& g, const GenusResult& r) {
  REQUIRE(r.upper_certificate);
  auto v = verify_certificate(make_certificate(g, r));
  CHECK(v.ok);
  CHECK(v.implied_genus == r.upper);
}

// Small graphs whose full rotation/sign space stays below a few 10^5 traces.
bool brute_force_size(const Graph& g) {
  double work = std::pow(2.0, static_cast<double>(g.edge_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (std::size_t k = 2; k < g.degree(v); ++k) work *= static_cast<double>(k);
  return work < 4e5;
}

}  // namespace

TEST_CASE("complete graphs against the closed forms") {
  for (std::size_t n = 3; n <= 7; ++n) {
    CAPTURE(n);
    auto g = complete_graph(n);
    auto r = genus_exact(g, plain());
    CHECK(r.exact());
    CHECK(r.upper == kn_genus(n));
    check_certificate(g, r);
    CHECK(euler_lower_bound(g, Surface::orientable) <= r.lower);
  }
  for (std::size_t n = 3; n <= 6; ++n) {
    CAPTURE(n);
    auto g = complete_graph(n);
    auto r = crosscap_exact(g, plain());
    CHECK(r.exact());
    CHECK(r.upper == kn_crosscap(n));
    check_certificate(g, r);
  }
  for (auto [m, n] : {std::pair{3u, 3u}, {3u, 4u}, {3u, 5u}, {3u, 6u}, {4u, 4u}}) {
    CAPTURE(m);
    CAPTURE(n);
    auto g = complete_bipartite(m, n);
    auto r = genus_exact(g, plain());
    CHECK(r.exact());
    CHECK(r.upper == kmn_genus(m, n));
    check_certificate(g, r);
  }
  for (auto [m, n] : {std::pair{3u, 3u}, {3u, 5u}}) {
    auto r = crosscap_exact(complete_bipartite(m, n), plain());
    CHECK(r.exact());
    CHECK(r.upper == kmn_crosscap(m, n));
  }
}

TEST_CASE("K7 has a 14-face torus embedding") {
  auto g = complete_graph(7);
  auto r = genus_exact(g);
  REQUIRE(r.upper_certificate);
  auto t = trace_faces(g, *r.upper_certificate);
  CHECK(t.faces == 14);
  CHECK(t.genus == 1);
}

TEST_CASE("K8 within the default budget") {
  auto r = genus_exact(complete_graph(8));
  CHECK(r.lower <= 2);
  CHECK(r.upper >= 2);
  if (r.exact()) CHECK(r.upper == 2);
}

TEST_CASE("search levels refuse the level below the formula") {
  auto b = plain();
  for (std::size_t n = 5; n <= 7; ++n) {
    auto o = search_level(complete_graph(n), Surface::orientable, kn_genus(n) - 1, b);
    CHECK(o.exhausted);
    CHECK_FALSE(o.found);
  }
  auto k7 = search_level(complete_graph(7), Surface::nonorientable, 2, b);
  CHECK(k7.exhausted);
  CHECK_FALSE(k7.found);
  auto hit = search_level(complete_graph(6), Surface::nonorientable, 1, b);
  CHECK(hit.found);
  REQUIRE(hit.embedding);
  CHECK(trace_faces(complete_graph(6), *hit.embedding).euler_genus <= 1);
}

TEST_CASE("search agrees with brute force over all rotations and signs") {
  std::mt19937 rng(2024);
  std::size_t compared = 0;
  std::vector<Graph> graphs{complete_graph(4), complete_bipartite(2, 3), complete_bipartite(3, 3)};
  for (int t = 0; t < 400 && graphs.size() < 40; ++t) {
    auto g = oracle::random_connected_graph(rng, 4 + t % 3, 6 + t % 5);
    if (brute_force_size(g)) graphs.push_back(g);
  }
  for (const auto& g : graphs) {
    if (!brute_force_size(g)) continue;
    auto o = genus_exact(g, plain());
    auto n = crosscap_exact(g, plain());
    REQUIRE(o.exact());
    REQUIRE(n.exact());
    CHECK(o.upper == oracle::brute_genus(g, true));
    CHECK(n.upper == oracle::brute_genus(g, false));
    ++compared;
  }
  CHECK(compared >= 20);
}

TEST_CASE("subgraph targets") {
  auto k36 = genus_exact(complete_bipartite(3, 6));
  CHECK(k36.exact());
  CHECK(k36.upper == 1);
  CHECK(kmn_genus(3, 8) == 2);

  auto delta = hexagons_of_z2z6(2);
  CHECK(delta.vertex_count() == 9);
  CHECK(delta.edge_count() == 23);
  auto dg = genus_exact(delta);
  CHECK(dg.exact());
  CHECK(dg.upper == 1);
  check_certificate(delta, dg);
  auto dc = crosscap_exact(delta);
  CHECK(dc.exact());
  CHECK(dc.upper == 2);
  CHECK(dc.lower_certificate == LowerCertificate::exhaustive_search);
  check_certificate(delta, dc);

  auto b1 = hexagons_of_z2z6(2, false);
  CHECK(b1.vertex_count() == 7);
  CHECK(b1.edge_count() == 17);
  auto bc = crosscap_exact(b1);
  CHECK(bc.lower >= 2);
  CHECK_FALSE(is_planar(b1));
}

TEST_CASE("budget exhaustion degrades to bounds") {
  auto delta = hexagons_of_z2z6(2);
  SearchBudget b;
  b.max_nodes = 1;
  auto r = crosscap_exact(delta, b);
  CHECK(r.budget_exhausted);
  CHECK_FALSE(r.lower == r.upper);
  CHECK(r.lower <= 2);
  CHECK(r.upper >= 2);
  CHECK(r.lower_certificate != LowerCertificate::exhaustive_search);

  SearchBudget t;
  t.total_seconds = 1e-9;
  auto q = crosscap_exact(delta, t);
  CHECK(q.budget_exhausted);
  CHECK(q.lower <= 2);
  CHECK(q.upper >= 2);
}

TEST_CASE("parallel workers give the same values") {
  auto delta = hexagons_of_z2z6(2);
  SearchBudget b;
  b.jobs = 2;
  auto r = crosscap_exact(delta, b);
  CHECK(r.exact());
  CHECK(r.upper == 2);
  check_certificate(delta, r);
  auto k = genus_exact(complete_bipartite(3, 6), b);
  CHECK(k.exact());
  CHECK(k.upper == 1);
  auto k7 = crosscap_exact(complete_graph(7), b);
  CHECK(k7.exact());
  CHECK(k7.upper == 3);
}

TEST_CASE("planar pieces hanging off an edge are peeled and lifted") {
  // K6 with a K4 glued onto edge 0-1 and a 5-wheel glued onto edge 2-3.
  std::vector<Graph::Edge> e = complete_graph(6).edges();
  for (auto x : std::vector<Graph::Edge>{{0, 6}, {1, 6}, {0, 7}, {1, 7}, {6, 7}}) e.push_back(x);
  for (auto x : std::vector<Graph::Edge>{{2, 8}, {8, 9}, {9, 10}, {10, 3}, {2, 11}, {3, 11}, {8, 11},
                                         {9, 11}, {10, 11}})
    e.push_back(x);
  Graph g(12, e);
  auto o = genus_exact(g);
  CHECK(o.exact());
  CHECK(o.upper == 1);
  check_certificate(g, o);
  auto n = crosscap_exact(g);
  CHECK(n.exact());
  CHECK(n.upper == 1);
  check_certificate(g, n);

  // Power graphs of D16 and Q16 reduce to a K8 with planar pieces.
  for (const auto* label : {"[16,8]", "[16,9]"}) {
    auto pg = power_graph(Catalog::builtin().get(label));
    std::size_t genus = 0;
    for (const auto& b : blocks(pg)) {
      auto r = genus_exact(b);
      REQUIRE(r.exact());
      check_certificate(b, r);
      genus += r.upper;
    }
    CHECK(genus == 2);
  }
}

TEST_CASE("structural properties on random graphs") {
  std::mt19937 rng(99);
  for (int t = 0; t < 60; ++t) {
    auto g = oracle::random_connected_graph(rng, 5 + t % 4, 7 + t % 6);  // at most 12 edges
    auto r = genus_exact(g);
    REQUIRE(r.exact());
    CHECK(is_planar(g) == (r.upper == 0));
    CHECK(euler_lower_bound(g, Surface::orientable) <= r.lower);
    auto c = crosscap_exact(g);
    REQUIRE(c.exact());
    CHECK(c.upper <= 2 * r.upper + 1);
    auto s = simplify(g).graph;
    if (s.edge_count() > 0) {
      CHECK(genus_exact(s).upper == r.upper);
      CHECK(crosscap_exact(s).upper == c.upper);
    } else {
      CHECK(r.upper == 0);
    }
  }
}

TEST_CASE("genus is additive over blocks") {
  std::mt19937 rng(5);
  const std::vector<Graph> parts{complete_graph(5), complete_bipartite(3, 3), complete_graph(4),
                                 complete_bipartite(3, 4)};
  for (int t = 0; t < 8; ++t) {
    const auto& a = parts[rng() % parts.size()];
    const auto& b = parts[rng() % parts.size()];
    // Identify vertex 0 of b with vertex 0 of a.
    const Vertex shift = static_cast<Vertex>(a.vertex_count() - 1);
    std::vector<Graph::Edge> e = a.edges();
    for (auto [u, v] : b.edges()) e.push_back({u ? u + shift : 0, v ? v + shift : 0});
    Graph g(a.vertex_count() + b.vertex_count() - 1, e);
    REQUIRE(blocks(g).size() == 2);
    CAPTURE(g.edge_count());
    auto whole = genus_exact(g);
    auto ga = genus_exact(a), gb = genus_exact(b);
    REQUIRE(whole.exact());
    CHECK(whole.upper == ga.upper + gb.upper);
    auto composed = compose_blocks({{ga, crosscap_exact(a)}, {gb, crosscap_exact(b)}});
    CHECK(composed.orientable == whole.upper);
    CHECK(composed.nonorientable == crosscap_exact(g).upper);
  }
}

TEST_CASE("compose_blocks over search results") {
  auto k5 = complete_graph(5);
  auto pair = std::make_pair(genus_exact(k5), crosscap_exact(k5));
  auto c = compose_blocks({pair, pair, pair});
  CHECK(c.orientable == 3);
  CHECK(c.nonorientable == 3);
  SearchBudget tiny;
  tiny.max_nodes = 1;
  auto partial = crosscap_exact(hexagons_of_z2z6(2), tiny);
  REQUIRE_FALSE(partial.exact());
  CHECK_THROWS_AS(compose_blocks({pair, {genus_exact(k5), partial}}), InexactInput);
}

TEST_CASE("certificates") {
  auto g = complete_bipartite(3, 6);
  auto r = genus_exact(g);
  auto c = make_certificate(g, r);
  std::stringstream ss;
  write_certificate(ss, c);
  auto back = read_certificate(ss);
  auto v = verify_certificate(back);
  CHECK(v.ok);
  CHECK(v.implied_genus == 1);

  auto tampered = back;
  std::swap(tampered.embedding.rotation.order[0][0], tampered.embedding.rotation.order[0][1]);
  tampered.claimed_genus = 1;
  auto tv = verify_certificate(tampered);
  if (tv.ok) CHECK(tv.implied_genus == 1);
  tampered.claimed_genus = 0;
  CHECK_FALSE(verify_certificate(tampered).ok);

  auto n = crosscap_exact(hexagons_of_z2z6(2));
  auto nc = make_certificate(hexagons_of_z2z6(2), n);
  CHECK(nc.surface == Surface::nonorientable);
  std::stringstream ns;
  write_certificate(ns, nc);
  CHECK(ns.str().find("signs") != std::string::npos);
  CHECK(verify_certificate(read_certificate(ns)).ok);
}

TEST_CASE("errors") {
  auto two = disjoint_union(complete_graph(3), complete_graph(3));
  CHECK_THROWS_AS(genus_exact(two), Disconnected);
  CHECK_THROWS_AS(crosscap_exact(two), Disconnected);
}
