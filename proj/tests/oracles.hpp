#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the Graph and FiniteGroup containers.

#include <algorithm>
#include <functional>
#include <tuple>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "powergenus/graph.hpp"
#include "powergenus/group.hpp"

namespace oracle {

inline std::size_t order_of(const pg::FiniteGroup& g, pg::Element x) {
  std::size_t k = 1;
  for (pg::Element y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

inline std::set<pg::Element> powers(const pg::FiniteGroup& g, pg::Element x) {
  std::set<pg::Element> s{0};
  for (pg::Element y = x; y != 0; y = g.mul(y, x)) s.insert(y);
  return s;
}

inline std::set<std::pair<pg::Vertex, pg::Vertex>> power_edges(const pg::FiniteGroup& g) {
  std::set<std::pair<pg::Vertex, pg::Vertex>> e;
  for (pg::Element x = 0; x < g.order(); ++x)
    for (pg::Element y : powers(g, x))
      if (y != x) e.insert({std::min(x, y), std::max(x, y)});
  return e;
}

/// Faces of a signed rotation given as neighbour lists; signs keyed by edge.
/// Independent walk: state (u, v, s) = travelling u->v with orientation s.
inline std::size_t count_faces(const std::vector<std::vector<pg::Vertex>>& rot,
                               const std::function<int(pg::Vertex, pg::Vertex)>& sign) {
  struct St {
    pg::Vertex u, v;
    int s;
    bool operator<(const St& o) const {
      return std::tie(u, v, s) < std::tie(o.u, o.v, o.s);
    }
  };
  std::set<St> seen;
  std::size_t orbits = 0;
  for (pg::Vertex u = 0; u < rot.size(); ++u)
    for (pg::Vertex v : rot[u])
      for (int s : {1, -1}) {
        St st{u, v, s};
        if (seen.count(st)) continue;
        ++orbits;
        while (!seen.count(st)) {
          seen.insert(st);
          const int s2 = st.s * sign(st.u, st.v);
          const auto& r = rot[st.v];
          const auto i = std::find(r.begin(), r.end(), st.u) - r.begin();
          const auto n = static_cast<long>(r.size());
          const long j = s2 == 1 ? (i + 1) % n : (i - 1 + n) % n;
          st = St{st.v, r[j], s2};
        }
      }
  return orbits / 2;
}

/// Minimum Euler genus over all rotations (all signs + when orientable,
/// every signature otherwise), for tiny graphs only. For the nonorientable
/// case returns the least crosscap number over nonorientable signatures and
/// 2g+1 for orientable ones.
inline std::size_t brute_genus(const pg::Graph& g, bool orientable) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  std::vector<std::vector<pg::Vertex>> rot(n);
  for (pg::Vertex v = 0; v < n; ++v) rot[v] = g.neighbors(v);
  std::size_t best = static_cast<std::size_t>(-1);
  const long chi_base = static_cast<long>(n) - static_cast<long>(m);
  const auto& edges = g.edges();
  auto edge_index = [&](pg::Vertex a, pg::Vertex b) {
    return std::lower_bound(edges.begin(), edges.end(), std::make_pair(std::min(a, b), std::max(a, b))) -
           edges.begin();
  };
  // Balanced signature iff a switching makes every sign +.
  auto balanced = [&](std::uint64_t mask) {
    std::vector<int> side(n, 0);
    side[0] = 1;
    std::vector<pg::Vertex> stack{0};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : g.neighbors(u)) {
        const int s = (mask >> edge_index(u, w)) & 1 ? -1 : 1;
        if (!side[w]) {
          side[w] = side[u] * s;
          stack.push_back(w);
        } else if (side[w] != side[u] * s) {
          return false;
        }
      }
    }
    return true;
  };
  std::function<void(pg::Vertex)> rec = [&](pg::Vertex v) {
    if (v == n) {
      const std::uint64_t masks = orientable ? 1 : (std::uint64_t{1} << m);
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        auto sign = [&](pg::Vertex a, pg::Vertex b) {
          return (mask >> edge_index(a, b)) & 1 ? -1 : 1;
        };
        const long chi = chi_base + static_cast<long>(count_faces(rot, sign));
        std::size_t value;
        if (balanced(mask)) {
          const std::size_t genus = static_cast<std::size_t>((2 - chi) / 2);
          value = orientable ? genus : 2 * genus + 1;
          if (!orientable && genus == 0) value = 0;
        } else {
          value = static_cast<std::size_t>(2 - chi);
        }
        best = std::min(best, value);
      }
      return;
    }
    auto& r = rot[v];
    if (r.size() <= 2) {
      rec(v + 1);
      return;
    }
    std::sort(r.begin() + 1, r.end());
    do rec(v + 1);
    while (std::next_permutation(r.begin() + 1, r.end()));
  };
  rec(0);
  return best;
}

inline pg::Graph random_connected_graph(std::mt19937& rng, std::size_t n, std::size_t m) {
  std::vector<pg::Graph::Edge> e;
  for (pg::Vertex v = 1; v < n; ++v)
    e.emplace_back(std::uniform_int_distribution<pg::Vertex>(0, v - 1)(rng), v);
  std::set<pg::Graph::Edge> have(e.begin(), e.end());
  std::size_t guard = 0;
  while (have.size() < m && guard++ < 10000) {
    pg::Vertex a = std::uniform_int_distribution<pg::Vertex>(0, n - 1)(rng);
    pg::Vertex b = std::uniform_int_distribution<pg::Vertex>(0, n - 1)(rng);
    if (a == b) continue;
    have.insert({std::min(a, b), std::max(a, b)});
  }
  return pg::Graph(n, std::vector<pg::Graph::Edge>(have.begin(), have.end()));
}

}  // namespace oracle
