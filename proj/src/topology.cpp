#include "powergenus/topology.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "powergenus/error.hpp"

namespace pg {

// ---------------------------------------------------------------------------
// Blocks (Hopcroft-Tarjan, iterative)

std::vector<std::vector<Vertex>> block_vertex_sets(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (!is_connected(g)) throw Disconnected("blocks need a connected graph");
  if (n == 0) return {};
  if (n == 1) return {{0}};

  std::vector<std::size_t> disc(n, 0), low(n, 0);
  std::size_t timer = 0;
  std::vector<Graph::Edge> edge_stack;
  std::vector<std::vector<Vertex>> out;

  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  const Vertex none = static_cast<Vertex>(-1);
  std::vector<Frame> stack{{0, none, 0}};
  disc[0] = low[0] = ++timer;

  auto pop_block = [&](Vertex u, Vertex v) {
    std::set<Vertex> vs;
    while (!edge_stack.empty()) {
      auto e = edge_stack.back();
      edge_stack.pop_back();
      vs.insert(e.first);
      vs.insert(e.second);
      if ((e.first == u && e.second == v) || (e.first == v && e.second == u)) break;
    }
    out.emplace_back(vs.begin(), vs.end());
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nb = g.neighbors(f.v);
    if (f.next < nb.size()) {
      Vertex w = nb[f.next++];
      if (w == f.parent) continue;
      if (disc[w] == 0) {
        edge_stack.emplace_back(f.v, w);
        disc[w] = low[w] = ++timer;
        stack.push_back({w, f.v, 0});
      } else if (disc[w] < disc[f.v]) {
        edge_stack.emplace_back(f.v, w);
        low[f.v] = std::min(low[f.v], disc[w]);
      }
    } else {
      Vertex v = f.v, p = f.parent;
      stack.pop_back();
      if (p != none) {
        low[p] = std::min(low[p], low[v]);
        if (low[v] >= disc[p]) pop_block(p, v);
      }
    }
  }
  return out;
}

std::vector<Graph> blocks(const Graph& g) {
  std::vector<Graph> out;
  for (const auto& vs : block_vertex_sets(g)) out.push_back(induced(g, vs));
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

std::size_t ceil_div(long long num, long long den) {
  if (num <= 0) return 0;
  return static_cast<std::size_t>((num + den - 1) / den);
}

}  // namespace

std::size_t kn_genus(std::size_t n) {
  if (n < 3) return 0;
  const long long a = static_cast<long long>(n);
  return ceil_div((a - 3) * (a - 4), 12);
}

std::size_t kn_crosscap(std::size_t n) {
  if (n < 3) return 0;
  if (n == 7) return 3;
  const long long a = static_cast<long long>(n);
  return ceil_div((a - 3) * (a - 4), 6);
}

std::size_t kmn_genus(std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) return 0;
  return ceil_div(static_cast<long long>(m - 2) * static_cast<long long>(n - 2), 4);
}

std::size_t kmn_crosscap(std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) return 0;
  return ceil_div(static_cast<long long>(m - 2) * static_cast<long long>(n - 2), 2);
}

// ---------------------------------------------------------------------------
// Girth, cliques, bounds

bool is_forest(const Graph& g) {
  // Forest iff E = V - components.
  std::vector<Vertex> comp(g.vertex_count(), static_cast<Vertex>(-1));
  std::size_t components = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != static_cast<Vertex>(-1)) continue;
    ++components;
    std::vector<Vertex> st{s};
    comp[s] = s;
    while (!st.empty()) {
      Vertex v = st.back();
      st.pop_back();
      for (Vertex w : g.neighbors(v))
        if (comp[w] == static_cast<Vertex>(-1)) {
          comp[w] = s;
          st.push_back(w);
        }
    }
  }
  return g.edge_count() + components == g.vertex_count();
}

std::size_t girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = kInfiniteGirth;
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> parent(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInfiniteGirth);
    dist[s] = 0;
    parent[s] = s;
    std::deque<Vertex> q{s};
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      if (2 * dist[v] + 1 >= best) break;
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] == kInfiniteGirth) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push_back(w);
        } else if (parent[v] != w) {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

std::size_t clique_number(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  std::size_t best = 1;

  // Greedy colouring bound: candidates are coloured in order, and a branch
  // is cut once |clique| + colour <= best.
  std::function<void(std::size_t, std::vector<Vertex>)> expand =
      [&](std::size_t size, std::vector<Vertex> cand) {
        std::vector<std::vector<Vertex>> classes;
        for (Vertex v : cand) {
          bool placed = false;
          for (auto& cls : classes) {
            bool ok = std::none_of(cls.begin(), cls.end(),
                                   [&](Vertex u) { return g.has_edge(u, v); });
            if (ok) {
              cls.push_back(v);
              placed = true;
              break;
            }
          }
          if (!placed) classes.push_back({v});
        }
        std::vector<std::pair<Vertex, std::size_t>> ordered;
        for (std::size_t c = 0; c < classes.size(); ++c)
          for (Vertex v : classes[c]) ordered.emplace_back(v, c + 1);
        while (!ordered.empty()) {
          auto [v, colour] = ordered.back();
          if (size + colour <= best) return;
          ordered.pop_back();
          std::vector<Vertex> next;
          for (auto [u, _] : ordered)
            if (g.has_edge(u, v)) next.push_back(u);
          if (next.empty()) {
            best = std::max(best, size + 1);
          } else {
            expand(size + 1, next);
          }
        }
      };

  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  std::sort(all.begin(), all.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  expand(0, all);
  return best;
}

std::size_t euler_lower_bound(const Graph& g, Surface surface) {
  if (!is_connected(g)) throw Disconnected("euler bound needs a connected graph");
  if (is_forest(g)) return 0;
  const long long v = static_cast<long long>(g.vertex_count());
  const long long e = static_cast<long long>(g.edge_count());
  const long long f_max = (2 * e) / static_cast<long long>(girth(g));
  const long long euler_genus = 2 - v + e - f_max;  // lower bound on 2g (or g~)
  if (euler_genus <= 0) return 0;
  if (surface == Surface::orientable) return static_cast<std::size_t>((euler_genus + 1) / 2);
  return static_cast<std::size_t>(euler_genus);
}

// ---------------------------------------------------------------------------
// Planarity

PlanarityResult planarity(const Graph& g) {
  using namespace boost;
  using BGraph = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>,
                                property<edge_index_t, int>>;
  using EdgeDesc = graph_traits<BGraph>::edge_descriptor;

  BGraph bg(g.vertex_count());
  for (auto [u, v] : g.edges()) add_edge(u, v, bg);
  auto eidx = get(edge_index, bg);
  int k = 0;
  graph_traits<BGraph>::edge_iterator ei, ei_end;
  for (tie(ei, ei_end) = boost::edges(bg); ei != ei_end; ++ei) put(eidx, *ei, k++);

  using Embedding = std::vector<std::vector<EdgeDesc>>;
  Embedding embedding(num_vertices(bg));
  std::vector<EdgeDesc> kuratowski;

  PlanarityResult out;
  out.planar = boyer_myrvold_planarity_test(
      boyer_myrvold_params::graph = bg,
      boyer_myrvold_params::embedding = make_iterator_property_map(
          embedding.begin(), get(vertex_index, bg)),
      boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));

  if (out.planar) {
    out.rotation.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      for (const auto& e : embedding[v]) {
        auto s = static_cast<Vertex>(source(e, bg));
        auto t = static_cast<Vertex>(target(e, bg));
        out.rotation[v].push_back(s == v ? t : s);
      }
  } else {
    std::vector<std::size_t> deg(g.vertex_count(), 0);
    for (const auto& e : kuratowski) {
      auto s = static_cast<Vertex>(source(e, bg));
      auto t = static_cast<Vertex>(target(e, bg));
      out.kuratowski_edges.emplace_back(std::min(s, t), std::max(s, t));
      ++deg[s];
      ++deg[t];
    }
    std::sort(out.kuratowski_edges.begin(), out.kuratowski_edges.end());
    std::size_t deg4 = std::count_if(deg.begin(), deg.end(), [](std::size_t d) { return d >= 4; });
    out.kuratowski_kind = deg4 >= 5 ? "K5" : "K3,3";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simplification

SimplifyResult simplify(const Graph& input) {
  // Work on an adjacency-set copy; rebuild a compact Graph at the end.
  const std::size_t n = input.vertex_count();
  std::vector<std::set<Vertex>> adj(n);
  for (auto [u, v] : input.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<bool> alive(n, true);
  std::size_t alive_count = n;
  SimplifyResult out;

  bool changed = true;
  while (changed && alive_count > 1) {
    changed = false;
    for (Vertex w = 0; w < n && alive_count > 1; ++w) {
      if (!alive[w]) continue;
      const std::size_t d = adj[w].size();
      if (d == 1 || d == 0) {
        for (Vertex u : adj[w]) adj[u].erase(w);
        adj[w].clear();
        alive[w] = false;
        --alive_count;
        out.trace.push_back("delete leaf " + input.label(w));
        changed = true;
      } else if (d == 2) {
        Vertex a = *adj[w].begin(), b = *std::next(adj[w].begin());
        adj[a].erase(w);
        adj[b].erase(w);
        adj[w].clear();
        alive[w] = false;
        --alive_count;
        if (adj[a].count(b)) {
          out.trace.push_back("delete " + input.label(w) + " (parallel to edge " +
                              input.label(a) + "-" + input.label(b) + ")");
        } else {
          adj[a].insert(b);
          adj[b].insert(a);
          out.trace.push_back("smooth " + input.label(w) + " into edge " + input.label(a) +
                              "-" + input.label(b));
        }
        changed = true;
      }
    }
  }

  std::vector<Vertex> pos(n, static_cast<Vertex>(-1));
  std::vector<std::string> labels;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) {
      pos[v] = static_cast<Vertex>(labels.size());
      labels.push_back(input.label(v));
    }
  std::vector<Graph::Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v])
      for (Vertex w : adj[v])
        if (v < w) edges.emplace_back(pos[v], pos[w]);
  const std::size_t kept = labels.size();
  out.graph = Graph(kept, std::move(edges), std::move(labels));
  return out;
}

// ---------------------------------------------------------------------------
// Block composition

ComposedGenus compose_blocks(const std::vector<BlockGenus>& blocks) {
  ComposedGenus out;
  for (const auto& b : blocks) out.orientable += b.orientable;
  if (out.orientable == 0) {
    out.nonorientable = 0;
    return out;
  }
  const long long n = static_cast<long long>(blocks.size());
  bool simple = true;
  long long sum_crosscap = 0, sum_mu = 0;
  for (const auto& b : blocks) {
    const long long gamma = static_cast<long long>(b.orientable);
    const long long cross = b.orientable == 0 ? 1 : static_cast<long long>(b.nonorientable);
    simple = simple && cross == 2 * gamma + 1;
    sum_crosscap += cross;
    sum_mu += std::max(2 - 2 * gamma, 2 - cross);
  }
  out.orientably_simple = simple;
  out.nonorientable = static_cast<std::size_t>(simple ? 1 - n + sum_crosscap : 2 * n - sum_mu);
  return out;
}

}  // namespace pg
