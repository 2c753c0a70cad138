#include "powergenus/graph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "powergenus/error.hpp"

namespace pg {

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidVertex("edge endpoint out of range");
    if (u == v) throw InvalidVertex("loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adj_.assign(n, {});
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  if (labels_.empty()) {
    labels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != n) {
    throw InvalidParameter("label count does not match vertex count");
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.vertex_count();
}

Graph induced(const Graph& g, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  const Vertex none = static_cast<Vertex>(-1);
  std::vector<Vertex> pos(g.vertex_count(), none);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.vertex_count())
      throw InvalidVertex("vertex " + std::to_string(vertices[i]) + " not in graph");
    pos[vertices[i]] = static_cast<Vertex>(i);
    labels.push_back(g.label(vertices[i]));
  }
  std::vector<Graph::Edge> edges;
  for (auto [u, v] : g.edges())
    if (pos[u] != none && pos[v] != none) edges.emplace_back(pos[u], pos[v]);
  return Graph(vertices.size(), std::move(edges), std::move(labels));
}

Graph remove_vertices(const Graph& g, const std::vector<Vertex>& vertices) {
  std::vector<bool> drop(g.vertex_count(), false);
  for (Vertex v : vertices) {
    if (v >= g.vertex_count()) throw InvalidVertex("vertex not in graph");
    drop[v] = true;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced(g, keep);
}

Graph remove_edges(const Graph& g, const std::vector<Graph::Edge>& edges) {
  std::vector<Graph::Edge> drop;
  for (auto [u, v] : edges) drop.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(drop.begin(), drop.end());
  std::vector<Graph::Edge> keep;
  for (const auto& e : g.edges())
    if (!std::binary_search(drop.begin(), drop.end(), e)) keep.push_back(e);
  return Graph(g.vertex_count(), std::move(keep), g.labels());
}

Graph complete_graph(std::size_t n) {
  std::vector<Graph::Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph complete_bipartite(std::size_t m, std::size_t n) {
  std::vector<Graph::Edge> edges;
  for (Vertex u = 0; u < m; ++u)
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(u, static_cast<Vertex>(m + v));
  return Graph(m + n, std::move(edges));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Graph::Edge> edges = a.edges();
  const auto off = static_cast<Vertex>(a.vertex_count());
  for (auto [u, v] : b.edges()) edges.emplace_back(u + off, v + off);
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) labels.push_back(l);
  // Keep labels unique when both sides use default numbering.
  std::map<std::string, int> seen;
  for (const auto& l : labels) ++seen[l];
  bool clash = std::any_of(seen.begin(), seen.end(), [](const auto& kv) { return kv.second > 1; });
  if (clash) labels.clear();
  return Graph(a.vertex_count() + b.vertex_count(), std::move(edges), std::move(labels));
}

Graph join_apex(const Graph& g) {
  std::vector<Graph::Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(u + 1, v + 1);
  for (Vertex v = 0; v < g.vertex_count(); ++v) edges.emplace_back(0, v + 1);
  return Graph(g.vertex_count() + 1, std::move(edges));
}

std::vector<std::string> element_labels(const FiniteGroup& g) {
  std::vector<std::string> labels(g.order());
  std::map<std::size_t, std::size_t> running;
  for (Element x = 0; x < g.order(); ++x) {
    if (x == g.identity()) {
      labels[x] = "e";
      continue;
    }
    const std::size_t k = element_order(g, x);
    const std::size_t idx = ++running[k];
    switch (k) {
      case 2: labels[x] = "a" + std::to_string(idx); break;
      case 3: labels[x] = "g" + std::to_string(idx); break;
      case 6: labels[x] = "f" + std::to_string(idx); break;
      default: labels[x] = "o" + std::to_string(k) + "_" + std::to_string(idx); break;
    }
  }
  return labels;
}

Graph power_graph(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Graph::Edge> edges;
  for (Element x = 0; x < n; ++x) {
    // Every power of x other than x itself is adjacent to x.
    for (Element y = g.mul(x, x); y != x; y = g.mul(y, x)) edges.emplace_back(x, y);
  }
  return Graph(n, std::move(edges), element_labels(g));
}

Graph hexagon_union_graph(const FiniteGroup& g) {
  auto subs = cyclic_subgroups_of_order(g, 6);
  if (subs.empty()) throw NoOrderSixSubgroup("group has no cyclic subgroup of order 6");
  ElementSet all = subs.front();
  for (const auto& s : subs) all = set_union(all, s);
  return induced(power_graph(g), std::vector<Vertex>(all.members.begin(), all.members.end()));
}

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto degree_seq = [](const Graph& g) {
    std::vector<std::size_t> d;
    for (Vertex v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degree_seq(a) != degree_seq(b)) return false;

  // Order a's vertices so each one (after the first) has an earlier neighbour.
  std::vector<Vertex> order;
  std::vector<bool> placed(n, false);
  while (order.size() < n) {
    Vertex best = static_cast<Vertex>(n);
    std::size_t best_conn = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      std::size_t conn = 0;
      for (Vertex w : a.neighbors(v)) conn += placed[w];
      if (best == n || conn > best_conn ||
          (conn == best_conn && a.degree(v) > a.degree(best))) {
        best = v;
        best_conn = conn;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }

  const Vertex none = static_cast<Vertex>(-1);
  std::vector<Vertex> map(n, none);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == n) return true;
    Vertex v = order[k];
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || b.degree(w) != a.degree(v)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        Vertex u = order[i];
        ok = a.has_edge(u, v) == b.has_edge(map[u], w);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (rec(k + 1)) return true;
      used[w] = false;
      map[v] = none;
    }
    return false;
  };
  return rec(0);
}

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::string line;
  auto next = [&](std::string& out) {
    while (std::getline(is, out)) {
      auto p = out.find_first_not_of(" \t\r");
      if (p == std::string::npos || out[p] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next(line)) throw ParseError("edge list: missing 'n m' header");
  std::istringstream hs(line);
  long long n = -1, m = -1;
  if (!(hs >> n >> m) || n < 0 || m < 0) throw ParseError("edge list: bad header '" + line + "'");
  std::vector<Graph::Edge> edges;
  for (long long i = 0; i < m; ++i) {
    if (!next(line)) throw ParseError("edge list: expected " + std::to_string(m) + " edges");
    std::istringstream es(line);
    long long u, v;
    if (!(es >> u >> v) || u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw ParseError("edge list: bad edge '" + line + "'");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  Graph g(static_cast<std::size_t>(n), std::move(edges));
  if (g.edge_count() != static_cast<std::size_t>(m))
    throw ParseError("edge list: duplicate edges");
  return g;
}

void write_dot(std::ostream& os, const Graph& g, const std::string& name) {
  os << "graph \"" << name << "\" {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    os << "  " << v << " [label=\"" << g.label(v) << "\"];\n";
  for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
}

}  // namespace pg
