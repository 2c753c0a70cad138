#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "powergenus/group.hpp"

namespace pg {

using Vertex = std::uint32_t;

/// Simple undirected graph with labeled vertices. Edges are stored as
/// (u, v) with u < v, sorted, so iteration order is deterministic.
class Graph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  Graph() = default;
  /// Loops are rejected; duplicate edges (in either orientation) collapse.
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;
  const std::string& label(Vertex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::string> labels_;
};

bool is_connected(const Graph& g);
/// Subgraph induced by `vertices`, renumbered in the given (sorted) order;
/// labels carry over. Throws InvalidVertex for out-of-range vertices.
Graph induced(const Graph& g, std::vector<Vertex> vertices);
Graph remove_vertices(const Graph& g, const std::vector<Vertex>& vertices);
Graph remove_edges(const Graph& g, const std::vector<Graph::Edge>& edges);

Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t m, std::size_t n);
Graph disjoint_union(const Graph& a, const Graph& b);
/// K1 + g: a new vertex 0 joined to every vertex of g.
Graph join_apex(const Graph& g);

/// Vertex x is labelled by the element's name; edges join distinct x, y
/// when one lies in the cyclic subgroup generated by the other.
Graph power_graph(const FiniteGroup& g);
/// Subgraph of the power graph induced by the union of all cyclic
/// subgroups of order 6. Throws NoOrderSixSubgroup.
Graph hexagon_union_graph(const FiniteGroup& g);
/// Element names used as vertex labels: "e" for the identity, then per
/// order in index order a1, a2, ... (order 2), g1, ... (order 3), f1, ...
/// (order 6) and o<k>_<i> for any other order k.
std::vector<std::string> element_labels(const FiniteGroup& g);

/// Backtracking graph isomorphism for small graphs (degree-filtered).
bool graphs_isomorphic(const Graph& a, const Graph& b);

// Exports. Edge list: first line "n m", then one "u v" per edge.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
void write_dot(std::ostream& os, const Graph& g, const std::string& name = "G");

}  // namespace pg
