#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "powergenus/graph.hpp"

namespace pg {

enum class Surface { orientable, nonorientable };

inline constexpr std::size_t kInfiniteGirth = std::numeric_limits<std::size_t>::max();

/// Vertex sets of the biconnected components (blocks). Every edge lies in
/// exactly one block; bridges are K2 blocks. Throws Disconnected.
std::vector<std::vector<Vertex>> block_vertex_sets(const Graph& g);
std::vector<Graph> blocks(const Graph& g);

// Closed-form genus of complete and complete bipartite graphs.
std::size_t kn_genus(std::size_t n);
std::size_t kn_crosscap(std::size_t n);
std::size_t kmn_genus(std::size_t m, std::size_t n);
std::size_t kmn_crosscap(std::size_t m, std::size_t n);

/// kInfiniteGirth for forests.
std::size_t girth(const Graph& g);
std::size_t clique_number(const Graph& g);
bool is_forest(const Graph& g);

/// Smallest genus allowed by V - E + f = 2 - 2g (resp. 2 - g) with
/// f <= floor(2E / girth). Forests give 0. Throws Disconnected.
std::size_t euler_lower_bound(const Graph& g, Surface surface);

struct PlanarityResult {
  bool planar = false;
  /// Planar case: clockwise neighbour order per vertex.
  std::vector<std::vector<Vertex>> rotation;
  /// Nonplanar case: edges of a Kuratowski subdivision and its kind.
  std::vector<Graph::Edge> kuratowski_edges;
  std::string kuratowski_kind;  // "K5" or "K3,3"
};

PlanarityResult planarity(const Graph& g);
inline bool is_planar(const Graph& g) { return planarity(g).planar; }

struct SimplifyResult {
  Graph graph;
  std::vector<std::string> trace;
};

/// Repeatedly deletes degree-1 vertices and suppresses degree-2 vertices
/// (a degree-2 vertex whose neighbours are already adjacent is deleted).
/// Both moves preserve orientable and nonorientable genus.
SimplifyResult simplify(const Graph& g);

struct BlockGenus {
  std::size_t orientable = 0;
  std::size_t nonorientable = 0;
};

struct ComposedGenus {
  std::size_t orientable = 0;
  std::size_t nonorientable = 0;
  /// True when the "every block is orientably simple" branch applied.
  bool orientably_simple = false;
};

/// Genus of a connected graph from the genus of its blocks. Nonorientable
/// genus of a planar block is taken as 0 on input; inside the composition
/// planar blocks count as projective-planar (crosscap 1), which is the
/// convention the block formula needs. A graph with only planar blocks
/// composes to 0.
ComposedGenus compose_blocks(const std::vector<BlockGenus>& blocks);

}  // namespace pg
