#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powergenus/embedding.hpp"
#include "powergenus/graph.hpp"
#include "powergenus/topology.hpp"

namespace pg {

/// Per (graph, genus level) limits of the exhaustive search.
struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 600.0;
  /// Workers sharing the top-level branches (rotations at the first vertex).
  unsigned jobs = 1;
  /// Seed the lower bound with the clique bound (closed forms on the
  /// largest clique). Off when comparing search against closed forms.
  bool use_subgraph_bounds = true;
  /// Wall-clock cap over all levels of one genus_exact/crosscap_exact call;
  /// 0 means no cap beyond the per-level limits.
  double total_seconds = 0.0;
};

enum class LowerCertificate { euler_bound, formula_oracle, subgraph_bound, exhaustive_search };

std::string to_string(LowerCertificate c);

struct GenusResult {
  Surface surface = Surface::orientable;
  std::size_t lower = 0;
  std::size_t upper = 0;
  LowerCertificate lower_certificate = LowerCertificate::euler_bound;
  /// Set when lower_certificate is exhaustive_search.
  std::uint64_t search_budget_nodes = 0;
  bool search_completed = false;
  /// Embedding realising `upper`, with the traced face count.
  std::optional<SignedRotationSystem> upper_certificate;
  std::size_t upper_faces = 0;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  /// True when some level ran out of budget.
  bool budget_exhausted = false;

  bool exact() const { return lower == upper && upper_certificate.has_value(); }
  std::string describe() const;
};

struct LevelOutcome {
  bool found = false;
  /// True when the level was searched to completion without a hit.
  bool exhausted = false;
  std::uint64_t nodes = 0;
  std::optional<SignedRotationSystem> embedding;
};

/// Decides whether g embeds with Euler genus <= the level's bound:
/// orientable level k asks for an orientable embedding of genus <= k;
/// nonorientable level k asks for a nonorientable embedding of Euler genus
/// <= k or an orientable one of Euler genus <= k - 1.
///
/// Faces are traced one at a time while the rotation is chosen, and a
/// branch is cut when closed faces plus floor(unassigned sides / girth)
/// cannot reach the face count the level needs. The first vertex (largest
/// degree) has its rotation fixed up to reflection; in the nonorientable
/// case a BFS spanning tree is forced to sign +1.
LevelOutcome search_level(const Graph& g, Surface surface, std::size_t level,
                          const SearchBudget& budget);

/// Exact orientable genus by increasing levels; degrades to bounds when a
/// level runs out of budget. Throws Disconnected.
GenusResult genus_exact(const Graph& g, const SearchBudget& budget = {});
/// Exact nonorientable genus (0 for planar graphs), same strategy.
GenusResult crosscap_exact(const Graph& g, const SearchBudget& budget = {});

/// Block composition over search results; throws InexactInput unless every
/// result is exact.
ComposedGenus compose_blocks(const std::vector<std::pair<GenusResult, GenusResult>>& results);

/// Certificate for a result's upper bound.
Certificate make_certificate(const Graph& g, const GenusResult& r);

}  // namespace pg
