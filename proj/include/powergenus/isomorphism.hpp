#pragma once

#include <optional>
#include <vector>

#include "powergenus/group.hpp"

namespace pg {

inline constexpr std::size_t kIsomorphismOrderCap = 144;

/// Greedy generating set: elements are tried rarest-fingerprint first,
/// largest order first, so the backtracking below branches little.
std::vector<Element> small_generating_set(const FiniteGroup& g);

/// Element map A -> B that is a group isomorphism, if one exists.
/// Candidate images are filtered by (element order, conjugacy class size,
/// number of square roots). Throws OrderCapExceeded above `cap`.
std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                     std::size_t cap = kIsomorphismOrderCap);

bool is_isomorphic(const FiniteGroup& a, const FiniteGroup& b,
                   std::size_t cap = kIsomorphismOrderCap);

/// Every automorphism of g, in a fixed order (lexicographic in the images
/// of small_generating_set(g)). Element 0 of the result is the identity map.
std::vector<std::vector<Element>> automorphisms(const FiniteGroup& g,
                                                std::size_t cap = kIsomorphismOrderCap);

}  // namespace pg
