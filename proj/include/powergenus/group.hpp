#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pg {

/// Index of a group element inside its multiplication table.
using Element = std::uint32_t;

/// A permutation of {0..degree-1}; `p[i]` is the image of i.
using Permutation = std::vector<std::uint32_t>;

/// Finite group stored as a full multiplication table.
///
/// Element 0 is always the identity. Construction runs the complete
/// closure/identity/inverse/associativity sweep, so a FiniteGroup value
/// is a verified group. Values are immutable after construction.
class FiniteGroup {
 public:
  /// Builds from a row-major table (table[i*order + j] = i*j). The
  /// identity may sit at any index; elements are renumbered so that it
  /// becomes 0. Throws InvalidGroup when any group axiom fails.
  FiniteGroup(std::size_t order, std::vector<Element> table,
              std::string label = {});

  std::size_t order() const noexcept { return order_; }
  const std::string& label() const noexcept { return label_; }
  Element identity() const noexcept { return 0; }

  Element mul(Element a, Element b) const noexcept {
    return table_[static_cast<std::size_t>(a) * order_ + b];
  }
  Element inverse(Element a) const noexcept { return inverse_[a]; }
  Element pow(Element a, long long k) const;

  const std::vector<Element>& table() const noexcept { return table_; }

  FiniteGroup relabeled(std::string label) const;

 private:
  FiniteGroup() = default;
  void check_axioms();

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::string label_;
};

/// Sorted, duplicate-free subset of a group. `parent` is non-owning.
struct ElementSet {
  const FiniteGroup* parent = nullptr;
  std::vector<Element> members;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(Element x) const;
  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.members == b.members;
  }
};

ElementSet make_element_set(const FiniteGroup& g, std::vector<Element> members);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);

/// pi_e(G) with multiplicities.
struct OrderSpectrum {
  std::map<std::size_t, std::size_t> multiplicities;

  std::set<std::size_t> orders() const;
  bool contains(std::size_t k) const { return multiplicities.count(k) != 0; }
  bool subset_of(std::initializer_list<std::size_t> allowed) const;
  std::size_t total() const;
  /// "{1,2,4,8}"
  std::string set_string() const;
  /// "{1:1,2:9,4:2,8:4}"
  std::string to_string() const;
  static OrderSpectrum parse(const std::string& text);

  friend bool operator==(const OrderSpectrum&, const OrderSpectrum&) = default;
};

/// Cyclic subgroups of order 6 and how they intersect.
struct SixProfile {
  std::size_t count = 0;
  std::vector<std::size_t> pairwise_intersections;  // sorted ascending
  std::size_t common_intersection_order = 0;

  /// "(3; 3,3,3)"
  std::string to_string() const;
  friend bool operator==(const SixProfile&, const SixProfile&) = default;
};

enum class Family { cyclic, dihedral, dicyclic, semidihedral, symmetric, alternating };

inline constexpr std::size_t kDefaultClosureCap = 10000;

// Construction.
FiniteGroup from_generators(std::size_t degree, const std::vector<Permutation>& generators,
                            std::size_t cap = kDefaultClosureCap, std::string label = {});
/// `parameter` is the group order for dihedral/semidihedral, n for
/// dicyclic (order 4n), the degree for symmetric/alternating and the order
/// for cyclic.
FiniteGroup named(Family family, std::size_t parameter);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// action[h] is the automorphism of N applied by element h of H, given as
/// an element map. Both the automorphisms and the homomorphism H -> Aut(N)
/// are verified.
FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                               const std::vector<std::vector<Element>>& action);

// Element arithmetic and spectra.
std::size_t element_order(const FiniteGroup& g, Element x);
std::vector<std::size_t> element_orders(const FiniteGroup& g);
OrderSpectrum order_spectrum(const FiniteGroup& g);
OrderSpectrum order_spectrum(const FiniteGroup& g, const std::vector<Element>& subset);
std::size_t euler_phi(std::size_t n);
bool is_prime(std::size_t p);

// Subgroups.
ElementSet cyclic_subgroup(const FiniteGroup& g, Element x);
ElementSet generated_subgroup(const FiniteGroup& g, const std::vector<Element>& generators);
bool is_subgroup(const FiniteGroup& g, const std::vector<Element>& members);
std::vector<ElementSet> cyclic_subgroups_of_order(const FiniteGroup& g, std::size_t k);
SixProfile six_profile(const FiniteGroup& g);
ElementSet centralizer(const FiniteGroup& g, Element x);
ElementSet center(const FiniteGroup& g);
ElementSet conjugacy_class(const FiniteGroup& g, Element x);
std::size_t count_involutions(const FiniteGroup& g);
std::size_t count_subgroups_of_prime_order(const FiniteGroup& g, std::size_t p);
bool is_abelian(const FiniteGroup& g);
/// Group of prime-power order for some prime p (trivial group included).
std::optional<std::size_t> prime_of_p_group(const FiniteGroup& g);

/// The subgroup `members` as a standalone group (element i of the result is
/// members[i]).
FiniteGroup subgroup_as_group(const FiniteGroup& g, const ElementSet& members,
                              std::string label = {});

}  // namespace pg
