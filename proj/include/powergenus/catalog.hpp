#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "powergenus/group.hpp"

namespace pg {

class Catalog;

/// Builds a group from a recipe expression:
///   cyclic(n) | dihedral(order) | dicyclic(n) | semidihedral(order)
///   | sym(n) | alt(n) | direct(A,B) | semidirect(N,H,action)
///   | perms(degree:(0 1 2)(3 4);(0 1)) | [n,m]
/// with action one of triv, inv, pow:k, auto:k. Non-trivial actions need a
/// cyclic H; its generator (smallest index of order |H|) acts by the named
/// automorphism of N: inversion (N abelian), x -> x^k (N abelian), or the
/// k-th entry of automorphisms(N). "[n,m]" labels resolve through
/// `catalog`. Throws ParseError, UnknownLabel, InvalidParameter and the
/// group construction errors.
FiniteGroup build_recipe(const std::string& recipe, const Catalog* catalog = nullptr);

struct CatalogEntry {
  std::string label;
  std::string recipe;
  std::size_t expected_order = 0;
  OrderSpectrum expected_spectrum;
  std::set<std::string> tags;

  bool has_tag(const std::string& t) const { return tags.count(t) != 0; }
};

struct ValidationFailure {
  std::string label;  // entry label, or the checked set ("order12-complete", ...)
  std::string check;  // construction | order | spectrum | isomorphic-pair | count | tag-set
  std::string message;
};

struct ValidationReport {
  std::size_t entries_checked = 0;
  std::vector<ValidationFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Labels of the genus-two groups and of the three-hexagon groups.
const std::vector<std::string>& table1_labels();
const std::vector<std::string>& table2_labels();

/// Line format, one entry per line ('#' starts a comment):
///   label | recipe | order | {k:mult,...} | tag tag ...
/// Constructed groups are cached; the catalog is safe to share across
/// threads once loaded.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<CatalogEntry> entries);
  Catalog(const Catalog& other) : Catalog(other.entries_) {}
  Catalog& operator=(const Catalog& other);

  static const Catalog& builtin();
  static Catalog parse(std::istream& is);
  static Catalog load(const std::string& path);
  void dump(std::ostream& os) const;

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  bool contains(const std::string& label) const { return index_.count(label) != 0; }
  /// Throws UnknownLabel.
  const CatalogEntry& entry(const std::string& label) const;
  /// Constructs the entry and checks order and spectrum. Throws
  /// UnknownLabel or ValidationFailed.
  FiniteGroup get(const std::string& label) const;
  /// Every group of order 12, 18 or 36, in label order. Throws
  /// UnsupportedOrder for any other order.
  std::vector<CatalogEntry> enumerate_complete(std::size_t order) const;
  std::vector<CatalogEntry> with_tag(const std::string& tag) const;

  /// Order/spectrum checks for every entry, pairwise non-isomorphism inside
  /// each complete or curated order, and the table tag sets.
  ValidationReport validate_all() const;

 private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> index_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::shared_ptr<const FiniteGroup>> cache_;
};

}  // namespace pg
