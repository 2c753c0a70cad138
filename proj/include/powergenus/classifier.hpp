#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "powergenus/catalog.hpp"
#include "powergenus/group.hpp"
#include "powergenus/search.hpp"

namespace pg {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kDefaultOrderCap = 144;

enum class GenusClass { planar, one, two, at_least_three, other_with_bounds };
enum class CrosscapClass { planar, one, not_two, exact };

std::string to_string(GenusClass c);
std::string to_string(CrosscapClass c);

/// One applied rule. `conclusion` is a pure function of `inputs` (see
/// replay_step), so a trail can be re-checked without the group.
struct CertificateStep {
  std::string rule_id;
  Json inputs;
  std::string conclusion;
};

struct Verdict {
  Surface surface = Surface::orientable;
  GenusClass orientable = GenusClass::planar;
  CrosscapClass nonorientable = CrosscapClass::planar;
  /// Known bounds on the (non)orientable genus implied by the trail;
  /// upper is absent when unbounded by the argument used.
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  /// Catalog label matched by isomorphism for genus-two verdicts.
  std::optional<std::string> table1_label;
  std::vector<CertificateStep> trail;

  std::string category() const;
};

/// Union of every cyclic subgroup whose order is not in {1,2,3,4}, plus the
/// identity, listed by its maximal cyclic subgroups.
struct ReductionSet {
  ElementSet set;
  std::vector<ElementSet> subgroups;
  /// Spectrum of G \ S (identity excluded).
  OrderSpectrum complement_spectrum;
  /// True when the complement has orders in {2,3,4} only.
  bool valid = false;
};

ReductionSet reduction_set(const FiniteGroup& g);

/// Throws OrderCapExceeded, InternalContradiction.
Verdict classify_orientable(const FiniteGroup& g, const Catalog& catalog = Catalog::builtin(),
                            std::size_t cap = kDefaultOrderCap);
Verdict classify_nonorientable(const FiniteGroup& g, const Catalog& catalog = Catalog::builtin(),
                               std::size_t cap = kDefaultOrderCap);

/// Recomputes the step's conclusion from its inputs; throws UnknownRule.
std::string replay_step(const CertificateStep& step);

struct RuleInfo {
  std::string id;
  std::string statement;
};
const std::vector<RuleInfo>& rule_registry();

enum class RuleStatus { pass, fail, inconclusive };
std::string to_string(RuleStatus s);

struct RuleReport {
  std::string rule_id;
  RuleStatus status = RuleStatus::pass;
  std::size_t scanned = 0;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  /// What `scanned` counts.
  std::string unit = "groups";
  /// "PASS: 0 witnesses in 24 groups scanned"
  std::string summary() const;
};

/// Element-order column of the three-hexagon table, by label.
const std::map<std::string, std::string>& table2_spectrum_column();

/// Spectrum within {1,2,3,4,6}, exactly three cyclic subgroups of order 6,
/// and two of them meeting in a subgroup of order 3.
bool three_hexagon_conditions(const FiniteGroup& g);

/// Runs a rule's desk-scale check over the relevant catalog slice.
/// Throws UnknownRule.
RuleReport verify_rule(const std::string& rule_id, const Catalog& catalog = Catalog::builtin(),
                       const SearchBudget& budget = {});

// ---------------------------------------------------------------------------
// Engine cross-check

struct BlockReport {
  std::size_t vertices = 0, edges = 0;
  bool planar = false;
  GenusResult orientable, nonorientable;
};

struct EngineGenus {
  std::size_t orientable_lower = 0, orientable_upper = 0;
  std::size_t nonorientable_lower = 0, nonorientable_upper = 0;
  bool orientable_exact = false, nonorientable_exact = false;
};

/// Per-block search composed over the blocks of g. Exact values need every
/// block exact; otherwise bounds (Euler genus is additive over blocks).
EngineGenus engine_genus(const Graph& g, const SearchBudget& budget,
                         std::vector<BlockReport>* reports = nullptr);

enum class Agreement { agree, consistent_with, mismatch };
std::string to_string(Agreement a);

struct CrossValidation {
  std::vector<BlockReport> blocks;
  EngineGenus engine;
  Verdict orientable_verdict, nonorientable_verdict;
  Agreement orientable = Agreement::agree, nonorientable = Agreement::agree;
  bool budget_exhausted = false;
};

/// Block-wise genus_exact / crosscap_exact on the power graph, composed
/// over blocks and compared with both verdicts.
CrossValidation cross_validate(const FiniteGroup& g, const SearchBudget& budget,
                               const Catalog& catalog = Catalog::builtin());

// ---------------------------------------------------------------------------
// Records

/// One JSON object per group with a fixed field order.
Json verdict_record(const std::string& label, const FiniteGroup& g, const Verdict& orientable,
                    const Verdict& nonorientable);
Json to_json(const CertificateStep& s);

}  // namespace pg
