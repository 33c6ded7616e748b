#ifndef ODT_INSTANCE_HPP
#define ODT_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace odt {

/// Absolute tolerance on |sum(priors) - 1| accepted by validate(); inputs
/// inside the tolerance are renormalized exactly once at load.
inline constexpr double kPriorSumTolerance = 1e-9;

/// An identification problem: m hypotheses with prior probabilities, n
/// queries with costs, and the complete m x n response table.
///
/// Response ids are opaque strings. Per query they are mapped to dense codes
/// assigned in lexicographic id order, so "smallest code" tie-breaking is the
/// same as "smallest response id". Instances are immutable after
/// construction and safe to share across concurrent solver runs.
struct Instance {
  std::vector<std::string> hypothesis_ids;
  std::vector<double> priors;  // strictly positive, sums to 1
  std::vector<std::string> query_ids;
  std::vector<double> costs;  // strictly positive
  std::vector<std::vector<int>> response_codes;            // [query][hypothesis] -> code
  std::vector<std::vector<std::string>> response_names;    // [query][code] -> response id

  int num_hypotheses() const { return static_cast<int>(hypothesis_ids.size()); }
  int num_queries() const { return static_cast<int>(query_ids.size()); }

  /// Dense response code of `query` under `hypothesis`.
  int response(int query, int hypothesis) const { return response_codes[query][hypothesis]; }

  /// Number of distinct responses `query` takes over all hypotheses.
  int alphabet_size(int query) const { return static_cast<int>(response_names[query].size()); }

  /// Largest per-query alphabet; 0 when there are no queries.
  int max_alphabet_size() const;

  int hypothesis_index(const std::string& id) const;  // -1 when absent
  int query_index(const std::string& id) const;       // -1 when absent

  /// Builds an instance from string-level parts. responses[h][e] is the
  /// response id of query e under hypothesis h. Only the table shape is
  /// checked here (throws Error("PARSE-ERROR")); value-level invariants are
  /// validate()'s job.
  static Instance from_parts(std::vector<std::string> hypothesis_ids, std::vector<double> priors,
                             std::vector<std::string> query_ids, std::vector<double> costs,
                             const std::vector<std::vector<std::string>>& responses);
};

/// Outcome of validate(): the first violated condition plus its witnesses.
struct ValidationReport {
  bool ok = true;
  std::string code = "OK";  // OK | EMPTY-HYPOTHESES | NONPOSITIVE-PRIOR |
                            // NORMALIZATION-ERROR | NONPOSITIVE-COST | INFEASIBLE
  std::string message;
  std::vector<std::string> witnesses;  // offending ids, e.g. an indistinguishable pair
};

/// Checks every instance invariant plus feasibility: no two hypotheses may
/// share a response row across all queries (such a pair can never be told
/// apart). Report-returning; never throws.
ValidationReport validate(const Instance& instance);

/// Throws Error("VALIDATION-ERROR") unless validate() passes.
void require_valid(const Instance& instance);

/// Rescales weights to sum to exactly 1.0: divide by the sum, then recompute
/// the last entry as 1 minus the rest so a left-to-right summation returns
/// 1.0 bit-exactly. Keeps entries strictly positive for non-degenerate input.
std::vector<double> normalize_priors(std::vector<double> weights);

enum class Family { Random, BinarySearch, SingletonTests };
enum class PriorShape { Uniform, Random };

Family family_from_string(const std::string& name);
std::string family_to_string(Family family);
PriorShape prior_shape_from_string(const std::string& name);
std::string prior_shape_to_string(PriorShape shape);

/// Parameters for generate(). Generation is a pure function of the spec.
struct FamilySpec {
  Family family = Family::Random;
  int m = 2;                   // hypotheses
  int n = 0;                   // queries (random family; derived otherwise)
  std::uint64_t seed = 0;
  double cost_min = 1.0;       // random family draws costs in [cost_min, cost_max]
  double cost_max = 1.0;
  PriorShape prior = PriorShape::Uniform;
  int alphabet = 2;            // random family response alphabet size (>= 2)
};

/// Deterministically generates an instance of the requested family.
///
///  - binary-search: m hypotheses, uniform prior, unit costs, and the m-1
///    threshold queries; query k answers "low" for hypotheses 1..k.
///  - singleton-tests: m unit-cost queries; query k answers "yes" only for
///    hypothesis k.
///  - random: responses drawn uniformly from the alphabet, costs from the
///    cost range, priors per the prior shape; regenerates with a derived
///    seed until validate() passes, up to 100 attempts, then throws
///    Error("GENERATION-FAILED").
Instance generate(const FamilySpec& spec);

}  // namespace odt

#endif  // ODT_INSTANCE_HPP
