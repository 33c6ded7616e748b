#ifndef ODT_GREEDY_HPP
#define ODT_GREEDY_HPP

#include "odt/criteria.hpp"
#include "odt/instance.hpp"
#include "odt/tree.hpp"

namespace odt {

/// Relative tolerance within which two criterion values count as tied; ties
/// go to the smallest query index so runs are reproducible.
inline constexpr double kCriterionTieTolerance = 1e-12;

/// Builds the greedy decision tree: at every state with two or more
/// compatible hypotheses, ask the query maximizing the criterion (default:
/// expected newly eliminated hypotheses per unit cost), branch on every
/// response realized in the surviving set, and stop at singletons.
///
/// Queries constant on the surviving set are never candidates; if no query
/// splits a state, throws Error("STUCK") — unreachable on instances that
/// pass validate(). Binary-only criteria reject instances whose response
/// alphabet exceeds two (Error("ARITY-ERROR")).
DecisionTree greedy_solve(const Instance& instance, const Criterion& criterion = default_criterion());

/// Post-hoc audit: true when the query at every internal node attains the
/// maximum of delta/cost over all queries, up to the tie tolerance.
bool greedy_choices_optimal(const Instance& instance, const DecisionTree& tree);

}  // namespace odt

#endif  // ODT_GREEDY_HPP
