#ifndef ODT_VERSION_SPACE_HPP
#define ODT_VERSION_SPACE_HPP

#include <cstdint>
#include <vector>

#include "odt/instance.hpp"

namespace odt {

/// One observation: query `query` answered with response code `response`.
struct Observation {
  int query = -1;
  int response = -1;
};

/// A set of query-response observations; at most one response per query.
struct State {
  std::vector<Observation> pairs;
};

/// A subset of hypotheses in canonical ascending index order, with its total
/// prior mass cached. May be empty (an off-tree state eliminates everyone).
struct VersionSpace {
  std::vector<int> members;  // ascending hypothesis indices
  double mass = 0.0;

  int size() const { return static_cast<int>(members.size()); }
  bool empty() const { return members.empty(); }
  bool contains(int hypothesis) const;

  /// Bitmask key for memo tables; requires every member index < 64.
  std::uint64_t bitmask() const;
};

/// The version space of the whole hypothesis set.
VersionSpace full_space(const Instance& instance);

/// Builds a version space from arbitrary member indices (sorted here).
VersionSpace make_space(const Instance& instance, std::vector<int> members);

/// Hypotheses compatible with every observation in `state`, i.e. those whose
/// response row matches all observed pairs. Empty result is allowed.
/// Throws Error("STATE-ERROR") if the state references unknown ids or gives
/// a query two different responses.
VersionSpace compatible(const Instance& instance, const State& state);

/// One cell of a response partition: the hypotheses of the parent space that
/// answer `response`, with conditional probability s = mass / parent mass.
struct PartitionPart {
  int response = -1;
  VersionSpace space;
  double conditional = 0.0;
};

/// Partition of a version space by the responses a query actually takes on
/// it. Parts are keyed by realized responses only and sorted by response
/// code; they are disjoint and cover the parent space.
struct Partition {
  std::vector<PartitionPart> parts;
  int parent_size = 0;
  double parent_mass = 0.0;

  int part_count() const { return static_cast<int>(parts.size()); }

  /// Index into parts of the largest-cardinality cell, ties broken by
  /// smallest response code (= smallest response id).
  int heavy_part() const;
};

/// Splits `vs` (nonempty) by the responses of `query`.
Partition partition(const Instance& instance, const VersionSpace& vs, int query);

/// Expected number of newly eliminated hypotheses when asking `query` at a
/// state with version space `vs`: sum_i s_i * (|V| - |S_i|). Zero exactly
/// when the query is constant on `vs`.
double delta(const Partition& partition);
double delta(const Instance& instance, const VersionSpace& vs, int query);

}  // namespace odt

#endif  // ODT_VERSION_SPACE_HPP
