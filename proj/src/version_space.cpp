#include "odt/version_space.hpp"

#include <algorithm>

#include "odt/error.hpp"

namespace odt {

bool VersionSpace::contains(int hypothesis) const {
  return std::binary_search(members.begin(), members.end(), hypothesis);
}

std::uint64_t VersionSpace::bitmask() const {
  std::uint64_t mask = 0;
  for (int h : members) mask |= std::uint64_t{1} << h;
  return mask;
}

VersionSpace full_space(const Instance& instance) {
  VersionSpace vs;
  vs.members.resize(instance.num_hypotheses());
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    vs.members[h] = h;
    vs.mass += instance.priors[h];
  }
  return vs;
}

VersionSpace make_space(const Instance& instance, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  VersionSpace vs;
  vs.members = std::move(members);
  for (int h : vs.members) vs.mass += instance.priors[h];
  return vs;
}

VersionSpace compatible(const Instance& instance, const State& state) {
  std::vector<int> seen(instance.num_queries(), -1);
  for (const Observation& ob : state.pairs) {
    if (ob.query < 0 || ob.query >= instance.num_queries())
      throw Error("STATE-ERROR", "observation references unknown query index " +
                                     std::to_string(ob.query));
    if (ob.response < 0 || ob.response >= instance.alphabet_size(ob.query))
      throw Error("STATE-ERROR", "observation references unknown response code " +
                                     std::to_string(ob.response) + " for query '" +
                                     instance.query_ids[ob.query] + "'");
    if (seen[ob.query] >= 0 && seen[ob.query] != ob.response)
      throw Error("STATE-ERROR",
                  "query '" + instance.query_ids[ob.query] + "' has two different responses");
    seen[ob.query] = ob.response;
  }

  VersionSpace vs;
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    bool fits = true;
    for (const Observation& ob : state.pairs) {
      if (instance.response(ob.query, h) != ob.response) {
        fits = false;
        break;
      }
    }
    if (fits) {
      vs.members.push_back(h);
      vs.mass += instance.priors[h];
    }
  }
  return vs;
}

int Partition::heavy_part() const {
  int best = 0;
  for (int i = 1; i < part_count(); ++i)
    if (parts[i].space.size() > parts[best].space.size()) best = i;
  return best;  // parts are in response-code order, so ties keep the smallest id
}

Partition partition(const Instance& instance, const VersionSpace& vs, int query) {
  if (vs.empty()) throw Error("STATE-ERROR", "cannot partition an empty version space");
  Partition result;
  result.parent_size = vs.size();
  result.parent_mass = vs.mass;

  // Bucket members by response code; codes are small and dense per query.
  std::vector<PartitionPart> cells(instance.alphabet_size(query));
  for (int h : vs.members) {
    const int code = instance.response(query, h);
    cells[code].response = code;
    cells[code].space.members.push_back(h);
    cells[code].space.mass += instance.priors[h];
  }
  for (PartitionPart& cell : cells) {
    if (cell.space.empty()) continue;
    cell.conditional = cell.space.mass / vs.mass;
    result.parts.push_back(std::move(cell));
  }
  return result;
}

double delta(const Partition& partition) {
  double expected = 0.0;
  for (const PartitionPart& part : partition.parts)
    expected += part.conditional * (partition.parent_size - part.space.size());
  return expected;
}

double delta(const Instance& instance, const VersionSpace& vs, int query) {
  return delta(partition(instance, vs, query));
}

}  // namespace odt
