#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "odt/error.hpp"
#include "odt/version_space.hpp"
#include "test_util.hpp"

using namespace odt;

namespace {

Instance binary_search4() {
  FamilySpec spec;
  spec.family = Family::BinarySearch;
  spec.m = 4;
  return generate(spec);
}

/// Independent route for delta: the direct expectation over hypotheses,
/// sum_h (p_h / p(V)) * (|V| - |part containing h|).
double delta_by_hypothesis(const Instance& instance, const VersionSpace& vs, int query) {
  double expected = 0.0;
  for (int h : vs.members) {
    int part_size = 0;
    for (int other : vs.members)
      if (instance.response(query, other) == instance.response(query, h)) ++part_size;
    expected += instance.priors[h] / vs.mass * (vs.size() - part_size);
  }
  return expected;
}

}  // namespace

TEST_CASE("compatible with an empty state returns everyone") {
  const Instance instance = binary_search4();
  const VersionSpace vs = compatible(instance, State{});
  CHECK(vs.members == std::vector<int>{0, 1, 2, 3});
  CHECK(vs.mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compatible filters by the observed response") {
  const Instance instance = binary_search4();
  // q2 = index 1; response "low" holds for h1, h2.
  const int low = instance.response(1, 0);
  const VersionSpace vs = compatible(instance, State{{{1, low}}});
  CHECK(vs.members == std::vector<int>{0, 1});
  CHECK(vs.mass == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("contradictory observations give an empty version space") {
  const Instance instance = binary_search4();
  // q1 = "low" keeps only h1 while q2 = "high" keeps h3, h4.
  const VersionSpace vs = compatible(
      instance, State{{{0, instance.response(0, 0)}, {1, instance.response(1, 2)}}});
  CHECK(vs.empty());
  CHECK(vs.mass == 0.0);
}

TEST_CASE("compatible rejects two responses for one query") {
  const Instance instance = binary_search4();
  CHECK_THROWS_AS(compatible(instance, State{{{0, 0}, {0, 1}}}), Error);
}

TEST_CASE("partition splits the root of binary-search by the middle query") {
  const Instance instance = binary_search4();
  const Partition cells = partition(instance, full_space(instance), 1);
  REQUIRE(cells.part_count() == 2);
  // Codes are lexicographic: "high" < "low".
  CHECK(cells.parts[0].space.members == std::vector<int>{2, 3});
  CHECK(cells.parts[1].space.members == std::vector<int>{0, 1});
  CHECK(cells.parts[0].conditional == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cells.parts[1].conditional == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partition of a constant query is a single part") {
  const Instance instance = binary_search4();
  const VersionSpace pair = make_space(instance, {0, 1});
  const Partition cells = partition(instance, pair, 2);  // q3 is "low" on h1, h2
  REQUIRE(cells.part_count() == 1);
  CHECK(cells.parts[0].space.members == pair.members);
  CHECK(cells.parts[0].conditional == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(delta(cells) == 0.0);
}

TEST_CASE("partition of a singleton is a single part with s = 1") {
  const Instance instance = binary_search4();
  const Partition cells = partition(instance, make_space(instance, {2}), 0);
  REQUIRE(cells.part_count() == 1);
  CHECK(cells.parts[0].conditional == 1.0);
}

TEST_CASE("delta hand-evaluates on a 1|2 split of three hypotheses") {
  // One query, uniform prior: parts {h1} and {h2, h3}.
  const Instance instance = test::make_instance({"A", "B", "B"});
  const double value = delta(instance, full_space(instance), 0);
  CHECK(value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("a perfect splitter eliminates m - 1 in expectation") {
  const Instance instance = test::make_instance({"A", "B", "C", "D"});
  CHECK(delta(instance, full_space(instance), 0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("delta at the binary-search root matches the hand values") {
  const Instance instance = binary_search4();
  const VersionSpace root = full_space(instance);
  CHECK(delta(instance, root, 0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(delta(instance, root, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(delta(instance, root, 2) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("delta properties on random instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance instance = generate(test::random_batch_spec(17, seed, 2, 10));
    const VersionSpace everyone = full_space(instance);
    for (int e = 0; e < instance.num_queries(); ++e) {
      const Partition cells = partition(instance, everyone, e);
      const double value = delta(cells);

      // Bounds and the constant-query characterization.
      CHECK(value >= 0.0);
      CHECK(value <= everyone.size() - 1 + 1e-12);
      CHECK((value == 0.0) == (cells.part_count() == 1));

      // Parts are disjoint and cover the parent.
      std::vector<int> collected;
      double conditional_sum = 0.0;
      for (const PartitionPart& part : cells.parts) {
        collected.insert(collected.end(), part.space.members.begin(), part.space.members.end());
        conditional_sum += part.conditional;
      }
      std::sort(collected.begin(), collected.end());
      CHECK(collected == everyone.members);
      CHECK(conditional_sum == doctest::Approx(1.0).epsilon(1e-9));

      // Two-formula equivalence: partition form versus direct expectation.
      CHECK(value == doctest::Approx(delta_by_hypothesis(instance, everyone, e)).epsilon(1e-12));
    }
  }
}
