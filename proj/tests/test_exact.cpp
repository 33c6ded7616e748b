#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "odt/error.hpp"
#include "odt/evaluation.hpp"
#include "odt/exact.hpp"
#include "odt/greedy.hpp"
#include "test_util.hpp"

using namespace odt;

namespace {

Instance binary_search(int m) {
  FamilySpec spec;
  spec.family = Family::BinarySearch;
  spec.m = m;
  return generate(spec);
}

/// Memo-free reference recursion (normalized form), for soundness checks.
double solve_without_memo(const Instance& instance, const std::vector<int>& members) {
  if (members.size() == 1) return 0.0;
  double parent_mass = 0.0;
  for (int h : members) parent_mass += instance.priors[h];
  bool found = false;
  double best = 0.0;
  for (int e = 0; e < instance.num_queries(); ++e) {
    std::vector<std::vector<int>> parts(instance.alphabet_size(e));
    for (int h : members) parts[instance.response(e, h)].push_back(h);
    int realized = 0;
    for (const auto& part : parts) realized += part.empty() ? 0 : 1;
    if (realized < 2) continue;
    double total = instance.costs[e];
    for (const auto& part : parts) {
      if (part.empty()) continue;
      double part_mass = 0.0;
      for (int h : part) part_mass += instance.priors[h];
      total += part_mass / parent_mass * solve_without_memo(instance, part);
    }
    if (!found || total < best) {
      best = total;
      found = true;
    }
  }
  REQUIRE(found);
  return best;
}

double solve_without_memo(const Instance& instance) {
  std::vector<int> everyone(instance.num_hypotheses());
  for (int h = 0; h < instance.num_hypotheses(); ++h) everyone[h] = h;
  return solve_without_memo(instance, everyone);
}

}  // namespace

TEST_CASE("a single hypothesis costs nothing") {
  const Instance instance = Instance::from_parts({"only"}, {1.0}, {}, {}, {{}});
  const ExactResult result = exact_solve(instance);
  CHECK(result.expected_cost == 0.0);
  CHECK(result.tree.num_nodes() == 1);
  CHECK(enumerate_optimum(instance) == 0.0);
}

TEST_CASE("binary-search m=4 has optimum 2") {
  const Instance instance = binary_search(4);
  const ExactResult result = exact_solve(instance);
  CHECK(result.expected_cost == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(enumerate_optimum(instance) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(is_feasible(instance, result.tree));
}

TEST_CASE("skewed singleton-tests optimum isolates the heavy hypothesis first") {
  const Instance instance = test::make_instance({"YNN", "NYN", "NNY"}, {0.5, 0.25, 0.25});
  const ExactResult result = exact_solve(instance);
  CHECK(result.expected_cost == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(result.tree.nodes[result.tree.root].query == 0);
  // Starting with q2 instead would cost 1 + 0.75 = 1.75.
  CHECK(enumerate_optimum(instance) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("exact matches exhaustive enumeration on 200 tiny instances") {
  int done = 0;
  for (std::uint64_t seed = 0; done < 200; ++seed) {
    FamilySpec spec = test::random_batch_spec(3, seed, 2, 4);
    spec.n = 1 + static_cast<int>(seed % 4);
    if (spec.n < spec.m - 1) continue;  // likely infeasible; keep the loop cheap
    Instance instance;
    try {
      instance = generate(spec);
    } catch (const Error&) {
      continue;  // GENERATION-FAILED for unlucky tiny shapes
    }
    REQUIRE(instance.num_hypotheses() <= 4);
    REQUIRE(instance.num_queries() <= 4);
    CAPTURE(seed);
    CHECK(exact_solve(instance).expected_cost ==
          doctest::Approx(enumerate_optimum(instance)).epsilon(1e-12));
    ++done;
  }
}

TEST_CASE("enumeration refuses instances above its caps") {
  const Instance instance = binary_search(6);
  CHECK_THROWS_WITH_AS(enumerate_optimum(instance), doctest::Contains("SIZE-EXCEEDED"), Error);
}

TEST_CASE("exact refuses more than 64 hypotheses") {
  const Instance instance = binary_search(65);
  CHECK_THROWS_WITH_AS(exact_solve(instance), doctest::Contains("SIZE-EXCEEDED"), Error);
}

TEST_CASE("state budget is enforced and reported") {
  const Instance instance = binary_search(8);
  CHECK_THROWS_WITH_AS(exact_solve(instance, 3), doctest::Contains("BUDGET-EXCEEDED"), Error);
}

TEST_CASE("infeasible version spaces are reported when validation is skipped") {
  const Instance instance = test::make_instance({"A", "A"});
  CHECK_THROWS_WITH_AS(exact_solve(instance), doctest::Contains("INFEASIBLE"), Error);
}

TEST_CASE("optimum lower-bounds every greedy criterion") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance instance = generate(test::random_batch_spec(5, seed, 2, 9));
    const double optimum = exact_solve(instance).expected_cost;
    for (const Criterion& criterion : criterion_catalog()) {
      if (criterion.binary_only && instance.max_alphabet_size() > 2) continue;
      CAPTURE(seed);
      CAPTURE(criterion.name);
      const double cost = evaluate(instance, greedy_solve(instance, criterion)).expected_cost;
      CHECK(optimum <= cost + 1e-9);
    }
  }
}

TEST_CASE("optimum scales exactly with costs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance original = generate(test::random_batch_spec(7, seed, 2, 8));
    const double base = exact_solve(original).expected_cost;
    for (double factor : {2.0, 0.5}) {  // powers of two scale without rounding
      Instance scaled = original;
      for (double& c : scaled.costs) c *= factor;
      CHECK(exact_solve(scaled).expected_cost == factor * base);
    }
    Instance tripled = original;
    for (double& c : tripled.costs) c *= 3.0;
    CHECK(exact_solve(tripled).expected_cost == doctest::Approx(3.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("memoized and memo-free costs agree") {
  // Structured families keep the memo-free recursion affordable.
  for (int m : {6, 8, 10}) {
    const Instance instance = binary_search(m);
    CHECK(exact_solve(instance).expected_cost ==
          doctest::Approx(solve_without_memo(instance)).epsilon(1e-12));
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    FamilySpec spec = test::random_batch_spec(11, seed, 2, 8);
    spec.n = std::min(spec.n, 8);
    spec.alphabet = 2;
    const Instance instance = generate(spec);
    CAPTURE(seed);
    CHECK(exact_solve(instance).expected_cost ==
          doctest::Approx(solve_without_memo(instance)).epsilon(1e-12));
  }
}

TEST_CASE("binary-search optimum never exceeds ceil(log2 m)") {
  for (int m = 2; m <= 16; ++m) {
    const double cap = std::ceil(std::log2(static_cast<double>(m)));
    CAPTURE(m);
    CHECK(exact_solve(binary_search(m)).expected_cost <= cap + 1e-12);
  }
}

TEST_CASE("solver statistics count expansions and cache hits") {
  const Instance instance = binary_search(8);
  const ExactResult result = exact_solve(instance);
  CHECK(result.stats.states_expanded > 0);
  CHECK(result.stats.cache_hits > 0);  // overlapping ranges recur across splits
}
