#include "odt/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "odt/error.hpp"
#include "odt/rng.hpp"

namespace odt {

int Instance::max_alphabet_size() const {
  int widest = 0;
  for (int e = 0; e < num_queries(); ++e) widest = std::max(widest, alphabet_size(e));
  return widest;
}

int Instance::hypothesis_index(const std::string& id) const {
  for (int h = 0; h < num_hypotheses(); ++h)
    if (hypothesis_ids[h] == id) return h;
  return -1;
}

int Instance::query_index(const std::string& id) const {
  for (int e = 0; e < num_queries(); ++e)
    if (query_ids[e] == id) return e;
  return -1;
}

Instance Instance::from_parts(std::vector<std::string> hypothesis_ids, std::vector<double> priors,
                              std::vector<std::string> query_ids, std::vector<double> costs,
                              const std::vector<std::vector<std::string>>& responses) {
  const auto m = hypothesis_ids.size();
  const auto n = query_ids.size();
  if (priors.size() != m) throw Error("PARSE-ERROR", "prior count does not match hypothesis count");
  if (costs.size() != n) throw Error("PARSE-ERROR", "cost count does not match query count");
  if (responses.size() != m) throw Error("PARSE-ERROR", "response table has wrong number of rows");
  for (std::size_t h = 0; h < m; ++h) {
    if (responses[h].size() != n) {
      throw Error("PARSE-ERROR", "response row for hypothesis '" + hypothesis_ids[h] +
                                     "' has wrong number of entries");
    }
  }

  Instance instance;
  instance.hypothesis_ids = std::move(hypothesis_ids);
  instance.priors = std::move(priors);
  instance.query_ids = std::move(query_ids);
  instance.costs = std::move(costs);
  instance.response_codes.resize(n);
  instance.response_names.resize(n);
  // Codes are assigned per query in lexicographic response-id order.
  for (std::size_t e = 0; e < n; ++e) {
    std::map<std::string, int> code_of;
    for (std::size_t h = 0; h < m; ++h) code_of.emplace(responses[h][e], 0);
    int next = 0;
    for (auto& [id, code] : code_of) {
      code = next++;
      instance.response_names[e].push_back(id);
    }
    instance.response_codes[e].resize(m);
    for (std::size_t h = 0; h < m; ++h) instance.response_codes[e][h] = code_of[responses[h][e]];
  }
  return instance;
}

namespace {

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

}  // namespace

ValidationReport validate(const Instance& instance) {
  ValidationReport report;
  const int m = instance.num_hypotheses();
  const int n = instance.num_queries();

  if (m < 1) {
    report.ok = false;
    report.code = "EMPTY-HYPOTHESES";
    report.message = "an instance needs at least one hypothesis";
    return report;
  }
  for (int h = 0; h < m; ++h) {
    if (!(instance.priors[h] > 0.0)) {
      report.ok = false;
      report.code = "NONPOSITIVE-PRIOR";
      report.message = "hypothesis '" + instance.hypothesis_ids[h] + "' has nonpositive prior " +
                       format_double(instance.priors[h]);
      report.witnesses = {instance.hypothesis_ids[h]};
      return report;
    }
  }
  double sum = 0.0;
  for (int h = 0; h < m; ++h) sum += instance.priors[h];
  // The 1e-13 cushion keeps inputs exactly at the tolerance boundary (a
  // legal decimal like 0.999999999) from failing on representation error.
  if (std::fabs(sum - 1.0) > kPriorSumTolerance + 1e-13) {
    report.ok = false;
    report.code = "NORMALIZATION-ERROR";
    report.message = "priors sum to " + format_double(sum) + ", outside tolerance " +
                     format_double(kPriorSumTolerance);
    return report;
  }
  for (int e = 0; e < n; ++e) {
    if (!(instance.costs[e] > 0.0)) {
      report.ok = false;
      report.code = "NONPOSITIVE-COST";
      report.message = "query '" + instance.query_ids[e] + "' has nonpositive cost " +
                       format_double(instance.costs[e]);
      report.witnesses = {instance.query_ids[e]};
      return report;
    }
  }

  // Feasibility: every pair of hypotheses must differ on some query. Sort
  // response rows and compare neighbours.
  std::vector<int> order(m);
  for (int h = 0; h < m; ++h) order[h] = h;
  auto row_less = [&](int a, int b) {
    for (int e = 0; e < n; ++e) {
      if (instance.response_codes[e][a] != instance.response_codes[e][b])
        return instance.response_codes[e][a] < instance.response_codes[e][b];
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  for (int i = 0; i + 1 < m; ++i) {
    const int a = order[i], b = order[i + 1];
    if (!row_less(a, b) && !row_less(b, a)) {
      const int first = std::min(a, b), second = std::max(a, b);
      report.ok = false;
      report.code = "INFEASIBLE";
      report.message = "hypotheses '" + instance.hypothesis_ids[first] + "' and '" +
                       instance.hypothesis_ids[second] +
                       "' have identical responses on every query";
      report.witnesses = {instance.hypothesis_ids[first], instance.hypothesis_ids[second]};
      return report;
    }
  }
  return report;
}

void require_valid(const Instance& instance) {
  const ValidationReport report = validate(instance);
  if (!report.ok) throw Error("VALIDATION-ERROR", report.code + ": " + report.message);
}

std::vector<double> normalize_priors(std::vector<double> weights) {
  if (weights.empty()) return weights;
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
  // Recompute the last entry so the left-to-right sum is exactly 1.0.
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) partial += weights[i];
  weights.back() = 1.0 - partial;
  return weights;
}

Family family_from_string(const std::string& name) {
  if (name == "random") return Family::Random;
  if (name == "binary-search") return Family::BinarySearch;
  if (name == "singleton-tests") return Family::SingletonTests;
  throw Error("USAGE-ERROR", "unknown family '" + name +
                                 "'; expected random, binary-search or singleton-tests");
}

std::string family_to_string(Family family) {
  switch (family) {
    case Family::Random: return "random";
    case Family::BinarySearch: return "binary-search";
    case Family::SingletonTests: return "singleton-tests";
  }
  return "unknown";
}

PriorShape prior_shape_from_string(const std::string& name) {
  if (name == "uniform") return PriorShape::Uniform;
  if (name == "random") return PriorShape::Random;
  throw Error("USAGE-ERROR", "unknown prior shape '" + name + "'; expected uniform or random");
}

std::string prior_shape_to_string(PriorShape shape) {
  return shape == PriorShape::Uniform ? "uniform" : "random";
}

namespace {

void check_family_spec(const FamilySpec& spec) {
  if (spec.m < 1) throw Error("USAGE-ERROR", "family spec needs m >= 1");
  if (spec.n < 0) throw Error("USAGE-ERROR", "family spec needs n >= 0");
  if (!(spec.cost_min > 0.0) || spec.cost_max < spec.cost_min)
    throw Error("USAGE-ERROR", "cost range must satisfy 0 < cost_min <= cost_max");
  if (spec.alphabet < 2) throw Error("USAGE-ERROR", "response alphabet needs at least 2 symbols");
}

std::vector<std::string> numbered_ids(const std::string& prefix, int count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (int i = 1; i <= count; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

std::vector<double> draw_priors(const FamilySpec& spec, Rng& rng) {
  std::vector<double> weights(spec.m, 1.0);
  if (spec.prior == PriorShape::Random) {
    // Exponential weights normalize to a flat Dirichlet draw. Redraw when a
    // share would fall below 1e-6 of the mass: such priors add nothing at
    // desk scale and break the exact-unit-sum fixup.
    for (int attempt = 0; attempt < 64; ++attempt) {
      double total = 0.0, smallest = 1.0e300;
      for (double& w : weights) {
        w = -std::log(rng.next_open01());
        total += w;
        smallest = std::min(smallest, w);
      }
      if (smallest > 1e-6 * total) break;
    }
  }
  return normalize_priors(std::move(weights));
}

Instance generate_binary_search(const FamilySpec& spec) {
  const int m = spec.m;
  std::vector<std::vector<std::string>> responses(m, std::vector<std::string>(m - 1));
  for (int h = 0; h < m; ++h)
    for (int k = 0; k < m - 1; ++k) responses[h][k] = h <= k ? "low" : "high";
  return Instance::from_parts(numbered_ids("h", m), normalize_priors(std::vector<double>(m, 1.0)),
                              numbered_ids("q", m - 1), std::vector<double>(m - 1, 1.0), responses);
}

Instance generate_singleton_tests(const FamilySpec& spec) {
  const int m = spec.m;
  Rng rng(spec.seed);
  std::vector<std::vector<std::string>> responses(m, std::vector<std::string>(m));
  for (int h = 0; h < m; ++h)
    for (int k = 0; k < m; ++k) responses[h][k] = h == k ? "yes" : "no";
  return Instance::from_parts(numbered_ids("h", m), draw_priors(spec, rng), numbered_ids("q", m),
                              std::vector<double>(m, 1.0), responses);
}

Instance generate_random(const FamilySpec& spec) {
  const int retry_limit = 100;
  for (int attempt = 0; attempt < retry_limit; ++attempt) {
    Rng rng(derive_seed(spec.seed, attempt));
    std::vector<double> costs(spec.n);
    for (double& c : costs) c = rng.next_range(spec.cost_min, spec.cost_max);
    std::vector<std::vector<std::string>> responses(spec.m, std::vector<std::string>(spec.n));
    for (int h = 0; h < spec.m; ++h)
      for (int e = 0; e < spec.n; ++e)
        responses[h][e] = "r" + std::to_string(rng.next_below(spec.alphabet));
    Instance instance =
        Instance::from_parts(numbered_ids("h", spec.m), draw_priors(spec, rng),
                             numbered_ids("q", spec.n), std::move(costs), responses);
    if (validate(instance).ok) return instance;
  }
  throw Error("GENERATION-FAILED", "no feasible random instance with m=" + std::to_string(spec.m) +
                                       ", n=" + std::to_string(spec.n) + " after " +
                                       std::to_string(retry_limit) + " attempts");
}

}  // namespace

Instance generate(const FamilySpec& spec) {
  check_family_spec(spec);
  switch (spec.family) {
    case Family::BinarySearch: return generate_binary_search(spec);
    case Family::SingletonTests: return generate_singleton_tests(spec);
    case Family::Random: return generate_random(spec);
  }
  throw Error("USAGE-ERROR", "unhandled family");
}

}  // namespace odt
