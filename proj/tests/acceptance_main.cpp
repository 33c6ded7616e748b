// Acceptance suite: exercises the full stack end to end and prints one
// verdict line per criterion. Exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "odt/diagnostics.hpp"
#include "odt/error.hpp"
#include "odt/evaluation.hpp"
#include "odt/exact.hpp"
#include "odt/greedy.hpp"
#include "odt/instance.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace odt;

constexpr double kTol = 1e-9;

struct Harness {
  int failures = 0;

  void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", index, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

// Shared corpus for criteria 1 and 3-6: greedy and exact solutions of the
// randomized certification batch.
struct Solved {
  Instance instance;
  DecisionTree greedy_tree;
  DecisionTree exact_tree;
  PolicyEvaluation greedy_eval;
  PolicyEvaluation exact_eval;
};

std::vector<Solved> solve_batch(int count) {
  std::vector<Solved> batch;
  batch.reserve(count);
  for (int i = 0; i < count; ++i) {
    Solved item{generate(test::random_batch_spec(2024, i)), {}, {}, {}, {}};
    item.greedy_tree = greedy_solve(item.instance);
    item.exact_tree = exact_solve(item.instance).tree;
    item.greedy_eval = evaluate(item.instance, item.greedy_tree);
    item.exact_eval = evaluate(item.instance, item.exact_tree);
    batch.push_back(std::move(item));
  }
  return batch;
}

void check_guarantee(Harness& harness, const std::vector<Solved>& batch) {
  int pass_count = 0;
  double worst_share = 0.0;  // ratio as a share of its bound
  std::string witness;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Certificate cert = certify(batch[i].instance, batch[i].greedy_eval, batch[i].exact_eval);
    if (cert.pass)
      ++pass_count;
    else if (witness.empty())
      witness = " first failure at instance " + std::to_string(i);
    worst_share = std::max(worst_share, cert.ratio / cert.bound);
  }
  harness.report(1, "approximation guarantee 8(1+ln m)",
                 pass_count == static_cast<int>(batch.size()),
                 std::to_string(pass_count) + "/" + std::to_string(batch.size()) +
                     " random instances within the bound (worst ratio at " + fmt(worst_share) +
                     " of bound)" + witness);
}

std::vector<PolicyEvaluation> check_oracle_equivalence(Harness& harness) {
  std::vector<PolicyEvaluation> evals;
  int done = 0, matched = 0;
  std::uint64_t seed = 0;
  while (done < 200) {
    FamilySpec spec;
    spec.family = Family::Random;
    Rng rng(derive_seed(4242, seed++));
    spec.m = 2 + static_cast<int>(rng.next_below(3));  // 2..4
    spec.n = 1 + static_cast<int>(rng.next_below(4));  // 1..4
    spec.seed = rng.next_u64();
    spec.cost_min = 0.1;
    spec.cost_max = 10.0;
    spec.prior = PriorShape::Random;
    Instance instance;
    try {
      instance = generate(spec);
    } catch (const Error&) {
      continue;  // tiny shapes can be infeasible; draw again
    }
    const ExactResult result = exact_solve(instance);
    const double reference = enumerate_optimum(instance);
    if (std::fabs(result.expected_cost - reference) <= 1e-12 * std::max(1.0, reference)) ++matched;
    evals.push_back(evaluate(instance, result.tree));
    ++done;
  }
  harness.report(2, "exact optimum equals exhaustive enumeration", matched == done,
                 std::to_string(matched) + "/" + std::to_string(done) +
                     " tiny instances agree to 1e-12");
  return evals;
}

void check_integral_identity(Harness& harness, const std::vector<Solved>& batch,
                             const std::vector<PolicyEvaluation>& tiny_evals) {
  int checked = 0, ok = 0;
  auto check_one = [&](const PolicyEvaluation& eval) {
    ++checked;
    if (std::fabs(eval.noncompletion.integral() - eval.expected_cost) <= kTol) ++ok;
  };
  for (const Solved& item : batch) {
    check_one(item.greedy_eval);
    check_one(item.exact_eval);
  }
  for (const PolicyEvaluation& eval : tiny_evals) check_one(eval);
  harness.report(3, "noncompletion integral equals expected cost", ok == checked,
                 std::to_string(ok) + "/" + std::to_string(checked) + " evaluations to 1e-9");
}

void check_active_state_masses(Harness& harness, const std::vector<Solved>& batch) {
  int checked = 0, ok = 0;
  for (const Solved& item : batch) {
    const NodeTiming schedule = timing(item.instance, item.greedy_tree);
    const auto members_of = node_version_spaces(item.instance, item.greedy_tree);
    std::vector<double> breaks;
    for (int v = 0; v < item.greedy_tree.num_nodes(); ++v) {
      breaks.push_back(schedule.start[v]);
      breaks.push_back(schedule.end[v]);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    for (std::size_t i = 1; i < breaks.size(); ++i) {
      const double t = (breaks[i - 1] + breaks[i]) / 2.0;
      // A segment one ulp wide has no interior double to sample.
      if (!(breaks[i - 1] < t && t < breaks[i])) continue;
      double active_mass = 0.0;
      for (int v : active_states(item.greedy_tree, schedule, t))
        for (int h : members_of[v]) active_mass += item.instance.priors[h];
      ++checked;
      if (std::fabs(active_mass - item.greedy_eval.noncompletion.value(t)) <= kTol) ++ok;
    }
  }
  harness.report(4, "active-state masses equal the noncompletion curve", ok == checked,
                 std::to_string(ok) + "/" + std::to_string(checked) + " breakpoint midpoints");
}

void check_bound_suite(Harness& harness, const std::vector<Solved>& batch) {
  int checked = 0, ok = 0;
  for (const Solved& item : batch) {
    for (const double L :
         {default_scale(item.instance.num_hypotheses()), 0.5, 1.0, 2.0}) {
      ++checked;
      const DiagnosticsReport report =
          verify_bounds(item.instance, item.greedy_tree, item.exact_tree, L);
      if (report.pass) ++ok;
    }
  }
  harness.report(5, "score and residual bound suite", ok == checked,
                 std::to_string(ok) + "/" + std::to_string(checked) +
                     " (instance, L) runs with zero violations");
}

void check_harmonic_bound(Harness& harness, const std::vector<Solved>& batch) {
  int checked = 0, ok = 0;
  for (const Solved& item : batch) {
    const double cap = 1.0 + std::log(static_cast<double>(item.instance.num_hypotheses()));
    for (double sum : harmonic_path_sums(item.instance, item.greedy_tree)) {
      ++checked;
      if (sum <= cap + kTol) ++ok;
    }
  }
  harness.report(6, "harmonic elimination bound on greedy paths", ok == checked,
                 std::to_string(ok) + "/" + std::to_string(checked) + " root-leaf paths within 1+ln m");
}

void check_schedule_example(Harness& harness) {
  // Worked policy schedule: queries e1, e2 cost 3 and e3, e4 cost 5, states
  // b and d mid-tree; at t=9 exactly the states d and g are active.
  const Instance instance = test::make_instance(
      {"xxxx", "xyxx", "xyxy", "yxxx", "yxyx", "yyyx"}, {}, {3.0, 3.0, 5.0, 5.0});
  DecisionTree tree;
  tree.algorithm = "manual";
  tree.root = 0;
  tree.nodes.resize(11);
  const int x1 = instance.response_codes[0][0], y1 = instance.response_codes[0][3];
  const int x2 = instance.response_codes[1][0], y2 = instance.response_codes[1][1];
  const int x3 = instance.response_codes[2][0], y3 = instance.response_codes[2][4];
  const int x4 = instance.response_codes[3][0], y4 = instance.response_codes[3][2];
  tree.nodes[0] = {0, -1, {{x1, 1}, {y1, 6}}};   // root asks e1
  tree.nodes[1] = {1, -1, {{x2, 2}, {y2, 3}}};   // b... labels follow the walkthrough
  tree.nodes[2] = {-1, 0, {}};
  tree.nodes[3] = {3, -1, {{x4, 4}, {y4, 5}}};   // d asks e4
  tree.nodes[4] = {-1, 1, {}};
  tree.nodes[5] = {-1, 2, {}};
  tree.nodes[6] = {2, -1, {{x3, 7}, {y3, 8}}};   // b asks e3
  tree.nodes[7] = {-1, 3, {}};
  tree.nodes[8] = {1, -1, {{x2, 9}, {y2, 10}}};  // g asks e2
  tree.nodes[9] = {-1, 4, {}};
  tree.nodes[10] = {-1, 5, {}};
  for (auto& node : tree.nodes) std::sort(node.branches.begin(), node.branches.end());

  const NodeTiming schedule = timing(instance, tree);
  const bool pass = is_feasible(instance, tree) && schedule.start[6] == 3.0 &&
                    schedule.end[6] == 8.0 && schedule.start[3] == 6.0 &&
                    schedule.end[3] == 11.0 &&
                    active_states(tree, schedule, 9.0) == std::vector<int>{3, 8};
  harness.report(7, "worked schedule example", pass,
                 "start(b)=3, end(b)=8, start(d)=6, end(d)=11, active at t=9 = {d, g}");
}

void check_power_of_two_family(Harness& harness) {
  bool pass = true;
  std::string detail;
  for (int k = 0; k <= 6; ++k) {
    FamilySpec spec;
    spec.family = Family::BinarySearch;
    spec.m = 1 << k;
    const Instance instance = generate(spec);
    const double greedy_cost = evaluate(instance, greedy_solve(instance)).expected_cost;
    const double exact_cost = exact_solve(instance).expected_cost;
    if (greedy_cost != static_cast<double>(k) || exact_cost != static_cast<double>(k)) {
      pass = false;
      detail += " m=" + std::to_string(1 << k) + " gave greedy " + fmt(greedy_cost) + ", exact " +
                fmt(exact_cost) + ";";
    }
  }
  harness.report(8, "power-of-two search family costs exactly log2(m)", pass,
                 pass ? "greedy and exact both hit k for k = 0..6" : detail);
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string command = "'" + cli + "' " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void check_cli_determinism(Harness& harness) {
  std::string cli;
  if (const char* env = std::getenv("ODT_CLI")) cli = env;
  if (cli.empty() && fs::exists("tools/odt")) cli = "tools/odt";
  if (cli.empty()) {
    harness.report(9, "CLI determinism", false, "set ODT_CLI to the odt binary path");
    return;
  }

  const fs::path dir = fs::temp_directory_path() / ("odt_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");

  int mismatches = 0, errors = 0, files = 0;
  auto one_round = [&](const fs::path& base) {
    const std::string bs4 = (base / "bs4.json").string();
    const std::string rnd = (base / "rnd.json").string();
    const std::string tree = (base / "tree.json").string();
    std::vector<std::string> commands = {
        "gen --family binary-search --m 4 --out '" + bs4 + "'",
        "gen --family random --m 6 --n 8 --seed 7 --prior random --cost-min 0.5 --cost-max 2 --out '" + rnd + "'",
        "solve --algo greedy '" + bs4 + "' --out '" + tree + "'",
        "solve --algo exact '" + rnd + "' --out '" + (base / "exact.json").string() + "'",
        "solve --algo greedy --criterion gini '" + rnd + "' --out '" + (base / "gini.json").string() + "'",
        "evaluate '" + rnd + "' --tree '" + (base / "gini.json").string() + "' --out '" +
            (base / "eval.json").string() + "'",
        "certify '" + rnd + "' --out '" + (base / "cert.json").string() + "'",
        "diagnose '" + rnd + "' --stems --out '" + (base / "diag.json").string() + "'",
        "diagnose --L 0.5 '" + rnd + "' --out '" + (base / "diag_l.json").string() + "'",
        "export-dot '" + tree + "' --out '" + (base / "tree.dot").string() + "'",
        "certify --batch 4 --seed 3 --m-max 6 --out '" + (base / "batch.json").string() + "'",
    };
    for (const std::string& command : commands)
      if (run_cli(cli, command) != 0) ++errors;
  };
  one_round(dir / "a");
  one_round(dir / "b");
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    ++files;
    if (slurp(entry.path()) != slurp(dir / "b" / entry.path().filename())) ++mismatches;
  }
  fs::remove_all(dir);
  harness.report(9, "CLI determinism", errors == 0 && mismatches == 0 && files > 0,
                 std::to_string(files) + " files byte-identical across reruns, " +
                     std::to_string(errors) + " command errors");
}

}  // namespace

int main() {
  Harness harness;
  const std::vector<Solved> batch = solve_batch(500);
  check_guarantee(harness, batch);
  const std::vector<PolicyEvaluation> tiny_evals = check_oracle_equivalence(harness);
  check_integral_identity(harness, batch, tiny_evals);
  check_active_state_masses(harness, batch);
  check_bound_suite(harness, batch);
  check_harmonic_bound(harness, batch);
  check_schedule_example(harness);
  check_power_of_two_family(harness);
  check_cli_determinism(harness);
  if (harness.failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", harness.failures);
  return 1;
}
