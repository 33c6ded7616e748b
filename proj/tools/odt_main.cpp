#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "odt/criteria.hpp"
#include "odt/diagnostics.hpp"
#include "odt/error.hpp"
#include "odt/evaluation.hpp"
#include "odt/exact.hpp"
#include "odt/greedy.hpp"
#include "odt/instance.hpp"
#include "odt/json_io.hpp"
#include "odt/rng.hpp"

namespace {

// Exit codes: 0 success / all checks pass, 1 usage or parse error,
// 2 generation failure, 3 infeasible instance, 4 budget exceeded,
// 5 check failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGeneration = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;
constexpr int kExitCheckFailed = 5;

int exit_code_for(const odt::Error& error) {
  const std::string& code = error.code();
  if (code == "GENERATION-FAILED") return kExitGeneration;
  if (code == "VALIDATION-ERROR" || code == "INFEASIBLE" || code == "STUCK") return kExitInfeasible;
  if (code == "BUDGET-EXCEEDED" || code == "SIZE-EXCEEDED") return kExitBudget;
  return kExitUsage;
}

std::string pretty(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

struct GenArgs {
  std::string family = "random";
  int m = 2;
  int n = 0;
  std::uint64_t seed = 0;
  double cost_min = 1.0;
  double cost_max = 1.0;
  std::string prior = "uniform";
  int alphabet = 2;
  std::string out;
};

struct SolveArgs {
  std::string instance_path;
  std::string algo = "greedy";
  std::string criterion = "delta-over-cost";
  std::uint64_t budget = odt::kDefaultStateBudget;
  std::string out;
};

struct EvaluateArgs {
  std::string instance_path;
  std::string tree_path;
  std::string out;
};

struct CertifyArgs {
  std::string instance_path;
  std::uint64_t budget = odt::kDefaultStateBudget;
  std::string out;
  int batch = 0;
  std::uint64_t seed = 0;
  int m_min = 2;
  int m_max = 12;
  double cost_min = 0.1;
  double cost_max = 10.0;
};

struct DiagnoseArgs {
  std::string instance_path;
  double L = 0.0;  // 0 = default 4 (1 + ln m)
  std::uint64_t budget = odt::kDefaultStateBudget;
  bool stems = false;
  std::string out;
  int batch = 0;
  std::uint64_t seed = 0;
  int m_min = 2;
  int m_max = 12;
  double cost_min = 0.1;
  double cost_max = 10.0;
};

struct ExportArgs {
  std::string tree_path;
  std::string out;
};

odt::FamilySpec batch_spec(std::uint64_t seed, std::uint64_t index, int m_min, int m_max,
                           double cost_min, double cost_max) {
  const std::uint64_t derived = odt::derive_seed(seed, index);
  odt::Rng rng(derived);
  odt::FamilySpec spec;
  spec.family = odt::Family::Random;
  spec.m = m_min + static_cast<int>(rng.next_below(m_max - m_min + 1));
  spec.n = spec.m - 1 + static_cast<int>(rng.next_below(2 * spec.m + 2));  // in [m-1, 3m]
  spec.seed = rng.next_u64();
  spec.cost_min = cost_min;
  spec.cost_max = cost_max;
  spec.prior = odt::PriorShape::Random;
  spec.alphabet = 2 + static_cast<int>(rng.next_below(3));
  return spec;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw odt::Error("IO-ERROR", "cannot write '" + path + "'");
  out << text;
}

int run_gen(const GenArgs& args) {
  odt::FamilySpec spec;
  spec.family = odt::family_from_string(args.family);
  spec.m = args.m;
  spec.n = args.n;
  spec.seed = args.seed;
  spec.cost_min = args.cost_min;
  spec.cost_max = args.cost_max;
  spec.prior = odt::prior_shape_from_string(args.prior);
  spec.alphabet = args.alphabet;
  const odt::Instance instance = odt::generate(spec);
  odt::save_instance(instance, args.out);
  std::cout << "wrote " << args.out << " (m=" << instance.num_hypotheses()
            << ", n=" << instance.num_queries() << ")\n";
  return kExitOk;
}

int run_solve(const SolveArgs& args) {
  const odt::Instance instance = odt::load_instance(args.instance_path);
  odt::DecisionTree tree;
  if (args.algo == "greedy") {
    tree = odt::greedy_solve(instance, odt::find_criterion(args.criterion));
  } else if (args.algo == "exact") {
    tree = odt::exact_solve(instance, args.budget).tree;
  } else {
    throw odt::Error("USAGE-ERROR", "unknown algorithm '" + args.algo + "'");
  }
  const odt::PolicyEvaluation eval = odt::evaluate(instance, tree);
  std::cout << "expected_cost " << pretty(eval.expected_cost) << "\n";
  if (!args.out.empty()) {
    odt::save_json(odt::tree_to_json(tree, instance, eval.expected_cost), args.out);
    std::cout << "wrote " << args.out << "\n";
  }
  return kExitOk;
}

int run_evaluate(const EvaluateArgs& args) {
  const odt::Instance instance = odt::load_instance(args.instance_path);
  const odt::DecisionTree tree = odt::load_tree(args.tree_path, instance);
  const odt::PolicyEvaluation eval = odt::evaluate(instance, tree);
  std::cout << "expected_cost " << pretty(eval.expected_cost) << "\n";
  if (!args.out.empty()) {
    odt::save_json(odt::evaluation_to_json(eval, instance), args.out);
    std::cout << "wrote " << args.out << "\n";
  }
  return kExitOk;
}

odt::Certificate certify_instance(const odt::Instance& instance, std::uint64_t budget) {
  const odt::PolicyEvaluation greedy_eval = odt::evaluate(instance, odt::greedy_solve(instance));
  const odt::PolicyEvaluation exact_eval =
      odt::evaluate(instance, odt::exact_solve(instance, budget).tree);
  return odt::certify(instance, greedy_eval, exact_eval);
}

int run_certify(const CertifyArgs& args) {
  if (args.batch > 0) {
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    bool all_pass = true;
    double worst_ratio = 0.0;
    for (int i = 0; i < args.batch; ++i) {
      const odt::FamilySpec spec =
          batch_spec(args.seed, i, args.m_min, args.m_max, args.cost_min, args.cost_max);
      const odt::Instance instance = odt::generate(spec);
      const odt::Certificate certificate = certify_instance(instance, args.budget);
      nlohmann::ordered_json entry = odt::certificate_to_json(certificate);
      entry["index"] = i;
      entry["m"] = instance.num_hypotheses();
      entry["n"] = instance.num_queries();
      results.push_back(std::move(entry));
      all_pass = all_pass && certificate.pass;
      worst_ratio = std::max(worst_ratio, certificate.ratio);
    }
    if (!args.out.empty()) odt::save_json(results, args.out);
    std::cout << (all_pass ? "PASS" : "FAIL") << " " << args.batch
              << " instances, worst ratio " << pretty(worst_ratio) << "\n";
    return all_pass ? kExitOk : kExitCheckFailed;
  }

  const odt::Instance instance = odt::load_instance(args.instance_path);
  const odt::Certificate certificate = certify_instance(instance, args.budget);
  if (!args.out.empty()) odt::save_json(odt::certificate_to_json(certificate), args.out);
  std::cout << "greedy " << pretty(certificate.expected_greedy) << " exact "
            << pretty(certificate.expected_opt) << " ratio " << pretty(certificate.ratio)
            << " bound " << pretty(certificate.bound) << " "
            << (certificate.pass ? "PASS" : "FAIL") << "\n";
  return certificate.pass ? kExitOk : kExitCheckFailed;
}

odt::DiagnosticsReport diagnose_instance(const odt::Instance& instance, double L,
                                         std::uint64_t budget, bool stems) {
  const odt::DecisionTree greedy_tree = odt::greedy_solve(instance);
  const odt::DecisionTree optimal_tree = odt::exact_solve(instance, budget).tree;
  const double scale = L > 0.0 ? L : odt::default_scale(instance.num_hypotheses());
  return odt::verify_bounds(instance, greedy_tree, optimal_tree, scale, {}, stems);
}

int run_diagnose(const DiagnoseArgs& args) {
  if (args.batch > 0) {
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    bool all_pass = true;
    for (int i = 0; i < args.batch; ++i) {
      const odt::FamilySpec spec =
          batch_spec(args.seed, i, args.m_min, args.m_max, args.cost_min, args.cost_max);
      const odt::Instance instance = odt::generate(spec);
      const odt::DiagnosticsReport report =
          diagnose_instance(instance, args.L, args.budget, false);
      nlohmann::ordered_json entry;
      entry["index"] = i;
      entry["m"] = instance.num_hypotheses();
      entry["n"] = instance.num_queries();
      entry["L"] = report.L;
      entry["pass"] = report.pass;
      results.push_back(std::move(entry));
      all_pass = all_pass && report.pass;
    }
    if (!args.out.empty()) odt::save_json(results, args.out);
    std::cout << (all_pass ? "PASS" : "FAIL") << " " << args.batch << " instances\n";
    return all_pass ? kExitOk : kExitCheckFailed;
  }

  const odt::Instance instance = odt::load_instance(args.instance_path);
  const odt::DiagnosticsReport report =
      diagnose_instance(instance, args.L, args.budget, args.stems);
  if (!args.out.empty()) odt::save_json(odt::diagnostics_to_json(report), args.out);
  std::cout << (report.pass ? "PASS" : "FAIL") << " L=" << pretty(report.L) << " over "
            << report.samples.size() << " sample times\n";
  return report.pass ? kExitOk : kExitCheckFailed;
}

int run_export_dot(const ExportArgs& args) {
  const std::string dot = odt::tree_json_to_dot(odt::load_json(args.tree_path));
  if (args.out.empty()) {
    std::cout << dot;
  } else {
    write_text(dot, args.out);
    std::cout << "wrote " << args.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odt - optimal decision tree toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--family", gen_args.family, "random | binary-search | singleton-tests");
  gen->add_option("--m", gen_args.m, "number of hypotheses")->required();
  gen->add_option("--n", gen_args.n, "number of queries (random family)");
  gen->add_option("--seed", gen_args.seed, "generation seed");
  gen->add_option("--cost-min", gen_args.cost_min, "lower cost bound (random family)");
  gen->add_option("--cost-max", gen_args.cost_max, "upper cost bound (random family)");
  gen->add_option("--prior", gen_args.prior, "uniform | random");
  gen->add_option("--alphabet", gen_args.alphabet, "response alphabet size (random family)");
  gen->add_option("--out", gen_args.out, "output instance path")->required();

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "build a decision tree for an instance");
  solve->add_option("instance", solve_args.instance_path, "instance file")->required();
  solve->add_option("--algo", solve_args.algo, "greedy | exact");
  solve->add_option("--criterion", solve_args.criterion, "greedy split criterion name");
  solve->add_option("--budget", solve_args.budget, "exact solver state budget");
  solve->add_option("--out", solve_args.out, "output tree path");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate a tree file on an instance");
  evaluate->add_option("instance", evaluate_args.instance_path, "instance file")->required();
  evaluate->add_option("--tree", evaluate_args.tree_path, "tree file")->required();
  evaluate->add_option("--out", evaluate_args.out, "output evaluation path");

  CertifyArgs certify_args;
  CLI::App* certify = app.add_subcommand(
      "certify", "compare greedy against the exact optimum and check the 8(1+ln m) bound");
  certify->add_option("instance", certify_args.instance_path, "instance file");
  certify->add_option("--budget", certify_args.budget, "exact solver state budget");
  certify->add_option("--out", certify_args.out, "output report path");
  certify->add_option("--batch", certify_args.batch, "certify this many random instances instead");
  certify->add_option("--seed", certify_args.seed, "batch seed");
  certify->add_option("--m-min", certify_args.m_min, "batch minimum m");
  certify->add_option("--m-max", certify_args.m_max, "batch maximum m");
  certify->add_option("--cost-min", certify_args.cost_min, "batch cost lower bound");
  certify->add_option("--cost-max", certify_args.cost_max, "batch cost upper bound");

  DiagnoseArgs diagnose_args;
  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "run the bound suite relating the greedy tree to the optimal tree");
  diagnose->add_option("instance", diagnose_args.instance_path, "instance file");
  diagnose->add_option("--L", diagnose_args.L, "scale parameter (default 4(1+ln m))");
  diagnose->add_option("--budget", diagnose_args.budget, "exact solver state budget");
  diagnose->add_flag("--stems", diagnose_args.stems, "include stem traces in the report");
  diagnose->add_option("--out", diagnose_args.out, "output report path");
  diagnose->add_option("--batch", diagnose_args.batch, "diagnose this many random instances instead");
  diagnose->add_option("--seed", diagnose_args.seed, "batch seed");
  diagnose->add_option("--m-min", diagnose_args.m_min, "batch minimum m");
  diagnose->add_option("--m-max", diagnose_args.m_max, "batch maximum m");
  diagnose->add_option("--cost-min", diagnose_args.cost_min, "batch cost lower bound");
  diagnose->add_option("--cost-max", diagnose_args.cost_max, "batch cost upper bound");

  ExportArgs export_args;
  CLI::App* export_dot = app.add_subcommand("export-dot", "render a tree file as Graphviz DOT");
  export_dot->add_option("tree", export_args.tree_path, "tree file")->required();
  export_dot->add_option("--out", export_args.out, "output DOT path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (evaluate->parsed()) return run_evaluate(evaluate_args);
    if (certify->parsed()) {
      if (certify_args.batch == 0 && certify_args.instance_path.empty())
        throw odt::Error("USAGE-ERROR", "certify needs an instance file or --batch");
      return run_certify(certify_args);
    }
    if (diagnose->parsed()) {
      if (diagnose_args.batch == 0 && diagnose_args.instance_path.empty())
        throw odt::Error("USAGE-ERROR", "diagnose needs an instance file or --batch");
      return run_diagnose(diagnose_args);
    }
    if (export_dot->parsed()) return run_export_dot(export_args);
  } catch (const odt::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return exit_code_for(error);
  } catch (const nlohmann::json::exception& error) {
    std::cerr << "error: PARSE-ERROR: " << error.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
