#include "odt/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "odt/error.hpp"

namespace odt {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double parse_amount(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    const char* begin = text.c_str();
    char* end = nullptr;
    const double parsed = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
      throw Error("PARSE-ERROR", where + ": '" + text + "' is not a decimal number");
    return parsed;
  }
  throw Error("PARSE-ERROR", where + ": expected a number or decimal string");
}

const json& require_field(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key))
    throw Error("PARSE-ERROR", where + ": missing field '" + key + "'");
  return doc.at(key);
}

std::string require_id(const json& value, const std::string& where) {
  if (!value.is_string() || value.get<std::string>().empty())
    throw Error("PARSE-ERROR", where + ": ids must be nonempty strings");
  return value.get<std::string>();
}

}  // namespace

ordered_json instance_to_json(const Instance& instance) {
  ordered_json doc;
  doc["hypotheses"] = ordered_json::array();
  for (int h = 0; h < instance.num_hypotheses(); ++h)
    doc["hypotheses"].push_back({{"id", instance.hypothesis_ids[h]}, {"prob", instance.priors[h]}});
  doc["queries"] = ordered_json::array();
  for (int e = 0; e < instance.num_queries(); ++e)
    doc["queries"].push_back({{"id", instance.query_ids[e]}, {"cost", instance.costs[e]}});
  ordered_json table = ordered_json::object();
  for (int h = 0; h < instance.num_hypotheses(); ++h) {
    ordered_json row = ordered_json::object();
    for (int e = 0; e < instance.num_queries(); ++e)
      row[instance.query_ids[e]] = instance.response_names[e][instance.response(e, h)];
    table[instance.hypothesis_ids[h]] = std::move(row);
  }
  doc["responses"] = std::move(table);
  return doc;
}

Instance instance_from_json(const json& doc) {
  const json& hypotheses = require_field(doc, "hypotheses", "instance");
  const json& queries = require_field(doc, "queries", "instance");
  const json& responses = require_field(doc, "responses", "instance");
  if (!hypotheses.is_array()) throw Error("PARSE-ERROR", "instance: 'hypotheses' must be an array");
  if (!queries.is_array()) throw Error("PARSE-ERROR", "instance: 'queries' must be an array");
  if (!responses.is_object()) throw Error("PARSE-ERROR", "instance: 'responses' must be an object");

  std::vector<std::string> hypothesis_ids;
  std::vector<double> priors;
  for (const json& entry : hypotheses) {
    hypothesis_ids.push_back(require_id(require_field(entry, "id", "hypothesis"), "hypothesis"));
    priors.push_back(parse_amount(require_field(entry, "prob", "hypothesis '" + hypothesis_ids.back() + "'"),
                                  "prob of hypothesis '" + hypothesis_ids.back() + "'"));
  }
  std::vector<std::string> query_ids;
  std::vector<double> costs;
  for (const json& entry : queries) {
    query_ids.push_back(require_id(require_field(entry, "id", "query"), "query"));
    costs.push_back(parse_amount(require_field(entry, "cost", "query '" + query_ids.back() + "'"),
                                 "cost of query '" + query_ids.back() + "'"));
  }
  for (std::size_t i = 0; i < hypothesis_ids.size(); ++i)
    for (std::size_t j = i + 1; j < hypothesis_ids.size(); ++j)
      if (hypothesis_ids[i] == hypothesis_ids[j])
        throw Error("PARSE-ERROR", "duplicate hypothesis id '" + hypothesis_ids[i] + "'");
  for (std::size_t i = 0; i < query_ids.size(); ++i)
    for (std::size_t j = i + 1; j < query_ids.size(); ++j)
      if (query_ids[i] == query_ids[j])
        throw Error("PARSE-ERROR", "duplicate query id '" + query_ids[i] + "'");

  for (const auto& [hid, row] : responses.items()) {
    bool known = false;
    for (const std::string& id : hypothesis_ids) known = known || id == hid;
    if (!known) throw Error("PARSE-ERROR", "responses reference unknown hypothesis '" + hid + "'");
    if (!row.is_object())
      throw Error("PARSE-ERROR", "responses for hypothesis '" + hid + "' must be an object");
    for (const auto& [qid, rid] : row.items()) {
      bool query_known = false;
      for (const std::string& id : query_ids) query_known = query_known || id == qid;
      if (!query_known)
        throw Error("PARSE-ERROR", "responses reference unknown query '" + qid + "'");
      require_id(rid, "response of hypothesis '" + hid + "' to query '" + qid + "'");
    }
  }

  // The table must be complete: every (hypothesis, query) cell present.
  std::vector<std::vector<std::string>> table(hypothesis_ids.size(),
                                              std::vector<std::string>(query_ids.size()));
  for (std::size_t h = 0; h < hypothesis_ids.size(); ++h) {
    if (!responses.contains(hypothesis_ids[h]))
      throw Error("PARSE-ERROR", "missing response row for hypothesis '" + hypothesis_ids[h] + "'");
    const json& row = responses.at(hypothesis_ids[h]);
    for (std::size_t e = 0; e < query_ids.size(); ++e) {
      if (!row.contains(query_ids[e]))
        throw Error("PARSE-ERROR", "missing response for hypothesis '" + hypothesis_ids[h] +
                                       "', query '" + query_ids[e] + "'");
      table[h][e] = row.at(query_ids[e]).get<std::string>();
    }
  }

  Instance instance = Instance::from_parts(std::move(hypothesis_ids), std::move(priors),
                                           std::move(query_ids), std::move(costs), table);
  require_valid(instance);
  instance.priors = normalize_priors(std::move(instance.priors));
  return instance;
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

void save_instance(const Instance& instance, const std::string& path) {
  save_json(instance_to_json(instance), path);
}

ordered_json tree_to_json(const DecisionTree& tree, const Instance& instance,
                          double expected_cost) {
  ordered_json doc;
  doc["algorithm"] = tree.algorithm;
  if (!tree.criterion.empty()) doc["criterion"] = tree.criterion;
  doc["expected_cost"] = expected_cost;
  doc["root"] = tree.root;
  doc["nodes"] = ordered_json::array();
  for (const TreeNode& node : tree.nodes) {
    ordered_json entry;
    if (node.is_leaf()) {
      entry["type"] = "leaf";
      entry["hypothesis"] = instance.hypothesis_ids[node.hypothesis];
    } else {
      entry["type"] = "internal";
      entry["query"] = instance.query_ids[node.query];
      entry["cost"] = instance.costs[node.query];
      ordered_json branches = ordered_json::object();
      for (const auto& [response, child] : node.branches)
        branches[instance.response_names[node.query][response]] = child;
      entry["branches"] = std::move(branches);
    }
    doc["nodes"].push_back(std::move(entry));
  }
  return doc;
}

DecisionTree tree_from_json(const json& doc, const Instance& instance) {
  DecisionTree tree;
  tree.algorithm = require_field(doc, "algorithm", "tree").get<std::string>();
  if (doc.contains("criterion")) tree.criterion = doc.at("criterion").get<std::string>();
  tree.root = require_field(doc, "root", "tree").get<int>();
  const json& nodes = require_field(doc, "nodes", "tree");
  if (!nodes.is_array()) throw Error("PARSE-ERROR", "tree: 'nodes' must be an array");

  for (const json& entry : nodes) {
    TreeNode node;
    const std::string type = require_field(entry, "type", "tree node").get<std::string>();
    if (type == "leaf") {
      const std::string hid = require_id(require_field(entry, "hypothesis", "leaf"), "leaf");
      node.hypothesis = instance.hypothesis_index(hid);
      if (node.hypothesis < 0)
        throw Error("PARSE-ERROR", "leaf references unknown hypothesis '" + hid + "'");
    } else if (type == "internal") {
      const std::string qid = require_id(require_field(entry, "query", "internal node"), "node");
      node.query = instance.query_index(qid);
      if (node.query < 0)
        throw Error("PARSE-ERROR", "node references unknown query '" + qid + "'");
      const json& branches = require_field(entry, "branches", "internal node");
      for (const auto& [rid, child] : branches.items()) {
        int response = -1;
        for (int code = 0; code < instance.alphabet_size(node.query); ++code)
          if (instance.response_names[node.query][code] == rid) response = code;
        if (response < 0)
          throw Error("PARSE-ERROR", "branch references unknown response '" + rid +
                                         "' of query '" + qid + "'");
        if (!child.is_number_integer())
          throw Error("PARSE-ERROR", "branch targets must be node indices");
        node.branches.emplace_back(response, child.get<int>());
      }
      std::sort(node.branches.begin(), node.branches.end());
    } else {
      throw Error("PARSE-ERROR", "tree node type must be 'leaf' or 'internal', got '" + type + "'");
    }
    tree.nodes.push_back(std::move(node));
  }

  if (tree.root < 0 || tree.root >= tree.num_nodes())
    throw Error("PARSE-ERROR", "tree root index out of range");
  for (const TreeNode& node : tree.nodes)
    for (const auto& [response, child] : node.branches)
      if (child < 0 || child >= tree.num_nodes())
        throw Error("PARSE-ERROR", "branch target out of range");
  return tree;
}

DecisionTree load_tree(const std::string& path, const Instance& instance) {
  return tree_from_json(load_json(path), instance);
}

ordered_json evaluation_to_json(const PolicyEvaluation& eval, const Instance& instance) {
  ordered_json doc;
  doc["expected_cost"] = eval.expected_cost;
  ordered_json costs = ordered_json::object();
  for (int h = 0; h < instance.num_hypotheses(); ++h)
    costs[instance.hypothesis_ids[h]] = eval.path_costs[h];
  doc["path_costs"] = std::move(costs);
  ordered_json curve;
  curve["breakpoints"] = eval.noncompletion.breakpoints();
  ordered_json levels = ordered_json::array();
  for (std::size_t i = 0; i < eval.noncompletion.breakpoints().size(); ++i)
    levels.push_back(eval.noncompletion.level(static_cast<int>(i)));
  curve["levels"] = std::move(levels);
  doc["noncompletion"] = std::move(curve);
  return doc;
}

ordered_json certificate_to_json(const Certificate& certificate) {
  ordered_json doc;
  doc["expected_greedy"] = certificate.expected_greedy;
  doc["expected_opt"] = certificate.expected_opt;
  doc["ratio"] = certificate.ratio;
  doc["bound"] = certificate.bound;
  doc["pass"] = certificate.pass;
  return doc;
}

namespace {

ordered_json check_records_to_json(const std::vector<CheckRecord>& records, bool with_witness) {
  ordered_json list = ordered_json::array();
  for (const CheckRecord& rec : records) {
    ordered_json entry;
    entry["t"] = rec.t;
    entry["lhs"] = rec.lhs;
    entry["rhs"] = rec.rhs;
    entry["slack"] = rec.slack;
    entry["pass"] = rec.pass;
    if (with_witness) entry["witness"] = rec.witness;
    list.push_back(std::move(entry));
  }
  return list;
}

}  // namespace

ordered_json diagnostics_to_json(const DiagnosticsReport& report) {
  ordered_json doc;
  doc["m"] = report.m;
  doc["L"] = report.L;
  doc["samples"] = report.samples;
  ordered_json checks;
  checks["score_lower_bound"] = check_records_to_json(report.score_lower_bound, false);
  checks["stem_step_bound"] = check_records_to_json(report.stem_step_bound, true);
  checks["residual_mass_bound"] = check_records_to_json(report.residual_mass_bound, false);
  checks["state_score_bound"] = check_records_to_json(report.state_score_bound, true);
  checks["score_tail_bound"] = check_records_to_json(report.score_tail_bound, false);
  doc["checks"] = std::move(checks);
  doc["pass"] = report.pass;
  if (!report.stems.empty()) {
    ordered_json stems = ordered_json::array();
    for (const StemRecord& record : report.stems) {
      ordered_json entry;
      entry["t"] = record.t;
      entry["state"] = record.node;
      ordered_json steps = ordered_json::array();
      for (const StemStep& step : record.trace.steps) {
        steps.push_back({{"node", step.node},
                         {"query", step.query},
                         {"heavy_response", step.heavy_response},
                         {"heavy", step.heavy},
                         {"complement", step.complement}});
      }
      entry["steps"] = std::move(steps);
      entry["total_cost"] = record.trace.total_cost;
      entry["residual"] = record.trace.residual;
      entry["residual_mass"] = record.trace.residual_mass;
      entry["unresolved"] = record.trace.unresolved;
      stems.push_back(std::move(entry));
    }
    doc["stems"] = std::move(stems);
  }
  return doc;
}

std::string tree_json_to_dot(const json& doc) {
  const json& nodes = require_field(doc, "nodes", "tree");
  if (!nodes.is_array()) throw Error("PARSE-ERROR", "tree: 'nodes' must be an array");
  const int root = require_field(doc, "root", "tree").get<int>();
  if (root < 0 || root >= static_cast<int>(nodes.size()))
    throw Error("PARSE-ERROR", "tree root index out of range");

  std::ostringstream out;
  out << "digraph decision_tree {\n";
  out << "  node [fontname=\"Helvetica\"];\n";

  // Preorder walk; a hand-written file may store nodes in any order.
  std::vector<int> stack{root};
  std::vector<bool> seen(nodes.size(), false);
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v < 0 || v >= static_cast<int>(nodes.size()))
      throw Error("PARSE-ERROR", "branch target out of range");
    if (seen[v]) throw Error("PARSE-ERROR", "tree nodes must not be shared");
    seen[v] = true;
    const json& node = nodes.at(v);
    const std::string type = require_field(node, "type", "tree node").get<std::string>();
    if (type == "leaf") {
      out << "  n" << v << " [label=\"" << require_field(node, "hypothesis", "leaf").get<std::string>()
          << "\", shape=box];\n";
      continue;
    }
    if (type != "internal")
      throw Error("PARSE-ERROR", "tree node type must be 'leaf' or 'internal'");
    out << "  n" << v << " [label=\"" << require_field(node, "query", "node").get<std::string>()
        << " (c=" << require_field(node, "cost", "node").dump() << ")\", shape=ellipse];\n";
    const json& branches = require_field(node, "branches", "node");
    std::vector<std::pair<std::string, int>> edges;
    for (const auto& [rid, child] : branches.items())
      edges.emplace_back(rid, child.get<int>());
    std::sort(edges.begin(), edges.end());
    for (const auto& [rid, child] : edges)
      out << "  n" << v << " -> n" << child << " [label=\"" << rid << "\"];\n";
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) stack.push_back(it->second);
  }
  out << "}\n";
  return out.str();
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("PARSE-ERROR", "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error("PARSE-ERROR", "'" + path + "': " + e.what());
  }
  return doc;
}

void save_json(const ordered_json& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IO-ERROR", "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace odt
