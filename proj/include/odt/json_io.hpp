#ifndef ODT_JSON_IO_HPP
#define ODT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "odt/diagnostics.hpp"
#include "odt/evaluation.hpp"
#include "odt/instance.hpp"
#include "odt/tree.hpp"

namespace odt {

/// Instance wire format, shared by every CLI command:
///   { "hypotheses": [{"id", "prob"}], "queries": [{"id", "cost"}],
///     "responses": { hypothesis id: { query id: response id } } }
/// Probabilities and costs may be numbers or decimal strings; ids are
/// nonempty and unique within their list.
nlohmann::ordered_json instance_to_json(const Instance& instance);

/// Parses, validates and renormalizes (exactly once) an instance document.
/// Malformed documents throw Error("PARSE-ERROR") naming the offending
/// field; invariant violations throw Error("VALIDATION-ERROR").
Instance instance_from_json(const nlohmann::json& doc);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

/// Tree wire format: preorder node array; internal nodes carry the query id,
/// its cost and a response-id -> child-index map, leaves the hypothesis id.
nlohmann::ordered_json tree_to_json(const DecisionTree& tree, const Instance& instance,
                                    double expected_cost);
DecisionTree tree_from_json(const nlohmann::json& doc, const Instance& instance);
DecisionTree load_tree(const std::string& path, const Instance& instance);

nlohmann::ordered_json evaluation_to_json(const PolicyEvaluation& eval, const Instance& instance);
nlohmann::ordered_json certificate_to_json(const Certificate& certificate);
nlohmann::ordered_json diagnostics_to_json(const DiagnosticsReport& report);

/// Graphviz digraph of a tree document (no instance needed): internal nodes
/// labeled "query (c=cost)", edges labeled by response id, leaves boxed and
/// labeled by hypothesis id, preorder node numbering.
std::string tree_json_to_dot(const nlohmann::json& doc);

nlohmann::json load_json(const std::string& path);

/// Writes a document with two-space indentation and a trailing newline.
/// Takes ordered_json so field order survives serialization byte for byte.
void save_json(const nlohmann::ordered_json& doc, const std::string& path);

}  // namespace odt

#endif  // ODT_JSON_IO_HPP
