#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecsv/config.hpp"
#include "ecsv/solidity/ast.hpp"

namespace ecsv::describe {

using solidity::AstNode;
using solidity::AstPath;
using solidity::NodeType;

struct GrammarRule {
  NodeType node_type;
  std::string template_text;
};

// Node types that produce a description. Everything else (parameters, blocks,
// expressions, type names, pragmas, the source unit) is rendered inside the
// template of an enclosing node.
bool is_describable(NodeType type);

// Placeholders a template for `type` may use: its guaranteed attributes plus
// computed slots (params, returns, condition, args, target, value,
// mutability-phrase).
std::vector<std::string> allowed_placeholders(NodeType type);

// Immutable rule table keyed on node type.
class Grammar {
 public:
  // Validates every template's placeholders; throws ConfigError otherwise.
  explicit Grammar(std::vector<GrammarRule> rules);

  static Grammar defaults();
  // Defaults overridden by the [templates] section of a config.
  static Grammar from_config(const Config& config);

  const GrammarRule* find(NodeType type) const;
  const std::vector<GrammarRule>& rules() const { return rules_; }

 private:
  std::vector<GrammarRule> rules_;
};

std::vector<GrammarRule> default_rules();

struct DescribedNode {
  AstPath node_path;
  NodeType node_type;
  std::string description;

  friend bool operator==(const DescribedNode&, const DescribedNode&) = default;
};

struct SemanticStructure {
  std::string contract_name;
  std::vector<DescribedNode> items;

  friend bool operator==(const SemanticStructure&, const SemanticStructure&) = default;
};

NodeType node_type(const AstNode& node);

// Fills the rule for `node`. Throws MissingRule when the node is describable
// but the grammar has no rule for it.
DescribedNode apply_grammar(const AstNode& node, const AstPath& path, const Grammar& grammar);

// Pre-order walk producing one DescribedNode per describable node.
SemanticStructure describe_contract(const AstNode& root, const Grammar& grammar);

// Infix rendering with the minimum parentheses needed to preserve the tree.
std::string render_expression(const AstNode& expr);

nlohmann::ordered_json semantic_to_json(const SemanticStructure& structure);
std::string semantic_to_json_text(const SemanticStructure& structure);
// "1. contract 'A'\n2. ..." one description per line.
std::string semantic_to_listing(const SemanticStructure& structure);

}  // namespace ecsv::describe
