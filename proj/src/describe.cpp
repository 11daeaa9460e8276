#include "ecsv/describe.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "ecsv/error.hpp"

namespace ecsv::describe {

namespace {

constexpr NodeType kDescribable[] = {
    NodeType::ContractDefinition, NodeType::StateVariableDeclaration, NodeType::EventDefinition,
    NodeType::ConstructorDefinition, NodeType::FunctionDefinition, NodeType::RequireStatement,
    NodeType::EmitStatement, NodeType::Assignment, NodeType::ReturnStatement,
    NodeType::IfStatement, NodeType::ForStatement, NodeType::WhileStatement,
};

std::vector<std::string> computed_slots(NodeType type) {
  switch (type) {
    case NodeType::EventDefinition: return {"params"};
    case NodeType::ConstructorDefinition: return {"params", "mutability-phrase"};
    case NodeType::FunctionDefinition: return {"params", "returns", "mutability-phrase"};
    case NodeType::RequireStatement: return {"condition"};
    case NodeType::EmitStatement: return {"args"};
    case NodeType::Assignment: return {"target", "value"};
    case NodeType::ReturnStatement: return {"args"};
    case NodeType::IfStatement:
    case NodeType::ForStatement:
    case NodeType::WhileStatement: return {"condition"};
    default: return {};
  }
}

// Placeholder names in order of appearance; throws ConfigError on an
// unterminated brace.
std::vector<std::string> placeholders(const std::string& text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    const std::size_t close = text.find('}', i);
    if (close == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "unterminated placeholder in template '" + text + "'");
    }
    out.push_back(text.substr(i + 1, close - i - 1));
    i = close;
  }
  return out;
}

constexpr int kAtomPrecedence = std::numeric_limits<int>::max();

int precedence(const AstNode& expr) {
  if (expr.type != NodeType::BinaryExpression) return kAtomPrecedence;
  const std::string& op = expr.attr("operator");
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "==" || op == "!=") return 3;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
  if (op == "+" || op == "-") return 5;
  return 6;
}

std::string quote_string(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string render_parameter(const AstNode& p) {
  std::string out = p.attr("type");
  if (p.has_attr("location")) out += " " + p.attr("location");
  if (p.has_attr("indexed")) out += " indexed";
  if (p.has_attr("name")) out += " " + p.attr("name");
  return out;
}

std::string join_parameters(const AstNode& owner, std::string_view role) {
  std::string out;
  for (const auto& child : owner.children) {
    if (child.type != NodeType::Parameter || child.attr("role") != role) continue;
    if (!out.empty()) out += ", ";
    out += render_parameter(child);
  }
  return out;
}

std::string join_expressions(const std::vector<AstNode>& nodes, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < nodes.size(); ++i) {
    if (i > from) out += ", ";
    out += render_expression(nodes[i]);
  }
  return out;
}

std::string mutability_phrase(const std::string& mutability) {
  if (mutability == "view") return "reads state without modifying it";
  if (mutability == "pure") return "neither reads nor modifies state";
  if (mutability == "payable") return "accepts payment";
  return "may modify state";
}

std::string slot_value(const AstNode& node, const std::string& slot) {
  if (slot == "params") return join_parameters(node, "parameter");
  if (slot == "returns") return join_parameters(node, "return");
  if (slot == "mutability-phrase") return mutability_phrase(node.attr("mutability"));
  if (slot == "condition") {
    // The for-loop condition is its second child.
    const std::size_t index = node.type == NodeType::ForStatement ? 1 : 0;
    return index < node.children.size() ? render_expression(node.children[index]) : "true";
  }
  if (slot == "args") return join_expressions(node.children);
  if (slot == "target") return render_expression(node.children.at(0));
  if (slot == "value") {
    const std::string& op = node.attr("operator");
    if (op == "=" || op.empty()) return render_expression(node.children.at(1));
    AstNode combined;
    combined.type = NodeType::BinaryExpression;
    combined.attributes["operator"] = op.substr(0, op.size() - 1);
    combined.children = node.children;
    return render_expression(combined);
  }
  return node.attr(slot);
}

}  // namespace

bool is_describable(NodeType type) {
  return std::find(std::begin(kDescribable), std::end(kDescribable), type) != std::end(kDescribable);
}

std::vector<std::string> allowed_placeholders(NodeType type) {
  std::vector<std::string> out;
  for (auto key : solidity::required_attributes(type)) out.emplace_back(key);
  for (auto& slot : computed_slots(type)) out.push_back(std::move(slot));
  return out;
}

std::vector<GrammarRule> default_rules() {
  return {
      {NodeType::ContractDefinition, "contract '{name}'"},
      {NodeType::StateVariableDeclaration,
       "declares a {visibility} state variable '{name}' of type {type}"},
      {NodeType::EventDefinition, "defines event '{name}' with parameters ({params})"},
      {NodeType::ConstructorDefinition, "constructor takes ({params}) and initializes state"},
      {NodeType::FunctionDefinition,
       "function '{name}' takes ({params}), returns ({returns}), {mutability-phrase}"},
      {NodeType::RequireStatement, "requires that {condition}, otherwise reverts with '{message}'"},
      {NodeType::EmitStatement, "emits event '{name}' with ({args})"},
      {NodeType::Assignment, "sets {target} to {value}"},
      {NodeType::ReturnStatement, "returns ({args})"},
      {NodeType::IfStatement, "if {condition} then ..."},
      {NodeType::ForStatement, "repeats while {condition}"},
      {NodeType::WhileStatement, "repeats while {condition}"},
  };
}

Grammar::Grammar(std::vector<GrammarRule> rules) : rules_(std::move(rules)) {
  std::set<NodeType> seen;
  for (const auto& rule : rules_) {
    const std::string type_name(solidity::to_string(rule.node_type));
    if (!is_describable(rule.node_type)) {
      throw Error(ErrorCode::ConfigError, "node type " + type_name + " takes no template");
    }
    if (!seen.insert(rule.node_type).second) {
      throw Error(ErrorCode::ConfigError, "more than one template for " + type_name);
    }
    const auto allowed = allowed_placeholders(rule.node_type);
    for (const auto& name : placeholders(rule.template_text)) {
      if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
        throw Error(ErrorCode::ConfigError,
                    "template for " + type_name + " uses unknown placeholder '{" + name + "}'");
      }
    }
  }
}

Grammar Grammar::defaults() { return Grammar(default_rules()); }

Grammar Grammar::from_config(const Config& config) {
  std::vector<GrammarRule> rules = default_rules();
  for (const auto& [type_name, text] : config.templates) {
    auto type = solidity::node_type_from_string(type_name);
    if (!type) throw Error(ErrorCode::ConfigError, "unknown node type '" + type_name + "' in [templates]");
    auto it = std::find_if(rules.begin(), rules.end(),
                           [&](const GrammarRule& r) { return r.node_type == *type; });
    if (it == rules.end()) {
      throw Error(ErrorCode::ConfigError, "node type " + type_name + " takes no template");
    }
    it->template_text = text;
  }
  return Grammar(std::move(rules));
}

const GrammarRule* Grammar::find(NodeType type) const {
  auto it = std::find_if(rules_.begin(), rules_.end(),
                         [&](const GrammarRule& r) { return r.node_type == type; });
  return it == rules_.end() ? nullptr : &*it;
}

NodeType node_type(const AstNode& node) { return node.type; }

std::string render_expression(const AstNode& expr) {
  switch (expr.type) {
    case NodeType::Identifier:
      return expr.attr("name");
    case NodeType::Literal:
      return expr.attr("kind") == "string" ? quote_string(expr.attr("value")) : expr.attr("value");
    case NodeType::MemberAccess: {
      const AstNode& base = expr.children.at(0);
      std::string inner = render_expression(base);
      if (precedence(base) != kAtomPrecedence) inner = "(" + inner + ")";
      return inner + "." + expr.attr("member");
    }
    case NodeType::BinaryExpression: {
      const int own = precedence(expr);
      const AstNode& lhs = expr.children.at(0);
      const AstNode& rhs = expr.children.at(1);
      std::string left = render_expression(lhs);
      std::string right = render_expression(rhs);
      if (precedence(lhs) < own) left = "(" + left + ")";
      if (precedence(rhs) <= own) right = "(" + right + ")";
      return left + " " + expr.attr("operator") + " " + right;
    }
    default:
      return std::string(solidity::to_string(expr.type));
  }
}

DescribedNode apply_grammar(const AstNode& node, const AstPath& path, const Grammar& grammar) {
  const GrammarRule* rule = grammar.find(node.type);
  if (rule == nullptr) {
    throw Error(ErrorCode::MissingRule,
                "no grammar rule for node type " + std::string(solidity::to_string(node.type)));
  }
  std::string out;
  const std::string& text = rule->template_text;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') {
      out += text[i];
      continue;
    }
    const std::size_t close = text.find('}', i);
    out += slot_value(node, text.substr(i + 1, close - i - 1));
    i = close;
  }
  return DescribedNode{path, node.type, std::move(out)};
}

SemanticStructure describe_contract(const AstNode& root, const Grammar& grammar) {
  SemanticStructure out;
  solidity::visit_preorder(root, [&](const AstNode& node, const AstPath& path) {
    if (node.type == NodeType::ContractDefinition && out.contract_name.empty()) {
      out.contract_name = node.attr("name");
    }
    if (is_describable(node.type)) out.items.push_back(apply_grammar(node, path, grammar));
  });
  return out;
}

nlohmann::ordered_json semantic_to_json(const SemanticStructure& structure) {
  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["contract_name"] = structure.contract_name;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& item : structure.items) {
    nlohmann::ordered_json entry;
    entry["node_path"] = item.node_path;
    entry["node_type"] = std::string(solidity::to_string(item.node_type));
    entry["description"] = item.description;
    items.push_back(std::move(entry));
  }
  j["items"] = std::move(items);
  return j;
}

std::string semantic_to_json_text(const SemanticStructure& structure) {
  return semantic_to_json(structure).dump(2) + "\n";
}

std::string semantic_to_listing(const SemanticStructure& structure) {
  std::string out;
  for (std::size_t i = 0; i < structure.items.size(); ++i) {
    out += std::to_string(i + 1) + ". " + structure.items[i].description + "\n";
  }
  return out;
}

}  // namespace ecsv::describe
