#include "ecsv/solidity/ast.hpp"

#include <array>

namespace ecsv::solidity {

namespace {

constexpr std::array<std::string_view, kNodeTypeCount> kNames{
    "SourceUnit",       "PragmaDirective",   "ContractDefinition", "StateVariableDeclaration",
    "EventDefinition",  "ConstructorDefinition", "FunctionDefinition", "Parameter",
    "Block",            "RequireStatement",  "EmitStatement",      "Assignment",
    "ReturnStatement",  "IfStatement",       "ForStatement",       "WhileStatement",
    "BinaryExpression", "MemberAccess",      "Identifier",         "Literal",
    "ElementaryTypeName",
};

}  // namespace

std::string_view to_string(NodeType type) { return kNames[static_cast<std::size_t>(type)]; }

std::optional<NodeType> node_type_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return static_cast<NodeType>(i);
  }
  return std::nullopt;
}

const std::string& AstNode::attr(const std::string& key) const {
  static const std::string kEmpty;
  auto it = attributes.find(key);
  return it == attributes.end() ? kEmpty : it->second;
}

std::string AstNode::attr_or(const std::string& key, std::string fallback) const {
  auto it = attributes.find(key);
  return it == attributes.end() ? fallback : it->second;
}

std::span<const std::string_view> required_attributes(NodeType type) {
  static constexpr std::array<std::string_view, 2> kNameValue{"name", "value"};
  static constexpr std::array<std::string_view, 1> kName{"name"};
  static constexpr std::array<std::string_view, 3> kStateVar{"name", "type", "visibility"};
  static constexpr std::array<std::string_view, 1> kMutability{"mutability"};
  static constexpr std::array<std::string_view, 3> kFunction{"mutability", "name", "visibility"};
  static constexpr std::array<std::string_view, 2> kParameter{"role", "type"};
  static constexpr std::array<std::string_view, 1> kMessage{"message"};
  static constexpr std::array<std::string_view, 1> kOperator{"operator"};
  static constexpr std::array<std::string_view, 1> kMember{"member"};
  static constexpr std::array<std::string_view, 2> kLiteral{"kind", "value"};
  switch (type) {
    case NodeType::PragmaDirective: return kNameValue;
    case NodeType::ContractDefinition:
    case NodeType::EventDefinition:
    case NodeType::EmitStatement:
    case NodeType::Identifier:
    case NodeType::ElementaryTypeName: return kName;
    case NodeType::StateVariableDeclaration: return kStateVar;
    case NodeType::ConstructorDefinition: return kMutability;
    case NodeType::FunctionDefinition: return kFunction;
    case NodeType::Parameter: return kParameter;
    case NodeType::RequireStatement: return kMessage;
    case NodeType::Assignment:
    case NodeType::BinaryExpression: return kOperator;
    case NodeType::MemberAccess: return kMember;
    case NodeType::Literal: return kLiteral;
    default: return {};
  }
}

const AstNode* node_at(const AstNode& root, const AstPath& path) {
  const AstNode* node = &root;
  for (std::size_t index : path) {
    if (index >= node->children.size()) return nullptr;
    node = &node->children[index];
  }
  return node;
}

std::map<NodeType, std::size_t> count_node_types(const AstNode& root) {
  std::map<NodeType, std::size_t> counts;
  visit_preorder(root, [&](const AstNode& n, const AstPath&) { ++counts[n.type]; });
  return counts;
}

}  // namespace ecsv::solidity
