#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecsv/error.hpp"

namespace ecsv::solidity {

enum class NodeType {
  SourceUnit,
  PragmaDirective,
  ContractDefinition,
  StateVariableDeclaration,
  EventDefinition,
  ConstructorDefinition,
  FunctionDefinition,
  Parameter,
  Block,
  RequireStatement,
  EmitStatement,
  Assignment,
  ReturnStatement,
  IfStatement,
  ForStatement,
  WhileStatement,
  BinaryExpression,
  MemberAccess,
  Identifier,
  Literal,
  ElementaryTypeName,
};

inline constexpr std::size_t kNodeTypeCount = 21;

std::string_view to_string(NodeType type);
std::optional<NodeType> node_type_from_string(std::string_view text);

// Half-open [start, end).
struct Span {
  SourcePosition start;
  SourcePosition end;

  bool contains(const Span& inner) const {
    return !(inner.start < start) && !(end < inner.end);
  }
  friend bool operator==(const Span&, const Span&) = default;
};

using AstPath = std::vector<std::size_t>;

// Attribute keys per node type:
//   PragmaDirective           name, value
//   ContractDefinition        name
//   StateVariableDeclaration  name, type, visibility [, mutability]
//   EventDefinition           name
//   ConstructorDefinition     mutability [, visibility]
//   FunctionDefinition        name, visibility, mutability
//   Parameter                 type, role ("parameter" | "return")
//                             [, name, location, indexed]
//   RequireStatement          message
//   EmitStatement             name
//   Assignment                operator
//   BinaryExpression          operator
//   MemberAccess              member
//   Identifier                name
//   Literal                   kind ("bool" | "number" | "string"), value
//   ElementaryTypeName        name
// Every other node type has no attributes.
struct AstNode {
  NodeType type = NodeType::SourceUnit;
  std::map<std::string, std::string> attributes;
  std::vector<AstNode> children;
  Span span;

  const std::string& attr(const std::string& key) const;
  std::string attr_or(const std::string& key, std::string fallback) const;
  bool has_attr(const std::string& key) const { return attributes.contains(key); }

  friend bool operator==(const AstNode&, const AstNode&) = default;
};

std::span<const std::string_view> required_attributes(NodeType type);

// Node reached by following child indices from `root`; nullptr when the path
// leaves the tree.
const AstNode* node_at(const AstNode& root, const AstPath& path);

// Visits nodes in pre-order with their path from the root.
template <typename Fn>
void visit_preorder(const AstNode& node, AstPath& path, Fn&& fn) {
  fn(node, static_cast<const AstPath&>(path));
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    visit_preorder(node.children[i], path, fn);
    path.pop_back();
  }
}

template <typename Fn>
void visit_preorder(const AstNode& root, Fn&& fn) {
  AstPath path;
  visit_preorder(root, path, fn);
}

std::map<NodeType, std::size_t> count_node_types(const AstNode& root);

}  // namespace ecsv::solidity
