#include "ecsv/solidity/ast_json.hpp"

#include "ecsv/error.hpp"

namespace ecsv::solidity {

namespace {

nlohmann::ordered_json position_json(const SourcePosition& p) {
  nlohmann::ordered_json j;
  j["line"] = p.line;
  j["column"] = p.column;
  return j;
}

const nlohmann::json& require_key(const nlohmann::json& obj, const char* key,
                                  const std::string& path) {
  if (!obj.is_object()) throw Error::schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error::schema(path + "." + key, "missing key");
  return *it;
}

SourcePosition position_from_json(const nlohmann::json& j, const std::string& path) {
  const auto& line = require_key(j, "line", path);
  const auto& column = require_key(j, "column", path);
  if (!line.is_number_integer() || line.get<int>() < 1) {
    throw Error::schema(path + ".line", "expected a positive integer");
  }
  if (!column.is_number_integer() || column.get<int>() < 0) {
    throw Error::schema(path + ".column", "expected a non-negative integer");
  }
  return {line.get<int>(), column.get<int>()};
}

AstNode node_from_json(const nlohmann::json& j, const std::string& path) {
  AstNode n;
  const auto& type = require_key(j, "nodeType", path);
  auto parsed = type.is_string() ? node_type_from_string(type.get<std::string>()) : std::nullopt;
  if (!parsed) throw Error::schema(path + ".nodeType", "unknown node type");
  n.type = *parsed;

  const auto& attributes = require_key(j, "attributes", path);
  if (!attributes.is_object()) throw Error::schema(path + ".attributes", "expected an object");
  for (const auto& [key, value] : attributes.items()) {
    if (!value.is_string()) throw Error::schema(path + ".attributes." + key, "expected a string");
    n.attributes[key] = value.get<std::string>();
  }
  for (auto key : required_attributes(n.type)) {
    if (!n.has_attr(std::string(key))) {
      throw Error::schema(path + ".attributes." + std::string(key), "missing required attribute");
    }
  }

  const auto& span = require_key(j, "span", path);
  n.span.start = position_from_json(require_key(span, "start", path + ".span"), path + ".span.start");
  n.span.end = position_from_json(require_key(span, "end", path + ".span"), path + ".span.end");

  const auto& children = require_key(j, "children", path);
  if (!children.is_array()) throw Error::schema(path + ".children", "expected an array");
  for (std::size_t i = 0; i < children.size(); ++i) {
    const std::string child_path = path + ".children[" + std::to_string(i) + "]";
    n.children.push_back(node_from_json(children[i], child_path));
    if (!n.span.contains(n.children.back().span)) {
      throw Error::schema(child_path + ".span", "child span is not inside its parent");
    }
  }
  return n;
}

}  // namespace

nlohmann::ordered_json ast_to_json(const AstNode& node) {
  nlohmann::ordered_json j;
  j["nodeType"] = std::string(to_string(node.type));
  nlohmann::ordered_json attributes = nlohmann::ordered_json::object();
  for (const auto& [key, value] : node.attributes) attributes[key] = value;
  j["attributes"] = std::move(attributes);
  nlohmann::ordered_json span;
  span["start"] = position_json(node.span.start);
  span["end"] = position_json(node.span.end);
  j["span"] = std::move(span);
  nlohmann::ordered_json children = nlohmann::ordered_json::array();
  for (const auto& child : node.children) children.push_back(ast_to_json(child));
  j["children"] = std::move(children);
  return j;
}

std::string ast_to_json_text(const AstNode& root) { return ast_to_json(root).dump(2) + "\n"; }

AstNode ast_from_json(const nlohmann::json& doc) {
  AstNode root = node_from_json(doc, "$");
  if (root.type != NodeType::SourceUnit) throw Error::schema("$.nodeType", "root must be a SourceUnit");
  return root;
}

}  // namespace ecsv::solidity
