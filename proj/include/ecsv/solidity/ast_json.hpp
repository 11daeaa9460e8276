#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ecsv/solidity/ast.hpp"

namespace ecsv::solidity {

// Node objects carry exactly the keys nodeType, attributes, span, children in
// that order; attribute keys are sorted.
nlohmann::ordered_json ast_to_json(const AstNode& root);

// Pretty-printed with two-space indentation and a trailing newline.
std::string ast_to_json_text(const AstNode& root);

// Inverse of ast_to_json. Throws SchemaViolation with the offending JSON path.
AstNode ast_from_json(const nlohmann::json& doc);

}  // namespace ecsv::solidity
