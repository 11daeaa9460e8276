#pragma once

#include "ecsv/solidity/ast.hpp"
#include "ecsv/solidity/version.hpp"

namespace ecsv::solidity {

// Parses the supported Solidity subset into a SourceUnit. Throws SyntaxError
// (with the expected-token set in the message) or UnsupportedConstruct, both
// positioned at the offending token.
AstNode parse(const SoliditySource& src, const ParserDialect& dialect);

// extract_pragma_version, select_dialect and parse in one call.
AstNode parse_source(const SoliditySource& src);

}  // namespace ecsv::solidity
