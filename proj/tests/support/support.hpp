#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ecsv/compare.hpp"
#include "ecsv/graph.hpp"
#include "ecsv/solidity/ast.hpp"

namespace ecsv::test {

std::filesystem::path fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

solidity::AstNode parse_fixture(const std::string& name);
graph::KnowledgeGraph rental_graph();
graph::KnowledgeGraph rental_agreement_graph();

// Checks the DOT grammar subset: `[strict] (graph|digraph) [ID] { stmt* }`
// with node, edge, attribute and `key=value` statements. Edge operators must
// fit the graph kind, every edge endpoint must be declared as a node, node ids
// are unique, and shape values must be known shape names. Returns an empty
// string when valid, otherwise a description of the first problem.
std::string check_dot(const std::string& text);

// Solidity source for a parsed tree. Parsing the output yields the same tree
// up to spans.
std::string print_solidity(const solidity::AstNode& root);

// Structural equality ignoring spans.
bool same_shape(const solidity::AstNode& a, const solidity::AstNode& b);

// Random expression over identifiers, literals, msg.sender and all binary
// operators, at most `depth` levels deep.
solidity::AstNode random_expression(std::mt19937& rng, int depth);

// Random graph on `side` with up to `max_nodes` nodes whose labels are drawn
// from a small shared vocabulary, so cross-side matches are common.
graph::KnowledgeGraph random_graph(std::mt19937& rng, Side side, std::size_t max_nodes);

// Best total score of any one-to-one matching that uses only pairs with
// score >= tau. Exact, by dynamic programming over subsets of the smaller side.
double optimal_matching_score(const graph::KnowledgeGraph& ge, const graph::KnowledgeGraph& gs,
                              double tau, const MatchingConfig& config);

double total_score(const std::vector<compare::EntityMatch>& matches);

}  // namespace ecsv::test
