#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecsv/config.hpp"
#include "ecsv/describe.hpp"
#include "ecsv/econtract.hpp"
#include "ecsv/graph.hpp"
#include "ecsv/solidity/ast.hpp"

namespace ecsv::pipeline {

// Everything the e-contract side produces before graph construction.
struct EContractExtraction {
  std::string source_name;
  econtract::PreprocessedText text;
  std::vector<Entity> entities;
  std::vector<Relation> relations;

  friend bool operator==(const EContractExtraction&, const EContractExtraction&) = default;
};

EContractExtraction extract_econtract(const econtract::EContractDocument& doc,
                                      const Lexicons& lexicons);

nlohmann::json extraction_to_json(const EContractExtraction& extraction);
std::string extraction_to_json_text(const EContractExtraction& extraction);
EContractExtraction extraction_from_json(const nlohmann::json& doc);

graph::KnowledgeGraph econtract_graph(const EContractExtraction& extraction);

graph::KnowledgeGraph smartcontract_graph(const solidity::AstNode& root,
                                          const describe::Grammar& grammar);

// Throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);
// Parses a JSON file, reporting parse failures as SchemaViolation at "$".
nlohmann::json read_json_file(const std::filesystem::path& path);

// File name without its final extension, or without a known compound
// extension such as ".kg.json" or ".ast.json".
std::string artifact_stem(const std::filesystem::path& path);

}  // namespace ecsv::pipeline
