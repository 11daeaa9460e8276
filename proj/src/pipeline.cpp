#include "ecsv/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "ecsv/error.hpp"

namespace ecsv::pipeline {

namespace {

constexpr const char* kCompoundExtensions[] = {
    ".ast.json",      ".kg.json",      ".kg.dot",      ".econtract.json",
    ".describe.json", ".describe.txt", ".report.json",
};

const nlohmann::json& require_key(const nlohmann::json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw Error::schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error::schema(path + "." + key, "missing key");
  return *it;
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& path) {
  const auto& value = require_key(obj, key, path);
  if (!value.is_string()) throw Error::schema(path + "." + key, "expected a string");
  return value.get<std::string>();
}

std::size_t require_count(const nlohmann::json& obj, const char* key, const std::string& path) {
  const auto& value = require_key(obj, key, path);
  if (!value.is_number_unsigned()) throw Error::schema(path + "." + key, "expected a non-negative integer");
  return value.get<std::size_t>();
}

const nlohmann::json& require_array(const nlohmann::json& obj, const char* key, const std::string& path) {
  const auto& value = require_key(obj, key, path);
  if (!value.is_array()) throw Error::schema(path + "." + key, "expected an array");
  return value;
}

}  // namespace

EContractExtraction extract_econtract(const econtract::EContractDocument& doc, const Lexicons& lexicons) {
  EContractExtraction out;
  out.source_name = doc.source_name;
  out.text = econtract::preprocess(doc, lexicons);
  out.entities = econtract::extract_entities(out.text, lexicons);
  out.relations = econtract::extract_relations(out.text, out.entities, lexicons);
  return out;
}

nlohmann::json extraction_to_json(const EContractExtraction& extraction) {
  nlohmann::json clauses = nlohmann::json::array();
  for (const auto& c : extraction.text.clauses) {
    clauses.push_back({{"body", c.body}, {"header", c.header}, {"index", c.index}});
  }
  nlohmann::json entities = nlohmann::json::array();
  for (const auto& e : extraction.entities) entities.push_back(graph::entity_to_json(e));
  nlohmann::json relations = nlohmann::json::array();
  for (const auto& r : extraction.relations) relations.push_back(graph::relation_to_json(r));
  return {{"clauses", clauses},
          {"entities", entities},
          {"relations", relations},
          {"schema_version", graph::kSchemaVersion},
          {"source_name", extraction.source_name},
          {"token_count", extraction.text.token_count}};
}

std::string extraction_to_json_text(const EContractExtraction& extraction) {
  return extraction_to_json(extraction).dump(2) + "\n";
}

EContractExtraction extraction_from_json(const nlohmann::json& doc) {
  if (require_string(doc, "schema_version", "$") != graph::kSchemaVersion) {
    throw Error::schema("$.schema_version", std::string("expected \"") + graph::kSchemaVersion + "\"");
  }
  EContractExtraction out;
  out.source_name = require_string(doc, "source_name", "$");
  out.text.token_count = require_count(doc, "token_count", "$");
  const auto& clauses = require_array(doc, "clauses", "$");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const std::string path = "$.clauses[" + std::to_string(i) + "]";
    econtract::Clause c;
    c.header = require_string(clauses[i], "header", path);
    c.body = require_string(clauses[i], "body", path);
    c.index = require_count(clauses[i], "index", path);
    out.text.clauses.push_back(std::move(c));
  }
  const auto& entities = require_array(doc, "entities", "$");
  for (std::size_t i = 0; i < entities.size(); ++i) {
    out.entities.push_back(graph::entity_from_json(entities[i], "$.entities[" + std::to_string(i) + "]"));
  }
  const auto& relations = require_array(doc, "relations", "$");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    out.relations.push_back(
        graph::relation_from_json(relations[i], "$.relations[" + std::to_string(i) + "]"));
  }
  return out;
}

graph::KnowledgeGraph econtract_graph(const EContractExtraction& extraction) {
  return graph::build_graph(Side::EContract, extraction.entities, extraction.relations);
}

graph::KnowledgeGraph smartcontract_graph(const solidity::AstNode& root, const describe::Grammar& grammar) {
  return graph::graph_from_semantic(describe::describe_contract(root, grammar), root);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error::schema("$", path.string() + " is not valid JSON: " + e.what());
  }
}

std::string artifact_stem(const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  for (std::string_view ext : kCompoundExtensions) {
    if (name.size() > ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0) {
      return name.substr(0, name.size() - ext.size());
    }
  }
  return path.stem().string();
}

}  // namespace ecsv::pipeline
