#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ecsv/config.hpp"
#include "ecsv/entity.hpp"

namespace ecsv::econtract {

struct EContractDocument {
  std::string raw_text;
  std::string source_name;
};

struct Clause {
  std::string header;
  std::string body;
  std::size_t index = 0;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct PreprocessedText {
  std::vector<Clause> clauses;
  std::size_t token_count = 0;

  friend bool operator==(const PreprocessedText&, const PreprocessedText&) = default;
};

inline constexpr std::string_view kPreambleHeader = "Preamble";

// Cleans the text and segments it into `Header: body` clauses. Throws
// EmptyDocument when nothing survives cleaning.
PreprocessedText preprocess(const EContractDocument& doc, const Lexicons& lexicons);

// Joins clauses back into `Header: body` lines.
std::string render(const PreprocessedText& text);

// One entity per distinct (kind, normalized label), in first-occurrence order.
std::vector<Entity> extract_entities(const PreprocessedText& text, const Lexicons& lexicons);

// Containment ("mentions") and obligation (party -> verb -> object) relations.
// Throws UnknownEntityReference if a relation endpoint is not in `entities`.
std::vector<Relation> extract_relations(const PreprocessedText& text,
                                        const std::vector<Entity>& entities,
                                        const Lexicons& lexicons);

// A single recognized occurrence inside a clause. Offsets are byte offsets into
// the clause body; header-only matches have in_body == false.
struct Mention {
  EntityKind kind;
  std::string label;
  std::map<std::string, std::string> attributes;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool in_body = true;
};

std::vector<Mention> scan_clause(const Clause& clause, const Lexicons& lexicons);

}  // namespace ecsv::econtract
