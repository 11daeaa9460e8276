#include "ecsv/entity.hpp"

#include <array>
#include <cctype>
#include <utility>

#include "ecsv/error.hpp"

namespace ecsv {

namespace {

constexpr std::array<std::pair<EntityKind, std::string_view>, 11> kKindNames{{
    {EntityKind::Party, "party"},
    {EntityKind::PersonName, "person-name"},
    {EntityKind::MonetaryAmount, "monetary-amount"},
    {EntityKind::Date, "date"},
    {EntityKind::PropertyAddress, "property-address"},
    {EntityKind::ClauseTerm, "clause-term"},
    {EntityKind::CodeContract, "code-contract"},
    {EntityKind::CodeVariable, "code-variable"},
    {EntityKind::CodeFunction, "code-function"},
    {EntityKind::CodeEvent, "code-event"},
    {EntityKind::CodeRole, "code-role"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::UnknownEntityReference: return "UnknownEntityReference";
    case ErrorCode::MissingPragma: return "MissingPragma";
    case ErrorCode::MalformedPragma: return "MalformedPragma";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::MissingRule: return "MissingRule";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(Side side) {
  return side == Side::EContract ? "econtract" : "smartcontract";
}

std::string_view to_string(EntityKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<Side> side_from_string(std::string_view text) {
  if (text == "econtract") return Side::EContract;
  if (text == "smartcontract") return Side::SmartContract;
  return std::nullopt;
}

std::optional<EntityKind> kind_from_string(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

Provenance Provenance::clause(std::size_t index) {
  return Provenance{Side::EContract, "clause:" + std::to_string(index)};
}

Provenance Provenance::ast_path(Side side, const std::vector<std::size_t>& path) {
  std::string location = "ast:";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) location += '/';
    location += std::to_string(path[i]);
  }
  return Provenance{side, std::move(location)};
}

std::string normalize_text(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  bool pending_space = false;
  for (char c : label) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string make_entity_id(Side side, EntityKind kind, std::string_view label) {
  std::string id = side == Side::EContract ? "e:" : "s:";
  id += to_string(kind);
  id += ':';
  for (char c : normalize_text(label)) id += c == ' ' ? '_' : c;
  return id;
}

Entity make_entity(EntityKind kind, std::string label, Provenance provenance,
                   std::map<std::string, std::string> attributes) {
  Entity e;
  e.id = make_entity_id(provenance.side, kind, label);
  e.label = std::move(label);
  e.kind = kind;
  e.attributes = std::move(attributes);
  e.provenance = std::move(provenance);
  return e;
}

}  // namespace ecsv
