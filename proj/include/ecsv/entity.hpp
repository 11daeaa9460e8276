#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace ecsv {

enum class Side { EContract, SmartContract };

enum class EntityKind {
  Party,
  PersonName,
  MonetaryAmount,
  Date,
  PropertyAddress,
  ClauseTerm,
  CodeContract,
  CodeVariable,
  CodeFunction,
  CodeEvent,
  CodeRole,
};

std::string_view to_string(Side side);
std::string_view to_string(EntityKind kind);
std::optional<Side> side_from_string(std::string_view text);
std::optional<EntityKind> kind_from_string(std::string_view text);

// Where an entity or relation came from: a side plus either "clause:<index>"
// or "ast:<i>/<j>/..." (child indices from the AST root).
struct Provenance {
  Side side = Side::EContract;
  std::string location;

  static Provenance clause(std::size_t index);
  static Provenance ast_path(Side side, const std::vector<std::size_t>& path);

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Entity {
  std::string id;
  std::string label;
  EntityKind kind = EntityKind::ClauseTerm;
  std::map<std::string, std::string> attributes;
  Provenance provenance;

  friend bool operator==(const Entity&, const Entity&) = default;
};

struct Relation {
  std::string source;
  std::string predicate;
  std::string target;
  Provenance provenance;

  auto triple() const { return std::tie(source, predicate, target); }

  friend bool operator==(const Relation&, const Relation&) = default;
};

// Orders relations by their (source, predicate, target) triple only.
struct TripleLess {
  bool operator()(const Relation& a, const Relation& b) const {
    return a.triple() < b.triple();
  }
};

// Lowercase with internal whitespace collapsed to single spaces and trimmed.
std::string normalize_text(std::string_view label);

// "<e|s>:<kind>:<normalized label with spaces as '_'>". Two entities with the
// same kind and normalized label on the same side share an id.
std::string make_entity_id(Side side, EntityKind kind, std::string_view label);

Entity make_entity(EntityKind kind, std::string label, Provenance provenance,
                   std::map<std::string, std::string> attributes = {});

}  // namespace ecsv
