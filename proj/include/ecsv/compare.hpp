#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecsv/config.hpp"
#include "ecsv/entity.hpp"
#include "ecsv/graph.hpp"

namespace ecsv::compare {

using TokenSet = std::set<std::string>;
using graph::KnowledgeGraph;

// Splits on whitespace, punctuation, underscores and camelCase boundaries,
// lowercases, and drops stop tokens.
TokenSet normalize_label(std::string_view label, const std::vector<std::string>& stop_tokens);

// Predicate tokens additionally lose a trailing verb inflection ("pays" -> "pay").
TokenSet normalize_predicate(std::string_view predicate,
                             const std::vector<std::string>& stop_tokens);
std::string stem_verb(std::string_view token);

double jaccard(const TokenSet& a, const TokenSet& b);

// 1.0 for labels that are equal after case/whitespace normalization or listed
// as aliases; otherwise the Jaccard index of the normalized token sets (0 when
// either set is empty).
double similarity(const Entity& a, const Entity& b, const MatchingConfig& config);
double predicate_similarity(std::string_view a, std::string_view b, const MatchingConfig& config);

struct EntityMatch {
  std::string econtract_id;
  std::string smartcontract_id;
  double score = 0.0;

  friend bool operator==(const EntityMatch&, const EntityMatch&) = default;
};

struct RelationMatch {
  Relation econtract;
  Relation smartcontract;
  double score = 0.0;

  friend bool operator==(const RelationMatch&, const RelationMatch&) = default;
};

// Greedy one-to-one matching: all cross pairs ordered by descending score,
// then e-label, s-label, e-id, s-id; a pair is taken when its score reaches
// `tau` and neither side is already matched. Result is in acceptance order.
std::vector<EntityMatch> match_entities(const KnowledgeGraph& ge, const KnowledgeGraph& gs,
                                        double tau, const MatchingConfig& config);

// Relations match when both endpoints are matched to each other and the
// predicates reach `tau_p`; same greedy discipline keyed on the triples.
std::vector<RelationMatch> match_relations(const KnowledgeGraph& ge, const KnowledgeGraph& gs,
                                           const std::vector<EntityMatch>& entity_matches,
                                           double tau_p, const MatchingConfig& config);

struct DiscrepancyReport {
  std::vector<EntityMatch> matched_entities;
  std::vector<RelationMatch> matched_relations;
  std::vector<Entity> missing_in_smartcontract;
  std::vector<Entity> missing_in_econtract;
  std::vector<Relation> unmatched_relations_e;
  std::vector<Relation> unmatched_relations_s;
  bool aligned = false;
  MatchingConfig config;

  friend bool operator==(const DiscrepancyReport&, const DiscrepancyReport&) = default;
};

// The first graph is treated as the e-contract side and the second as the
// smart-contract side, regardless of their recorded sides.
DiscrepancyReport compute_discrepancy(const KnowledgeGraph& ge, const KnowledgeGraph& gs,
                                      const MatchingConfig& config);

nlohmann::json report_to_json(const DiscrepancyReport& report, const KnowledgeGraph& ge,
                              const KnowledgeGraph& gs);
std::string report_to_json_text(const DiscrepancyReport& report, const KnowledgeGraph& ge,
                                const KnowledgeGraph& gs);

// Table of matched pairs followed by a dashed separator and the missing items.
std::string report_table(const DiscrepancyReport& report, const KnowledgeGraph& ge,
                         const KnowledgeGraph& gs);

}  // namespace ecsv::compare
