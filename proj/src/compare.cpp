#include "ecsv/compare.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <tuple>

namespace ecsv::compare {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string> split_words(std::string_view label) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < label.size(); ++i) {
    const char c = label[i];
    if (!is_alnum(c)) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const char prev = label[i - 1];
      const bool lower_to_upper = is_lower(prev) && is_upper(c);
      const bool acronym_end =
          is_upper(prev) && is_upper(c) && i + 1 < label.size() && is_lower(label[i + 1]);
      const bool digit_boundary = is_digit(prev) != is_digit(c);
      if (lower_to_upper || acronym_end || digit_boundary) flush();
    }
    current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  flush();
  return words;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_alias(const std::string& a, const std::string& b, const MatchingConfig& config) {
  for (const auto& [x, y] : config.aliases) {
    const std::string nx = normalize_text(x);
    const std::string ny = normalize_text(y);
    if ((nx == a && ny == b) || (nx == b && ny == a)) return true;
  }
  return false;
}

// Candidate ordering shared by entity and relation matching.
template <typename Key>
struct Candidate {
  double score;
  Key key;
  std::size_t e_index;
  std::size_t s_index;
};

template <typename Key>
void sort_candidates(std::vector<Candidate<Key>>& candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.key < b.key;
  });
}

std::string format_score(double score) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", score);
  return buffer;
}

std::string pad(const std::string& text, std::size_t width) {
  return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

std::string label_of(const KnowledgeGraph& g, const std::string& id) {
  const Entity* e = g.find(id);
  return e ? e->label : id;
}

std::string cell_of(const KnowledgeGraph& g, const std::string& id) {
  const Entity* e = g.find(id);
  return e ? e->label + " (" + std::string(to_string(e->kind)) + ")" : id;
}

nlohmann::json config_to_json(const MatchingConfig& config) {
  nlohmann::json kinds = nlohmann::json::array();
  for (auto kind : config.obligation_kinds) kinds.push_back(std::string(to_string(kind)));
  nlohmann::json aliases = nlohmann::json::array();
  for (const auto& [a, b] : config.aliases) aliases.push_back({a, b});
  return {{"aliases", aliases},
          {"obligation_kinds", kinds},
          {"stop_tokens", config.stop_tokens},
          {"tau", config.tau},
          {"tau_p", config.tau_p}};
}

}  // namespace

TokenSet normalize_label(std::string_view label, const std::vector<std::string>& stop_tokens) {
  TokenSet out;
  for (auto& word : split_words(label)) {
    if (std::find(stop_tokens.begin(), stop_tokens.end(), word) == stop_tokens.end()) {
      out.insert(std::move(word));
    }
  }
  return out;
}

std::string stem_verb(std::string_view token) {
  std::string t(token);
  if (t.size() > 3 && ends_with(t, "ies")) return t.substr(0, t.size() - 3) + "y";
  for (std::string_view suffix : {"sses", "shes", "ches", "xes", "zzes"}) {
    if (ends_with(t, suffix)) return t.substr(0, t.size() - 2);
  }
  if (t.size() > 3 && ends_with(t, "s") && !ends_with(t, "ss")) return t.substr(0, t.size() - 1);
  return t;
}

TokenSet normalize_predicate(std::string_view predicate, const std::vector<std::string>& stop_tokens) {
  TokenSet out;
  for (const auto& token : normalize_label(predicate, stop_tokens)) out.insert(stem_verb(token));
  return out;
}

double jaccard(const TokenSet& a, const TokenSet& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& token : a) shared += b.count(token);
  return static_cast<double>(shared) / static_cast<double>(a.size() + b.size() - shared);
}

double similarity(const Entity& a, const Entity& b, const MatchingConfig& config) {
  const std::string na = normalize_text(a.label);
  const std::string nb = normalize_text(b.label);
  if (na == nb || is_alias(na, nb, config)) return 1.0;
  return jaccard(normalize_label(a.label, config.stop_tokens),
                 normalize_label(b.label, config.stop_tokens));
}

double predicate_similarity(std::string_view a, std::string_view b, const MatchingConfig& config) {
  if (normalize_text(a) == normalize_text(b)) return 1.0;
  return jaccard(normalize_predicate(a, config.stop_tokens),
                 normalize_predicate(b, config.stop_tokens));
}

std::vector<EntityMatch> match_entities(const KnowledgeGraph& ge, const KnowledgeGraph& gs,
                                        double tau, const MatchingConfig& config) {
  std::vector<const Entity*> es;
  std::vector<const Entity*> ss;
  for (const auto& [id, e] : ge.nodes()) es.push_back(&e);
  for (const auto& [id, e] : gs.nodes()) ss.push_back(&e);

  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::vector<Candidate<Key>> candidates;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
      const double score = similarity(*es[i], *ss[j], config);
      if (score >= tau && score > 0.0) {
        candidates.push_back({score, Key{es[i]->label, ss[j]->label, es[i]->id, ss[j]->id}, i, j});
      }
    }
  }
  sort_candidates(candidates);

  std::vector<bool> e_used(es.size()), s_used(ss.size());
  std::vector<EntityMatch> out;
  for (const auto& c : candidates) {
    if (e_used[c.e_index] || s_used[c.s_index]) continue;
    e_used[c.e_index] = s_used[c.s_index] = true;
    out.push_back({es[c.e_index]->id, ss[c.s_index]->id, c.score});
  }
  return out;
}

std::vector<RelationMatch> match_relations(const KnowledgeGraph& ge,
                                           const KnowledgeGraph& gs,
                                           const std::vector<EntityMatch>& entity_matches,
                                           double tau_p, const MatchingConfig& config) {
  std::map<std::string, std::string> partner;
  for (const auto& m : entity_matches) partner[m.econtract_id] = m.smartcontract_id;
  auto mapped = [&](const std::string& id, const std::string& expected) {
    auto it = partner.find(id);
    return it != partner.end() && it->second == expected;
  };

  std::vector<const Relation*> es(ge.edges().size()), ss(gs.edges().size());
  std::transform(ge.edges().begin(), ge.edges().end(), es.begin(), [](const Relation& r) { return &r; });
  std::transform(gs.edges().begin(), gs.edges().end(), ss.begin(), [](const Relation& r) { return &r; });

  using Triple = std::tuple<std::string, std::string, std::string>;
  using Key = std::pair<Triple, Triple>;
  std::vector<Candidate<Key>> candidates;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
      const Relation& e = *es[i];
      const Relation& s = *ss[j];
      if (!mapped(e.source, s.source) || !mapped(e.target, s.target)) continue;
      const double score = predicate_similarity(e.predicate, s.predicate, config);
      if (score >= tau_p && score > 0.0) {
        candidates.push_back({score, Key{Triple(e.triple()), Triple(s.triple())}, i, j});
      }
    }
  }
  sort_candidates(candidates);

  std::vector<bool> e_used(es.size()), s_used(ss.size());
  std::vector<RelationMatch> out;
  for (const auto& c : candidates) {
    if (e_used[c.e_index] || s_used[c.s_index]) continue;
    e_used[c.e_index] = s_used[c.s_index] = true;
    out.push_back({*es[c.e_index], *ss[c.s_index], c.score});
  }
  return out;
}

DiscrepancyReport compute_discrepancy(const KnowledgeGraph& ge, const KnowledgeGraph& gs,
                                      const MatchingConfig& config) {
  DiscrepancyReport report;
  report.config = config;
  report.matched_entities = match_entities(ge, gs, config.tau, config);
  report.matched_relations = match_relations(ge, gs, report.matched_entities, config.tau_p, config);

  std::set<std::string> e_matched, s_matched;
  for (const auto& m : report.matched_entities) {
    e_matched.insert(m.econtract_id);
    s_matched.insert(m.smartcontract_id);
  }
  for (const auto& [id, e] : ge.nodes()) {
    if (!e_matched.count(id)) report.missing_in_smartcontract.push_back(e);
  }
  for (const auto& [id, e] : gs.nodes()) {
    if (!s_matched.count(id)) report.missing_in_econtract.push_back(e);
  }

  std::set<Relation, TripleLess> e_rel, s_rel;
  for (const auto& m : report.matched_relations) {
    e_rel.insert(m.econtract);
    s_rel.insert(m.smartcontract);
  }
  for (const auto& r : ge.edges()) {
    if (!e_rel.count(r)) report.unmatched_relations_e.push_back(r);
  }
  for (const auto& r : gs.edges()) {
    if (!s_rel.count(r)) report.unmatched_relations_s.push_back(r);
  }

  auto obligation = [&](const Entity& e) {
    return std::find(config.obligation_kinds.begin(), config.obligation_kinds.end(), e.kind) !=
           config.obligation_kinds.end();
  };
  report.aligned = std::none_of(report.missing_in_smartcontract.begin(),
                                report.missing_in_smartcontract.end(), obligation) &&
                   std::none_of(report.missing_in_econtract.begin(),
                                report.missing_in_econtract.end(), obligation);
  return report;
}

nlohmann::json report_to_json(const DiscrepancyReport& report, const KnowledgeGraph& ge,
                              const KnowledgeGraph& gs) {
  nlohmann::json matched = nlohmann::json::array();
  for (const auto& m : report.matched_entities) {
    matched.push_back({{"econtract_id", m.econtract_id},
                       {"econtract_label", label_of(ge, m.econtract_id)},
                       {"score", m.score},
                       {"smartcontract_id", m.smartcontract_id},
                       {"smartcontract_label", label_of(gs, m.smartcontract_id)}});
  }
  nlohmann::json relations = nlohmann::json::array();
  for (const auto& m : report.matched_relations) {
    relations.push_back({{"econtract", graph::relation_to_json(m.econtract)},
                         {"score", m.score},
                         {"smartcontract", graph::relation_to_json(m.smartcontract)}});
  }
  auto entities = [](const std::vector<Entity>& list) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : list) out.push_back(graph::entity_to_json(e));
    return out;
  };
  auto edges = [](const std::vector<Relation>& list) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : list) out.push_back(graph::relation_to_json(r));
    return out;
  };
  return {{"aligned", report.aligned},
          {"config", config_to_json(report.config)},
          {"matched_entities", matched},
          {"matched_relations", relations},
          {"missing_in_econtract", entities(report.missing_in_econtract)},
          {"missing_in_smartcontract", entities(report.missing_in_smartcontract)},
          {"schema_version", graph::kSchemaVersion},
          {"unmatched_relations_econtract", edges(report.unmatched_relations_e)},
          {"unmatched_relations_smartcontract", edges(report.unmatched_relations_s)}};
}

std::string report_to_json_text(const DiscrepancyReport& report, const KnowledgeGraph& ge,
                                const KnowledgeGraph& gs) {
  return report_to_json(report, ge, gs).dump(2) + "\n";
}

std::string report_table(const DiscrepancyReport& report, const KnowledgeGraph& ge,
                         const KnowledgeGraph& gs) {
  std::size_t left = std::string("e-entity").size();
  std::size_t right = std::string("s-entity").size();
  for (const auto& m : report.matched_entities) {
    left = std::max(left, cell_of(ge, m.econtract_id).size());
    right = std::max(right, cell_of(gs, m.smartcontract_id).size());
  }
  std::string out = pad("e-entity", left) + " | " + pad("s-entity", right) + " | score\n";
  out += std::string(left, '=') + "=|=" + std::string(right, '=') + "=|======\n";
  for (const auto& m : report.matched_entities) {
    out += pad(cell_of(ge, m.econtract_id), left) + " | " +
           pad(cell_of(gs, m.smartcontract_id), right) + " | " + format_score(m.score) + "\n";
  }
  out += "- - - - - - - - - - - - - - - - - - - -\n";
  auto missing = [&](const char* title, const std::vector<Entity>& list) {
    out += std::string(title) + " (" + std::to_string(list.size()) + ")\n";
    for (const auto& e : list) out += "  " + std::string(to_string(e.kind)) + "  " + e.label + "\n";
  };
  missing("missing in smart contract", report.missing_in_smartcontract);
  missing("missing in e-contract", report.missing_in_econtract);
  out += "matched relations: " + std::to_string(report.matched_relations.size()) +
         ", unmatched: " + std::to_string(report.unmatched_relations_e.size()) + " e-contract, " +
         std::to_string(report.unmatched_relations_s.size()) + " smart contract\n";
  out += std::string("aligned: ") + (report.aligned ? "yes" : "no") + "\n";
  return out;
}

}  // namespace ecsv::compare
