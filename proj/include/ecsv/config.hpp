#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecsv/entity.hpp"

namespace ecsv {

// Word lists that drive the rule-based e-contract extractor.
struct Lexicons {
  std::vector<std::string> party;
  std::vector<std::string> verbs;
  std::vector<std::string> address_headers;
  // Header-shaped lines that belong to the previous clause (signature blocks).
  std::vector<std::string> fold_headers;
  // Lowercase words allowed between capitalized header words ("Use of Property").
  std::vector<std::string> header_connectors;
  std::vector<std::string> currency_codes;
  std::vector<std::string> currency_words;

  friend bool operator==(const Lexicons&, const Lexicons&) = default;
};

struct MatchingConfig {
  double tau = 0.5;
  double tau_p = 0.3;
  std::vector<std::string> stop_tokens;
  std::vector<EntityKind> obligation_kinds;
  // Label pairs treated as synonyms; either orientation matches with score 1.
  std::vector<std::pair<std::string, std::string>> aliases;

  friend bool operator==(const MatchingConfig&, const MatchingConfig&) = default;
};

struct Config {
  Lexicons lexicons;
  MatchingConfig matching;
  // Node type name -> description template. Missing entries use the defaults.
  std::map<std::string, std::string> templates;

  friend bool operator==(const Config&, const Config&) = default;
};

Config default_config();

// Parses the TOML subset used by config files: [section] headers, `key = value`
// with string, number, boolean, or array-of-string values, '#' comments.
// Keys absent from the text keep their default values.
Config parse_config(std::string_view text, std::string_view source_name = "<config>");
Config load_config(const std::filesystem::path& path);

}  // namespace ecsv
