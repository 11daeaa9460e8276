#include "ecsv/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <variant>

#include "ecsv/error.hpp"

namespace ecsv {

Config default_config() {
  Config c;
  c.lexicons.party = {"landlord", "tenant", "buyer", "seller", "lessor", "lessee", "party"};
  c.lexicons.verbs = {"pay", "deposit", "terminate", "rent", "maintain", "keep", "use"};
  c.lexicons.address_headers = {"Address", "Property"};
  c.lexicons.fold_headers = {"Signatures"};
  c.lexicons.header_connectors = {"of", "and", "the", "for", "or", "to", "in"};
  c.lexicons.currency_codes = {"AED", "AUD", "CAD", "CHF", "CNY", "DKK", "EUR", "GBP", "HKD",
                               "INR", "JPY", "NOK", "NZD", "SEK", "SGD", "USD", "ZAR"};
  c.lexicons.currency_words = {"pound", "pounds", "dollar", "dollars", "euro",
                               "euros", "rupee", "rupees", "yen"};
  c.matching.tau = 0.5;
  c.matching.tau_p = 0.3;
  c.matching.stop_tokens = {"the", "of", "a", "amount", "address"};
  c.matching.obligation_kinds = {EntityKind::Party, EntityKind::MonetaryAmount, EntityKind::Date,
                                 EntityKind::ClauseTerm};
  return c;
}

namespace {

using Value = std::variant<std::string, double, bool, std::vector<std::string>>;

class ConfigReader {
 public:
  ConfigReader(std::string_view text, std::string_view source)
      : text_(text), source_(source) {}

  Config read() {
    Config config = default_config();
    std::string section;
    while (true) {
      skip_blank_and_comments();
      if (at_end()) break;
      if (peek() == '[') {
        ++pos_;
        section = read_bare_word();
        expect(']');
        expect_line_end();
        if (section != "lexicons" && section != "matching" && section != "aliases" &&
            section != "templates") {
          fail("unknown section [" + section + "]");
        }
        continue;
      }
      if (section.empty()) fail("key outside of a section");
      std::string key = peek() == '"' ? read_string() : read_bare_word();
      skip_spaces();
      expect('=');
      skip_spaces();
      Value value = read_value();
      expect_line_end();
      apply(config, section, key, value);
    }
    return config;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  int line() const {
    int n = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) n += text_[i] == '\n';
    return n;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::ConfigError,
                std::string(source_) + ":" + std::to_string(line()) + ": " + message);
  }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    }
  }

  // Whitespace, newlines and comments; used between entries and inside arrays.
  void skip_blank_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_line_end() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (!at_end() && peek() != '\n') fail("unexpected trailing characters");
  }

  std::string read_bare_word() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                         peek() == '-')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_string() {
    expect('"');
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated string");
        char esc = text_[pos_++];
        switch (esc) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + esc);
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  Value read_value() {
    char c = peek();
    if (c == '"') return read_string();
    if (c == '[') {
      ++pos_;
      std::vector<std::string> items;
      while (true) {
        skip_blank_and_comments();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        items.push_back(read_string());
        skip_blank_and_comments();
        if (peek() == ',') {
          ++pos_;
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      return items;
    }
    std::size_t start = pos_;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '#') ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "true") return true;
    if (word == "false") return false;
    double number = 0.0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), number);
    if (word.empty() || ec != std::errc() || ptr != word.data() + word.size()) {
      fail("invalid value '" + std::string(word) + "'");
    }
    return number;
  }

  std::vector<std::string> as_list(const Value& v, const std::string& key) const {
    if (const auto* list = std::get_if<std::vector<std::string>>(&v)) return *list;
    fail("'" + key + "' must be an array of strings");
  }

  double as_number(const Value& v, const std::string& key) const {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    fail("'" + key + "' must be a number");
  }

  std::string as_string(const Value& v, const std::string& key) const {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    fail("'" + key + "' must be a string");
  }

  void apply(Config& config, const std::string& section, const std::string& key,
             const Value& value) const {
    if (section == "lexicons") {
      Lexicons& lx = config.lexicons;
      if (key == "party") lx.party = as_list(value, key);
      else if (key == "verbs") lx.verbs = as_list(value, key);
      else if (key == "address_headers") lx.address_headers = as_list(value, key);
      else if (key == "fold_headers") lx.fold_headers = as_list(value, key);
      else if (key == "header_connectors") lx.header_connectors = as_list(value, key);
      else if (key == "currency_codes") lx.currency_codes = as_list(value, key);
      else if (key == "currency_words") lx.currency_words = as_list(value, key);
      else fail("unknown key '" + key + "' in [lexicons]");
    } else if (section == "matching") {
      MatchingConfig& m = config.matching;
      if (key == "tau") {
        m.tau = as_number(value, key);
        if (!(m.tau > 0.0 && m.tau <= 1.0)) fail("tau must be in (0, 1]");
      } else if (key == "tau_p") {
        m.tau_p = as_number(value, key);
        if (!(m.tau_p > 0.0 && m.tau_p <= 1.0)) fail("tau_p must be in (0, 1]");
      } else if (key == "stop_tokens") {
        m.stop_tokens = as_list(value, key);
      } else if (key == "obligation_kinds") {
        m.obligation_kinds.clear();
        for (const auto& name : as_list(value, key)) {
          auto kind = kind_from_string(name);
          if (!kind) fail("unknown entity kind '" + name + "'");
          m.obligation_kinds.push_back(*kind);
        }
      } else {
        fail("unknown key '" + key + "' in [matching]");
      }
    } else if (section == "aliases") {
      config.matching.aliases.emplace_back(key, as_string(value, key));
    } else if (section == "templates") {
      config.templates[key] = as_string(value, key);
    }
  }

  std::string_view text_;
  std::string_view source_;
  std::size_t pos_ = 0;
};

}  // namespace

Config parse_config(std::string_view text, std::string_view source_name) {
  return ConfigReader(text, source_name).read();
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace ecsv
