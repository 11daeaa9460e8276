#include "ecsv/econtract.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <utility>

#include "ecsv/error.hpp"

namespace ecsv::econtract {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool contains_ci(const std::vector<std::string>& list, std::string_view word) {
  const std::string needle = normalize_text(word);
  return std::any_of(list.begin(), list.end(),
                     [&](const std::string& item) { return normalize_text(item) == needle; });
}

std::string regex_escape(std::string_view s) {
  static const std::string kSpecial = R"(\^$.|?*+()[]{}/)";
  std::string out;
  for (char c : s) {
    if (kSpecial.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

std::string alternation(const std::vector<std::string>& words) {
  // Longest first so "pounds" wins over "pound".
  std::vector<std::string> sorted = words;
  std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  std::string out;
  for (const auto& w : sorted) {
    if (w.empty()) continue;
    if (!out.empty()) out += '|';
    out += regex_escape(w);
  }
  return out.empty() ? std::string("(?!)") : out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Removes control characters, unwraps editorial brackets, strips quotes and
// parenthetical asides, and tidies spacing. Returns non-empty cleaned lines.
std::vector<std::string> clean_lines(std::string_view raw) {
  std::string text;
  text.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '\r') {
      text += '\n';
      if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
    } else if (c == '\t') {
      text += ' ';
    } else if (c == '\n' || static_cast<unsigned char>(c) >= 0x20) {
      if (c != 0x7f) text += c;
    }
  }

  // Straight and curly double quotes.
  for (std::string_view quote : {"\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x9E", "\""}) {
    std::size_t pos = 0;
    while ((pos = text.find(quote, pos)) != std::string::npos) text.erase(pos, quote.size());
  }

  static const std::regex kBracketed(R"(\[([^\[\]\n]*)\])");
  static const std::regex kParenthetical(R"(\(([^()\n]*)\))");
  text = std::regex_replace(text, kBracketed, "$1");
  // Asides without digits are dropped; ones carrying figures ("(GBP 100)")
  // keep their contents. Innermost first until nothing changes.
  while (true) {
    std::string next;
    std::size_t last = 0;
    bool changed = false;
    for (std::sregex_iterator it(text.begin(), text.end(), kParenthetical), end; it != end; ++it) {
      const auto& m = *it;
      next.append(text, last, static_cast<std::size_t>(m.position()) - last);
      const std::string inner = m[1].str();
      if (std::any_of(inner.begin(), inner.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        next += inner;
      }
      last = static_cast<std::size_t>(m.position() + m.length());
      changed = true;
    }
    if (!changed) break;
    next.append(text, last, std::string::npos);
    text = std::move(next);
  }

  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string tidy;
    for (char c : line) {
      if (c == ' ' && (tidy.empty() || tidy.back() == ' ')) continue;
      if ((c == ',' || c == '.' || c == ';' || c == ':' || c == '!' || c == '?') &&
          !tidy.empty() && tidy.back() == ' ' && !(tidy.size() >= 2 && tidy[tidy.size() - 2] == ':')) {
        tidy.pop_back();
      }
      tidy += c;
    }
    tidy = trim(tidy);
    if (!tidy.empty()) lines.push_back(std::move(tidy));
  }
  return lines;
}

bool is_capitalized_word(std::string_view w) {
  return !w.empty() && is_upper(w[0]) &&
         std::all_of(w.begin(), w.end(), [](char c) { return is_alpha(c); });
}

// "Header: body" where Header is 1-4 words, capitalized except for connector
// words in the middle.
std::optional<std::pair<std::string, std::string>> split_header(const std::string& line,
                                                                const Lexicons& lexicons) {
  std::size_t colon = line.find(':');
  if (colon == std::string::npos || colon == 0) return std::nullopt;
  if (colon + 1 < line.size() && line[colon + 1] != ' ') return std::nullopt;
  std::string header = line.substr(0, colon);
  std::vector<std::string> words;
  std::istringstream ws(header);
  for (std::string w; ws >> w;) words.push_back(w);
  if (words.empty() || words.size() > 4) return std::nullopt;
  if (header.find("  ") != std::string::npos || header.back() == ' ') return std::nullopt;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bool edge = i == 0 || i + 1 == words.size();
    if (is_capitalized_word(words[i])) continue;
    if (!edge && contains_ci(lexicons.header_connectors, words[i]) &&
        std::all_of(words[i].begin(), words[i].end(), [](char c) { return std::islower(static_cast<unsigned char>(c)); })) {
      continue;
    }
    return std::nullopt;
  }
  if (contains_ci(lexicons.fold_headers, header)) return std::nullopt;
  return std::make_pair(header, trim(std::string_view(line).substr(colon + 1)));
}

std::string capitalize(std::string_view word) {
  std::string out = lowercase(word);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

// Inflected forms that still count as the lexicon verb.
std::map<std::string, std::string> verb_forms(const std::vector<std::string>& verbs) {
  static const std::map<std::string, std::vector<std::string>> kIrregular{
      {"pay", {"paid"}}, {"keep", {"kept"}}, {"deposit", {}}, {"rent", {}}};
  std::map<std::string, std::string> forms;
  for (const auto& raw : verbs) {
    const std::string v = lowercase(raw);
    if (v.empty()) continue;
    std::vector<std::string> all{v, v + "s", v + "es", v + "ing", v + "ed", v + "d"};
    if (v.back() == 'e') all.push_back(v.substr(0, v.size() - 1) + "ing");
    if (auto it = kIrregular.find(v); it != kIrregular.end()) {
      all.insert(all.end(), it->second.begin(), it->second.end());
    }
    for (auto& f : all) forms.emplace(f, v);
  }
  return forms;
}

class Scanner {
 public:
  explicit Scanner(const Lexicons& lexicons)
      : lexicons_(lexicons),
        party_(R"(\b()" + alternation(lexicons.party) + R"()\b)", std::regex::icase),
        money_code_(R"(\b()" + alternation(lexicons.currency_codes) + R"()\s+()" + kAmount +
                    R"()\b)"),
        money_word_(std::string(R"(\b()") + kAmount + R"()\s+()" + alternation(lexicons.currency_words) +
                        R"()\b)",
                    std::regex::icase),
        date_(R"(\b(\d{1,2})/(\d{1,2})/(\d{4})\b)") {}

  std::vector<Mention> scan(const Clause& clause) const {
    std::vector<Mention> out;
    for (const auto& m : matches(party_, clause.header)) {
      out.push_back({EntityKind::Party, capitalize(m.str(1)), {}, 0, 0, false});
    }
    const std::string& body = clause.body;
    for (const auto& m : matches(party_, body)) {
      out.push_back(at(m, EntityKind::Party, capitalize(m.str(1)), {}));
    }
    if (contains_ci(lexicons_.party, clause.header)) {
      if (auto name = leading_name(body)) {
        out.push_back(Mention{EntityKind::PersonName, name->first,
                              {{"role", lowercase(clause.header)}}, name->second.first,
                              name->second.second, true});
      }
    }
    for (const auto& m : matches(money_code_, body)) {
      out.push_back(at(m, EntityKind::MonetaryAmount, collapse(m.str(0)),
                       {{"currency", m.str(1)}, {"value", m.str(2)}}));
    }
    for (const auto& m : matches(money_word_, body)) {
      out.push_back(at(m, EntityKind::MonetaryAmount, collapse(m.str(0)),
                       {{"currency", lowercase(m.str(2))}, {"value", m.str(1)}}));
    }
    for (const auto& m : matches(date_, body)) {
      out.push_back(at(m, EntityKind::Date, m.str(0),
                       {{"day", m.str(1)}, {"month", m.str(2)}, {"year", m.str(3)}}));
    }
    if (contains_ci(lexicons_.address_headers, clause.header)) {
      std::string label = collapse(body);
      while (!label.empty() && std::string_view(":;,.").find(label.back()) != std::string_view::npos) {
        label.pop_back();
      }
      if (!label.empty()) {
        out.push_back(Mention{EntityKind::PropertyAddress, label,
                              {{"header", clause.header}}, 0, body.size(), true});
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const Mention& a, const Mention& b) {
      if (a.in_body != b.in_body) return !a.in_body;
      return a.begin < b.begin;
    });
    return out;
  }

 private:
  static constexpr const char* kAmount = R"(\d{1,3}(?:,\d{3})+(?:\.\d+)?|\d+(?:\.\d+)?)";

  static std::vector<std::smatch> matches(const std::regex& re, const std::string& text) {
    return {std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()};
  }

  static Mention at(const std::smatch& m, EntityKind kind, std::string label,
                    std::map<std::string, std::string> attributes) {
    const auto begin = static_cast<std::size_t>(m.position(0));
    return Mention{kind, std::move(label), std::move(attributes), begin,
                   begin + static_cast<std::size_t>(m.length(0)), true};
  }

  static std::string collapse(std::string_view s) {
    std::string out;
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!out.empty() && out.back() != ' ') out += ' ';
      } else {
        out += c;
      }
    }
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
  }

  // Run of capitalized words opening a party clause body: "ABC, residing ..."
  static std::optional<std::pair<std::string, std::pair<std::size_t, std::size_t>>> leading_name(
      const std::string& body) {
    static const std::set<std::string> kDeterminers{"The", "A", "An", "This", "That"};
    std::size_t pos = 0;
    std::size_t end = 0;
    std::string name;
    while (pos < body.size() && is_upper(body[pos])) {
      std::size_t w = pos;
      while (w < body.size() && (std::isalnum(static_cast<unsigned char>(body[w])) ||
                                 body[w] == '\'' || body[w] == '-')) {
        ++w;
      }
      std::string word = body.substr(pos, w - pos);
      if (name.empty() && kDeterminers.contains(word)) return std::nullopt;
      if (!name.empty()) name += ' ';
      name += word;
      end = w;
      if (w + 1 < body.size() && body[w] == ' ' && is_upper(body[w + 1])) {
        pos = w + 1;
      } else {
        break;
      }
    }
    if (name.empty()) return std::nullopt;
    return std::make_pair(name, std::make_pair(std::size_t{0}, end));
  }

  const Lexicons& lexicons_;
  std::regex party_;
  std::regex money_code_;
  std::regex money_word_;
  std::regex date_;
};

struct Sentence {
  std::size_t begin;
  std::size_t end;
};

std::vector<Sentence> split_sentences(const std::string& body) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    const bool terminal = c == '.' || c == '!' || c == '?' || c == ';';
    if (terminal && (i + 1 == body.size() || std::isspace(static_cast<unsigned char>(body[i + 1])))) {
      out.push_back({start, i + 1});
      start = i + 1;
    }
  }
  if (start < body.size()) out.push_back({start, body.size()});
  return out;
}

std::string id_for(const Mention& m) { return make_entity_id(Side::EContract, m.kind, m.label); }

}  // namespace

PreprocessedText preprocess(const EContractDocument& doc, const Lexicons& lexicons) {
  if (trim(doc.raw_text).empty()) {
    throw Error(ErrorCode::EmptyDocument, doc.source_name + ": e-contract text is empty");
  }
  PreprocessedText out;
  for (const auto& line : clean_lines(doc.raw_text)) {
    if (auto split = split_header(line, lexicons)) {
      out.clauses.push_back(Clause{split->first, split->second, out.clauses.size()});
      continue;
    }
    if (out.clauses.empty()) {
      out.clauses.push_back(Clause{std::string(kPreambleHeader), line, 0});
      continue;
    }
    std::string& body = out.clauses.back().body;
    if (!body.empty()) body += '\n';
    body += line;
  }
  if (out.clauses.empty()) {
    throw Error(ErrorCode::EmptyDocument, doc.source_name + ": no clause could be formed");
  }
  for (const auto& clause : out.clauses) {
    for (std::string_view part : {std::string_view(clause.header), std::string_view(clause.body)}) {
      std::istringstream ts{std::string(part)};
      for (std::string tok; ts >> tok;) ++out.token_count;
    }
  }
  return out;
}

std::string render(const PreprocessedText& text) {
  std::string out;
  for (const auto& clause : text.clauses) {
    out += clause.header;
    out += ':';
    if (!clause.body.empty()) {
      out += ' ';
      out += clause.body;
    }
    out += '\n';
  }
  return out;
}

std::vector<Mention> scan_clause(const Clause& clause, const Lexicons& lexicons) {
  return Scanner(lexicons).scan(clause);
}

std::vector<Entity> extract_entities(const PreprocessedText& text, const Lexicons& lexicons) {
  const Scanner scanner(lexicons);
  std::vector<Entity> out;
  std::set<std::string> seen;
  auto add = [&](Entity e) {
    if (seen.insert(e.id).second) out.push_back(std::move(e));
  };
  for (const auto& clause : text.clauses) {
    const Provenance where = Provenance::clause(clause.index);
    if (clause.header != kPreambleHeader) {
      add(make_entity(EntityKind::ClauseTerm, clause.header, where));
    }
    for (auto& m : scanner.scan(clause)) {
      add(make_entity(m.kind, m.label, where, m.attributes));
    }
  }
  return out;
}

std::vector<Relation> extract_relations(const PreprocessedText& text,
                                        const std::vector<Entity>& entities,
                                        const Lexicons& lexicons) {
  const Scanner scanner(lexicons);
  std::set<std::string> known;
  for (const auto& e : entities) known.insert(e.id);

  std::vector<Relation> out;
  std::set<Relation, TripleLess> seen;
  auto add = [&](std::string source, std::string predicate, std::string target,
                 std::size_t clause_index) {
    for (const auto* id : {&source, &target}) {
      if (!known.contains(*id)) {
        throw Error(ErrorCode::UnknownEntityReference,
                    "relation endpoint '" + *id + "' is not an extracted entity");
      }
    }
    Relation r{std::move(source), std::move(predicate), std::move(target),
               Provenance::clause(clause_index)};
    if (r.source != r.target && seen.insert(r).second) out.push_back(std::move(r));
  };

  const std::regex obligation(
      R"(\b()" + alternation(lexicons.party) +
          R"()\s+(shall|agrees\s+to|is\s+responsible\s+for|may)\s+([A-Za-z]+))",
      std::regex::icase);
  const auto forms = verb_forms(lexicons.verbs);

  for (const auto& clause : text.clauses) {
    const auto mentions = scanner.scan(clause);

    if (clause.header != kPreambleHeader) {
      const std::string term = make_entity_id(Side::EContract, EntityKind::ClauseTerm, clause.header);
      for (const auto& m : mentions) {
        if (m.in_body) add(term, "mentions", id_for(m), clause.index);
      }
    }

    const std::string& body = clause.body;
    for (const auto& sentence : split_sentences(body)) {
      const std::string part = body.substr(sentence.begin, sentence.end - sentence.begin);
      for (std::sregex_iterator it(part.begin(), part.end(), obligation), end; it != end; ++it) {
        const auto& m = *it;
        auto verb = forms.find(lowercase(m.str(3)));
        if (verb == forms.end()) continue;
        const std::string subject =
            make_entity_id(Side::EContract, EntityKind::Party, m.str(1));
        const std::size_t verb_end =
            sentence.begin + static_cast<std::size_t>(m.position(3) + m.length(3));
        for (const auto& obj : mentions) {
          if (!obj.in_body || obj.begin < verb_end || obj.end > sentence.end) continue;
          if (id_for(obj) == subject) continue;
          add(subject, verb->second, id_for(obj), clause.index);
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace ecsv::econtract
