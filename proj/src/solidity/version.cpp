#include "ecsv/solidity/version.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ecsv/error.hpp"
#include "ecsv/solidity/lexer.hpp"

namespace ecsv::solidity {

std::string Version::to_string() const {
  return std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
}

VersionRange VersionRange::intersect(const VersionRange& other) const {
  VersionRange out;
  out.lower = std::max(lower, other.lower);
  if (upper && other.upper) {
    out.upper = std::min(*upper, *other.upper);
  } else {
    out.upper = upper ? upper : other.upper;
  }
  return out;
}

std::string VersionRange::to_string() const {
  std::string out = ">=" + lower.to_string();
  if (upper) out += " <" + upper->to_string();
  return out;
}

namespace {

Version next_patch(Version v) { return {v.major, v.minor, v.patch + 1}; }

std::string_view op_text(VersionOp op) {
  switch (op) {
    case VersionOp::Caret: return "^";
    case VersionOp::Tilde: return "~";
    case VersionOp::Exact: return "=";
    case VersionOp::Bare: return "";
    case VersionOp::Greater: return ">";
    case VersionOp::GreaterEqual: return ">=";
    case VersionOp::Less: return "<";
    case VersionOp::LessEqual: return "<=";
  }
  return "";
}

[[noreturn]] void malformed(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::MalformedPragma,
              "malformed version constraint '" + std::string(text) + "': " + why);
}

}  // namespace

VersionRange Comparator::range() const {
  const Version& v = version;
  switch (op) {
    case VersionOp::Caret:
      if (v.major > 0) return {v, Version{v.major + 1, 0, 0}};
      if (v.minor > 0) return {v, Version{0, v.minor + 1, 0}};
      return {v, next_patch(v)};
    case VersionOp::Tilde:
      return {v, Version{v.major, v.minor + 1, 0}};
    case VersionOp::Exact:
    case VersionOp::Bare:
      return {v, next_patch(v)};
    case VersionOp::Greater:
      return {next_patch(v), std::nullopt};
    case VersionOp::GreaterEqual:
      return {v, std::nullopt};
    case VersionOp::Less:
      return {Version{}, v};
    case VersionOp::LessEqual:
      return {Version{}, next_patch(v)};
  }
  return {};
}

VersionConstraint::VersionConstraint(std::vector<Comparator> comparators)
    : comparators_(std::move(comparators)) {
  if (comparators_.empty()) malformed("", "empty constraint");
}

VersionConstraint VersionConstraint::parse(std::string_view text) {
  std::vector<Comparator> comparators;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    Comparator c;
    if (text.substr(i, 2) == ">=") { c.op = VersionOp::GreaterEqual; i += 2; }
    else if (text.substr(i, 2) == "<=") { c.op = VersionOp::LessEqual; i += 2; }
    else if (text[i] == '^') { c.op = VersionOp::Caret; ++i; }
    else if (text[i] == '~') { c.op = VersionOp::Tilde; ++i; }
    else if (text[i] == '=') { c.op = VersionOp::Exact; ++i; }
    else if (text[i] == '>') { c.op = VersionOp::Greater; ++i; }
    else if (text[i] == '<') { c.op = VersionOp::Less; ++i; }
    else if (std::isdigit(static_cast<unsigned char>(text[i]))) { c.op = VersionOp::Bare; }
    else malformed(text, std::string("unexpected character '") + text[i] + "'");

    unsigned parts[3] = {0, 0, 0};
    for (int p = 0; p < 3; ++p) {
      if (p > 0) {
        if (i >= text.size() || text[i] != '.') malformed(text, "expected major.minor.patch");
        ++i;
      }
      const char* begin = text.data() + i;
      const char* end = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(begin, end, parts[p]);
      if (ec != std::errc() || ptr == begin) malformed(text, "expected a version number");
      i += static_cast<std::size_t>(ptr - begin);
    }
    c.version = Version{parts[0], parts[1], parts[2]};
    comparators.push_back(c);
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      malformed(text, "unexpected trailing characters");
    }
    skip_space();
  }
  if (comparators.empty()) malformed(text, "empty constraint");
  return VersionConstraint(std::move(comparators));
}

VersionRange VersionConstraint::range() const {
  VersionRange r = comparators_.front().range();
  for (std::size_t i = 1; i < comparators_.size(); ++i) r = r.intersect(comparators_[i].range());
  return r;
}

std::string VersionConstraint::to_string() const {
  std::string out;
  for (const auto& c : comparators_) {
    if (!out.empty()) out += ' ';
    out += op_text(c.op);
    out += c.version.to_string();
  }
  return out;
}

VersionConstraint extract_pragma_version(const SoliditySource& src) {
  const auto tokens = tokenize(src.raw_text);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::Identifier || tokens[i].text != "pragma") continue;
    if (tokens[i + 1].kind != TokenKind::Identifier || tokens[i + 1].text != "solidity") continue;
    std::size_t j = i + 2;
    while (j < tokens.size() && tokens[j].kind != TokenKind::EndOfInput &&
           !(tokens[j].kind == TokenKind::Punct && tokens[j].text == ";")) {
      ++j;
    }
    if (j >= tokens.size() || tokens[j].kind == TokenKind::EndOfInput) {
      throw Error(ErrorCode::MalformedPragma, "pragma solidity directive is missing ';'",
                  tokens[i].span.start);
    }
    const std::size_t begin = tokens[i + 1].offset + tokens[i + 1].length;
    const std::string_view text =
        std::string_view(src.raw_text).substr(begin, tokens[j].offset - begin);
    return VersionConstraint::parse(text);
  }
  throw Error(ErrorCode::MissingPragma,
              src.source_name + ": no 'pragma solidity' directive found");
}

const std::vector<ParserDialect>& known_dialects() {
  static const std::vector<ParserDialect> kDialects{
      {"v08", VersionRange{Version{0, 8, 0}, Version{0, 9, 0}}},
  };
  return kDialects;
}

ParserDialect select_dialect(const VersionConstraint& constraint) {
  const VersionRange wanted = constraint.range();
  for (const auto& dialect : known_dialects()) {
    if (!wanted.intersect(dialect.supported_range).empty() && !wanted.empty()) return dialect;
  }
  std::string supported;
  for (const auto& dialect : known_dialects()) {
    if (!supported.empty()) supported += ", ";
    supported += dialect.supported_range.to_string();
  }
  throw Error(ErrorCode::UnsupportedVersion,
              "unsupported Solidity version constraint '" + constraint.to_string() +
                  "' (supported: " + supported + ")");
}

}  // namespace ecsv::solidity
