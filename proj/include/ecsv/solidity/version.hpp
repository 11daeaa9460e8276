#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecsv::solidity {

struct SoliditySource {
  std::string raw_text;
  std::string source_name;
};

struct Version {
  unsigned major = 0;
  unsigned minor = 0;
  unsigned patch = 0;

  std::string to_string() const;
  friend auto operator<=>(const Version&, const Version&) = default;
};

enum class VersionOp {
  Caret,         // ^0.8.0
  Tilde,         // ~0.8.0
  Exact,         // =0.8.0
  Bare,          // 0.8.0 (same meaning as Exact, kept distinct for round-tripping)
  Greater,       // >0.8.0
  GreaterEqual,  // >=0.8.0
  Less,          // <0.9.0
  LessEqual,     // <=0.9.0
};

// Half-open [lower, upper); an absent upper bound means unbounded.
struct VersionRange {
  Version lower;
  std::optional<Version> upper;

  bool empty() const { return upper && !(lower < *upper); }
  VersionRange intersect(const VersionRange& other) const;
  std::string to_string() const;
  friend bool operator==(const VersionRange&, const VersionRange&) = default;
};

struct Comparator {
  VersionOp op = VersionOp::Bare;
  Version version;

  VersionRange range() const;
  friend bool operator==(const Comparator&, const Comparator&) = default;
};

// A space-separated conjunction of comparators, e.g. ">=0.8.0 <0.9.0".
class VersionConstraint {
 public:
  explicit VersionConstraint(std::vector<Comparator> comparators);

  // Throws MalformedPragma.
  static VersionConstraint parse(std::string_view text);

  const std::vector<Comparator>& comparators() const { return comparators_; }
  VersionOp op() const { return comparators_.front().op; }
  const Version& version() const { return comparators_.front().version; }

  VersionRange range() const;
  std::string to_string() const;

  friend bool operator==(const VersionConstraint&, const VersionConstraint&) = default;

 private:
  std::vector<Comparator> comparators_;
};

struct ParserDialect {
  std::string name;
  VersionRange supported_range;
};

// Reads the first `pragma solidity ...;` directive. Throws MissingPragma or
// MalformedPragma.
VersionConstraint extract_pragma_version(const SoliditySource& src);

const std::vector<ParserDialect>& known_dialects();

// Throws UnsupportedVersion when no dialect's range intersects the constraint.
ParserDialect select_dialect(const VersionConstraint& constraint);

}  // namespace ecsv::solidity
