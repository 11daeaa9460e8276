#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ecsv {

enum class ErrorCode {
  EmptyDocument,
  UnknownEntityReference,
  MissingPragma,
  MalformedPragma,
  UnsupportedVersion,
  SyntaxError,
  UnsupportedConstruct,
  MissingRule,
  DanglingEdge,
  InvalidGraph,
  SchemaViolation,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// 1-based line, 0-based column.
struct SourcePosition {
  int line = 1;
  int column = 0;

  friend bool operator==(const SourcePosition&, const SourcePosition&) = default;
  friend auto operator<=>(const SourcePosition&, const SourcePosition&) = default;
};

// Every failure in the library surfaces as an Error. Source-level errors carry
// a position; schema errors carry a JSON path such as "$.nodes[3].id".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, const std::string& message, SourcePosition where)
      : std::runtime_error(message), code_(code), position_(where) {}

  static Error schema(const std::string& json_path, const std::string& message) {
    Error e(ErrorCode::SchemaViolation, json_path + ": " + message);
    e.json_path_ = json_path;
    return e;
  }

  // Same code, position and path with a replaced message.
  Error with_message(const std::string& message) const {
    Error e(code_, message);
    e.position_ = position_;
    e.json_path_ = json_path_;
    return e;
  }

  ErrorCode code() const noexcept { return code_; }
  const std::optional<SourcePosition>& position() const noexcept { return position_; }
  const std::optional<std::string>& json_path() const noexcept { return json_path_; }

 private:
  ErrorCode code_;
  std::optional<SourcePosition> position_;
  std::optional<std::string> json_path_;
};

}  // namespace ecsv
