#include "ecsv/solidity/parser.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>
#include <set>

#include "ecsv/error.hpp"
#include "ecsv/solidity/lexer.hpp"

namespace ecsv::solidity {

namespace {

const std::set<std::string, std::less<>> kVisibilities{"external", "public", "internal", "private"};
const std::set<std::string, std::less<>> kLocations{"memory", "calldata", "storage"};
const std::set<std::string, std::less<>> kReserved{
    "public", "private", "internal", "external", "constant", "immutable", "payable", "view",
    "pure", "memory", "storage", "calldata", "indexed", "returns", "return", "function",
    "constructor", "contract", "event", "emit", "if", "else", "for", "while", "true", "false"};

// Leading keywords of constructs outside the subset.
const std::set<std::string, std::less<>> kUnsupportedMemberKeywords{
    "mapping", "struct", "enum", "modifier", "using", "error", "receive", "fallback",
    "function", "constructor", "event", "library", "interface", "type"};
const std::set<std::string, std::less<>> kUnsupportedStatementKeywords{
    "assembly", "unchecked", "try", "revert", "delete", "do", "break", "continue",
    "new", "assert", "selfdestruct"};
const std::set<std::string, std::less<>> kUnsupportedOperators{
    "!", "~", "++", "--", "**", "&", "|", "^", "<<", ">>", "?", "[", "=>",
    "*=", "/=", "%=", "**=", ">>=", "<<="};

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "==" || op == "!=") return 3;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
  if (op == "+" || op == "-") return 5;
  if (op == "*" || op == "/" || op == "%") return 6;
  return 0;
}

std::optional<std::string> elementary_type(std::string_view word) {
  if (word == "address" || word == "bool" || word == "string") return std::string(word);
  if (word == "uint") return std::string("uint256");
  if (word == "int") return std::string("int256");
  auto sized = [&](std::string_view prefix, int lo, int hi, int step) -> bool {
    if (word.substr(0, prefix.size()) != prefix || word.size() == prefix.size()) return false;
    std::string_view digits = word.substr(prefix.size());
    if (digits.front() == '0') return false;
    int n = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') return false;
      n = n * 10 + (c - '0');
      if (n > hi) return false;
    }
    return n >= lo && n % step == 0;
  };
  if (sized("uint", 8, 256, 8) || sized("int", 8, 256, 8) || sized("bytes", 1, 32, 1)) {
    return std::string(word);
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(const SoliditySource& src, std::vector<Token> tokens)
      : src_(src), tokens_(std::move(tokens)) {}

  AstNode parse_source_unit() {
    AstNode unit;
    unit.type = NodeType::SourceUnit;
    bool seen_contract = false;
    while (!at_end()) {
      const Token& t = peek();
      if (is_word("pragma")) {
        unit.children.push_back(parse_pragma());
      } else if (is_word("contract")) {
        if (seen_contract) unsupported(t, "more than one contract per source file");
        unit.children.push_back(parse_contract());
        seen_contract = true;
      } else if (t.kind == TokenKind::Identifier &&
                 (t.text == "import" || t.text == "library" || t.text == "interface" ||
                  t.text == "abstract" || t.text == "using" || t.text == "struct" ||
                  t.text == "enum" || t.text == "function" || t.text == "error" ||
                  t.text == "type")) {
        unsupported(t, "'" + t.text + "' at file level");
      } else {
        syntax_error(t, {"pragma", "contract"});
      }
    }
    if (!seen_contract) syntax_error(peek(), {"contract"});
    unit.span = {SourcePosition{1, 0}, peek().span.end};
    return unit;
  }

 private:
  // Token access --------------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::EndOfInput; }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    last_end_ = t.span.end;
    return t;
  }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::Identifier && peek(ahead).text == w;
  }
  bool accept_punct(std::string_view p) {
    if (!is_punct(p)) return false;
    advance();
    return true;
  }
  const Token& expect_punct(std::string_view p) {
    if (!is_punct(p)) syntax_error(peek(), {std::string(p)});
    return advance();
  }
  const Token& expect_identifier(const char* what) {
    if (peek().kind != TokenKind::Identifier || kReserved.contains(peek().text)) syntax_error(peek(), {what});
    return advance();
  }

  [[noreturn]] void syntax_error(const Token& t, std::initializer_list<std::string> expected) const {
    std::string found = t.kind == TokenKind::EndOfInput ? "end of input"
                        : t.kind == TokenKind::String ? "string literal"
                                                      : "'" + t.text + "'";
    std::string message = src_.source_name + ":" + std::to_string(t.span.start.line) + ":" +
                          std::to_string(t.span.start.column) + ": syntax error: found " + found +
                          ", expected ";
    std::vector<std::string> sorted(expected);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() > 1) message += "one of ";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (i > 0) message += ", ";
      message += "'" + sorted[i] + "'";
    }
    throw Error(ErrorCode::SyntaxError, message, t.span.start);
  }

  [[noreturn]] void unsupported(const Token& t, const std::string& what) const {
    throw Error(ErrorCode::UnsupportedConstruct,
                src_.source_name + ":" + std::to_string(t.span.start.line) + ":" +
                    std::to_string(t.span.start.column) + ": unsupported construct: " + what,
                t.span.start);
  }

  AstNode start_node(NodeType type) const {
    AstNode n;
    n.type = type;
    n.span.start = peek().span.start;
    return n;
  }
  AstNode finish(AstNode n) const {
    n.span.end = last_end_;
    return n;
  }

  // Declarations --------------------------------------------------------------

  AstNode parse_pragma() {
    AstNode n = start_node(NodeType::PragmaDirective);
    advance();
    const Token& name = expect_identifier("pragma name");
    n.attributes["name"] = name.text;
    const std::size_t begin = name.offset + name.length;
    while (!at_end() && !is_punct(";")) advance();
    const Token& semi = expect_punct(";");
    std::string value = src_.raw_text.substr(begin, semi.offset - begin);
    const auto first = value.find_first_not_of(" \t\r\n");
    const auto last = value.find_last_not_of(" \t\r\n");
    n.attributes["value"] = first == std::string::npos ? "" : value.substr(first, last - first + 1);
    return finish(std::move(n));
  }

  AstNode parse_contract() {
    AstNode n = start_node(NodeType::ContractDefinition);
    advance();
    n.attributes["name"] = expect_identifier("contract name").text;
    if (is_word("is")) unsupported(peek(), "inheritance");
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) syntax_error(peek(), {"}"});
      n.children.push_back(parse_member());
    }
    advance();
    return finish(std::move(n));
  }

  AstNode parse_member() {
    const Token& t = peek();
    if (t.kind == TokenKind::Identifier) {
      if (t.text == "event") return parse_event();
      if (t.text == "constructor") return parse_function(true);
      if (t.text == "function") return parse_function(false);
      if (elementary_type(t.text)) return parse_state_variable();
      if (kUnsupportedMemberKeywords.contains(t.text)) unsupported(t, "'" + t.text + "'");
      unsupported(t, "user-defined type '" + t.text + "'");
    }
    syntax_error(t, {"event", "constructor", "function", "}", "elementary type"});
  }

  AstNode parse_type_name() {
    AstNode n = start_node(NodeType::ElementaryTypeName);
    const Token& t = peek();
    auto type = t.kind == TokenKind::Identifier ? elementary_type(t.text) : std::nullopt;
    if (!type) {
      if (t.kind == TokenKind::Identifier && t.text == "mapping") unsupported(t, "'mapping'");
      if (t.kind == TokenKind::Identifier && !kVisibilities.contains(t.text)) {
        unsupported(t, "user-defined type '" + t.text + "'");
      }
      syntax_error(t, {"elementary type"});
    }
    advance();
    if (*type == "address" && is_word("payable")) {
      advance();
      *type = "address payable";
    }
    n.attributes["name"] = *type;
    n = finish(std::move(n));
    if (is_punct("[")) unsupported(peek(), "array type");
    return n;
  }

  AstNode parse_state_variable() {
    AstNode n = start_node(NodeType::StateVariableDeclaration);
    AstNode type = parse_type_name();
    n.attributes["type"] = type.attr("name");
    n.children.push_back(std::move(type));
    while (peek().kind == TokenKind::Identifier && !is_punct("=", 1) && !is_punct(";", 1)) {
      const Token& t = peek();
      if (kVisibilities.contains(t.text)) {
        if (t.text == "external") unsupported(t, "external state variable");
        if (n.has_attr("visibility")) syntax_error(t, {"variable name"});
        n.attributes["visibility"] = t.text;
      } else if (t.text == "constant" || t.text == "immutable") {
        if (n.has_attr("mutability")) syntax_error(t, {"variable name"});
        n.attributes["mutability"] = t.text;
      } else if (t.text == "override") {
        unsupported(t, "'override'");
      } else {
        break;
      }
      advance();
    }
    if (!n.has_attr("visibility")) n.attributes["visibility"] = "internal";
    n.attributes["name"] = expect_identifier("variable name").text;
    if (accept_punct("=")) n.children.push_back(parse_expression());
    if (!is_punct(";")) syntax_error(peek(), {";", "="});
    advance();
    return finish(std::move(n));
  }

  AstNode parse_parameter(const char* role, bool allow_indexed) {
    AstNode n = start_node(NodeType::Parameter);
    AstNode type = parse_type_name();
    n.attributes["type"] = type.attr("name");
    n.attributes["role"] = role;
    n.children.push_back(std::move(type));
    if (peek().kind == TokenKind::Identifier && kLocations.contains(peek().text)) {
      n.attributes["location"] = advance().text;
    }
    if (allow_indexed && is_word("indexed")) {
      advance();
      n.attributes["indexed"] = "true";
    }
    if (peek().kind == TokenKind::Identifier && !kReserved.contains(peek().text)) {
      n.attributes["name"] = advance().text;
    }
    return finish(std::move(n));
  }

  void parse_parameter_list(AstNode& owner, const char* role, bool allow_indexed) {
    expect_punct("(");
    if (accept_punct(")")) return;
    while (true) {
      owner.children.push_back(parse_parameter(role, allow_indexed));
      if (accept_punct(")")) return;
      if (!is_punct(",")) syntax_error(peek(), {",", ")"});
      advance();
    }
  }

  AstNode parse_event() {
    AstNode n = start_node(NodeType::EventDefinition);
    advance();
    n.attributes["name"] = expect_identifier("event name").text;
    parse_parameter_list(n, "parameter", true);
    if (is_word("anonymous")) unsupported(peek(), "anonymous event");
    expect_punct(";");
    return finish(std::move(n));
  }

  AstNode parse_function(bool is_constructor) {
    AstNode n = start_node(is_constructor ? NodeType::ConstructorDefinition
                                          : NodeType::FunctionDefinition);
    advance();
    if (!is_constructor) n.attributes["name"] = expect_identifier("function name").text;
    parse_parameter_list(n, "parameter", false);

    while (peek().kind == TokenKind::Identifier && !is_word("returns")) {
      const Token& t = peek();
      if (kVisibilities.contains(t.text)) {
        if (n.has_attr("visibility")) syntax_error(t, {"{"});
        n.attributes["visibility"] = t.text;
      } else if (t.text == "view" || t.text == "pure" || t.text == "payable") {
        if (n.has_attr("mutability")) syntax_error(t, {"{"});
        if (is_constructor && t.text != "payable") unsupported(t, "'" + t.text + "' constructor");
        n.attributes["mutability"] = t.text;
      } else if (t.text == "virtual" || t.text == "override") {
        unsupported(t, "'" + t.text + "'");
      } else {
        unsupported(t, "modifier invocation '" + t.text + "'");
      }
      advance();
    }
    if (!n.has_attr("mutability")) n.attributes["mutability"] = "nonpayable";
    if (!is_constructor && !n.has_attr("visibility")) {
      syntax_error(peek(), {"external", "public", "internal", "private"});
    }
    if (is_word("returns")) {
      if (is_constructor) syntax_error(peek(), {"{"});
      advance();
      parse_parameter_list(n, "return", false);
    }
    if (is_punct(";")) unsupported(peek(), "function without a body");
    n.children.push_back(parse_block());
    return finish(std::move(n));
  }

  // Statements ----------------------------------------------------------------

  AstNode parse_block() {
    AstNode n = start_node(NodeType::Block);
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) syntax_error(peek(), {"}"});
      n.children.push_back(parse_statement());
    }
    advance();
    return finish(std::move(n));
  }

  AstNode parse_statement() {
    const Token& t = peek();
    if (is_punct("{")) return parse_block();
    if (t.kind == TokenKind::Identifier) {
      if (t.text == "require") return parse_require();
      if (t.text == "emit") return parse_emit();
      if (t.text == "return") return parse_return();
      if (t.text == "if") return parse_if();
      if (t.text == "for") return parse_for();
      if (t.text == "while") return parse_while();
      if (kUnsupportedStatementKeywords.contains(t.text)) unsupported(t, "'" + t.text + "'");
      if (elementary_type(t.text) && peek(1).kind == TokenKind::Identifier) {
        unsupported(t, "local variable declaration");
      }
    }
    AstNode n = parse_assignment();
    expect_punct(";");
    return finish(std::move(n));
  }

  AstNode parse_assignment() {
    AstNode n = start_node(NodeType::Assignment);
    AstNode target = parse_expression();
    const Token& op = peek();
    if (op.kind == TokenKind::Punct && (op.text == "=" || op.text == "+=" || op.text == "-=")) {
      if (target.type != NodeType::Identifier && target.type != NodeType::MemberAccess) {
        unsupported(op, "assignment to a non-lvalue expression");
      }
      advance();
      n.attributes["operator"] = op.text;
      n.children.push_back(std::move(target));
      n.children.push_back(parse_expression());
      return finish(std::move(n));
    }
    if (op.kind == TokenKind::Punct && kUnsupportedOperators.contains(op.text)) {
      unsupported(op, "operator '" + op.text + "'");
    }
    syntax_error(op, {"=", "+=", "-="});
  }

  AstNode parse_require() {
    AstNode n = start_node(NodeType::RequireStatement);
    advance();
    expect_punct("(");
    n.children.push_back(parse_expression());
    n.attributes["message"] = "";
    if (accept_punct(",")) {
      if (peek().kind != TokenKind::String) syntax_error(peek(), {"string literal"});
      n.attributes["message"] = peek().text;
      n.children.push_back(parse_primary());
    }
    expect_punct(")");
    expect_punct(";");
    return finish(std::move(n));
  }

  AstNode parse_emit() {
    AstNode n = start_node(NodeType::EmitStatement);
    advance();
    n.attributes["name"] = expect_identifier("event name").text;
    expect_punct("(");
    if (!accept_punct(")")) {
      while (true) {
        n.children.push_back(parse_expression());
        if (accept_punct(")")) break;
        if (!is_punct(",")) syntax_error(peek(), {",", ")"});
        advance();
      }
    }
    expect_punct(";");
    return finish(std::move(n));
  }

  AstNode parse_return() {
    AstNode n = start_node(NodeType::ReturnStatement);
    advance();
    if (accept_punct(";")) return finish(std::move(n));
    if (is_punct("(")) {
      // `return (a, b, ...);` is a tuple; anything else is an ordinary expression.
      const std::size_t saved = pos_;
      const SourcePosition saved_end = last_end_;
      advance();
      std::vector<AstNode> items;
      bool tuple = false;
      try {
        items.push_back(parse_expression());
        while (accept_punct(",")) items.push_back(parse_expression());
        tuple = items.size() > 1 && is_punct(")") && is_punct(";", 1);
      } catch (const Error&) {
        tuple = false;
      }
      if (tuple) {
        advance();
        advance();
        n.children = std::move(items);
        return finish(std::move(n));
      }
      pos_ = saved;
      last_end_ = saved_end;
    }
    n.children.push_back(parse_expression());
    expect_punct(";");
    return finish(std::move(n));
  }

  AstNode parse_if() {
    AstNode n = start_node(NodeType::IfStatement);
    advance();
    expect_punct("(");
    n.children.push_back(parse_expression());
    expect_punct(")");
    n.children.push_back(parse_statement());
    if (is_word("else")) {
      advance();
      n.children.push_back(parse_statement());
    }
    return finish(std::move(n));
  }

  // for (init; condition; post) body -- all three clauses are required and
  // init/post must be assignments.
  AstNode parse_for() {
    AstNode n = start_node(NodeType::ForStatement);
    advance();
    expect_punct("(");
    if (elementary_type(peek().text) && peek(1).kind == TokenKind::Identifier) {
      unsupported(peek(), "local variable declaration");
    }
    n.children.push_back(parse_assignment());
    expect_punct(";");
    n.children.push_back(parse_expression());
    expect_punct(";");
    n.children.push_back(parse_assignment());
    expect_punct(")");
    n.children.push_back(parse_statement());
    return finish(std::move(n));
  }

  AstNode parse_while() {
    AstNode n = start_node(NodeType::WhileStatement);
    advance();
    expect_punct("(");
    n.children.push_back(parse_expression());
    expect_punct(")");
    n.children.push_back(parse_statement());
    return finish(std::move(n));
  }

  // Expressions ---------------------------------------------------------------

  AstNode parse_expression(int min_precedence = 1) {
    AstNode lhs = parse_postfix();
    while (true) {
      const Token& op = peek();
      if (op.kind != TokenKind::Punct) break;
      if (kUnsupportedOperators.contains(op.text) && op.text != "[") {
        unsupported(op, "operator '" + op.text + "'");
      }
      const int prec = binary_precedence(op.text);
      if (prec == 0 || prec < min_precedence) break;
      advance();
      AstNode rhs = parse_expression(prec + 1);
      AstNode bin;
      bin.type = NodeType::BinaryExpression;
      bin.attributes["operator"] = op.text;
      bin.span = {lhs.span.start, rhs.span.end};
      bin.children.push_back(std::move(lhs));
      bin.children.push_back(std::move(rhs));
      lhs = std::move(bin);
    }
    return lhs;
  }

  AstNode parse_postfix() {
    AstNode expr = parse_primary();
    while (true) {
      if (is_punct(".")) {
        advance();
        const Token& member = expect_identifier("member name");
        AstNode access;
        access.type = NodeType::MemberAccess;
        access.attributes["member"] = member.text;
        access.span = {expr.span.start, member.span.end};
        access.children.push_back(std::move(expr));
        expr = std::move(access);
      } else if (is_punct("(")) {
        unsupported(peek(), "function call");
      } else if (is_punct("[")) {
        unsupported(peek(), "index access");
      } else {
        return expr;
      }
    }
  }

  AstNode parse_primary() {
    const Token& t = peek();
    AstNode n = start_node(NodeType::Literal);
    switch (t.kind) {
      case TokenKind::Number:
        if (std::count(t.text.begin(), t.text.end(), '.') > 1) syntax_error(t, {"expression"});
        n.attributes["kind"] = "number";
        n.attributes["value"] = t.text;
        advance();
        if (peek().kind == TokenKind::Identifier &&
            (peek().text == "ether" || peek().text == "wei" || peek().text == "gwei" ||
             peek().text == "seconds" || peek().text == "minutes" || peek().text == "hours" ||
             peek().text == "days" || peek().text == "weeks")) {
          unsupported(peek(), "unit denomination '" + peek().text + "'");
        }
        return finish(std::move(n));
      case TokenKind::String:
        n.attributes["kind"] = "string";
        n.attributes["value"] = t.text;
        advance();
        return finish(std::move(n));
      case TokenKind::Identifier:
        if (t.text == "true" || t.text == "false") {
          n.attributes["kind"] = "bool";
          n.attributes["value"] = t.text;
          advance();
          return finish(std::move(n));
        }
        if (kUnsupportedStatementKeywords.contains(t.text) || t.text == "mapping" ||
            t.text == "type" || t.text == "payable") {
          unsupported(t, "'" + t.text + "' expression");
        }
        n.type = NodeType::Identifier;
        n.attributes["name"] = t.text;
        advance();
        return finish(std::move(n));
      case TokenKind::Punct:
        if (t.text == "(") {
          const SourcePosition open = t.span.start;
          advance();
          AstNode inner = parse_expression();
          if (is_punct(",")) unsupported(peek(), "tuple expression");
          expect_punct(")");
          inner.span = {open, last_end_};
          return inner;
        }
        if (kUnsupportedOperators.contains(t.text) || t.text == "-") {
          unsupported(t, "unary operator '" + t.text + "'");
        }
        break;
      case TokenKind::EndOfInput:
        break;
    }
    syntax_error(t, {"expression"});
  }

  const SoliditySource& src_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SourcePosition last_end_;
};

}  // namespace

AstNode parse(const SoliditySource& src, const ParserDialect& dialect) {
  (void)dialect;  // v08 is the only dialect; its grammar is the one below.
  return Parser(src, tokenize(src.raw_text)).parse_source_unit();
}

AstNode parse_source(const SoliditySource& src) {
  return parse(src, select_dialect(extract_pragma_version(src)));
}

}  // namespace ecsv::solidity
