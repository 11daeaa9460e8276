#include "support.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ecsv/describe.hpp"
#include "ecsv/pipeline.hpp"
#include "ecsv/solidity/parser.hpp"

namespace ecsv::test {

using solidity::AstNode;
using solidity::NodeType;

std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(ECSV_FIXTURE_DIR) / name;
}

std::string read_fixture(const std::string& name) { return pipeline::read_file(fixture_path(name)); }

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ecsv-test-" + name);
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  std::filesystem::create_directories(dir);
  return dir;
}

AstNode parse_fixture(const std::string& name) {
  return solidity::parse_source({read_fixture(name), name});
}

graph::KnowledgeGraph rental_graph() {
  econtract::EContractDocument doc{read_fixture("rental.txt"), "rental.txt"};
  return pipeline::econtract_graph(pipeline::extract_econtract(doc, default_config().lexicons));
}

graph::KnowledgeGraph rental_agreement_graph() {
  return pipeline::smartcontract_graph(parse_fixture("rental_agreement.sol"), describe::Grammar::defaults());
}

// DOT ------------------------------------------------------------------------

namespace {

const std::set<std::string> kShapes{
    "box",     "polygon", "ellipse",  "oval",      "circle",        "point",     "egg",
    "triangle", "plaintext", "plain", "diamond",   "trapezium",     "parallelogram",
    "house",   "pentagon", "hexagon", "septagon",  "octagon",       "doublecircle",
    "doubleoctagon", "tripleoctagon", "invtriangle", "invtrapezium", "invhouse",
    "Mdiamond", "Msquare", "Mcircle", "rect",      "rectangle",     "square",
    "star",    "none",    "underline", "cylinder", "note",          "tab",
    "folder",  "box3d",   "component", "promoter", "cds",           "terminator",
    "utr",     "primersite", "restrictionsite", "fivepoverhang", "threepoverhang",
    "noverhang", "assembly", "signature", "insulator", "ribosite", "rnastab",
    "proteasesite", "proteinstab", "rpromoter", "rarrow", "larrow", "lpromoter",
};

class DotChecker {
 public:
  explicit DotChecker(const std::string& text) : text_(text) {}

  std::string run() {
    try {
      skip();
      std::string word = ident();
      if (lower(word) == "strict") {
        skip();
        word = ident();
      }
      if (lower(word) == "digraph") {
        edge_op_ = "->";
      } else if (lower(word) == "graph") {
        edge_op_ = "--";
      } else {
        return "expected 'graph' or 'digraph'";
      }
      skip();
      if (peek() != '{') id();
      skip();
      expect('{');
      while (true) {
        skip();
        if (peek() == '}') break;
        if (peek() == '\0') return "unexpected end of input";
        statement();
      }
      ++pos_;
      skip();
      if (pos_ != text_.size()) return "trailing text after closing brace";
      for (const auto& endpoint : endpoints_) {
        if (!nodes_.count(endpoint)) return "edge endpoint '" + endpoint + "' is not declared";
      }
      return "";
    } catch (const std::string& problem) {
      return problem + " at offset " + std::to_string(pos_);
    }
  }

 private:
  static std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos_;
      } else if (peek() == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n') ++pos_;
      } else if (peek() == '/' && peek(1) == '*') {
        const auto end = text_.find("*/", pos_ + 2);
        if (end == std::string::npos) throw std::string("unterminated comment");
        pos_ = end + 2;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (peek() != c) throw std::string("expected '") + c + "'";
    ++pos_;
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    if (start == pos_) throw std::string("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  std::string id() {
    skip();
    if (peek() == '"') {
      ++pos_;
      std::string out;
      while (true) {
        const char c = peek();
        if (c == '\0') throw std::string("unterminated quoted string");
        ++pos_;
        if (c == '"') break;
        if (c == '\\') {
          const char next = peek();
          if (next == '\0') throw std::string("unterminated quoted string");
          ++pos_;
          if (next != '"' && next != '\\' && next != 'n' && next != 'l' && next != 'r') {
            out += '\\';
          }
          out += next;
          continue;
        }
        if (c == '\n') throw std::string("raw newline inside quoted string");
        out += c;
      }
      return out;
    }
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '.') {
      const std::size_t start = pos_;
      if (peek() == '-') ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
      return text_.substr(start, pos_ - start);
    }
    const char c = peek();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) throw std::string("expected an ID");
    return ident();
  }

  std::map<std::string, std::string> attr_list() {
    std::map<std::string, std::string> attrs;
    skip();
    while (peek() == '[') {
      ++pos_;
      while (true) {
        skip();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        const std::string key = id();
        skip();
        expect('=');
        attrs[key] = id();
        skip();
        if (peek() == ',' || peek() == ';') ++pos_;
      }
      skip();
    }
    return attrs;
  }

  void statement() {
    const std::size_t start = pos_;
    const std::string first = id();
    skip();
    const std::string keyword = lower(first);
    const bool bare = text_[start] != '"';
    if (bare && (keyword == "graph" || keyword == "node" || keyword == "edge") && peek() == '[') {
      check_attrs(attr_list());
    } else if (peek() == '=') {
      ++pos_;
      id();
    } else if (text_.compare(pos_, 2, "->") == 0 || text_.compare(pos_, 2, "--") == 0) {
      std::string previous = first;
      while (text_.compare(pos_, 2, "->") == 0 || text_.compare(pos_, 2, "--") == 0) {
        if (text_.compare(pos_, 2, edge_op_) != 0) throw std::string("edge operator does not fit graph kind");
        pos_ += 2;
        const std::string next = id();
        endpoints_.insert(previous);
        endpoints_.insert(next);
        previous = next;
        skip();
      }
      check_attrs(attr_list());
    } else {
      if (!nodes_.insert(first).second) throw std::string("node '" + first + "' declared twice");
      check_attrs(attr_list());
    }
    skip();
    if (peek() == ';') ++pos_;
  }

  void check_attrs(const std::map<std::string, std::string>& attrs) {
    auto it = attrs.find("shape");
    if (it != attrs.end() && !kShapes.count(it->second)) {
      throw std::string("unknown shape '" + it->second + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::string edge_op_;
  std::set<std::string> nodes_;
  std::set<std::string> endpoints_;
};

}  // namespace

std::string check_dot(const std::string& text) { return DotChecker(text).run(); }

// Solidity printer --------------------------------------------------------------

namespace {

std::string parameter_list(const AstNode& owner, const std::string& role) {
  std::string out = "(";
  bool first = true;
  for (const auto& child : owner.children) {
    if (child.type != NodeType::Parameter || child.attr("role") != role) continue;
    if (!first) out += ", ";
    first = false;
    out += child.attr("type");
    if (child.has_attr("location")) out += " " + child.attr("location");
    if (child.has_attr("indexed")) out += " indexed";
    if (child.has_attr("name")) out += " " + child.attr("name");
  }
  return out + ")";
}

void print_statement(const AstNode& n, int indent, std::string& out);

void print_block(const AstNode& block, int indent, std::string& out) {
  out += "{\n";
  for (const auto& s : block.children) print_statement(s, indent + 1, out);
  out += std::string(static_cast<std::size_t>(indent) * 4, ' ') + "}";
}

std::string assignment_text(const AstNode& n) {
  return describe::render_expression(n.children.at(0)) + " " + n.attr("operator") + " " +
         describe::render_expression(n.children.at(1));
}

std::string join_args(const std::vector<AstNode>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) out += ", ";
    out += describe::render_expression(nodes[i]);
  }
  return out;
}

void print_nested(const AstNode& n, int indent, std::string& out) {
  if (n.type == NodeType::Block) {
    print_block(n, indent, out);
  } else {
    out += "{\n";
    print_statement(n, indent + 1, out);
    out += std::string(static_cast<std::size_t>(indent) * 4, ' ') + "}";
  }
}

void print_statement(const AstNode& n, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
  out += pad;
  switch (n.type) {
    case NodeType::Block:
      print_block(n, indent, out);
      out += "\n";
      return;
    case NodeType::RequireStatement:
      out += "require(" + describe::render_expression(n.children.at(0));
      if (n.children.size() > 1) out += ", " + describe::render_expression(n.children[1]);
      out += ");\n";
      return;
    case NodeType::EmitStatement:
      out += "emit " + n.attr("name") + "(" + join_args(n.children) + ");\n";
      return;
    case NodeType::Assignment:
      out += assignment_text(n) + ";\n";
      return;
    case NodeType::ReturnStatement:
      if (n.children.empty()) {
        out += "return;\n";
      } else if (n.children.size() == 1) {
        out += "return " + describe::render_expression(n.children[0]) + ";\n";
      } else {
        out += "return (" + join_args(n.children) + ");\n";
      }
      return;
    case NodeType::IfStatement:
      out += "if (" + describe::render_expression(n.children.at(0)) + ") ";
      print_nested(n.children.at(1), indent, out);
      if (n.children.size() > 2) {
        out += " else ";
        print_nested(n.children[2], indent, out);
      }
      out += "\n";
      return;
    case NodeType::WhileStatement:
      out += "while (" + describe::render_expression(n.children.at(0)) + ") ";
      print_nested(n.children.at(1), indent, out);
      out += "\n";
      return;
    case NodeType::ForStatement:
      out += "for (" + assignment_text(n.children.at(0)) + "; " +
             describe::render_expression(n.children.at(1)) + "; " + assignment_text(n.children.at(2)) +
             ") ";
      print_nested(n.children.at(3), indent, out);
      out += "\n";
      return;
    default:
      out += "/* unexpected " + std::string(solidity::to_string(n.type)) + " */\n";
  }
}

void print_member(const AstNode& m, std::string& out) {
  out += "    ";
  switch (m.type) {
    case NodeType::StateVariableDeclaration:
      out += m.attr("type") + " " + m.attr("visibility");
      if (m.has_attr("mutability")) out += " " + m.attr("mutability");
      out += " " + m.attr("name");
      if (m.children.size() > 1) out += " = " + describe::render_expression(m.children[1]);
      out += ";\n";
      return;
    case NodeType::EventDefinition:
      out += "event " + m.attr("name") + parameter_list(m, "parameter") + ";\n";
      return;
    case NodeType::ConstructorDefinition:
    case NodeType::FunctionDefinition: {
      const bool ctor = m.type == NodeType::ConstructorDefinition;
      out += ctor ? "constructor" : "function " + m.attr("name");
      out += parameter_list(m, "parameter");
      if (m.has_attr("visibility")) out += " " + m.attr("visibility");
      if (m.attr("mutability") != "nonpayable") out += " " + m.attr("mutability");
      const std::string returns = parameter_list(m, "return");
      if (returns != "()") out += " returns " + returns;
      out += " ";
      print_block(m.children.back(), 1, out);
      out += "\n";
      return;
    }
    default:
      out += "/* unexpected member */\n";
  }
}

}  // namespace

std::string print_solidity(const AstNode& root) {
  std::string out;
  for (const auto& top : root.children) {
    if (top.type == NodeType::PragmaDirective) {
      out += "pragma " + top.attr("name") + " " + top.attr("value") + ";\n";
    } else if (top.type == NodeType::ContractDefinition) {
      out += "contract " + top.attr("name") + " {\n";
      for (const auto& m : top.children) print_member(m, out);
      out += "}\n";
    }
  }
  return out;
}

bool same_shape(const AstNode& a, const AstNode& b) {
  if (a.type != b.type || a.attributes != b.attributes || a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_shape(a.children[i], b.children[i])) return false;
  }
  return true;
}

// Random inputs -------------------------------------------------------------------

AstNode random_expression(std::mt19937& rng, int depth) {
  static const char* kOperators[] = {"||", "&&", "==", "!=", "<", "<=", ">",
                                     ">=", "+",  "-",  "*",  "/", "%"};
  static const char* kNames[] = {"a", "b", "total", "owner", "limit"};
  std::uniform_int_distribution<int> pick(0, 9);
  AstNode n;
  const int choice = depth <= 0 ? pick(rng) % 4 : pick(rng);
  if (choice == 0) {
    n.type = NodeType::Identifier;
    n.attributes["name"] = kNames[pick(rng) % 5];
  } else if (choice == 1) {
    n.type = NodeType::Literal;
    n.attributes["kind"] = "number";
    n.attributes["value"] = std::to_string(pick(rng) * 7);
  } else if (choice == 2) {
    n.type = NodeType::MemberAccess;
    n.attributes["member"] = pick(rng) % 2 ? "sender" : "value";
    AstNode msg;
    msg.type = NodeType::Identifier;
    msg.attributes["name"] = "msg";
    n.children.push_back(std::move(msg));
  } else if (choice == 3) {
    n.type = NodeType::Literal;
    n.attributes["kind"] = pick(rng) % 2 ? "bool" : "string";
    n.attributes["value"] = n.attributes["kind"] == "bool" ? (pick(rng) % 2 ? "true" : "false")
                                                           : "say \"hi\"\\now";
  } else {
    n.type = NodeType::BinaryExpression;
    n.attributes["operator"] = kOperators[std::uniform_int_distribution<int>(0, 12)(rng)];
    n.children.push_back(random_expression(rng, depth - 1));
    n.children.push_back(random_expression(rng, depth - 1));
  }
  return n;
}

graph::KnowledgeGraph random_graph(std::mt19937& rng, Side side, std::size_t max_nodes) {
  static const char* kWords[] = {"rent",   "deposit", "tenant", "landlord", "term",
                                 "notice", "property", "utilities", "law", "date"};
  static const EntityKind kKinds[] = {EntityKind::Party, EntityKind::MonetaryAmount, EntityKind::Date,
                                      EntityKind::ClauseTerm, EntityKind::CodeVariable,
                                      EntityKind::CodeFunction};
  static const char* kPredicates[] = {"pays", "pay", "mentions", "guards", "writes", "declares"};
  std::uniform_int_distribution<std::size_t> count(0, max_nodes);
  std::uniform_int_distribution<int> word(0, 9), words(1, 3), kind(0, 5), predicate(0, 5);

  std::vector<Entity> entities;
  std::set<std::string> ids;
  const std::size_t target = count(rng);
  for (std::size_t attempts = 0; entities.size() < target && attempts < 4 * max_nodes + 4; ++attempts) {
    std::string label;
    const int n = words(rng);
    for (int i = 0; i < n; ++i) {
      std::string w = kWords[word(rng)];
      if (side == Side::SmartContract && i > 0) w[0] = static_cast<char>(std::toupper(w[0]));
      label += (i > 0 && side == Side::EContract) ? " " + w : w;
    }
    Entity e = make_entity(kKinds[kind(rng)], label, Provenance{side, "random"});
    if (ids.insert(e.id).second) entities.push_back(std::move(e));
  }

  std::vector<Relation> relations;
  if (entities.size() >= 2) {
    std::uniform_int_distribution<std::size_t> node(0, entities.size() - 1);
    const std::size_t edges = count(rng);
    for (std::size_t i = 0; i < edges; ++i) {
      const std::size_t a = node(rng), b = node(rng);
      if (a == b) continue;
      relations.push_back(
          Relation{entities[a].id, kPredicates[predicate(rng)], entities[b].id, Provenance{side, "random"}});
    }
  }
  return graph::build_graph(side, entities, relations);
}

namespace {

// Exact maximum-weight matching on one connected component of the candidate
// graph, by dynamic programming over subsets of its smaller side.
double component_optimum(const std::vector<std::vector<double>>& w, const std::vector<std::size_t>& rows_in,
                         const std::vector<std::size_t>& cols_in) {
  const bool swap = rows_in.size() < cols_in.size();
  const auto& rows = swap ? cols_in : rows_in;
  const auto& cols = swap ? rows_in : cols_in;
  const auto weight = [&](std::size_t r, std::size_t c) { return swap ? w[c][r] : w[r][c]; };
  if (cols.size() > 22) throw std::runtime_error("oracle component too large");

  const std::size_t states = std::size_t{1} << cols.size();
  std::vector<double> best(states, -1.0);
  best[0] = 0.0;
  for (std::size_t r : rows) {
    std::vector<double> next = best;
    for (std::size_t mask = 0; mask < states; ++mask) {
      if (best[mask] < 0) continue;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const double x = weight(r, cols[j]);
        if ((mask >> j) & 1U || x <= 0.0) continue;
        const std::size_t to = mask | (std::size_t{1} << j);
        next[to] = std::max(next[to], best[mask] + x);
      }
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end());
}

}  // namespace

double optimal_matching_score(const graph::KnowledgeGraph& ge, const graph::KnowledgeGraph& gs,
                              double tau, const MatchingConfig& config) {
  std::vector<const Entity*> es, ss;
  for (const auto& [id, e] : ge.nodes()) es.push_back(&e);
  for (const auto& [id, e] : gs.nodes()) ss.push_back(&e);

  std::vector<std::vector<double>> w(es.size(), std::vector<double>(ss.size(), 0.0));
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
      const double s = compare::similarity(*es[i], *ss[j], config);
      w[i][j] = s >= tau ? s : 0.0;
    }
  }

  // Components of the bipartite candidate graph; e-nodes are 0..n-1 and
  // s-nodes n..n+m-1.
  const std::size_t n = es.size();
  std::vector<int> component(n + ss.size(), -1);
  double total = 0.0;
  for (std::size_t start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::vector<std::size_t> rows, cols, stack{start};
    component[start] = static_cast<int>(start);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (v < n) {
        rows.push_back(v);
        for (std::size_t j = 0; j < ss.size(); ++j) {
          if (w[v][j] > 0.0 && component[n + j] < 0) {
            component[n + j] = static_cast<int>(start);
            stack.push_back(n + j);
          }
        }
      } else {
        cols.push_back(v - n);
        for (std::size_t i = 0; i < n; ++i) {
          if (w[i][v - n] > 0.0 && component[i] < 0) {
            component[i] = static_cast<int>(start);
            stack.push_back(i);
          }
        }
      }
    }
    if (!cols.empty()) total += component_optimum(w, rows, cols);
  }
  return total;
}

double total_score(const std::vector<compare::EntityMatch>& matches) {
  double sum = 0.0;
  for (const auto& m : matches) sum += m.score;
  return sum;
}

}  // namespace ecsv::test
