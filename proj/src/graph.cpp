#include "ecsv/graph.hpp"

#include <algorithm>

#include "ecsv/error.hpp"

namespace ecsv::graph {

using solidity::AstNode;
using solidity::AstPath;
using solidity::NodeType;

const Entity* KnowledgeGraph::find(const std::string& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  if (a.side_ != b.side_ || a.nodes_ != b.nodes_ || a.edges_.size() != b.edges_.size()) return false;
  return std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin());
}

KnowledgeGraph build_graph(Side side, const std::vector<Entity>& entities,
                           const std::vector<Relation>& relations) {
  KnowledgeGraph g(side);
  for (const auto& e : entities) {
    auto [it, inserted] = g.nodes_.emplace(e.id, e);
    if (!inserted && it->second != e) {
      throw Error(ErrorCode::InvalidGraph, "two different entities share id '" + e.id + "'");
    }
  }
  for (const auto& r : relations) {
    for (const auto* endpoint : {&r.source, &r.target}) {
      if (!g.nodes_.count(*endpoint)) {
        throw Error(ErrorCode::DanglingEdge, "relation (" + r.source + ", " + r.predicate + ", " +
                                                 r.target + ") refers to missing node '" +
                                                 *endpoint + "'");
      }
    }
    if (r.source == r.target) {
      throw Error(ErrorCode::InvalidGraph, "self-loop on '" + r.source + "'");
    }
    g.edges_.insert(r);
  }
  return g;
}

namespace {

constexpr Side kCode = Side::SmartContract;

bool is_msg_sender(const AstNode& n) {
  return n.type == NodeType::MemberAccess && n.attr("member") == "sender" && n.children.size() == 1 &&
         n.children[0].type == NodeType::Identifier && n.children[0].attr("name") == "msg";
}

// Identifiers compared with msg.sender through == or != anywhere in `expr`.
void collect_roles(const AstNode& expr, std::vector<std::string>& out) {
  if (expr.type != NodeType::BinaryExpression) return;
  const std::string& op = expr.attr("operator");
  if ((op == "==" || op == "!=") && expr.children.size() == 2) {
    const AstNode& lhs = expr.children[0];
    const AstNode& rhs = expr.children[1];
    const AstNode* other = is_msg_sender(lhs) ? &rhs : is_msg_sender(rhs) ? &lhs : nullptr;
    if (other != nullptr && other->type == NodeType::Identifier) {
      const std::string& name = other->attr("name");
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return;
  }
  for (const auto& child : expr.children) collect_roles(child, out);
}

class SemanticGraphBuilder {
 public:
  SemanticGraphBuilder(const describe::SemanticStructure& structure, const AstNode& root) {
    for (const auto& item : structure.items) descriptions_[item.node_path] = item.description;
    solidity::visit_preorder(root, [&](const AstNode& n, const AstPath& path) {
      if (n.type == NodeType::ContractDefinition) contract(n, path);
    });
  }

  KnowledgeGraph finish() const { return build_graph(kCode, entities_, relations_); }

 private:
  std::map<std::string, std::string> described(const AstPath& path,
                                               std::map<std::string, std::string> attrs = {}) const {
    auto it = descriptions_.find(path);
    if (it != descriptions_.end()) attrs["description"] = it->second;
    return attrs;
  }

  const Entity& add(EntityKind kind, const std::string& label, const AstPath& path,
                    std::map<std::string, std::string> attrs) {
    Entity e = make_entity(kind, label, Provenance::ast_path(kCode, path), std::move(attrs));
    for (const auto& existing : entities_) {
      if (existing.id == e.id) return existing;
    }
    entities_.push_back(std::move(e));
    return entities_.back();
  }

  void relate(const std::string& source, const std::string& predicate, const std::string& target,
              const AstPath& path) {
    relations_.push_back(Relation{source, predicate, target, Provenance::ast_path(kCode, path)});
  }

  static AstPath child_path(const AstPath& parent, std::size_t index) {
    AstPath path = parent;
    path.push_back(index);
    return path;
  }

  void contract(const AstNode& n, const AstPath& path) {
    entities_.reserve(n.children.size() * 2 + 1);
    const std::string contract_id = add(EntityKind::CodeContract, n.attr("name"), path, described(path)).id;

    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const AstNode& member = n.children[i];
      const AstPath member_path = child_path(path, i);
      switch (member.type) {
        case NodeType::StateVariableDeclaration: {
          const std::string id =
              add(EntityKind::CodeVariable, member.attr("name"), member_path,
                  described(member_path, {{"type", member.attr("type")},
                                          {"visibility", member.attr("visibility")}}))
                  .id;
          variables_[member.attr("name")] = id;
          relate(contract_id, "declares", id, member_path);
          break;
        }
        case NodeType::EventDefinition: {
          const std::string id =
              add(EntityKind::CodeEvent, member.attr("name"), member_path, described(member_path)).id;
          events_[member.attr("name")] = id;
          relate(contract_id, "defines", id, member_path);
          break;
        }
        default:
          break;
      }
    }

    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const AstNode& member = n.children[i];
      const AstPath member_path = child_path(path, i);
      const bool is_constructor = member.type == NodeType::ConstructorDefinition;
      if (!is_constructor && member.type != NodeType::FunctionDefinition) continue;
      std::map<std::string, std::string> attrs{{"mutability", member.attr("mutability")}};
      if (!is_constructor) attrs["visibility"] = member.attr("visibility");
      const std::string label = is_constructor ? "constructor" : member.attr("name");
      const std::string id = add(EntityKind::CodeFunction, label, member_path,
                                 described(member_path, std::move(attrs)))
                                 .id;
      relate(contract_id, "defines", id, member_path);
      body(member, member_path, id, is_constructor ? "initializes" : "writes");
    }
  }

  void body(const AstNode& n, const AstPath& path, const std::string& function_id,
            const std::string& write_predicate) {
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const AstNode& child = n.children[i];
      const AstPath here = child_path(path, i);
      switch (child.type) {
        case NodeType::RequireStatement: {
          std::vector<std::string> roles;
          if (!child.children.empty()) collect_roles(child.children[0], roles);
          for (const auto& role : roles) {
            const std::string id = add(EntityKind::CodeRole, role, here, {}).id;
            relate(function_id, "guards", id, here);
          }
          break;
        }
        case NodeType::EmitStatement: {
          auto it = events_.find(child.attr("name"));
          if (it != events_.end()) relate(function_id, "emits", it->second, here);
          break;
        }
        case NodeType::Assignment: {
          const AstNode& target = child.children.at(0);
          if (target.type == NodeType::Identifier) {
            auto it = variables_.find(target.attr("name"));
            if (it != variables_.end()) relate(function_id, write_predicate, it->second, here);
          }
          break;
        }
        default:
          body(child, here, function_id, write_predicate);
      }
    }
  }

  std::map<AstPath, std::string> descriptions_;
  std::map<std::string, std::string> variables_;
  std::map<std::string, std::string> events_;
  std::vector<Entity> entities_;
  std::vector<Relation> relations_;
};

std::string flip_id(const std::string& id, Side to) {
  const std::string prefix = to == Side::EContract ? "e:" : "s:";
  if (id.size() >= 2 && (id.compare(0, 2, "e:") == 0 || id.compare(0, 2, "s:") == 0)) {
    return prefix + id.substr(2);
  }
  return prefix + id;
}

nlohmann::json provenance_to_json(const Provenance& p) {
  return {{"location", p.location}, {"side", std::string(to_string(p.side))}};
}

const nlohmann::json& require_key(const nlohmann::json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw Error::schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error::schema(path + "." + key, "missing key");
  return *it;
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& path) {
  const auto& value = require_key(obj, key, path);
  if (!value.is_string()) throw Error::schema(path + "." + key, "expected a string");
  return value.get<std::string>();
}

Provenance provenance_from_json(const nlohmann::json& obj, const std::string& path) {
  const std::string where = path + ".provenance";
  const auto& p = require_key(obj, "provenance", path);
  Provenance out;
  auto side = side_from_string(require_string(p, "side", where));
  if (!side) throw Error::schema(where + ".side", "unknown side");
  out.side = *side;
  out.location = require_string(p, "location", where);
  return out;
}

std::string dot_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out + "\"";
}

}  // namespace

KnowledgeGraph graph_from_semantic(const describe::SemanticStructure& structure,
                                   const solidity::AstNode& root) {
  return SemanticGraphBuilder(structure, root).finish();
}

KnowledgeGraph flip_side(const KnowledgeGraph& g) {
  const Side to = g.side() == Side::EContract ? Side::SmartContract : Side::EContract;
  std::vector<Entity> entities;
  for (const auto& [id, e] : g.nodes()) {
    Entity copy = e;
    copy.id = flip_id(id, to);
    copy.provenance.side = to;
    entities.push_back(std::move(copy));
  }
  std::vector<Relation> relations;
  for (const auto& r : g.edges()) {
    relations.push_back(Relation{flip_id(r.source, to), r.predicate, flip_id(r.target, to),
                                 Provenance{to, r.provenance.location}});
  }
  return build_graph(to, entities, relations);
}

nlohmann::json entity_to_json(const Entity& e) {
  nlohmann::json attributes = nlohmann::json::object();
  for (const auto& [key, value] : e.attributes) attributes[key] = value;
  return {{"attributes", attributes},
          {"id", e.id},
          {"kind", std::string(to_string(e.kind))},
          {"label", e.label},
          {"provenance", provenance_to_json(e.provenance)}};
}

nlohmann::json relation_to_json(const Relation& r) {
  return {{"predicate", r.predicate},
          {"provenance", provenance_to_json(r.provenance)},
          {"source", r.source},
          {"target", r.target}};
}

Entity entity_from_json(const nlohmann::json& doc, const std::string& path) {
  Entity e;
  e.id = require_string(doc, "id", path);
  e.label = require_string(doc, "label", path);
  auto kind = kind_from_string(require_string(doc, "kind", path));
  if (!kind) throw Error::schema(path + ".kind", "unknown entity kind");
  e.kind = *kind;
  const auto& attributes = require_key(doc, "attributes", path);
  if (!attributes.is_object()) throw Error::schema(path + ".attributes", "expected an object");
  for (const auto& [key, value] : attributes.items()) {
    if (!value.is_string()) throw Error::schema(path + ".attributes." + key, "expected a string");
    e.attributes[key] = value.get<std::string>();
  }
  e.provenance = provenance_from_json(doc, path);
  return e;
}

Relation relation_from_json(const nlohmann::json& doc, const std::string& path) {
  Relation r;
  r.source = require_string(doc, "source", path);
  r.predicate = require_string(doc, "predicate", path);
  r.target = require_string(doc, "target", path);
  r.provenance = provenance_from_json(doc, path);
  return r;
}

nlohmann::json export_json(const KnowledgeGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [id, e] : g.nodes()) nodes.push_back(entity_to_json(e));
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& r : g.edges()) edges.push_back(relation_to_json(r));
  return {{"edges", edges},
          {"nodes", nodes},
          {"schema_version", kSchemaVersion},
          {"side", std::string(to_string(g.side()))}};
}

std::string export_json_text(const KnowledgeGraph& g) { return export_json(g).dump(2) + "\n"; }

KnowledgeGraph import_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error::schema("$", "expected an object");
  if (require_string(doc, "schema_version", "$") != kSchemaVersion) {
    throw Error::schema("$.schema_version", std::string("expected \"") + kSchemaVersion + "\"");
  }
  auto side = side_from_string(require_string(doc, "side", "$"));
  if (!side) throw Error::schema("$.side", "unknown side");

  const auto& nodes = require_key(doc, "nodes", "$");
  if (!nodes.is_array()) throw Error::schema("$.nodes", "expected an array");
  std::vector<Entity> entities;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "$.nodes[" + std::to_string(i) + "]";
    entities.push_back(entity_from_json(nodes[i], path));
    if (!ids.insert(entities.back().id).second) throw Error::schema(path + ".id", "duplicate node id");
  }

  const auto& edges = require_key(doc, "edges", "$");
  if (!edges.is_array()) throw Error::schema("$.edges", "expected an array");
  std::vector<Relation> relations;
  std::set<Relation, TripleLess> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "$.edges[" + std::to_string(i) + "]";
    Relation r = relation_from_json(edges[i], path);
    if (!ids.count(r.source)) throw Error::schema(path + ".source", "unknown node id");
    if (!ids.count(r.target)) throw Error::schema(path + ".target", "unknown node id");
    if (r.source == r.target) throw Error::schema(path, "self-loop");
    if (!seen.insert(r).second) throw Error::schema(path, "duplicate edge");
    relations.push_back(std::move(r));
  }
  return build_graph(*side, entities, relations);
}

std::string_view dot_shape(EntityKind kind) {
  switch (kind) {
    case EntityKind::Party: return "ellipse";
    case EntityKind::PersonName: return "oval";
    case EntityKind::MonetaryAmount: return "diamond";
    case EntityKind::Date: return "hexagon";
    case EntityKind::PropertyAddress: return "house";
    case EntityKind::ClauseTerm: return "box";
    case EntityKind::CodeContract: return "doubleoctagon";
    case EntityKind::CodeVariable: return "box3d";
    case EntityKind::CodeFunction: return "component";
    case EntityKind::CodeEvent: return "cds";
    case EntityKind::CodeRole: return "octagon";
  }
  return "ellipse";
}

std::string export_dot(const KnowledgeGraph& g) {
  std::string out = "digraph {\n";
  out += "  label=" + dot_quote(std::string(to_string(g.side()))) + ";\n";
  out += "  rankdir=LR;\n";
  for (const auto& [id, e] : g.nodes()) {
    out += "  " + dot_quote(id) + " [label=" + dot_quote(e.label) +
           ", shape=" + std::string(dot_shape(e.kind)) + "];\n";
  }
  for (const auto& r : g.edges()) {
    out += "  " + dot_quote(r.source) + " -> " + dot_quote(r.target) +
           " [label=" + dot_quote(r.predicate) + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace ecsv::graph
