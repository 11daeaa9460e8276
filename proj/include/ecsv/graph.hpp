#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecsv/describe.hpp"
#include "ecsv/entity.hpp"
#include "ecsv/solidity/ast.hpp"

namespace ecsv::graph {

inline constexpr const char* kSchemaVersion = "1";

// A directed labeled graph. Nodes are keyed by id; edges are unique by their
// (source, predicate, target) triple. Construct through build_graph or
// import_json, which enforce the endpoint and self-loop invariants.
class KnowledgeGraph {
 public:
  explicit KnowledgeGraph(Side side = Side::EContract) : side_(side) {}

  Side side() const { return side_; }
  const std::map<std::string, Entity>& nodes() const { return nodes_; }
  const std::set<Relation, TripleLess>& edges() const { return edges_; }

  const Entity* find(const std::string& id) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b);

 private:
  friend KnowledgeGraph build_graph(Side, const std::vector<Entity>&,
                                    const std::vector<Relation>&);

  Side side_;
  std::map<std::string, Entity> nodes_;
  std::set<Relation, TripleLess> edges_;
};

// Throws DanglingEdge for a missing endpoint and InvalidGraph for a self-loop
// or for two different entities sharing an id. Duplicate triples collapse to
// the first occurrence.
KnowledgeGraph build_graph(Side side, const std::vector<Entity>& entities,
                           const std::vector<Relation>& relations);

// Smart-contract graph: contract, state variables, functions (constructor
// included), events, and msg.sender roles, with declares/defines/guards/
// emits/writes/initializes edges. Descriptions from `structure` are attached
// as the "description" attribute.
KnowledgeGraph graph_from_semantic(const describe::SemanticStructure& structure,
                                   const solidity::AstNode& root);

// Same graph seen from the other side: ids, provenance, and side are rewritten.
KnowledgeGraph flip_side(const KnowledgeGraph& g);

nlohmann::json entity_to_json(const Entity& e);
nlohmann::json relation_to_json(const Relation& r);
Entity entity_from_json(const nlohmann::json& doc, const std::string& path);
Relation relation_from_json(const nlohmann::json& doc, const std::string& path);

nlohmann::json export_json(const KnowledgeGraph& g);
// Sorted keys, two-space indentation, LF newlines, trailing newline.
std::string export_json_text(const KnowledgeGraph& g);

// Throws SchemaViolation naming the offending JSON path.
KnowledgeGraph import_json(const nlohmann::json& doc);

// Node shape by kind:
//   party ellipse, person-name oval, monetary-amount diamond, date hexagon,
//   property-address house, clause-term box, code-contract doubleoctagon,
//   code-variable box3d, code-function component, code-event cds,
//   code-role octagon.
std::string export_dot(const KnowledgeGraph& g);
std::string_view dot_shape(EntityKind kind);

}  // namespace ecsv::graph
