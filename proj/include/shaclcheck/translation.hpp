#pragma once

#include <map>
#include <optional>
#include <vector>

#include "shaclcheck/dl.hpp"
#include "shaclcheck/eval.hpp"
#include "shaclcheck/graph.hpp"
#include "shaclcheck/shapes.hpp"
#include "shaclcheck/symbols.hpp"

namespace shaclcheck {

// Injective naming function between graph-side names and DL names, together
// with its inverse. Shape names and class nodes map into concept names;
// nodes into object names; properties into role names. The same spelling may
// appear in several DL partitions (a node used both as a class and as a
// constant); injectivity holds because the partitions are disjoint. A shape
// and a class node with the same spelling would collide inside the concept
// partition and are rejected.
//
// Holds a pointer to the symbol table it was built against; the table must
// outlive the bridge.
class NameBridge {
 public:
  explicit NameBridge(const SymbolTable& table) : table_(&table) {}

  // Forward direction; interns into the signature on first use.
  ConceptId shape_concept(ShapeId s);
  ConceptId class_concept(NodeId v);
  ObjectId node_object(NodeId v);
  RoleId property_role(PropertyId p);

  // Backward direction (the inverse naming); a name this bridge never
  // produced is an error.
  bool is_shape_concept(ConceptId c) const;
  bool is_class_concept(ConceptId c) const;
  ShapeId concept_shape(ConceptId c) const;
  NodeId concept_class(ConceptId c) const;
  NodeId object_node(ObjectId o) const;
  PropertyId role_property(RoleId r) const;

  const DlSignature& signature() const { return signature_; }
  const SymbolTable& table() const { return *table_; }

 private:
  const SymbolTable* table_;
  DlSignature signature_;
  std::map<ShapeId, ConceptId> shape_to_concept_;
  std::map<NodeId, ConceptId> class_to_concept_;
  std::map<NodeId, ObjectId> node_to_object_;
  std::map<PropertyId, RoleId> property_to_role_;
  std::map<ConceptId, ShapeId> concept_to_shape_;
  std::map<ConceptId, NodeId> concept_to_class_;
  std::map<ObjectId, NodeId> object_to_node_;
  std::map<RoleId, PropertyId> role_to_property_;
};

// Structural path-to-role mapping: property -> atomic, inverse -> inverse,
// sequence -> composition.
Role tau_role(const PathExpr& path, NameBridge& bridge);

// Constraint-to-concept mapping over the core variants.
Concept tau_constr(const Constraint& c, NameBridge& bridge);

// Target-to-concept mapping: none -> Bottom, nodes -> nominal, class ->
// atomic concept, subjectsOf p -> exists p.Top, objectsOf p -> exists
// inverse(p).Top.
Concept tau_target(const TargetQuery& q, NameBridge& bridge);

struct Translation {
  KnowledgeBase kb;
  NameBridge bridge;
};

// For each shape (s, phi, q) in canonical order emits
//   tau_target(q) subsumed-by A_s
//   tau_constr(phi) equivalent-to A_s   (stored as an origin-paired
//                                        subsumption pair)
// The knowledge base signature collects every forwarded name in translation
// order.
Translation tau_shapes(const ShapeSet& s, const SymbolTable& table);

// The canonical finite model of a faithful (graph, assignment) pair:
// universe = graph nodes; object names denote themselves; role extensions
// are the non-type edges; class concepts hold the type-edge subjects; shape
// concepts hold the assigned nodes. Rejects unfaithful assignments, the
// empty graph, and shape sets whose node constants are missing from the
// graph (an object name must denote a graph node).
Interpretation model_from_assignment(const RdfGraph& g, const Assignment& sigma,
                                     const ShapeSet& s, const SymbolTable& table);

struct GraphAssignment {
  RdfGraph graph;
  Assignment assignment;
  // Universe element -> graph node backing it.
  std::vector<NodeId> element_nodes;
};

// The reverse construction: every universe element becomes a graph node
// (named by its object name when it has exactly one, else a fresh "bN"
// name); role pairs become triples; class-concept members become type
// triples pointing at the class node; shape-concept members become the
// assignment. Rejects interpretations that are not models of tau_shapes(s)
// and interpretations mapping two object names to one element (no graph can
// mirror a merged pair under nominal constraints).
//
// Class nodes that are not element-backed enter the graph only as type-triple
// objects; their assignment bits are completed per node so the result stays
// faithful. Interns fresh node names into the table.
GraphAssignment graph_assignment_from_model(const Interpretation& I,
                                            const ShapeSet& s,
                                            SymbolTable& table);

// Encodes a concept inclusion tau(c) subsumed-by tau(d) as two fresh shapes
// over the ambient set: (s_c, c, no target) and (s_d, d, class target of a
// fresh class node). Containment s_c in s_d over the returned set holds
// exactly when the inclusion holds in all finite models of the ambient
// translation. Fresh names avoid every ambient spelling.
struct GciEncoding {
  ShapeSet shapes;
  ShapeId lhs_shape;
  ShapeId rhs_shape;
  NodeId marker_class;
};
GciEncoding encode_gci(const Constraint& c, const Constraint& d,
                       const ShapeSet& ambient, SymbolTable& table);

}  // namespace shaclcheck
