#include "shaclcheck/translation.hpp"

#include <algorithm>
#include <sstream>

#include "shaclcheck/error.hpp"

namespace shaclcheck {

ConceptId NameBridge::shape_concept(ShapeId s) {
  auto it = shape_to_concept_.find(s);
  if (it != shape_to_concept_.end()) return it->second;
  const std::string& spelling = table_->shape_name(s);
  if (auto existing = signature_.find_concept(spelling))
    if (concept_to_class_.count(*existing))
      throw Error("shape and class share the spelling " + spelling +
                  "; the naming function would not be injective");
  ConceptId id = signature_.intern_concept(spelling);
  shape_to_concept_.emplace(s, id);
  concept_to_shape_.emplace(id, s);
  return id;
}

ConceptId NameBridge::class_concept(NodeId v) {
  auto it = class_to_concept_.find(v);
  if (it != class_to_concept_.end()) return it->second;
  const std::string& spelling = table_->node_name(v);
  if (auto existing = signature_.find_concept(spelling))
    if (concept_to_shape_.count(*existing))
      throw Error("shape and class share the spelling " + spelling +
                  "; the naming function would not be injective");
  ConceptId id = signature_.intern_concept(spelling);
  class_to_concept_.emplace(v, id);
  concept_to_class_.emplace(id, v);
  return id;
}

ObjectId NameBridge::node_object(NodeId v) {
  auto it = node_to_object_.find(v);
  if (it != node_to_object_.end()) return it->second;
  ObjectId id = signature_.intern_object(table_->node_name(v));
  node_to_object_.emplace(v, id);
  object_to_node_.emplace(id, v);
  return id;
}

RoleId NameBridge::property_role(PropertyId p) {
  auto it = property_to_role_.find(p);
  if (it != property_to_role_.end()) return it->second;
  RoleId id = signature_.intern_role(table_->property_name(p));
  property_to_role_.emplace(p, id);
  role_to_property_.emplace(id, p);
  return id;
}

bool NameBridge::is_shape_concept(ConceptId c) const {
  return concept_to_shape_.count(c) > 0;
}

bool NameBridge::is_class_concept(ConceptId c) const {
  return concept_to_class_.count(c) > 0;
}

ShapeId NameBridge::concept_shape(ConceptId c) const {
  auto it = concept_to_shape_.find(c);
  if (it == concept_to_shape_.end())
    throw Error("concept name was not produced from a shape");
  return it->second;
}

NodeId NameBridge::concept_class(ConceptId c) const {
  auto it = concept_to_class_.find(c);
  if (it == concept_to_class_.end())
    throw Error("concept name was not produced from a class");
  return it->second;
}

NodeId NameBridge::object_node(ObjectId o) const {
  auto it = object_to_node_.find(o);
  if (it == object_to_node_.end())
    throw Error("object name was not produced from a node");
  return it->second;
}

PropertyId NameBridge::role_property(RoleId r) const {
  auto it = role_to_property_.find(r);
  if (it == role_to_property_.end())
    throw Error("role name was not produced from a property");
  return it->second;
}

Role tau_role(const PathExpr& path, NameBridge& bridge) {
  switch (path.kind()) {
    case PathExpr::Kind::prop:
      return Role::atomic(bridge.property_role(path.property()));
    case PathExpr::Kind::inverse:
      return Role::inverse(tau_role(path.inner(), bridge));
    case PathExpr::Kind::seq: {
      // Interning order must match reading order; argument evaluation order
      // would be compiler-dependent.
      Role left = tau_role(path.left(), bridge);
      Role right = tau_role(path.right(), bridge);
      return Role::compose(std::move(left), std::move(right));
    }
  }
  throw Error("unreachable path kind");
}

Concept tau_constr(const Constraint& c, NameBridge& bridge) {
  switch (c.kind()) {
    case Constraint::Kind::top:
      return Concept::top();
    case Constraint::Kind::shape_ref:
      return Concept::atomic(bridge.shape_concept(c.shape()));
    case Constraint::Kind::node_const:
      return Concept::nominal({bridge.node_object(c.node())});
    case Constraint::Kind::conj: {
      Concept left = tau_constr(c.left(), bridge);
      Concept right = tau_constr(c.right(), bridge);
      return Concept::conj(std::move(left), std::move(right));
    }
    case Constraint::Kind::neg:
      return Concept::neg(tau_constr(c.inner(), bridge));
    case Constraint::Kind::at_least: {
      Role role = tau_role(c.path(), bridge);
      Concept filler = tau_constr(c.inner(), bridge);
      return Concept::at_least(c.count(), std::move(role), std::move(filler));
    }
  }
  throw Error("unreachable constraint kind");
}

Concept tau_target(const TargetQuery& q, NameBridge& bridge) {
  switch (q.kind()) {
    case TargetQuery::Kind::none:
      return Concept::bottom();
    case TargetQuery::Kind::nodes: {
      std::vector<ObjectId> objects;
      for (NodeId v : q.node_list()) objects.push_back(bridge.node_object(v));
      return Concept::nominal(std::move(objects));
    }
    case TargetQuery::Kind::cls:
      return Concept::atomic(bridge.class_concept(q.class_node()));
    case TargetQuery::Kind::subjects_of:
      return Concept::exists(Role::atomic(bridge.property_role(q.property())),
                             Concept::top());
    case TargetQuery::Kind::objects_of:
      return Concept::exists(
          Role::inverse(Role::atomic(bridge.property_role(q.property()))),
          Concept::top());
  }
  throw Error("unreachable target kind");
}

Translation tau_shapes(const ShapeSet& s, const SymbolTable& table) {
  NameBridge bridge(table);
  std::vector<Axiom> axioms;
  for (const Shape& shape : s.shapes()) {
    Concept target = tau_target(shape.target, bridge);
    Concept shape_concept = Concept::atomic(bridge.shape_concept(shape.name));
    Concept constraint = tau_constr(shape.constraint, bridge);
    axioms.push_back(Axiom::subsumption(std::move(target), shape_concept));
    auto [forward, backward] =
        Axiom::equivalence(std::move(constraint), shape_concept);
    axioms.push_back(std::move(forward));
    axioms.push_back(std::move(backward));
  }
  KnowledgeBase kb = KnowledgeBase::make(bridge.signature(), std::move(axioms));
  return Translation{std::move(kb), std::move(bridge)};
}

Interpretation model_from_assignment(const RdfGraph& g, const Assignment& sigma,
                                     const ShapeSet& s,
                                     const SymbolTable& table) {
  if (g.nodes().empty())
    throw Error("cannot build a model from an empty graph: universes are non-empty");
  if (!is_faithful(g, sigma, s))
    throw Error("assignment is not faithful; no corresponding model exists");

  Translation tau = tau_shapes(s, table);
  const DlSignature& sig = tau.kb.signature();

  std::vector<uint32_t> object_elements;
  for (uint32_t o = 0; o < sig.object_count(); ++o) {
    NodeId v = tau.bridge.object_node(ObjectId{o});
    if (!g.has_node(v))
      throw Error("object name " + table.node_name(v) +
                  " does not denote a graph node");
    object_elements.push_back(static_cast<uint32_t>(g.node_index(v)));
  }

  std::vector<std::vector<uint32_t>> concept_elements(sig.concept_count());
  for (uint32_t c = 0; c < sig.concept_count(); ++c) {
    ConceptId id{c};
    if (tau.bridge.is_shape_concept(id)) {
      ShapeId shape = tau.bridge.concept_shape(id);
      for (NodeId v : g.nodes())
        if (sigma.contains(v, shape))
          concept_elements[c].push_back(static_cast<uint32_t>(g.node_index(v)));
    } else {
      NodeId cls = tau.bridge.concept_class(id);
      for (const Triple& t : g.triples())
        if (t.predicate == SymbolTable::type_property() && t.object == cls)
          concept_elements[c].push_back(
              static_cast<uint32_t>(g.node_index(t.subject)));
    }
  }

  std::vector<std::vector<Interpretation::ElementPair>> role_pairs(
      sig.role_count());
  for (const Triple& t : g.triples()) {
    if (t.predicate == SymbolTable::type_property()) continue;
    if (auto r = sig.find_role(table.property_name(t.predicate)))
      role_pairs[r->value].emplace_back(
          static_cast<uint32_t>(g.node_index(t.subject)),
          static_cast<uint32_t>(g.node_index(t.object)));
  }

  return Interpretation::make(sig, static_cast<uint32_t>(g.nodes().size()),
                              std::move(object_elements),
                              std::move(concept_elements),
                              std::move(role_pairs));
}

namespace {

// Assignment bits for a node that backs no universe element (a class node
// present only as a type-triple object). Such a node has no path successors
// and cannot be a class or subjectsOf/objectsOf target, so each shape's
// constraint at it depends only on the node's own bits; targets listing the
// node by name force bits on. Leaves the canonically first satisfying bit
// set in sigma and reports whether one exists.
bool complete_isolated_node(EvalContext& ctx, Assignment& sigma, NodeId node,
                            const ShapeSet& s) {
  const std::vector<ShapeId> names = s.names();
  size_t n = names.size();
  if (n > 24) throw Error("too many shapes for class-node completion");
  std::vector<bool> required(n, false);
  for (size_t i = 0; i < n; ++i) {
    const Shape& shape = s.shapes()[i];
    if (shape.target.kind() == TargetQuery::Kind::nodes) {
      const std::vector<NodeId>& listed = shape.target.node_list();
      if (std::binary_search(listed.begin(), listed.end(), node))
        required[i] = true;
    }
  }
  for (uint64_t pattern = 0; pattern < (uint64_t{1} << n); ++pattern) {
    for (size_t i = 0; i < n; ++i)
      sigma.set(node, names[i], (pattern >> i) & 1);
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) {
      bool bit = (pattern >> i) & 1;
      if (required[i] && !bit) ok = false;
      if (ok && bit != eval_constraint(ctx, sigma, node, s.shapes()[i].constraint))
        ok = false;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

GraphAssignment graph_assignment_from_model(const Interpretation& I,
                                            const ShapeSet& s,
                                            SymbolTable& table) {
  Translation tau = tau_shapes(s, table);
  if (!I.signature().extends(tau.kb.signature()))
    throw Error("interpretation signature does not cover the shape translation");
  ModelCheck check = check_model(I, tau.kb);
  if (!check.satisfied)
    throw Error("interpretation is not a model of the shape translation");

  const DlSignature& sig = tau.kb.signature();
  uint32_t n = I.universe_size();

  // Element naming: the element's object name when unique, else fresh.
  std::vector<std::optional<NodeId>> named(n);
  for (uint32_t o = 0; o < sig.object_count(); ++o) {
    uint32_t e = I.object_element(ObjectId{o});
    NodeId v = tau.bridge.object_node(ObjectId{o});
    if (named[e] && *named[e] != v)
      throw Error("model maps the objects " +
                  table.node_name(*named[e]) + " and " + table.node_name(v) +
                  " to one element; no graph can mirror a merged pair");
    named[e] = v;
  }
  std::vector<NodeId> element_nodes(n, NodeId{0});
  uint32_t fresh_counter = 0;
  for (uint32_t e = 0; e < n; ++e) {
    if (named[e]) {
      element_nodes[e] = *named[e];
      continue;
    }
    std::string name;
    do {
      ++fresh_counter;
      std::ostringstream out;
      out << "b" << fresh_counter;
      name = out.str();
    } while (table.find_node(name).has_value());
    element_nodes[e] = table.node(name);
  }

  std::vector<Triple> triples;
  for (uint32_t r = 0; r < sig.role_count(); ++r) {
    PropertyId p = tau.bridge.role_property(RoleId{r});
    for (const auto& [from, to] : I.role_pairs(RoleId{r}))
      triples.push_back({element_nodes[from], p, element_nodes[to]});
  }
  std::vector<NodeId> class_only_nodes;
  for (uint32_t c = 0; c < sig.concept_count(); ++c) {
    ConceptId id{c};
    if (!tau.bridge.is_class_concept(id)) continue;
    const std::vector<uint32_t>& members = I.concept_elements(id);
    if (members.empty()) continue;
    NodeId cls = tau.bridge.concept_class(id);
    for (uint32_t e : members)
      triples.push_back({element_nodes[e], SymbolTable::type_property(), cls});
    if (std::find(element_nodes.begin(), element_nodes.end(), cls) ==
        element_nodes.end())
      class_only_nodes.push_back(cls);
  }

  RdfGraph graph = RdfGraph::make(element_nodes, std::move(triples), table);
  Assignment sigma(graph, s.names());
  for (uint32_t c = 0; c < sig.concept_count(); ++c) {
    ConceptId id{c};
    if (!tau.bridge.is_shape_concept(id)) continue;
    ShapeId shape = tau.bridge.concept_shape(id);
    for (uint32_t e : I.concept_elements(id))
      sigma.set(element_nodes[e], shape, true);
  }

  std::sort(class_only_nodes.begin(), class_only_nodes.end());
  class_only_nodes.erase(
      std::unique(class_only_nodes.begin(), class_only_nodes.end()),
      class_only_nodes.end());
  EvalContext ctx(graph);
  for (NodeId cls : class_only_nodes) {
    if (!complete_isolated_node(ctx, sigma, cls, s))
      throw Error("no faithful assignment completion exists at class node " +
                  table.node_name(cls));
  }

  return GraphAssignment{std::move(graph), std::move(sigma),
                         std::move(element_nodes)};
}

namespace {

std::string fresh_spelling(const SymbolTable& table, const std::string& base) {
  auto taken = [&](const std::string& name) {
    return table.find_node(name).has_value() ||
           table.find_shape(name).has_value() ||
           table.find_property(name).has_value();
  };
  if (!taken(base)) return base;
  for (uint32_t i = 1;; ++i) {
    std::ostringstream out;
    out << base << "_" << i;
    if (!taken(out.str())) return out.str();
  }
}

}  // namespace

GciEncoding encode_gci(const Constraint& c, const Constraint& d,
                       const ShapeSet& ambient, SymbolTable& table) {
  ShapeId lhs = table.shape(fresh_spelling(table, "gci_lhs"));
  ShapeId rhs = table.shape(fresh_spelling(table, "gci_rhs"));
  NodeId marker = table.node(fresh_spelling(table, "gci_lhs_class"));

  std::vector<Shape> shapes(ambient.shapes().begin(), ambient.shapes().end());
  shapes.push_back({lhs, c, TargetQuery::none()});
  shapes.push_back({rhs, d, TargetQuery::cls(marker, table)});
  return GciEncoding{ShapeSet::make(std::move(shapes), table), lhs, rhs,
                     marker};
}

}  // namespace shaclcheck
