#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "shaclcheck/symbols.hpp"

namespace shaclcheck {

// Path expression over properties: p | inverse(rho) | seq(rho1, rho2).
// Immutable shared tree with structural equality. The reserved "type"
// property is rejected in paths: class-instance edges are not traversable,
// which keeps the graph/model correspondence exact.
class PathExpr {
 public:
  enum class Kind { prop, inverse, seq };

  static PathExpr prop(PropertyId p);
  static PathExpr inverse(PathExpr inner);
  static PathExpr seq(PathExpr left, PathExpr right);

  Kind kind() const;
  PropertyId property() const;  // prop only
  PathExpr inner() const;       // inverse only
  PathExpr left() const;        // seq only
  PathExpr right() const;       // seq only

  bool operator==(const PathExpr& other) const;

  // Identity of the shared tree node, usable as a memoization key. Equal
  // keys imply structural equality; distinct keys imply nothing.
  const void* cache_key() const { return node_.get(); }

 private:
  struct Node;
  explicit PathExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Core constraint language: top | shape ref | node constant | conjunction |
// negation | at-least over a path. Derived operators desugar at construction:
//   disj(a,b)        = neg(conj(neg a, neg b))
//   at_most(n,r,c)   = neg(at_least(n+1,r,c))
//   exactly(n,r,c)   = conj(at_most(n,r,c), at_least(n,r,c)); exactly(0,..)
//                      keeps only the at_most conjunct
//   forall(r,c)      = at_most(0,r,neg c)
//   exists(r,c)      = at_least(1,r,c)
// at_least requires n >= 1.
class Constraint {
 public:
  enum class Kind { top, shape_ref, node_const, conj, neg, at_least };

  static Constraint top();
  static Constraint shape_ref(ShapeId s);
  static Constraint node_const(NodeId v);
  static Constraint conj(Constraint a, Constraint b);
  static Constraint neg(Constraint a);
  static Constraint at_least(uint32_t n, PathExpr path, Constraint c);

  static Constraint disj(Constraint a, Constraint b);
  static Constraint at_most(uint32_t n, PathExpr path, Constraint c);
  static Constraint exactly(uint32_t n, PathExpr path, Constraint c);
  static Constraint forall(PathExpr path, Constraint c);
  static Constraint exists(PathExpr path, Constraint c);

  Kind kind() const;
  ShapeId shape() const;    // shape_ref
  NodeId node() const;      // node_const
  Constraint left() const;  // conj
  Constraint right() const; // conj
  Constraint inner() const; // neg, at_least
  uint32_t count() const;   // at_least
  const PathExpr& path() const;  // at_least

  bool operator==(const Constraint& other) const;

 private:
  struct Node;
  explicit Constraint(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Rebuilds a constraint through the core factories. Core constraints are
// already desugared, so this is the identity; exposed for the idempotence
// property tests.
Constraint desugar(const Constraint& c);

// Shape names referenced by a constraint.
std::set<ShapeId> free_shape_refs(const Constraint& c);

// Target query: none | enumerated nodes | class | subjects-of | objects-of.
class TargetQuery {
 public:
  enum class Kind { none, nodes, cls, subjects_of, objects_of };

  static TargetQuery none();
  // Deduplicates and sorts; rejects an empty list.
  static TargetQuery nodes(std::vector<NodeId> vs);
  static TargetQuery cls(NodeId v, SymbolTable& table);
  // Type edges are expressed through class targets, never as a plain
  // property; both factories reject the type property.
  static TargetQuery subjects_of(PropertyId p);
  static TargetQuery objects_of(PropertyId p);

  Kind kind() const { return kind_; }
  const std::vector<NodeId>& node_list() const;  // nodes
  NodeId class_node() const;                     // cls
  PropertyId property() const;                   // subjects_of / objects_of

  bool operator==(const TargetQuery& other) const = default;

 private:
  Kind kind_ = Kind::none;
  std::vector<NodeId> nodes_;
  NodeId class_node_{};
  PropertyId property_{};
};

struct Shape {
  ShapeId name;
  Constraint constraint;
  TargetQuery target;
};

// A set of shapes with unique names, closed under shape references.
// Shapes are kept in canonical (interning) order of their names.
class ShapeSet {
 public:
  static ShapeSet make(std::vector<Shape> shapes, const SymbolTable& table);

  const std::vector<Shape>& shapes() const { return shapes_; }
  const Shape& at(ShapeId s) const;
  bool contains(ShapeId s) const;
  std::vector<ShapeId> names() const;
  size_t size() const { return shapes_.size(); }
  bool empty() const { return shapes_.empty(); }

 private:
  std::vector<Shape> shapes_;
};

}  // namespace shaclcheck
