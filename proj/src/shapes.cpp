#include "shaclcheck/shapes.hpp"

#include <algorithm>

#include "shaclcheck/error.hpp"

namespace shaclcheck {

struct PathExpr::Node {
  Kind kind;
  PropertyId prop;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

PathExpr PathExpr::prop(PropertyId p) {
  if (p == SymbolTable::type_property())
    throw Error(
        "the reserved type property cannot appear in a path expression");
  return PathExpr(std::make_shared<Node>(Node{Kind::prop, p, nullptr, nullptr}));
}

PathExpr PathExpr::inverse(PathExpr inner) {
  return PathExpr(std::make_shared<Node>(
      Node{Kind::inverse, PropertyId{}, std::move(inner.node_), nullptr}));
}

PathExpr PathExpr::seq(PathExpr left, PathExpr right) {
  return PathExpr(std::make_shared<Node>(Node{
      Kind::seq, PropertyId{}, std::move(left.node_), std::move(right.node_)}));
}

PathExpr::Kind PathExpr::kind() const { return node_->kind; }

PropertyId PathExpr::property() const {
  if (node_->kind != Kind::prop) throw Error("path is not a property");
  return node_->prop;
}

PathExpr PathExpr::inner() const {
  if (node_->kind != Kind::inverse) throw Error("path is not an inverse");
  return PathExpr(node_->a);
}

PathExpr PathExpr::left() const {
  if (node_->kind != Kind::seq) throw Error("path is not a sequence");
  return PathExpr(node_->a);
}

PathExpr PathExpr::right() const {
  if (node_->kind != Kind::seq) throw Error("path is not a sequence");
  return PathExpr(node_->b);
}

bool PathExpr::operator==(const PathExpr& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::prop:
      return node_->prop == other.node_->prop;
    case Kind::inverse:
      return inner() == other.inner();
    case Kind::seq:
      return left() == other.left() && right() == other.right();
  }
  return false;
}

struct Constraint::Node {
  Kind kind;
  ShapeId shape;
  NodeId node;
  uint32_t n = 0;
  std::shared_ptr<const PathExpr> path;
  std::shared_ptr<const Constraint::Node> a;
  std::shared_ptr<const Constraint::Node> b;
};

Constraint Constraint::top() {
  return Constraint(std::make_shared<Node>(Node{Kind::top, {}, {}, 0, nullptr,
                                                nullptr, nullptr}));
}

Constraint Constraint::shape_ref(ShapeId s) {
  return Constraint(std::make_shared<Node>(
      Node{Kind::shape_ref, s, {}, 0, nullptr, nullptr, nullptr}));
}

Constraint Constraint::node_const(NodeId v) {
  return Constraint(std::make_shared<Node>(
      Node{Kind::node_const, {}, v, 0, nullptr, nullptr, nullptr}));
}

Constraint Constraint::conj(Constraint a, Constraint b) {
  return Constraint(std::make_shared<Node>(Node{Kind::conj, {}, {}, 0, nullptr,
                                                std::move(a.node_),
                                                std::move(b.node_)}));
}

Constraint Constraint::neg(Constraint a) {
  // Double negations collapse at construction, keeping one canonical tree
  // per formula and making serialization a structural inverse of parsing.
  if (a.node_->kind == Kind::neg) return Constraint(a.node_->a);
  return Constraint(std::make_shared<Node>(
      Node{Kind::neg, {}, {}, 0, nullptr, std::move(a.node_), nullptr}));
}

Constraint Constraint::at_least(uint32_t n, PathExpr path, Constraint c) {
  if (n < 1) throw Error("at-least requires a count of at least 1");
  return Constraint(std::make_shared<Node>(
      Node{Kind::at_least, {}, {}, n,
           std::make_shared<PathExpr>(std::move(path)), std::move(c.node_),
           nullptr}));
}

Constraint Constraint::disj(Constraint a, Constraint b) {
  return neg(conj(neg(std::move(a)), neg(std::move(b))));
}

Constraint Constraint::at_most(uint32_t n, PathExpr path, Constraint c) {
  return neg(at_least(n + 1, std::move(path), std::move(c)));
}

Constraint Constraint::exactly(uint32_t n, PathExpr path, Constraint c) {
  if (n == 0) return at_most(0, std::move(path), std::move(c));
  Constraint upper = at_most(n, path, c);
  Constraint lower = at_least(n, std::move(path), std::move(c));
  return conj(std::move(upper), std::move(lower));
}

Constraint Constraint::forall(PathExpr path, Constraint c) {
  return at_most(0, std::move(path), neg(std::move(c)));
}

Constraint Constraint::exists(PathExpr path, Constraint c) {
  return at_least(1, std::move(path), std::move(c));
}

Constraint::Kind Constraint::kind() const { return node_->kind; }

ShapeId Constraint::shape() const {
  if (node_->kind != Kind::shape_ref) throw Error("not a shape reference");
  return node_->shape;
}

NodeId Constraint::node() const {
  if (node_->kind != Kind::node_const) throw Error("not a node constant");
  return node_->node;
}

Constraint Constraint::left() const {
  if (node_->kind != Kind::conj) throw Error("not a conjunction");
  return Constraint(node_->a);
}

Constraint Constraint::right() const {
  if (node_->kind != Kind::conj) throw Error("not a conjunction");
  return Constraint(node_->b);
}

Constraint Constraint::inner() const {
  if (node_->kind != Kind::neg && node_->kind != Kind::at_least)
    throw Error("constraint has no inner constraint");
  return Constraint(node_->a);
}

uint32_t Constraint::count() const {
  if (node_->kind != Kind::at_least) throw Error("not an at-least");
  return node_->n;
}

const PathExpr& Constraint::path() const {
  if (node_->kind != Kind::at_least) throw Error("not an at-least");
  return *node_->path;
}

bool Constraint::operator==(const Constraint& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::top:
      return true;
    case Kind::shape_ref:
      return node_->shape == other.node_->shape;
    case Kind::node_const:
      return node_->node == other.node_->node;
    case Kind::conj:
      return left() == other.left() && right() == other.right();
    case Kind::neg:
      return inner() == other.inner();
    case Kind::at_least:
      return node_->n == other.node_->n && path() == other.path() &&
             inner() == other.inner();
  }
  return false;
}

Constraint desugar(const Constraint& c) {
  switch (c.kind()) {
    case Constraint::Kind::top:
      return Constraint::top();
    case Constraint::Kind::shape_ref:
      return Constraint::shape_ref(c.shape());
    case Constraint::Kind::node_const:
      return Constraint::node_const(c.node());
    case Constraint::Kind::conj:
      return Constraint::conj(desugar(c.left()), desugar(c.right()));
    case Constraint::Kind::neg:
      return Constraint::neg(desugar(c.inner()));
    case Constraint::Kind::at_least:
      return Constraint::at_least(c.count(), c.path(), desugar(c.inner()));
  }
  throw Error("unreachable constraint kind");
}

namespace {

void collect_refs(const Constraint& c, std::set<ShapeId>& out) {
  switch (c.kind()) {
    case Constraint::Kind::top:
    case Constraint::Kind::node_const:
      return;
    case Constraint::Kind::shape_ref:
      out.insert(c.shape());
      return;
    case Constraint::Kind::conj:
      collect_refs(c.left(), out);
      collect_refs(c.right(), out);
      return;
    case Constraint::Kind::neg:
    case Constraint::Kind::at_least:
      collect_refs(c.inner(), out);
      return;
  }
}

}  // namespace

std::set<ShapeId> free_shape_refs(const Constraint& c) {
  std::set<ShapeId> out;
  collect_refs(c, out);
  return out;
}

TargetQuery TargetQuery::none() { return TargetQuery(); }

TargetQuery TargetQuery::nodes(std::vector<NodeId> vs) {
  if (vs.empty()) throw Error("an enumerated target requires at least one node");
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  TargetQuery q;
  q.kind_ = Kind::nodes;
  q.nodes_ = std::move(vs);
  return q;
}

TargetQuery TargetQuery::cls(NodeId v, SymbolTable& table) {
  table.mark_class(v);
  TargetQuery q;
  q.kind_ = Kind::cls;
  q.class_node_ = v;
  return q;
}

TargetQuery TargetQuery::subjects_of(PropertyId p) {
  if (p == SymbolTable::type_property())
    throw Error("the type property cannot be used in a subjectsOf target");
  TargetQuery q;
  q.kind_ = Kind::subjects_of;
  q.property_ = p;
  return q;
}

TargetQuery TargetQuery::objects_of(PropertyId p) {
  if (p == SymbolTable::type_property())
    throw Error("the type property cannot be used in an objectsOf target");
  TargetQuery q;
  q.kind_ = Kind::objects_of;
  q.property_ = p;
  return q;
}

const std::vector<NodeId>& TargetQuery::node_list() const {
  if (kind_ != Kind::nodes) throw Error("target has no node list");
  return nodes_;
}

NodeId TargetQuery::class_node() const {
  if (kind_ != Kind::cls) throw Error("target is not a class target");
  return class_node_;
}

PropertyId TargetQuery::property() const {
  if (kind_ != Kind::subjects_of && kind_ != Kind::objects_of)
    throw Error("target has no property");
  return property_;
}

ShapeSet ShapeSet::make(std::vector<Shape> shapes, const SymbolTable& table) {
  std::sort(shapes.begin(), shapes.end(),
            [](const Shape& a, const Shape& b) { return a.name < b.name; });
  for (size_t i = 1; i < shapes.size(); ++i) {
    if (shapes[i - 1].name == shapes[i].name)
      throw Error("duplicate shape name: " +
                  table.shape_name(shapes[i].name));
  }
  for (const Shape& s : shapes) {
    for (ShapeId ref : free_shape_refs(s.constraint)) {
      bool found = std::any_of(shapes.begin(), shapes.end(),
                               [&](const Shape& t) { return t.name == ref; });
      if (!found)
        throw Error("unresolved shape reference: " + table.shape_name(ref) +
                    " (referenced by " + table.shape_name(s.name) + ")");
    }
  }
  ShapeSet set;
  set.shapes_ = std::move(shapes);
  return set;
}

const Shape& ShapeSet::at(ShapeId s) const {
  for (const Shape& sh : shapes_)
    if (sh.name == s) return sh;
  throw Error("shape not in set");
}

bool ShapeSet::contains(ShapeId s) const {
  return std::any_of(shapes_.begin(), shapes_.end(),
                     [&](const Shape& sh) { return sh.name == s; });
}

std::vector<ShapeId> ShapeSet::names() const {
  std::vector<ShapeId> out;
  out.reserve(shapes_.size());
  for (const Shape& s : shapes_) out.push_back(s.name);
  return out;
}

}  // namespace shaclcheck
