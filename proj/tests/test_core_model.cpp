#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/graph.hpp"
#include "shaclcheck/shapes.hpp"
#include "shaclcheck/symbols.hpp"

using namespace shaclcheck;

TEST_CASE("symbol table partitions and lookups") {
  SymbolTable t;
  CHECK(t.property_count() == 1);
  CHECK(t.property_name(SymbolTable::type_property()) == "type");
  CHECK(t.find_property("type") == SymbolTable::type_property());

  NodeId a = t.node("alpha");
  CHECK(t.node("alpha") == a);
  CHECK(t.node_name(a) == "alpha");
  CHECK(t.find_node("alpha") == a);
  CHECK_FALSE(t.find_node("beta").has_value());

  // The partitions are independent: one spelling, three ids.
  PropertyId p = t.property("alpha");
  ShapeId s = t.shape("alpha");
  CHECK(t.property_name(p) == "alpha");
  CHECK(t.shape_name(s) == "alpha");

  CHECK_FALSE(t.is_class(a));
  t.mark_class(a);
  CHECK(t.is_class(a));
}

TEST_CASE("interning order is the canonical id order") {
  SymbolTable t;
  NodeId first = t.node("zzz");
  NodeId second = t.node("aaa");
  CHECK(first < second);
}

TEST_CASE("path expressions") {
  SymbolTable t;
  PropertyId p = t.property("p");
  PropertyId q = t.property("q");

  PathExpr path = PathExpr::seq(PathExpr::inverse(PathExpr::prop(p)),
                                PathExpr::prop(q));
  CHECK(path.kind() == PathExpr::Kind::seq);
  CHECK(path.left().kind() == PathExpr::Kind::inverse);
  CHECK(path.left().inner().property() == p);
  CHECK(path.right().property() == q);

  CHECK(path == PathExpr::seq(PathExpr::inverse(PathExpr::prop(p)),
                              PathExpr::prop(q)));
  CHECK_FALSE(path == PathExpr::prop(p));

  CHECK_THROWS_AS(PathExpr::prop(SymbolTable::type_property()), Error);
}

TEST_CASE("constraint desugar algebra") {
  SymbolTable t;
  PropertyId prop = t.property("p");
  NodeId v = t.node("v");
  PathExpr p = PathExpr::prop(prop);
  Constraint a = Constraint::node_const(v);
  Constraint b = Constraint::top();

  CHECK(Constraint::exists(p, a) == Constraint::at_least(1, p, a));
  CHECK(Constraint::at_most(2, p, a) ==
        Constraint::neg(Constraint::at_least(3, p, a)));
  CHECK(Constraint::forall(p, a) ==
        Constraint::neg(Constraint::at_least(1, p, Constraint::neg(a))));
  CHECK(Constraint::disj(a, b) ==
        Constraint::neg(Constraint::conj(Constraint::neg(a), Constraint::neg(b))));
  // exactly keeps the upper bound first; exactly(0) is the upper bound alone.
  CHECK(Constraint::exactly(1, p, a) ==
        Constraint::conj(Constraint::at_most(1, p, a),
                         Constraint::at_least(1, p, a)));
  CHECK(Constraint::exactly(0, p, a) == Constraint::at_most(0, p, a));

  CHECK_THROWS_AS(Constraint::at_least(0, p, a), Error);
}

TEST_CASE("desugar is the identity on constructed constraints") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    shaclcheck::testing::GeneratedSet set =
        shaclcheck::testing::generate_inverse_free_set(seed);
    for (const Shape& shape : set.shapes.shapes())
      CHECK(desugar(shape.constraint) == shape.constraint);
  }
}

TEST_CASE("free shape references") {
  SymbolTable t;
  ShapeId s1 = t.shape("A");
  ShapeId s2 = t.shape("B");
  PathExpr p = PathExpr::prop(t.property("p"));
  Constraint c = Constraint::conj(
      Constraint::neg(Constraint::shape_ref(s1)),
      Constraint::at_least(2, p, Constraint::shape_ref(s2)));
  CHECK(free_shape_refs(c) == std::set<ShapeId>{s1, s2});
  CHECK(free_shape_refs(Constraint::top()).empty());
}

TEST_CASE("target queries") {
  SymbolTable t;
  NodeId a = t.node("a");
  NodeId b = t.node("b");
  PropertyId p = t.property("p");

  TargetQuery dup = TargetQuery::nodes({b, a, b});
  CHECK(dup.node_list() == std::vector<NodeId>{a, b});
  CHECK_THROWS_AS(TargetQuery::nodes({}), Error);

  TargetQuery cls = TargetQuery::cls(a, t);
  CHECK(cls.class_node() == a);
  CHECK(t.is_class(a));

  CHECK(TargetQuery::subjects_of(p).property() == p);
  CHECK_THROWS_AS(TargetQuery::subjects_of(SymbolTable::type_property()), Error);
  CHECK_THROWS_AS(TargetQuery::objects_of(SymbolTable::type_property()), Error);

  CHECK(TargetQuery::none() == TargetQuery{});
}

TEST_CASE("shape sets are canonically ordered and closed") {
  SymbolTable t;
  ShapeId a = t.shape("A");
  ShapeId b = t.shape("B");
  Shape sb{b, Constraint::top(), TargetQuery::none()};
  Shape sa{a, Constraint::shape_ref(b), TargetQuery::none()};

  ShapeSet set = ShapeSet::make({sb, sa}, t);
  CHECK(set.size() == 2);
  CHECK(set.shapes()[0].name == a);
  CHECK(set.shapes()[1].name == b);
  CHECK(set.names() == std::vector<ShapeId>{a, b});
  CHECK(set.contains(a));
  CHECK(set.at(b).constraint == Constraint::top());

  CHECK_THROWS_AS(ShapeSet::make({sb, sb}, t), Error);

  ShapeId ghost = t.shape("Ghost");
  Shape dangling{a, Constraint::shape_ref(ghost), TargetQuery::none()};
  CHECK_THROWS_AS(ShapeSet::make({dangling}, t), Error);
}

TEST_CASE("graphs union endpoints, sort, and mark classes") {
  SymbolTable t;
  NodeId a = t.node("a");
  NodeId b = t.node("b");
  NodeId c = t.node("C");
  NodeId iso = t.node("iso");
  PropertyId p = t.property("p");
  PropertyId type = SymbolTable::type_property();

  RdfGraph g = RdfGraph::make({iso}, {{a, p, b}, {a, p, b}, {a, type, c}}, t);
  CHECK(g.nodes() == std::vector<NodeId>{a, b, c, iso});
  CHECK(g.triples().size() == 2);
  CHECK(std::is_sorted(g.triples().begin(), g.triples().end()));
  CHECK(g.has_node(iso));
  CHECK_FALSE(g.has_node(t.node("other")));
  CHECK(g.node_index(b) == 1);
  CHECK(t.is_class(c));
  CHECK_FALSE(t.is_class(b));

  CHECK(RdfGraph{}.empty());
}

TEST_CASE("assignments are canonical bit matrices") {
  SymbolTable t;
  NodeId a = t.node("a");
  NodeId b = t.node("b");
  ShapeId s0 = t.shape("S0");
  ShapeId s1 = t.shape("S1");
  RdfGraph g = RdfGraph::make({a, b}, {}, t);

  Assignment sigma(g, {s0, s1});
  CHECK(sigma.bit_count() == 4);
  CHECK_FALSE(sigma.contains(a, s0));
  sigma.set(a, s1, true);
  sigma.set(b, s0, true);
  CHECK(sigma.contains(a, s1));
  CHECK(sigma.shapes_at(a) == std::vector<ShapeId>{s1});
  CHECK(sigma.shapes_at(b) == std::vector<ShapeId>{s0});
  sigma.set(a, s1, false);
  CHECK(sigma.shapes_at(a).empty());

  // Bit layout: node-major, shape-minor.
  Assignment from_bits = Assignment::from_index(g, {s0, s1}, 0b0110);
  CHECK(from_bits.contains(a, s1));
  CHECK(from_bits.contains(b, s0));
  CHECK_FALSE(from_bits.contains(a, s0));
  CHECK_FALSE(from_bits.contains(b, s1));

  sigma.load_pattern(0b0110);
  CHECK(sigma == from_bits);

  NodeId stranger = t.node("stranger");
  ShapeId ghost = t.shape("Ghost");
  CHECK_THROWS_AS(sigma.set(stranger, s0, true), Error);
  CHECK_THROWS_AS((void)sigma.contains(a, ghost), Error);
}
