#pragma once

// Shared builders for the painting/painter/cubist running example, the
// missing-target-node example, the non-finitely-satisfiable knowledge base,
// and the five-element paper model. Everything is built programmatically so
// parser tests can cross-check file-based construction against these.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "shaclcheck/dl.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/graph.hpp"
#include "shaclcheck/shapes.hpp"
#include "shaclcheck/symbols.hpp"

namespace shaclcheck::testing {

struct PaintingFixture {
  SymbolTable table;
  ShapeId painting_shape, painter_shape, cubist_shape;
  NodeId painting_class, cubism;
  PropertyId exhibited_at, creator, birthdate, style;
  ShapeSet shapes;

  PaintingFixture()
      : painting_shape(table.shape("PaintingShape")),
        painter_shape(table.shape("PainterShape")),
        cubist_shape(table.shape("CubistShape")),
        painting_class(table.node("Painting")),
        cubism(table.node("cubism")),
        exhibited_at(table.property("exhibitedAt")),
        creator(table.property("creator")),
        birthdate(table.property("birthdate")),
        style(table.property("style")),
        shapes(make_shapes()) {}

  // Conforming data graph: one painting, its painter, museum, style node.
  RdfGraph fig1b_graph() {
    NodeId guernica = table.node("guernica");
    NodeId picasso = table.node("picasso");
    NodeId mncars = table.node("mncars");
    NodeId museum = table.node("Museum");
    NodeId date = table.node("\"25.10.1881\"");
    PropertyId type = SymbolTable::type_property();
    return RdfGraph::make({}, {{guernica, type, painting_class},
                               {guernica, creator, picasso},
                               {guernica, exhibited_at, mncars},
                               {guernica, style, cubism},
                               {picasso, birthdate, date},
                               {mncars, type, museum}},
                          table);
  }

 private:
  ShapeSet make_shapes() {
    Shape painting{
        painting_shape,
        Constraint::conj(Constraint::at_least(1, PathExpr::prop(exhibited_at),
                                              Constraint::top()),
                         Constraint::forall(PathExpr::prop(creator),
                                            Constraint::shape_ref(painter_shape))),
        TargetQuery::cls(painting_class, table)};
    Shape painter{
        painter_shape,
        Constraint::conj(Constraint::exactly(1, PathExpr::prop(birthdate),
                                             Constraint::top()),
                         Constraint::forall(PathExpr::inverse(PathExpr::prop(creator)),
                                            Constraint::shape_ref(painting_shape))),
        TargetQuery::none()};
    Shape cubist{cubist_shape,
                 Constraint::at_least(
                     1,
                     PathExpr::seq(PathExpr::inverse(PathExpr::prop(creator)),
                                   PathExpr::prop(style)),
                     Constraint::node_const(cubism)),
                 TargetQuery::none()};
    return ShapeSet::make({painting, painter, cubist}, table);
  }
};

// Single shape whose enumerated target node is absent from the data graph.
struct ErratumFixture {
  SymbolTable table;
  ShapeId my_shape;
  NodeId alice, charlie;
  PropertyId knows;
  ShapeSet shapes;
  RdfGraph g1;

  ErratumFixture()
      : my_shape(table.shape("MyShape")),
        alice(table.node("alice")),
        charlie(table.node("charlie")),
        knows(table.property("knows")),
        shapes(ShapeSet::make(
            {Shape{my_shape,
                   Constraint::at_least(1, PathExpr::prop(knows),
                                        Constraint::node_const(charlie)),
                   TargetQuery::nodes({alice})}},
            table)),
        g1(RdfGraph::make({}, {{table.node("bob"), knows, charlie}}, table)) {}
};

// Painting == exists influences.Painting and at-most-1 incoming influences;
// NovelPainting additionally forbids incoming influences. NovelPainting is
// satisfiable (an infinite descending chain) but has no finite model.
struct InfiniteFixture {
  DlSignature signature;
  ConceptId painting, novel_painting;
  RoleId influences;
  KnowledgeBase kb;

  InfiniteFixture()
      : painting(signature.intern_concept("Painting")),
        novel_painting(signature.intern_concept("NovelPainting")),
        influences(signature.intern_role("influences")),
        kb(make_kb()) {}

 private:
  KnowledgeBase make_kb() {
    Role inv = Role::inverse(Role::atomic(influences));
    Concept painting_c = Concept::atomic(painting);
    Concept novel_c = Concept::atomic(novel_painting);
    Concept painting_def = Concept::conj(
        Concept::exists(Role::atomic(influences), painting_c),
        Concept::at_most(1, inv, Concept::top()));
    Concept novel_def =
        Concept::conj(painting_c, Concept::at_most(0, inv, Concept::top()));
    std::vector<Axiom> axioms;
    auto [p1, p2] = Axiom::equivalence(painting_c, painting_def);
    axioms.push_back(p1);
    axioms.push_back(p2);
    auto [n1, n2] = Axiom::equivalence(novel_c, novel_def);
    axioms.push_back(n1);
    axioms.push_back(n2);
    return KnowledgeBase::make(signature, std::move(axioms));
  }
};

// The paper's five-element model of the painting translation: a style
// element s1 (named by cubism), a painter p1 with a created work c1, and a
// separate painter p2 with a birthdate b. Element order: s1, p1, c1, b, p2.
inline Interpretation paper_model_i1(const DlSignature& sig) {
  // Indices follow the translation's interning order.
  auto cid = [&](const char* n) { return sig.find_concept(n).value().value; };
  auto rid = [&](const char* n) { return sig.find_role(n).value().value; };
  std::vector<std::vector<Interpretation::Element>> concepts(
      sig.concept_count());
  concepts[cid("PainterShape")] = {4};
  concepts[cid("CubistShape")] = {2};
  std::vector<std::vector<Interpretation::ElementPair>> roles(sig.role_count());
  roles[rid("creator")] = {{1, 2}};
  roles[rid("style")] = {{1, 0}};
  roles[rid("birthdate")] = {{4, 3}};
  std::vector<Interpretation::Element> objects(sig.object_count(), 0);
  return Interpretation::make(sig, 5, std::move(objects), std::move(concepts),
                              std::move(roles));
}

inline std::string test_data_path(const char* file) {
  return std::string(SHACLCHECK_TEST_DATA_DIR) + "/" + file;
}

inline std::string golden_path(const char* file) {
  return std::string(SHACLCHECK_GOLDEN_DIR) + "/" + file;
}

inline std::string read_test_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open test file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace shaclcheck::testing
