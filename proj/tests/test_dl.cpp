#include <doctest.h>

#include <algorithm>
#include <functional>
#include <vector>

#include "fixtures.hpp"
#include "shaclcheck/dl.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/translation.hpp"

using namespace shaclcheck;
using shaclcheck::testing::InfiniteFixture;
using shaclcheck::testing::PaintingFixture;
using shaclcheck::testing::paper_model_i1;

namespace {

// Signature with one concept A, roles r and s, objects a and b.
struct SmallSig {
  DlSignature sig;
  ConceptId a_concept;
  RoleId r, s;
  ObjectId a, b;
  SmallSig()
      : a_concept(sig.intern_concept("A")),
        r(sig.intern_role("r")),
        s(sig.intern_role("s")),
        a(sig.intern_object("a")),
        b(sig.intern_object("b")) {}
};

}  // namespace

TEST_CASE("signature interning and coverage") {
  SmallSig x;
  CHECK(x.sig.concept_name(x.a_concept) == "A");
  CHECK(x.sig.find_role("s") == x.s);
  CHECK_FALSE(x.sig.find_object("zzz").has_value());
  CHECK(x.sig.intern_concept("A") == x.a_concept);

  DlSignature wider = x.sig;
  wider.intern_concept("B");
  CHECK(wider.extends(x.sig));
  CHECK_FALSE(x.sig.extends(wider));

  DlSignature shuffled;
  shuffled.intern_concept("B");
  shuffled.intern_concept("A");
  CHECK_FALSE(shuffled.extends(x.sig));
}

TEST_CASE("concept sugar desugars to the core") {
  SmallSig x;
  Role r = Role::atomic(x.r);
  Concept a = Concept::atomic(x.a_concept);
  Concept nom = Concept::nominal({x.a});

  CHECK(Concept::bottom() == Concept::neg(Concept::top()));
  CHECK(Concept::exists(r, a) == Concept::at_least(1, r, a));
  CHECK(Concept::forall(r, a) ==
        Concept::neg(Concept::at_least(1, r, Concept::neg(a))));
  CHECK(Concept::at_most(2, r, a) ==
        Concept::neg(Concept::at_least(3, r, a)));
  CHECK(Concept::disj(a, nom) ==
        Concept::neg(Concept::conj(Concept::neg(a), Concept::neg(nom))));
  // Double negations are elided while desugaring disjunction.
  CHECK(Concept::disj(Concept::neg(a), nom) ==
        Concept::neg(Concept::conj(a, Concept::neg(nom))));
  CHECK(Concept::exactly(2, r, a) ==
        Concept::conj(Concept::at_least(2, r, a), Concept::at_most(2, r, a)));
  CHECK(Concept::exactly(0, r, a) == Concept::at_most(0, r, a));

  CHECK(Concept::nominal({x.b, x.a, x.b}).objects() ==
        std::vector<ObjectId>{x.a, x.b});
  CHECK_THROWS_AS(Concept::nominal({}), Error);
  CHECK_THROWS_AS(Concept::at_least(0, r, a), Error);
}

TEST_CASE("role and concept accessors") {
  SmallSig x;
  Role comp = Role::compose(Role::inverse(Role::atomic(x.r)), Role::atomic(x.s));
  CHECK(comp.kind() == Role::Kind::compose);
  CHECK(comp.left().kind() == Role::Kind::inverse);
  CHECK(comp.left().inner().role_name() == x.r);
  CHECK(comp.right().role_name() == x.s);
  CHECK(comp == Role::compose(Role::inverse(Role::atomic(x.r)),
                              Role::atomic(x.s)));

  Concept c = Concept::at_least(2, comp, Concept::top());
  CHECK(c.kind() == Concept::Kind::at_least);
  CHECK(c.count() == 2);
  CHECK(c.role() == comp);
  CHECK(c.inner() == Concept::top());
}

TEST_CASE("interpretation semantics on the five-element painting model") {
  PaintingFixture fx;
  Translation tau = tau_shapes(fx.shapes, fx.table);
  const DlSignature& sig = tau.kb.signature();
  Interpretation I = paper_model_i1(sig);

  RoleId creator = *sig.find_role("creator");
  RoleId style = *sig.find_role("style");
  Role cubist_role =
      Role::compose(Role::inverse(Role::atomic(creator)), Role::atomic(style));

  using Pair = Interpretation::ElementPair;
  CHECK(interpret_role(I, Role::atomic(creator)) == std::vector<Pair>{{1, 2}});
  CHECK(interpret_role(I, Role::inverse(Role::atomic(creator))) ==
        std::vector<Pair>{{2, 1}});
  CHECK(interpret_role(I, cubist_role) == std::vector<Pair>{{2, 0}});

  ObjectId cubism = *sig.find_object("cubism");
  CHECK(interpret_concept(I, Concept::nominal({cubism})) ==
        std::vector<uint32_t>{0});
  CHECK(interpret_concept(
            I, Concept::at_least(1, cubist_role, Concept::nominal({cubism}))) ==
        std::vector<uint32_t>{2});
  CHECK(interpret_concept(I, Concept::top()).size() == 5);
  CHECK(interpret_concept(I, Concept::bottom()).empty());

  ModelCheck ok = check_model(I, tau.kb);
  CHECK(ok.satisfied);
  CHECK_FALSE(ok.failing_axiom.has_value());
}

TEST_CASE("model checking pinpoints the first failing axiom") {
  PaintingFixture fx;
  Translation tau = tau_shapes(fx.shapes, fx.table);
  const DlSignature& sig = tau.kb.signature();

  // Rebuild the five-element model but strip PainterShape from element 4:
  // the PainterShape equivalence (axioms 4 and 5 in emission order) breaks.
  std::vector<std::vector<uint32_t>> concepts(sig.concept_count());
  concepts[sig.find_concept("CubistShape")->value] = {2};
  std::vector<std::vector<Interpretation::ElementPair>> roles(sig.role_count());
  roles[sig.find_role("creator")->value] = {{1, 2}};
  roles[sig.find_role("style")->value] = {{1, 0}};
  roles[sig.find_role("birthdate")->value] = {{4, 3}};
  Interpretation broken = Interpretation::make(
      sig, 5, std::vector<uint32_t>(sig.object_count(), 0), std::move(concepts),
      std::move(roles));

  ModelCheck check = check_model(broken, tau.kb);
  CHECK_FALSE(check.satisfied);
  REQUIRE(check.failing_axiom.has_value());
  const Axiom& failing = tau.kb.axioms()[*check.failing_axiom];
  ConceptId painter = *sig.find_concept("PainterShape");
  bool mentions_painter = (failing.kind() == Axiom::Kind::subsumption) &&
                          (failing.lhs() == Concept::atomic(painter) ||
                           failing.rhs() == Concept::atomic(painter));
  CHECK(mentions_painter);
}

TEST_CASE("assertions are checked against the interpretation") {
  SmallSig x;
  std::vector<Axiom> axioms;
  axioms.push_back(Axiom::concept_assertion(x.a, Concept::atomic(x.a_concept)));
  axioms.push_back(Axiom::role_assertion(x.a, x.b, Role::atomic(x.r)));
  KnowledgeBase kb = KnowledgeBase::make(x.sig, axioms);

  CHECK(axioms[0].object() == x.a);
  CHECK(axioms[0].asserted() == Concept::atomic(x.a_concept));
  CHECK(axioms[1].subject() == x.a);
  CHECK(axioms[1].object() == x.b);

  Interpretation good = Interpretation::make(
      x.sig, 2, {0, 1}, {{0}}, {{{0, 1}}, {}});
  CHECK(check_model(good, kb).satisfied);

  Interpretation missing_edge =
      Interpretation::make(x.sig, 2, {0, 1}, {{0}}, {{}, {}});
  ModelCheck failed = check_model(missing_edge, kb);
  CHECK_FALSE(failed.satisfied);
  CHECK(failed.failing_axiom == size_t{1});
}

TEST_CASE("negation normal form preserves semantics and eliminates stacks") {
  PaintingFixture fx;
  Translation tau = tau_shapes(fx.shapes, fx.table);
  Interpretation I = paper_model_i1(tau.kb.signature());

  std::function<bool(const Concept&)> clean = [&](const Concept& c) -> bool {
    switch (c.kind()) {
      case Concept::Kind::neg:
        if (c.inner().kind() == Concept::Kind::neg) return false;
        return clean(c.inner());
      case Concept::Kind::conj:
        return clean(c.left()) && clean(c.right());
      case Concept::Kind::at_least:
        return clean(c.inner());
      default:
        return true;
    }
  };

  std::vector<Concept> samples;
  for (const Axiom& ax : tau.kb.axioms()) {
    samples.push_back(ax.lhs());
    samples.push_back(Concept::neg(ax.lhs()));
    samples.push_back(Concept::neg(Concept::neg(ax.rhs())));
    samples.push_back(Concept::conj(ax.lhs(), Concept::neg(ax.rhs())));
  }
  for (const Concept& c : samples) {
    Concept n = nnf(c);
    CHECK(clean(n));
    CHECK(interpret_concept(I, n) == interpret_concept(I, c));
  }
  CHECK(nnf(Concept::neg(Concept::neg(Concept::top()))) == Concept::top());
}

TEST_CASE("fragment classification of knowledge bases") {
  PaintingFixture fx;
  Translation tau = tau_shapes(fx.shapes, fx.table);
  // Compositions only under at-least-1, so expressible after expansion.
  CHECK(dl_fragment(tau.kb) == DlFragment::sroiq_expressible);

  SmallSig x;
  Role comp = Role::compose(Role::atomic(x.r), Role::atomic(x.s));
  Concept a = Concept::atomic(x.a_concept);

  KnowledgeBase plain = KnowledgeBase::make(
      x.sig, {Axiom::subsumption(Concept::exists(Role::atomic(x.r), a), a)});
  CHECK(dl_fragment(plain) == DlFragment::alcoq);

  KnowledgeBase counting_comp = KnowledgeBase::make(
      x.sig, {Axiom::subsumption(Concept::at_least(2, comp, a), a)});
  CHECK(dl_fragment(counting_comp) == DlFragment::alcoiq_composition);

  KnowledgeBase forall_comp = KnowledgeBase::make(
      x.sig, {Axiom::subsumption(Concept::forall(comp, a), a)});
  CHECK(dl_fragment(forall_comp) == DlFragment::sroiq_expressible);

  CHECK(std::string(to_string(DlFragment::alcoq)) == "ALCOQ");
}

TEST_CASE("the chain knowledge base accepts cycles but not sources") {
  InfiniteFixture fx;
  // A three-cycle of paintings: every element has one influence in and out.
  std::vector<std::vector<uint32_t>> concepts(fx.signature.concept_count());
  concepts[fx.painting.value] = {0, 1, 2};
  std::vector<std::vector<Interpretation::ElementPair>> roles(
      fx.signature.role_count());
  roles[fx.influences.value] = {{0, 1}, {1, 2}, {2, 0}};
  Interpretation cycle =
      Interpretation::make(fx.signature, 3, {}, std::move(concepts),
                           std::move(roles));
  CHECK(check_model(cycle, fx.kb).satisfied);

  // Declaring one of them novel contradicts its incoming edge.
  std::vector<std::vector<uint32_t>> concepts2(fx.signature.concept_count());
  concepts2[fx.painting.value] = {0, 1, 2};
  concepts2[fx.novel_painting.value] = {0};
  std::vector<std::vector<Interpretation::ElementPair>> roles2(
      fx.signature.role_count());
  roles2[fx.influences.value] = {{0, 1}, {1, 2}, {2, 0}};
  Interpretation bad =
      Interpretation::make(fx.signature, 3, {}, std::move(concepts2),
                           std::move(roles2));
  CHECK_FALSE(check_model(bad, fx.kb).satisfied);
}

TEST_CASE("interpretations validate ids against their signature") {
  SmallSig x;
  // Two object names may share an element: interpretations are not bound to
  // the unique-name reading the reasoners use.
  Interpretation I = Interpretation::make(x.sig, 1, {0, 0}, {{}}, {{}, {}});
  CHECK(I.object_element(x.a) == I.object_element(x.b));
  CHECK_THROWS_AS(interpret_concept(I, Concept::atomic(ConceptId{5})), Error);
  CHECK_THROWS_AS(interpret_role(I, Role::atomic(RoleId{7})), Error);
}
