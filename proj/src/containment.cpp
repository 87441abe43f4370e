#include "shaclcheck/containment.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "shaclcheck/dl_norm.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/eval.hpp"
#include "shaclcheck/model_search.hpp"
#include "shaclcheck/translation.hpp"

namespace shaclcheck {
namespace {

bool roles_atomic(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::top:
    case Concept::Kind::atomic:
    case Concept::Kind::nominal:
      return true;
    case Concept::Kind::neg:
      return roles_atomic(c.inner());
    case Concept::Kind::conj:
      return roles_atomic(c.left()) && roles_atomic(c.right());
    case Concept::Kind::at_least:
      return c.role().kind() == Role::Kind::atomic && roles_atomic(c.inner());
  }
  return false;
}

const Shape& shape_by_id(const ShapeSet& s, ShapeId id) {
  for (const Shape& sh : s.shapes())
    if (sh.name == id) return sh;
  throw Error("shape id is not part of the shape set");
}

}  // namespace

SubsumptionAnswer subsumes(const KnowledgeBase& K, const Concept& c,
                           const Concept& d, const SubsumptionOptions& opt) {
  Concept goal = Concept::conj(c, Concept::neg(d));
  SubsumptionAnswer out;
  if (dl_fragment(K) == DlFragment::alcoq && roles_atomic(c) &&
      roles_atomic(d)) {
    SatResult res = tableau_sat(K, goal, opt.tableau);
    out.stats = res.stats;
    if (res.satisfiable) {
      out.status = SubsumptionStatus::not_subsumed;
      out.counter_model = std::move(res.model);
      out.witness = res.witness;
    } else {
      out.status = SubsumptionStatus::subsumed;
    }
    return out;
  }
  std::optional<Interpretation> found =
      bounded_model_search(K, goal, opt.refutation_bound);
  if (found) {
    out.status = SubsumptionStatus::not_subsumed;
    out.counter_model = std::move(found);
    out.witness = 0;
  }
  return out;
}

Counterexample extract_counterexample(const Interpretation& I,
                                      Interpretation::Element witness,
                                      const ShapeSet& s, ShapeId sub,
                                      ShapeId super, SymbolTable& table) {
  GraphAssignment ga = graph_assignment_from_model(I, s, table);
  if (witness >= ga.element_nodes.size())
    throw Error("counterexample witness lies outside the model universe");
  NodeId node = ga.element_nodes[witness];
  bool good = is_faithful(ga.graph, ga.assignment, s) &&
              ga.assignment.contains(node, sub) &&
              !ga.assignment.contains(node, super);
  if (!good)
    throw Error(
        "counterexample failed its faithfulness or witness check; this is a "
        "reasoner bug");
  return Counterexample{std::move(ga.graph), std::move(ga.assignment), node};
}

ContainmentVerdict decide_containment(const ShapeSet& s, ShapeId sub,
                                      ShapeId super, SymbolTable& table,
                                      const ContainmentOptions& opt) {
  shape_by_id(s, sub);
  const Shape& super_shape = shape_by_id(s, super);

  ContainmentVerdict verdict;
  verdict.fragment = classify(s).kind;

  // A shape is contained in itself, and in any shape whose constraint every
  // node satisfies, independent of fragment and bound.
  if (sub == super || super_shape.constraint == Constraint::top()) {
    verdict.status = ContainmentStatus::contained;
    verdict.guarantee = ContainmentGuarantee::complete;
    return verdict;
  }

  Translation tr = tau_shapes(s, table);

  // Constraints with one normal form denote one satisfaction set at every
  // node of every graph, so containment follows without search; likewise a
  // super-constraint normalizing to Top holds everywhere.
  {
    const Shape& sub_shape = shape_by_id(s, sub);
    NormPool pool;
    NormId sub_norm = pool.from_concept(tau_constr(sub_shape.constraint, tr.bridge));
    NormId super_norm =
        pool.from_concept(tau_constr(super_shape.constraint, tr.bridge));
    if (sub_norm == super_norm || super_norm == pool.top()) {
      verdict.status = ContainmentStatus::contained;
      verdict.guarantee = ContainmentGuarantee::complete;
      return verdict;
    }
  }

  Concept c_sub = Concept::atomic(tr.bridge.shape_concept(sub));
  Concept c_super = Concept::atomic(tr.bridge.shape_concept(super));
  Concept goal = Concept::conj(c_sub, Concept::neg(c_super));

  if (verdict.fragment == FragmentKind::l_no_inv) {
    SatResult res = tableau_sat(tr.kb, goal, opt.tableau);
    if (!res.satisfiable) {
      verdict.status = ContainmentStatus::contained;
      verdict.guarantee = ContainmentGuarantee::complete;
      return verdict;
    }
    verdict.status = ContainmentStatus::not_contained;
    verdict.counterexample =
        extract_counterexample(*res.model, res.witness, s, sub, super, table);
    return verdict;
  }

  std::optional<Interpretation> found =
      bounded_model_search(tr.kb, goal, opt.refutation_bound);
  if (found) {
    verdict.status = ContainmentStatus::not_contained;
    verdict.counterexample =
        extract_counterexample(*found, 0, s, sub, super, table);
    return verdict;
  }
  if (opt.assume_entailed) {
    verdict.status = ContainmentStatus::contained;
    verdict.guarantee = ContainmentGuarantee::sound_only;
    verdict.bound = opt.refutation_bound;
    return verdict;
  }
  verdict.status = ContainmentStatus::unknown;
  verdict.bound = opt.refutation_bound;
  return verdict;
}

}  // namespace shaclcheck
