#pragma once

#include <cstdint>
#include <optional>

#include "shaclcheck/dl.hpp"
#include "shaclcheck/fragments.hpp"
#include "shaclcheck/graph.hpp"
#include "shaclcheck/shapes.hpp"
#include "shaclcheck/symbols.hpp"
#include "shaclcheck/tableau.hpp"

namespace shaclcheck {

enum class SubsumptionStatus { subsumed, not_subsumed, unknown };

struct SubsumptionOptions {
  // Largest universe tried when only refutation is available.
  uint32_t refutation_bound = 4;
  TableauOptions tableau;
};

struct SubsumptionAnswer {
  SubsumptionStatus status = SubsumptionStatus::unknown;
  // Finite model of K with an element in C but not D; present iff
  // not_subsumed.
  std::optional<Interpretation> counter_model;
  Interpretation::Element witness = 0;
  TableauStats stats;
};

// Decides K entails-finitely C subsumed-by D. Inverse- and composition-free
// inputs go through the tableau and always get a definite answer; everything
// else is searched for finite counter-models up to the refutation bound, so
// the answer is either not_subsumed (verified) or unknown.
SubsumptionAnswer subsumes(const KnowledgeBase& K, const Concept& c,
                           const Concept& d, const SubsumptionOptions& opt = {});

enum class ContainmentStatus { contained, not_contained, unknown };

// complete: both directions proved. sound_only: asserted under
// --assume-entailed after refutation found nothing.
enum class ContainmentGuarantee { complete, sound_only };

// A concrete refutation of shape containment: a data graph, a faithful
// assignment over it, and a node carrying the sub-shape but not the
// super-shape.
struct Counterexample {
  RdfGraph graph;
  Assignment assignment;
  NodeId witness;
};

struct ContainmentOptions {
  uint32_t refutation_bound = 4;
  // Treat an exhausted refutation search as containment (sound for
  // refutation, unsound as a proof; recorded in the guarantee).
  bool assume_entailed = false;
  TableauOptions tableau;
};

struct ContainmentVerdict {
  ContainmentStatus status = ContainmentStatus::unknown;
  ContainmentGuarantee guarantee = ContainmentGuarantee::complete;
  std::optional<Counterexample> counterexample;
  FragmentKind fragment = FragmentKind::l_full;
  // Bound the refutation search exhausted; 0 when the decision was complete.
  uint32_t bound = 0;
};

// Lifts a DL counter-model to a graph counterexample: builds the
// corresponding (graph, assignment) pair and checks it end to end
// (faithfulness, witness carries s, witness lacks s_prime); a lift that
// fails its check raises Error instead of being returned.
Counterexample extract_counterexample(const Interpretation& I,
                                      Interpretation::Element witness,
                                      const ShapeSet& s, ShapeId sub,
                                      ShapeId super, SymbolTable& table);

// Decides whether every node satisfying `sub` also satisfies `super` in
// every graph/faithful-assignment pair over the shape set. Inverse-free
// shape sets are decided completely via the tableau; the restricted and
// full fragments get verified counterexamples or an honest unknown at the
// bound. Interns fresh names into the table when building counterexamples.
ContainmentVerdict decide_containment(const ShapeSet& s, ShapeId sub,
                                      ShapeId super, SymbolTable& table,
                                      const ContainmentOptions& opt = {});

}  // namespace shaclcheck
