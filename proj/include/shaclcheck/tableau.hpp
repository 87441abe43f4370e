#pragma once

#include <cstdint>
#include <optional>

#include "shaclcheck/dl.hpp"

namespace shaclcheck {

struct TableauStats {
  uint64_t rule_applications = 0;
  uint64_t branch_count = 0;
};

struct TableauOptions {
  // Hard ceiling on rule applications across all branches; exhaustion raises
  // Error rather than returning a guess.
  uint64_t rule_budget = 1'000'000;
};

struct SatResult {
  bool satisfiable = false;
  // A verified finite model, present iff satisfiable.
  std::optional<Interpretation> model;
  // Element of `model` at which the goal concept holds.
  Interpretation::Element witness = 0;
  TableauStats stats;
};

// Decides satisfiability of `goal` with respect to K, for inputs in the
// inverse- and composition-free fragment: dl_fragment(K) must be alcoq, the
// goal must use atomic roles only, and K must carry no role assertions;
// anything else raises Error. Distinct object names denote distinct
// elements, matching the graph reading of nominals.
//
// Satisfiable answers come with a model that has been re-checked against
// every axiom and the goal; unsatisfiable answers are final for this
// fragment (the calculus is complete on it).
SatResult tableau_sat(const KnowledgeBase& K, const Concept& goal,
                      const TableauOptions& options = {});

}  // namespace shaclcheck
