#pragma once

#include <cstdint>
#include <optional>

#include "shaclcheck/dl.hpp"

namespace shaclcheck {

struct SearchStats {
  uint64_t decisions = 0;
  uint64_t conflicts = 0;
};

// Exhaustive finite-model search over universes of size 1..max_universe, in
// a fixed canonical order: size ascending; injective object-to-element maps
// lexicographically; then concept bits (element-major) and role bits
// (source-element-major), false before true. Returns the first
// interpretation satisfying every axiom of K with goal non-empty, else
// nullopt.
//
// Object names are mapped injectively (distinct names denote distinct
// elements), matching the graph reading of nominals; absence therefore
// means no such model exists within the bound. Pruning uses three-valued
// axiom evaluation, failed-literal probing, and two symmetry reductions
// (the goal witness sits at element 0; unnamed elements carry non-increasing
// concept words), none of which lose models modulo element renaming.
//
// Every returned interpretation is re-verified with check_model before it
// leaves this function; a verification failure raises Error.
std::optional<Interpretation> bounded_model_search(const KnowledgeBase& K,
                                                   const Concept& goal,
                                                   uint32_t max_universe,
                                                   SearchStats* stats = nullptr);

}  // namespace shaclcheck
