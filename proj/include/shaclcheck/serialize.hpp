#pragma once

#include <string>
#include <string_view>

#include "shaclcheck/dl.hpp"
#include "shaclcheck/graph.hpp"
#include "shaclcheck/shapes.hpp"
#include "shaclcheck/symbols.hpp"

namespace shaclcheck {

enum class KbFormat { native, dl_exchange };

// native: signature headers (`concepts:` / `roles:` / `objects:` /
// `axioms:`) then one axiom per line in Unicode DL syntax; origin-paired
// inclusion pairs are re-fused into one equivalence line. The output parses
// back (parse_kb) to an equal knowledge base and re-serializes byte for
// byte.
// dl_exchange: OWL 2 functional-style syntax. Role compositions expand into
// nested restrictions, which is exact only for at-least-1, so counting over
// a composed role is refused with an "inexpressible without loss" error.
std::string serialize_kb(const KnowledgeBase& K, KbFormat format);

// One `(shape ...)` form per line in the grammar parse_shapes accepts;
// parsing the output yields a structurally equal shape set.
std::string serialize_shapes(const ShapeSet& s, const SymbolTable& table);

// One N-Triples term: literal names (carrying their quotes) verbatim,
// everything else angle-bracketed.
std::string ntriples_term(const std::string& name);

// Canonical N-Triples: one sorted triple per line, the type property
// rendered as `a`.
std::string serialize_ntriples(const RdfGraph& g, const SymbolTable& table);

// Evidence block: the graph in canonical N-Triples, a blank line, then one
// `ASSIGN <node> shape ...` line per graph node (nodes without shapes keep
// a bare ASSIGN line, so the node set is recoverable).
std::string write_counterexample(const RdfGraph& g, const Assignment& sigma,
                                 const SymbolTable& table);

struct ParsedCounterexample {
  RdfGraph graph;
  Assignment assignment;
};

// Inverse of write_counterexample over the given shape set's canonical
// shape list. Requires an ASSIGN line for every node of the graph.
ParsedCounterexample parse_counterexample(std::string_view text,
                                          const ShapeSet& s,
                                          SymbolTable& table);

}  // namespace shaclcheck
