#pragma once

#include <string_view>
#include <vector>

#include "shaclcheck/dl.hpp"
#include "shaclcheck/graph.hpp"
#include "shaclcheck/shapes.hpp"
#include "shaclcheck/symbols.hpp"

namespace shaclcheck {

// Half-open source region of one shape form, 1-based lines and columns.
struct SourceSpan {
  int begin_line = 1;
  int begin_col = 1;
  int end_line = 1;
  int end_col = 1;
};

// A parsed shape document: the shape set plus one span per shape, parallel
// to the set's canonical order.
struct ShapeDocument {
  ShapeSet shapes;
  std::vector<SourceSpan> spans;
};

// Parses a sequence of s-expression shape forms:
//   (shape NAME (target TARGET) (constraint EXPR))
//   TARGET := none | (nodes v ...) | (class v) | (subjects-of p)
//           | (objects-of p)
//   EXPR   := top | (node v) | (ref NAME) | (and E E ...) | (or E E ...)
//           | (not E) | (>= n PATH E) | (<= n PATH E) | (= n PATH E)
//           | (exists PATH E) | (forall PATH E)
//   PATH   := p | (inv PATH) | (seq PATH PATH ...)
// Derived operators desugar at construction. Duplicate shape names and
// unresolved shape references are reported with their source location.
ShapeDocument parse_shapes(std::string_view text, SymbolTable& table);

// Parses a single constraint EXPR (same grammar as above).
Constraint parse_constraint(std::string_view text, SymbolTable& table);

// Parses the N-Triples subset: one `<subj> <pred> <obj> .` per line, `a` as
// alias for the type property, literal objects as quoted strings (the quotes
// stay part of the node name), `#` comments and blank lines skipped.
RdfGraph parse_ntriples(std::string_view text, SymbolTable& table);

// Parses the native knowledge-base format produced by serialize_kb:
// `concepts:` / `roles:` / `objects:` signature lines followed by `axioms:`
// and one axiom per line. Names are interned in their listed order, so a
// serialize/parse round trip preserves every id.
KnowledgeBase parse_kb(std::string_view text);

}  // namespace shaclcheck
