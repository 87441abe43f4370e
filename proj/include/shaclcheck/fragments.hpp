#pragma once

#include <optional>
#include <string>

#include "shaclcheck/shapes.hpp"

namespace shaclcheck {

// Language fragments, nested as predicate sets: l_no_inv < l_restr < l_full.
//
// l_no_inv: every counting path is a bare property, no inverse or sequence
// appears anywhere, and no target is objectsOf.
// l_restr: counting with n >= 2 only over bare properties; inverses and
// sequences occur only under a bound of 1 (which covers desugared exists and
// forall).
// l_full: everything else, i.e. counting with n >= 2 over a non-atomic path.
enum class FragmentKind { l_no_inv, l_restr, l_full };

const char* to_string(FragmentKind k);

// Why the next tighter fragment was missed: the first offending construct in
// canonical shape order, with a slash-joined AST path into that shape.
struct FragmentWitness {
  ShapeId shape;
  std::string ast_path;
  std::string construct;
};

struct Fragment {
  FragmentKind kind;
  std::optional<FragmentWitness> witness;
};

// Returns the tightest fragment containing every shape of the set.
Fragment classify(const ShapeSet& s);

}  // namespace shaclcheck
