#include "shaclcheck/fragments.hpp"

namespace shaclcheck {

const char* to_string(FragmentKind k) {
  switch (k) {
    case FragmentKind::l_no_inv:
      return "inverse-free";
    case FragmentKind::l_restr:
      return "restricted";
    case FragmentKind::l_full:
      return "full";
  }
  return "unknown";
}

namespace {

struct Scan {
  // First construct that breaks l_no_inv / l_restr, in canonical order.
  std::optional<FragmentWitness> no_inv_breaker;
  std::optional<FragmentWitness> restr_breaker;

  void break_no_inv(ShapeId shape, const std::string& path,
                    const std::string& construct) {
    if (!no_inv_breaker) no_inv_breaker = FragmentWitness{shape, path, construct};
  }
  void break_restr(ShapeId shape, const std::string& path,
                   const std::string& construct) {
    if (!restr_breaker) restr_breaker = FragmentWitness{shape, path, construct};
  }
};

void scan_path(ShapeId shape, const PathExpr& p, const std::string& at,
               Scan& scan) {
  switch (p.kind()) {
    case PathExpr::Kind::prop:
      return;
    case PathExpr::Kind::inverse:
      scan.break_no_inv(shape, at + "/inv", "inverse path");
      scan_path(shape, p.inner(), at + "/inv", scan);
      return;
    case PathExpr::Kind::seq:
      scan.break_no_inv(shape, at + "/seq", "path sequence");
      scan_path(shape, p.left(), at + "/seq.left", scan);
      scan_path(shape, p.right(), at + "/seq.right", scan);
      return;
  }
}

void scan_constraint(ShapeId shape, const Constraint& c, const std::string& at,
                     Scan& scan) {
  switch (c.kind()) {
    case Constraint::Kind::top:
    case Constraint::Kind::shape_ref:
    case Constraint::Kind::node_const:
      return;
    case Constraint::Kind::conj:
      scan_constraint(shape, c.left(), at + "/and.left", scan);
      scan_constraint(shape, c.right(), at + "/and.right", scan);
      return;
    case Constraint::Kind::neg:
      scan_constraint(shape, c.inner(), at + "/not", scan);
      return;
    case Constraint::Kind::at_least: {
      if (c.count() >= 2 && c.path().kind() != PathExpr::Kind::prop)
        scan.break_restr(shape, at + "/atLeast.path",
                         "counting over a non-atomic path");
      scan_path(shape, c.path(), at + "/atLeast.path", scan);
      scan_constraint(shape, c.inner(), at + "/atLeast.inner", scan);
      return;
    }
  }
}

}  // namespace

Fragment classify(const ShapeSet& s) {
  Scan scan;
  for (const Shape& shape : s.shapes()) {
    if (shape.target.kind() == TargetQuery::Kind::objects_of)
      scan.break_no_inv(shape.name, "target",
                        "objectsOf target (translates to an inverse)");
    scan_constraint(shape.name, shape.constraint, "constraint", scan);
  }
  if (scan.restr_breaker)
    return Fragment{FragmentKind::l_full, scan.restr_breaker};
  if (scan.no_inv_breaker)
    return Fragment{FragmentKind::l_restr, scan.no_inv_breaker};
  return Fragment{FragmentKind::l_no_inv, std::nullopt};
}

}  // namespace shaclcheck
