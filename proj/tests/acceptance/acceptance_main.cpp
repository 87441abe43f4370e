// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its expectations from first principles
// (golden files, exhaustive oracles, self-verification hooks) rather than
// trusting the code under test.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shaclcheck/cli.hpp"
#include "shaclcheck/containment.hpp"
#include "shaclcheck/dl.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/eval.hpp"
#include "shaclcheck/graph.hpp"
#include "shaclcheck/model_search.hpp"
#include "shaclcheck/parser.hpp"
#include "shaclcheck/serialize.hpp"
#include "shaclcheck/shapes.hpp"
#include "shaclcheck/symbols.hpp"
#include "shaclcheck/tableau.hpp"
#include "shaclcheck/translation.hpp"

#include "../fixtures.hpp"
#include "../oracles.hpp"

namespace {

using namespace shaclcheck;
using namespace shaclcheck::testing;

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return CliRun{code, out.str(), err.str()};
}

// Accumulates failure descriptions; empty means the criterion passed.
struct Check {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  int number;
  std::string label;
  // 0 = no wall-clock requirement.
  int64_t limit_ms;
  std::function<void(Check&)> body;
};

// --------------------------------------------------------------------------
// Criterion 1: the translation of the running example reproduces the golden
// knowledge base byte for byte.
void criterion_translation(Check& c) {
  CliRun r = cli({"translate", test_data_path("s1.shapes")});
  c.require(r.exit_code == 0, "translate exited " + std::to_string(r.exit_code));
  std::string golden = read_test_file(golden_path("s1_native.kb"));
  c.require(r.out == golden, "translation differs from golden file");
}

// --------------------------------------------------------------------------
// Criterion 2: the running-example graph conforms, and validation prints the
// unique faithful assignment.
void criterion_validation(Check& c) {
  CliRun conf = cli({"conforms", test_data_path("s1.shapes"),
                     test_data_path("fig1b.nt")});
  c.require(conf.exit_code == 0, "conforms exited " + std::to_string(conf.exit_code));
  c.require(conf.out == "conforms\n", "unexpected conforms output: " + conf.out);

  CliRun val = cli({"validate", test_data_path("s1.shapes"),
                    test_data_path("fig1b.nt")});
  c.require(val.exit_code == 0, "validate exited " + std::to_string(val.exit_code));
  std::string expected =
      "ASSIGN <Painting>\n"
      "ASSIGN <cubism>\n"
      "ASSIGN <guernica> PaintingShape\n"
      "ASSIGN <picasso> PainterShape CubistShape\n"
      "ASSIGN <mncars>\n"
      "ASSIGN \"25.10.1881\"\n"
      "ASSIGN <Museum>\n";
  c.require(val.out == expected, "assignment block differs:\n" + val.out);

  // The printed assignment is the only faithful one: exhaustive enumeration
  // over all 2^21 patterns agrees.
  PaintingFixture fx;
  RdfGraph g = fx.fig1b_graph();
  FaithfulSearchOptions wide;
  wide.max_exhaustive_bits = 24;
  FaithfulSearch all = find_faithful(g, fx.shapes, 4, wide);
  c.require(all.strategy == SearchStrategy::exhaustive, "expected exhaustive search");
  c.require(all.assignments.size() == 1,
            "expected a unique assignment, found " +
                std::to_string(all.assignments.size()));
}

// --------------------------------------------------------------------------
// Criterion 3: target semantics. Under the corrected reading a target node
// absent from the graph defeats conformance; under the older reading the
// same input conforms.
void criterion_target_semantics(Check& c) {
  CliRun r = cli({"conforms", test_data_path("erratum.shapes"),
                  test_data_path("g1.nt")});
  c.require(r.exit_code == 1, "conforms exited " + std::to_string(r.exit_code));
  c.require(r.out.rfind("does not conform:", 0) == 0,
            "missing non-conformance line: " + r.out);
  c.require(r.out.find("alice") != std::string::npos,
            "reason does not name the missing target node: " + r.out);

  ErratumFixture fx;
  c.require(!conforms(fx.g1, fx.shapes), "corrected semantics accepted the graph");
  FaithfulSearchOptions legacy;
  legacy.semantics = TargetSemantics::pre_erratum;
  c.require(conforms(fx.g1, fx.shapes, legacy),
            "legacy semantics rejected the graph");
}

// --------------------------------------------------------------------------
// Criterion 4: the CubistShape-in-PainterShape refutation, with the printed
// counterexample re-verified end to end from its own text.
void criterion_refutation(Check& c) {
  CliRun r = cli({"contains", test_data_path("s1.shapes"), "CubistShape",
                  "PainterShape", "--bound", "5"});
  c.require(r.exit_code == 1, "contains exited " + std::to_string(r.exit_code));
  c.require(r.out.rfind("not contained (fragment: restricted)\n", 0) == 0,
            "unexpected verdict line: " + r.out);

  std::string marker = "counterexample witness ";
  size_t at = r.out.find(marker);
  c.require(at != std::string::npos, "no counterexample witness line");
  if (at == std::string::npos) return;
  size_t colon = r.out.find(":\n", at);
  c.require(colon != std::string::npos, "malformed witness line");
  if (colon == std::string::npos) return;
  std::string witness_term = r.out.substr(at + marker.size(), colon - at - marker.size());
  std::string block = r.out.substr(colon + 2);

  // Re-parse the evidence with a fresh symbol table and re-check it.
  SymbolTable table;
  ShapeDocument doc = parse_shapes(read_test_file(test_data_path("s1.shapes")), table);
  ParsedCounterexample ce = parse_counterexample(block, doc.shapes, table);
  c.require(is_faithful(ce.graph, ce.assignment, doc.shapes),
            "printed counterexample is not faithful");

  std::string witness_name = witness_term;
  if (witness_name.size() >= 2 && witness_name.front() == '<' &&
      witness_name.back() == '>')
    witness_name = witness_name.substr(1, witness_name.size() - 2);
  else if (witness_name.size() >= 2 && witness_name.front() == '"' &&
           witness_name.back() == '"')
    witness_name = witness_name.substr(1, witness_name.size() - 2);
  std::optional<NodeId> w = table.find_node(witness_name);
  c.require(w.has_value(), "witness node not in evidence: " + witness_term);
  if (!w) return;
  std::optional<ShapeId> cubist = table.find_shape("CubistShape");
  std::optional<ShapeId> painter = table.find_shape("PainterShape");
  c.require(cubist && painter, "shape names missing after parse");
  if (!cubist || !painter) return;
  c.require(ce.assignment.contains(*w, *cubist), "witness lacks CubistShape");
  c.require(!ce.assignment.contains(*w, *painter), "witness carries PainterShape");
}

// --------------------------------------------------------------------------
// Criterion 5: the concept with no finite models is reported absent at every
// universe size up to six.
void criterion_finite_model_absence(Check& c) {
  InfiniteFixture fx;
  SearchStats stats;
  std::optional<Interpretation> found = bounded_model_search(
      fx.kb, Concept::atomic(fx.novel_painting), 6, &stats);
  c.require(!found.has_value(), "found a spurious finite model");
  c.require(stats.decisions + stats.conflicts > 0, "search did no work");

  // Positive control: the satisfiable sibling concept has a tiny model.
  std::optional<Interpretation> painting =
      bounded_model_search(fx.kb, Concept::atomic(fx.painting), 2);
  c.require(painting.has_value(), "satisfiable control concept not found");
}

// --------------------------------------------------------------------------
// Criterion 6a: random conforming triples lift to verified models.
void criterion_round_trip_models(Check& c) {
  int built = 0;
  uint64_t seed = 0;
  while (built < 200 && seed < 4000) {
    ++seed;
    auto kase = generate_conforming_case(seed);
    if (!kase) continue;
    ++built;
    Interpretation I =
        model_from_assignment(kase->graph, kase->assignment, kase->shapes, kase->table);
    Translation tr = tau_shapes(kase->shapes, kase->table);
    ModelCheck mc = check_model(I, tr.kb);
    c.require(mc.satisfied,
              "lifted model fails axiom check at seed " + std::to_string(seed));
    if (!mc.satisfied) return;
  }
  c.require(built >= 200,
            "only generated " + std::to_string(built) + " conforming cases");
}

// --------------------------------------------------------------------------
// Criterion 6b: every model either reasoner produces lowers to a faithful
// graph/assignment pair.
void criterion_model_lowering(Check& c) {
  int lowered = 0;

  // Tableau models across generated inverse-free sets.
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratedSet gs = generate_inverse_free_set(seed);
    Translation tr = tau_shapes(gs.shapes, gs.table);
    for (ShapeId s : gs.shapes.names()) {
      SatResult res = tableau_sat(tr.kb, Concept::atomic(tr.bridge.shape_concept(s)));
      if (!res.satisfiable) continue;
      GraphAssignment ga = graph_assignment_from_model(*res.model, gs.shapes, gs.table);
      bool ok = is_faithful(ga.graph, ga.assignment, gs.shapes);
      c.require(ok, "tableau model at seed " + std::to_string(seed) +
                        " lowers to an unfaithful pair");
      if (!ok) return;
      ++lowered;
    }
  }

  // Bounded-search models over the running example.
  PaintingFixture fx;
  Translation tr = tau_shapes(fx.shapes, fx.table);
  ConceptId cubist = tr.bridge.shape_concept(fx.cubist_shape);
  ConceptId painter = tr.bridge.shape_concept(fx.painter_shape);
  std::vector<Concept> goals = {
      Concept::atomic(cubist),
      Concept::conj(Concept::atomic(cubist), Concept::neg(Concept::atomic(painter))),
  };
  for (const Concept& goal : goals) {
    std::optional<Interpretation> found = bounded_model_search(tr.kb, goal, 4);
    c.require(found.has_value(), "bounded search missed a satisfiable goal");
    if (!found) return;
    GraphAssignment ga = graph_assignment_from_model(*found, fx.shapes, fx.table);
    bool ok = is_faithful(ga.graph, ga.assignment, fx.shapes);
    c.require(ok, "bounded-search model lowers to an unfaithful pair");
    if (!ok) return;
    ++lowered;
  }

  c.require(lowered >= 40,
            "corpus produced only " + std::to_string(lowered) + " models");
}

// --------------------------------------------------------------------------
// Criterion 6c: path evaluation on the graph side and role interpretation on
// the model side agree through the naming bridge.
void criterion_path_role_agreement(Check& c) {
  int compared = 0;
  int built = 0;
  uint64_t seed = 0;
  while (built < 200 && seed < 4000) {
    ++seed;
    auto kase = generate_conforming_case(seed);
    if (!kase) continue;
    ++built;
    Interpretation I =
        model_from_assignment(kase->graph, kase->assignment, kase->shapes, kase->table);
    Translation tr = tau_shapes(kase->shapes, kase->table);

    // Only properties the translation forwarded have roles in the model.
    std::vector<PropertyId> avail;
    for (PropertyId p : kase->props)
      if (tr.kb.signature().find_role(kase->table.property_name(p))) avail.push_back(p);

    std::vector<PathExpr> paths;
    for (PropertyId p : avail) {
      paths.push_back(PathExpr::prop(p));
      paths.push_back(PathExpr::inverse(PathExpr::prop(p)));
      for (PropertyId q : avail) {
        paths.push_back(PathExpr::seq(PathExpr::prop(p), PathExpr::prop(q)));
        paths.push_back(
            PathExpr::seq(PathExpr::inverse(PathExpr::prop(p)), PathExpr::prop(q)));
      }
    }
    for (const PathExpr& path : paths) {
      std::vector<Interpretation::ElementPair> expected;
      for (const NodePair& pr : eval_path(kase->graph, path))
        expected.push_back(
            {static_cast<Interpretation::Element>(kase->graph.node_index(pr.first)),
             static_cast<Interpretation::Element>(kase->graph.node_index(pr.second))});
      std::sort(expected.begin(), expected.end());
      std::vector<Interpretation::ElementPair> got =
          interpret_role(I, tau_role(path, tr.bridge));
      std::sort(got.begin(), got.end());
      bool ok = expected == got;
      c.require(ok, "path/role disagreement at seed " + std::to_string(seed));
      if (!ok) return;
      ++compared;
    }
  }
  c.require(built >= 200,
            "only generated " + std::to_string(built) + " conforming cases");
  c.require(compared >= 400, "too few path comparisons: " + std::to_string(compared));
}

// --------------------------------------------------------------------------
// Criterion 7: on generated inverse-free sets the containment decision
// matches an exhaustive small-graph oracle on every ordered shape pair.
void criterion_oracle_agreement(Check& c) {
  int disagreements = 0;
  int pairs = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratedSet gs = generate_inverse_free_set(seed);
    std::vector<std::vector<bool>> witnessed =
        oracle_noncontainment_matrix(gs.shapes, gs.pool, {gs.prop}, gs.table);
    std::vector<ShapeId> names = gs.shapes.names();
    for (size_t i = 0; i < names.size(); ++i) {
      for (size_t j = 0; j < names.size(); ++j) {
        if (i == j) continue;
        ContainmentVerdict v =
            decide_containment(gs.shapes, names[i], names[j], gs.table);
        ++pairs;
        if (v.status == ContainmentStatus::unknown) {
          ++disagreements;
          c.require(false, "unknown verdict on an inverse-free pair at seed " +
                               std::to_string(seed));
          continue;
        }
        bool engine_contained = v.status == ContainmentStatus::contained;
        if (engine_contained == witnessed[i][j]) {
          ++disagreements;
          c.require(false,
                    "verdict disagrees with oracle at seed " + std::to_string(seed) +
                        " pair (" + gs.table.shape_name(names[i]) + ", " +
                        gs.table.shape_name(names[j]) + "): engine says " +
                        (engine_contained ? "contained" : "not contained"));
        }
      }
    }
    if (disagreements > 3) return;
  }
  c.require(pairs >= 100, "too few decided pairs: " + std::to_string(pairs));
}

// --------------------------------------------------------------------------
// Criterion 8: concept-inclusion encoding decides a valid inclusion and
// refutes an invalid one with a two-node counterexample.
void criterion_gci_encoding(Check& c) {
  SymbolTable table;
  ShapeSet empty = ShapeSet::make({}, table);
  PropertyId p = table.property("p");
  NodeId v = table.node("v");

  GciEncoding valid = encode_gci(
      Constraint::at_least(2, PathExpr::prop(p), Constraint::top()),
      Constraint::at_least(1, PathExpr::prop(p), Constraint::top()), empty, table);
  ContainmentVerdict yes =
      decide_containment(valid.shapes, valid.lhs_shape, valid.rhs_shape, table);
  c.require(yes.status == ContainmentStatus::contained, "valid inclusion not proved");
  c.require(yes.guarantee == ContainmentGuarantee::complete,
            "valid inclusion not proved completely");

  GciEncoding invalid =
      encode_gci(Constraint::top(), Constraint::node_const(v), empty, table);
  ContainmentVerdict no =
      decide_containment(invalid.shapes, invalid.lhs_shape, invalid.rhs_shape, table);
  c.require(no.status == ContainmentStatus::not_contained, "invalid inclusion not refuted");
  c.require(no.counterexample.has_value(), "refutation carries no counterexample");
  if (!no.counterexample) return;
  const Counterexample& ce = *no.counterexample;
  c.require(ce.graph.nodes().size() == 2,
            "expected a 2-node counterexample, got " +
                std::to_string(ce.graph.nodes().size()) + " nodes");
  c.require(is_faithful(ce.graph, ce.assignment, invalid.shapes),
            "counterexample is not faithful");
  c.require(ce.assignment.contains(ce.witness, invalid.lhs_shape),
            "witness lacks the left-hand shape");
  c.require(!ce.assignment.contains(ce.witness, invalid.rhs_shape),
            "witness carries the right-hand shape");
}

// --------------------------------------------------------------------------
// Criterion 9: reflexivity and top-shape containment hold across the corpus.
void criterion_containment_laws(Check& c) {
  struct NamedSet {
    std::string label;
    SymbolTable table;
    ShapeSet shapes;
  };
  std::vector<NamedSet> corpus;
  {
    PaintingFixture fx;
    corpus.push_back({"running example", fx.table, fx.shapes});
  }
  {
    ErratumFixture fx;
    corpus.push_back({"erratum example", fx.table, fx.shapes});
  }
  {
    SymbolTable t;
    ShapeDocument doc =
        parse_shapes(read_test_file(test_data_path("restricted.shapes")), t);
    corpus.push_back({"restricted fixture", std::move(t), doc.shapes});
  }
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratedSet gs = generate_inverse_free_set(seed);
    corpus.push_back({"generated seed " + std::to_string(seed),
                      std::move(gs.table), gs.shapes});
  }

  int checked = 0;
  for (NamedSet& entry : corpus) {
    // Reflexivity.
    for (ShapeId s : entry.shapes.names()) {
      ContainmentVerdict v = decide_containment(entry.shapes, s, s, entry.table);
      bool ok = v.status == ContainmentStatus::contained &&
                v.guarantee == ContainmentGuarantee::complete;
      c.require(ok, "reflexive containment failed in " + entry.label + " for " +
                        entry.table.shape_name(s));
      if (!ok) return;
      ++checked;
    }
    // Everything is contained in a shape whose constraint is trivially true.
    std::vector<Shape> extended;
    for (ShapeId s : entry.shapes.names()) {
      const Shape& sh = entry.shapes.at(s);
      extended.push_back(Shape{s, sh.constraint, sh.target});
    }
    ShapeId top = entry.table.shape("UniversalShape");
    extended.push_back(Shape{top, Constraint::top(), TargetQuery::none()});
    ShapeSet with_top = ShapeSet::make(std::move(extended), entry.table);
    for (ShapeId s : entry.shapes.names()) {
      ContainmentVerdict v = decide_containment(with_top, s, top, entry.table);
      bool ok = v.status == ContainmentStatus::contained &&
                v.guarantee == ContainmentGuarantee::complete;
      c.require(ok, "top-shape containment failed in " + entry.label + " for " +
                        entry.table.shape_name(s));
      if (!ok) return;
      ++checked;
    }
  }
  c.require(checked >= 200, "too few law checks: " + std::to_string(checked));
}

// Criterion 6 bundles the three correspondence theorems (model lift, model
// lowering, path/role agreement).
void criterion_correspondence(Check& c) {
  criterion_round_trip_models(c);
  if (!c.failures.empty()) return;
  criterion_model_lowering(c);
  if (!c.failures.empty()) return;
  criterion_path_role_agreement(c);
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "golden knowledge-base translation", 1000, criterion_translation},
      {2, "conformance and unique assignment", 1000, criterion_validation},
      {3, "corrected vs legacy target semantics", 0, criterion_target_semantics},
      {4, "verified containment refutation", 60000, criterion_refutation},
      {5, "finite-model absence up to size 6", 300000, criterion_finite_model_absence},
      {6, "model/graph correspondence theorems", 0, criterion_correspondence},
      {7, "containment agrees with exhaustive oracle", 600000, criterion_oracle_agreement},
      {8, "concept-inclusion encoding", 5000, criterion_gci_encoding},
      {9, "reflexive and top-shape containment laws", 0, criterion_containment_laws},
  };

  int failed = 0;
  for (Criterion& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    auto stop = std::chrono::steady_clock::now();
    int64_t ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    if (cr.limit_ms > 0 && ms > cr.limit_ms)
      check.failures.push_back("took " + std::to_string(ms) + " ms, limit " +
                               std::to_string(cr.limit_ms) + " ms");
    if (check.failures.empty()) {
      std::cout << "PASS  criterion " << cr.number << ": " << cr.label << " (" << ms
                << " ms)\n";
    } else {
      ++failed;
      std::cout << "FAIL  criterion " << cr.number << ": " << cr.label << " (" << ms
                << " ms)\n";
      for (const std::string& f : check.failures) std::cout << "      - " << f << "\n";
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
