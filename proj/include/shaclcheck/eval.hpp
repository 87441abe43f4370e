#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shaclcheck/graph.hpp"
#include "shaclcheck/shapes.hpp"

namespace shaclcheck {

using NodePair = std::pair<NodeId, NodeId>;

// Per-graph evaluation context caching path extensions. Reusable across
// constraint evaluations and assignment candidates (path semantics does not
// depend on the assignment).
class EvalContext {
 public:
  explicit EvalContext(const RdfGraph& graph) : graph_(&graph) {}
  const RdfGraph& graph() const { return *graph_; }
  // Sorted, deduplicated pair set of the path.
  const std::vector<NodePair>& pairs(const PathExpr& path);
  // Distinct successors of v under the path.
  std::vector<NodeId> successors(const PathExpr& path, NodeId v);

 private:
  const RdfGraph* graph_;
  std::map<const void*, std::vector<NodePair>> cache_;
};

// Pair set of a path expression over the graph's triples.
std::vector<NodePair> eval_path(const RdfGraph& graph, const PathExpr& path);

// Truth of a constraint at node v (v must be a graph node).
bool eval_constraint(EvalContext& ctx, const Assignment& sigma, NodeId v,
                     const Constraint& c);
bool eval_constraint(const RdfGraph& graph, const Assignment& sigma, NodeId v,
                     const Constraint& c);

// Nodes demanded by a target query. Enumerated node targets are returned
// verbatim, including names absent from the graph.
std::vector<NodeId> eval_target(const RdfGraph& graph, const TargetQuery& q);

// Which reading of the target condition applies. Under the corrected
// semantics (the default), a target node missing from the graph makes every
// assignment unfaithful; the pre-correction reading quantified targets over
// graph nodes only and so ignored missing ones. The legacy mode exists for
// tests that demonstrate the difference.
enum class TargetSemantics { erratum, pre_erratum };

// Faithfulness: (a) for each shape and each graph node, membership in sigma
// coincides with constraint truth; (b) each target node is a graph node
// carrying the shape (erratum mode) or, if a graph node, carries the shape
// (pre-erratum mode).
bool is_faithful(EvalContext& ctx, const Assignment& sigma, const ShapeSet& s,
                 TargetSemantics semantics = TargetSemantics::erratum);
bool is_faithful(const RdfGraph& graph, const Assignment& sigma,
                 const ShapeSet& s,
                 TargetSemantics semantics = TargetSemantics::erratum);

// Shape dependency edge; negative when the reference occurs under an odd
// number of negations (at-least does not flip parity).
struct DependencyEdge {
  ShapeId from;
  ShapeId to;
  bool negative;
  auto operator<=>(const DependencyEdge&) const = default;
};

struct StratificationReport {
  bool ok;
  std::vector<DependencyEdge> edges;
  // Non-empty iff !ok: shapes forming a cycle through >= 1 negative edge,
  // listed in cycle order without repeating the first element.
  std::vector<ShapeId> offending_cycle;
};

StratificationReport check_stratified(const ShapeSet& s);

enum class SearchStrategy { exhaustive, stratified_fixpoint };

struct FaithfulSearchOptions {
  // Exhaustive enumeration runs when |names| * |nodes| fits this many bits.
  int max_exhaustive_bits = 20;
  TargetSemantics semantics = TargetSemantics::erratum;
};

struct FaithfulSearch {
  SearchStrategy strategy;
  std::vector<Assignment> assignments;
};

// Searches for faithful assignments. Within the bit cap the full assignment
// space is enumerated in canonical order (complete); beyond it a stratified
// fixpoint computes one canonical candidate (least fixpoint above the target
// seed, then greatest fixpoint as a fallback) and verifies it. Throws when
// no strategy conclusively applies: unstratified sets beyond the cap, or a
// fixpoint candidate that fails verification for a reason other than a
// missing target node.
FaithfulSearch find_faithful(const RdfGraph& graph, const ShapeSet& s,
                             size_t limit,
                             const FaithfulSearchOptions& options = {});

bool conforms(const RdfGraph& graph, const ShapeSet& s,
              const FaithfulSearchOptions& options = {});

// Assignment-independent non-conformance cause: an enumerated target node
// that is not a graph node (decisive under erratum semantics).
std::optional<std::string> missing_target_reason(const RdfGraph& graph,
                                                 const ShapeSet& s,
                                                 const SymbolTable& table);

}  // namespace shaclcheck
