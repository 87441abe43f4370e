#include "shaclcheck/eval.hpp"

#include <algorithm>

#include "shaclcheck/error.hpp"

namespace shaclcheck {

namespace {

void sort_unique(std::vector<NodePair>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

std::vector<NodePair> compute_pairs(EvalContext& ctx, const PathExpr& path) {
  const RdfGraph& g = ctx.graph();
  std::vector<NodePair> out;
  switch (path.kind()) {
    case PathExpr::Kind::prop: {
      for (const Triple& t : g.triples())
        if (t.predicate == path.property())
          out.emplace_back(t.subject, t.object);
      break;
    }
    case PathExpr::Kind::inverse: {
      for (const NodePair& p : ctx.pairs(path.inner()))
        out.emplace_back(p.second, p.first);
      break;
    }
    case PathExpr::Kind::seq: {
      const std::vector<NodePair>& left = ctx.pairs(path.left());
      const std::vector<NodePair>& right = ctx.pairs(path.right());
      for (const NodePair& l : left) {
        auto lo = std::lower_bound(right.begin(), right.end(),
                                   NodePair{l.second, NodeId{0}});
        for (auto it = lo; it != right.end() && it->first == l.second; ++it)
          out.emplace_back(l.first, it->second);
      }
      break;
    }
  }
  sort_unique(out);
  return out;
}

}  // namespace

const std::vector<NodePair>& EvalContext::pairs(const PathExpr& path) {
  auto it = cache_.find(path.cache_key());
  if (it != cache_.end()) return it->second;
  std::vector<NodePair> computed = compute_pairs(*this, path);
  return cache_.emplace(path.cache_key(), std::move(computed)).first->second;
}

std::vector<NodeId> EvalContext::successors(const PathExpr& path, NodeId v) {
  const std::vector<NodePair>& ps = pairs(path);
  std::vector<NodeId> out;
  auto lo = std::lower_bound(ps.begin(), ps.end(), NodePair{v, NodeId{0}});
  for (auto it = lo; it != ps.end() && it->first == v; ++it)
    out.push_back(it->second);
  return out;
}

std::vector<NodePair> eval_path(const RdfGraph& graph, const PathExpr& path) {
  EvalContext ctx(graph);
  return ctx.pairs(path);
}

bool eval_constraint(EvalContext& ctx, const Assignment& sigma, NodeId v,
                     const Constraint& c) {
  if (!ctx.graph().has_node(v))
    throw Error("constraint evaluated at a node outside the graph");
  switch (c.kind()) {
    case Constraint::Kind::top:
      return true;
    case Constraint::Kind::shape_ref:
      return sigma.contains(v, c.shape());
    case Constraint::Kind::node_const:
      return v == c.node();
    case Constraint::Kind::conj:
      return eval_constraint(ctx, sigma, v, c.left()) &&
             eval_constraint(ctx, sigma, v, c.right());
    case Constraint::Kind::neg:
      return !eval_constraint(ctx, sigma, v, c.inner());
    case Constraint::Kind::at_least: {
      uint32_t needed = c.count();
      uint32_t found = 0;
      Constraint qualifier = c.inner();
      for (NodeId succ : ctx.successors(c.path(), v)) {
        if (eval_constraint(ctx, sigma, succ, qualifier)) {
          if (++found >= needed) return true;
        }
      }
      return false;
    }
  }
  throw Error("unreachable constraint kind");
}

bool eval_constraint(const RdfGraph& graph, const Assignment& sigma, NodeId v,
                     const Constraint& c) {
  EvalContext ctx(graph);
  return eval_constraint(ctx, sigma, v, c);
}

std::vector<NodeId> eval_target(const RdfGraph& graph, const TargetQuery& q) {
  std::vector<NodeId> out;
  switch (q.kind()) {
    case TargetQuery::Kind::none:
      break;
    case TargetQuery::Kind::nodes:
      out = q.node_list();
      break;
    case TargetQuery::Kind::cls:
      for (const Triple& t : graph.triples())
        if (t.predicate == SymbolTable::type_property() &&
            t.object == q.class_node())
          out.push_back(t.subject);
      break;
    case TargetQuery::Kind::subjects_of:
      for (const Triple& t : graph.triples())
        if (t.predicate == q.property()) out.push_back(t.subject);
      break;
    case TargetQuery::Kind::objects_of:
      for (const Triple& t : graph.triples())
        if (t.predicate == q.property()) out.push_back(t.object);
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_faithful(EvalContext& ctx, const Assignment& sigma, const ShapeSet& s,
                 TargetSemantics semantics) {
  if (sigma.shape_names() != s.names())
    throw Error("assignment is not total over the shape set");
  const RdfGraph& g = ctx.graph();
  for (const Shape& shape : s.shapes()) {
    for (NodeId v : eval_target(g, shape.target)) {
      if (!g.has_node(v)) {
        if (semantics == TargetSemantics::erratum) return false;
        continue;
      }
      if (!sigma.contains(v, shape.name)) return false;
    }
  }
  for (const Shape& shape : s.shapes()) {
    for (NodeId v : g.nodes()) {
      if (sigma.contains(v, shape.name) !=
          eval_constraint(ctx, sigma, v, shape.constraint))
        return false;
    }
  }
  return true;
}

bool is_faithful(const RdfGraph& graph, const Assignment& sigma,
                 const ShapeSet& s, TargetSemantics semantics) {
  EvalContext ctx(graph);
  return is_faithful(ctx, sigma, s, semantics);
}

namespace {

void collect_edges(ShapeId owner, const Constraint& c, int neg_depth,
                   std::vector<DependencyEdge>& out) {
  switch (c.kind()) {
    case Constraint::Kind::top:
    case Constraint::Kind::node_const:
      return;
    case Constraint::Kind::shape_ref:
      out.push_back({owner, c.shape(), neg_depth % 2 == 1});
      return;
    case Constraint::Kind::conj:
      collect_edges(owner, c.left(), neg_depth, out);
      collect_edges(owner, c.right(), neg_depth, out);
      return;
    case Constraint::Kind::neg:
      collect_edges(owner, c.inner(), neg_depth + 1, out);
      return;
    case Constraint::Kind::at_least:
      collect_edges(owner, c.inner(), neg_depth, out);
      return;
  }
}

// Tarjan strongly connected components over shape indices.
struct Tarjan {
  const std::vector<std::vector<size_t>>& adj;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<size_t> stack;
  int counter = 0, comps = 0;

  explicit Tarjan(const std::vector<std::vector<size_t>>& a)
      : adj(a),
        index(a.size(), -1),
        low(a.size(), 0),
        comp(a.size(), -1),
        on_stack(a.size(), false) {}

  void run() {
    for (size_t v = 0; v < adj.size(); ++v)
      if (index[v] < 0) visit(v);
  }

  void visit(size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (size_t w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  }
};

}  // namespace

StratificationReport check_stratified(const ShapeSet& s) {
  std::vector<ShapeId> names = s.names();
  auto index_of = [&](ShapeId id) {
    return static_cast<size_t>(
        std::lower_bound(names.begin(), names.end(), id) - names.begin());
  };

  std::vector<DependencyEdge> edges;
  for (const Shape& shape : s.shapes())
    collect_edges(shape.name, shape.constraint, 0, edges);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<std::vector<size_t>> adj(names.size());
  for (const DependencyEdge& e : edges)
    adj[index_of(e.from)].push_back(index_of(e.to));

  Tarjan tarjan(adj);
  tarjan.run();

  StratificationReport report{true, edges, {}};
  for (const DependencyEdge& e : edges) {
    size_t from = index_of(e.from), to = index_of(e.to);
    if (!e.negative || tarjan.comp[from] != tarjan.comp[to]) continue;
    report.ok = false;
    // Close the cycle: shortest intra-component path to -> ... -> from.
    std::vector<int> prev(names.size(), -1);
    std::vector<size_t> queue{to};
    prev[to] = static_cast<int>(to);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      size_t v = queue[qi];
      if (v == from) break;
      for (size_t w : adj[v]) {
        if (tarjan.comp[w] != tarjan.comp[from] || prev[w] >= 0) continue;
        prev[w] = static_cast<int>(v);
        queue.push_back(w);
      }
    }
    std::vector<size_t> path;
    for (size_t v = from;; v = static_cast<size_t>(prev[v])) {
      path.push_back(v);
      if (v == to) break;
    }
    // path currently runs from -> ... -> to following prev links backwards;
    // reverse it to cycle order starting at the edge source.
    report.offending_cycle.push_back(e.from);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      if (*it != from) report.offending_cycle.push_back(names[*it]);
    break;
  }
  return report;
}

namespace {

// Least/greatest fixpoint evaluation per stratum. Returns a candidate
// assignment; callers verify faithfulness.
Assignment fixpoint_candidate(EvalContext& ctx, const ShapeSet& s,
                              const StratificationReport& strat, bool greatest,
                              TargetSemantics semantics, bool& target_missing) {
  const RdfGraph& g = ctx.graph();
  std::vector<ShapeId> names = s.names();
  auto index_of = [&](ShapeId id) {
    return static_cast<size_t>(
        std::lower_bound(names.begin(), names.end(), id) - names.begin());
  };
  std::vector<std::vector<size_t>> adj(names.size());
  for (const DependencyEdge& e : strat.edges)
    adj[index_of(e.from)].push_back(index_of(e.to));
  Tarjan tarjan(adj);
  tarjan.run();

  // Tarjan emits components in reverse topological order of the condensation,
  // i.e. dependencies first, which is the evaluation order we need.
  std::vector<std::vector<size_t>> comps(static_cast<size_t>(tarjan.comps));
  for (size_t i = 0; i < names.size(); ++i)
    comps[static_cast<size_t>(tarjan.comp[i])].push_back(i);

  Assignment sigma(g, names);
  target_missing = false;

  for (const std::vector<size_t>& comp : comps) {
    // Target seed for this stratum.
    std::vector<std::pair<NodeId, ShapeId>> seed;
    for (size_t si : comp) {
      const Shape& shape = s.shapes()[si];
      for (NodeId v : eval_target(g, shape.target)) {
        if (!g.has_node(v)) {
          if (semantics == TargetSemantics::erratum) target_missing = true;
          continue;
        }
        seed.emplace_back(v, shape.name);
      }
    }
    if (greatest) {
      for (size_t si : comp)
        for (NodeId v : g.nodes()) sigma.set(v, names[si], true);
    } else {
      for (const auto& [v, name] : seed) sigma.set(v, name, true);
    }
    size_t max_iters = comp.size() * g.nodes().size() + 2;
    for (size_t iter = 0; iter < max_iters; ++iter) {
      bool changed = false;
      // Evaluate the stratum's constraints against the current sigma, then
      // apply all updates at once (Jacobi iteration keeps the fixpoint
      // canonical regardless of shape order).
      std::vector<std::tuple<NodeId, ShapeId, bool>> updates;
      for (size_t si : comp) {
        const Shape& shape = s.shapes()[si];
        for (NodeId v : g.nodes()) {
          bool val = eval_constraint(ctx, sigma, v, shape.constraint);
          updates.emplace_back(v, shape.name, val);
        }
      }
      if (!greatest)
        for (const auto& [v, name] : seed)
          for (auto& [uv, uname, uval] : updates)
            if (uv == v && uname == name) uval = true;
      for (const auto& [v, name, val] : updates) {
        if (sigma.contains(v, name) != val) {
          sigma.set(v, name, val);
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  return sigma;
}

}  // namespace

FaithfulSearch find_faithful(const RdfGraph& graph, const ShapeSet& s,
                             size_t limit,
                             const FaithfulSearchOptions& options) {
  EvalContext ctx(graph);
  std::vector<ShapeId> names = s.names();
  size_t bits = names.size() * graph.nodes().size();

  if (bits <= static_cast<size_t>(options.max_exhaustive_bits) && bits <= 63) {
    FaithfulSearch result{SearchStrategy::exhaustive, {}};
    Assignment candidate(graph, names);
    uint64_t total = uint64_t{1} << bits;
    for (uint64_t pattern = 0; pattern < total && result.assignments.size() < limit;
         ++pattern) {
      candidate.load_pattern(pattern);
      if (is_faithful(ctx, candidate, s, options.semantics))
        result.assignments.push_back(candidate);
    }
    return result;
  }

  StratificationReport strat = check_stratified(s);
  if (!strat.ok)
    throw Error(
        "graph too large for exhaustive search and the shape set is not "
        "stratified");

  FaithfulSearch result{SearchStrategy::stratified_fixpoint, {}};
  bool target_missing = false;
  for (bool greatest : {false, true}) {
    Assignment candidate = fixpoint_candidate(ctx, s, strat, greatest,
                                              options.semantics, target_missing);
    if (target_missing) return result;  // conclusively unfaithful everywhere
    if (is_faithful(ctx, candidate, s, options.semantics)) {
      if (limit > 0) result.assignments.push_back(std::move(candidate));
      return result;
    }
  }
  throw Error(
      "graph too large for exhaustive search and the stratified fixpoint "
      "found no faithful assignment (inconclusive)");
}

bool conforms(const RdfGraph& graph, const ShapeSet& s,
              const FaithfulSearchOptions& options) {
  return !find_faithful(graph, s, 1, options).assignments.empty();
}

std::optional<std::string> missing_target_reason(const RdfGraph& graph,
                                                 const ShapeSet& s,
                                                 const SymbolTable& table) {
  for (const Shape& shape : s.shapes()) {
    if (shape.target.kind() != TargetQuery::Kind::nodes) continue;
    for (NodeId v : shape.target.node_list())
      if (!graph.has_node(v))
        return "target node " + table.node_name(v) + " missing from data graph";
  }
  return std::nullopt;
}

}  // namespace shaclcheck
