#include "shaclcheck/tableau.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "shaclcheck/dl_norm.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/model_search.hpp"

namespace shaclcheck {
namespace {

using Element = Interpretation::Element;

void require_atomic_roles(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::top:
    case Concept::Kind::atomic:
    case Concept::Kind::nominal:
      return;
    case Concept::Kind::neg:
      require_atomic_roles(c.inner());
      return;
    case Concept::Kind::conj:
      require_atomic_roles(c.left());
      require_atomic_roles(c.right());
      return;
    case Concept::Kind::at_least:
      if (c.role().kind() != Role::Kind::atomic)
        throw Error("tableau goal must use atomic roles only");
      require_atomic_roles(c.inner());
      return;
  }
  throw Error("unreachable concept kind");
}

struct NodeRec {
  std::set<NormId> label;
  int parent = -1;
  bool alive = true;
  uint32_t merged_into = 0;  // self while alive, survivor once merged
  std::vector<std::pair<RoleId, uint32_t>> succ;
};

struct TabState {
  std::vector<NodeRec> nodes;
  // Explicit inequalities, normalized to (lo, hi). Merging such a pair is a
  // clash; everything else may merge.
  std::set<std::pair<uint32_t, uint32_t>> distinct;
  bool clash = false;
};

std::pair<uint32_t, uint32_t> ordered(uint32_t a, uint32_t b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// True when some n of the candidates are pairwise explicitly distinct.
bool has_distinct_subset(const std::set<std::pair<uint32_t, uint32_t>>& distinct,
                         const std::vector<uint32_t>& cand, uint32_t n,
                         std::vector<uint32_t>& chosen, size_t start) {
  if (chosen.size() == n) return true;
  if (cand.size() - start < n - chosen.size()) return false;
  for (size_t i = start; i < cand.size(); ++i) {
    bool compatible = true;
    for (uint32_t c : chosen)
      if (!distinct.count(ordered(c, cand[i]))) {
        compatible = false;
        break;
      }
    if (!compatible) continue;
    chosen.push_back(cand[i]);
    if (has_distinct_subset(distinct, cand, n, chosen, i + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

class Tableau {
 public:
  Tableau(const KnowledgeBase& K, const Concept& goal,
          const TableauOptions& opt)
      : kb_(K), goal_concept_(goal), opt_(opt) {
    if (dl_fragment(K) != DlFragment::alcoq)
      throw Error(
          "tableau requires an inverse- and composition-free knowledge base");
    require_atomic_roles(goal);
    std::vector<NormId> parts;
    for (const Axiom& ax : K.axioms()) {
      switch (ax.kind()) {
        case Axiom::Kind::subsumption: {
          NormId l = pool_.from_concept(ax.lhs());
          NormId r = pool_.from_concept(ax.rhs());
          parts.push_back(pool_.disj({pool_.negate(l), r}));
          break;
        }
        case Axiom::Kind::concept_assertion:
          parts.push_back(pool_.disj({pool_.neg_nominal(ax.object()),
                                      pool_.from_concept(ax.asserted())}));
          break;
        case Axiom::Kind::role_assertion:
          throw Error("tableau does not accept role assertions");
      }
    }
    universal_ = pool_.conj(std::move(parts));
    goal_ = pool_.from_concept(goal);
    object_count_ = K.signature().object_count();
  }

  SatResult run() {
    TabState st;
    for (uint32_t o = 0; o < object_count_; ++o) {
      uint32_t idx = new_node(st, -1);
      add_to_label(st, idx, pool_.nominal(ObjectId{o}));
      if (universal_ != pool_.top()) add_to_label(st, idx, universal_);
    }
    goal_root_ = new_node(st, -1);
    add_to_label(st, goal_root_, goal_);
    if (universal_ != pool_.top()) add_to_label(st, goal_root_, universal_);

    if (!solve(st)) return {false, std::nullopt, 0, stats_};

    auto [model, witness] = extract(st);
    ModelCheck mc = check_model(model, kb_);
    std::vector<Element> ext = interpret_concept(model, goal_concept_);
    if (mc.satisfied &&
        std::binary_search(ext.begin(), ext.end(), witness))
      return {true, std::move(model), witness, stats_};

    // The calculus found an open completion, so a model exists; rebuild one
    // from scratch rather than trust a faulty extraction.
    std::optional<Interpretation> alt =
        bounded_model_search(kb_, goal_concept_, model.universe_size() * 4);
    if (!alt)
      throw Error(
          "tableau model extraction failed verification and no replacement "
          "model was found");
    return {true, std::move(*alt), 0, stats_};
  }

 private:
  uint32_t new_node(TabState& st, int parent) {
    uint32_t idx = static_cast<uint32_t>(st.nodes.size());
    NodeRec rec;
    rec.parent = parent;
    rec.merged_into = idx;
    st.nodes.push_back(std::move(rec));
    return idx;
  }

  void tick() {
    if (++stats_.rule_applications > opt_.rule_budget)
      throw Error("tableau rule budget exhausted");
  }

  bool add_to_label(TabState& st, uint32_t i, NormId id) {
    if (st.nodes[i].label.count(id)) return false;
    if (id == pool_.bottom()) st.clash = true;
    NormId negid = pool_.negate(id);
    if (st.nodes[i].label.count(negid)) st.clash = true;
    if (pool_.node(id).kind == NormKind::nominal) {
      for (NormId other : st.nodes[i].label)
        if (pool_.node(other).kind == NormKind::nominal) {
          st.clash = true;
          break;
        }
    }
    st.nodes[i].label.insert(id);
    return true;
  }

  // Merges `from` into `to`; `to` survives with the union of labels and
  // edges, and every reference to `from` is redirected.
  void merge(TabState& st, uint32_t from, uint32_t to) {
    if (st.distinct.count(ordered(from, to))) {
      st.clash = true;
      return;
    }
    for (auto& nd : st.nodes) {
      if (!nd.alive) continue;
      for (auto& e : nd.succ)
        if (e.second == from) e.second = to;
      if (nd.parent == static_cast<int>(from)) nd.parent = static_cast<int>(to);
    }
    auto& dst = st.nodes[to].succ;
    auto& src = st.nodes[from].succ;
    dst.insert(dst.end(), src.begin(), src.end());
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
    std::vector<NormId> moving(st.nodes[from].label.begin(),
                               st.nodes[from].label.end());
    for (NormId id : moving) add_to_label(st, to, id);
    std::set<std::pair<uint32_t, uint32_t>> remapped;
    for (auto [a, b] : st.distinct) {
      if (a == from) a = to;
      if (b == from) b = to;
      remapped.insert(ordered(a, b));
    }
    st.distinct = std::move(remapped);
    st.nodes[from].alive = false;
    st.nodes[from].merged_into = to;
    st.nodes[from].label.clear();
    st.nodes[from].succ.clear();
  }

  bool label_has_nominal(const TabState& st, uint32_t i) const {
    for (NormId id : st.nodes[i].label)
      if (pool_.node(id).kind == NormKind::nominal) return true;
    return false;
  }

  // Nearest strict ancestor with an identical, nominal-free label; -1 when
  // none. Recomputed on demand: merges can change labels under a previously
  // settled block.
  int blocker_of(const TabState& st, uint32_t x) const {
    if (label_has_nominal(st, x)) return -1;
    const std::set<NormId>& lx = st.nodes[x].label;
    int p = st.nodes[x].parent;
    size_t guard = 0;
    while (p >= 0 && guard++ < st.nodes.size()) {
      if (st.nodes[p].alive && st.nodes[p].label == lx) return p;
      p = st.nodes[p].parent;
    }
    return -1;
  }

  bool qualifies(const TabState& st, uint32_t node, NormId c) const {
    return c == pool_.top() || st.nodes[node].label.count(c) != 0;
  }

  std::vector<uint32_t> role_successors(const TabState& st, uint32_t x,
                                        RoleId r) const {
    std::vector<uint32_t> out;
    for (auto [role, to] : st.nodes[x].succ)
      if (role == r && st.nodes[to].alive) out.push_back(to);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  RoleId chain_role(const NormRole& chain) const {
    if (chain.size() != 1 || chain[0].inverted)
      throw Error("tableau met a non-atomic role despite the fragment check");
    return chain[0].role;
  }

  bool solve(TabState& st) {
    while (true) {
      if (st.clash) return false;

      // Nominal merge: two alive nodes naming the same object are the same
      // individual; the newer one folds into the older.
      {
        std::map<uint32_t, uint32_t> first_holder;
        bool merged = false;
        for (uint32_t i = 0; i < st.nodes.size() && !merged; ++i) {
          if (!st.nodes[i].alive) continue;
          for (NormId id : st.nodes[i].label) {
            const NormNode& nd = pool_.node(id);
            if (nd.kind != NormKind::nominal) continue;
            auto [it, fresh] = first_holder.try_emplace(nd.name, i);
            if (!fresh && it->second != i) {
              tick();
              merge(st, i, it->second);
              merged = true;
              break;
            }
          }
        }
        if (merged) continue;
      }

      // Conjunction: copy missing conjuncts into the label.
      {
        uint32_t at = 0;
        std::vector<NormId> missing;
        for (uint32_t i = 0; i < st.nodes.size() && missing.empty(); ++i) {
          if (!st.nodes[i].alive) continue;
          for (NormId id : st.nodes[i].label) {
            if (pool_.node(id).kind != NormKind::conj) continue;
            for (NormId ch : pool_.node(id).children)
              if (!st.nodes[i].label.count(ch)) missing.push_back(ch);
            if (!missing.empty()) {
              at = i;
              break;
            }
          }
        }
        if (!missing.empty()) {
          tick();
          for (NormId ch : missing) add_to_label(st, at, ch);
          continue;
        }
      }

      // Disjunction, propagation half: an alternative whose complement is
      // already in the label is dead. All alternatives dead is a clash; a
      // single live one is forced without branching.
      {
        bool propagated = false;
        for (uint32_t i = 0; i < st.nodes.size() && !propagated; ++i) {
          if (!st.nodes[i].alive) continue;
          for (NormId id : st.nodes[i].label) {
            if (pool_.node(id).kind != NormKind::disj) continue;
            bool satisfied = false;
            std::vector<NormId> live;
            for (NormId ch : pool_.node(id).children) {
              if (st.nodes[i].label.count(ch)) {
                satisfied = true;
                break;
              }
              if (!st.nodes[i].label.count(pool_.negate(ch))) live.push_back(ch);
            }
            if (satisfied) continue;
            if (live.empty()) return false;
            if (live.size() > 1) continue;
            tick();
            add_to_label(st, i, live[0]);
            propagated = true;
            break;
          }
        }
        if (propagated) continue;
      }

      // At-most, clash half: more qualified successors than the bound with
      // no mergeable pair can never recover (labels and edges only grow), so
      // fail before any branching below grows the tree further.
      {
        for (uint32_t i = 0; i < st.nodes.size(); ++i) {
          if (!st.nodes[i].alive) continue;
          for (NormId id : st.nodes[i].label) {
            const NormNode& nd = pool_.node(id);
            if (nd.kind != NormKind::at_most) continue;
            NormId c = nd.children[0];
            RoleId r = chain_role(nd.role);
            std::vector<uint32_t> cand;
            for (uint32_t y : role_successors(st, i, r))
              if (qualifies(st, y, c)) cand.push_back(y);
            if (cand.size() <= nd.n) continue;
            bool mergeable = false;
            for (size_t a = 0; a < cand.size() && !mergeable; ++a)
              for (size_t b = a + 1; b < cand.size(); ++b)
                if (!st.distinct.count(ordered(cand[a], cand[b]))) {
                  mergeable = true;
                  break;
                }
            if (!mergeable) return false;
          }
        }
      }

      // Disjunction, branching half: branch on the first disjunction with
      // several live alternatives, left alternative first.
      {
        uint32_t at = 0;
        std::vector<NormId> alts;
        for (uint32_t i = 0; i < st.nodes.size() && alts.empty(); ++i) {
          if (!st.nodes[i].alive) continue;
          for (NormId id : st.nodes[i].label) {
            if (pool_.node(id).kind != NormKind::disj) continue;
            bool satisfied = false;
            std::vector<NormId> live;
            for (NormId ch : pool_.node(id).children) {
              if (st.nodes[i].label.count(ch)) {
                satisfied = true;
                break;
              }
              if (!st.nodes[i].label.count(pool_.negate(ch))) live.push_back(ch);
            }
            if (satisfied) continue;
            alts = std::move(live);
            at = i;
            break;
          }
        }
        if (!alts.empty()) {
          tick();
          stats_.branch_count += alts.size() - 1;
          // Try non-generating alternatives first; successors are grown only
          // when every cheaper alternative clashes.
          std::stable_partition(alts.begin(), alts.end(), [&](NormId ch) {
            return pool_.node(ch).kind != NormKind::at_least;
          });
          for (NormId ch : alts) {
            TabState branch = st;
            add_to_label(branch, at, ch);
            if (solve(branch)) {
              st = std::move(branch);
              return true;
            }
          }
          return false;
        }
      }

      // Choose: an upper bound needs every relevant successor to commit to
      // the qualifier or its complement.
      {
        bool branched = false;
        for (uint32_t i = 0; i < st.nodes.size() && !branched; ++i) {
          if (!st.nodes[i].alive) continue;
          for (NormId id : st.nodes[i].label) {
            const NormNode& nd = pool_.node(id);
            if (nd.kind != NormKind::at_most) continue;
            NormId c = nd.children[0];
            if (c == pool_.top()) continue;
            RoleId r = chain_role(nd.role);
            NormId negc = pool_.negate(c);
            for (uint32_t y : role_successors(st, i, r)) {
              if (st.nodes[y].label.count(c) ||
                  st.nodes[y].label.count(negc))
                continue;
              tick();
              stats_.branch_count += 1;
              for (NormId add : {c, negc}) {
                TabState branch = st;
                add_to_label(branch, y, add);
                if (solve(branch)) {
                  st = std::move(branch);
                  return true;
                }
              }
              branched = true;
              break;
            }
            if (branched) break;
          }
        }
        if (branched) return false;
      }

      // At-least: an unblocked node missing n pairwise-distinct qualified
      // successors grows n fresh ones.
      {
        bool applied = false;
        for (uint32_t i = 0; i < st.nodes.size() && !applied; ++i) {
          if (!st.nodes[i].alive) continue;
          bool blocked_checked = false;
          bool blocked = false;
          for (NormId id : st.nodes[i].label) {
            const NormNode& nd = pool_.node(id);
            if (nd.kind != NormKind::at_least) continue;
            uint32_t n = nd.n;
            NormId c = nd.children[0];
            RoleId r = chain_role(nd.role);
            std::vector<uint32_t> cand;
            for (uint32_t y : role_successors(st, i, r))
              if (qualifies(st, y, c)) cand.push_back(y);
            std::vector<uint32_t> chosen;
            if (has_distinct_subset(st.distinct, cand, n, chosen, 0)) continue;
            if (!blocked_checked) {
              blocked = blocker_of(st, i) >= 0;
              blocked_checked = true;
            }
            if (blocked) continue;
            tick();
            std::vector<uint32_t> fresh;
            for (uint32_t j = 0; j < n; ++j) {
              uint32_t idx = new_node(st, static_cast<int>(i));
              add_to_label(st, idx, c);
              if (universal_ != pool_.top()) add_to_label(st, idx, universal_);
              st.nodes[i].succ.push_back({r, idx});
              for (uint32_t prev : fresh) st.distinct.insert(ordered(prev, idx));
              fresh.push_back(idx);
            }
            applied = true;
            break;
          }
        }
        if (applied) continue;
      }

      // At-most: too many qualified successors either merge (branching over
      // the mergeable pairs) or clash when all pairs are explicitly distinct.
      {
        for (uint32_t i = 0; i < st.nodes.size(); ++i) {
          if (!st.nodes[i].alive) continue;
          for (NormId id : st.nodes[i].label) {
            const NormNode& nd = pool_.node(id);
            if (nd.kind != NormKind::at_most) continue;
            NormId c = nd.children[0];
            RoleId r = chain_role(nd.role);
            std::vector<uint32_t> cand;
            for (uint32_t y : role_successors(st, i, r))
              if (qualifies(st, y, c)) cand.push_back(y);
            if (cand.size() <= nd.n) continue;
            std::vector<std::pair<uint32_t, uint32_t>> pairs;
            for (size_t a = 0; a < cand.size(); ++a)
              for (size_t b = a + 1; b < cand.size(); ++b)
                if (!st.distinct.count(ordered(cand[a], cand[b])))
                  pairs.push_back({cand[a], cand[b]});
            if (pairs.empty()) return false;
            tick();
            stats_.branch_count += pairs.size() - 1;
            for (auto [keep, fold] : pairs) {
              TabState branch = st;
              merge(branch, fold, keep);
              if (solve(branch)) {
                st = std::move(branch);
                return true;
              }
            }
            return false;
          }
        }
      }

      // No rule applies and there is no clash: the completion is open.
      return true;
    }
  }

  // Reads a finite model off an open completion. A blocked node borrows the
  // successor structure of its blocker, which carries an identical label, so
  // all its constraints transfer.
  std::pair<Interpretation, Element> extract(const TabState& st) const {
    auto find_alive = [&](uint32_t x) {
      size_t guard = 0;
      while (!st.nodes[x].alive && guard++ <= st.nodes.size())
        x = st.nodes[x].merged_into;
      if (!st.nodes[x].alive) throw Error("tableau merge chain is cyclic");
      return x;
    };
    auto effective = [&](uint32_t x) {
      size_t guard = 0;
      while (guard++ <= st.nodes.size()) {
        int b = blocker_of(st, x);
        if (b < 0) return x;
        x = static_cast<uint32_t>(b);
      }
      throw Error("tableau blocking chain is cyclic");
    };

    const DlSignature& sig = kb_.signature();
    std::map<uint32_t, Element> elem;
    std::deque<uint32_t> pending;
    auto visit = [&](uint32_t node) {
      if (elem.emplace(node, static_cast<Element>(elem.size())).second)
        pending.push_back(node);
    };
    uint32_t goal_node = find_alive(goal_root_);
    visit(goal_node);
    for (uint32_t o = 0; o < object_count_; ++o) visit(find_alive(o));

    std::vector<std::vector<Interpretation::ElementPair>> role_pairs(
        sig.role_count());
    while (!pending.empty()) {
      uint32_t u = pending.front();
      pending.pop_front();
      for (auto [r, v] : st.nodes[effective(u)].succ) {
        visit(v);
        role_pairs[r.value].push_back({elem.at(u), elem.at(v)});
      }
    }

    std::vector<std::vector<Element>> concept_elements(sig.concept_count());
    for (auto [node, e] : elem)
      for (NormId id : st.nodes[node].label) {
        const NormNode& nd = pool_.node(id);
        if (nd.kind == NormKind::atom) concept_elements[nd.name].push_back(e);
      }
    for (auto& v : concept_elements) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    for (auto& v : role_pairs) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::vector<Element> object_elements(object_count_);
    for (uint32_t o = 0; o < object_count_; ++o)
      object_elements[o] = elem.at(find_alive(o));

    Interpretation model = Interpretation::make(
        sig, static_cast<uint32_t>(elem.size()), std::move(object_elements),
        std::move(concept_elements), std::move(role_pairs));
    return {std::move(model), elem.at(goal_node)};
  }

  const KnowledgeBase& kb_;
  Concept goal_concept_;
  TableauOptions opt_;
  TableauStats stats_;
  NormPool pool_;
  NormId universal_ = 0;
  NormId goal_ = 0;
  uint32_t object_count_ = 0;
  uint32_t goal_root_ = 0;
};

}  // namespace

SatResult tableau_sat(const KnowledgeBase& K, const Concept& goal,
                      const TableauOptions& options) {
  Tableau t(K, goal, options);
  return t.run();
}

}  // namespace shaclcheck
