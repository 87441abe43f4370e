#include "shaclcheck/model_search.hpp"

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "shaclcheck/dl_norm.hpp"
#include "shaclcheck/error.hpp"

namespace shaclcheck {
namespace {

using Element = Interpretation::Element;

// Three-valued truth: false < unknown < true, so Kleene conjunction is min
// and disjunction is max.
using Val = int8_t;
constexpr Val kFalse = 0;
constexpr Val kUnknown = 1;
constexpr Val kTrue = 2;

constexpr Val val_not(Val v) { return static_cast<Val>(kTrue - v); }

// The knowledge base and goal, compiled once into the normal-form pool.
// After compilation the pool is frozen; evaluation never interns.
struct CompiledKb {
  NormPool pool;
  // Conjunction over every subsumption of (not lhs | rhs); must hold at
  // every element.
  NormId universal = 0;
  // Concept assertions: (object, concept that must hold at its element).
  std::vector<std::pair<ObjectId, NormId>> held_at;
  // Role assertions: (subject, object, chain that must connect them).
  std::vector<std::tuple<ObjectId, ObjectId, NormRole>> linked;
  NormId goal = 0;
};

CompiledKb compile(const KnowledgeBase& K, const Concept& goal) {
  CompiledKb out;
  std::vector<NormId> universals;
  for (const Axiom& ax : K.axioms()) {
    switch (ax.kind()) {
      case Axiom::Kind::subsumption: {
        NormId l = out.pool.from_concept(ax.lhs());
        NormId r = out.pool.from_concept(ax.rhs());
        universals.push_back(out.pool.disj({out.pool.negate(l), r}));
        break;
      }
      case Axiom::Kind::concept_assertion:
        out.held_at.emplace_back(ax.object(), out.pool.from_concept(ax.asserted()));
        break;
      case Axiom::Kind::role_assertion:
        out.linked.emplace_back(ax.subject(), ax.object(), normalize_role(ax.role()));
        break;
    }
  }
  out.universal = out.pool.conj(std::move(universals));
  out.goal = out.pool.from_concept(goal);
  return out;
}

// Partial candidate model of a fixed universe size and object map. Variable
// order is canonical: concept bits element-major, then role bits
// source-major; a decided-false bit sorts before decided-true, so the first
// model found is the lexicographically least one.
struct State {
  uint32_t n = 0;
  uint32_t concepts = 0;
  uint32_t roles = 0;
  std::vector<Element> obj;
  std::vector<Val> cval;  // index e * concepts + c
  std::vector<Val> rval;  // index (e1 * n + e2) * roles + r

  size_t var_count() const { return cval.size() + rval.size(); }
  Val get(size_t var) const {
    return var < cval.size() ? cval[var] : rval[var - cval.size()];
  }
  void set(size_t var, Val v) {
    if (var < cval.size())
      cval[var] = v;
    else
      rval[var - cval.size()] = v;
  }
};

struct SurveyResult {
  bool consistent = true;  // no constraint is definitely false
  bool complete = true;    // no axiom or goal instance is still unknown
};

// Three-valued evaluator with a per-query memo over (norm node, element).
class Checker {
 public:
  Checker(const CompiledKb& kb, uint32_t n)
      : kb_(kb),
        n_(n),
        memo_(kb.pool.size() * n, kFalse),
        stamp_(kb.pool.size() * n, 0) {}

  // Evaluates every constraint under st: each axiom instance, the goal at
  // element 0, and the canonical word order on unnamed elements. When
  // `touched` is given, it collects the undecided bits that undecided axiom
  // or goal instances actually read; no other bit can change any verdict.
  SurveyResult survey(const State& st, const std::vector<Element>& unnamed,
                      std::vector<size_t>* touched) {
    st_ = &st;
    ++round_;
    SurveyResult out;
    auto note = [&](Val v, NormId id, Element e) {
      if (v == kFalse) out.consistent = false;
      if (v == kUnknown) {
        out.complete = false;
        if (touched) collect(id, e, *touched);
      }
    };
    for (Element e = 0; e < n_ && out.consistent; ++e)
      note(eval(kb_.universal, e), kb_.universal, e);
    if (out.consistent) note(eval(kb_.goal, 0), kb_.goal, 0);
    for (const auto& [o, c] : kb_.held_at) {
      if (!out.consistent) break;
      note(eval(c, st.obj[o.value]), c, st.obj[o.value]);
    }
    for (const auto& [s, o, chain] : kb_.linked) {
      if (!out.consistent) break;
      Val v = chain_vals(chain, st.obj[s.value])[st.obj[o.value]];
      if (v == kFalse) out.consistent = false;
      if (v == kUnknown) {
        out.complete = false;
        if (touched) collect_chain(chain, st.obj[s.value], *touched);
      }
    }
    if (out.consistent && !words_ordered(st, unnamed)) out.consistent = false;
    if (touched) {
      std::sort(touched->begin(), touched->end());
      touched->erase(std::unique(touched->begin(), touched->end()),
                     touched->end());
    }
    return out;
  }

  bool consistent(const State& st, const std::vector<Element>& unnamed) {
    return survey(st, unnamed, nullptr).consistent;
  }

 private:
  Val eval(NormId id, Element e) {
    size_t slot = size_t(id) * n_ + e;
    if (stamp_[slot] == round_) return memo_[slot];
    const NormNode& nd = kb_.pool.node(id);
    Val v = kUnknown;
    switch (nd.kind) {
      case NormKind::top:
        v = kTrue;
        break;
      case NormKind::bottom:
        v = kFalse;
        break;
      case NormKind::atom:
        v = st_->cval[size_t(e) * st_->concepts + nd.name];
        break;
      case NormKind::neg_atom:
        v = val_not(st_->cval[size_t(e) * st_->concepts + nd.name]);
        break;
      case NormKind::nominal:
        v = st_->obj[nd.name] == e ? kTrue : kFalse;
        break;
      case NormKind::neg_nominal:
        v = st_->obj[nd.name] == e ? kFalse : kTrue;
        break;
      case NormKind::conj:
        v = kTrue;
        for (NormId ch : nd.children) {
          v = std::min(v, eval(ch, e));
          if (v == kFalse) break;
        }
        break;
      case NormKind::disj:
        v = kFalse;
        for (NormId ch : nd.children) {
          v = std::max(v, eval(ch, e));
          if (v == kTrue) break;
        }
        break;
      case NormKind::at_least:
      case NormKind::at_most: {
        std::vector<Val> reach = chain_vals(nd.role, e);
        uint32_t definite = 0;
        uint32_t possible = 0;
        for (Element t = 0; t < n_; ++t) {
          if (reach[t] == kFalse) continue;
          Val q = std::min(reach[t], eval(nd.children[0], t));
          if (q == kTrue) ++definite;
          if (q != kFalse) ++possible;
        }
        if (nd.kind == NormKind::at_least)
          v = definite >= nd.n ? kTrue : (possible < nd.n ? kFalse : kUnknown);
        else
          v = definite > nd.n ? kFalse : (possible <= nd.n ? kTrue : kUnknown);
        break;
      }
    }
    stamp_[slot] = round_;
    memo_[slot] = v;
    return v;
  }

  // Gathers the undecided bits an undecided node evaluation depends on.
  // Decided sub-results are skipped: a definite child cannot change under
  // any completion, so its bits are irrelevant to this node.
  void collect(NormId id, Element e, std::vector<size_t>& out) {
    const NormNode& nd = kb_.pool.node(id);
    switch (nd.kind) {
      case NormKind::top:
      case NormKind::bottom:
      case NormKind::nominal:
      case NormKind::neg_nominal:
        return;
      case NormKind::atom:
      case NormKind::neg_atom: {
        size_t var = size_t(e) * st_->concepts + nd.name;
        if (st_->cval[var] == kUnknown) out.push_back(var);
        return;
      }
      case NormKind::conj:
      case NormKind::disj:
        for (NormId ch : nd.children)
          if (eval(ch, e) == kUnknown) collect(ch, e, out);
        return;
      case NormKind::at_least:
      case NormKind::at_most: {
        std::vector<Val> reach = chain_vals(nd.role, e);
        bool chain_collected = false;
        for (Element t = 0; t < n_; ++t) {
          if (reach[t] == kFalse) continue;
          if (reach[t] == kUnknown && !chain_collected) {
            collect_chain(nd.role, e, out);
            chain_collected = true;
          }
          if (eval(nd.children[0], t) == kUnknown)
            collect(nd.children[0], t, out);
        }
        return;
      }
    }
  }

  void collect_chain(const NormRole& chain, Element from,
                     std::vector<size_t>& out) {
    std::vector<Val> cur(n_, kFalse);
    cur[from] = kTrue;
    for (const RoleStep& step : chain) {
      std::vector<Val> next(n_, kFalse);
      for (Element x = 0; x < n_; ++x) {
        if (cur[x] == kFalse) continue;
        for (Element y = 0; y < n_; ++y) {
          size_t idx = step.inverted
                           ? (size_t(y) * n_ + x) * st_->roles + step.role.value
                           : (size_t(x) * n_ + y) * st_->roles + step.role.value;
          if (st_->rval[idx] == kUnknown) out.push_back(st_->cval.size() + idx);
          next[y] = std::max(next[y], std::min(cur[x], st_->rval[idx]));
        }
      }
      cur = std::move(next);
    }
  }

  // Three-valued reachability from one element through a role chain.
  std::vector<Val> chain_vals(const NormRole& chain, Element from) {
    std::vector<Val> cur(n_, kFalse);
    cur[from] = kTrue;
    for (const RoleStep& step : chain) {
      std::vector<Val> next(n_, kFalse);
      for (Element x = 0; x < n_; ++x) {
        if (cur[x] == kFalse) continue;
        for (Element y = 0; y < n_; ++y) {
          size_t idx = step.inverted
                           ? (size_t(y) * n_ + x) * st_->roles + step.role.value
                           : (size_t(x) * n_ + y) * st_->roles + step.role.value;
          next[y] = std::max(next[y], std::min(cur[x], st_->rval[idx]));
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  // Canonical symmetry cut: concept words of unnamed elements, read as
  // bit sequences in concept order, must be non-increasing. Only a decided
  // prefix can witness a violation.
  bool words_ordered(const State& st, const std::vector<Element>& unnamed) {
    for (size_t i = 1; i < unnamed.size(); ++i) {
      Element d = unnamed[i - 1];
      Element e = unnamed[i];
      for (uint32_t c = 0; c < st.concepts; ++c) {
        Val vd = st.cval[size_t(d) * st.concepts + c];
        Val ve = st.cval[size_t(e) * st.concepts + c];
        if (vd == kUnknown || ve == kUnknown) break;
        if (vd > ve) break;
        if (vd < ve) return false;
      }
    }
    return true;
  }

  const CompiledKb& kb_;
  uint32_t n_;
  const State* st_ = nullptr;
  std::vector<Val> memo_;
  std::vector<uint32_t> stamp_;
  uint32_t round_ = 0;
};

// Failed-literal propagation to fixpoint over the bits pending constraints
// actually read: a bit whose one polarity is immediately inconsistent is
// forced to the other. Returns false on conflict, leaving st in an
// unspecified partial form.
bool propagate(State& st, Checker& ck, const std::vector<Element>& unnamed,
               SearchStats& stats) {
  std::vector<size_t> touched;
  if (!ck.survey(st, unnamed, &touched).consistent) {
    ++stats.conflicts;
    return false;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t v : touched) {
      if (st.get(v) != kUnknown) continue;
      st.set(v, kFalse);
      bool false_ok = ck.consistent(st, unnamed);
      st.set(v, kTrue);
      bool true_ok = ck.consistent(st, unnamed);
      if (!false_ok && !true_ok) {
        ++stats.conflicts;
        return false;
      }
      if (false_ok == true_ok) {
        st.set(v, kUnknown);
        continue;
      }
      st.set(v, false_ok ? kFalse : kTrue);
      changed = true;
    }
    if (changed) {
      touched.clear();
      if (!ck.survey(st, unnamed, &touched).consistent) {
        ++stats.conflicts;
        return false;
      }
    }
  }
  return true;
}

bool dfs(State& st, Checker& ck, const std::vector<Element>& unnamed,
         SearchStats& stats) {
  std::vector<size_t> touched;
  SurveyResult sv = ck.survey(st, unnamed, &touched);
  if (!sv.consistent) return false;
  // Every axiom and the goal hold under all completions of the remaining
  // unknown bits; fix them to false and take the model.
  if (sv.complete) {
    size_t vars = st.var_count();
    for (size_t v = 0; v < vars; ++v)
      if (st.get(v) == kUnknown) st.set(v, kFalse);
    return true;
  }
  if (touched.empty())
    throw Error("an undecided constraint reads no undecided bit; this is a bug");
  size_t pick = touched.front();  // smallest undecided bit any pending
                                  // constraint depends on
  for (Val v : {kFalse, kTrue}) {
    ++stats.decisions;
    State branch = st;
    branch.set(pick, v);
    if (propagate(branch, ck, unnamed, stats) &&
        dfs(branch, ck, unnamed, stats)) {
      st = std::move(branch);
      return true;
    }
  }
  return false;
}

// Advances an injective tuple over {0..n-1} to its lexicographic successor.
bool next_injective(std::vector<Element>& t, uint32_t n) {
  size_t k = t.size();
  size_t i = k;
  std::vector<bool> used(n, false);
  while (i > 0) {
    --i;
    std::fill(used.begin(), used.end(), false);
    for (size_t j = 0; j < i; ++j) used[t[j]] = true;
    uint32_t v = t[i] + 1;
    while (v < n && used[v]) ++v;
    if (v == n) continue;
    t[i] = v;
    used[v] = true;
    for (size_t j = i + 1; j < k; ++j) {
      uint32_t w = 0;
      while (used[w]) ++w;
      t[j] = w;
      used[w] = true;
    }
    return true;
  }
  return false;
}

Interpretation build(const State& st, const DlSignature& sig) {
  std::vector<std::vector<Element>> concept_elements(sig.concept_count());
  for (Element e = 0; e < st.n; ++e)
    for (uint32_t c = 0; c < st.concepts; ++c)
      if (st.cval[size_t(e) * st.concepts + c] == kTrue)
        concept_elements[c].push_back(e);
  std::vector<std::vector<Interpretation::ElementPair>> role_pairs(
      sig.role_count());
  for (Element e1 = 0; e1 < st.n; ++e1)
    for (Element e2 = 0; e2 < st.n; ++e2)
      for (uint32_t r = 0; r < st.roles; ++r)
        if (st.rval[(size_t(e1) * st.n + e2) * st.roles + r] == kTrue)
          role_pairs[r].push_back({e1, e2});
  return Interpretation::make(sig, st.n, st.obj, std::move(concept_elements),
                              std::move(role_pairs));
}

}  // namespace

std::optional<Interpretation> bounded_model_search(const KnowledgeBase& K,
                                                   const Concept& goal,
                                                   uint32_t max_universe,
                                                   SearchStats* stats) {
  SearchStats local;
  SearchStats& tally = stats ? *stats : local;
  const DlSignature& sig = K.signature();
  CompiledKb kb = compile(K, goal);
  const uint32_t k = sig.object_count();
  for (uint32_t n = 1; n <= max_universe; ++n) {
    if (k > n) continue;  // object images are injective
    Checker ck(kb, n);
    std::vector<Element> images(k);
    for (uint32_t i = 0; i < k; ++i) images[i] = i;
    while (true) {
      State st;
      st.n = n;
      st.concepts = sig.concept_count();
      st.roles = sig.role_count();
      st.obj = images;
      st.cval.assign(size_t(n) * st.concepts, kUnknown);
      st.rval.assign(size_t(n) * n * st.roles, kUnknown);
      std::vector<Element> unnamed;
      for (Element e = 1; e < n; ++e)
        if (std::find(images.begin(), images.end(), e) == images.end())
          unnamed.push_back(e);
      if (propagate(st, ck, unnamed, tally) && dfs(st, ck, unnamed, tally)) {
        Interpretation I = build(st, sig);
        ModelCheck mc = check_model(I, K);
        std::vector<Element> witnesses = interpret_concept(I, goal);
        if (!mc.satisfied ||
            !std::binary_search(witnesses.begin(), witnesses.end(), Element{0}))
          throw Error(
              "bounded model search produced an interpretation that fails "
              "verification");
        return I;
      }
      if (!next_injective(images, n)) break;
    }
  }
  return std::nullopt;
}

}  // namespace shaclcheck
