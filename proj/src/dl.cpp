#include "shaclcheck/dl.hpp"

#include <algorithm>
#include <atomic>

#include "shaclcheck/error.hpp"

namespace shaclcheck {

namespace {

uint32_t find_in(const std::vector<std::string>& names,
                 const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? UINT32_MAX
                           : static_cast<uint32_t>(it - names.begin());
}

}  // namespace

ConceptId DlSignature::intern_concept(const std::string& name) {
  uint32_t id = find_in(concept_names_, name);
  if (id != UINT32_MAX) return ConceptId{id};
  concept_names_.push_back(name);
  return ConceptId{static_cast<uint32_t>(concept_names_.size() - 1)};
}

RoleId DlSignature::intern_role(const std::string& name) {
  uint32_t id = find_in(role_names_, name);
  if (id != UINT32_MAX) return RoleId{id};
  role_names_.push_back(name);
  return RoleId{static_cast<uint32_t>(role_names_.size() - 1)};
}

ObjectId DlSignature::intern_object(const std::string& name) {
  uint32_t id = find_in(object_names_, name);
  if (id != UINT32_MAX) return ObjectId{id};
  object_names_.push_back(name);
  return ObjectId{static_cast<uint32_t>(object_names_.size() - 1)};
}

std::optional<ConceptId> DlSignature::find_concept(const std::string& name) const {
  uint32_t id = find_in(concept_names_, name);
  if (id == UINT32_MAX) return std::nullopt;
  return ConceptId{id};
}

std::optional<RoleId> DlSignature::find_role(const std::string& name) const {
  uint32_t id = find_in(role_names_, name);
  if (id == UINT32_MAX) return std::nullopt;
  return RoleId{id};
}

std::optional<ObjectId> DlSignature::find_object(const std::string& name) const {
  uint32_t id = find_in(object_names_, name);
  if (id == UINT32_MAX) return std::nullopt;
  return ObjectId{id};
}

const std::string& DlSignature::concept_name(ConceptId id) const {
  if (id.value >= concept_names_.size()) throw Error("unknown concept name id");
  return concept_names_[id.value];
}

const std::string& DlSignature::role_name(RoleId id) const {
  if (id.value >= role_names_.size()) throw Error("unknown role name id");
  return role_names_[id.value];
}

const std::string& DlSignature::object_name(ObjectId id) const {
  if (id.value >= object_names_.size()) throw Error("unknown object name id");
  return object_names_[id.value];
}

bool DlSignature::extends(const DlSignature& inner) const {
  auto prefix = [](const std::vector<std::string>& outer,
                   const std::vector<std::string>& in) {
    return in.size() <= outer.size() &&
           std::equal(in.begin(), in.end(), outer.begin());
  };
  return prefix(concept_names_, inner.concept_names_) &&
         prefix(role_names_, inner.role_names_) &&
         prefix(object_names_, inner.object_names_);
}

struct Role::Node {
  Kind kind;
  RoleId name{0};
  std::shared_ptr<const Node> a, b;
};

Role::Kind Role::kind() const { return node_->kind; }

Role Role::atomic(RoleId r) {
  return Role(std::make_shared<const Node>(Node{Kind::atomic, r, nullptr, nullptr}));
}

Role Role::inverse(Role inner) {
  return Role(std::make_shared<const Node>(
      Node{Kind::inverse, RoleId{0}, std::move(inner.node_), nullptr}));
}

Role Role::compose(Role left, Role right) {
  return Role(std::make_shared<const Node>(Node{
      Kind::compose, RoleId{0}, std::move(left.node_), std::move(right.node_)}));
}

RoleId Role::role_name() const {
  if (node_->kind != Kind::atomic) throw Error("role is not atomic");
  return node_->name;
}

Role Role::inner() const {
  if (node_->kind != Kind::inverse) throw Error("role is not an inverse");
  return Role(node_->a);
}

Role Role::left() const {
  if (node_->kind != Kind::compose) throw Error("role is not a composition");
  return Role(node_->a);
}

Role Role::right() const {
  if (node_->kind != Kind::compose) throw Error("role is not a composition");
  return Role(node_->b);
}

bool Role::operator==(const Role& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::atomic:
      return node_->name == other.node_->name;
    case Kind::inverse:
      return Role(node_->a) == Role(other.node_->a);
    case Kind::compose:
      return Role(node_->a) == Role(other.node_->a) &&
             Role(node_->b) == Role(other.node_->b);
  }
  return false;
}

struct Concept::Node {
  Kind kind;
  ConceptId name{0};
  std::vector<ObjectId> objects;
  uint32_t n = 0;
  std::optional<Role> role;
  std::shared_ptr<const Node> a, b;
};

Concept::Kind Concept::kind() const { return node_->kind; }

Concept Concept::top() {
  static const Concept instance(std::make_shared<const Node>(Node{
      Kind::top, ConceptId{0}, {}, 0, std::nullopt, nullptr, nullptr}));
  return instance;
}

Concept Concept::atomic(ConceptId name) {
  return Concept(std::make_shared<const Node>(
      Node{Kind::atomic, name, {}, 0, std::nullopt, nullptr, nullptr}));
}

Concept Concept::nominal(std::vector<ObjectId> objects) {
  if (objects.empty()) throw Error("nominal requires at least one object");
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  return Concept(std::make_shared<const Node>(Node{
      Kind::nominal, ConceptId{0}, std::move(objects), 0, std::nullopt,
      nullptr, nullptr}));
}

Concept Concept::neg(Concept inner) {
  // Double negations collapse at construction, keeping one canonical tree
  // per formula and making serialization a structural inverse of parsing.
  if (inner.node_->kind == Kind::neg) return Concept(inner.node_->a);
  return Concept(std::make_shared<const Node>(
      Node{Kind::neg, ConceptId{0}, {}, 0, std::nullopt,
           std::move(inner.node_), nullptr}));
}

Concept Concept::conj(Concept left, Concept right) {
  return Concept(std::make_shared<const Node>(
      Node{Kind::conj, ConceptId{0}, {}, 0, std::nullopt,
           std::move(left.node_), std::move(right.node_)}));
}

Concept Concept::at_least(uint32_t n, Role role, Concept inner) {
  if (n < 1) throw Error("at_least requires n >= 1");
  return Concept(std::make_shared<const Node>(
      Node{Kind::at_least, ConceptId{0}, {}, n, std::move(role),
           std::move(inner.node_), nullptr}));
}

Concept Concept::bottom() { return neg(top()); }

Concept Concept::disj(Concept left, Concept right) {
  return neg(conj(neg(std::move(left)), neg(std::move(right))));
}

Concept Concept::exists(Role role, Concept inner) {
  return at_least(1, std::move(role), std::move(inner));
}

Concept Concept::forall(Role role, Concept inner) {
  return neg(at_least(1, std::move(role), neg(std::move(inner))));
}

Concept Concept::at_most(uint32_t n, Role role, Concept inner) {
  return neg(at_least(n + 1, std::move(role), std::move(inner)));
}

Concept Concept::exactly(uint32_t n, Role role, Concept inner) {
  if (n == 0) return at_most(0, std::move(role), std::move(inner));
  // Sequence explicitly: argument evaluation order would let the move race
  // the copy.
  Concept lower = at_least(n, role, inner);
  Concept upper = at_most(n, std::move(role), std::move(inner));
  return conj(std::move(lower), std::move(upper));
}

ConceptId Concept::concept_name() const {
  if (node_->kind != Kind::atomic) throw Error("concept is not atomic");
  return node_->name;
}

const std::vector<ObjectId>& Concept::objects() const {
  if (node_->kind != Kind::nominal) throw Error("concept is not a nominal");
  return node_->objects;
}

Concept Concept::inner() const {
  switch (node_->kind) {
    case Kind::neg:
    case Kind::at_least:
      return Concept(node_->a);
    default:
      throw Error("concept has no inner expression");
  }
}

Concept Concept::left() const {
  if (node_->kind != Kind::conj) throw Error("concept is not a conjunction");
  return Concept(node_->a);
}

Concept Concept::right() const {
  if (node_->kind != Kind::conj) throw Error("concept is not a conjunction");
  return Concept(node_->b);
}

uint32_t Concept::count() const {
  if (node_->kind != Kind::at_least)
    throw Error("concept is not a number restriction");
  return node_->n;
}

Role Concept::role() const {
  if (node_->kind != Kind::at_least)
    throw Error("concept is not a number restriction");
  return *node_->role;
}

bool Concept::operator==(const Concept& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::top:
      return true;
    case Kind::atomic:
      return node_->name == other.node_->name;
    case Kind::nominal:
      return node_->objects == other.node_->objects;
    case Kind::neg:
      return Concept(node_->a) == Concept(other.node_->a);
    case Kind::conj:
      return Concept(node_->a) == Concept(other.node_->a) &&
             Concept(node_->b) == Concept(other.node_->b);
    case Kind::at_least:
      return node_->n == other.node_->n && *node_->role == *other.node_->role &&
             Concept(node_->a) == Concept(other.node_->a);
  }
  return false;
}

namespace {
std::atomic<uint64_t> next_origin{1};
}

Axiom Axiom::subsumption(Concept lhs, Concept rhs) {
  return Axiom(Kind::subsumption, {std::move(lhs), std::move(rhs)},
               std::nullopt, {}, std::nullopt);
}

std::pair<Axiom, Axiom> Axiom::equivalence(Concept lhs, Concept rhs) {
  uint64_t origin = next_origin.fetch_add(1);
  Axiom forward(Kind::subsumption, {lhs, rhs}, std::nullopt, {}, origin);
  Axiom backward(Kind::subsumption, {std::move(rhs), std::move(lhs)},
                 std::nullopt, {}, origin);
  return {std::move(forward), std::move(backward)};
}

Axiom Axiom::concept_assertion(ObjectId object, Concept asserted) {
  return Axiom(Kind::concept_assertion, {std::move(asserted)}, std::nullopt,
               {object}, std::nullopt);
}

Axiom Axiom::role_assertion(ObjectId subject, ObjectId object, Role role) {
  return Axiom(Kind::role_assertion, {}, std::move(role), {subject, object},
               std::nullopt);
}

const Concept& Axiom::lhs() const {
  if (kind_ != Kind::subsumption) throw Error("axiom is not a subsumption");
  return concepts_[0];
}

const Concept& Axiom::rhs() const {
  if (kind_ != Kind::subsumption) throw Error("axiom is not a subsumption");
  return concepts_[1];
}

ObjectId Axiom::subject() const {
  if (kind_ != Kind::role_assertion) throw Error("axiom is not a role assertion");
  return objects_[0];
}

ObjectId Axiom::object() const {
  if (kind_ == Kind::concept_assertion) return objects_[0];
  if (kind_ == Kind::role_assertion) return objects_[1];
  throw Error("axiom has no object");
}

const Concept& Axiom::asserted() const {
  if (kind_ != Kind::concept_assertion)
    throw Error("axiom is not a concept assertion");
  return concepts_[0];
}

const Role& Axiom::role() const {
  if (kind_ != Kind::role_assertion) throw Error("axiom is not a role assertion");
  return *role_;
}

bool Axiom::operator==(const Axiom& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::subsumption:
      return concepts_[0] == other.concepts_[0] &&
             concepts_[1] == other.concepts_[1];
    case Kind::concept_assertion:
      return objects_ == other.objects_ && concepts_[0] == other.concepts_[0];
    case Kind::role_assertion:
      return objects_ == other.objects_ && *role_ == *other.role_;
  }
  return false;
}

namespace {

void validate_role(const Role& r, const DlSignature& sig) {
  switch (r.kind()) {
    case Role::Kind::atomic:
      if (r.role_name().value >= sig.role_count())
        throw Error("axiom uses a role name outside the signature");
      return;
    case Role::Kind::inverse:
      validate_role(r.inner(), sig);
      return;
    case Role::Kind::compose:
      validate_role(r.left(), sig);
      validate_role(r.right(), sig);
      return;
  }
}

void validate_concept(const Concept& c, const DlSignature& sig) {
  switch (c.kind()) {
    case Concept::Kind::top:
      return;
    case Concept::Kind::atomic:
      if (c.concept_name().value >= sig.concept_count())
        throw Error("axiom uses a concept name outside the signature");
      return;
    case Concept::Kind::nominal:
      for (ObjectId o : c.objects())
        if (o.value >= sig.object_count())
          throw Error("axiom uses an object name outside the signature");
      return;
    case Concept::Kind::neg:
      validate_concept(c.inner(), sig);
      return;
    case Concept::Kind::conj:
      validate_concept(c.left(), sig);
      validate_concept(c.right(), sig);
      return;
    case Concept::Kind::at_least:
      validate_role(c.role(), sig);
      validate_concept(c.inner(), sig);
      return;
  }
}

}  // namespace

KnowledgeBase KnowledgeBase::make(DlSignature signature,
                                  std::vector<Axiom> axioms) {
  for (const Axiom& ax : axioms) {
    switch (ax.kind()) {
      case Axiom::Kind::subsumption:
        validate_concept(ax.lhs(), signature);
        validate_concept(ax.rhs(), signature);
        break;
      case Axiom::Kind::concept_assertion:
        if (ax.object().value >= signature.object_count())
          throw Error("axiom uses an object name outside the signature");
        validate_concept(ax.asserted(), signature);
        break;
      case Axiom::Kind::role_assertion:
        if (ax.subject().value >= signature.object_count() ||
            ax.object().value >= signature.object_count())
          throw Error("axiom uses an object name outside the signature");
        validate_role(ax.role(), signature);
        break;
    }
  }
  return KnowledgeBase(std::move(signature), std::move(axioms));
}

Interpretation Interpretation::make(
    DlSignature signature, uint32_t universe_size,
    std::vector<Element> object_elements,
    std::vector<std::vector<Element>> concept_elements,
    std::vector<std::vector<ElementPair>> role_pairs) {
  if (universe_size == 0) throw Error("interpretation universe must be non-empty");
  if (object_elements.size() != signature.object_count())
    throw Error("object map must be total over the signature");
  if (concept_elements.size() != signature.concept_count())
    throw Error("concept map must cover the signature");
  if (role_pairs.size() != signature.role_count())
    throw Error("role map must cover the signature");
  for (Element e : object_elements)
    if (e >= universe_size) throw Error("object mapped outside the universe");
  for (auto& elems : concept_elements) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (Element e : elems)
      if (e >= universe_size) throw Error("concept extension outside the universe");
  }
  for (auto& pairs : role_pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const ElementPair& p : pairs)
      if (p.first >= universe_size || p.second >= universe_size)
        throw Error("role extension outside the universe");
  }
  return Interpretation(std::move(signature), universe_size,
                        std::move(object_elements), std::move(concept_elements),
                        std::move(role_pairs));
}

Interpretation::Element Interpretation::object_element(ObjectId o) const {
  if (o.value >= object_elements_.size())
    throw Error("unknown object name in interpretation");
  return object_elements_[o.value];
}

const std::vector<Interpretation::Element>& Interpretation::concept_elements(
    ConceptId c) const {
  if (c.value >= concept_elements_.size())
    throw Error("unknown concept name in interpretation");
  return concept_elements_[c.value];
}

const std::vector<Interpretation::ElementPair>& Interpretation::role_pairs(
    RoleId r) const {
  if (r.value >= role_pairs_.size())
    throw Error("unknown role name in interpretation");
  return role_pairs_[r.value];
}

std::vector<Interpretation::ElementPair> interpret_role(const Interpretation& I,
                                                        const Role& r) {
  using Pair = Interpretation::ElementPair;
  std::vector<Pair> out;
  switch (r.kind()) {
    case Role::Kind::atomic:
      out = I.role_pairs(r.role_name());
      break;
    case Role::Kind::inverse: {
      for (const Pair& p : interpret_role(I, r.inner()))
        out.emplace_back(p.second, p.first);
      break;
    }
    case Role::Kind::compose: {
      std::vector<Pair> left = interpret_role(I, r.left());
      std::vector<Pair> right = interpret_role(I, r.right());
      std::sort(right.begin(), right.end());
      for (const Pair& l : left) {
        auto lo = std::lower_bound(right.begin(), right.end(),
                                   Pair{l.second, 0});
        for (auto it = lo; it != right.end() && it->first == l.second; ++it)
          out.emplace_back(l.first, it->second);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Interpretation::Element> interpret_concept(const Interpretation& I,
                                                       const Concept& c) {
  using Element = Interpretation::Element;
  std::vector<Element> out;
  switch (c.kind()) {
    case Concept::Kind::top: {
      out.resize(I.universe_size());
      for (Element e = 0; e < I.universe_size(); ++e) out[e] = e;
      break;
    }
    case Concept::Kind::atomic:
      out = I.concept_elements(c.concept_name());
      break;
    case Concept::Kind::nominal: {
      for (ObjectId o : c.objects()) out.push_back(I.object_element(o));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
    }
    case Concept::Kind::neg: {
      std::vector<Element> in = interpret_concept(I, c.inner());
      std::vector<bool> member(I.universe_size(), false);
      for (Element e : in) member[e] = true;
      for (Element e = 0; e < I.universe_size(); ++e)
        if (!member[e]) out.push_back(e);
      break;
    }
    case Concept::Kind::conj: {
      std::vector<Element> a = interpret_concept(I, c.left());
      std::vector<Element> b = interpret_concept(I, c.right());
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(out));
      break;
    }
    case Concept::Kind::at_least: {
      std::vector<Interpretation::ElementPair> pairs =
          interpret_role(I, c.role());
      std::vector<Element> qualifier = interpret_concept(I, c.inner());
      std::vector<bool> qual(I.universe_size(), false);
      for (Element e : qualifier) qual[e] = true;
      std::vector<uint32_t> counts(I.universe_size(), 0);
      for (const auto& [from, to] : pairs)
        if (qual[to]) ++counts[from];
      for (Element e = 0; e < I.universe_size(); ++e)
        if (counts[e] >= c.count()) out.push_back(e);
      break;
    }
  }
  return out;
}

ModelCheck check_model(const Interpretation& I, const KnowledgeBase& K) {
  if (!I.signature().extends(K.signature()))
    throw Error("interpretation signature does not cover the knowledge base");
  for (size_t i = 0; i < K.axioms().size(); ++i) {
    const Axiom& ax = K.axioms()[i];
    bool holds = true;
    switch (ax.kind()) {
      case Axiom::Kind::subsumption: {
        std::vector<uint32_t> lhs = interpret_concept(I, ax.lhs());
        std::vector<uint32_t> rhs = interpret_concept(I, ax.rhs());
        holds = std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end());
        break;
      }
      case Axiom::Kind::concept_assertion: {
        std::vector<uint32_t> ext = interpret_concept(I, ax.asserted());
        holds = std::binary_search(ext.begin(), ext.end(),
                                   I.object_element(ax.object()));
        break;
      }
      case Axiom::Kind::role_assertion: {
        std::vector<Interpretation::ElementPair> ext =
            interpret_role(I, ax.role());
        Interpretation::ElementPair pair{I.object_element(ax.subject()),
                                         I.object_element(ax.object())};
        holds = std::binary_search(ext.begin(), ext.end(), pair);
        break;
      }
    }
    if (!holds) return {false, i};
  }
  return {true, std::nullopt};
}

namespace {

// The core encoding has no Or or AtMost variant: Not(And(..)) is the
// disjunction and Not(AtLeast(..)) the upper bound, so those negations stay.
// Everything else is normalized: double negations vanish and operands are
// recursively in normal form.
Concept nnf_impl(const Concept& c, bool negated) {
  switch (c.kind()) {
    case Concept::Kind::top:
    case Concept::Kind::atomic:
    case Concept::Kind::nominal:
      return negated ? Concept::neg(c) : c;
    case Concept::Kind::neg:
      return nnf_impl(c.inner(), !negated);
    case Concept::Kind::conj: {
      Concept rebuilt = Concept::conj(nnf_impl(c.left(), false),
                                      nnf_impl(c.right(), false));
      return negated ? Concept::neg(std::move(rebuilt)) : rebuilt;
    }
    case Concept::Kind::at_least: {
      Concept rebuilt =
          Concept::at_least(c.count(), c.role(), nnf_impl(c.inner(), false));
      return negated ? Concept::neg(std::move(rebuilt)) : rebuilt;
    }
  }
  throw Error("unreachable concept kind");
}

}  // namespace

Concept nnf(const Concept& c) { return nnf_impl(c, false); }

namespace {

bool role_has_inverse(const Role& r) {
  switch (r.kind()) {
    case Role::Kind::atomic:
      return false;
    case Role::Kind::inverse:
      return true;
    case Role::Kind::compose:
      return role_has_inverse(r.left()) || role_has_inverse(r.right());
  }
  return false;
}

bool role_has_compose(const Role& r) {
  switch (r.kind()) {
    case Role::Kind::atomic:
      return false;
    case Role::Kind::inverse:
      return role_has_compose(r.inner());
    case Role::Kind::compose:
      return true;
  }
  return false;
}

struct FragmentScan {
  bool inverse = false;
  bool compose = false;
  bool counting_over_compose = false;
};

void scan_concept(const Concept& c, FragmentScan& scan) {
  switch (c.kind()) {
    case Concept::Kind::top:
    case Concept::Kind::atomic:
    case Concept::Kind::nominal:
      return;
    case Concept::Kind::neg:
      scan_concept(c.inner(), scan);
      return;
    case Concept::Kind::conj:
      scan_concept(c.left(), scan);
      scan_concept(c.right(), scan);
      return;
    case Concept::Kind::at_least: {
      Role r = c.role();
      scan.inverse = scan.inverse || role_has_inverse(r);
      bool composed = role_has_compose(r);
      scan.compose = scan.compose || composed;
      if (composed && c.count() >= 2) scan.counting_over_compose = true;
      scan_concept(c.inner(), scan);
      return;
    }
  }
}

void scan_role(const Role& r, FragmentScan& scan) {
  scan.inverse = scan.inverse || role_has_inverse(r);
  scan.compose = scan.compose || role_has_compose(r);
}

}  // namespace

DlFragment dl_fragment(const KnowledgeBase& K) {
  FragmentScan scan;
  for (const Axiom& ax : K.axioms()) {
    switch (ax.kind()) {
      case Axiom::Kind::subsumption:
        scan_concept(ax.lhs(), scan);
        scan_concept(ax.rhs(), scan);
        break;
      case Axiom::Kind::concept_assertion:
        scan_concept(ax.asserted(), scan);
        break;
      case Axiom::Kind::role_assertion:
        scan_role(ax.role(), scan);
        break;
    }
  }
  if (scan.counting_over_compose) return DlFragment::alcoiq_composition;
  if (scan.inverse || scan.compose) return DlFragment::sroiq_expressible;
  return DlFragment::alcoq;
}

const char* to_string(DlFragment f) {
  switch (f) {
    case DlFragment::alcoq:
      return "ALCOQ";
    case DlFragment::sroiq_expressible:
      return "SROIQ-expressible";
    case DlFragment::alcoiq_composition:
      return "ALCOIQ-with-composition";
  }
  return "unknown";
}

}  // namespace shaclcheck
