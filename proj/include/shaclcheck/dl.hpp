#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shaclcheck {

// Strong ids into a DlSignature: concept names N_A, role names N_P, object
// names N_O.
struct ConceptId {
  uint32_t value;
  auto operator<=>(const ConceptId&) const = default;
};
struct RoleId {
  uint32_t value;
  auto operator<=>(const RoleId&) const = default;
};
struct ObjectId {
  uint32_t value;
  auto operator<=>(const ObjectId&) const = default;
};

// Signature of a knowledge base: three independent name partitions.
class DlSignature {
 public:
  ConceptId intern_concept(const std::string& name);
  RoleId intern_role(const std::string& name);
  ObjectId intern_object(const std::string& name);

  std::optional<ConceptId> find_concept(const std::string& name) const;
  std::optional<RoleId> find_role(const std::string& name) const;
  std::optional<ObjectId> find_object(const std::string& name) const;

  const std::string& concept_name(ConceptId id) const;
  const std::string& role_name(RoleId id) const;
  const std::string& object_name(ObjectId id) const;

  uint32_t concept_count() const { return static_cast<uint32_t>(concept_names_.size()); }
  uint32_t role_count() const { return static_cast<uint32_t>(role_names_.size()); }
  uint32_t object_count() const { return static_cast<uint32_t>(object_names_.size()); }

  // True when every name of `inner` is interned here with the same id (this
  // signature extends `inner`). Used as the coverage check between a
  // knowledge base and an interpretation.
  bool extends(const DlSignature& inner) const;

 private:
  std::vector<std::string> concept_names_, role_names_, object_names_;
};

// Role expression: atomic property, inverse, or composition. Immutable tree.
class Role {
 public:
  enum class Kind { atomic, inverse, compose };

  static Role atomic(RoleId r);
  static Role inverse(Role inner);
  static Role compose(Role left, Role right);

  Kind kind() const;
  RoleId role_name() const;
  Role inner() const;
  Role left() const;
  Role right() const;

  bool operator==(const Role& other) const;
  // Stable identity of the shared node, usable as a memoization key.
  const void* cache_key() const { return node_.get(); }

 private:
  struct Node;
  explicit Role(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Concept expression. Core variants: Top, Atomic, Nominal (a non-empty set
// of objects), Not, And, AtLeast(n >= 1). Derived operators desugar at
// construction:
//   bottom()          = Not(Top)
//   disj(a, b)        = Not(And(Not a, Not b))   (double negations elided)
//   exists(r, c)      = AtLeast(1, r, c)
//   forall(r, c)      = Not(AtLeast(1, r, Not c))
//   at_most(n, r, c)  = Not(AtLeast(n+1, r, c))
//   exactly(n, r, c)  = And(AtLeast(n,...), at_most(n,...)); n = 0 gives
//                       at_most(0,...) alone
class Concept {
 public:
  enum class Kind { top, atomic, nominal, neg, conj, at_least };

  static Concept top();
  static Concept atomic(ConceptId name);
  static Concept nominal(std::vector<ObjectId> objects);  // sorted, deduped, non-empty
  static Concept neg(Concept inner);
  static Concept conj(Concept left, Concept right);
  static Concept at_least(uint32_t n, Role role, Concept inner);  // n >= 1

  static Concept bottom();
  static Concept disj(Concept left, Concept right);
  static Concept exists(Role role, Concept inner);
  static Concept forall(Role role, Concept inner);
  static Concept at_most(uint32_t n, Role role, Concept inner);
  static Concept exactly(uint32_t n, Role role, Concept inner);

  Kind kind() const;
  ConceptId concept_name() const;
  const std::vector<ObjectId>& objects() const;
  Concept inner() const;
  Concept left() const;
  Concept right() const;
  uint32_t count() const;
  Role role() const;

  bool operator==(const Concept& other) const;
  const void* cache_key() const { return node_.get(); }

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Axiom: concept inclusion, concept assertion, or role assertion. An
// equivalence C == D is sugar for the two inclusions C <= D and D <= C; the
// pair shares a fresh origin id so serializers can re-fuse it.
class Axiom {
 public:
  enum class Kind { subsumption, concept_assertion, role_assertion };

  static Axiom subsumption(Concept lhs, Concept rhs);
  static std::pair<Axiom, Axiom> equivalence(Concept lhs, Concept rhs);
  static Axiom concept_assertion(ObjectId object, Concept asserted);
  static Axiom role_assertion(ObjectId subject, ObjectId object, Role role);

  Kind kind() const { return kind_; }
  const Concept& lhs() const;
  const Concept& rhs() const;
  ObjectId subject() const;
  ObjectId object() const;
  const Concept& asserted() const;
  const Role& role() const;
  // Present iff the axiom is one half of an equivalence.
  std::optional<uint64_t> origin() const { return origin_; }

  bool operator==(const Axiom& other) const;

 private:
  Axiom(Kind kind, std::vector<Concept> concepts, std::optional<Role> role,
        std::vector<ObjectId> objects, std::optional<uint64_t> origin)
      : kind_(kind),
        concepts_(std::move(concepts)),
        role_(std::move(role)),
        objects_(std::move(objects)),
        origin_(origin) {}
  Kind kind_;
  std::vector<Concept> concepts_;
  std::optional<Role> role_;
  std::vector<ObjectId> objects_;
  std::optional<uint64_t> origin_;
};

// A knowledge base: signature plus an ordered list of axioms. Construction
// validates that every id used by an axiom lies within the signature.
class KnowledgeBase {
 public:
  static KnowledgeBase make(DlSignature signature, std::vector<Axiom> axioms);

  const DlSignature& signature() const { return signature_; }
  const std::vector<Axiom>& axioms() const { return axioms_; }

 private:
  KnowledgeBase(DlSignature signature, std::vector<Axiom> axioms)
      : signature_(std::move(signature)), axioms_(std::move(axioms)) {}
  DlSignature signature_;
  std::vector<Axiom> axioms_;
};

// A finite interpretation: universe {0, ..., size-1} (non-empty), a total
// object map, and per-name concept/role extensions. All maps are dense over
// the carried signature.
class Interpretation {
 public:
  using Element = uint32_t;
  using ElementPair = std::pair<Element, Element>;

  static Interpretation make(
      DlSignature signature, uint32_t universe_size,
      std::vector<Element> object_elements,
      std::vector<std::vector<Element>> concept_elements,
      std::vector<std::vector<ElementPair>> role_pairs);

  const DlSignature& signature() const { return signature_; }
  uint32_t universe_size() const { return universe_size_; }
  Element object_element(ObjectId o) const;
  const std::vector<Element>& concept_elements(ConceptId c) const;
  const std::vector<ElementPair>& role_pairs(RoleId r) const;

 private:
  Interpretation(DlSignature signature, uint32_t universe_size,
                 std::vector<Element> object_elements,
                 std::vector<std::vector<Element>> concept_elements,
                 std::vector<std::vector<ElementPair>> role_pairs)
      : signature_(std::move(signature)),
        universe_size_(universe_size),
        object_elements_(std::move(object_elements)),
        concept_elements_(std::move(concept_elements)),
        role_pairs_(std::move(role_pairs)) {}
  DlSignature signature_;
  uint32_t universe_size_;
  std::vector<Element> object_elements_;
  std::vector<std::vector<Element>> concept_elements_;
  std::vector<std::vector<ElementPair>> role_pairs_;
};

// Tarskian semantics. Names must be interned in I's signature (ids in
// range); violations raise Error.
std::vector<Interpretation::ElementPair> interpret_role(const Interpretation& I,
                                                        const Role& r);
std::vector<Interpretation::Element> interpret_concept(const Interpretation& I,
                                                       const Concept& c);

struct ModelCheck {
  bool satisfied;
  // Index into the knowledge base's axiom list of the first failing axiom,
  // present iff not satisfied.
  std::optional<size_t> failing_axiom;
};

// True iff I satisfies every axiom of K. Requires I's signature to extend
// K's (same names, same ids, possibly more).
ModelCheck check_model(const Interpretation& I, const KnowledgeBase& K);

// Negation normal form in the core encoding: double negations eliminated;
// remaining negations sit directly above Atomic, Nominal, Top (encoding
// Bottom), And (encoding Or), or AtLeast (encoding AtMost). Semantics are
// preserved on every interpretation.
Concept nnf(const Concept& c);

enum class DlFragment { alcoq, sroiq_expressible, alcoiq_composition };

// alcoq: no inverse, no composition anywhere. sroiq_expressible: any
// composition occurs only under AtLeast(1, ., .), where it expands exactly
// into nested existentials. alcoiq_composition: counting (n >= 2) over a
// composed role.
DlFragment dl_fragment(const KnowledgeBase& K);

const char* to_string(DlFragment f);

}  // namespace shaclcheck
