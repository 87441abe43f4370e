#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "shaclcheck/dl.hpp"

namespace shaclcheck {

// One step of a normalized role chain: an atomic role, possibly inverted.
struct RoleStep {
  RoleId role;
  bool inverted;
  auto operator<=>(const RoleStep&) const = default;
};

// A role in composition normal form: inverses pushed onto atomic steps,
// compositions flattened left to right. Always non-empty.
using NormRole = std::vector<RoleStep>;

NormRole normalize_role(const Role& r);

using NormId = uint32_t;

enum class NormKind {
  top,
  bottom,
  atom,
  neg_atom,
  nominal,      // singleton {o}; multi-object nominals normalize to disj
  neg_nominal,
  conj,         // n-ary, children sorted and deduped
  disj,
  at_least,     // n >= 1, single child
  at_most,      // n >= 0, single child
};

struct NormNode {
  NormKind kind;
  uint32_t name = 0;  // atom/neg_atom: ConceptId; nominal/neg_nominal: ObjectId
  uint32_t n = 0;     // at_least/at_most bound
  NormRole role;      // at_least/at_most
  std::vector<NormId> children;
};

// Hash-consed pool of concepts in negation normal form. Construction
// applies local simplifications: And/Or flattening, unit and complement
// absorption, Top/Bottom identities, and quantifiers over Bottom. Equal ids
// imply structurally equal (hence semantically equal) concepts.
class NormPool {
 public:
  NormPool();

  NormId top() const { return 0; }
  NormId bottom() const { return 1; }
  NormId atom(ConceptId name);
  NormId neg_atom(ConceptId name);
  NormId nominal(ObjectId object);
  NormId neg_nominal(ObjectId object);
  NormId conj(std::vector<NormId> children);
  NormId disj(std::vector<NormId> children);
  NormId at_least(uint32_t n, NormRole role, NormId child);
  NormId at_most(uint32_t n, NormRole role, NormId child);

  // Involutive negation; the result is already in normal form.
  NormId negate(NormId id);

  NormId from_concept(const Concept& c);

  const NormNode& node(NormId id) const { return nodes_[id]; }
  size_t size() const { return nodes_.size(); }

 private:
  NormId intern(NormNode node);

  std::vector<NormNode> nodes_;
  // Structural key -> id. Ordered map keyed by a flattened encoding; volume
  // is small enough that log-time lookups are fine.
  std::map<std::vector<uint64_t>, NormId> index_;
  std::map<NormId, NormId> negation_cache_;
};

}  // namespace shaclcheck
