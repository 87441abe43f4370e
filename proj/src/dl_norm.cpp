#include "shaclcheck/dl_norm.hpp"

#include <algorithm>

#include "shaclcheck/error.hpp"

namespace shaclcheck {

NormRole normalize_role(const Role& r) {
  switch (r.kind()) {
    case Role::Kind::atomic:
      return {RoleStep{r.role_name(), false}};
    case Role::Kind::inverse: {
      NormRole inner = normalize_role(r.inner());
      std::reverse(inner.begin(), inner.end());
      for (RoleStep& step : inner) step.inverted = !step.inverted;
      return inner;
    }
    case Role::Kind::compose: {
      NormRole left = normalize_role(r.left());
      NormRole right = normalize_role(r.right());
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
  throw Error("unreachable role kind");
}

namespace {

std::vector<uint64_t> node_key(const NormNode& node) {
  std::vector<uint64_t> key;
  key.push_back(static_cast<uint64_t>(node.kind));
  key.push_back(node.name);
  key.push_back(node.n);
  key.push_back(node.role.size());
  for (const RoleStep& step : node.role)
    key.push_back((uint64_t{step.role.value} << 1) | (step.inverted ? 1 : 0));
  for (NormId child : node.children) key.push_back(child);
  return key;
}

}  // namespace

NormPool::NormPool() {
  intern(NormNode{NormKind::top, 0, 0, {}, {}});
  intern(NormNode{NormKind::bottom, 0, 0, {}, {}});
}

NormId NormPool::intern(NormNode node) {
  std::vector<uint64_t> key = node_key(node);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  NormId id = static_cast<NormId>(nodes_.size());
  nodes_.push_back(std::move(node));
  index_.emplace(std::move(key), id);
  return id;
}

NormId NormPool::atom(ConceptId name) {
  return intern(NormNode{NormKind::atom, name.value, 0, {}, {}});
}

NormId NormPool::neg_atom(ConceptId name) {
  return intern(NormNode{NormKind::neg_atom, name.value, 0, {}, {}});
}

NormId NormPool::nominal(ObjectId object) {
  return intern(NormNode{NormKind::nominal, object.value, 0, {}, {}});
}

NormId NormPool::neg_nominal(ObjectId object) {
  return intern(NormNode{NormKind::neg_nominal, object.value, 0, {}, {}});
}

NormId NormPool::conj(std::vector<NormId> children) {
  // Flatten nested conjunctions, drop Top, absorb Bottom.
  std::vector<NormId> flat;
  for (NormId child : children) {
    if (child == top()) continue;
    if (child == bottom()) return bottom();
    if (nodes_[child].kind == NormKind::conj) {
      flat.insert(flat.end(), nodes_[child].children.begin(),
                  nodes_[child].children.end());
    } else {
      flat.push_back(child);
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  for (NormId child : flat)
    if (std::binary_search(flat.begin(), flat.end(), negate(child)))
      return bottom();
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat[0];
  return intern(NormNode{NormKind::conj, 0, 0, {}, std::move(flat)});
}

NormId NormPool::disj(std::vector<NormId> children) {
  std::vector<NormId> flat;
  for (NormId child : children) {
    if (child == bottom()) continue;
    if (child == top()) return top();
    if (nodes_[child].kind == NormKind::disj) {
      flat.insert(flat.end(), nodes_[child].children.begin(),
                  nodes_[child].children.end());
    } else {
      flat.push_back(child);
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  for (NormId child : flat)
    if (std::binary_search(flat.begin(), flat.end(), negate(child)))
      return top();
  if (flat.empty()) return bottom();
  if (flat.size() == 1) return flat[0];
  return intern(NormNode{NormKind::disj, 0, 0, {}, std::move(flat)});
}

NormId NormPool::at_least(uint32_t n, NormRole role, NormId child) {
  if (role.empty()) throw Error("normalized role must be non-empty");
  if (n == 0) return top();
  if (child == bottom()) return bottom();
  return intern(NormNode{NormKind::at_least, 0, n, std::move(role), {child}});
}

NormId NormPool::at_most(uint32_t n, NormRole role, NormId child) {
  if (role.empty()) throw Error("normalized role must be non-empty");
  if (child == bottom()) return top();
  return intern(NormNode{NormKind::at_most, 0, n, std::move(role), {child}});
}

NormId NormPool::negate(NormId id) {
  auto it = negation_cache_.find(id);
  if (it != negation_cache_.end()) return it->second;
  const NormNode node = nodes_[id];  // copy: interning below may reallocate
  NormId result = 0;
  switch (node.kind) {
    case NormKind::top:
      result = bottom();
      break;
    case NormKind::bottom:
      result = top();
      break;
    case NormKind::atom:
      result = neg_atom(ConceptId{node.name});
      break;
    case NormKind::neg_atom:
      result = atom(ConceptId{node.name});
      break;
    case NormKind::nominal:
      result = neg_nominal(ObjectId{node.name});
      break;
    case NormKind::neg_nominal:
      result = nominal(ObjectId{node.name});
      break;
    case NormKind::conj: {
      std::vector<NormId> negated;
      for (NormId child : node.children) negated.push_back(negate(child));
      result = disj(std::move(negated));
      break;
    }
    case NormKind::disj: {
      std::vector<NormId> negated;
      for (NormId child : node.children) negated.push_back(negate(child));
      result = conj(std::move(negated));
      break;
    }
    case NormKind::at_least:
      result = at_most(node.n - 1, node.role, node.children[0]);
      break;
    case NormKind::at_most:
      result = at_least(node.n + 1, node.role, node.children[0]);
      break;
  }
  negation_cache_.emplace(id, result);
  negation_cache_.emplace(result, id);
  return result;
}

NormId NormPool::from_concept(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::top:
      return top();
    case Concept::Kind::atomic:
      return atom(c.concept_name());
    case Concept::Kind::nominal: {
      std::vector<NormId> alternatives;
      for (ObjectId o : c.objects()) alternatives.push_back(nominal(o));
      return disj(std::move(alternatives));
    }
    case Concept::Kind::neg:
      return negate(from_concept(c.inner()));
    case Concept::Kind::conj:
      return conj({from_concept(c.left()), from_concept(c.right())});
    case Concept::Kind::at_least:
      return at_least(c.count(), normalize_role(c.role()),
                      from_concept(c.inner()));
  }
  throw Error("unreachable concept kind");
}

}  // namespace shaclcheck
