#include "shaclcheck/symbols.hpp"

#include "shaclcheck/error.hpp"

namespace shaclcheck {

namespace {

uint32_t intern(std::string_view name, std::vector<std::string>& names,
                std::unordered_map<std::string, uint32_t>& ids) {
  auto it = ids.find(std::string(name));
  if (it != ids.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(names.size());
  names.emplace_back(name);
  ids.emplace(std::string(name), id);
  return id;
}

template <typename Id>
std::optional<Id> lookup(std::string_view name,
                         const std::unordered_map<std::string, uint32_t>& ids) {
  auto it = ids.find(std::string(name));
  if (it == ids.end()) return std::nullopt;
  return Id{it->second};
}

}  // namespace

SymbolTable::SymbolTable() { property("type"); }

NodeId SymbolTable::node(std::string_view name) {
  NodeId id{intern(name, nodes_, node_ids_)};
  if (class_marks_.size() < nodes_.size()) class_marks_.resize(nodes_.size());
  return id;
}

PropertyId SymbolTable::property(std::string_view name) {
  return PropertyId{intern(name, properties_, property_ids_)};
}

ShapeId SymbolTable::shape(std::string_view name) {
  return ShapeId{intern(name, shapes_, shape_ids_)};
}

std::optional<NodeId> SymbolTable::find_node(std::string_view name) const {
  return lookup<NodeId>(name, node_ids_);
}

std::optional<PropertyId> SymbolTable::find_property(
    std::string_view name) const {
  return lookup<PropertyId>(name, property_ids_);
}

std::optional<ShapeId> SymbolTable::find_shape(std::string_view name) const {
  return lookup<ShapeId>(name, shape_ids_);
}

const std::string& SymbolTable::node_name(NodeId id) const {
  if (id.value >= nodes_.size()) throw Error("unknown node id");
  return nodes_[id.value];
}

const std::string& SymbolTable::property_name(PropertyId id) const {
  if (id.value >= properties_.size()) throw Error("unknown property id");
  return properties_[id.value];
}

const std::string& SymbolTable::shape_name(ShapeId id) const {
  if (id.value >= shapes_.size()) throw Error("unknown shape id");
  return shapes_[id.value];
}

void SymbolTable::mark_class(NodeId id) {
  if (id.value >= nodes_.size()) throw Error("unknown node id");
  class_marks_[id.value] = true;
}

bool SymbolTable::is_class(NodeId id) const {
  return id.value < class_marks_.size() && class_marks_[id.value];
}

}  // namespace shaclcheck
