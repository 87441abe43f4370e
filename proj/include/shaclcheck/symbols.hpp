#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shaclcheck {

// Interned identifiers. Three disjoint partitions: graph nodes (which double
// as individuals, literals, and classes), properties, and shape names.
// Ordering on ids is the canonical order used for all deterministic output.
struct NodeId {
  uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};
struct PropertyId {
  uint32_t value = 0;
  auto operator<=>(const PropertyId&) const = default;
};
struct ShapeId {
  uint32_t value = 0;
  auto operator<=>(const ShapeId&) const = default;
};

// Interning table. Single writer: interning mutates, lookups are const.
// The property partition pre-interns "type" at index 0; class-instance
// edges are ordinary triples over it.
class SymbolTable {
 public:
  SymbolTable();

  NodeId node(std::string_view name);
  PropertyId property(std::string_view name);
  ShapeId shape(std::string_view name);

  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<PropertyId> find_property(std::string_view name) const;
  std::optional<ShapeId> find_shape(std::string_view name) const;

  const std::string& node_name(NodeId id) const;
  const std::string& property_name(PropertyId id) const;
  const std::string& shape_name(ShapeId id) const;

  // Classes are a subset of nodes; marking records that a node was used in
  // class position (target or type-triple object).
  void mark_class(NodeId id);
  bool is_class(NodeId id) const;

  static PropertyId type_property() { return PropertyId{0}; }

  size_t node_count() const { return nodes_.size(); }
  size_t property_count() const { return properties_.size(); }
  size_t shape_count() const { return shapes_.size(); }

 private:
  std::vector<std::string> nodes_;
  std::vector<std::string> properties_;
  std::vector<std::string> shapes_;
  std::vector<bool> class_marks_;
  std::unordered_map<std::string, uint32_t> node_ids_;
  std::unordered_map<std::string, uint32_t> property_ids_;
  std::unordered_map<std::string, uint32_t> shape_ids_;
};

}  // namespace shaclcheck
