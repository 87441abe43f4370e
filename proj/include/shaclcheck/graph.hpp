#pragma once

#include <cstdint>
#include <vector>

#include "shaclcheck/symbols.hpp"

namespace shaclcheck {

struct Triple {
  NodeId subject;
  PropertyId predicate;
  NodeId object;
  auto operator<=>(const Triple&) const = default;
};

// Finite RDF graph: a sorted node set and a sorted, deduplicated triple set.
// Every triple endpoint is a member of the node set (construction unions
// endpoints in). Objects of type-triples are marked as classes.
class RdfGraph {
 public:
  static RdfGraph make(std::vector<NodeId> nodes, std::vector<Triple> triples,
                       SymbolTable& table);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Triple>& triples() const { return triples_; }
  bool has_node(NodeId v) const;
  // Index of a node in the canonical node order.
  size_t node_index(NodeId v) const;
  bool empty() const { return nodes_.empty(); }

 private:
  std::vector<NodeId> nodes_;
  std::vector<Triple> triples_;
};

// Total map from the nodes of a fixed graph to sets of shape names, stored as
// a bit matrix over (node index, shape index). The shape list is the shape
// set's canonical name order. Assignments over the same (graph, shapes) pair
// enumerate canonically by increasing bit-pattern value, where bit
// (node_index * shape_count + shape_index) set means the shape is assigned.
class Assignment {
 public:
  Assignment(const RdfGraph& graph, std::vector<ShapeId> shape_names);

  static Assignment from_index(const RdfGraph& graph,
                               std::vector<ShapeId> shape_names,
                               uint64_t pattern);

  bool contains(NodeId v, ShapeId s) const;
  void set(NodeId v, ShapeId s, bool value);
  std::vector<ShapeId> shapes_at(NodeId v) const;

  // Replaces the whole bit matrix with the given pattern; used by the
  // exhaustive enumerator to avoid reconstructing the vectors per candidate.
  void load_pattern(uint64_t pattern);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<ShapeId>& shape_names() const { return shape_names_; }
  size_t bit_count() const { return nodes_.size() * shape_names_.size(); }

  bool operator==(const Assignment& other) const = default;

 private:
  size_t bit_index(NodeId v, ShapeId s) const;
  std::vector<NodeId> nodes_;
  std::vector<ShapeId> shape_names_;
  std::vector<uint64_t> bits_;
};

}  // namespace shaclcheck
