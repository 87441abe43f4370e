#include "shaclcheck/graph.hpp"

#include <algorithm>

#include "shaclcheck/error.hpp"

namespace shaclcheck {

RdfGraph RdfGraph::make(std::vector<NodeId> nodes, std::vector<Triple> triples,
                        SymbolTable& table) {
  for (const Triple& t : triples) {
    nodes.push_back(t.subject);
    nodes.push_back(t.object);
    if (t.predicate == SymbolTable::type_property()) table.mark_class(t.object);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  RdfGraph g;
  g.nodes_ = std::move(nodes);
  g.triples_ = std::move(triples);
  return g;
}

bool RdfGraph::has_node(NodeId v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

size_t RdfGraph::node_index(NodeId v) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it == nodes_.end() || *it != v) throw Error("node not in graph");
  return static_cast<size_t>(it - nodes_.begin());
}

Assignment::Assignment(const RdfGraph& graph, std::vector<ShapeId> shape_names)
    : nodes_(graph.nodes()), shape_names_(std::move(shape_names)) {
  std::sort(shape_names_.begin(), shape_names_.end());
  bits_.assign((nodes_.size() * shape_names_.size() + 63) / 64, 0);
}

Assignment Assignment::from_index(const RdfGraph& graph,
                                  std::vector<ShapeId> shape_names,
                                  uint64_t pattern) {
  Assignment a(graph, std::move(shape_names));
  a.load_pattern(pattern);
  return a;
}

void Assignment::load_pattern(uint64_t pattern) {
  if (bit_count() > 63 && pattern != 0)
    throw Error("assignment pattern index limited to 63 bits");
  std::fill(bits_.begin(), bits_.end(), 0);
  if (!bits_.empty()) bits_[0] = pattern;
}

size_t Assignment::bit_index(NodeId v, ShapeId s) const {
  auto nit = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (nit == nodes_.end() || *nit != v)
    throw Error("assignment: node not in graph");
  auto sit = std::lower_bound(shape_names_.begin(), shape_names_.end(), s);
  if (sit == shape_names_.end() || *sit != s)
    throw Error("assignment: shape not in shape list");
  return static_cast<size_t>(nit - nodes_.begin()) * shape_names_.size() +
         static_cast<size_t>(sit - shape_names_.begin());
}

bool Assignment::contains(NodeId v, ShapeId s) const {
  size_t i = bit_index(v, s);
  return (bits_[i / 64] >> (i % 64)) & 1;
}

void Assignment::set(NodeId v, ShapeId s, bool value) {
  size_t i = bit_index(v, s);
  if (value)
    bits_[i / 64] |= uint64_t{1} << (i % 64);
  else
    bits_[i / 64] &= ~(uint64_t{1} << (i % 64));
}

std::vector<ShapeId> Assignment::shapes_at(NodeId v) const {
  std::vector<ShapeId> out;
  for (ShapeId s : shape_names_)
    if (contains(v, s)) out.push_back(s);
  return out;
}

}  // namespace shaclcheck
