#include "fnnlint/ir/typed_graph.hpp"

#include <stdexcept>

namespace fnnlint::ir {

NodeId TypedGraph::add_node(std::string kind, AttrMap attrs) {
  nodes_.push_back({std::move(kind), std::move(attrs)});
  out_.emplace_back();
  in_.emplace_back();
  return nodes_.size() - 1;
}

EdgeId TypedGraph::add_edge(NodeId src, std::string label, NodeId dst) {
  if (src >= nodes_.size() || dst >= nodes_.size()) throw std::out_of_range("edge endpoint out of range");
  edges_.push_back({src, std::move(label), dst});
  const EdgeId id = edges_.size() - 1;
  out_[src].push_back(id);
  in_[dst].push_back(id);
  return id;
}

const AttrValue* TypedGraph::attr(NodeId id, std::string_view name) const {
  const auto& attrs = nodes_.at(id).attrs;
  auto it = attrs.find(name);
  return it == attrs.end() ? nullptr : &it->second;
}

void TypedGraph::set_attr(NodeId id, std::string name, AttrValue value) {
  nodes_.at(id).attrs.insert_or_assign(std::move(name), std::move(value));
}

bool TypedGraph::erase_attr(NodeId id, std::string_view name) {
  auto& attrs = nodes_.at(id).attrs;
  auto it = attrs.find(name);
  if (it == attrs.end()) return false;
  attrs.erase(it);
  return true;
}

std::vector<NodeId> TypedGraph::nodes_of_kind(std::string_view kind) const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == kind) out.push_back(i);
  }
  return out;
}

bool TypedGraph::has_edge(NodeId src, std::string_view label, NodeId dst) const {
  for (EdgeId e : out_.at(src)) {
    if (edges_[e].dst == dst && edges_[e].label == label) return true;
  }
  return false;
}

std::vector<NodeId> TypedGraph::successors(NodeId id, std::string_view label) const {
  std::vector<NodeId> out;
  for (EdgeId e : out_.at(id)) {
    if (edges_[e].label == label) out.push_back(edges_[e].dst);
  }
  return out;
}

std::vector<NodeId> TypedGraph::predecessors(NodeId id, std::string_view label) const {
  std::vector<NodeId> out;
  for (EdgeId e : in_.at(id)) {
    if (edges_[e].label == label) out.push_back(edges_[e].src);
  }
  return out;
}

}  // namespace fnnlint::ir
