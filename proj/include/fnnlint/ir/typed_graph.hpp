#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fnnlint/ir/value.hpp"

namespace fnnlint::ir {

using NodeId = std::size_t;
using EdgeId = std::size_t;
using AttrMap = std::map<std::string, AttrValue, std::less<>>;

struct Node {
  std::string kind;
  AttrMap attrs;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId src = 0;
  std::string label;
  NodeId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Attributed instance graph. Ids are dense and stable: elements are only
/// ever added, never removed, so an id stays valid for the graph's lifetime.
/// Kinds and edge triples are not checked here; see check_conformance.
class TypedGraph {
public:
  NodeId add_node(std::string kind, AttrMap attrs = {});
  EdgeId add_edge(NodeId src, std::string label, NodeId dst);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  std::span<const EdgeId> out_edges(NodeId id) const { return out_.at(id); }
  std::span<const EdgeId> in_edges(NodeId id) const { return in_.at(id); }

  const AttrValue* attr(NodeId id, std::string_view name) const;
  void set_attr(NodeId id, std::string name, AttrValue value);
  bool erase_attr(NodeId id, std::string_view name);

  std::vector<NodeId> nodes_of_kind(std::string_view kind) const;
  bool has_edge(NodeId src, std::string_view label, NodeId dst) const;
  /// Targets of out-edges with the given label, in edge-id order.
  std::vector<NodeId> successors(NodeId id, std::string_view label) const;
  std::vector<NodeId> predecessors(NodeId id, std::string_view label) const;

  friend bool operator==(const TypedGraph& a, const TypedGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

template <typename T>
std::optional<T> get_attr(const TypedGraph& g, NodeId id, std::string_view name) {
  const AttrValue* v = g.attr(id, name);
  if (v == nullptr) return std::nullopt;
  if (const T* x = std::get_if<T>(v)) return *x;
  return std::nullopt;
}

}  // namespace fnnlint::ir
