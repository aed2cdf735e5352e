#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "fnnlint/ir/value.hpp"

namespace fnnlint::ir {

namespace kinds {
inline constexpr std::string_view kDLProgram = "DLProgram";
inline constexpr std::string_view kArchitecture = "Architecture";
inline constexpr std::string_view kInputLayer = "InputLayer";
inline constexpr std::string_view kLayer = "Layer";
inline constexpr std::string_view kLearner = "Learner";
inline constexpr std::string_view kData = "Data";
inline constexpr std::string_view kLabels = "Labels";
inline constexpr std::string_view kLoss = "Loss";
inline constexpr std::string_view kSmellAnnotation = "SmellAnnotation";
/// Wildcard source kind in an edge triple.
inline constexpr std::string_view kAny = "*";
}  // namespace kinds

namespace labels {
inline constexpr std::string_view kHas = "has";
inline constexpr std::string_view kStartsWith = "startsWith";
inline constexpr std::string_view kNext = "next";
inline constexpr std::string_view kEndsWith = "endsWith";
inline constexpr std::string_view kContains = "contains";
inline constexpr std::string_view kUses = "uses";
inline constexpr std::string_view kFlaggedBy = "flaggedBy";
// Derived by decorate().
inline constexpr std::string_view kValueNext = "value_next";
inline constexpr std::string_view kConvNext = "conv_next";
inline constexpr std::string_view kHasLayer = "hasLayer";
}  // namespace labels

struct AttrDecl {
  std::string name;
  ValueKind kind;
  bool required = false;
};

struct EdgeType {
  std::string src;
  std::string label;
  std::string dst;

  friend auto operator<=>(const EdgeType&, const EdgeType&) = default;
};

/// The meta-model: declared node kinds, edge triples and per-kind attributes.
class TypeGraph {
public:
  void add_node_type(std::string kind);
  /// Throws std::invalid_argument if either endpoint kind is undeclared.
  void add_edge_type(std::string src, std::string label, std::string dst);
  /// Throws std::invalid_argument on an undeclared kind or a duplicate name.
  void declare_attr(const std::string& kind, AttrDecl decl);

  bool has_node_type(std::string_view kind) const;
  bool has_edge_type(std::string_view src, std::string_view label, std::string_view dst) const;
  /// Like has_edge_type but honours the wildcard source kind.
  bool allows_edge(std::string_view src, std::string_view label, std::string_view dst) const;
  const AttrDecl* find_attr(std::string_view kind, std::string_view name) const;
  const std::vector<AttrDecl>& attrs_of(std::string_view kind) const;

  const std::set<std::string, std::less<>>& node_types() const { return node_types_; }
  const std::set<EdgeType>& edge_types() const { return edge_types_; }

private:
  std::set<std::string, std::less<>> node_types_;
  std::set<EdgeType> edge_types_;
  std::map<std::string, std::vector<AttrDecl>, std::less<>> attr_decls_;
};

/// The fixed meta-model for deep feedforward programs.
TypeGraph builtin_metamodel();

/// builtin_metamodel() plus the derived edges and attributes added by
/// gts::decorate (stage structure, value adjacency, architecture counts).
TypeGraph analysis_metamodel();

}  // namespace fnnlint::ir
