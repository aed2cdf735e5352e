#include "fnnlint/ir/type_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace fnnlint::ir {

void TypeGraph::add_node_type(std::string kind) {
  attr_decls_.try_emplace(kind);
  node_types_.insert(std::move(kind));
}

void TypeGraph::add_edge_type(std::string src, std::string label, std::string dst) {
  if (src != kinds::kAny && !has_node_type(src)) {
    throw std::invalid_argument("edge source kind not declared: " + src);
  }
  if (!has_node_type(dst)) throw std::invalid_argument("edge target kind not declared: " + dst);
  edge_types_.insert({std::move(src), std::move(label), std::move(dst)});
}

void TypeGraph::declare_attr(const std::string& kind, AttrDecl decl) {
  auto it = attr_decls_.find(kind);
  if (it == attr_decls_.end()) throw std::invalid_argument("attribute on undeclared kind: " + kind);
  auto& decls = it->second;
  if (std::any_of(decls.begin(), decls.end(), [&](const AttrDecl& d) { return d.name == decl.name; })) {
    throw std::invalid_argument("duplicate attribute " + kind + "." + decl.name);
  }
  decls.push_back(std::move(decl));
}

bool TypeGraph::has_node_type(std::string_view kind) const { return node_types_.find(kind) != node_types_.end(); }

bool TypeGraph::has_edge_type(std::string_view src, std::string_view label, std::string_view dst) const {
  return edge_types_.count(EdgeType{std::string(src), std::string(label), std::string(dst)}) != 0;
}

bool TypeGraph::allows_edge(std::string_view src, std::string_view label, std::string_view dst) const {
  return has_edge_type(src, label, dst) || has_edge_type(kinds::kAny, label, dst);
}

const AttrDecl* TypeGraph::find_attr(std::string_view kind, std::string_view name) const {
  auto it = attr_decls_.find(kind);
  if (it == attr_decls_.end()) return nullptr;
  for (const auto& d : it->second) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const std::vector<AttrDecl>& TypeGraph::attrs_of(std::string_view kind) const {
  static const std::vector<AttrDecl> kEmpty;
  auto it = attr_decls_.find(kind);
  return it == attr_decls_.end() ? kEmpty : it->second;
}

namespace {

void declare_span_attrs(TypeGraph& tg, const std::string& kind) {
  for (const char* n : {"line", "col", "end_line", "end_col"}) {
    tg.declare_attr(kind, {n, ValueKind::Int, false});
  }
}

}  // namespace

TypeGraph builtin_metamodel() {
  using namespace kinds;
  using namespace labels;
  TypeGraph tg;
  for (auto k : {kDLProgram, kArchitecture, kInputLayer, kLayer, kLearner, kData, kLabels, kLoss,
                 kSmellAnnotation}) {
    tg.add_node_type(std::string(k));
  }
  const auto edge = [&tg](std::string_view s, std::string_view l, std::string_view d) {
    tg.add_edge_type(std::string(s), std::string(l), std::string(d));
  };
  edge(kDLProgram, kHas, kArchitecture);
  edge(kDLProgram, kHas, kLearner);
  edge(kDLProgram, kHas, kData);
  edge(kArchitecture, kStartsWith, kInputLayer);
  edge(kInputLayer, kNext, kLayer);
  edge(kLayer, kNext, kLayer);
  edge(kArchitecture, kEndsWith, kLabels);
  edge(kData, kContains, kLabels);
  edge(kLearner, kUses, kLoss);
  edge(kAny, kFlaggedBy, kSmellAnnotation);

  const std::string program(kDLProgram);
  tg.declare_attr(program, {"source_path", ValueKind::String, true});

  const std::string input(kInputLayer);
  tg.declare_attr(input, {"type", ValueKind::String, false});
  tg.declare_attr(input, {"layer_index", ValueKind::Int, false});
  tg.declare_attr(input, {"shape", ValueKind::String, false});
  declare_span_attrs(tg, input);

  const std::string layer(kLayer);
  tg.declare_attr(layer, {"type", ValueKind::String, true});
  tg.declare_attr(layer, {"layer_index", ValueKind::Int, true});
  tg.declare_attr(layer, {"constructor", ValueKind::String, false});
  tg.declare_attr(layer, {"size", ValueKind::Int, false});
  tg.declare_attr(layer, {"filters", ValueKind::Int, false});
  tg.declare_attr(layer, {"kernel", ValueKind::IntPair, false});
  tg.declare_attr(layer, {"kernel_h", ValueKind::Int, false});
  tg.declare_attr(layer, {"kernel_w", ValueKind::Int, false});
  tg.declare_attr(layer, {"strides", ValueKind::IntPair, false});
  tg.declare_attr(layer, {"pool_size", ValueKind::IntPair, false});
  tg.declare_attr(layer, {"rate", ValueKind::Float, false});
  tg.declare_attr(layer, {"use_bias", ValueKind::Bool, false});
  tg.declare_attr(layer, {"activation", ValueKind::String, false});
  tg.declare_attr(layer, {"padding", ValueKind::String, false});
  // Trained weights are not observable statically; declared for completeness.
  tg.declare_attr(layer, {"weights", ValueKind::String, false});
  declare_span_attrs(tg, layer);

  tg.declare_attr(std::string(kLearner), {"optimizer", ValueKind::String, false});
  tg.declare_attr(std::string(kLoss), {"name", ValueKind::String, true});

  const std::string ann(kSmellAnnotation);
  tg.declare_attr(ann, {"code", ValueKind::String, true});
  tg.declare_attr(ann, {"severity", ValueKind::String, true});
  tg.declare_attr(ann, {"message_key", ValueKind::String, true});
  tg.declare_attr(ann, {"rule", ValueKind::String, false});
  declare_span_attrs(tg, ann);
  return tg;
}

TypeGraph analysis_metamodel() {
  using namespace kinds;
  using namespace labels;
  TypeGraph tg = builtin_metamodel();
  tg.add_edge_type(std::string(kLayer), std::string(kValueNext), std::string(kLayer));
  tg.add_edge_type(std::string(kLayer), std::string(kConvNext), std::string(kLayer));
  tg.add_edge_type(std::string(kArchitecture), std::string(kHasLayer), std::string(kLayer));

  const std::string layer(kLayer);
  tg.declare_attr(layer, {"family", ValueKind::String, false});
  tg.declare_attr(layer, {"stage_id", ValueKind::Int, false});
  tg.declare_attr(layer, {"stage_max_filters", ValueKind::Int, false});
  tg.declare_attr(layer, {"stage_conv_count", ValueKind::Int, false});

  const std::string arch(kArchitecture);
  tg.declare_attr(arch, {"n_conv", ValueKind::Int, false});
  tg.declare_attr(arch, {"n_pool", ValueKind::Int, false});
  tg.declare_attr(arch, {"n_arch_layers", ValueKind::Int, false});
  tg.declare_attr(arch, {"pool_ratio", ValueKind::Float, false});
  tg.declare_attr(arch, {"is_deep", ValueKind::Bool, false});
  return tg;
}

}  // namespace fnnlint::ir
