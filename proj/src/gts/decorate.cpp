#include "fnnlint/gts/decorate.hpp"

#include <algorithm>
#include <map>

#include "fnnlint/gts/pattern.hpp"
#include "fnnlint/ir/model_ir.hpp"

namespace fnnlint::gts {
namespace {

using ir::LayerTag;
using ir::TypedGraph;
namespace kinds = ir::kinds;
namespace labels = ir::labels;

std::optional<LayerTag> layer_tag(const TypedGraph& g, NodeId n) {
  const auto type = ir::get_attr<std::string>(g, n, "type");
  if (!type) return std::nullopt;
  return ir::tag_from_name(*type);
}

std::string family_of(std::optional<LayerTag> tag) {
  if (!tag) return "other";
  const LayerTag t = *tag;
  if (ir::is_conv(t)) return "conv";
  if (ir::is_window_pool(t)) return "pool";
  if (ir::is_global_pool(t)) return "global_pool";
  if (ir::is_shape_only(t)) return "shape";
  switch (t) {
    case LayerTag::Dense: return "dense";
    case LayerTag::Dropout: return "dropout";
    case LayerTag::BatchNorm: return "batchnorm";
    case LayerTag::Activation: return "activation";
    default: return "other";
  }
}

void add_attr(TypedGraph& g, NodeId n, const std::string& name, ir::AttrValue v) {
  if (g.attr(n, name) == nullptr) g.set_attr(n, name, std::move(v));
}

void add_edge(TypedGraph& g, NodeId a, std::string_view label, NodeId b) {
  if (!g.has_edge(a, label, b)) g.add_edge(a, std::string(label), b);
}

}  // namespace

std::vector<NodeId> architecture_sequence(const TypedGraph& g) {
  std::vector<NodeId> seq;
  const auto archs = g.nodes_of_kind(kinds::kArchitecture);
  if (archs.empty()) return seq;
  const auto inputs = g.successors(archs.front(), labels::kStartsWith);
  if (inputs.empty()) return seq;
  std::vector<bool> seen(g.node_count(), false);
  NodeId cur = inputs.front();
  seen[cur] = true;
  while (true) {
    const auto next = g.successors(cur, labels::kNext);
    if (next.empty() || seen[next.front()] || g.node(next.front()).kind != kinds::kLayer) break;
    cur = next.front();
    seen[cur] = true;
    seq.push_back(cur);
  }
  return seq;
}

TypedGraph decorate(TypedGraph g, const smells::Thresholds& cfg) {
  const auto archs = g.nodes_of_kind(kinds::kArchitecture);
  if (archs.empty()) return g;
  const NodeId arch = archs.front();
  const std::vector<NodeId> seq = architecture_sequence(g);

  std::vector<std::optional<LayerTag>> tags;
  tags.reserve(seq.size());
  for (NodeId n : seq) tags.push_back(layer_tag(g, n));
  const auto is = [&tags](std::size_t i, bool (*pred)(LayerTag) noexcept) { return tags[i] && pred(*tags[i]); };

  std::int64_t n_conv = 0;
  std::int64_t n_pool = 0;
  std::int64_t stage = 0;
  bool stage_has_conv = false;
  std::vector<std::int64_t> stage_of(seq.size(), 0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    add_attr(g, seq[i], "family", family_of(tags[i]));
    stage_of[i] = stage;
    if (is(i, ir::is_conv)) {
      ++n_conv;
      stage_has_conv = true;
    } else if (is(i, ir::is_pool)) {
      ++n_pool;
      if (stage_has_conv) {
        ++stage;
        stage_has_conv = false;
      }
    }
    add_attr(g, seq[i], "stage_id", stage_of[i]);
  }

  struct StageInfo {
    std::int64_t conv_count = 0;
    std::int64_t max_filters = 0;
    bool filters_known = true;
  };
  std::map<std::int64_t, StageInfo> stages;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!is(i, ir::is_conv)) continue;
    StageInfo& s = stages[stage_of[i]];
    ++s.conv_count;
    if (const auto f = ir::get_attr<std::int64_t>(g, seq[i], "filters")) {
      s.max_filters = std::max(s.max_filters, *f);
    } else {
      s.filters_known = false;
    }
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!is(i, ir::is_conv)) continue;
    const StageInfo& s = stages[stage_of[i]];
    add_attr(g, seq[i], "stage_conv_count", s.conv_count);
    if (s.filters_known) add_attr(g, seq[i], "stage_max_filters", s.max_filters);
  }

  std::optional<NodeId> prev_value;
  std::optional<NodeId> prev_conv;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    add_edge(g, arch, labels::kHasLayer, seq[i]);
    if (!is(i, ir::is_shape_only)) {
      if (prev_value) add_edge(g, *prev_value, labels::kValueNext, seq[i]);
      prev_value = seq[i];
    }
    if (is(i, ir::is_conv)) {
      if (prev_conv) add_edge(g, *prev_conv, labels::kConvNext, seq[i]);
      prev_conv = seq[i];
    }
  }

  const std::int64_t n_arch = n_conv + n_pool;
  add_attr(g, arch, "n_conv", n_conv);
  add_attr(g, arch, "n_pool", n_pool);
  add_attr(g, arch, "n_arch_layers", n_arch);
  add_attr(g, arch, "pool_ratio", n_arch == 0 ? 0.0 : static_cast<double>(n_pool) / static_cast<double>(n_arch));
  add_attr(g, arch, "is_deep", n_arch >= cfg.deep_min_layers);
  return g;
}

}  // namespace fnnlint::gts
