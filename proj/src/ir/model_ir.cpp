#include "fnnlint/ir/model_ir.hpp"

#include <array>
#include <utility>

#include "fnnlint/error.hpp"

namespace fnnlint::ir {
namespace {

constexpr std::array<std::pair<LayerTag, std::string_view>, 16> kTagNames{{
    {LayerTag::Input, "Input"},
    {LayerTag::Dense, "Dense"},
    {LayerTag::Conv1D, "Conv1D"},
    {LayerTag::Conv2D, "Conv2D"},
    {LayerTag::MaxPool1D, "MaxPool1D"},
    {LayerTag::MaxPool2D, "MaxPool2D"},
    {LayerTag::AvgPool1D, "AvgPool1D"},
    {LayerTag::AvgPool2D, "AvgPool2D"},
    {LayerTag::GlobalAvgPool, "GlobalAvgPool"},
    {LayerTag::GlobalMaxPool, "GlobalMaxPool"},
    {LayerTag::Dropout, "Dropout"},
    {LayerTag::BatchNorm, "BatchNorm"},
    {LayerTag::Flatten, "Flatten"},
    {LayerTag::Reshape, "Reshape"},
    {LayerTag::Activation, "Activation"},
    {LayerTag::Other, "Other"},
}};

std::string field(std::size_t i, std::string_view name) {
  return "layers[" + std::to_string(i) + "]." + std::string(name);
}

void require_positive(const std::optional<IntPair>& p, std::size_t i, std::string_view name) {
  if (p && (p->first < 1 || p->second < 1)) {
    throw SchemaError(field(i, name), "components must be positive");
  }
}

}  // namespace

std::string_view tag_name(LayerTag tag) noexcept {
  for (const auto& [t, n] : kTagNames) {
    if (t == tag) return n;
  }
  return "Other";
}

std::optional<LayerTag> tag_from_name(std::string_view name) noexcept {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

bool is_conv(LayerTag t) noexcept { return t == LayerTag::Conv1D || t == LayerTag::Conv2D; }

bool is_window_pool(LayerTag t) noexcept {
  return t == LayerTag::MaxPool1D || t == LayerTag::MaxPool2D || t == LayerTag::AvgPool1D ||
         t == LayerTag::AvgPool2D;
}

bool is_global_pool(LayerTag t) noexcept {
  return t == LayerTag::GlobalAvgPool || t == LayerTag::GlobalMaxPool;
}

bool is_shape_only(LayerTag t) noexcept { return t == LayerTag::Flatten || t == LayerTag::Reshape; }

bool is_learning(LayerTag t) noexcept { return is_conv(t) || t == LayerTag::Dense; }

void validate(const ModelIR& ir) {
  if (ir.format_version != kFormatVersion) throw VersionError(ir.format_version);
  for (std::size_t i = 0; i < ir.layers.size(); ++i) {
    const LayerRecord& l = ir.layers[i];
    if (l.kind.tag == LayerTag::Input && i != 0) {
      throw SchemaError(field(i, "kind"), "Input is only allowed as the first layer");
    }
    if (l.kind.tag == LayerTag::Other && l.kind.other_name.empty()) {
      throw SchemaError(field(i, "name"), "Other layer needs a constructor name");
    }
    if (l.filters && *l.filters < 1) throw SchemaError(field(i, "filters"), "must be >= 1");
    if (l.size && *l.size < 1) throw SchemaError(field(i, "size"), "must be >= 1");
    if (l.rate && !(*l.rate >= 0.0 && *l.rate <= 1.0)) {
      throw SchemaError(field(i, "rate"), "must lie in [0, 1]");
    }
    require_positive(l.kernel, i, "kernel");
    require_positive(l.strides, i, "strides");
    require_positive(l.pool_size, i, "pool_size");
  }
  if (ir.input_shape) {
    for (std::size_t d = 0; d < ir.input_shape->size(); ++d) {
      if ((*ir.input_shape)[d] < 1) {
        throw SchemaError("input_shape[" + std::to_string(d) + "]", "must be >= 1");
      }
    }
  }
}

}  // namespace fnnlint::ir
