#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnnlint/ir/value.hpp"

namespace fnnlint::ir {

enum class LayerTag {
  Input,
  Dense,
  Conv1D,
  Conv2D,
  MaxPool1D,
  MaxPool2D,
  AvgPool1D,
  AvgPool2D,
  GlobalAvgPool,
  GlobalMaxPool,
  Dropout,
  BatchNorm,
  Flatten,
  Reshape,
  Activation,
  Other,
};

/// Layer kind. `other_name` keeps the constructor name verbatim and is only
/// meaningful when tag == Other.
struct LayerKind {
  LayerTag tag = LayerTag::Other;
  std::string other_name;

  LayerKind() = default;
  LayerKind(LayerTag t) : tag(t) {}  // NOLINT: implicit by intent
  static LayerKind other(std::string name) {
    LayerKind k(LayerTag::Other);
    k.other_name = std::move(name);
    return k;
  }

  friend bool operator==(const LayerKind& a, const LayerKind& b) {
    return a.tag == b.tag && (a.tag != LayerTag::Other || a.other_name == b.other_name);
  }
};

/// Canonical name used for the "kind" JSON field and the graph "type" attribute.
std::string_view tag_name(LayerTag tag) noexcept;
std::optional<LayerTag> tag_from_name(std::string_view name) noexcept;

bool is_conv(LayerTag t) noexcept;
/// Max/average pooling with a window (non-global).
bool is_window_pool(LayerTag t) noexcept;
bool is_global_pool(LayerTag t) noexcept;
inline bool is_pool(LayerTag t) noexcept { return is_window_pool(t) || is_global_pool(t); }
/// Layers that only change tensor shape and are skipped by value adjacency.
bool is_shape_only(LayerTag t) noexcept;
bool is_learning(LayerTag t) noexcept;

/// 1-based source position; end fields are 0 when unknown.
struct SourceSpan {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct RawArg {
  std::optional<std::string> name;
  std::string literal;

  friend bool operator==(const RawArg&, const RawArg&) = default;
};

struct LayerRecord {
  LayerKind kind;
  std::optional<std::int64_t> size;
  std::optional<std::int64_t> filters;
  std::optional<IntPair> kernel;
  std::optional<IntPair> strides;
  std::optional<IntPair> pool_size;
  std::optional<double> rate;
  std::optional<bool> use_bias;
  std::optional<std::string> activation;
  std::optional<std::string> padding;
  std::optional<SourceSpan> source_span;
  std::vector<RawArg> raw_args;

  friend bool operator==(const LayerRecord&, const LayerRecord&) = default;
};

struct LearnerConfig {
  std::optional<std::string> optimizer;
  std::optional<std::string> loss;

  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

inline constexpr int kFormatVersion = 1;

struct ModelIR {
  std::vector<LayerRecord> layers;
  std::optional<std::vector<std::int64_t>> input_shape;
  LearnerConfig learner;
  std::string source_path;
  int format_version = kFormatVersion;

  friend bool operator==(const ModelIR&, const ModelIR&) = default;
};

/// Checks the record-level invariants. Throws SchemaError naming the
/// offending field path (e.g. "layers[2].rate").
void validate(const ModelIR& ir);

}  // namespace fnnlint::ir
