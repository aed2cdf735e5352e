#pragma once

#include <cstddef>
#include <random>

#include "fnnlint/ir/model_ir.hpp"
#include "fnnlint/ir/typed_graph.hpp"
#include "fnnlint/report/report.hpp"

namespace fnnlint::testkit {

using Rng = std::mt19937_64;

struct IrShape {
  std::size_t min_layers = 1;
  std::size_t max_layers = 24;
  /// Chance that an optional attribute is left out.
  double absent_rate = 0.1;
};

/// A random IR that passes ir::validate.
ir::ModelIR random_ir(Rng& rng, const IrShape& shape = {});

/// A random report with consistent counts and sorted findings.
report::Report random_report(Rng& rng);

/// An Architecture node plus random Layer nodes carrying the decorated
/// attributes, joined by random value_next / conv_next / hasLayer edges.
/// Not meta-model conformant on purpose: edges may branch or cycle.
ir::TypedGraph random_layer_graph(Rng& rng, std::size_t max_nodes);

}  // namespace fnnlint::testkit
