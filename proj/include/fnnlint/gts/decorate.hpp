#pragma once

#include "fnnlint/ir/typed_graph.hpp"
#include "fnnlint/smells/thresholds.hpp"

namespace fnnlint::gts {

/// Pre-analysis pass that turns aggregate facts into local graph structure
/// so rules stay finite patterns.
///
/// On every Layer of the architecture sequence:
///   family      conv | pool | global_pool | dense | dropout | batchnorm |
///               shape | activation | other
///   stage_id    0-based conv stage; a pooling layer closes the stage it
///               ends (if that stage holds a conv) and belongs to it
/// On conv layers: stage_conv_count, and stage_max_filters when every conv
/// of the stage has a known filter count.
/// On the Architecture: n_conv, n_pool, n_arch_layers, pool_ratio, is_deep.
/// Edges: value_next between consecutive non-shape layers (Flatten and
/// Reshape are skipped), conv_next between consecutive conv layers, and
/// Architecture -hasLayer-> every Layer.
///
/// Only adds: existing attributes and edges are left untouched, so running
/// it twice is a no-op.
ir::TypedGraph decorate(ir::TypedGraph g, const smells::Thresholds& cfg);

/// The Layer nodes of the first Architecture, in "next" order.
std::vector<ir::NodeId> architecture_sequence(const ir::TypedGraph& g);

}  // namespace fnnlint::gts
