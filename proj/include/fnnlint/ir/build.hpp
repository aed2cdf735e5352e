#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fnnlint/ir/model_ir.hpp"
#include "fnnlint/ir/type_graph.hpp"
#include "fnnlint/ir/typed_graph.hpp"

namespace fnnlint::ir {

/// Lowers a ModelIR onto an instance graph of builtin_metamodel().
///
/// Node creation order is fixed: DLProgram, Architecture, Learner, Data,
/// Labels, InputLayer, one Layer per remaining record, then Loss when the
/// learner names one. A leading Input record becomes the InputLayer itself;
/// otherwise an InputLayer is synthesized and carries input_shape when known.
/// Throws EmptyModel when the IR has no layers.
TypedGraph build_graph(const ModelIR& ir);

struct Violation {
  enum class Reason {
    UndeclaredNodeKind,
    UndeclaredEdge,
    MissingAttribute,
    WrongAttributeKind,
    UndeclaredAttribute,
    NextPathBranch,
    NextPathMerge,
    NextPathDisconnected,
    NextPathCycle,
    ProgramStructure,
  };

  Reason reason;
  std::optional<NodeId> node;
  std::optional<EdgeId> edge;
  std::string message;
};

std::string_view to_string(Violation::Reason r) noexcept;

/// Empty iff g conforms to tg and its "next" edges form one simple path.
std::vector<Violation> check_conformance(const TypedGraph& g, const TypeGraph& tg);

/// Graphviz rendering; SmellAnnotation nodes are filled.
std::string to_dot(const TypedGraph& g);

}  // namespace fnnlint::ir
