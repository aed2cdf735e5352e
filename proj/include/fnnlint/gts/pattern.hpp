#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fnnlint/ir/type_graph.hpp"
#include "fnnlint/ir/typed_graph.hpp"
#include "fnnlint/severity.hpp"

namespace fnnlint::gts {

using ir::NodeId;

/// Pattern node id. In a NAC, ids below the LHS node count refer to LHS
/// nodes; id lhs_size + i refers to the NAC's i-th extra node.
using Pid = std::size_t;

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

/// How an int_pair attribute is reduced to a scalar before comparison.
enum class Projection { None, Area, First, Second };

struct AttrTerm {
  Pid pid = 0;
  std::string attr;
  Projection projection = Projection::None;
  /// Integer factor applied to numeric values; lets ratio thresholds be
  /// compared exactly as cross-multiplied integers.
  std::int64_t scale = 1;
};

struct ConstTerm {
  ir::AttrValue value;
};

using Term = std::variant<ConstTerm, AttrTerm>;

struct Guard {
  Term lhs;
  CmpOp op = CmpOp::Eq;
  Term rhs;
};

inline AttrTerm attr(Pid pid, std::string name, Projection p = Projection::None, std::int64_t scale = 1) {
  return AttrTerm{pid, std::move(name), p, scale};
}
inline ConstTerm constant(ir::AttrValue v) { return ConstTerm{std::move(v)}; }
inline ConstTerm constant(const char* s) { return ConstTerm{std::string(s)}; }
inline ConstTerm constant(int v) { return ConstTerm{std::int64_t{v}}; }

struct PNode {
  std::string kind;
};

struct PEdge {
  Pid src = 0;
  std::string label;
  Pid dst = 0;
};

struct Pattern {
  std::vector<PNode> nodes;
  std::vector<PEdge> edges;
  std::vector<Guard> guards;
};

/// Negative application condition: extends the LHS with extra nodes, edges
/// and guards. A match is blocked when any injective extension exists.
struct Nac {
  std::vector<PNode> extra_nodes;
  std::vector<PEdge> edges;
  std::vector<Guard> guards;
};

/// Right-hand side: the only effect is attaching one SmellAnnotation to the anchor.
struct Effect {
  Severity severity = Severity::Warning;
  std::string message_key;
};

struct Rule {
  std::string name;
  std::string smell_code;
  Pattern lhs;
  std::vector<Nac> nacs;
  Pid anchor = 0;
  Effect effect;
};

struct Match {
  /// binding[pid] = graph node; injective.
  std::vector<NodeId> binding;

  friend auto operator<=>(const Match&, const Match&) = default;
};

/// Evaluates a guard under a (possibly partial) binding. An attribute that
/// is absent, unbound or of an incomparable kind makes the guard false.
bool evaluate(const Guard& guard, const ir::TypedGraph& g, std::span<const NodeId> binding);

inline constexpr NodeId kUnbound = std::numeric_limits<NodeId>::max();

/// Checks a rule against a type graph: declared kinds and edge triples,
/// guard attributes declared on the bound kind, projections only on
/// int_pair attributes, a connected LHS and an anchor inside it.
std::vector<std::string> validate_rule(const Rule& rule, const ir::TypeGraph& tg);

}  // namespace fnnlint::gts
