#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fnnlint/gts/pattern.hpp"
#include "fnnlint/ir/typed_graph.hpp"

namespace fnnlint::gts {

/// The NAC every rule carries implicitly: the anchor must not already be
/// flagged by an annotation with the rule's code.
Nac dedup_nac(const Rule& rule);

/// All injective LHS matches that satisfy the guards and are blocked by no
/// NAC (including the dedup NAC), sorted by binding.
std::vector<Match> find_matches(const Rule& rule, const ir::TypedGraph& g);

/// Re-checks kinds, edges, guards, injectivity and NACs for one binding.
bool is_valid_match(const Rule& rule, const ir::TypedGraph& g, const Match& m);

/// Adds the rule's annotation for m in place and returns the new node id.
/// Throws StaleMatch if m is no longer a valid match.
NodeId apply_in_place(const Rule& rule, ir::TypedGraph& g, const Match& m);

/// Copying form of apply_in_place.
ir::TypedGraph apply(const Rule& rule, const ir::TypedGraph& g, const Match& m);

/// Applies rules until none has a match. Rules are tried in list order and
/// matches in sorted order. Throws std::invalid_argument for a rule whose
/// LHS mentions SmellAnnotation, since such a rule could feed on its own output.
ir::TypedGraph run_to_fixpoint(std::span<const Rule> rules, ir::TypedGraph g);

/// Same fixpoint, but each step picks one pending (rule, match) pair at
/// random using the given seed. Used to exercise order independence.
ir::TypedGraph run_to_fixpoint_shuffled(std::span<const Rule> rules, ir::TypedGraph g, std::uint64_t seed);

}  // namespace fnnlint::gts
