#include "fnnlint/gts/engine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fnnlint/error.hpp"

namespace fnnlint::gts {
namespace {

using ir::TypedGraph;
namespace kinds = ir::kinds;
namespace labels = ir::labels;

/// One backtracking search problem: bind the pids in `order`, leaving
/// already-bound pids fixed.
struct SearchSpace {
  std::vector<const PNode*> nodes;  // indexed by pid
  std::vector<const PEdge*> edges;
  std::vector<const Guard*> guards;
};

void collect_pids(const Term& t, std::vector<Pid>& out) {
  if (const auto* a = std::get_if<AttrTerm>(&t)) out.push_back(a->pid);
}

/// Orders the free pids so that each one, where possible, is adjacent to an
/// earlier bound pid; candidates then come from adjacency lists.
std::vector<Pid> search_order(const SearchSpace& s, const std::vector<NodeId>& binding) {
  const std::size_t n = s.nodes.size();
  std::vector<bool> placed(n, false);
  for (Pid p = 0; p < n; ++p) placed[p] = binding[p] != kUnbound;
  std::vector<Pid> order;
  while (true) {
    Pid pick = n;
    for (const PEdge* e : s.edges) {
      if (placed[e->src] && !placed[e->dst]) pick = std::min(pick, e->dst);
      if (placed[e->dst] && !placed[e->src]) pick = std::min(pick, e->src);
    }
    if (pick == n) {
      for (Pid p = 0; p < n; ++p) {
        if (!placed[p]) {
          pick = p;
          break;
        }
      }
    }
    if (pick == n) break;
    placed[pick] = true;
    order.push_back(pick);
  }
  return order;
}

class Searcher {
public:
  Searcher(const TypedGraph& g, const SearchSpace& s, std::vector<NodeId> binding)
      : g_(g), s_(s), binding_(std::move(binding)), used_(g.node_count(), false) {
    for (NodeId b : binding_) {
      if (b != kUnbound) used_[b] = true;
    }
    order_ = search_order(s_, binding_);
    guard_pids_.resize(s_.guards.size());
    for (std::size_t i = 0; i < s_.guards.size(); ++i) {
      collect_pids(s_.guards[i]->lhs, guard_pids_[i]);
      collect_pids(s_.guards[i]->rhs, guard_pids_[i]);
    }
  }

  /// Calls visit(binding) for each complete binding; stops early when visit returns true.
  template <typename Visit>
  bool run(Visit&& visit) {
    for (std::size_t i = 0; i < s_.guards.size(); ++i) {
      if (all_bound(guard_pids_[i]) && !evaluate(*s_.guards[i], g_, binding_)) return false;
    }
    return step(0, visit);
  }

private:
  bool all_bound(const std::vector<Pid>& pids) const {
    return std::all_of(pids.begin(), pids.end(), [this](Pid p) { return binding_[p] != kUnbound; });
  }

  std::vector<NodeId> candidates(Pid pid) const {
    for (const PEdge* e : s_.edges) {
      if (e->dst == pid && e->src != pid && binding_[e->src] != kUnbound) return g_.successors(binding_[e->src], e->label);
      if (e->src == pid && e->dst != pid && binding_[e->dst] != kUnbound) return g_.predecessors(binding_[e->dst], e->label);
    }
    return g_.nodes_of_kind(s_.nodes[pid]->kind);
  }

  bool consistent(Pid pid) const {
    for (const PEdge* e : s_.edges) {
      if (e->src != pid && e->dst != pid) continue;
      const NodeId a = binding_[e->src];
      const NodeId b = binding_[e->dst];
      if (a == kUnbound || b == kUnbound) continue;
      if (!g_.has_edge(a, e->label, b)) return false;
    }
    for (std::size_t i = 0; i < s_.guards.size(); ++i) {
      const auto& pids = guard_pids_[i];
      if (std::find(pids.begin(), pids.end(), pid) == pids.end() || !all_bound(pids)) continue;
      if (!evaluate(*s_.guards[i], g_, binding_)) return false;
    }
    return true;
  }

  template <typename Visit>
  bool step(std::size_t depth, Visit& visit) {
    if (depth == order_.size()) return visit(std::as_const(binding_));
    const Pid pid = order_[depth];
    std::vector<NodeId> cands = candidates(pid);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (NodeId c : cands) {
      if (used_[c] || g_.node(c).kind != s_.nodes[pid]->kind) continue;
      binding_[pid] = c;
      used_[c] = true;
      const bool stop = consistent(pid) && step(depth + 1, visit);
      used_[c] = false;
      binding_[pid] = kUnbound;
      if (stop) return true;
    }
    return false;
  }

  const TypedGraph& g_;
  const SearchSpace& s_;
  std::vector<NodeId> binding_;
  std::vector<bool> used_;
  std::vector<Pid> order_;
  std::vector<std::vector<Pid>> guard_pids_;
};

SearchSpace lhs_space(const Rule& rule) {
  SearchSpace s;
  for (const auto& n : rule.lhs.nodes) s.nodes.push_back(&n);
  for (const auto& e : rule.lhs.edges) s.edges.push_back(&e);
  for (const auto& g : rule.lhs.guards) s.guards.push_back(&g);
  return s;
}

bool nac_blocks(const Rule& rule, const Nac& nac, const TypedGraph& g, const std::vector<NodeId>& binding) {
  SearchSpace s;
  for (const auto& n : rule.lhs.nodes) s.nodes.push_back(&n);
  for (const auto& n : nac.extra_nodes) s.nodes.push_back(&n);
  for (const auto& e : nac.edges) s.edges.push_back(&e);
  for (const auto& gd : nac.guards) s.guards.push_back(&gd);
  std::vector<NodeId> b = binding;
  b.resize(s.nodes.size(), kUnbound);
  Searcher search(g, s, std::move(b));
  return search.run([](const std::vector<NodeId>&) { return true; });
}

bool blocked(const Rule& rule, const Nac& dedup, const TypedGraph& g, const std::vector<NodeId>& binding) {
  if (nac_blocks(rule, dedup, g, binding)) return true;
  return std::any_of(rule.nacs.begin(), rule.nacs.end(),
                     [&](const Nac& nac) { return nac_blocks(rule, nac, g, binding); });
}

void require_annotation_free(const Rule& rule) {
  for (const auto& n : rule.lhs.nodes) {
    if (n.kind == kinds::kSmellAnnotation) {
      throw std::invalid_argument("rule " + rule.name + " matches SmellAnnotation nodes");
    }
  }
}

}  // namespace

Nac dedup_nac(const Rule& rule) {
  const Pid ann = rule.lhs.nodes.size();
  Nac nac;
  nac.extra_nodes.push_back({std::string(kinds::kSmellAnnotation)});
  nac.edges.push_back({rule.anchor, std::string(labels::kFlaggedBy), ann});
  nac.guards.push_back({attr(ann, "code"), CmpOp::Eq, constant(ir::AttrValue(rule.smell_code))});
  return nac;
}

std::vector<Match> find_matches(const Rule& rule, const TypedGraph& g) {
  const SearchSpace s = lhs_space(rule);
  const Nac dedup = dedup_nac(rule);
  std::vector<Match> out;
  Searcher search(g, s, std::vector<NodeId>(rule.lhs.nodes.size(), kUnbound));
  search.run([&](const std::vector<NodeId>& binding) {
    if (!blocked(rule, dedup, g, binding)) out.push_back(Match{binding});
    return false;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_valid_match(const Rule& rule, const TypedGraph& g, const Match& m) {
  const auto& b = m.binding;
  if (b.size() != rule.lhs.nodes.size()) return false;
  for (Pid p = 0; p < b.size(); ++p) {
    if (b[p] >= g.node_count() || g.node(b[p]).kind != rule.lhs.nodes[p].kind) return false;
    for (Pid q = 0; q < p; ++q) {
      if (b[p] == b[q]) return false;
    }
  }
  for (const auto& e : rule.lhs.edges) {
    if (!g.has_edge(b[e.src], e.label, b[e.dst])) return false;
  }
  for (const auto& gd : rule.lhs.guards) {
    if (!evaluate(gd, g, b)) return false;
  }
  return !blocked(rule, dedup_nac(rule), g, b);
}

NodeId apply_in_place(const Rule& rule, TypedGraph& g, const Match& m) {
  if (!is_valid_match(rule, g, m)) throw StaleMatch(rule.name);
  const NodeId anchor = m.binding[rule.anchor];
  ir::AttrMap attrs{
      {"code", rule.smell_code},
      {"severity", std::string(to_string(rule.effect.severity))},
      {"message_key", rule.effect.message_key},
      {"rule", rule.name},
  };
  for (const char* key : {"line", "col", "end_line", "end_col"}) {
    if (const ir::AttrValue* v = g.attr(anchor, key)) attrs[key] = *v;
  }
  const NodeId ann = g.add_node(std::string(kinds::kSmellAnnotation), std::move(attrs));
  g.add_edge(anchor, std::string(labels::kFlaggedBy), ann);
  return ann;
}

TypedGraph apply(const Rule& rule, const TypedGraph& g, const Match& m) {
  TypedGraph out = g;
  apply_in_place(rule, out, m);
  return out;
}

TypedGraph run_to_fixpoint(std::span<const Rule> rules, TypedGraph g) {
  for (const Rule& r : rules) require_annotation_free(r);
  // Each application consumes one (anchor, code) slot.
  const std::size_t bound = rules.size() * g.node_count();
  std::size_t applied = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& rule : rules) {
      for (const Match& m : find_matches(rule, g)) {
        // An earlier application in this pass may have flagged the same anchor.
        if (!is_valid_match(rule, g, m)) continue;
        apply_in_place(rule, g, m);
        changed = true;
        if (++applied > bound) throw std::logic_error("fixpoint exceeded its application bound");
      }
    }
  }
  return g;
}

TypedGraph run_to_fixpoint_shuffled(std::span<const Rule> rules, TypedGraph g, std::uint64_t seed) {
  for (const Rule& r : rules) require_annotation_free(r);
  std::mt19937_64 rng(seed);
  const std::size_t bound = rules.size() * g.node_count();
  for (std::size_t applied = 0;; ++applied) {
    std::vector<std::pair<std::size_t, Match>> pending;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      for (Match& m : find_matches(rules[i], g)) pending.emplace_back(i, std::move(m));
    }
    if (pending.empty()) break;
    if (applied >= bound) throw std::logic_error("fixpoint exceeded its application bound");
    std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
    const auto& [rule_index, match] = pending[pick(rng)];
    apply_in_place(rules[rule_index], g, match);
  }
  return g;
}

}  // namespace fnnlint::gts
