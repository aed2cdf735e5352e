#include "fnnlint/gts/pattern.hpp"

#include <optional>
#include <queue>

namespace fnnlint::gts {
namespace {

using ir::AttrValue;
using ir::IntPair;

/// A term after attribute lookup and projection.
using Resolved = AttrValue;

std::optional<Resolved> resolve(const Term& t, const ir::TypedGraph& g, std::span<const NodeId> binding) {
  if (const auto* c = std::get_if<ConstTerm>(&t)) return c->value;
  const auto& a = std::get<AttrTerm>(t);
  if (a.pid >= binding.size() || binding[a.pid] == kUnbound) return std::nullopt;
  const AttrValue* v = g.attr(binding[a.pid], a.attr);
  if (v == nullptr) return std::nullopt;

  AttrValue out = *v;
  if (a.projection != Projection::None) {
    const auto* p = std::get_if<IntPair>(v);
    if (p == nullptr) return std::nullopt;
    switch (a.projection) {
      case Projection::Area: out = p->area(); break;
      case Projection::First: out = p->first; break;
      case Projection::Second: out = p->second; break;
      case Projection::None: break;
    }
  }
  if (a.scale != 1) {
    if (auto* i = std::get_if<std::int64_t>(&out)) {
      *i *= a.scale;
    } else if (auto* d = std::get_if<double>(&out)) {
      *d *= static_cast<double>(a.scale);
    } else {
      return std::nullopt;
    }
  }
  return out;
}

template <typename T>
bool compare(const T& l, CmpOp op, const T& r) {
  switch (op) {
    case CmpOp::Eq: return l == r;
    case CmpOp::Ne: return l != r;
    case CmpOp::Lt: return l < r;
    case CmpOp::Le: return l <= r;
    case CmpOp::Gt: return l > r;
    case CmpOp::Ge: return l >= r;
  }
  return false;
}

bool equality_only(CmpOp op) { return op == CmpOp::Eq || op == CmpOp::Ne; }

}  // namespace

bool evaluate(const Guard& guard, const ir::TypedGraph& g, std::span<const NodeId> binding) {
  const auto l = resolve(guard.lhs, g, binding);
  const auto r = resolve(guard.rhs, g, binding);
  if (!l || !r) return false;

  const auto* li = std::get_if<std::int64_t>(&*l);
  const auto* ri = std::get_if<std::int64_t>(&*r);
  if (li && ri) return compare(*li, guard.op, *ri);

  const auto* ld = std::get_if<double>(&*l);
  const auto* rd = std::get_if<double>(&*r);
  if ((li || ld) && (ri || rd)) {
    const double x = li ? static_cast<double>(*li) : *ld;
    const double y = ri ? static_cast<double>(*ri) : *rd;
    return compare(x, guard.op, y);
  }

  if (l->index() != r->index()) return false;
  if (const auto* ls = std::get_if<std::string>(&*l)) return compare(*ls, guard.op, std::get<std::string>(*r));
  if (!equality_only(guard.op)) return false;
  if (const auto* lb = std::get_if<bool>(&*l)) return compare(*lb, guard.op, std::get<bool>(*r));
  const bool same = std::get<IntPair>(*l) == std::get<IntPair>(*r);
  return guard.op == CmpOp::Eq ? same : !same;
}

namespace {

void check_guards(const std::vector<Guard>& guards, const std::vector<std::string>& pid_kinds,
                  const ir::TypeGraph& tg, const std::string& where, std::vector<std::string>& out) {
  for (std::size_t gi = 0; gi < guards.size(); ++gi) {
    for (const Term* t : {&guards[gi].lhs, &guards[gi].rhs}) {
      const auto* a = std::get_if<AttrTerm>(t);
      if (a == nullptr) continue;
      const std::string prefix = where + " guard " + std::to_string(gi) + ": ";
      if (a->pid >= pid_kinds.size()) {
        out.push_back(prefix + "pid " + std::to_string(a->pid) + " out of range");
        continue;
      }
      const ir::AttrDecl* d = tg.find_attr(pid_kinds[a->pid], a->attr);
      if (d == nullptr) {
        out.push_back(prefix + "attribute '" + a->attr + "' not declared on " + pid_kinds[a->pid]);
      } else if (a->projection != Projection::None && d->kind != ir::ValueKind::IntPair) {
        out.push_back(prefix + "projection on non-pair attribute '" + a->attr + "'");
      }
    }
  }
}

void check_edges(const std::vector<PEdge>& edges, const std::vector<std::string>& pid_kinds,
                 const ir::TypeGraph& tg, const std::string& where, std::vector<std::string>& out) {
  for (const auto& e : edges) {
    if (e.src >= pid_kinds.size() || e.dst >= pid_kinds.size()) {
      out.push_back(where + ": edge endpoint out of range");
    } else if (!tg.allows_edge(pid_kinds[e.src], e.label, pid_kinds[e.dst])) {
      out.push_back(where + ": edge (" + pid_kinds[e.src] + ", " + e.label + ", " + pid_kinds[e.dst] +
                    ") not declared");
    }
  }
}

}  // namespace

std::vector<std::string> validate_rule(const Rule& rule, const ir::TypeGraph& tg) {
  std::vector<std::string> out;
  const std::string where = "rule " + rule.name;
  std::vector<std::string> kinds;
  for (const auto& n : rule.lhs.nodes) {
    if (!tg.has_node_type(n.kind)) out.push_back(where + ": kind '" + n.kind + "' not declared");
    kinds.push_back(n.kind);
  }
  if (rule.lhs.nodes.empty()) out.push_back(where + ": empty LHS");
  if (rule.anchor >= rule.lhs.nodes.size()) out.push_back(where + ": anchor outside LHS");
  check_edges(rule.lhs.edges, kinds, tg, where, out);
  check_guards(rule.lhs.guards, kinds, tg, where, out);

  // Connectivity over undirected LHS edges.
  if (!rule.lhs.nodes.empty()) {
    std::vector<bool> seen(kinds.size(), false);
    std::queue<Pid> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      const Pid p = q.front();
      q.pop();
      for (const auto& e : rule.lhs.edges) {
        if (e.src >= kinds.size() || e.dst >= kinds.size()) continue;
        const Pid other = e.src == p ? e.dst : (e.dst == p ? e.src : kinds.size());
        if (other < kinds.size() && !seen[other]) {
          seen[other] = true;
          q.push(other);
        }
      }
    }
    for (Pid p = 0; p < kinds.size(); ++p) {
      if (!seen[p]) out.push_back(where + ": LHS is not connected (pid " + std::to_string(p) + ")");
    }
  }

  for (std::size_t i = 0; i < rule.nacs.size(); ++i) {
    std::vector<std::string> nac_kinds = kinds;
    const std::string nac_where = where + " nac " + std::to_string(i);
    for (const auto& n : rule.nacs[i].extra_nodes) {
      if (!tg.has_node_type(n.kind)) out.push_back(nac_where + ": kind '" + n.kind + "' not declared");
      nac_kinds.push_back(n.kind);
    }
    check_edges(rule.nacs[i].edges, nac_kinds, tg, nac_where, out);
    check_guards(rule.nacs[i].guards, nac_kinds, tg, nac_where, out);
  }
  return out;
}

}  // namespace fnnlint::gts
