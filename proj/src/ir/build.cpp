#include "fnnlint/ir/build.hpp"

#include <algorithm>
#include <sstream>

#include "fnnlint/error.hpp"

namespace fnnlint::ir {
namespace {

using namespace kinds;
using namespace labels;

void put_span(AttrMap& attrs, const std::optional<SourceSpan>& span) {
  if (!span) return;
  attrs["line"] = std::int64_t{span->line};
  attrs["col"] = std::int64_t{span->col};
  if (span->end_line != 0) attrs["end_line"] = std::int64_t{span->end_line};
  if (span->end_col != 0) attrs["end_col"] = std::int64_t{span->end_col};
}

std::string shape_text(const std::vector<std::int64_t>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i != 0) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

AttrMap lower_layer(const LayerRecord& l, std::size_t index) {
  AttrMap a;
  a["type"] = std::string(tag_name(l.kind.tag));
  if (l.kind.tag == LayerTag::Other) a["constructor"] = l.kind.other_name;
  a["layer_index"] = static_cast<std::int64_t>(index);
  if (l.size) a["size"] = *l.size;
  if (l.filters) a["filters"] = *l.filters;
  if (l.kernel) {
    a["kernel"] = *l.kernel;
    a["kernel_h"] = l.kernel->first;
    a["kernel_w"] = l.kernel->second;
  }
  if (l.strides) a["strides"] = *l.strides;
  if (l.pool_size) a["pool_size"] = *l.pool_size;
  if (l.rate) a["rate"] = *l.rate;
  if (l.use_bias) a["use_bias"] = *l.use_bias;
  if (l.activation) a["activation"] = *l.activation;
  if (l.padding) a["padding"] = *l.padding;
  put_span(a, l.source_span);
  return a;
}

}  // namespace

TypedGraph build_graph(const ModelIR& ir) {
  if (ir.layers.empty()) throw EmptyModel();
  validate(ir);

  TypedGraph g;
  const NodeId program = g.add_node(std::string(kDLProgram), {{"source_path", ir.source_path}});
  const NodeId arch = g.add_node(std::string(kArchitecture));
  AttrMap learner_attrs;
  if (ir.learner.optimizer) learner_attrs["optimizer"] = *ir.learner.optimizer;
  const NodeId learner = g.add_node(std::string(kLearner), std::move(learner_attrs));
  const NodeId data = g.add_node(std::string(kData));
  const NodeId labels_node = g.add_node(std::string(kLabels));

  g.add_edge(program, std::string(kHas), arch);
  g.add_edge(program, std::string(kHas), learner);
  g.add_edge(program, std::string(kHas), data);

  std::size_t first_layer = 0;
  AttrMap input_attrs;
  if (ir.layers.front().kind.tag == LayerTag::Input) {
    input_attrs["type"] = std::string(tag_name(LayerTag::Input));
    input_attrs["layer_index"] = std::int64_t{0};
    put_span(input_attrs, ir.layers.front().source_span);
    first_layer = 1;
  }
  if (ir.input_shape) input_attrs["shape"] = shape_text(*ir.input_shape);
  const NodeId input = g.add_node(std::string(kInputLayer), std::move(input_attrs));
  g.add_edge(arch, std::string(kStartsWith), input);

  NodeId prev = input;
  for (std::size_t i = first_layer; i < ir.layers.size(); ++i) {
    const NodeId n = g.add_node(std::string(kLayer), lower_layer(ir.layers[i], i));
    g.add_edge(prev, std::string(kNext), n);
    prev = n;
  }

  g.add_edge(arch, std::string(kEndsWith), labels_node);
  g.add_edge(data, std::string(kContains), labels_node);

  if (ir.learner.loss) {
    const NodeId loss = g.add_node(std::string(kLoss), {{"name", *ir.learner.loss}});
    g.add_edge(learner, std::string(kUses), loss);
  }
  return g;
}

std::string_view to_string(Violation::Reason r) noexcept {
  using R = Violation::Reason;
  switch (r) {
    case R::UndeclaredNodeKind: return "undeclared node kind";
    case R::UndeclaredEdge: return "undeclared edge triple";
    case R::MissingAttribute: return "missing required attribute";
    case R::WrongAttributeKind: return "attribute has wrong value kind";
    case R::UndeclaredAttribute: return "undeclared attribute";
    case R::NextPathBranch: return "next path branches";
    case R::NextPathMerge: return "next path merges";
    case R::NextPathDisconnected: return "next path is disconnected";
    case R::NextPathCycle: return "next path has a cycle";
    case R::ProgramStructure: return "program structure";
  }
  return "?";
}

std::vector<Violation> check_conformance(const TypedGraph& g, const TypeGraph& tg) {
  using R = Violation::Reason;
  std::vector<Violation> out;
  const auto node_violation = [&out](R r, NodeId n, std::string msg) {
    out.push_back({r, n, std::nullopt, std::move(msg)});
  };

  for (NodeId n = 0; n < g.node_count(); ++n) {
    const Node& node = g.node(n);
    if (!tg.has_node_type(node.kind)) {
      node_violation(R::UndeclaredNodeKind, n, "node " + std::to_string(n) + ": kind '" + node.kind + "' not declared");
      continue;
    }
    for (const AttrDecl& d : tg.attrs_of(node.kind)) {
      if (d.required && node.attrs.find(d.name) == node.attrs.end()) {
        node_violation(R::MissingAttribute, n, "node " + std::to_string(n) + " (" + node.kind + "): missing '" + d.name + "'");
      }
    }
    for (const auto& [name, value] : node.attrs) {
      const AttrDecl* d = tg.find_attr(node.kind, name);
      if (d == nullptr) {
        node_violation(R::UndeclaredAttribute, n, "node " + std::to_string(n) + " (" + node.kind + "): attribute '" + name + "' not declared");
      } else if (kind_of(value) != d->kind) {
        node_violation(R::WrongAttributeKind, n,
                       "node " + std::to_string(n) + " (" + node.kind + "): '" + name + "' is " +
                           std::string(to_string(kind_of(value))) + ", declared " + std::string(to_string(d->kind)));
      }
    }
  }

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const std::string& s = g.node(edge.src).kind;
    const std::string& d = g.node(edge.dst).kind;
    if (!tg.allows_edge(s, edge.label, d)) {
      out.push_back({R::UndeclaredEdge, std::nullopt, e,
                     "edge " + std::to_string(e) + ": (" + s + ", " + edge.label + ", " + d + ") not declared"});
    }
  }

  // The architecture sequence: "next" over {InputLayer, Layer} must be one simple path.
  std::vector<NodeId> seq_nodes;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const std::string& k = g.node(n).kind;
    if (k == kInputLayer || k == kLayer) seq_nodes.push_back(n);
  }
  const auto next_out = [&g](NodeId n) {
    std::vector<NodeId> r;
    for (NodeId t : g.successors(n, kNext)) {
      const std::string& k = g.node(t).kind;
      if (k == kInputLayer || k == kLayer) r.push_back(t);
    }
    return r;
  };
  const auto next_in_degree = [&g](NodeId n) {
    std::size_t c = 0;
    for (NodeId s : g.predecessors(n, kNext)) {
      const std::string& k = g.node(s).kind;
      c += (k == kInputLayer || k == kLayer) ? 1 : 0;
    }
    return c;
  };
  std::vector<NodeId> starts;
  for (NodeId n : seq_nodes) {
    if (next_out(n).size() > 1) node_violation(R::NextPathBranch, n, "node " + std::to_string(n) + " has several next successors");
    const std::size_t indeg = next_in_degree(n);
    if (indeg > 1) node_violation(R::NextPathMerge, n, "node " + std::to_string(n) + " has several next predecessors");
    if (indeg == 0) starts.push_back(n);
  }
  if (starts.size() > 1) {
    node_violation(R::NextPathDisconnected, starts[1],
                   "node " + std::to_string(starts[1]) + " starts a second next chain");
  }
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> stack(starts.begin(), starts.end());
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    if (seen[n]) continue;
    seen[n] = true;
    for (NodeId t : next_out(n)) stack.push_back(t);
  }
  for (NodeId n : seq_nodes) {
    if (!seen[n]) {
      node_violation(R::NextPathCycle, n, "node " + std::to_string(n) + " lies on a next cycle");
      break;
    }
  }

  const auto programs = g.nodes_of_kind(kDLProgram);
  if (programs.size() > 1) {
    node_violation(R::ProgramStructure, programs[1], "more than one DLProgram node");
  }
  for (NodeId p : programs) {
    std::size_t archs = 0;
    for (NodeId t : g.successors(p, kHas)) archs += g.node(t).kind == kArchitecture ? 1 : 0;
    if (archs != 1) {
      node_violation(R::ProgramStructure, p, "DLProgram has " + std::to_string(archs) + " Architecture nodes");
    }
  }
  return out;
}

std::string to_dot(const TypedGraph& g) {
  const auto escape = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  std::ostringstream os;
  os << "digraph model {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const Node& node = g.node(n);
    std::string label = node.kind;
    for (const auto& [k, v] : node.attrs) label += "\\n" + escape(k) + "=" + escape(to_display(v));
    os << "  n" << n << " [label=\"" << label << "\"";
    if (node.kind == kSmellAnnotation) os << ", style=filled, fillcolor=\"#f4a3a3\"";
    os << "];\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    os << "  n" << edge.src << " -> n" << edge.dst << " [label=\"" << escape(edge.label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fnnlint::ir
