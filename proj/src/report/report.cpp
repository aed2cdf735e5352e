#include "fnnlint/report/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fnnlint/error.hpp"
#include "fnnlint/ir/type_graph.hpp"
#include "json.hpp"

namespace fnnlint::report {
namespace {

using json = nlohmann::ordered_json;
namespace kinds = ir::kinds;
namespace labels = ir::labels;

bool architecture_anchored(const Finding& f) { return f.anchor_kind == kinds::kArchitecture; }

std::string fill_template(std::string_view tmpl, const ir::TypedGraph& g, ir::NodeId anchor) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const std::size_t open = tmpl.find('{', i);
    if (open == std::string_view::npos) break;
    const std::size_t close = tmpl.find('}', open);
    if (close == std::string_view::npos) break;
    out.append(tmpl.substr(i, open - i));
    const std::string_view key = tmpl.substr(open + 1, close - open - 1);
    const ir::AttrValue* v = g.attr(anchor, key);
    if (key == "type") {
      // Unknown constructors read better under their own name.
      if (const ir::AttrValue* c = g.attr(anchor, "constructor")) v = c;
    }
    out += v ? ir::to_display(*v) : "?";
    i = close + 1;
  }
  out.append(tmpl.substr(i));
  return out;
}

std::string where(const std::string& path, const std::optional<Position>& pos) {
  const Position p = pos.value_or(Position{1, 1});
  return path + ":" + std::to_string(p.line) + ":" + std::to_string(p.col);
}

json position_fields(json j, const std::optional<Position>& pos) {
  if (pos) {
    j["line"] = pos->line;
    j["col"] = pos->col;
  }
  return j;
}

std::optional<Position> parse_position(const json& j, const std::string& path) {
  const bool has_line = j.contains("line");
  if (has_line != j.contains("col")) throw SchemaError(path, "line and col must appear together");
  if (!has_line) return std::nullopt;
  if (!j["line"].is_number_integer() || !j["col"].is_number_integer()) throw SchemaError(path, "expected integer position");
  return Position{j["line"].get<int>(), j["col"].get<int>()};
}

std::string string_field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_string()) throw SchemaError(path + "." + key, "expected string");
  return j[key].get<std::string>();
}

}  // namespace

void sort_findings(std::vector<Finding>& findings) {
  std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    const auto key = [](const Finding& f) {
      return std::make_tuple(architecture_anchored(f), f.layer_index.value_or(-1), f.code);
    };
    return key(a) < key(b);
  });
}

std::vector<Finding> collect_findings(const ir::TypedGraph& g) {
  std::vector<Finding> out;
  for (ir::NodeId ann : g.nodes_of_kind(kinds::kSmellAnnotation)) {
    const auto anchors = g.predecessors(ann, labels::kFlaggedBy);
    if (anchors.empty()) continue;
    const ir::NodeId anchor = anchors.front();
    const auto code_name = ir::get_attr<std::string>(g, ann, "code").value_or("");
    const auto code = smells::code_from_name(code_name);
    if (!code) throw std::logic_error("annotation with unknown code '" + code_name + "'");

    Finding f;
    f.code = *code;
    f.severity = severity_from_string(ir::get_attr<std::string>(g, ann, "severity").value_or("")).value_or(Severity::Warning);
    f.anchor_kind = g.node(anchor).kind;
    if (f.anchor_kind == kinds::kLayer || f.anchor_kind == kinds::kInputLayer) {
      f.layer_index = ir::get_attr<std::int64_t>(g, anchor, "layer_index");
    }
    const auto line = ir::get_attr<std::int64_t>(g, ann, "line");
    const auto col = ir::get_attr<std::int64_t>(g, ann, "col");
    if (line && col) f.position = Position{static_cast<int>(*line), static_cast<int>(*col)};

    const auto key = ir::get_attr<std::string>(g, ann, "message_key").value_or("");
    const auto tmpl = smells::message_template(key);
    f.message = tmpl ? fill_template(*tmpl, g, anchor) : key;
    f.refactoring = std::string(smells::smell_info(*code).refactoring);
    out.push_back(std::move(f));
  }
  sort_findings(out);
  return out;
}

Report make_report(std::string source_path, std::vector<Finding> findings, std::vector<Skipped> skipped) {
  Report r;
  r.source_path = std::move(source_path);
  sort_findings(findings);
  r.findings = std::move(findings);
  r.skipped = std::move(skipped);
  for (const auto& f : r.findings) ++r.counts[std::string(smells::code_name(f.code))];
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  for (const Finding& f : r.findings) {
    const auto& info = smells::smell_info(f.code);
    os << where(r.source_path, f.position) << ": " << to_string(f.severity) << ' ' << smells::code_name(f.code) << ' '
       << info.title << ": " << f.message;
    if (architecture_anchored(f)) {
      os << " (whole model)";
    } else if (!f.position && f.layer_index) {
      os << " (layer " << *f.layer_index << ')';
    }
    os << "\n    fix: " << f.refactoring << '\n';
  }
  for (const Skipped& s : r.skipped) {
    os << where(r.source_path, s.position) << ": note: " << s.message << '\n';
  }
  if (r.findings.empty()) os << r.source_path << ": no design smells detected\n";
  return os.str();
}

std::string render_json(const Report& r) {
  json doc = json::object();
  doc["source"] = r.source_path;
  json findings = json::array();
  for (const Finding& f : r.findings) {
    json j = json::object();
    j["code"] = std::string(smells::code_name(f.code));
    j["severity"] = std::string(to_string(f.severity));
    j["anchor"] = f.anchor_kind;
    if (f.layer_index) j["layer_index"] = *f.layer_index;
    j = position_fields(std::move(j), f.position);
    j["title"] = std::string(smells::smell_info(f.code).title);
    j["message"] = f.message;
    j["refactoring"] = f.refactoring;
    findings.push_back(std::move(j));
  }
  doc["findings"] = std::move(findings);
  json counts = json::object();
  for (const auto& [code, n] : r.counts) counts[code] = n;
  doc["counts"] = std::move(counts);
  json skipped = json::array();
  for (const Skipped& s : r.skipped) skipped.push_back(position_fields(json{{"message", s.message}}, s.position));
  doc["skipped"] = std::move(skipped);
  return doc.dump();
}

Report parse_report_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("<document>", e.what());
  }
  if (!doc.is_object()) throw SchemaError("<document>", "expected object");
  Report r;
  r.source_path = string_field(doc, "source", "");
  if (!doc.contains("findings") || !doc["findings"].is_array()) throw SchemaError("findings", "expected array");
  for (std::size_t i = 0; i < doc["findings"].size(); ++i) {
    const json& j = doc["findings"][i];
    const std::string path = "findings[" + std::to_string(i) + "]";
    if (!j.is_object()) throw SchemaError(path, "expected object");
    Finding f;
    const auto code = smells::code_from_name(string_field(j, "code", path));
    if (!code) throw SchemaError(path + ".code", "unknown smell code");
    f.code = *code;
    const auto sev = severity_from_string(string_field(j, "severity", path));
    if (!sev) throw SchemaError(path + ".severity", "expected info or warning");
    f.severity = *sev;
    f.anchor_kind = string_field(j, "anchor", path);
    if (j.contains("layer_index")) {
      if (!j["layer_index"].is_number_integer()) throw SchemaError(path + ".layer_index", "expected integer");
      f.layer_index = j["layer_index"].get<std::int64_t>();
    }
    f.position = parse_position(j, path);
    f.message = string_field(j, "message", path);
    f.refactoring = string_field(j, "refactoring", path);
    r.findings.push_back(std::move(f));
  }
  if (doc.contains("counts")) {
    if (!doc["counts"].is_object()) throw SchemaError("counts", "expected object");
    for (const auto& [code, n] : doc["counts"].items()) {
      if (!n.is_number_integer()) throw SchemaError("counts." + code, "expected integer");
      r.counts[code] = n.get<int>();
    }
  }
  if (doc.contains("skipped")) {
    if (!doc["skipped"].is_array()) throw SchemaError("skipped", "expected array");
    for (std::size_t i = 0; i < doc["skipped"].size(); ++i) {
      const json& j = doc["skipped"][i];
      const std::string path = "skipped[" + std::to_string(i) + "]";
      if (!j.is_object()) throw SchemaError(path, "expected object");
      r.skipped.push_back({string_field(j, "message", path), parse_position(j, path)});
    }
  }
  return r;
}

}  // namespace fnnlint::report
