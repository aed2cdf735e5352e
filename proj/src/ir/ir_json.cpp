#include "fnnlint/ir/ir_json.hpp"

#include <initializer_list>

#include "fnnlint/error.hpp"
#include "json.hpp"

namespace fnnlint::ir {
namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw SchemaError(path.empty() ? key : path + "." + key, "unknown field");
  }
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

const json& object_at(const json& parent, const std::string& path, std::string_view key) {
  auto it = parent.find(key);
  if (it == parent.end()) throw SchemaError(join(path, key), "missing field");
  if (!it->is_object()) throw SchemaError(join(path, key), "expected object");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected integer");
  return v.get<std::int64_t>();
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw SchemaError(path, "expected boolean");
  return v.get<bool>();
}

IntPair as_pair(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw SchemaError(path, "expected [int, int]");
  return {as_int(v[0], path + "[0]"), as_int(v[1], path + "[1]")};
}

std::optional<std::string> nullable_string(const json& obj, const std::string& path, std::string_view key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return as_string(*it, join(path, key));
}

template <typename T, typename F>
std::optional<T> optional_field(const json& obj, const std::string& path, std::string_view key, F convert) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return convert(*it, join(path, key));
}

SourceSpan parse_span(const json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path, "expected object");
  reject_unknown(v, path, {"line", "col", "end_line", "end_col"});
  SourceSpan s;
  auto line = v.find("line");
  auto col = v.find("col");
  if (line == v.end()) throw SchemaError(path + ".line", "missing field");
  if (col == v.end()) throw SchemaError(path + ".col", "missing field");
  s.line = static_cast<int>(as_int(*line, path + ".line"));
  s.col = static_cast<int>(as_int(*col, path + ".col"));
  s.end_line = static_cast<int>(optional_field<std::int64_t>(v, path, "end_line", as_int).value_or(0));
  s.end_col = static_cast<int>(optional_field<std::int64_t>(v, path, "end_col", as_int).value_or(0));
  return s;
}

LayerRecord parse_layer(const json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path, "expected object");
  reject_unknown(v, path,
                 {"kind", "name", "size", "filters", "kernel", "strides", "pool_size", "rate", "use_bias",
                  "activation", "padding", "source_span", "raw_args"});
  LayerRecord l;
  auto kind_it = v.find("kind");
  if (kind_it == v.end()) throw SchemaError(path + ".kind", "missing field");
  const std::string kind = as_string(*kind_it, path + ".kind");
  auto tag = tag_from_name(kind);
  if (!tag) throw SchemaError(path + ".kind", "unknown layer kind '" + kind + "'");
  l.kind = *tag;
  if (*tag == LayerTag::Other) {
    auto name = v.find("name");
    if (name == v.end()) throw SchemaError(path + ".name", "missing field");
    l.kind.other_name = as_string(*name, path + ".name");
  } else if (v.contains("name")) {
    throw SchemaError(path + ".name", "only allowed for kind Other");
  }
  l.size = optional_field<std::int64_t>(v, path, "size", as_int);
  l.filters = optional_field<std::int64_t>(v, path, "filters", as_int);
  l.kernel = optional_field<IntPair>(v, path, "kernel", as_pair);
  l.strides = optional_field<IntPair>(v, path, "strides", as_pair);
  l.pool_size = optional_field<IntPair>(v, path, "pool_size", as_pair);
  l.rate = optional_field<double>(v, path, "rate", as_number);
  l.use_bias = optional_field<bool>(v, path, "use_bias", as_bool);
  l.activation = nullable_string(v, path, "activation");
  l.padding = optional_field<std::string>(v, path, "padding", as_string);
  l.source_span = optional_field<SourceSpan>(v, path, "source_span", parse_span);
  if (auto it = v.find("raw_args"); it != v.end()) {
    const std::string rpath = path + ".raw_args";
    if (!it->is_array()) throw SchemaError(rpath, "expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& a = (*it)[i];
      const std::string apath = rpath + "[" + std::to_string(i) + "]";
      if (!a.is_object()) throw SchemaError(apath, "expected object");
      reject_unknown(a, apath, {"name", "value"});
      RawArg arg;
      arg.name = nullable_string(a, apath, "name");
      auto val = a.find("value");
      if (val == a.end()) throw SchemaError(apath + ".value", "missing field");
      arg.literal = as_string(*val, apath + ".value");
      l.raw_args.push_back(std::move(arg));
    }
  }
  return l;
}

json pair_json(const IntPair& p) { return json::array({p.first, p.second}); }

json layer_json(const LayerRecord& l) {
  json j = json::object();
  j["kind"] = std::string(tag_name(l.kind.tag));
  if (l.kind.tag == LayerTag::Other) j["name"] = l.kind.other_name;
  if (l.size) j["size"] = *l.size;
  if (l.filters) j["filters"] = *l.filters;
  if (l.kernel) j["kernel"] = pair_json(*l.kernel);
  if (l.strides) j["strides"] = pair_json(*l.strides);
  if (l.pool_size) j["pool_size"] = pair_json(*l.pool_size);
  if (l.rate) j["rate"] = *l.rate;
  if (l.padding) j["padding"] = *l.padding;
  if (l.use_bias) j["use_bias"] = *l.use_bias;
  j["activation"] = l.activation ? json(*l.activation) : json(nullptr);
  if (l.source_span) {
    json s = {{"line", l.source_span->line}, {"col", l.source_span->col}};
    if (l.source_span->end_line != 0) s["end_line"] = l.source_span->end_line;
    if (l.source_span->end_col != 0) s["end_col"] = l.source_span->end_col;
    j["source_span"] = std::move(s);
  }
  if (!l.raw_args.empty()) {
    json args = json::array();
    for (const auto& a : l.raw_args) {
      args.push_back({{"name", a.name ? json(*a.name) : json(nullptr)}, {"value", a.literal}});
    }
    j["raw_args"] = std::move(args);
  }
  return j;
}

}  // namespace

ModelIR load_ir_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("<document>", e.what());
  }
  if (!doc.is_object()) throw SchemaError("<document>", "expected object");

  auto ver = doc.find("format_version");
  if (ver == doc.end()) throw SchemaError("format_version", "missing field");
  const std::int64_t version = as_int(*ver, "format_version");
  if (version != kFormatVersion) throw VersionError(version);

  reject_unknown(doc, "", {"format_version", "source_path", "input_shape", "learner", "layers"});

  ModelIR ir;
  ir.format_version = static_cast<int>(version);
  auto src = doc.find("source_path");
  if (src == doc.end()) throw SchemaError("source_path", "missing field");
  ir.source_path = as_string(*src, "source_path");

  if (auto shape = doc.find("input_shape"); shape != doc.end() && !shape->is_null()) {
    if (!shape->is_array()) throw SchemaError("input_shape", "expected array or null");
    std::vector<std::int64_t> dims;
    for (std::size_t i = 0; i < shape->size(); ++i) {
      dims.push_back(as_int((*shape)[i], "input_shape[" + std::to_string(i) + "]"));
    }
    ir.input_shape = std::move(dims);
  }

  const json& learner = object_at(doc, "", "learner");
  reject_unknown(learner, "learner", {"optimizer", "loss"});
  ir.learner.optimizer = nullable_string(learner, "learner", "optimizer");
  ir.learner.loss = nullable_string(learner, "learner", "loss");

  auto layers = doc.find("layers");
  if (layers == doc.end()) throw SchemaError("layers", "missing field");
  if (!layers->is_array()) throw SchemaError("layers", "expected array");
  for (std::size_t i = 0; i < layers->size(); ++i) {
    ir.layers.push_back(parse_layer((*layers)[i], "layers[" + std::to_string(i) + "]"));
  }

  validate(ir);
  return ir;
}

std::string save_ir_json(const ModelIR& ir, int indent) {
  json doc = json::object();
  doc["format_version"] = ir.format_version;
  doc["source_path"] = ir.source_path;
  doc["input_shape"] = ir.input_shape ? json(*ir.input_shape) : json(nullptr);
  doc["learner"] = {
      {"optimizer", ir.learner.optimizer ? json(*ir.learner.optimizer) : json(nullptr)},
      {"loss", ir.learner.loss ? json(*ir.learner.loss) : json(nullptr)},
  };
  json layers = json::array();
  for (const auto& l : ir.layers) layers.push_back(layer_json(l));
  doc["layers"] = std::move(layers);
  return doc.dump(indent);
}

}  // namespace fnnlint::ir
