#include "fnnlint/frontend/extract.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fnnlint/error.hpp"
#include "fnnlint/frontend/syntax.hpp"
#include "fnnlint/ir/ir_json.hpp"

namespace fnnlint::frontend {

using ir::IntPair;
using ir::LayerRecord;
using ir::LayerTag;

namespace {

enum class Family { Conv, Dense, Dropout, WindowPool, GlobalPool, BatchNorm, Activation, Shape, Input };

struct Ctor {
  LayerTag tag;
  Family family;
  /// Activation name for the standalone activation classes (ReLU, ...).
  std::string_view activation{};
};

const std::map<std::string, Ctor, std::less<>>& registry() {
  static const std::map<std::string, Ctor, std::less<>> table{
      {"Dense", {LayerTag::Dense, Family::Dense}},
      {"Conv1D", {LayerTag::Conv1D, Family::Conv}},
      {"Convolution1D", {LayerTag::Conv1D, Family::Conv}},
      {"Conv2D", {LayerTag::Conv2D, Family::Conv}},
      {"Convolution2D", {LayerTag::Conv2D, Family::Conv}},
      {"MaxPooling1D", {LayerTag::MaxPool1D, Family::WindowPool}},
      {"MaxPool1D", {LayerTag::MaxPool1D, Family::WindowPool}},
      {"MaxPooling2D", {LayerTag::MaxPool2D, Family::WindowPool}},
      {"MaxPool2D", {LayerTag::MaxPool2D, Family::WindowPool}},
      {"AveragePooling1D", {LayerTag::AvgPool1D, Family::WindowPool}},
      {"AvgPool1D", {LayerTag::AvgPool1D, Family::WindowPool}},
      {"AveragePooling2D", {LayerTag::AvgPool2D, Family::WindowPool}},
      {"AvgPool2D", {LayerTag::AvgPool2D, Family::WindowPool}},
      {"GlobalAveragePooling1D", {LayerTag::GlobalAvgPool, Family::GlobalPool}},
      {"GlobalAveragePooling2D", {LayerTag::GlobalAvgPool, Family::GlobalPool}},
      {"GlobalAvgPool1D", {LayerTag::GlobalAvgPool, Family::GlobalPool}},
      {"GlobalAvgPool2D", {LayerTag::GlobalAvgPool, Family::GlobalPool}},
      {"GlobalMaxPooling1D", {LayerTag::GlobalMaxPool, Family::GlobalPool}},
      {"GlobalMaxPooling2D", {LayerTag::GlobalMaxPool, Family::GlobalPool}},
      {"GlobalMaxPool1D", {LayerTag::GlobalMaxPool, Family::GlobalPool}},
      {"GlobalMaxPool2D", {LayerTag::GlobalMaxPool, Family::GlobalPool}},
      {"Dropout", {LayerTag::Dropout, Family::Dropout}},
      {"SpatialDropout1D", {LayerTag::Dropout, Family::Dropout}},
      {"SpatialDropout2D", {LayerTag::Dropout, Family::Dropout}},
      {"BatchNormalization", {LayerTag::BatchNorm, Family::BatchNorm}},
      {"Flatten", {LayerTag::Flatten, Family::Shape}},
      {"Reshape", {LayerTag::Reshape, Family::Shape}},
      {"Activation", {LayerTag::Activation, Family::Activation}},
      {"ReLU", {LayerTag::Activation, Family::Activation, "relu"}},
      {"LeakyReLU", {LayerTag::Activation, Family::Activation, "leaky_relu"}},
      {"PReLU", {LayerTag::Activation, Family::Activation, "prelu"}},
      {"ELU", {LayerTag::Activation, Family::Activation, "elu"}},
      {"Softmax", {LayerTag::Activation, Family::Activation, "softmax"}},
      {"InputLayer", {LayerTag::Input, Family::Input}},
      {"Input", {LayerTag::Input, Family::Input}},
  };
  return table;
}

/// Positional parameter order per family, in canonical names.
std::vector<std::string_view> positional_params(Family f) {
  switch (f) {
    case Family::Conv: return {"filters", "kernel_size", "strides", "padding"};
    case Family::Dense: return {"units", "activation", "use_bias"};
    case Family::Dropout: return {"rate"};
    case Family::WindowPool: return {"pool_size", "strides", "padding"};
    case Family::Activation: return {"activation"};
    case Family::Input: return {"input_shape"};
    default: return {};
  }
}

/// Older parameter spellings mapped to canonical names.
std::string_view canonical_keyword(std::string_view k) {
  static const std::map<std::string_view, std::string_view> kAliases{
      {"nb_filter", "filters"},      {"filter_length", "kernel_size"}, {"subsample", "strides"},
      {"subsample_length", "strides"}, {"stride", "strides"},        {"border_mode", "padding"},
      {"bias", "use_bias"},          {"output_dim", "units"},          {"p", "rate"},
      {"pool_length", "pool_size"},  {"shape", "input_shape"},
  };
  auto it = kAliases.find(k);
  return it == kAliases.end() ? k : it->second;
}

Pos span_of(const Expr& e) { return e.begin; }

bool is_non_literal(const Expr& e) {
  return e.kind == ExprKind::Name || e.kind == ExprKind::Call || e.kind == ExprKind::Other;
}

class Extractor {
public:
  explicit Extractor(std::string_view source) : src_(source), toks_(tokenize(source)) {}

  ExtractionResult run() {
    for (const Statement& s : split_statements(toks_)) {
      if (s.depth > 0 || s.compound) {
        scan_block_statement(s);
      } else {
        top_level(s);
      }
    }
    if (!model_) throw NoModelFound();
    ir::validate(result_.ir);
    return std::move(result_);
  }

private:
  void warn(std::string msg, Pos at) {
    result_.diagnostics.push_back({ExtractionDiagnostic::Level::Warning, std::move(msg), at});
  }

  std::string text_of(const Expr& e) const { return std::string(src_.substr(e.offset, e.end_offset - e.offset)); }

  /// Final path segment after substituting an imported alias for the head.
  std::string resolve(const std::vector<std::string>& path) const {
    if (path.empty()) return {};
    if (path.size() == 1) {
      auto it = aliases_.find(path.front());
      if (it != aliases_.end()) return it->second.back();
    }
    return path.back();
  }

  bool is_sequential_call(const Expr& e) const { return e.kind == ExprKind::Call && resolve(e.path) == "Sequential"; }

  bool is_layer_call(const Expr& e) const {
    return e.kind == ExprKind::Call && registry().contains(resolve(e.path));
  }

  const SourceToken& tok(std::size_t i) const { return toks_[i]; }
  bool punct_at(std::size_t i, std::size_t last, std::string_view p) const {
    return i < last && toks_[i].kind == TokenKind::Punct && toks_[i].text == p;
  }
  bool ident_at(std::size_t i, std::size_t last) const { return i < last && toks_[i].kind == TokenKind::Ident; }

  /// Index just past a dotted name starting at i, or i when none.
  std::size_t skip_dotted(std::size_t i, std::size_t last, std::vector<std::string>* path = nullptr) const {
    if (!ident_at(i, last)) return i;
    std::size_t j = i;
    while (ident_at(j, last)) {
      if (path) path->push_back(toks_[j].text);
      ++j;
      if (punct_at(j, last, ".") && ident_at(j + 1, last)) {
        ++j;
      } else {
        break;
      }
    }
    return j;
  }

  void top_level(const Statement& s) {
    const std::size_t first = s.first;
    const std::size_t last = s.last;
    const SourceToken& head = tok(first);
    if (head.kind == TokenKind::Ident && (head.text == "import" || head.text == "from")) {
      for (ImportBinding& b : parse_import(toks_, first, last)) aliases_[b.local] = std::move(b.target);
      return;
    }
    // NAME = <dotted>(  where the callee resolves to Sequential.
    if (ident_at(first, last) && punct_at(first + 1, last, "=")) {
      std::vector<std::string> path;
      const std::size_t after = skip_dotted(first + 2, last, &path);
      if (after > first + 2 && punct_at(after, last, "(") && resolve(path) == "Sequential") {
        Expr rhs = parse_expression(toks_, first + 2, last);
        if (rhs.kind == ExprKind::Call) sequential(head.text, rhs);
      }
      return;
    }
    // NAME.add(  /  NAME.compile(
    if (ident_at(first, last) && punct_at(first + 1, last, ".") && ident_at(first + 2, last) &&
        punct_at(first + 3, last, "(") && (tok(first + 2).text == "add" || tok(first + 2).text == "compile")) {
      Expr e = parse_expression(toks_, first, last);
      if (e.kind != ExprKind::Call || e.path.size() != 2) return;
      if (e.path[1] == "add") {
        add_call(e.path[0], e);
      } else {
        compile_call(e.path[0], e);
      }
    }
  }

  /// Model-building code that is not evaluated: warn once per statement.
  void scan_block_statement(const Statement& s) {
    for (std::size_t i = s.first; i < s.last; ++i) {
      bool hit = false;
      if (punct_at(i, s.last, ".") && ident_at(i + 1, s.last) && punct_at(i + 2, s.last, "(")) {
        const std::string& m = tok(i + 1).text;
        if (m == "add") {
          std::vector<std::string> path;
          const std::size_t after = skip_dotted(i + 3, s.last, &path);
          hit = after > i + 3 && punct_at(after, s.last, "(") && registry().contains(resolve(path));
        } else if (m == "compile" && model_ && i > s.first && tok(i - 1).text == *model_) {
          hit = true;
        }
      }
      if (!hit && ident_at(i, s.last) && (i == s.first || !punct_at(i - 1, s.last, "."))) {
        std::vector<std::string> path;
        const std::size_t after = skip_dotted(i, s.last, &path);
        hit = punct_at(after, s.last, "(") && resolve(path) == "Sequential";
      }
      if (hit) {
        warn("model construction inside a block or compound statement is not evaluated", tok(s.first).span);
        return;
      }
    }
  }

  /// Returns true when `receiver` is (or now becomes) the analyzed model.
  bool claim(const std::string& receiver, Pos at) {
    if (!model_) {
      model_ = receiver;
      return true;
    }
    if (*model_ == receiver) return true;
    if (ignored_.insert(receiver).second) {
      warn("additional model '" + receiver + "' ignored; only '" + *model_ + "' is analyzed", at);
    }
    return false;
  }

  void sequential(const std::string& target, const Expr& call) {
    if (model_ && *model_ == target) {
      warn("model '" + target + "' reassigned; the later definition is ignored", call.begin);
      return;
    }
    if (!claim(target, call.begin)) return;
    const Expr* list = call.keyword("layers");
    if (!list && !call.items.empty()) list = &call.items.front();
    if (!list || list->kind == ExprKind::None) return;
    if (list->kind != ExprKind::List && list->kind != ExprKind::Tuple) {
      warn("non-literal layer list passed to Sequential", list->begin);
      return;
    }
    for (const Expr& item : list->items) add_layer(item);
  }

  void add_call(const std::string& receiver, const Expr& call) {
    if (call.items.size() != 1 || !call.keyword_names.empty()) {
      if (model_ && *model_ == receiver) warn("add() expects exactly one layer argument", call.begin);
      return;
    }
    const Expr& arg = call.items.front();
    // Without a Sequential assignment, the first receiver of a layer add()
    // becomes the model; anything else may be an unrelated container.
    if (!model_ && !is_layer_call(arg)) return;
    if (model_ && *model_ != receiver && !is_layer_call(arg)) return;
    if (!claim(receiver, call.begin)) return;
    add_layer(arg);
  }

  void compile_call(const std::string& receiver, const Expr& call) {
    if (!model_ || *model_ != receiver) return;
    const Expr* opt = call.keyword("optimizer");
    if (!opt && !call.items.empty()) opt = &call.items[0];
    const Expr* loss = call.keyword("loss");
    if (!loss && call.items.size() > 1) loss = &call.items[1];
    // The last compile() wins for each field it names.
    ir::LearnerConfig cfg;
    if (opt) cfg.optimizer = learner_name(*opt, "optimizer");
    if (loss) cfg.loss = learner_name(*loss, "loss");
    result_.ir.learner = cfg;
  }

  std::optional<std::string> learner_name(const Expr& e, std::string_view what) {
    switch (e.kind) {
      case ExprKind::String: return e.str_value;
      case ExprKind::Call:
      case ExprKind::Name: return resolve(e.path);
      case ExprKind::None: return std::nullopt;
      default:
        warn("non-literal argument '" + std::string(what) + "' to compile", e.begin);
        return std::nullopt;
    }
  }

  void add_layer(const Expr& e) {
    if (e.kind != ExprKind::Call) {
      warn("non-literal layer expression is not evaluated", e.begin);
      return;
    }
    const std::string name = resolve(e.path);
    LayerRecord rec;
    rec.source_span = ir::SourceSpan{e.name_pos.line, e.name_pos.col, e.close_pos.line, e.close_pos.col + 1};
    for (const Expr& a : e.items) rec.raw_args.push_back({std::nullopt, text_of(a)});
    for (std::size_t k = 0; k < e.keyword_names.size(); ++k) {
      rec.raw_args.push_back({e.keyword_names[k], text_of(e.keyword_values[k])});
    }

    auto it = registry().find(name);
    if (it == registry().end()) {
      warn("unknown layer constructor '" + name + "' recorded as Other", e.name_pos);
      rec.kind = ir::LayerKind::other(name);
      take_input_shape(e);
      push(std::move(rec));
      return;
    }
    const Ctor& ctor = it->second;
    if (ctor.family == Family::Input) {
      input_layer(e, std::move(rec));
      return;
    }
    rec.kind = ctor.tag;
    fill(rec, ctor, name, e);
    take_input_shape(e);
    push(std::move(rec));
  }

  void push(LayerRecord rec) { result_.ir.layers.push_back(std::move(rec)); }

  void input_layer(const Expr& e, LayerRecord rec) {
    if (!result_.ir.layers.empty()) {
      warn("input layer after other layers is ignored", e.name_pos);
      return;
    }
    rec.kind = LayerTag::Input;
    take_input_shape(e);
    push(std::move(rec));
  }

  /// Canonical parameter name → argument expression.
  std::map<std::string, const Expr*, std::less<>> arguments(const Expr& call, Family family, std::string_view ctor) {
    std::map<std::string, const Expr*, std::less<>> args;
    std::vector<std::string_view> order = positional_params(family);
    // Old-style Convolution2D(filters, rows, cols).
    const bool keras1_conv = ctor == "Convolution2D" && call.items.size() >= 3 &&
                             call.items[1].kind == ExprKind::Int && call.items[2].kind == ExprKind::Int;
    if (keras1_conv) order = {"filters", "nb_row", "nb_col"};
    for (std::size_t k = 0; k < call.items.size(); ++k) {
      if (k < order.size()) args[std::string(order[k])] = &call.items[k];
    }
    for (std::size_t k = 0; k < call.keyword_names.size(); ++k) {
      args[std::string(canonical_keyword(call.keyword_names[k]))] = &call.keyword_values[k];
    }
    return args;
  }

  /// Shared prelude for value conversions. Returns false after warning when
  /// the argument cannot be interpreted.
  bool literal(const Expr& e, std::string_view param, std::string_view ctor) {
    if (is_non_literal(e)) {
      warn("non-literal argument '" + std::string(param) + "' to " + std::string(ctor) + " recorded as absent",
           span_of(e));
      return false;
    }
    return e.kind != ExprKind::None;
  }

  void bad_value(const Expr& e, std::string_view param, std::string_view ctor) {
    warn("unsupported value for '" + std::string(param) + "' in " + std::string(ctor) + " recorded as absent",
         span_of(e));
  }

  std::optional<std::int64_t> positive_int(const Expr& e, std::string_view param, std::string_view ctor) {
    if (!literal(e, param, ctor)) return std::nullopt;
    if (e.kind == ExprKind::Int && e.int_value >= 1) return e.int_value;
    bad_value(e, param, ctor);
    return std::nullopt;
  }

  std::optional<IntPair> pair(const Expr& e, std::string_view param, std::string_view ctor) {
    if (!literal(e, param, ctor)) return std::nullopt;
    if (e.kind == ExprKind::Int && e.int_value >= 1) return IntPair{e.int_value, e.int_value};
    if ((e.kind == ExprKind::Tuple || e.kind == ExprKind::List) && (e.items.size() == 1 || e.items.size() == 2)) {
      const Expr& a = e.items.front();
      const Expr& b = e.items.back();
      for (const Expr* c : {&a, &b}) {
        if (is_non_literal(*c)) {
          literal(*c, param, ctor);
          return std::nullopt;
        }
      }
      if (a.kind == ExprKind::Int && b.kind == ExprKind::Int && a.int_value >= 1 && b.int_value >= 1) {
        return IntPair{a.int_value, b.int_value};
      }
    }
    bad_value(e, param, ctor);
    return std::nullopt;
  }

  std::optional<std::string> string_value(const Expr& e, std::string_view param, std::string_view ctor) {
    if (e.kind == ExprKind::Name) return resolve(e.path);
    if (!literal(e, param, ctor)) return std::nullopt;
    if (e.kind == ExprKind::String) return e.str_value;
    bad_value(e, param, ctor);
    return std::nullopt;
  }

  std::optional<bool> bool_value(const Expr& e, std::string_view param, std::string_view ctor) {
    if (!literal(e, param, ctor)) return std::nullopt;
    if (e.kind == ExprKind::Bool) return e.bool_value;
    bad_value(e, param, ctor);
    return std::nullopt;
  }

  std::optional<double> rate_value(const Expr& e, std::string_view param, std::string_view ctor) {
    if (!literal(e, param, ctor)) return std::nullopt;
    double v = -1.0;
    if (e.kind == ExprKind::Float) v = e.float_value;
    if (e.kind == ExprKind::Int) v = static_cast<double>(e.int_value);
    if (v >= 0.0 && v <= 1.0) return v;
    bad_value(e, param, ctor);
    return std::nullopt;
  }

  void fill(LayerRecord& rec, const Ctor& ctor, const std::string& name, const Expr& call) {
    const auto args = arguments(call, ctor.family, name);
    const auto get = [&](std::string_view k) -> const Expr* {
      auto it = args.find(k);
      return it == args.end() ? nullptr : it->second;
    };
    if (const Expr* a = get("activation")) rec.activation = string_value(*a, "activation", name);
    switch (ctor.family) {
      case Family::Conv: {
        if (const Expr* a = get("filters")) rec.filters = positive_int(*a, "filters", name);
        if (const Expr* a = get("kernel_size")) {
          rec.kernel = pair(*a, "kernel_size", name);
        } else if (get("nb_row") || get("nb_col")) {
          std::optional<std::int64_t> r, c;
          if (const Expr* a = get("nb_row")) r = positive_int(*a, "nb_row", name);
          if (const Expr* a = get("nb_col")) c = positive_int(*a, "nb_col", name);
          if (r && c) rec.kernel = IntPair{*r, *c};
        }
        rec.strides = IntPair{1, 1};
        if (const Expr* a = get("strides")) rec.strides = pair(*a, "strides", name);
        rec.padding = "valid";
        if (const Expr* a = get("padding")) rec.padding = string_value(*a, "padding", name);
        rec.use_bias = true;
        if (const Expr* a = get("use_bias")) rec.use_bias = bool_value(*a, "use_bias", name);
        break;
      }
      case Family::Dense:
        if (const Expr* a = get("units")) rec.size = positive_int(*a, "units", name);
        rec.use_bias = true;
        if (const Expr* a = get("use_bias")) rec.use_bias = bool_value(*a, "use_bias", name);
        break;
      case Family::Dropout:
        if (const Expr* a = get("rate")) rec.rate = rate_value(*a, "rate", name);
        break;
      case Family::WindowPool:
        rec.pool_size = IntPair{2, 2};
        if (const Expr* a = get("pool_size")) rec.pool_size = pair(*a, "pool_size", name);
        if (const Expr* a = get("strides")) rec.strides = pair(*a, "strides", name);
        rec.padding = "valid";
        if (const Expr* a = get("padding")) rec.padding = string_value(*a, "padding", name);
        break;
      case Family::Activation:
        if (!ctor.activation.empty()) rec.activation = std::string(ctor.activation);
        break;
      default:
        break;
    }
  }

  /// Records the model input shape from the first layer that declares one.
  void take_input_shape(const Expr& call) {
    if (result_.ir.input_shape || shape_seen_) return;
    const Expr* e = nullptr;
    bool drop_batch = false;
    bool scalar_ok = false;
    if ((e = call.keyword("input_shape")) || (e = call.keyword("shape"))) {
    } else if ((e = call.keyword("batch_input_shape"))) {
      drop_batch = true;
    } else if ((e = call.keyword("input_dim"))) {
      scalar_ok = true;
    } else if (call.items.size() == 1 && registry().contains(resolve(call.path)) &&
               registry().at(resolve(call.path)).family == Family::Input) {
      e = &call.items.front();
    }
    if (!e) return;
    shape_seen_ = true;
    const std::string ctor = resolve(call.path);
    if (is_non_literal(*e)) {
      literal(*e, "input_shape", ctor);
      return;
    }
    std::vector<std::int64_t> dims;
    if (scalar_ok && e->kind == ExprKind::Int) {
      if (e->int_value >= 1) dims.push_back(e->int_value);
    } else if (e->kind == ExprKind::Tuple || e->kind == ExprKind::List) {
      for (std::size_t k = drop_batch ? 1 : 0; k < e->items.size(); ++k) {
        const Expr& d = e->items[k];
        if (d.kind != ExprKind::Int || d.int_value < 1) {
          bad_value(*e, "input_shape", ctor);
          return;
        }
        dims.push_back(d.int_value);
      }
    }
    if (dims.empty()) {
      bad_value(*e, "input_shape", ctor);
      return;
    }
    result_.ir.input_shape = std::move(dims);
  }

  std::string_view src_;
  std::vector<SourceToken> toks_;
  std::map<std::string, std::vector<std::string>, std::less<>> aliases_;
  std::optional<std::string> model_;
  std::set<std::string, std::less<>> ignored_;
  bool shape_seen_ = false;
  ExtractionResult result_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buf.str();
}

}  // namespace

std::optional<LayerTag> resolve_layer_name(std::string_view name) {
  auto it = registry().find(name);
  if (it == registry().end()) return std::nullopt;
  return it->second.tag;
}

ExtractionResult extract_model(std::string_view source) { return Extractor(source).run(); }

ExtractionResult extract_from_path(const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".py") {
    ExtractionResult r = extract_model(read_file(path));
    r.ir.source_path = path;
    return r;
  }
  if (ext == ".json") {
    ExtractionResult r;
    r.ir = ir::load_ir_json(read_file(path));
    if (r.ir.source_path.empty()) r.ir.source_path = path;
    return r;
  }
  throw UnsupportedExtension(path);
}

}  // namespace fnnlint::frontend
