#include "fnnlint/smells/rules.hpp"

#include <algorithm>
#include <cmath>

#include "fnnlint/ir/type_graph.hpp"

namespace fnnlint::smells {
namespace {

using gts::attr;
using gts::CmpOp;
using gts::constant;
using gts::Projection;
using gts::Rule;
namespace kinds = fnnlint::ir::kinds;
namespace labels = fnnlint::ir::labels;

Severity severity_for(const Thresholds& cfg, SmellCode code, Severity fallback) {
  auto it = cfg.severity_overrides.find(code_name(code));
  return it == cfg.severity_overrides.end() ? fallback : it->second;
}

Rule make_rule(std::string name, SmellCode code, const Thresholds& cfg, Severity severity, std::string message_key) {
  Rule r;
  r.name = std::move(name);
  r.smell_code = std::string(code_name(code));
  r.effect.severity = severity_for(cfg, code, severity);
  r.effect.message_key = std::move(message_key);
  return r;
}

gts::Pid add_node(Rule& r, std::string_view kind) {
  r.lhs.nodes.push_back({std::string(kind)});
  return r.lhs.nodes.size() - 1;
}

void add_edge(Rule& r, gts::Pid a, std::string_view label, gts::Pid b) {
  r.lhs.edges.push_back({a, std::string(label), b});
}

void require(Rule& r, gts::Term lhs, CmpOp op, gts::Term rhs) {
  r.lhs.guards.push_back({std::move(lhs), op, std::move(rhs)});
}

/// Single Layer node of the given type.
Rule single_layer(std::string name, SmellCode code, const Thresholds& cfg, Severity sev, std::string key,
                  std::string_view type) {
  Rule r = make_rule(std::move(name), code, cfg, sev, std::move(key));
  const auto l = add_node(r, kinds::kLayer);
  require(r, attr(l, "type"), CmpOp::Eq, constant(ir::AttrValue(std::string(type))));
  r.anchor = l;
  return r;
}

/// Two layers linked by value_next: first of type/family `a`, second of `b`.
Rule value_pair(std::string name, SmellCode code, const Thresholds& cfg, std::string key, std::string_view a_attr,
                std::string_view a_value, std::string_view b_attr, std::string_view b_value, bool anchor_first) {
  Rule r = make_rule(std::move(name), code, cfg, Severity::Warning, std::move(key));
  const auto a = add_node(r, kinds::kLayer);
  const auto b = add_node(r, kinds::kLayer);
  add_edge(r, a, labels::kValueNext, b);
  require(r, attr(a, std::string(a_attr)), CmpOp::Eq, constant(ir::AttrValue(std::string(a_value))));
  require(r, attr(b, std::string(b_attr)), CmpOp::Eq, constant(ir::AttrValue(std::string(b_value))));
  r.anchor = anchor_first ? a : b;
  return r;
}

}  // namespace

std::pair<std::int64_t, std::int64_t> to_fraction(double x) {
  constexpr std::int64_t kMaxDen = 1'000'000;
  // Continued-fraction convergents h/k.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int i = 0; i < 64; ++i) {
    const double a_f = std::floor(rest);
    const auto a = static_cast<std::int64_t>(a_f);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > kMaxDen) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12 * std::max(1.0, std::abs(x))) break;
    const double frac = rest - a_f;
    if (frac <= 0.0) break;
    rest = 1.0 / frac;
  }
  return {h1, k1};
}

std::vector<Rule> rule_ds1(const Thresholds& cfg) {
  std::vector<Rule> out;
  const auto stage_pair = [&](std::string name, Severity sev, std::string key, CmpOp op) {
    Rule r = make_rule(std::move(name), SmellCode::DS1, cfg, sev, std::move(key));
    const auto prev = add_node(r, kinds::kLayer);
    const auto first = add_node(r, kinds::kLayer);
    add_edge(r, prev, labels::kConvNext, first);
    require(r, attr(prev, "stage_id"), CmpOp::Ne, attr(first, "stage_id"));
    require(r, attr(first, "stage_max_filters"), op, attr(prev, "stage_max_filters"));
    r.anchor = first;
    return r;
  };
  out.push_back(stage_pair("ds1_shrinking_stage", Severity::Warning, "ds1.decrease", CmpOp::Lt));
  if (cfg.flag_equal_filters) {
    out.push_back(stage_pair("ds1_flat_stage", Severity::Info, "ds1.equal", CmpOp::Eq));
  }
  return out;
}

std::vector<Rule> rule_ds2(const Thresholds& cfg) {
  Rule r = make_rule("ds2_shrinking_kernel", SmellCode::DS2, cfg, Severity::Warning, "ds2.shrinking_kernel");
  const auto prev = add_node(r, kinds::kLayer);
  const auto cur = add_node(r, kinds::kLayer);
  add_edge(r, prev, labels::kConvNext, cur);
  require(r, attr(cur, "kernel", Projection::Area), CmpOp::Lt, attr(prev, "kernel", Projection::Area));
  r.anchor = cur;
  return {r};
}

std::vector<Rule> rule_ds3(const Thresholds& cfg) {
  Rule large = make_rule("ds3_large_kernel", SmellCode::DS3, cfg, Severity::Info, "ds3.large_kernel");
  const auto l = add_node(large, kinds::kLayer);
  require(large, attr(l, "family"), CmpOp::Eq, constant("conv"));
  require(large, attr(l, "kernel", Projection::Area), CmpOp::Ge, constant(cfg.large_kernel_min_area));
  large.anchor = l;

  Rule block = make_rule("ds3_singleton_block", SmellCode::DS3, cfg, Severity::Info, "ds3.singleton_block");
  const auto arch = add_node(block, kinds::kArchitecture);
  const auto conv = add_node(block, kinds::kLayer);
  add_edge(block, arch, labels::kHasLayer, conv);
  require(block, attr(arch, "is_deep"), CmpOp::Eq, constant(ir::AttrValue(true)));
  require(block, attr(conv, "family"), CmpOp::Eq, constant("conv"));
  require(block, attr(conv, "stage_conv_count"), CmpOp::Lt, constant(cfg.homogeneous_block_min));
  // Both sub-rules share one DS3 slot per layer; a large kernel takes it,
  // so the annotation does not depend on application order.
  gts::Nac defer;
  defer.guards.push_back(
      {attr(conv, "kernel", Projection::Area), CmpOp::Ge, constant(cfg.large_kernel_min_area)});
  block.nacs.push_back(std::move(defer));
  block.anchor = conv;
  return {large, block};
}

std::vector<Rule> rule_ds4(const Thresholds& cfg) {
  const auto [num, den] = to_fraction(cfg.pool_ratio_max);
  Rule r = make_rule("ds4_excess_pooling", SmellCode::DS4, cfg, Severity::Warning, "ds4.excess_pooling");
  const auto arch = add_node(r, kinds::kArchitecture);
  require(r, attr(arch, "is_deep"), CmpOp::Eq, constant(ir::AttrValue(true)));
  require(r, attr(arch, "n_pool", Projection::None, den), CmpOp::Gt,
          attr(arch, "n_arch_layers", Projection::None, num));
  r.anchor = arch;
  return {r};
}

std::vector<Rule> rule_ds5(const Thresholds& cfg) {
  std::vector<Rule> out;
  out.push_back(single_layer("ds5_avg_pool_1d", SmellCode::DS5, cfg, Severity::Info, "ds5.average_pooling", "AvgPool1D"));
  out.push_back(single_layer("ds5_avg_pool_2d", SmellCode::DS5, cfg, Severity::Info, "ds5.average_pooling", "AvgPool2D"));
  if (!cfg.exempt_global_avg_pool) {
    out.push_back(single_layer("ds5_global_avg_pool", SmellCode::DS5, cfg, Severity::Info,
                               "ds5.global_average_pooling", "GlobalAvgPool"));
  }
  return out;
}

std::vector<Rule> rule_ds6(const Thresholds& cfg) {
  return {value_pair("ds6_dropout_before_pool", SmellCode::DS6, cfg, "ds6.dropout_before_pooling", "type", "Dropout",
                     "family", "pool", true)};
}

std::vector<Rule> rule_ds7(const Thresholds& cfg) {
  std::vector<Rule> out;
  for (std::string_view family : {"conv", "dense"}) {
    Rule r = value_pair("ds7_" + std::string(family) + "_bias_before_batchnorm", SmellCode::DS7, cfg,
                        "ds7.bias_before_batchnorm", "family", family, "type", "BatchNorm", true);
    require(r, attr(0, "use_bias"), CmpOp::Eq, constant(ir::AttrValue(true)));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Rule> rule_ds8(const Thresholds& cfg) {
  return {value_pair("ds8_batchnorm_after_dropout", SmellCode::DS8, cfg, "ds8.batchnorm_after_dropout", "type",
                     "Dropout", "type", "BatchNorm", false)};
}

std::vector<Rule> rules_for(SmellCode code, const Thresholds& cfg) {
  switch (code) {
    case SmellCode::DS1: return rule_ds1(cfg);
    case SmellCode::DS2: return rule_ds2(cfg);
    case SmellCode::DS3: return rule_ds3(cfg);
    case SmellCode::DS4: return rule_ds4(cfg);
    case SmellCode::DS5: return rule_ds5(cfg);
    case SmellCode::DS6: return rule_ds6(cfg);
    case SmellCode::DS7: return rule_ds7(cfg);
    case SmellCode::DS8: return rule_ds8(cfg);
  }
  return {};
}

std::vector<Rule> default_ruleset(const Thresholds& cfg, const std::set<SmellCode>& enabled) {
  cfg.validate();
  std::vector<Rule> out;
  for (SmellCode c : kAllCodes) {
    if (!enabled.count(c)) continue;
    auto rules = rules_for(c, cfg);
    out.insert(out.end(), std::make_move_iterator(rules.begin()), std::make_move_iterator(rules.end()));
  }
  return out;
}

std::vector<Rule> default_ruleset(const Thresholds& cfg, const std::vector<std::string>& enabled) {
  return default_ruleset(cfg, parse_codes(enabled));
}

}  // namespace fnnlint::smells
