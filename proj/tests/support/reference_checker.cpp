#include "reference_checker.hpp"

#include <algorithm>
#include <optional>

namespace fnnlint::testkit {

using ir::LayerRecord;
using ir::LayerTag;

namespace {

struct Item {
  std::int64_t index;
  const LayerRecord* rec;
  LayerTag tag() const { return rec->kind.tag; }
};

bool conv_tag(LayerTag t) { return t == LayerTag::Conv1D || t == LayerTag::Conv2D; }
bool window_pool_tag(LayerTag t) {
  return t == LayerTag::MaxPool1D || t == LayerTag::MaxPool2D || t == LayerTag::AvgPool1D || t == LayerTag::AvgPool2D;
}
bool pool_tag(LayerTag t) { return window_pool_tag(t) || t == LayerTag::GlobalAvgPool || t == LayerTag::GlobalMaxPool; }
bool shape_tag(LayerTag t) { return t == LayerTag::Flatten || t == LayerTag::Reshape; }

Severity sev(const smells::Thresholds& cfg, const std::string& code, Severity dflt) {
  auto it = cfg.severity_overrides.find(code);
  return it == cfg.severity_overrides.end() ? dflt : it->second;
}

}  // namespace

std::multiset<RefFinding> reference_findings(const ir::ModelIR& model, const smells::Thresholds& cfg,
                                             const std::set<smells::SmellCode>& enabled) {
  using smells::SmellCode;
  std::vector<Item> layers;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    if (i == 0 && model.layers[i].kind.tag == LayerTag::Input) continue;
    layers.push_back({static_cast<std::int64_t>(i), &model.layers[i]});
  }

  // Stages: a pooling layer ends the current stage once it holds a conv.
  std::vector<std::vector<Item>> stages(1);
  std::int64_t n_conv = 0, n_pool = 0;
  for (const Item& it : layers) {
    if (conv_tag(it.tag())) {
      ++n_conv;
      stages.back().push_back(it);
    } else if (pool_tag(it.tag())) {
      ++n_pool;
      if (!stages.back().empty()) stages.emplace_back();
    }
  }
  if (stages.back().empty()) stages.pop_back();
  const std::int64_t n_arch = n_conv + n_pool;
  const bool deep = n_arch >= cfg.deep_min_layers;

  std::multiset<RefFinding> out;
  const auto on = [&](SmellCode c) { return enabled.contains(c); };

  if (on(SmellCode::DS1)) {
    const auto max_filters = [](const std::vector<Item>& s) -> std::optional<std::int64_t> {
      std::int64_t m = 0;
      for (const Item& it : s) {
        if (!it.rec->filters) return std::nullopt;
        m = std::max(m, *it.rec->filters);
      }
      return m;
    };
    for (std::size_t s = 1; s < stages.size(); ++s) {
      const auto a = max_filters(stages[s - 1]);
      const auto b = max_filters(stages[s]);
      if (!a || !b) continue;
      if (*b < *a) {
        out.insert({stages[s].front().index, "DS1", sev(cfg, "DS1", Severity::Warning)});
      } else if (*b == *a && cfg.flag_equal_filters) {
        out.insert({stages[s].front().index, "DS1", sev(cfg, "DS1", Severity::Info)});
      }
    }
  }

  if (on(SmellCode::DS2)) {
    const Item* prev = nullptr;
    for (const Item& it : layers) {
      if (!conv_tag(it.tag())) continue;
      if (prev && prev->rec->kernel && it.rec->kernel && it.rec->kernel->area() < prev->rec->kernel->area()) {
        out.insert({it.index, "DS2", sev(cfg, "DS2", Severity::Warning)});
      }
      prev = &it;
    }
  }

  if (on(SmellCode::DS3)) {
    std::set<std::int64_t> flagged;
    for (const Item& it : layers) {
      if (conv_tag(it.tag()) && it.rec->kernel && it.rec->kernel->area() >= cfg.large_kernel_min_area) {
        flagged.insert(it.index);
      }
    }
    if (deep) {
      for (const auto& s : stages) {
        if (static_cast<std::int64_t>(s.size()) < cfg.homogeneous_block_min) {
          for (const Item& it : s) flagged.insert(it.index);
        }
      }
    }
    for (std::int64_t i : flagged) out.insert({i, "DS3", sev(cfg, "DS3", Severity::Info)});
  }

  if (on(SmellCode::DS4) && deep && n_arch > 0) {
    const long double ratio = static_cast<long double>(n_pool) / static_cast<long double>(n_arch);
    if (ratio > static_cast<long double>(cfg.pool_ratio_max) + 1e-9L) {
      out.insert({-1, "DS4", sev(cfg, "DS4", Severity::Warning)});
    }
  }

  if (on(SmellCode::DS5)) {
    for (const Item& it : layers) {
      const LayerTag t = it.tag();
      if (t == LayerTag::AvgPool1D || t == LayerTag::AvgPool2D ||
          (t == LayerTag::GlobalAvgPool && !cfg.exempt_global_avg_pool)) {
        out.insert({it.index, "DS5", sev(cfg, "DS5", Severity::Info)});
      }
    }
  }

  // Neighbours across shape-only layers.
  std::vector<Item> value_seq;
  for (const Item& it : layers) {
    if (!shape_tag(it.tag())) value_seq.push_back(it);
  }
  for (std::size_t k = 0; k + 1 < value_seq.size(); ++k) {
    const Item& a = value_seq[k];
    const Item& b = value_seq[k + 1];
    if (on(SmellCode::DS6) && a.tag() == LayerTag::Dropout && window_pool_tag(b.tag())) {
      out.insert({a.index, "DS6", sev(cfg, "DS6", Severity::Warning)});
    }
    const bool learning = conv_tag(a.tag()) || a.tag() == LayerTag::Dense;
    if (on(SmellCode::DS7) && learning && a.rec->use_bias == true && b.tag() == LayerTag::BatchNorm) {
      out.insert({a.index, "DS7", sev(cfg, "DS7", Severity::Warning)});
    }
    if (on(SmellCode::DS8) && a.tag() == LayerTag::Dropout && b.tag() == LayerTag::BatchNorm) {
      out.insert({b.index, "DS8", sev(cfg, "DS8", Severity::Warning)});
    }
  }
  return out;
}

}  // namespace fnnlint::testkit
