#include <gtest/gtest.h>

#include "fnnlint/cli/cli.hpp"
#include "fnnlint/error.hpp"
#include "fnnlint/smells/rules.hpp"
#include "generators.hpp"

using namespace fnnlint;
using ir::IntPair;
using ir::LayerRecord;
using ir::LayerTag;
using smells::SmellCode;

namespace {

LayerRecord conv(std::int64_t filters, std::int64_t k = 3, bool bias = true) {
  LayerRecord r;
  r.kind = LayerTag::Conv2D;
  r.filters = filters;
  r.kernel = IntPair{k, k};
  r.use_bias = bias;
  return r;
}
LayerRecord of(LayerTag t) {
  LayerRecord r;
  r.kind = t;
  return r;
}
LayerRecord pool() { return of(LayerTag::MaxPool2D); }
LayerRecord dense(bool bias = true) {
  LayerRecord r = of(LayerTag::Dense);
  r.size = 10;
  r.use_bias = bias;
  return r;
}

using Found = std::vector<std::tuple<std::int64_t, std::string, Severity>>;

Found run(const std::vector<LayerRecord>& layers, cli::CliConfig cfg = {}) {
  ir::ModelIR m;
  m.layers = layers;
  const auto a = cli::analyze(m, {}, cfg);
  Found out;
  for (const auto& f : a.report.findings) {
    out.emplace_back(f.layer_index.value_or(-1), std::string(smells::code_name(f.code)), f.severity);
  }
  return out;
}

Found only(const Found& all, std::string_view code) {
  Found out;
  for (const auto& f : all) {
    if (std::get<1>(f) == code) out.push_back(f);
  }
  return out;
}

/// convs and pools laid out as conv-pairs followed by pools, n_conv + n_pool layers.
std::vector<LayerRecord> arch(int n_conv, int n_pool) {
  std::vector<LayerRecord> out;
  std::int64_t filters = 16;
  int c = 0, p = 0;
  while (c < n_conv || p < n_pool) {
    for (int k = 0; k < 2 && c < n_conv; ++k, ++c) out.push_back(conv(filters));
    filters *= 2;
    if (p < n_pool) {
      out.push_back(pool());
      ++p;
    }
  }
  return out;
}

}  // namespace

TEST(DS1, EqualStagesAreInfo) {
  const Found f = only(run({conv(32), pool(), conv(32), pool(), conv(32), pool()}), "DS1");
  EXPECT_EQ(f, (Found{{2, "DS1", Severity::Info}, {4, "DS1", Severity::Info}}));
}

TEST(DS1, GrowingStagesClean) { EXPECT_TRUE(only(run({conv(32), pool(), conv(64), pool(), conv(128)}), "DS1").empty()); }

TEST(DS1, DecreaseIsWarning) {
  EXPECT_EQ(only(run({conv(64), pool(), conv(32)}), "DS1"), (Found{{2, "DS1", Severity::Warning}}));
}

TEST(DS1, EqualitySilencedByConfig) {
  cli::CliConfig cfg;
  cfg.thresholds.flag_equal_filters = false;
  EXPECT_TRUE(only(run({conv(32), pool(), conv(32)}, cfg), "DS1").empty());
}

TEST(DS1, UnknownFiltersSkipped) {
  LayerRecord c = conv(1);
  c.filters.reset();
  EXPECT_TRUE(only(run({conv(64), pool(), c, pool(), conv(8)}), "DS1").empty());
}

TEST(DS1, StageUsesMaximumFilters) {
  // Stage 0 peaks at 64, stage 1 at 64: equal, not a decrease.
  EXPECT_EQ(only(run({conv(16), conv(64), pool(), conv(64), conv(32)}), "DS1"), (Found{{3, "DS1", Severity::Info}}));
}

TEST(DS2, ShrinkingKernel) {
  EXPECT_EQ(only(run({conv(8, 5), conv(8, 3)}), "DS2"), (Found{{1, "DS2", Severity::Warning}}));
  EXPECT_TRUE(only(run({conv(8, 3), conv(8, 3), conv(8, 5)}), "DS2").empty());
  EXPECT_TRUE(only(run({conv(8, 3)}), "DS2").empty());
}

TEST(DS2, NearestPrecedingConvAcrossOtherLayers) {
  EXPECT_EQ(only(run({conv(8, 5), pool(), of(LayerTag::Dropout), conv(16, 3)}), "DS2"),
            (Found{{3, "DS2", Severity::Warning}}));
}

TEST(DS3, LargeKernel) { EXPECT_EQ(only(run({conv(8, 7)}), "DS3"), (Found{{0, "DS3", Severity::Info}})); }

TEST(DS3, SingletonStageOnlyWhenDeep) {
  // 8 convs + 4 pools = 12 layers; the stage at index 3 holds one conv.
  std::vector<LayerRecord> deep{conv(8), conv(8), pool(), conv(16), pool(), conv(32), conv(32), conv(32),
                                pool(), conv(64), conv(64), pool()};
  EXPECT_EQ(only(run(deep), "DS3"), (Found{{3, "DS3", Severity::Info}}));
  std::vector<LayerRecord> shallow{conv(8), pool(), conv(16), pool()};
  EXPECT_TRUE(only(run(shallow), "DS3").empty());
}

TEST(DS3, OneFindingWhenBothSubRulesApply) {
  std::vector<LayerRecord> deep{conv(8), conv(8), pool(), conv(16, 5), pool(), conv(32, 5), conv(32, 5), conv(32, 5),
                                pool(), conv(64, 5), conv(64, 5), pool()};
  const Found f = only(run(deep), "DS3");
  EXPECT_EQ(std::count(f.begin(), f.end(), std::make_tuple(std::int64_t{3}, std::string("DS3"), Severity::Info)), 1);
}

TEST(DS4, Boundaries) {
  // 12 layers with 4 pools: exactly 1/3, strict comparison → clean.
  EXPECT_TRUE(only(run(arch(8, 4)), "DS4").empty());
  // One more pool: 5/13 > 1/3.
  auto more = arch(8, 4);
  more.push_back(pool());
  EXPECT_EQ(only(run(more), "DS4"), (Found{{-1, "DS4", Severity::Warning}}));
  // 12 layers with 5 pools.
  EXPECT_EQ(only(run(arch(7, 5)), "DS4").size(), 1u);
  // Ratio 1/2 but only 9 layers: not deep.
  auto nine = arch(5, 4);
  ASSERT_EQ(nine.size(), 9u);
  EXPECT_TRUE(only(run(nine), "DS4").empty());
  // Ratio 1/2 with 10 layers: deep → fires.
  auto ten = arch(5, 5);
  ASSERT_EQ(ten.size(), 10u);
  EXPECT_EQ(only(run(ten), "DS4").size(), 1u);
}

TEST(DS4, ConfigurableRatio) {
  cli::CliConfig cfg;
  cfg.thresholds.pool_ratio_max = 0.5;
  EXPECT_TRUE(only(run(arch(5, 5), cfg), "DS4").empty());
  cfg.thresholds.pool_ratio_max = 0.49;
  EXPECT_EQ(only(run(arch(5, 5), cfg), "DS4").size(), 1u);
}

TEST(DS4, MonotoneInPoolCount) {
  testkit::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    ir::ModelIR m = testkit::random_ir(rng, {10, 30, 0.1});
    cli::CliConfig cfg;
    cfg.enabled = {SmellCode::DS4};
    if (cli::analyze(m, {}, cfg).report.findings.empty()) continue;
    for (int extra = 0; extra < 3; ++extra) {
      const auto at = static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(1, m.layers.size())(rng));
      m.layers.insert(m.layers.begin() + at, pool());
      ASSERT_EQ(cli::analyze(m, {}, cfg).report.findings.size(), 1u);
    }
  }
}

TEST(DS5, AveragePooling) {
  EXPECT_EQ(only(run({conv(8), of(LayerTag::AvgPool2D)}), "DS5"), (Found{{1, "DS5", Severity::Info}}));
  EXPECT_TRUE(only(run({conv(8), pool()}), "DS5").empty());
  EXPECT_TRUE(only(run({conv(8), of(LayerTag::GlobalAvgPool)}), "DS5").empty());
  cli::CliConfig cfg;
  cfg.thresholds.exempt_global_avg_pool = false;
  EXPECT_EQ(only(run({conv(8), of(LayerTag::GlobalAvgPool)}, cfg), "DS5").size(), 1u);
}

TEST(DS6, DropoutBeforePooling) {
  EXPECT_EQ(only(run({conv(8), of(LayerTag::Dropout), pool()}), "DS6"), (Found{{1, "DS6", Severity::Warning}}));
  EXPECT_TRUE(only(run({conv(8), pool(), of(LayerTag::Dropout)}), "DS6").empty());
  EXPECT_EQ(only(run({of(LayerTag::Dropout), of(LayerTag::Flatten), pool()}), "DS6").size(), 1u);
  EXPECT_TRUE(only(run({of(LayerTag::Dropout), of(LayerTag::GlobalMaxPool)}), "DS6").empty());
}

TEST(DS7, BiasBeforeBatchnorm) {
  EXPECT_EQ(only(run({conv(64), of(LayerTag::BatchNorm)}), "DS7"), (Found{{0, "DS7", Severity::Warning}}));
  EXPECT_TRUE(only(run({conv(64, 3, false), of(LayerTag::BatchNorm)}), "DS7").empty());
  EXPECT_TRUE(only(run({conv(64), of(LayerTag::Activation), of(LayerTag::BatchNorm)}), "DS7").empty());
  EXPECT_EQ(only(run({dense(), of(LayerTag::BatchNorm)}), "DS7").size(), 1u);
  LayerRecord unknown_bias = conv(64);
  unknown_bias.use_bias.reset();
  EXPECT_TRUE(only(run({unknown_bias, of(LayerTag::BatchNorm)}), "DS7").empty());
}

TEST(DS8, DropoutBeforeBatchnorm) {
  EXPECT_EQ(only(run({of(LayerTag::Dropout), of(LayerTag::BatchNorm)}), "DS8"), (Found{{1, "DS8", Severity::Warning}}));
  EXPECT_TRUE(only(run({of(LayerTag::BatchNorm), of(LayerTag::Dropout)}), "DS8").empty());
  EXPECT_EQ(only(run({of(LayerTag::Dropout), of(LayerTag::Flatten), of(LayerTag::BatchNorm)}), "DS8").size(), 1u);
}

TEST(Ruleset, MlpHasNoFindings) { EXPECT_TRUE(run({dense(), dense(), dense(false), of(LayerTag::Activation)}).empty()); }

TEST(Ruleset, SeverityOverride) {
  cli::CliConfig cfg;
  cfg.thresholds.severity_overrides["DS5"] = Severity::Warning;
  EXPECT_EQ(only(run({conv(8), of(LayerTag::AvgPool2D)}, cfg), "DS5"), (Found{{1, "DS5", Severity::Warning}}));
}

TEST(Ruleset, RuleIndependence) {
  testkit::Rng rng(17);
  for (int i = 0; i < 150; ++i) {
    const ir::ModelIR m = testkit::random_ir(rng);
    cli::CliConfig all;
    const auto together = cli::analyze(m, {}, all).report.findings;
    for (SmellCode c : smells::kAllCodes) {
      cli::CliConfig one;
      one.enabled = {c};
      std::vector<report::Finding> want;
      for (const auto& f : together) {
        if (f.code == c) want.push_back(f);
      }
      ASSERT_EQ(cli::analyze(m, {}, one).report.findings, want) << smells::code_name(c);
    }
  }
}

TEST(Ruleset, UnknownCodeAndBadThresholds) {
  EXPECT_THROW(smells::default_ruleset({}, std::vector<std::string>{"DS9"}), UnknownCode);
  smells::Thresholds t;
  t.pool_ratio_max = 1.0;
  EXPECT_THROW(t.validate(), UsageError);
  t = {};
  t.deep_min_layers = 0;
  EXPECT_THROW(t.validate(), UsageError);
  t = {};
  t.severity_overrides["DS0"] = Severity::Info;
  EXPECT_THROW(t.validate(), UnknownCode);
}

TEST(Fraction, ExactForSimpleRatios) {
  EXPECT_EQ(smells::to_fraction(1.0 / 3.0), (std::pair<std::int64_t, std::int64_t>{1, 3}));
  EXPECT_EQ(smells::to_fraction(0.5), (std::pair<std::int64_t, std::int64_t>{1, 2}));
  EXPECT_EQ(smells::to_fraction(0.49), (std::pair<std::int64_t, std::int64_t>{49, 100}));
  EXPECT_EQ(smells::to_fraction(2.0 / 7.0), (std::pair<std::int64_t, std::int64_t>{2, 7}));
}
