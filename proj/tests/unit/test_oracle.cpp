#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fnnlint/cli/cli.hpp"
#include "fnnlint/error.hpp"
#include "generators.hpp"
#include "reference_checker.hpp"

using namespace fnnlint;
using testkit::RefFinding;

namespace {

std::multiset<RefFinding> engine_findings(const ir::ModelIR& m, const cli::CliConfig& cfg) {
  std::multiset<RefFinding> out;
  for (const auto& f : cli::analyze(m, {}, cfg).report.findings) {
    out.insert({f.layer_index.value_or(-1), std::string(smells::code_name(f.code)), f.severity});
  }
  return out;
}

std::string describe(const std::multiset<RefFinding>& fs) {
  std::ostringstream os;
  for (const auto& f : fs) os << "(" << f.layer_index << "," << f.code << "," << to_string(f.severity) << ") ";
  return os.str();
}

cli::CliConfig random_config(testkit::Rng& rng) {
  cli::CliConfig cfg;
  auto& t = cfg.thresholds;
  std::uniform_int_distribution<int> small(1, 14);
  t.deep_min_layers = small(rng);
  static constexpr std::array<double, 5> kRatios{1.0 / 3.0, 0.25, 0.5, 0.2, 0.4};
  t.pool_ratio_max = kRatios[rng() % kRatios.size()];
  static constexpr std::array<int, 4> kAreas{9, 15, 25, 49};
  t.large_kernel_min_area = kAreas[rng() % kAreas.size()];
  t.homogeneous_block_min = std::uniform_int_distribution<int>(1, 4)(rng);
  t.flag_equal_filters = rng() % 2 == 0;
  t.exempt_global_avg_pool = rng() % 2 == 0;
  if (rng() % 4 == 0) t.severity_overrides["DS1"] = Severity::Warning;
  if (rng() % 4 == 0) t.severity_overrides["DS6"] = Severity::Info;
  for (smells::SmellCode c : smells::kAllCodes) {
    if (rng() % 6 == 0) cfg.disabled.insert(c);
  }
  return cfg;
}

}  // namespace

TEST(LinearOracle, DefaultThresholds600RandomIrs) {
  testkit::Rng rng(424242);
  const cli::CliConfig cfg;
  std::size_t with_findings = 0;
  std::set<std::string> codes_seen;
  for (int i = 0; i < 600; ++i) {
    const ir::ModelIR m = testkit::random_ir(rng);
    const auto want = testkit::reference_findings(m, cfg.thresholds, cli::active_codes(cfg));
    const auto got = engine_findings(m, cfg);
    ASSERT_EQ(got, want) << "IR #" << i << "\nengine: " << describe(got) << "\noracle: " << describe(want);
    with_findings += want.empty() ? 0 : 1;
    for (const auto& f : want) codes_seen.insert(f.code);
  }
  // The generator must actually exercise every smell.
  EXPECT_EQ(codes_seen.size(), 8u);
  EXPECT_GT(with_findings, 300u);
}

TEST(LinearOracle, RandomThresholds500RandomIrs) {
  testkit::Rng rng(777);
  for (int i = 0; i < 500; ++i) {
    const cli::CliConfig cfg = random_config(rng);
    const ir::ModelIR m = testkit::random_ir(rng, {1, 30, 0.15});
    const auto want = testkit::reference_findings(m, cfg.thresholds, cli::active_codes(cfg));
    const auto got = engine_findings(m, cfg);
    ASSERT_EQ(got, want) << "IR #" << i << "\nengine: " << describe(got) << "\noracle: " << describe(want);
  }
}

TEST(LinearOracle, FixtureCorpus) {
  const cli::CliConfig cfg;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(FNNLINT_FIXTURE_DIR)) {
    if (entry.path().extension() != ".py") continue;
    ir::ModelIR m;
    try {
      m = frontend::extract_from_path(entry.path().string()).ir;
    } catch (const fnnlint::Error&) {
      continue;  // CLI error scenarios
    }
    ASSERT_EQ(engine_findings(m, cfg), testkit::reference_findings(m, cfg.thresholds, cli::active_codes(cfg)))
        << entry.path();
  }
}
