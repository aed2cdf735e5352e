#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fnnlint/gts/pattern.hpp"
#include "fnnlint/smells/catalogue.hpp"
#include "fnnlint/smells/thresholds.hpp"

namespace fnnlint::smells {

// Each builder returns the rules for one smell; all expect a decorated graph.

/// Adjacent conv stages whose maximum filter count shrinks (warning) or,
/// with flag_equal_filters, stays equal (info). Anchored on the first conv
/// of the later stage.
std::vector<gts::Rule> rule_ds1(const Thresholds& cfg);
/// A conv whose kernel area is below that of the preceding conv.
std::vector<gts::Rule> rule_ds2(const Thresholds& cfg);
/// (a) conv kernel area >= large_kernel_min_area; (b) in a deep network, a
/// conv whose stage holds fewer than homogeneous_block_min convs.
std::vector<gts::Rule> rule_ds3(const Thresholds& cfg);
/// Deep network with pool_ratio above pool_ratio_max, compared exactly as
/// q*n_pool > p*n_arch_layers where p/q is the threshold as a fraction.
std::vector<gts::Rule> rule_ds4(const Thresholds& cfg);
std::vector<gts::Rule> rule_ds5(const Thresholds& cfg);
std::vector<gts::Rule> rule_ds6(const Thresholds& cfg);
std::vector<gts::Rule> rule_ds7(const Thresholds& cfg);
std::vector<gts::Rule> rule_ds8(const Thresholds& cfg);

std::vector<gts::Rule> rules_for(SmellCode code, const Thresholds& cfg);

/// Enabled rules concatenated in code order. Validates cfg.
std::vector<gts::Rule> default_ruleset(const Thresholds& cfg, const std::set<SmellCode>& enabled);
/// Same, from code names; throws UnknownCode for an invalid name.
std::vector<gts::Rule> default_ruleset(const Thresholds& cfg, const std::vector<std::string>& enabled);

/// Closest fraction p/q (q <= 10^6) to x; exact for the thresholds users write.
std::pair<std::int64_t, std::int64_t> to_fraction(double x);

}  // namespace fnnlint::smells
