#pragma once

#include <map>
#include <string>

#include "fnnlint/severity.hpp"

namespace fnnlint::smells {

/// Tunable detection thresholds. Defaults follow the published guidance:
/// a CNN is deep from 10 conv+pool layers, at most a third of those may be
/// pooling, kernels from 5x5 up count as large, blocks hold at least 2 convs.
struct Thresholds {
  int deep_min_layers = 10;
  double pool_ratio_max = 1.0 / 3.0;
  int large_kernel_min_area = 25;
  int homogeneous_block_min = 2;
  bool flag_equal_filters = true;
  bool exempt_global_avg_pool = true;
  /// Per smell code ("DS5" -> warning); replaces every default severity of that code.
  std::map<std::string, Severity, std::less<>> severity_overrides;

  /// Throws UsageError naming the first out-of-range field.
  void validate() const;
};

}  // namespace fnnlint::smells
