#include "fnnlint/smells/catalogue.hpp"

#include <utility>

#include "fnnlint/error.hpp"
#include "fnnlint/smells/thresholds.hpp"

namespace fnnlint::smells {
namespace {

constexpr std::array<SmellInfo, 8> kCatalogue{{
    {SmellCode::DS1, "Non-expanding feature map",
     "Increase the number of filters from each convolutional stage to the next while pooling reduces the "
     "spatial size, so the feature space gets deeper as it gets narrower."},
    {SmellCode::DS2, "Losing local correlation",
     "Keep the convolution window the same size or larger in deeper layers: start with small kernels and "
     "widen them gradually."},
    {SmellCode::DS3, "Heterogeneous blocks of CNNs",
     "Build deep CNNs from blocks of 2 to 4 homogeneous convolutions with matching filter counts, and replace "
     "a large kernel by a stack of small ones (for example two 3x3 instead of one 5x5)."},
    {SmellCode::DS4, "Too much down-sampling",
     "Do not pool after every convolution in a deep CNN; keep pooling layers at or below one third of all "
     "convolution and pooling layers."},
    {SmellCode::DS5, "Non-dominating down-sampling",
     "Down-sample with max-pooling instead of average-pooling."},
    {SmellCode::DS6, "Useless Dropout",
     "Move the Dropout layer after the pooling layer instead of placing it in front of it."},
    {SmellCode::DS7, "Bias with Batchnorm",
     "Turn off the bias (use_bias=False) of a learning layer whose output goes straight into batch "
     "normalization."},
    {SmellCode::DS8, "Non-representative Statistics Estimation",
     "Put batch normalization before dropout rather than after it."},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 11> kMessages{{
    {"ds1.decrease", "{type} opens a stage with at most {stage_max_filters} filters, fewer than the previous stage"},
    {"ds1.equal", "{type} opens a stage that keeps the previous stage's filter count ({stage_max_filters})"},
    {"ds2.shrinking_kernel", "{type} kernel {kernel} is smaller than the kernel of the preceding convolution"},
    {"ds3.large_kernel", "{type} uses a large {kernel} kernel"},
    {"ds3.singleton_block", "{type} is a convolutional block of only {stage_conv_count} layer(s) in a deep network"},
    {"ds4.excess_pooling", "{n_pool} of {n_arch_layers} convolution/pooling layers are pooling layers"},
    {"ds5.average_pooling", "{type} down-samples by averaging"},
    {"ds5.global_average_pooling", "{type} down-samples by global averaging"},
    {"ds6.dropout_before_pooling", "Dropout (rate {rate}) is applied right before a pooling layer"},
    {"ds7.bias_before_batchnorm", "{type} keeps its bias although its output feeds BatchNormalization"},
    {"ds8.batchnorm_after_dropout", "BatchNormalization follows Dropout and estimates statistics on dropped activations"},
}};

}  // namespace

std::string_view code_name(SmellCode c) noexcept {
  static constexpr std::array<std::string_view, 8> kNames{"DS1", "DS2", "DS3", "DS4", "DS5", "DS6", "DS7", "DS8"};
  return kNames[static_cast<std::size_t>(c)];
}

std::optional<SmellCode> code_from_name(std::string_view name) noexcept {
  for (SmellCode c : kAllCodes) {
    if (code_name(c) == name) return c;
  }
  return std::nullopt;
}

std::set<SmellCode> parse_codes(const std::vector<std::string>& names) {
  std::set<SmellCode> out;
  for (const auto& n : names) {
    const auto c = code_from_name(n);
    if (!c) throw UnknownCode(n);
    out.insert(*c);
  }
  return out;
}

const SmellInfo& smell_info(SmellCode c) noexcept { return kCatalogue[static_cast<std::size_t>(c)]; }

std::optional<std::string_view> message_template(std::string_view message_key) noexcept {
  for (const auto& [key, text] : kMessages) {
    if (key == message_key) return text;
  }
  return std::nullopt;
}

void Thresholds::validate() const {
  if (deep_min_layers < 1) throw UsageError("deep_min_layers must be >= 1");
  if (!(pool_ratio_max > 0.0 && pool_ratio_max < 1.0)) throw UsageError("pool_ratio_max must lie in (0, 1)");
  if (large_kernel_min_area < 1) throw UsageError("large_kernel_min_area must be >= 1");
  if (homogeneous_block_min < 1) throw UsageError("homogeneous_block_min must be >= 1");
  for (const auto& [code, _] : severity_overrides) {
    if (!code_from_name(code)) throw UnknownCode(code);
  }
}

}  // namespace fnnlint::smells
