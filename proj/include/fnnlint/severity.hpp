#pragma once

#include <optional>
#include <string_view>

namespace fnnlint {

enum class Severity { Info, Warning };

constexpr std::string_view to_string(Severity s) noexcept { return s == Severity::Info ? "info" : "warning"; }

inline std::optional<Severity> severity_from_string(std::string_view s) noexcept {
  if (s == "info") return Severity::Info;
  if (s == "warning") return Severity::Warning;
  return std::nullopt;
}

}  // namespace fnnlint
