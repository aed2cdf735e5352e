#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fnnlint::smells {

enum class SmellCode { DS1, DS2, DS3, DS4, DS5, DS6, DS7, DS8 };

inline constexpr std::array<SmellCode, 8> kAllCodes{SmellCode::DS1, SmellCode::DS2, SmellCode::DS3, SmellCode::DS4,
                                                    SmellCode::DS5, SmellCode::DS6, SmellCode::DS7, SmellCode::DS8};

std::string_view code_name(SmellCode c) noexcept;
std::optional<SmellCode> code_from_name(std::string_view name) noexcept;
/// Throws UnknownCode for the first unrecognized name.
std::set<SmellCode> parse_codes(const std::vector<std::string>& names);

struct SmellInfo {
  SmellCode code;
  std::string_view title;
  std::string_view refactoring;
};

const SmellInfo& smell_info(SmellCode c) noexcept;

/// Message template for an annotation's message_key. Templates may contain
/// {attr} placeholders filled from the anchor node's attributes.
std::optional<std::string_view> message_template(std::string_view message_key) noexcept;

}  // namespace fnnlint::smells
