#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fnnlint::ir {

struct IntPair {
  std::int64_t first = 0;
  std::int64_t second = 0;

  std::int64_t area() const noexcept { return first * second; }
  friend bool operator==(const IntPair&, const IntPair&) = default;
};

enum class ValueKind { Int, IntPair, Float, String, Bool };

/// Attribute value carried by graph nodes.
using AttrValue = std::variant<bool, std::int64_t, IntPair, double, std::string>;

ValueKind kind_of(const AttrValue& v) noexcept;
std::string_view to_string(ValueKind k) noexcept;
std::string to_display(const AttrValue& v);

}  // namespace fnnlint::ir
