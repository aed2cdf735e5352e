#include "fnnlint/ir/value.hpp"

#include <sstream>

namespace fnnlint::ir {

ValueKind kind_of(const AttrValue& v) noexcept {
  switch (v.index()) {
    case 0: return ValueKind::Bool;
    case 1: return ValueKind::Int;
    case 2: return ValueKind::IntPair;
    case 3: return ValueKind::Float;
    default: return ValueKind::String;
  }
}

std::string_view to_string(ValueKind k) noexcept {
  switch (k) {
    case ValueKind::Int: return "int";
    case ValueKind::IntPair: return "int_pair";
    case ValueKind::Float: return "float";
    case ValueKind::String: return "string";
    case ValueKind::Bool: return "bool";
  }
  return "?";
}

std::string to_display(const AttrValue& v) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          os << (x ? "true" : "false");
        } else if constexpr (std::is_same_v<T, IntPair>) {
          os << x.first << 'x' << x.second;
        } else {
          os << x;
        }
      },
      v);
  return os.str();
}

}  // namespace fnnlint::ir
