#pragma once

#include <string>
#include <string_view>

#include "fnnlint/ir/model_ir.hpp"

namespace fnnlint::ir {

/// Parses an IR document (format_version 1). Unknown fields, wrong value
/// types and invariant violations raise SchemaError with the field path;
/// a different format_version raises VersionError.
ModelIR load_ir_json(std::string_view text);

/// Serializes with a fixed key order. Absent optional fields are omitted,
/// except the nullable ones (input_shape, learner.*, activation).
std::string save_ir_json(const ModelIR& ir, int indent = 2);

}  // namespace fnnlint::ir
