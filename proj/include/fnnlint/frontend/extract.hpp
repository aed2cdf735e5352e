#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnnlint/frontend/lexer.hpp"
#include "fnnlint/ir/model_ir.hpp"

namespace fnnlint::frontend {

struct ExtractionDiagnostic {
  enum class Level { Warning, Error };
  Level severity = Level::Warning;
  std::string message;
  Pos span;

  friend bool operator==(const ExtractionDiagnostic&, const ExtractionDiagnostic&) = default;
};

struct ExtractionResult {
  ir::ModelIR ir;
  std::vector<ExtractionDiagnostic> diagnostics;
};

/// Looks up a layer constructor by its final path segment ("Conv2D",
/// "Convolution2D", "MaxPooling2D", ...).
std::optional<ir::LayerTag> resolve_layer_name(std::string_view name);

/// Extracts the first Sequential model from source text. Throws LexError,
/// ParseError (inside recognized statements) or NoModelFound.
ExtractionResult extract_model(std::string_view source);

/// Dispatches on extension: ".py" is extracted, ".json" is loaded as IR.
/// Throws UnsupportedExtension, IoError, or whatever the inner step throws.
ExtractionResult extract_from_path(const std::string& path);

}  // namespace fnnlint::frontend
