#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnnlint/ir/typed_graph.hpp"
#include "fnnlint/severity.hpp"
#include "fnnlint/smells/catalogue.hpp"

namespace fnnlint::report {

struct Position {
  int line = 0;
  int col = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Finding {
  smells::SmellCode code = smells::SmellCode::DS1;
  Severity severity = Severity::Warning;
  std::string anchor_kind;
  std::optional<std::int64_t> layer_index;
  std::optional<Position> position;
  std::string message;
  std::string refactoring;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// An extraction warning carried into the report (a layer or argument the
/// analysis had to skip).
struct Skipped {
  std::string message;
  std::optional<Position> position;

  friend bool operator==(const Skipped&, const Skipped&) = default;
};

struct Report {
  std::string source_path;
  std::vector<Finding> findings;
  std::vector<Skipped> skipped;
  std::map<std::string, int> counts;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Sort order: by layer_index then code; architecture-anchored findings last.
void sort_findings(std::vector<Finding>& findings);

/// One Finding per SmellAnnotation node of a post-fixpoint graph.
std::vector<Finding> collect_findings(const ir::TypedGraph& final_graph);

/// Sorts the findings and fills counts.
Report make_report(std::string source_path, std::vector<Finding> findings, std::vector<Skipped> skipped = {});

std::string render_text(const Report& r);
/// Single-line JSON document.
std::string render_json(const Report& r);
/// Inverse of render_json. Throws SchemaError on malformed input.
Report parse_report_json(std::string_view text);

}  // namespace fnnlint::report
