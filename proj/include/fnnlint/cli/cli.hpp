#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fnnlint/frontend/extract.hpp"
#include "fnnlint/ir/typed_graph.hpp"
#include "fnnlint/report/report.hpp"
#include "fnnlint/smells/catalogue.hpp"
#include "fnnlint/smells/thresholds.hpp"

namespace fnnlint::cli {

enum class Format { Text, Json };
enum class FailOn { None, Any, Warning };

struct CliConfig {
  std::vector<std::string> inputs;
  Format format = Format::Text;
  /// Empty means every smell.
  std::set<smells::SmellCode> enabled;
  std::set<smells::SmellCode> disabled;
  smells::Thresholds thresholds;
  FailOn fail_on = FailOn::Warning;
  bool dump_ir = false;
  bool dump_graph = false;
  unsigned jobs = 1;
};

/// Settings read from a config file; unset fields leave the base untouched.
struct PartialConfig {
  std::optional<std::vector<std::string>> inputs;
  std::optional<Format> format;
  std::optional<std::vector<std::string>> enabled;
  std::optional<std::vector<std::string>> disabled;
  std::vector<std::pair<std::string, std::string>> thresholds;
  std::optional<FailOn> fail_on;
  std::optional<bool> dump_ir;
  std::optional<bool> dump_graph;
  std::optional<unsigned> jobs;
};

/// Thrown by parse_args for --help; carries the help text.
struct HelpRequested {
  std::string text;
};

/// argv[0] is the program name. Throws UsageError, UnknownCode or HelpRequested.
CliConfig parse_args(const std::vector<std::string>& argv);

/// Parses a JSON config file. Throws IoError or UsageError.
PartialConfig load_config_file(const std::string& path);
PartialConfig parse_config_json(std::string_view text);

/// Applies a `key=value` threshold or `severity.DSk=level` setting.
/// Throws UsageError naming the key.
void set_threshold(smells::Thresholds& t, const std::string& key, const std::string& value);

/// The rule codes a config enables.
std::set<smells::SmellCode> active_codes(const CliConfig& cfg);

struct Analysis {
  report::Report report;
  ir::TypedGraph final_graph;
};

/// Graph pipeline on an already-extracted model: build, conformance,
/// decorate, fixpoint, report. Conformance violations throw Error.
Analysis analyze(const ir::ModelIR& model, const std::vector<frontend::ExtractionDiagnostic>& diagnostics,
                 const CliConfig& cfg);

/// Whether a report trips the fail_on gate.
bool qualifies(const report::Report& r, FailOn fail_on);

/// Processes every input; returns 0, 1 or 2.
int run(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Entry point used by the executable: parse, run, map errors to exit codes.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace fnnlint::cli
