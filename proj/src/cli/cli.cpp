#include "fnnlint/cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fnnlint/error.hpp"
#include "fnnlint/gts/decorate.hpp"
#include "fnnlint/gts/engine.hpp"
#include "fnnlint/ir/build.hpp"
#include "fnnlint/ir/ir_json.hpp"
#include "fnnlint/ir/type_graph.hpp"
#include "fnnlint/smells/rules.hpp"
#include "json.hpp"

namespace fnnlint::cli {

namespace {

Format format_from(const std::string& s, const std::string& where) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  throw UsageError(where + ": expected text or json, got '" + s + "'");
}

FailOn fail_on_from(const std::string& s, const std::string& where) {
  if (s == "none") return FailOn::None;
  if (s == "any") return FailOn::Any;
  if (s == "warning") return FailOn::Warning;
  throw UsageError(where + ": expected none, any or warning, got '" + s + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError("invalid value '" + value + "' for threshold '" + key + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw UsageError("invalid value '" + value + "' for threshold '" + key + "' (expected true or false)");
}

std::vector<std::string> split_codes(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

void apply(CliConfig& cfg, const PartialConfig& p) {
  if (p.inputs) cfg.inputs = *p.inputs;
  if (p.format) cfg.format = *p.format;
  if (p.enabled) cfg.enabled = smells::parse_codes(*p.enabled);
  if (p.disabled) cfg.disabled = smells::parse_codes(*p.disabled);
  for (const auto& [k, v] : p.thresholds) set_threshold(cfg.thresholds, k, v);
  if (p.fail_on) cfg.fail_on = *p.fail_on;
  if (p.dump_ir) cfg.dump_ir = *p.dump_ir;
  if (p.dump_graph) cfg.dump_graph = *p.dump_graph;
  if (p.jobs) cfg.jobs = *p.jobs;
}

std::string describe(const Error& e) {
  if (const auto* se = dynamic_cast<const SourceError*>(&e)) {
    return std::to_string(se->line()) + ":" + std::to_string(se->col()) + ": " + e.what();
  }
  return e.what();
}

struct FileOutcome {
  int code = 0;
  std::string out;
  std::string err;
};

FileOutcome process(const std::string& path, const CliConfig& cfg) {
  FileOutcome r;
  try {
    frontend::ExtractionResult ex = frontend::extract_from_path(path);
    Analysis a = analyze(ex.ir, ex.diagnostics, cfg);
    if (cfg.dump_ir) r.out += ir::save_ir_json(ex.ir) + "\n";
    if (cfg.dump_graph) r.out += ir::to_dot(a.final_graph);
    r.out += cfg.format == Format::Json ? report::render_json(a.report) + "\n" : report::render_text(a.report);
    r.code = qualifies(a.report, cfg.fail_on) ? 1 : 0;
  } catch (const Error& e) {
    r.code = 2;
    r.err = "fnnlint: " + path + ": " + describe(e) + "\n";
  }
  return r;
}

}  // namespace

void set_threshold(smells::Thresholds& t, const std::string& key, const std::string& value) {
  if (key == "deep_min_layers") {
    t.deep_min_layers = parse_number<int>(key, value);
  } else if (key == "pool_ratio_max") {
    t.pool_ratio_max = parse_number<double>(key, value);
  } else if (key == "large_kernel_min_area") {
    t.large_kernel_min_area = parse_number<int>(key, value);
  } else if (key == "homogeneous_block_min") {
    t.homogeneous_block_min = parse_number<int>(key, value);
  } else if (key == "flag_equal_filters") {
    t.flag_equal_filters = parse_bool(key, value);
  } else if (key == "exempt_global_avg_pool") {
    t.exempt_global_avg_pool = parse_bool(key, value);
  } else if (key.rfind("severity.", 0) == 0) {
    const std::string code = key.substr(9);
    if (!smells::code_from_name(code)) throw UsageError("unknown threshold key '" + key + "'");
    const auto sev = severity_from_string(value);
    if (!sev) throw UsageError("invalid value '" + value + "' for '" + key + "' (expected info or warning)");
    t.severity_overrides[code] = *sev;
  } else {
    throw UsageError("unknown threshold key '" + key + "'");
  }
}

PartialConfig parse_config_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config: top level must be an object");
  PartialConfig p;
  const auto strings = [](const json& v, const std::string& key) {
    if (!v.is_array()) throw UsageError("config: '" + key + "' must be a list of strings");
    std::vector<std::string> out;
    for (const json& s : v) {
      if (!s.is_string()) throw UsageError("config: '" + key + "' must be a list of strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  };
  const auto boolean = [](const json& v, const std::string& key) {
    if (!v.is_boolean()) throw UsageError("config: '" + key + "' must be a boolean");
    return v.get<bool>();
  };
  const auto string = [](const json& v, const std::string& key) {
    if (!v.is_string()) throw UsageError("config: '" + key + "' must be a string");
    return v.get<std::string>();
  };
  for (const auto& [key, v] : doc.items()) {
    if (key == "inputs") {
      p.inputs = strings(v, key);
    } else if (key == "format") {
      p.format = format_from(string(v, key), "config: format");
    } else if (key == "enabled") {
      p.enabled = strings(v, key);
    } else if (key == "disabled") {
      p.disabled = strings(v, key);
    } else if (key == "thresholds") {
      if (!v.is_object()) throw UsageError("config: 'thresholds' must be an object");
      for (const auto& [tk, tv] : v.items()) {
        if (tv.is_string()) {
          p.thresholds.emplace_back(tk, tv.get<std::string>());
        } else if (tv.is_boolean() || tv.is_number()) {
          p.thresholds.emplace_back(tk, tv.dump());
        } else {
          throw UsageError("config: threshold '" + tk + "' must be a scalar");
        }
      }
    } else if (key == "fail_on") {
      p.fail_on = fail_on_from(string(v, key), "config: fail_on");
    } else if (key == "dump_ir") {
      p.dump_ir = boolean(v, key);
    } else if (key == "dump_graph") {
      p.dump_graph = boolean(v, key);
    } else if (key == "jobs") {
      if (!v.is_number_unsigned() || v.get<unsigned>() == 0) throw UsageError("config: 'jobs' must be a positive integer");
      p.jobs = v.get<unsigned>();
    } else {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
  return p;
}

PartialConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

CliConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Design-smell linter for Sequential CNN programs", "fnnlint"};
  app.require_subcommand(1);
  CLI::App* check = app.add_subcommand("check", "Analyze model sources (.py) or IR documents (.json)");

  std::vector<std::string> inputs, enable, disable, sets;
  std::string format, fail_on, config;
  bool dump_ir = false, dump_graph = false;
  unsigned jobs = 1;
  check->add_option("paths", inputs, "Input files");
  auto* o_format = check->add_option("--format", format, "Output format: text or json");
  auto* o_enable = check->add_option("--enable", enable, "Comma-separated smell codes to run")
                      ->allow_extra_args(false);
  auto* o_disable = check->add_option("--disable", disable, "Comma-separated smell codes to skip")
                       ->allow_extra_args(false);
  // One value per occurrence, so a following path is not taken as a value.
  check->add_option("--set", sets, "Threshold override key=value (repeatable)")->allow_extra_args(false);
  auto* o_fail = check->add_option("--fail-on", fail_on, "Exit 1 on findings: none, any or warning");
  check->add_option("--config", config, "JSON config file");
  auto* o_dump_ir = check->add_flag("--dump-ir", dump_ir, "Print the extracted IR");
  auto* o_dump_graph = check->add_flag("--dump-graph", dump_graph, "Print the final graph as DOT");
  auto* o_jobs = check->add_option("--jobs,-j", jobs, "Files analyzed in parallel")->check(CLI::PositiveNumber);

  std::vector<const char*> cargv;
  cargv.reserve(argv.size());
  for (const std::string& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    if (check->parsed() && e.get_exit_code() == 0) throw HelpRequested{check->help()};
    throw UsageError(e.what());
  }

  CliConfig cfg;
  if (!config.empty()) apply(cfg, load_config_file(config));
  if (!inputs.empty()) cfg.inputs = inputs;
  if (o_format->count()) cfg.format = format_from(format, "--format");
  if (o_enable->count()) cfg.enabled = smells::parse_codes(split_codes(enable));
  if (o_disable->count()) cfg.disabled = smells::parse_codes(split_codes(disable));
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
    set_threshold(cfg.thresholds, s.substr(0, eq), s.substr(eq + 1));
  }
  if (o_fail->count()) cfg.fail_on = fail_on_from(fail_on, "--fail-on");
  if (o_dump_ir->count()) cfg.dump_ir = dump_ir;
  if (o_dump_graph->count()) cfg.dump_graph = dump_graph;
  if (o_jobs->count()) cfg.jobs = jobs;

  for (smells::SmellCode c : cfg.enabled) {
    if (cfg.disabled.contains(c)) {
      throw UsageError("--enable/--disable: " + std::string(smells::code_name(c)) + " is both enabled and disabled");
    }
  }
  cfg.thresholds.validate();
  if (cfg.inputs.empty()) throw UsageError("check: no input paths given");
  return cfg;
}

std::set<smells::SmellCode> active_codes(const CliConfig& cfg) {
  std::set<smells::SmellCode> out;
  for (smells::SmellCode c : smells::kAllCodes) {
    if ((cfg.enabled.empty() || cfg.enabled.contains(c)) && !cfg.disabled.contains(c)) out.insert(c);
  }
  return out;
}

Analysis analyze(const ir::ModelIR& model, const std::vector<frontend::ExtractionDiagnostic>& diagnostics,
                 const CliConfig& cfg) {
  static const ir::TypeGraph kBuiltin = ir::builtin_metamodel();
  static const ir::TypeGraph kAnalysis = ir::analysis_metamodel();
  const auto conformance = [](const ir::TypedGraph& g, const ir::TypeGraph& tg, std::string_view stage) {
    auto v = ir::check_conformance(g, tg);
    if (!v.empty()) {
      throw Error("internal error: " + std::string(stage) + " graph violates the meta-model: " + v.front().message);
    }
  };

  ir::TypedGraph g = ir::build_graph(model);
  conformance(g, kBuiltin, "built");
  g = gts::decorate(std::move(g), cfg.thresholds);
  conformance(g, kAnalysis, "decorated");
  const std::vector<gts::Rule> rules = smells::default_ruleset(cfg.thresholds, active_codes(cfg));
  g = gts::run_to_fixpoint(rules, std::move(g));

  std::vector<report::Skipped> skipped;
  for (const auto& d : diagnostics) {
    report::Skipped s{d.message, std::nullopt};
    if (d.span.line > 0) s.position = report::Position{d.span.line, d.span.col};
    skipped.push_back(std::move(s));
  }
  Analysis a{report::make_report(model.source_path, report::collect_findings(g), std::move(skipped)), std::move(g)};
  return a;
}

bool qualifies(const report::Report& r, FailOn fail_on) {
  switch (fail_on) {
    case FailOn::None: return false;
    case FailOn::Any: return !r.findings.empty();
    case FailOn::Warning:
      return std::any_of(r.findings.begin(), r.findings.end(),
                         [](const report::Finding& f) { return f.severity == Severity::Warning; });
  }
  return false;
}

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<FileOutcome> outcomes(cfg.inputs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.inputs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.inputs.size(); ++i) outcomes[i] = process(cfg.inputs[i], cfg);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.inputs.size(); i = next++) outcomes[i] = process(cfg.inputs[i], cfg);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  int code = 0;
  for (const FileOutcome& o : outcomes) {
    out << o.out;
    err << o.err;
    code = std::max(code, o.code);
  }
  out.flush();
  return code;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(argv), out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const Error& e) {
    err << "fnnlint: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fnnlint::cli
