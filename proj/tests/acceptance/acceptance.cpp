// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "fnnlint/cli/cli.hpp"
#include "fnnlint/error.hpp"
#include "fnnlint/gts/decorate.hpp"
#include "fnnlint/gts/engine.hpp"
#include "fnnlint/ir/build.hpp"
#include "fnnlint/ir/ir_json.hpp"
#include "fnnlint/ir/type_graph.hpp"
#include "fnnlint/smells/rules.hpp"
#include "generators.hpp"
#include "json.hpp"
#include "reference_checker.hpp"

using namespace fnnlint;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = FNNLINT_FIXTURE_DIR;

/// Thrown by check() with the failing condition.
struct Unmet {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Unmet{what};
}

using Pair = std::pair<std::string, std::optional<std::int64_t>>;

std::multiset<Pair> findings_of(const report::Report& r) {
  std::multiset<Pair> out;
  for (const auto& f : r.findings) out.emplace(std::string(smells::code_name(f.code)), f.layer_index);
  return out;
}

std::string show(const std::multiset<Pair>& s) {
  std::ostringstream os;
  for (const auto& [c, l] : s) os << c << "@" << (l ? std::to_string(*l) : "model") << ' ';
  return os.str();
}

report::Report analyze_file(const std::string& path, const cli::CliConfig& cfg = {}) {
  const auto ex = frontend::extract_from_path(path);
  return cli::analyze(ex.ir, ex.diagnostics, cfg).report;
}

std::vector<gts::Rule> all_rules(const smells::Thresholds& t = {}) {
  return smells::default_ruleset(t, std::set<smells::SmellCode>(smells::kAllCodes.begin(), smells::kAllCodes.end()));
}

// 1. Smelly corpus: exact findings per file, whole corpus under one second.
std::string smelly_corpus() {
  std::ifstream in(kFixtures + "/smelly/expected.json");
  check(static_cast<bool>(in), "expected.json readable");
  const auto expected = nlohmann::json::parse(in);
  const auto start = std::chrono::steady_clock::now();
  std::size_t files = 0;
  for (const auto& [name, list] : expected.items()) {
    std::multiset<Pair> want;
    for (const auto& e : list) {
      want.emplace(e[0].get<std::string>(),
                   e[1].is_null() ? std::nullopt : std::optional<std::int64_t>(e[1].get<std::int64_t>()));
    }
    const auto got = findings_of(analyze_file(kFixtures + "/smelly/" + name));
    check(got == want, name + ": got " + show(got) + "want " + show(want));
    ++files;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  check(files == 8, "eight smelly fixtures");
  check(ms < 1000, "corpus took " + std::to_string(ms) + " ms");
  return std::to_string(files) + " files in " + std::to_string(ms) + " ms";
}

// 2. Clean reference model.
std::string clean_model() {
  const auto r = analyze_file(kFixtures + "/clean_vgg.py");
  check(r.findings.empty(), "clean_vgg findings: " + show(findings_of(r)));
  return "0 findings";
}

// 3. Pooling ratio boundaries.
std::vector<ir::LayerRecord> conv_pool(int n_conv, int n_pool) {
  std::vector<ir::LayerRecord> out;
  std::int64_t filters = 16;
  int c = 0, p = 0;
  while (c < n_conv || p < n_pool) {
    for (int k = 0; k < 2 && c < n_conv; ++k, ++c) {
      ir::LayerRecord l;
      l.kind = ir::LayerTag::Conv2D;
      l.filters = filters;
      l.kernel = ir::IntPair{3, 3};
      l.use_bias = true;
      out.push_back(l);
    }
    filters *= 2;
    if (p < n_pool) {
      ir::LayerRecord l;
      l.kind = ir::LayerTag::MaxPool2D;
      out.push_back(l);
      ++p;
    }
  }
  return out;
}

std::size_t ds4_count(int n_conv, int n_pool, double ratio = 1.0 / 3.0) {
  ir::ModelIR m;
  m.layers = conv_pool(n_conv, n_pool);
  cli::CliConfig cfg;
  cfg.enabled = {smells::SmellCode::DS4};
  cfg.thresholds.pool_ratio_max = ratio;
  return cli::analyze(m, {}, cfg).report.findings.size();
}

std::string pooling_boundaries() {
  check(ds4_count(8, 4) == 0, "4 of 12 pooling (exactly one third) must not fire");
  check(ds4_count(8, 5) == 1, "5 of 13 pooling must fire");
  check(ds4_count(7, 5) == 1, "5 of 12 pooling must fire");
  check(ds4_count(5, 4) == 0, "9 layers is not deep");
  check(ds4_count(5, 5) == 1, "10 layers at one half must fire");
  check(ds4_count(5, 5, 0.5) == 0, "one half with ratio 0.5 must not fire");
  check(ds4_count(5, 5, 0.49) == 1, "one half with ratio 0.49 must fire");
  const auto r = analyze_file(kFixtures + "/smelly/ds4_excess_pooling.py");
  check(findings_of(r) == std::multiset<Pair>{{"DS4", std::nullopt}}, "fixture anchors DS4 on the model");
  return "7 boundary cases";
}

// 4. Agreement with the linear reference checker.
std::string oracle_agreement() {
  testkit::Rng rng(31337);
  const cli::CliConfig cfg;
  const auto enabled = cli::active_codes(cfg);
  std::set<std::string> codes;
  constexpr int kIrs = 600;
  for (int i = 0; i < kIrs; ++i) {
    const ir::ModelIR m = testkit::random_ir(rng);
    std::multiset<testkit::RefFinding> got;
    for (const auto& f : cli::analyze(m, {}, cfg).report.findings) {
      got.insert({f.layer_index.value_or(-1), std::string(smells::code_name(f.code)), f.severity});
    }
    const auto want = testkit::reference_findings(m, cfg.thresholds, enabled);
    check(got == want, "disagreement on random IR #" + std::to_string(i));
    for (const auto& f : want) codes.insert(f.code);
  }
  check(codes.size() == 8, "every smell exercised");
  return std::to_string(kIrs) + " random IRs agree";
}

// 5. Termination, order independence, matcher completeness.
std::string engine_properties() {
  testkit::Rng rng(4242);
  const auto rules = all_rules();
  std::size_t graphs = 0;
  for (int i = 0; i < 30; ++i) {
    const ir::TypedGraph g = i % 2 ? testkit::random_layer_graph(rng, 12)
                                   : gts::decorate(ir::build_graph(testkit::random_ir(rng)), {});
    const ir::TypedGraph f = gts::run_to_fixpoint(rules, g);
    for (const auto& r : rules) check(gts::find_matches(r, f).empty(), "pending match after fixpoint: " + r.name);
    check(gts::run_to_fixpoint(rules, f) == f, "fixpoint is not stable");
    const auto want = testkit::annotations(f);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      check(testkit::annotations(gts::run_to_fixpoint_shuffled(rules, g, seed)) == want,
            "order dependence on graph " + std::to_string(i) + " seed " + std::to_string(seed));
    }
    ++graphs;
  }
  std::size_t compared = 0;
  for (int i = 0; i < 100; ++i) {
    const ir::TypedGraph g = testkit::random_layer_graph(rng, 12);
    check(g.node_count() <= 12, "small graph");
    for (const auto& r : rules) {
      check(gts::find_matches(r, g) == testkit::brute_force_matches(r, g), "matcher differs from brute force: " + r.name);
      ++compared;
    }
  }
  return std::to_string(graphs) + " graphs x 100 orders, " + std::to_string(compared) + " brute-force comparisons";
}

// 6. Extraction robustness.
ir::ModelIR strip_spelling(ir::ModelIR m) {
  for (auto& l : m.layers) {
    l.source_span.reset();
    l.raw_args.clear();
  }
  m.source_path.clear();
  return m;
}

std::string extraction() {
  const std::string dir = kFixtures + "/extraction/";
  const auto a = frontend::extract_from_path(dir + "alias_from_import.py");
  const auto b = frontend::extract_from_path(dir + "alias_qualified.py");
  const auto c = frontend::extract_from_path(dir + "alias_module.py");
  check(strip_spelling(a.ir) == strip_spelling(b.ir) && strip_spelling(a.ir) == strip_spelling(c.ir),
        "import spellings give different IRs");
  const auto p = frontend::extract_from_path(dir + "args_positional.py");
  const auto k = frontend::extract_from_path(dir + "args_keyword.py");
  check(strip_spelling(p.ir) == strip_spelling(k.ir), "positional and keyword arguments give different IRs");
  check(findings_of(cli::analyze(p.ir, {}, {}).report) == findings_of(cli::analyze(k.ir, {}, {}).report),
        "positional and keyword arguments give different findings");

  testkit::Rng rng(606);
  for (int i = 0; i < 200; ++i) {
    const ir::ModelIR m = testkit::random_ir(rng);
    check(ir::load_ir_json(ir::save_ir_json(m)) == m, "IR JSON round-trip #" + std::to_string(i));
  }

  const auto nl = frontend::extract_from_path(dir + "non_literal.py");
  std::size_t warnings = 0;
  for (const auto& d : nl.diagnostics) warnings += d.severity == frontend::ExtractionDiagnostic::Level::Warning;
  check(warnings > 0, "non-literal arguments produce warnings");
  const auto r = cli::analyze(nl.ir, nl.diagnostics, {}).report;
  check(r.skipped.size() == warnings, "warnings carried into the report");
  return "aliases, argument styles, 200 round-trips, " + std::to_string(warnings) + " non-literal warnings";
}

// 7. Meta-model conformance and mutation detection.
std::string conformance() {
  testkit::Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    const ir::TypedGraph g = ir::build_graph(testkit::random_ir(rng));
    check(ir::check_conformance(g, ir::builtin_metamodel()).empty(), "built graph violates the meta-model");
    const ir::TypedGraph d = gts::decorate(g, {});
    check(ir::check_conformance(d, ir::analysis_metamodel()).empty(), "decorated graph violates the meta-model");
    const ir::TypedGraph f = gts::run_to_fixpoint(all_rules(), d);
    check(ir::check_conformance(f, ir::analysis_metamodel()).empty(), "annotated graph violates the meta-model");
  }

  ir::ModelIR m;
  for (auto t : {ir::LayerTag::Conv2D, ir::LayerTag::MaxPool2D, ir::LayerTag::Flatten, ir::LayerTag::Dense}) {
    ir::LayerRecord l;
    l.kind = t;
    m.layers.push_back(l);
  }
  const ir::TypedGraph base = ir::build_graph(m);
  const auto layers = base.nodes_of_kind(ir::kinds::kLayer);
  using Reason = ir::Violation::Reason;
  const auto single = [](const ir::TypedGraph& g, Reason want) {
    const auto v = ir::check_conformance(g, ir::builtin_metamodel());
    return v.size() == 1 && v[0].reason == want;
  };

  ir::TypedGraph edge = base;
  edge.add_edge(layers[0], std::string(ir::labels::kHas), layers[1]);
  check(single(edge, Reason::UndeclaredEdge), "undeclared edge not reported");

  ir::TypedGraph attr = base;
  attr.erase_attr(layers[1], "type");
  check(single(attr, Reason::MissingAttribute), "missing attribute not reported");

  ir::TypedGraph branch = base;
  const ir::NodeId extra =
      branch.add_node(std::string(ir::kinds::kLayer), {{"type", std::string("Dense")}, {"layer_index", std::int64_t{9}}});
  branch.add_edge(layers[0], std::string(ir::labels::kNext), extra);
  check(single(branch, Reason::NextPathBranch), "branching next path not reported");
  return "600 conformant graphs, 3 mutations each caught once";
}

// 8. CLI exit codes and output formats.
int spawn(const std::string& args, std::string* out = nullptr) {
  const std::string tmp = (fs::temp_directory_path() / "fnnlint_acceptance.out").string();
  const std::string cmd = std::string(FNNLINT_BINARY) + " " + args + " >" + tmp + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(tmp);
    *out = std::string(std::istreambuf_iterator<char>(in), {});
  }
  fs::remove(tmp);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string cli_contract() {
  const std::string dir = kFixtures + "/cli/";
  const std::map<std::string, int> scenarios{{"clean.py", 0},       {"dropout_before_pool.py", 1},
                                             {"info_only.py", 0},   {"parse_error.py", 2},
                                             {"no_model.py", 2},    {"notes.txt", 2}};
  for (const auto& [file, want] : scenarios) {
    const int got = spawn("check " + dir + file);
    check(got == want, file + " exited " + std::to_string(got) + ", want " + std::to_string(want));
  }
  check(spawn("check --fail-on any " + dir + "info_only.py") == 1, "--fail-on any");
  check(spawn("check --set bogus=1 " + dir + "clean.py") == 2, "unknown threshold key");

  // Text and JSON list the same findings.
  for (const auto& entry : fs::directory_iterator(kFixtures + "/smelly")) {
    if (entry.path().extension() != ".py") continue;
    std::string text, json;
    spawn("check " + entry.path().string(), &text);
    spawn("check --format json " + entry.path().string(), &json);
    const report::Report r = report::parse_report_json(json);
    std::size_t text_findings = 0;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
      if (line.find(": warning DS") != std::string::npos || line.find(": info DS") != std::string::npos) {
        ++text_findings;
      }
    }
    check(text_findings == r.findings.size(), entry.path().filename().string() + ": text and JSON disagree");
    for (const auto& f : r.findings) {
      const std::string code(smells::code_name(f.code));
      check(text.find(" " + code + " ") != std::string::npos, "text output lacks " + code);
    }
  }
  return "6 scenarios plus flags, text/JSON agree";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"smelly corpus matches expected findings", smelly_corpus},
      {"clean model has no findings", clean_model},
      {"pooling ratio boundaries", pooling_boundaries},
      {"agreement with linear reference checker", oracle_agreement},
      {"termination, order independence, complete matching", engine_properties},
      {"extraction robustness", extraction},
      {"meta-model conformance", conformance},
      {"command-line contract", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, fn] = criteria[i];
    std::string status = "PASS", detail;
    try {
      detail = fn();
    } catch (const Unmet& u) {
      status = "FAIL";
      detail = u.what;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    if (status == "FAIL") ++failed;
    std::cout << status << " " << (i + 1) << " " << name << " (" << detail << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
