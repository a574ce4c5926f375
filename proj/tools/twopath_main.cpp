// Command-line front end: decide, oracle, compare, fuzz, stats, mason-check.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "twopath/errors.hpp"
#include "twopath/graph_io.hpp"
#include "twopath/harness.hpp"

namespace {

using namespace twopath;

struct Flags {
  std::string file;
  bool full_sweep = false;
  std::string json_out;
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  int max_nodes = 8;
  int max_edges = 8;
  int exhaustive = 0;
  std::size_t loop_cap = kDefaultLoopCap;
  std::size_t budget = kDefaultSearchBudget;
  bool timings = false;
  std::string artifact_dir;
  int full_sweep_up_to = -1;
  bool inject_fault = false;
  int input = 1;
  int output = 1;
};

CompareOptions compare_options(const Flags& f, int default_full_sweep_up_to) {
  CompareOptions o;
  o.mode = f.full_sweep ? SweepMode::full_sweep : SweepMode::early_exit;
  o.budget = f.budget;
  o.full_sweep_up_to = f.full_sweep_up_to >= 0 ? f.full_sweep_up_to : default_full_sweep_up_to;
  o.timings = f.timings;
  o.inject_fault = f.inject_fault;
  return o;
}

// Prints the report to stdout, or writes it to the --json target.
void emit(const RunReport& report, const Flags& f) {
  if (f.json_out.empty() || f.json_out == "-") {
    std::cout << report.text();
    return;
  }
  std::ofstream out(f.json_out);
  if (!out) throw std::runtime_error("cannot write " + f.json_out);
  out << report.text();
}

int finish_single(RunReport report, const RawDigraph& g, const Flags& f, const std::string& stem) {
  if (report.exit_code == kExitDisagreement && !f.artifact_dir.empty()) {
    auto path = persist_artifact(f.artifact_dir, stem + "_" + report.doc["input_digest"].get<std::string>(),
                                 g, report);
    report.doc["artifact"] = path.filename().string();
  }
  emit(report, f);
  return report.exit_code;
}

int run(const std::string& command, const Flags& f) {
  if (command == "fuzz") {
    FuzzOptions o;
    o.seed = f.seed;
    o.count = f.count;
    o.max_nodes = f.max_nodes;
    o.max_edges = f.max_edges;
    o.exhaustive_up_to = f.exhaustive;
    o.compare = compare_options(f, 10);
    if (!f.artifact_dir.empty()) o.artifact_dir = f.artifact_dir;
    auto result = cmd_fuzz(o);
    emit(result.report, f);
    return result.report.exit_code;
  }

  const RawDigraph g = parse_graph_file(f.file);
  if (command == "decide") return finish_single(cmd_decide(g, compare_options(f, 0)), g, f, command);
  if (command == "oracle") return finish_single(cmd_oracle(g, compare_options(f, 0)), g, f, command);
  if (command == "compare") return finish_single(cmd_compare(g, compare_options(f, 0)), g, f, command);
  if (command == "stats") {
    auto report = cmd_stats(g, f.input - 1, f.output - 1);
    emit(report, f);
    return report.exit_code;
  }
  auto report = cmd_mason_check(g, f.loop_cap);
  emit(report, f);
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-path decision engine with independent oracles"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--json", f.json_out, "Write the report to this path (- for stdout)");
    sub->add_option("--budget", f.budget, "Brute-force search budget in node expansions");
  };
  auto add_decision = [&](CLI::App* sub) {
    sub->add_flag("--full-sweep", f.full_sweep, "Evaluate every sweep point");
    sub->add_option("--full-sweep-up-to", f.full_sweep_up_to,
                    "Full sweep whenever the branch count is at most this");
    sub->add_flag("--timings", f.timings, "Include elapsed times in the report");
    sub->add_option("--artifact-dir", f.artifact_dir, "Directory for counterexample artifacts");
    sub->add_flag("--inject-fault", f.inject_fault)->group("");
  };

  for (const char* name : {"decide", "oracle", "compare"}) {
    auto* sub = app.add_subcommand(name, std::string("Run ") + name + " on a graph file");
    sub->add_option("file", f.file, "Graph file")->required()->check(CLI::ExistingFile);
    add_common(sub);
    add_decision(sub);
  }

  auto* fuzz = app.add_subcommand("fuzz", "Agreement campaign over generated graphs");
  fuzz->add_option("--seed", f.seed, "Campaign seed");
  fuzz->add_option("--count", f.count, "Number of random graphs");
  fuzz->add_option("--max-nodes", f.max_nodes, "Node limit for random graphs")->check(CLI::Range(4, 64));
  fuzz->add_option("--max-edges", f.max_edges, "Edge limit for random graphs")->check(CLI::Range(0, 4096));
  fuzz->add_option("--exhaustive", f.exhaustive, "Enumerate all graphs on 4..N nodes")->check(CLI::Range(0, 6));
  add_common(fuzz);
  add_decision(fuzz);

  auto* stats = app.add_subcommand("stats", "Series coefficients and shortest-path statistics");
  stats->add_option("file", f.file, "Graph file")->required()->check(CLI::ExistingFile);
  stats->add_option("input", f.input, "Input terminal (1 or 2)")->check(CLI::Range(1, 2));
  stats->add_option("output", f.output, "Output terminal (1 or 2)")->check(CLI::Range(1, 2));
  stats->add_option("--json", f.json_out, "Write the report to this path (- for stdout)");

  auto* mason = app.add_subcommand("mason-check", "Cross-check the resolvent against Mason's formula");
  mason->add_option("file", f.file, "Graph file")->required()->check(CLI::ExistingFile);
  mason->add_option("--loop-cap", f.loop_cap, "Maximum number of enumerated loops or paths");
  mason->add_option("--json", f.json_out, "Write the report to this path (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, f);
  } catch (const ParseError& e) {
    std::cerr << f.file << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const MissingTerminals& e) {
    std::cerr << f.file << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidTerminals& e) {
    std::cerr << f.file << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidGraph& e) {
    std::cerr << f.file << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DivisibilityViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
