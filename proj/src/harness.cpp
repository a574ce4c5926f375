#include "twopath/harness.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "twopath/errors.hpp"
#include "twopath/generators.hpp"
#include "twopath/graph_io.hpp"
#include "twopath/path_stats.hpp"
#include "twopath/resolvent.hpp"

namespace twopath {

using nlohmann::json;

namespace {

json big(const BigScalar& v) { return to_decimal(v); }

json big_list(const std::vector<BigScalar>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(to_decimal(x));
  return arr;
}

std::string bound_formula(int n, int extra) {
  return "2*" + std::to_string(n) + "^" + std::to_string(2 * n * n + extra);
}

const char* mode_name(SweepMode m) { return m == SweepMode::full_sweep ? "full-sweep" : "early-exit"; }

/// Everything computed for one graph.
struct Evaluation {
  PreparedGraph prepared;
  Decision decision;
  int algebraic = 0;
  std::optional<ClassCertificate> brute;
  int maxflow = 0;
  std::optional<NodeId> common_node;  // original id
  bool certificate_valid = true;
  std::vector<std::string> findings;

  Verdicts verdicts() const {
    Verdicts v;
    v.algebraic = algebraic;
    if (brute) v.brute_force = brute->cls;
    v.maxflow = maxflow;
    return v;
  }
};

Decision run_decision(const PreparedGraph& p, const CompareOptions& opts) {
  SweepMode mode = p.structure.n <= opts.full_sweep_up_to ? SweepMode::full_sweep : opts.mode;
  return decide(p.structure, mode);
}

int algebraic_class(const Decision& d, const CompareOptions& opts) {
  return opts.inject_fault ? std::min(d.cls, 1) : d.cls;
}

void run_oracles(Evaluation& ev, const CompareOptions& opts) {
  const RawDigraph& g = ev.prepared.normalized;
  try {
    ev.brute = brute_force_class(g, opts.budget);
    ev.certificate_valid = verify_certificate(g, *ev.brute);
    if (!ev.certificate_valid) ev.findings.push_back("certificate_invalid");
  } catch (const SearchBudgetExceeded&) {
    ev.findings.push_back("brute_force_budget_exceeded");
  }
  ev.maxflow = maxflow_class(g);
  if (ev.maxflow == 1) {
    if (auto v = common_node_certificate(g))
      ev.common_node = g.original(*v);
    else
      ev.findings.push_back("common_node_missing");
  }
}

Evaluation evaluate(const RawDigraph& raw, const CompareOptions& opts, bool algebra, bool oracles) {
  Evaluation ev;
  ev.prepared = prepare(raw);
  if (algebra) {
    ev.decision = run_decision(ev.prepared, opts);
    ev.algebraic = algebraic_class(ev.decision, opts);
    if (!ev.decision.bounds.violations.empty()) ev.findings.push_back("bound_violation");
    if (ev.decision.mixed_zero) ev.findings.push_back("mixed_zero_numerator");
  }
  if (oracles) run_oracles(ev, opts);
  return ev;
}

json sizes_json(const PreparedGraph& p) {
  return {{"order", p.raw.nodes.size()},
          {"size", p.raw.edges.size()},
          {"normalized_order", p.split.nodes.size()},
          {"normalized_size", p.structure.n}};
}

json decision_json(const Decision& d, int n, const CompareOptions& opts, int reported_class) {
  json j;
  j["class"] = reported_class;
  j["r"] = d.r;
  j["mode"] = mode_name(d.mode);
  j["points_total"] = n * n + 2 * n;
  j["points_evaluated"] = d.points_evaluated;
  j["mixed_zero"] = d.mixed_zero;
  if (d.witness_point) {
    j["witness"] = {{"index", *d.witness},
                    {"label", d.witness_point->label()},
                    {"alpha", big_list(d.witness_point->alpha)}};
  } else {
    j["witness"] = nullptr;
  }
  j["bounds"] = {{"bound_a", bound_formula(n, 0)},
                 {"bound_rbar", bound_formula(n, 2)},
                 {"max_a", big(d.bounds.max_a)},
                 {"max_rbar", big(d.bounds.max_rbar)},
                 {"points_checked", d.bounds.points_checked},
                 {"violations", d.bounds.violations}};
  if (d.mode == SweepMode::full_sweep) {
    json table = json::array();
    for (std::size_t k = 0; k < d.table.size(); ++k)
      table.push_back({{"label", d.points[k].label()},
                       {"alpha", big_list(d.points[k].alpha)},
                       {"rank", d.table[k].rank},
                       {"delta", d.table[k].delta.to_string()}});
    j["table"] = std::move(table);
  }
  if (opts.timings) j["elapsed_ms"] = d.elapsed_ms;
  return j;
}

json certificate_json(const ClassCertificate& c, const RawDigraph& g) {
  json j;
  j["class"] = c.cls;
  if (c.pairing) {
    j["pairing"] = {(*c.pairing)[0], (*c.pairing)[1]};
    j["paths"] = json::array({json(c.paths[0]), json(c.paths[1])});
  }
  if (c.common_node) j["common_node"] = g.original(*c.common_node);
  return j;
}

json oracle_json(const Evaluation& ev) {
  json j;
  if (ev.brute) {
    j["brute_force"] = certificate_json(*ev.brute, ev.prepared.normalized);
    j["brute_force"]["complete"] = true;
    j["brute_force"]["certificate_valid"] = ev.certificate_valid;
  } else {
    j["brute_force"] = {{"complete", false}};
  }
  j["maxflow"] = {{"class", ev.maxflow}};
  j["common_node"] = ev.common_node ? json(*ev.common_node) : json(nullptr);
  return j;
}

json header_json(const char* command, const PreparedGraph& p) {
  return {{"command", command}, {"input_digest", fnv1a_hex(write_graph(p.raw))}, {"sizes", sizes_json(p)}};
}

int exit_code_for(const Evaluation& ev, bool disagreement) {
  if (disagreement) return kExitDisagreement;
  if (!ev.certificate_valid) return kExitInvariant;
  return kExitOk;
}

std::string branch_label(const StandardSfg& sfg, int i) {
  return "x" + std::to_string(i + 1) + ":" + sfg.branches[i].tail + "->" + sfg.branches[i].head;
}

RawDigraph without_isolated(const RawDigraph& g) {
  RawDigraph out = make_digraph(g.edges, g.inputs, g.outputs);
  return out;
}

}  // namespace

std::string RunReport::text() const { return doc.dump(2) + "\n"; }

Verdicts verdicts(const RawDigraph& raw, const CompareOptions& opts) {
  return evaluate(raw, opts, true, true).verdicts();
}

RunReport cmd_decide(const RawDigraph& raw, const CompareOptions& opts) {
  auto ev = evaluate(raw, opts, true, false);
  RunReport rep;
  rep.doc = header_json("decide", ev.prepared);
  rep.doc["decision"] = decision_json(ev.decision, ev.prepared.structure.n, opts, ev.algebraic);
  rep.doc["findings"] = ev.findings;
  return rep;
}

RunReport cmd_oracle(const RawDigraph& raw, const CompareOptions& opts) {
  auto ev = evaluate(raw, opts, false, true);
  RunReport rep;
  rep.doc = header_json("oracle", ev.prepared);
  rep.doc["oracles"] = oracle_json(ev);
  bool disagree = ev.brute && ev.brute->cls != ev.maxflow;
  rep.doc["disagreement"] = disagree;
  rep.doc["findings"] = ev.findings;
  rep.exit_code = exit_code_for(ev, disagree);
  return rep;
}

RunReport cmd_compare(const RawDigraph& raw, const CompareOptions& opts) {
  auto ev = evaluate(raw, opts, true, true);
  RunReport rep;
  rep.doc = header_json("compare", ev.prepared);
  rep.doc["decision"] = decision_json(ev.decision, ev.prepared.structure.n, opts, ev.algebraic);
  rep.doc["oracles"] = oracle_json(ev);
  bool disagree = ev.verdicts().disagree();
  rep.doc["disagreement"] = disagree;
  rep.doc["findings"] = ev.findings;
  rep.exit_code = exit_code_for(ev, disagree);
  return rep;
}

RawDigraph minimize_disagreement(const RawDigraph& raw, const CompareOptions& opts) {
  RawDigraph g = without_isolated(raw);
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto edges = g.edges;
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
      RawDigraph candidate = make_digraph(std::move(edges), g.inputs, g.outputs);
      if (verdicts(candidate, opts).disagree()) {
        g = std::move(candidate);
        shrunk = true;
        break;
      }
    }
  }
  return g;
}

std::filesystem::path persist_artifact(const std::filesystem::path& dir, const std::string& stem,
                                       const RawDigraph& g, const RunReport& report) {
  std::filesystem::create_directories(dir);
  auto graph_path = dir / (stem + ".graph");
  std::ofstream(graph_path) << write_graph(g);
  std::ofstream(dir / (stem + ".json")) << report.text();
  return graph_path;
}

FuzzResult cmd_fuzz(const FuzzOptions& opts) {
  FuzzResult result;
  const auto& copts = opts.compare;
  std::string stream_lines;
  std::size_t tally[3] = {0, 0, 0};
  std::size_t agreements = 0, brute_incomplete = 0, exhaustive_instances = 0;
  std::size_t bound_checked_instances = 0, common_node_missing = 0, mixed_zero = 0;
  int max_branches = 0;
  json disagreements = json::array();
  json bound_examples = json::array();
  json common_missing_examples = json::array();
  std::map<std::string, std::size_t> bound_by_n;
  std::set<std::string> bound_persisted;

  auto run_instance = [&](const RawDigraph& g) {
    const std::size_t index = result.instances++;
    auto ev = evaluate(g, copts, true, true);
    const int n = ev.prepared.structure.n;
    max_branches = std::max(max_branches, n);
    const auto v = ev.verdicts();
    const std::string text = write_graph(g);
    const std::string digest = fnv1a_hex(text);

    stream_lines += std::to_string(index) + " " + digest + " " + std::to_string(n) + " " +
                    std::to_string(v.algebraic) + " " +
                    (v.brute_force ? std::to_string(*v.brute_force) : "-") + " " +
                    std::to_string(v.maxflow) + " " + std::to_string(ev.decision.points_evaluated) +
                    " " + std::to_string(ev.decision.bounds.violations.size()) + "\n";

    ++tally[v.maxflow];
    if (!v.brute_force) ++brute_incomplete;
    if (ev.decision.mode == SweepMode::full_sweep && n > 0) ++bound_checked_instances;
    if (ev.decision.mixed_zero) ++mixed_zero;
    if (!ev.certificate_valid)
      throw InvariantViolation("invalid oracle certificate on instance " + std::to_string(index) +
                               ":\n" + text);

    if (std::find(ev.findings.begin(), ev.findings.end(), "common_node_missing") != ev.findings.end()) {
      ++common_node_missing;
      if (common_missing_examples.size() < 20)
        common_missing_examples.push_back({{"index", index}, {"graph", text}});
    }

    if (!ev.decision.bounds.violations.empty()) {
      ++result.bound_violations;
      ++bound_by_n[std::to_string(n)];
      // every violating graph is persisted once; the report keeps the first 20
      if (opts.artifact_dir && bound_persisted.insert(digest).second) {
        auto path = persist_artifact(*opts.artifact_dir, "bound_violation_" + digest, g,
                                     cmd_decide(g, copts));
        result.artifacts.push_back(path);
      }
      if (bound_examples.size() < 20) {
        json ex = {{"index", index},
                   {"n", n},
                   {"graph", text},
                   {"points", ev.decision.bounds.violations},
                   {"max_a", big(ev.decision.bounds.max_a)},
                   {"max_rbar", big(ev.decision.bounds.max_rbar)},
                   {"bound_a", bound_formula(n, 0)},
                   {"bound_rbar", bound_formula(n, 2)}};
        if (opts.artifact_dir) ex["artifact"] = "bound_violation_" + digest + ".graph";
        bound_examples.push_back(std::move(ex));
      }
    }

    if (!v.disagree()) {
      ++agreements;
      return;
    }
    ++result.disagreements;
    RawDigraph minimal = minimize_disagreement(g, copts);
    RunReport minimal_report = cmd_compare(minimal, copts);
    json entry = {{"index", index},
                  {"graph", text},
                  {"algebraic", v.algebraic},
                  {"brute_force", v.brute_force ? json(*v.brute_force) : json(nullptr)},
                  {"maxflow", v.maxflow},
                  {"minimized_graph", write_graph(minimal)},
                  {"minimized_edges", minimal.edges.size()}};
    if (opts.artifact_dir) {
      auto path = persist_artifact(*opts.artifact_dir,
                                   "disagreement_" + std::to_string(index) + "_" + digest, minimal,
                                   minimal_report);
      entry["artifact"] = path.filename().string();
      result.artifacts.push_back(path);
    }
    disagreements.push_back(std::move(entry));
  };

  for (int nodes = 4; nodes <= opts.exhaustive_up_to; ++nodes) {
    const std::size_t slots = exhaustive_edge_slots(nodes);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
      run_instance(exhaustive_graph(nodes, mask));
      ++exhaustive_instances;
    }
  }
  std::mt19937_64 rng(opts.seed);
  for (std::size_t c = 0; c < opts.count; ++c)
    run_instance(random_graph(rng, opts.max_nodes, opts.max_edges));

  json& doc = result.report.doc;
  doc["command"] = "fuzz";
  doc["seed"] = std::to_string(opts.seed);
  doc["count"] = opts.count;
  doc["max_nodes"] = opts.max_nodes;
  doc["max_edges"] = opts.max_edges;
  doc["exhaustive_up_to"] = opts.exhaustive_up_to;
  doc["full_sweep_up_to"] = copts.full_sweep_up_to;
  doc["instances"] = result.instances;
  doc["exhaustive_instances"] = exhaustive_instances;
  doc["random_instances"] = result.instances - exhaustive_instances;
  doc["class_tally"] = {{"0", tally[0]}, {"1", tally[1]}, {"2", tally[2]}};
  doc["agreements"] = agreements;
  doc["brute_force_incomplete"] = brute_incomplete;
  doc["max_branch_count"] = max_branches;
  doc["mixed_zero_instances"] = mixed_zero;
  doc["common_node_missing"] = {{"count", common_node_missing}, {"examples", common_missing_examples}};
  doc["bound_checked_instances"] = bound_checked_instances;
  doc["bound_violations"] = {{"count", result.bound_violations},
                             {"by_n", bound_by_n},
                             {"persisted", bound_persisted.size()},
                             {"examples", bound_examples}};
  doc["disagreements"] = disagreements;
  doc["disagreement"] = result.disagreements > 0;
  doc["campaign_digest"] = fnv1a_hex(stream_lines);
  result.report.exit_code = result.disagreements > 0 ? kExitDisagreement : kExitOk;
  return result;
}

RunReport cmd_stats(const RawDigraph& raw, int input, int output) {
  auto p = prepare(raw);
  RunReport rep;
  rep.doc = header_json("stats", p);
  rep.doc["input"] = input + 1;
  rep.doc["output"] = output + 1;
  json branches = json::array();
  for (int i = 0; i < p.structure.n; ++i) branches.push_back(branch_label(p.sfg, i));
  rep.doc["branches"] = branches;

  auto d = relative_order(p.structure, input, output);
  if (!d) {
    rep.doc["relative_order"] = nullptr;
    rep.doc["esqp_verified"] = nullptr;
    return rep;
  }
  auto verdict = verify_esqp(p.structure, input, output);
  const auto& sc = verdict.coeffs;
  rep.doc["relative_order"] = sc.d;
  rep.doc["f0"] = big(sc.f0);
  rep.doc["f10"] = big(sc.f10());
  rep.doc["f11"] = sc.f11().to_string();
  rep.doc["f20"] = big(sc.f20());
  rep.doc["f21"] = sc.f21().to_string();
  rep.doc["f22"] = sc.f22().to_string();
  json paths = json::array();
  for (const auto& path : verdict.witnesses) {
    json labels = json::array();
    for (int b : path) labels.push_back(branch_label(p.sfg, b));
    paths.push_back({{"branches", labels}, {"esqp", esqp(path).to_string()}});
  }
  rep.doc["shortest_paths"] = paths;
  rep.doc["esqp_sum"] = verdict.expected_f22.to_string();
  rep.doc["esqp_verified"] = verdict.pass;
  if (!verdict.pass) rep.exit_code = kExitInvariant;
  return rep;
}

RunReport cmd_mason_check(const RawDigraph& raw, std::size_t loop_cap) {
  auto p = prepare(raw);
  RunReport rep;
  rep.doc = header_json("mason-check", p);
  const int n = p.structure.n;

  std::vector<Loop> loops;
  try {
    loops = enumerate_loops(p.sfg, loop_cap);
  } catch (const CapExceeded& e) {
    rep.doc["applicable"] = false;
    rep.doc["verdict"] = "oracle inapplicable";
    rep.doc["reason"] = e.what();
    return rep;
  }

  json points = json::array();
  bool all = true;
  try {
    for (const auto& pt : generate_phi(n)) {
      if (pt.family != 1) break;
      auto fr = faddeev<BigScalar>(p.structure, pt.alpha, true);
      bool resolvent_ok = resolvent_identity_holds<BigScalar>(p.structure, pt.alpha, fr);
      auto delta = fr.charpoly.polynomial();
      bool charpoly_ok = cleared_determinant(p.sfg, loops, pt.alpha) == delta;
      bool transfer_ok = true;
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
          auto g = transfer_gain(p.sfg, loops, pt.alpha, i, j, loop_cap);
          transfer_ok = transfer_ok &&
                        g.numerator * delta == fr.numerator.entries[j][i] * g.denominator;
        }
      bool factor_ok = factorization_check(p.sfg, p.structure, pt.alpha, loop_cap).pass;
      all = all && resolvent_ok && charpoly_ok && transfer_ok && factor_ok;
      points.push_back({{"label", pt.label()},
                        {"resolvent_identity", resolvent_ok},
                        {"charpoly_identity", charpoly_ok},
                        {"transfer_identity", transfer_ok},
                        {"factorization", factor_ok}});
    }
  } catch (const CapExceeded& e) {
    rep.doc["applicable"] = false;
    rep.doc["verdict"] = "oracle inapplicable";
    rep.doc["reason"] = e.what();
    return rep;
  }
  rep.doc["applicable"] = true;
  rep.doc["loops"] = loops.size();
  rep.doc["assoc_loop_sets"] = assoc_loop_sets(p.sfg).size();
  rep.doc["points"] = points;
  rep.doc["verdict"] = all ? "verified" : "identity failed";
  if (!all) rep.exit_code = kExitInvariant;
  return rep;
}

}  // namespace twopath
