// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "reference.hpp"
#include "twopath/errors.hpp"
#include "twopath/generators.hpp"
#include "twopath/graph_io.hpp"
#include "twopath/harness.hpp"
#include "twopath/mason.hpp"
#include "twopath/path_stats.hpp"
#include "twopath/phi_points.hpp"
#include "twopath/resolvent.hpp"

using namespace twopath;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;  // one line for the console
  std::string report;  // deterministic transcript compared by the determinism criterion
};

struct Settings {
  std::size_t campaign_count = 100000;
  fs::path artifact_dir = fs::temp_directory_path() / "twopath_acceptance";
};

using Poly = UniPoly<BigScalar>;

std::string digest(const RawDigraph& g) { return fnv1a_hex(write_graph(g)); }

Outcome phi_cardinality() {
  Outcome o{true, "", ""};
  for (int n = 1; n <= 12; ++n) {
    auto size = generate_phi(n).size();
    o.report += std::to_string(n) + " " + std::to_string(size) + "\n";
    if (size != static_cast<std::size_t>(n * n + 2 * n)) o.pass = false;
  }
  o.detail = "n = 1..12";
  return o;
}

Outcome resolvent_identity() {
  Outcome o{true, "", ""};
  std::mt19937_64 rng(2001);
  int graphs = 0, points = 0, failures = 0;
  while (graphs < 100) {
    auto p = prepare(random_graph(rng, 8, 11));
    const int n = p.structure.n;
    if (n == 0 || n > 12) continue;
    ++graphs;
    int ok = 0, here = 0;
    for (const auto& pt : generate_phi(n)) {
      if (pt.family != 1) break;
      auto fr = faddeev<BigScalar>(p.structure, pt.alpha, true);
      ++here;
      if (resolvent_identity_holds<BigScalar>(p.structure, pt.alpha, fr)) ++ok;
    }
    points += here;
    failures += here - ok;
    o.report += digest(p.raw) + " n=" + std::to_string(n) + " " + std::to_string(ok) + "/" +
                std::to_string(here) + "\n";
  }
  o.pass = failures == 0;
  o.detail = std::to_string(graphs) + " graphs, " + std::to_string(points) + " points, " +
             std::to_string(failures) + " failures";
  return o;
}

// Cleared determinant and all four transfer gains against the resolvent.
bool mason_matches(const PreparedGraph& p, const std::vector<BigScalar>& alpha) {
  auto loops = enumerate_loops(p.sfg);
  auto fr = faddeev<BigScalar>(p.structure, alpha);
  auto delta = fr.charpoly.polynomial();
  if (cleared_determinant(p.sfg, loops, alpha) != delta) return false;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto g = transfer_gain(p.sfg, loops, alpha, i, j);
      if (g.numerator * delta != fr.numerator.entries[j][i] * g.denominator) return false;
    }
  return true;
}

Outcome mason_cross_check() {
  Outcome o{true, "", ""};
  std::size_t graphs = 0, failures = 0;
  for (int nodes = 4; nodes <= 6; ++nodes) {
    std::size_t here = 0, bad = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << exhaustive_edge_slots(nodes)); ++mask) {
      auto p = prepare(exhaustive_graph(nodes, mask));
      ++here;
      std::vector<BigScalar> alpha;
      if (p.structure.n > 0) alpha = generate_phi(p.structure.n).front().alpha;
      if (!mason_matches(p, alpha)) ++bad;
    }
    graphs += here;
    failures += bad;
    o.report += "exhaustive " + std::to_string(nodes) + " " + std::to_string(here) + " " +
                std::to_string(bad) + "\n";
  }
  for (const char* fixture : {"fixtures/two_cycle.graph", "fixtures/disjoint_loops.graph",
                              "fixtures/figure_eight.graph"}) {
    auto p = prepare(ref::load(fixture));
    int bad = 0, here = 0;
    for (const auto& pt : generate_phi(p.structure.n)) {
      if (pt.family != 1) break;
      ++here;
      if (!mason_matches(p, pt.alpha)) ++bad;
    }
    failures += static_cast<std::size_t>(bad);
    o.report += std::string(fixture) + " " + std::to_string(here) + " " + std::to_string(bad) + "\n";
  }
  o.pass = failures == 0;
  o.detail = std::to_string(graphs) + " exhaustive graphs + 3 loop fixtures, " +
             std::to_string(failures) + " failures";
  return o;
}

Outcome factorization() {
  Outcome o{true, "", ""};
  std::mt19937_64 rng(4001);
  int graphs = 0, failures = 0, with_sets = 0;
  while (graphs < 200) {
    auto p = prepare(random_graph(rng, 8, 10));
    const int n = p.structure.n;
    if (n == 0 || n > 10) continue;
    ++graphs;
    bool ok = true;
    std::size_t sets = 0;
    for (const auto& pt : generate_phi(n)) {
      if (pt.family != 1) break;
      auto fc = factorization_check(p.sfg, p.structure, pt.alpha);
      ok = ok && fc.pass;
      sets = fc.sets;
    }
    if (sets > 0) ++with_sets;
    if (!ok) ++failures;
    o.report += digest(p.raw) + " sets=" + std::to_string(sets) + (ok ? " ok\n" : " FAIL\n");
  }
  o.pass = failures == 0;
  o.detail = std::to_string(graphs) + " graphs (" + std::to_string(with_sets) + " with loops), " +
             std::to_string(failures) + " failures";
  return o;
}

// ESQP of a branch sequence built directly from the definition.
Series definition_esqp(const std::vector<int>& path) {
  Series s;
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i; j < path.size(); ++j) s.add_quadratic(path[i] + 1, path[j] + 1, 1);
  return s;
}

Outcome path_statistics() {
  Outcome o{true, "", ""};
  std::vector<RawDigraph> graphs;
  std::mt19937_64 rng(5001);
  for (int k = 0; k < 50; ++k) graphs.push_back(random_layered_dag(rng));
  graphs.push_back(ref::load("fixtures/single_path.graph"));
  graphs.push_back(ref::load("fixtures/two_cycle.graph"));
  int pairs = 0, failures = 0;
  for (const auto& g : graphs) {
    auto p = prepare(g);
    const auto& sys = p.structure;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        int d = 0;
        std::vector<std::vector<int>> paths;
        for (int len = 1; len <= sys.n && paths.empty(); ++len) {
          paths = ref::branch_walks(sys, i, j, len);
          d = len;
        }
        auto order = relative_order(sys, i, j);
        if (paths.empty()) {
          if (order) ++failures;
          continue;
        }
        ++pairs;
        auto sc = series_coeffs(sys, i, j);
        Series expected;
        for (const auto& path : paths) expected += definition_esqp(path);
        bool ok = order == d && sc.d == d && sc.f0 == BigScalar(paths.size()) && sc.f22() == expected;
        if (!ok) ++failures;
        o.report += digest(g) + " " + std::to_string(i + 1) + std::to_string(j + 1) + " d=" +
                    std::to_string(d) + " f0=" + sc.f0.str() + (ok ? " ok\n" : " FAIL\n");
      }
  }
  o.pass = failures == 0;
  o.detail = std::to_string(graphs.size()) + " graphs, " + std::to_string(pairs) +
             " connected terminal pairs, " + std::to_string(failures) + " failures";
  return o;
}

Outcome curated_suite() {
  Outcome o{true, "", ""};
  auto files = ref::curated_files();
  int per_class[3] = {0, 0, 0}, failures = 0;
  for (const auto& file : files) {
    int expected = ref::expected_class(file);
    ++per_class[expected];
    auto v = verdicts(parse_graph_file(file), {});
    bool ok = v.algebraic == expected && v.brute_force == expected && v.maxflow == expected;
    if (!ok) ++failures;
    o.report += file.filename().string() + " expect=" + std::to_string(expected) +
                " algebraic=" + std::to_string(v.algebraic) +
                " brute=" + (v.brute_force ? std::to_string(*v.brute_force) : "?") +
                " maxflow=" + std::to_string(v.maxflow) + "\n";
  }
  o.pass = failures == 0 && files.size() == 12 && per_class[0] == 4 && per_class[1] == 4 &&
           per_class[2] == 4;
  o.detail = std::to_string(files.size()) + " graphs, " + std::to_string(failures) + " mismatches";
  return o;
}

struct CampaignOutcome {
  Outcome agreement;
  Outcome bounds;
};

CampaignOutcome campaign(const Settings& s, const fs::path& dir) {
  FuzzOptions f;
  f.seed = 1;
  f.count = s.campaign_count;
  f.max_nodes = 8;
  f.max_edges = 10;
  f.exhaustive_up_to = 5;
  f.compare.full_sweep_up_to = 10;
  f.artifact_dir = dir;
  fs::remove_all(dir);
  auto r = cmd_fuzz(f);
  const auto& doc = r.report.doc;

  CampaignOutcome c;
  c.agreement.report = r.report.text();
  if (r.disagreements == 0) {
    c.agreement.pass = r.report.exit_code == kExitOk;
  } else {
    std::size_t persisted = 0;
    bool reverified = true;
    for (const auto& path : r.artifacts) {
      if (path.filename().string().rfind("disagreement_", 0) != 0) continue;
      ++persisted;
      reverified = reverified && verdicts(parse_graph_file(path), f.compare).disagree();
    }
    reverified = reverified && persisted == r.disagreements;
    c.agreement.pass = r.report.exit_code == kExitDisagreement && reverified;
  }
  c.agreement.detail = std::to_string(r.instances) + " instances, " +
                       std::to_string(r.disagreements) + " disagreements, digest " +
                       doc["campaign_digest"].get<std::string>();

  c.bounds.report = doc["bound_violations"].dump() + "\n" + doc["bound_checked_instances"].dump() + "\n";
  c.bounds.pass = r.bound_violations == 0 && doc["bound_checked_instances"].get<std::size_t>() > 0;
  std::ostringstream detail;
  detail << doc["bound_checked_instances"].get<std::size_t>() << " instances with n <= 10 fully swept, "
         << r.bound_violations << " with violations";
  if (r.bound_violations > 0) {
    detail << " by n " << doc["bound_violations"]["by_n"].dump();
    const auto& first = doc["bound_violations"]["examples"].front();
    detail << " (first: n=" << first["n"].get<int>() << " at " << first["points"].front().get<std::string>()
           << ", max |a_k| = " << first["max_a"].get<std::string>() << " vs bound "
           << first["bound_a"].get<std::string>() << "; persisted in " << dir.string() << ")";
  }
  c.bounds.detail = detail.str();
  return c;
}

class Runner {
 public:
  bool all_pass = true;

  template <typename F>
  Outcome run(int id, const std::string& name, double limit_s, F&& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o = body();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print(id, name, o, secs, limit_s);
    return o;
  }

  void print(int id, const std::string& name, Outcome o, double secs, double limit_s) {
    bool in_time = limit_s <= 0 || secs < limit_s;
    bool pass = o.pass && in_time;
    all_pass = all_pass && pass;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  " << id << ". " << name << ": " << o.detail;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << " [" << secs << " s";
    if (limit_s > 0) line << " / limit " << limit_s << " s";
    line << "]";
    if (!in_time) line << " time limit exceeded";
    std::cout << line.str() << std::endl;
  }
};

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Acceptance criteria"};
  std::string dir = s.artifact_dir.string();
  app.add_option("--artifact-dir", dir, "Where campaign artifacts are written");
  app.add_option("--campaign-count", s.campaign_count, "Random graphs in the agreement campaign");
  CLI11_PARSE(app, argc, argv);
  s.artifact_dir = dir;

  Runner r;
  try {
    r.run(1, "sweep point cardinality", 1, phi_cardinality);
    auto c2 = r.run(2, "resolvent identity", 120, resolvent_identity);
    auto c3 = r.run(3, "Mason cross-check", 300, mason_cross_check);
    auto c4 = r.run(4, "loop set factorization", 120, factorization);
    auto c5 = r.run(5, "path statistics", 60, path_statistics);
    auto c6 = r.run(6, "curated decision suite", 60, curated_suite);

    auto start = std::chrono::steady_clock::now();
    auto camp = campaign(s, s.artifact_dir / "run1");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.print(7, "agreement campaign", camp.agreement, secs, 1800);
    r.print(8, "coefficient bounds", camp.bounds, 0, 0);

    start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, std::string>> first{{"2", c2.report}, {"3", c3.report},
                                                           {"4", c4.report}, {"5", c5.report},
                                                           {"6", c6.report}, {"7", camp.agreement.report},
                                                           {"8", camp.bounds.report}};
    auto again = campaign(s, s.artifact_dir / "run2");
    std::vector<std::string> second{resolvent_identity().report, mason_cross_check().report,
                                    factorization().report,      path_statistics().report,
                                    curated_suite().report,      again.agreement.report,
                                    again.bounds.report};
    Outcome det{true, "", ""};
    std::string differing;
    for (std::size_t k = 0; k < first.size(); ++k)
      if (first[k].second != second[k]) {
        det.pass = false;
        differing += " " + first[k].first;
      }
    det.detail = det.pass ? "criteria 2-8 reproduced byte for byte"
                          : "reports differ for criteria" + differing;
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.print(9, "determinism", det, secs, 0);
  } catch (const std::exception& e) {
    std::cout << "FAIL  aborted: " << e.what() << std::endl;
    return 1;
  }
  return r.all_pass ? 0 : 1;
}
