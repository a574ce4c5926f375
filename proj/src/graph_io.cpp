#include "twopath/graph_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <vector>

#include "twopath/errors.hpp"

namespace twopath {

namespace {

const std::regex& identifier() {
  static const std::regex re("[A-Za-z0-9_]+");
  return re;
}

}  // namespace

RawDigraph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::optional<std::array<NodeId, 2>> inputs, outputs;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& directive = tok[0];
    if (directive != "edge" && directive != "inputs" && directive != "outputs")
      throw ParseError(lineno, "unknown directive '" + directive + "'");
    if (tok.size() != 3)
      throw ParseError(lineno, "'" + directive + "' takes exactly two identifiers");
    for (std::size_t k = 1; k < 3; ++k)
      if (!std::regex_match(tok[k], identifier()))
        throw ParseError(lineno, "invalid identifier '" + tok[k] + "'");

    if (directive == "edge") {
      Edge e{tok[1], tok[2]};
      if (seen.insert(e).second) edges.push_back(std::move(e));
    } else {
      auto& slot = directive == "inputs" ? inputs : outputs;
      if (slot) throw ParseError(lineno, "repeated '" + directive + "' line");
      slot = std::array<NodeId, 2>{tok[1], tok[2]};
    }
  }
  if (!inputs) throw MissingTerminals("no 'inputs' line");
  if (!outputs) throw MissingTerminals("no 'outputs' line");

  RawDigraph g = make_digraph(std::move(edges), *inputs, *outputs);
  g.validate();
  return g;
}

RawDigraph parse_graph_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_graph_text(buf.str());
}

std::string write_graph(const RawDigraph& g) {
  std::string out = "inputs " + g.inputs[0] + " " + g.inputs[1] + "\n";
  out += "outputs " + g.outputs[0] + " " + g.outputs[1] + "\n";
  for (const auto& [a, b] : g.edges) out += "edge " + a + " " + b + "\n";
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace twopath
