#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "twopath/graph_core.hpp"

namespace twopath {

/// Line-based graph format:
///
///   # comment (anything after '#')
///   inputs <u1> <u2>
///   outputs <y1> <y2>
///   edge <src> <dst>
///
/// Identifiers match [A-Za-z0-9_]+. Repeated edge lines collapse.
RawDigraph parse_graph_text(std::string_view text);
RawDigraph parse_graph_file(const std::filesystem::path& path);

/// Canonical text: inputs, outputs, then edges in stored order.
std::string write_graph(const RawDigraph& g);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace twopath
