// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>

#include "iyp/graph/property_graph.hpp"

namespace iyp::graph {

/// Loads an NDJSON dump: one {"kind":"node"|"edge",...} object per line.
/// Blank lines are skipped. Loading is two-pass, so edges may precede the
/// nodes they reference. Errors are GraphError carrying the 1-based line.
[[nodiscard]] PropertyGraph load_graph(std::istream& in);
[[nodiscard]] PropertyGraph load_graph_file(const std::filesystem::path& path);

/// Writes the dump format back out, nodes then edges, in id order.
void write_graph(const PropertyGraph& graph, std::ostream& out);

}  // namespace iyp::graph
