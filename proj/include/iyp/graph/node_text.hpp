// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "iyp/graph/property_graph.hpp"

namespace iyp::graph {

/// "<label1>,<label2> | k1=v1; k2=v2", labels and keys sorted. With
/// neighbors, " | rel: <TYPE>-><other-end labels>" is appended for every
/// incident edge in edge-id order. Throws GraphError for unknown ids.
[[nodiscard]] std::string node_text(const PropertyGraph& graph, NodeId id, bool include_neighbors);

}  // namespace iyp::graph
