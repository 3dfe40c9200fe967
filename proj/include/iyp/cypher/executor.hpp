// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "iyp/cypher/ast.hpp"
#include "iyp/cypher/value.hpp"
#include "iyp/graph/property_graph.hpp"

namespace iyp::cypher {

/// Evaluates a parsed query against an in-memory graph.
///
/// Matching enumerates every assignment of graph nodes and edges to the
/// pattern elements that satisfies labels, types, inline property maps and
/// direction. An undirected element matches either orientation; a
/// self-loop yields one assignment, not two. No edge is bound twice within
/// the MATCH (across all comma-separated patterns). A node variable that
/// repeats must bind the same node everywhere.
///
/// WHERE uses three-valued logic; null and incomparable comparisons are
/// unknown and drop the row. Missing properties project as null.
/// Aggregates group by every non-aggregate return item; with no matches an
/// aggregating query returns no rows. Without ORDER BY, rows follow the
/// ascending order of the bound ids (pattern element order); ORDER BY is a
/// stable sort on top of that, then LIMIT.
///
/// Throws QueryError for type errors (sum/avg over non-numbers) and for
/// aggregate ORDER BY keys in non-aggregating queries.
[[nodiscard]] RowSet execute(const Query& query, const graph::PropertyGraph& graph);

}  // namespace iyp::cypher
