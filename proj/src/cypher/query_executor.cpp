// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/query_executor.hpp"

#include "iyp/cypher/executor.hpp"
#include "iyp/cypher/parser.hpp"
#include "iyp/cypher/read_only.hpp"

namespace iyp::cypher {

RowSet LocalExecutor::run(std::string_view query_text) const {
    require_read_only(query_text);
    return execute(parse(query_text), graph_);
}

RowSet RemoteExecutor::run(std::string_view query_text) const {
    return execute_remote(query_text, endpoint_);
}

}  // namespace iyp::cypher
