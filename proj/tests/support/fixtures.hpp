// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "iyp/graph/loader.hpp"

namespace iyp::test {

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(IYP_FIXTURE_DIR) / name;
}

inline graph::PropertyGraph load_fixture(const std::string& name) {
    return graph::load_graph_file(fixture_path(name));
}

inline constexpr const char* kPaperQuery =
    "MATCH (:AS {asn:2497})-[p:POPULATION]-(:Country {country_code:'JP'}) RETURN p.percent";

inline constexpr const char* kPaperQuestion =
    "What is the percentage of Japan's population in AS2497?";

}  // namespace iyp::test
