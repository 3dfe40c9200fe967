// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "iyp/eval/evaluate.hpp"

namespace iyp::eval {

/// {"config", "per_record": {id: {...}}, "unevaluable", "groups",
///  "by_difficulty"}. Contains no timings, so reruns are byte-identical.
[[nodiscard]] nlohmann::json report_to_json(const MetricReport& report);

/// difficulty,domain,metric,count,min,q1,median,q3,max,mean; one row per
/// group and metric, then the per-difficulty rows with domain "all".
[[nodiscard]] std::string groups_csv(const MetricReport& report);

/// Human-readable per-group summary of the headline metrics.
[[nodiscard]] std::string summary_table(const MetricReport& report);

/// Writes <path> (JSON) and the CSV next to it with extension .csv.
/// Returns the CSV path.
std::filesystem::path write_report(const MetricReport& report, const std::filesystem::path& path);

}  // namespace iyp::eval
