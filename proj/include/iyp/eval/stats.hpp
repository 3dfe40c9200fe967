// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace iyp::eval {

struct BoxStats {
    std::size_t count = 0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double mean = 0.0;
    friend bool operator==(const BoxStats&, const BoxStats&) = default;
};

/// Linear interpolation at position (n - 1) * p over sorted values.
[[nodiscard]] double quantile(const std::vector<double>& sorted, double p);

/// Throws std::invalid_argument for an empty sample.
[[nodiscard]] BoxStats box_stats(std::vector<double> values);

}  // namespace iyp::eval
