// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/eval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iyp::eval {

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    const double pos = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) {
        return sorted[lo];
    }
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("box statistics of an empty sample");
    }
    std::sort(values.begin(), values.end());
    BoxStats s;
    s.count = values.size();
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.q3 = quantile(values, 0.75);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    return s;
}

}  // namespace iyp::eval
