// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/graph/value.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "iyp/common/text.hpp"

namespace iyp::graph {

std::optional<double> PropertyValue::as_number() const noexcept {
    if (const auto* i = as_int()) {
        return static_cast<double>(*i);
    }
    if (const auto* d = as_double()) {
        return *d;
    }
    return std::nullopt;
}

namespace {

// Exact for every int64 and double on platforms with an 80-bit long double;
// elsewhere the rounding only matters beyond 2^53.
long double widen(const PropertyValue& v) noexcept {
    if (const auto* i = v.as_int()) {
        return static_cast<long double>(*i);
    }
    return static_cast<long double>(*v.as_double());
}

template <typename T>
Ordering three_way(const T& a, const T& b) noexcept {
    if (a < b) {
        return Ordering::less;
    }
    if (b < a) {
        return Ordering::greater;
    }
    return Ordering::equal;
}

bool is_nan(const PropertyValue& v) noexcept {
    const auto* d = v.as_double();
    return d != nullptr && std::isnan(*d);
}

int total_rank(const PropertyValue& v) noexcept {
    switch (v.kind()) {
        case ValueKind::boolean: return 0;
        case ValueKind::integer:
        case ValueKind::floating: return 1;
        case ValueKind::string: return 2;
        case ValueKind::null: return 3;
    }
    return 3;
}

std::string escape_cypher_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '\'';
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\'': out += "\\'"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '\'';
    return out;
}

}  // namespace

Ordering compare(const PropertyValue& a, const PropertyValue& b) noexcept {
    if (a.is_null() || b.is_null()) {
        return Ordering::incomparable;
    }
    if (a.is_number() && b.is_number()) {
        if (is_nan(a) || is_nan(b)) {
            return Ordering::incomparable;
        }
        if (a.as_int() && b.as_int()) {
            return three_way(*a.as_int(), *b.as_int());
        }
        return three_way(widen(a), widen(b));
    }
    if (a.kind() != b.kind()) {
        return Ordering::incomparable;
    }
    if (const auto* s = a.as_string()) {
        return three_way(*s, *b.as_string());
    }
    return three_way(*a.as_bool(), *b.as_bool());
}

bool total_less(const PropertyValue& a, const PropertyValue& b) noexcept {
    const int ra = total_rank(a);
    const int rb = total_rank(b);
    if (ra != rb) {
        return ra < rb;
    }
    if (ra == 1) {
        // NaN sorts after every other number.
        if (is_nan(a) || is_nan(b)) {
            return !is_nan(a) && is_nan(b);
        }
    }
    if (ra == 3) {
        return false;
    }
    return compare(a, b) == Ordering::less;
}

bool total_equal(const PropertyValue& a, const PropertyValue& b) noexcept {
    return !total_less(a, b) && !total_less(b, a);
}

std::string to_text(const PropertyValue& v) {
    switch (v.kind()) {
        case ValueKind::null: return "null";
        case ValueKind::boolean: return *v.as_bool() ? "true" : "false";
        case ValueKind::integer: return std::to_string(*v.as_int());
        case ValueKind::floating: return format_double(*v.as_double());
        case ValueKind::string: return *v.as_string();
    }
    return {};
}

std::string to_cypher_literal(const PropertyValue& v) {
    if (const auto* s = v.as_string()) {
        return escape_cypher_string(*s);
    }
    return to_text(v);
}

nlohmann::json to_json(const PropertyValue& v) {
    switch (v.kind()) {
        case ValueKind::null: return nullptr;
        case ValueKind::boolean: return *v.as_bool();
        case ValueKind::integer: return *v.as_int();
        case ValueKind::floating: return *v.as_double();
        case ValueKind::string: return *v.as_string();
    }
    return nullptr;
}

PropertyValue value_from_json(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return {};
        case nlohmann::json::value_t::boolean: return j.get<bool>();
        case nlohmann::json::value_t::number_integer: return j.get<std::int64_t>();
        case nlohmann::json::value_t::number_unsigned: {
            const auto u = j.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(INT64_MAX)) {
                return static_cast<double>(u);
            }
            return static_cast<std::int64_t>(u);
        }
        case nlohmann::json::value_t::number_float: return j.get<double>();
        case nlohmann::json::value_t::string: return j.get<std::string>();
        default: throw std::invalid_argument("property values must be scalars, got " + j.dump());
    }
}

}  // namespace iyp::graph
