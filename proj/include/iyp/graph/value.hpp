// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

namespace iyp::graph {

enum class ValueKind { null, boolean, integer, floating, string };

/// A scalar property: text, 64-bit integer, 64-bit float, boolean or null.
class PropertyValue {
public:
    using Storage = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

    PropertyValue() = default;
    PropertyValue(std::nullptr_t) {}
    PropertyValue(bool v) : storage_(v) {}
    template <std::integral T>
        requires(!std::same_as<T, bool>)
    PropertyValue(T v) : storage_(static_cast<std::int64_t>(v)) {}
    PropertyValue(double v) : storage_(v) {}
    PropertyValue(std::string v) : storage_(std::move(v)) {}
    PropertyValue(const char* v) : storage_(std::string(v)) {}

    [[nodiscard]] ValueKind kind() const noexcept {
        return static_cast<ValueKind>(storage_.index());
    }
    [[nodiscard]] bool is_null() const noexcept { return kind() == ValueKind::null; }
    [[nodiscard]] bool is_number() const noexcept {
        return kind() == ValueKind::integer || kind() == ValueKind::floating;
    }

    [[nodiscard]] const bool* as_bool() const noexcept { return std::get_if<bool>(&storage_); }
    [[nodiscard]] const std::int64_t* as_int() const noexcept {
        return std::get_if<std::int64_t>(&storage_);
    }
    [[nodiscard]] const double* as_double() const noexcept { return std::get_if<double>(&storage_); }
    [[nodiscard]] const std::string* as_string() const noexcept {
        return std::get_if<std::string>(&storage_);
    }
    /// Numeric view of integer and float values.
    [[nodiscard]] std::optional<double> as_number() const noexcept;

    [[nodiscard]] const Storage& storage() const noexcept { return storage_; }

    /// Kind-sensitive structural equality (1 != 1.0 here). Query semantics
    /// use compare() instead.
    friend bool operator==(const PropertyValue&, const PropertyValue&) = default;

private:
    Storage storage_;
};

using Properties = std::map<std::string, PropertyValue, std::less<>>;

enum class Ordering { less, equal, greater, incomparable };

/// Query comparison. Null against anything, NaN, and mismatched kinds
/// (other than integer/float) are incomparable.
[[nodiscard]] Ordering compare(const PropertyValue& a, const PropertyValue& b) noexcept;

/// Total order used for sorting and grouping: booleans, then numbers
/// (numerically, int and float interleaved), then strings, then null.
[[nodiscard]] bool total_less(const PropertyValue& a, const PropertyValue& b) noexcept;
[[nodiscard]] bool total_equal(const PropertyValue& a, const PropertyValue& b) noexcept;

/// Plain text rendering: strings unquoted, floats via format_double.
[[nodiscard]] std::string to_text(const PropertyValue& v);

/// Cypher literal rendering: single-quoted, backslash-escaped strings.
[[nodiscard]] std::string to_cypher_literal(const PropertyValue& v);

[[nodiscard]] nlohmann::json to_json(const PropertyValue& v);
/// Scalars only; throws std::invalid_argument for arrays and objects.
[[nodiscard]] PropertyValue value_from_json(const nlohmann::json& j);

}  // namespace iyp::graph
