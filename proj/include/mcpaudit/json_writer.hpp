// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace mcpaudit {

/// Byte-deterministic JSON emission: object keys sort lexicographically and
/// every real number renders with exactly four fractional digits
/// (round-half-even). nlohmann/json stays on the parse side only; its double
/// serialization is shortest-round-trip, which golden files cannot pin.
class JsonValue {
public:
    using Array = std::vector<JsonValue>;
    using Object = std::map<std::string, JsonValue>;

    JsonValue() : value_(nullptr) {}
    JsonValue(std::nullptr_t) : value_(nullptr) {}
    JsonValue(bool b) : value_(b) {}
    JsonValue(int i) : value_(static_cast<std::int64_t>(i)) {}
    JsonValue(std::int64_t i) : value_(i) {}
    JsonValue(std::uint64_t u) : value_(static_cast<std::int64_t>(u)) {}
    JsonValue(double d) : value_(d) {}
    JsonValue(const char* s) : value_(std::string(s)) {}
    JsonValue(std::string s) : value_(std::move(s)) {}
    JsonValue(Array a) : value_(std::move(a)) {}
    JsonValue(Object o) : value_(std::move(o)) {}

    static JsonValue array() { return JsonValue(Array{}); }
    static JsonValue object() { return JsonValue(Object{}); }

    JsonValue& operator[](const std::string& key) { return std::get<Object>(value_)[key]; }
    void push_back(JsonValue v) { std::get<Array>(value_).push_back(std::move(v)); }

    /// Two-space pretty form with a trailing newline.
    std::string dump() const;

private:
    void write(std::string& out, int indent) const;

    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> value_;
};

/// Fixed 4-fraction-digit decimal, ties to even.
std::string format_fixed4(double value);

std::string json_escape(std::string_view text);

} // namespace mcpaudit
