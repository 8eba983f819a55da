// SPDX-License-Identifier: Apache-2.0
#include "mcpaudit/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace mcpaudit {

std::string format_fixed4(double value) {
    // llrint under the default FE_TONEAREST mode rounds halves to even.
    long long scaled = std::llrint(value * 10000.0);
    bool negative = scaled < 0;
    unsigned long long magnitude =
        negative ? 0ull - static_cast<unsigned long long>(scaled)
                 : static_cast<unsigned long long>(scaled);
    std::string out = negative ? "-" : "";
    out += std::to_string(magnitude / 10000);
    std::string frac = std::to_string(magnitude % 10000);
    out += '.';
    out += std::string(4 - frac.size(), '0');
    out += frac;
    return out;
}

std::string json_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

void JsonValue::write(std::string& out, int indent) const {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out += "null";
    } else if (auto* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (auto* i = std::get_if<std::int64_t>(&value_)) {
        out += std::to_string(*i);
    } else if (auto* d = std::get_if<double>(&value_)) {
        out += format_fixed4(*d);
    } else if (auto* s = std::get_if<std::string>(&value_)) {
        out += '"';
        out += json_escape(*s);
        out += '"';
    } else if (auto* a = std::get_if<Array>(&value_)) {
        if (a->empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < a->size(); ++k) {
            out += pad_in;
            (*a)[k].write(out, indent + 1);
            if (k + 1 < a->size()) out += ',';
            out += '\n';
        }
        out += pad;
        out += ']';
    } else if (auto* o = std::get_if<Object>(&value_)) {
        if (o->empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t k = 0;
        for (const auto& [key, value] : *o) {
            out += pad_in;
            out += '"';
            out += json_escape(key);
            out += "\": ";
            value.write(out, indent + 1);
            if (++k < o->size()) out += ',';
            out += '\n';
        }
        out += pad;
        out += '}';
    }
}

std::string JsonValue::dump() const {
    std::string out;
    write(out, 0);
    out += '\n';
    return out;
}

} // namespace mcpaudit
