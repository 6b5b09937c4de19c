#include "rot4/report.hpp"

#include <cmath>
#include <cstdio>

namespace rot4 {

JsonValue& JsonValue::set(const std::string& key, JsonValue value) {
    kind = Kind::Object;
    for (auto& [k, v] : members) {
        if (k == key) {
            v = std::move(value);
            return v;
        }
    }
    members.emplace_back(key, std::move(value));
    return members.back().second;
}

void JsonValue::push(JsonValue value) {
    kind = Kind::Array;
    items.push_back(std::move(value));
}

JsonValue json_null() { return JsonValue{}; }

JsonValue json_bool(bool v) {
    JsonValue r;
    r.kind = JsonValue::Kind::Bool;
    r.boolean = v;
    return r;
}

JsonValue json_number(double v) {
    JsonValue r;
    r.kind = JsonValue::Kind::Number;
    r.number = v;
    return r;
}

JsonValue json_int(long long v) {
    JsonValue r;
    r.kind = JsonValue::Kind::Int;
    r.integer = v;
    return r;
}

JsonValue json_string(std::string v) {
    JsonValue r;
    r.kind = JsonValue::Kind::String;
    r.string = std::move(v);
    return r;
}

JsonValue json_array() {
    JsonValue r;
    r.kind = JsonValue::Kind::Array;
    return r;
}

JsonValue json_object() {
    JsonValue r;
    r.kind = JsonValue::Kind::Object;
    return r;
}

std::string format_double(double v) {
    if (v == 0.0) return "0";  // canonicalize the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x",
                                  static_cast<unsigned>(static_cast<unsigned char>(ch)));
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void serialize(const JsonValue& v, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string inner_pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (v.kind) {
        case JsonValue::Kind::Null:
            out += "null";
            return;
        case JsonValue::Kind::Bool:
            out += v.boolean ? "true" : "false";
            return;
        case JsonValue::Kind::Number:
            if (std::isfinite(v.number)) {
                out += format_double(v.number);
            } else {
                out += "null";
            }
            return;
        case JsonValue::Kind::Int: {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "%lld", v.integer);
            out += buf;
            return;
        }
        case JsonValue::Kind::String:
            append_escaped(out, v.string);
            return;
        case JsonValue::Kind::Array: {
            if (v.items.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < v.items.size(); ++k) {
                out += inner_pad;
                serialize(v.items[k], out, depth + 1);
                if (k + 1 < v.items.size()) out += ',';
                out += '\n';
            }
            out += pad;
            out += ']';
            return;
        }
        case JsonValue::Kind::Object: {
            if (v.members.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t k = 0; k < v.members.size(); ++k) {
                out += inner_pad;
                append_escaped(out, v.members[k].first);
                out += ": ";
                serialize(v.members[k].second, out, depth + 1);
                if (k + 1 < v.members.size()) out += ',';
                out += '\n';
            }
            out += pad;
            out += '}';
            return;
        }
    }
}

}  // namespace

std::string to_json(const JsonValue& value) {
    std::string out;
    serialize(value, out, 0);
    return out;
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = false;
    for (char ch : field) {
        if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

}  // namespace rot4
