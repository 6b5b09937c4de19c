#pragma once

// Deterministic JSON document model for tool reports. Objects keep insertion
// order and numbers print with a fixed %.17g format, so identical inputs
// serialize to byte-identical text.

#include <string>
#include <utility>
#include <vector>

namespace rot4 {

inline constexpr const char* kReportSchema = "rotsurf4/report/v1";
inline constexpr const char* kToolVersion = "1.0.0";

struct JsonValue {
    enum class Kind { Null, Bool, Number, Int, String, Array, Object };

    Kind kind = Kind::Null;
    bool boolean = false;
    double number = 0.0;
    long long integer = 0;
    std::string string;
    std::vector<JsonValue> items;
    std::vector<std::pair<std::string, JsonValue>> members;

    // Object member access; appends when the key is new. Valid only on
    // Object values (fresh JsonValue defaults to Null; set() promotes it).
    JsonValue& set(const std::string& key, JsonValue value);
    void push(JsonValue value);  // promotes to Array
};

JsonValue json_null();
JsonValue json_bool(bool v);
JsonValue json_number(double v);  // non-finite serializes as null
JsonValue json_int(long long v);
JsonValue json_string(std::string v);
JsonValue json_array();
JsonValue json_object();

// Fixed shortest-roundtrip style formatting used everywhere a double is
// printed: %.17g.
std::string format_double(double v);

// Pretty serializer: two-space indent, "\n" line ends, no trailing newline.
std::string to_json(const JsonValue& value);

// Quote a CSV field when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

}  // namespace rot4
