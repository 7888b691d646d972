#pragma once

// Validator for the JSON-Schema subset used by the shipped schemas: type,
// properties, required, additionalProperties, items, enum, const, minimum,
// maximum, minItems, maxItems, oneOf, and local $ref into $defs.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace maxface {

class SchemaValidator {
public:
    using json = nlohmann::ordered_json;

    explicit SchemaValidator(json schema) : root_(std::move(schema)) {}

    // Empty result means the document is valid.
    std::vector<std::string> validate(const json& doc) const {
        std::vector<std::string> errors;
        check(root_, doc, "$", errors);
        return errors;
    }

private:
    const json& resolve(const json& schema) const {
        if (!schema.is_object() || !schema.contains("$ref")) return schema;
        std::string ref = schema["$ref"];
        const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) throw std::invalid_argument("unsupported $ref " + ref);
        return root_.at("$defs").at(ref.substr(prefix.size()));
    }

    static bool has_type(const json& v, const std::string& t) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()));
        if (t == "number") return v.is_number();
        return false;
    }

    void check(const json& raw_schema, const json& v, const std::string& path, std::vector<std::string>& errors) const {
        const json& s = resolve(raw_schema);
        if (s.is_boolean()) {
            if (!s.get<bool>()) errors.push_back(path + ": not allowed");
            return;
        }
        if (s.contains("type")) {
            bool ok = false;
            if (s["type"].is_array()) {
                for (const auto& t : s["type"]) ok = ok || has_type(v, t);
            } else {
                ok = has_type(v, s["type"]);
            }
            if (!ok) {
                errors.push_back(path + ": expected type " + s["type"].dump());
                return;
            }
        }
        if (s.contains("const") && v != s["const"]) errors.push_back(path + ": expected " + s["const"].dump());
        if (s.contains("enum")) {
            bool found = false;
            for (const auto& e : s["enum"]) found = found || e == v;
            if (!found) errors.push_back(path + ": value " + v.dump() + " not in " + s["enum"].dump());
        }
        if (v.is_number()) {
            if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>())
                errors.push_back(path + ": below minimum");
            if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>())
                errors.push_back(path + ": above maximum");
        }
        if (v.is_array()) {
            if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
                errors.push_back(path + ": too few items");
            if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
                errors.push_back(path + ": too many items");
            if (s.contains("items"))
                for (std::size_t k = 0; k < v.size(); ++k)
                    check(s["items"], v[k], path + "[" + std::to_string(k) + "]", errors);
        }
        if (v.is_object()) {
            if (s.contains("required"))
                for (const auto& key : s["required"])
                    if (!v.contains(key.get<std::string>())) errors.push_back(path + ": missing '" + key.get<std::string>() + "'");
            for (const auto& [key, value] : v.items()) {
                if (s.contains("properties") && s["properties"].contains(key)) {
                    check(s["properties"][key], value, path + "." + key, errors);
                } else if (s.contains("additionalProperties")) {
                    const json& ap = s["additionalProperties"];
                    if (ap.is_boolean() && !ap.get<bool>())
                        errors.push_back(path + ": unexpected property '" + key + "'");
                    else if (ap.is_object())
                        check(ap, value, path + "." + key, errors);
                }
            }
        }
        if (s.contains("oneOf")) {
            int matches = 0;
            for (const auto& alt : s["oneOf"]) {
                std::vector<std::string> sub;
                check(alt, v, path, sub);
                if (sub.empty()) ++matches;
            }
            if (matches != 1) errors.push_back(path + ": matches " + std::to_string(matches) + " alternatives of oneOf");
        }
    }

    json root_;
};

}  // namespace maxface
