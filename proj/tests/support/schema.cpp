#include "schema.hpp"

#include <fstream>
#include <regex>
#include <stdexcept>

namespace schema {

using nlohmann::json;

namespace {

bool has_type(const json& v, const std::string& type) {
    if (type == "object")
        return v.is_object();
    if (type == "array")
        return v.is_array();
    if (type == "string")
        return v.is_string();
    if (type == "boolean")
        return v.is_boolean();
    if (type == "null")
        return v.is_null();
    if (type == "integer")
        return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
    if (type == "number")
        return v.is_number();
    throw std::invalid_argument("unsupported schema type " + type);
}

const json& resolve(const json& root, const json& node) {
    if (!node.contains("$ref"))
        return node;
    const auto ref = node["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0)
        throw std::invalid_argument("unsupported $ref " + ref);
    return root.at("definitions").at(ref.substr(prefix.size()));
}

void check(const json& v, const json& root, const json& node_in, const std::string& where,
           std::vector<std::string>& errors) {
    const json& node = resolve(root, node_in);
    auto fail = [&](const std::string& msg) { errors.push_back(where + ": " + msg); };

    if (node.contains("type")) {
        bool ok = false;
        if (node["type"].is_array()) {
            for (const auto& t : node["type"])
                ok = ok || has_type(v, t.get<std::string>());
        } else {
            ok = has_type(v, node["type"].get<std::string>());
        }
        if (!ok) {
            fail("expected type " + node["type"].dump() + ", got " + v.type_name());
            return;
        }
    }
    if (node.contains("enum")) {
        bool ok = false;
        for (const auto& e : node["enum"])
            ok = ok || e == v;
        if (!ok)
            fail("value " + v.dump() + " not in enum");
    }
    if (v.is_number()) {
        const double x = v.get<double>();
        if (node.contains("minimum") && x < node["minimum"].get<double>())
            fail("below minimum");
        if (node.contains("maximum") && x > node["maximum"].get<double>())
            fail("above maximum");
        if (node.contains("exclusiveMinimum") && x <= node["exclusiveMinimum"].get<double>())
            fail("not above exclusiveMinimum");
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (node.contains("minLength") && s.size() < node["minLength"].get<std::size_t>())
            fail("string too short");
        if (node.contains("maxLength") && s.size() > node["maxLength"].get<std::size_t>())
            fail("string too long");
        if (node.contains("pattern") && !std::regex_search(s, std::regex(node["pattern"].get<std::string>())))
            fail("string '" + s + "' does not match pattern");
    }
    if (v.is_array()) {
        if (node.contains("minItems") && v.size() < node["minItems"].get<std::size_t>())
            fail("too few items");
        if (node.contains("maxItems") && v.size() > node["maxItems"].get<std::size_t>())
            fail("too many items");
        if (node.contains("items"))
            for (std::size_t i = 0; i < v.size(); ++i)
                check(v[i], root, node["items"], where + "[" + std::to_string(i) + "]", errors);
    }
    if (v.is_object()) {
        if (node.contains("required"))
            for (const auto& key : node["required"])
                if (!v.contains(key.get<std::string>()))
                    fail("missing required property " + key.get<std::string>());
        const json empty = json::object();
        const json& props = node.contains("properties") ? node["properties"] : empty;
        for (const auto& [key, value] : v.items()) {
            if (props.contains(key)) {
                check(value, root, props[key], where + "." + key, errors);
            } else if (node.contains("additionalProperties")) {
                const auto& extra = node["additionalProperties"];
                if (extra.is_boolean()) {
                    if (!extra.get<bool>())
                        fail("unexpected property " + key);
                } else {
                    check(value, root, extra, where + "." + key, errors);
                }
            }
        }
    }
}

} // namespace

std::vector<std::string> validate(const json& instance, const json& schema) {
    std::vector<std::string> errors;
    check(instance, schema, schema, "$", errors);
    return errors;
}

std::filesystem::path schema_dir() {
    return std::filesystem::path(METASTACK_SOURCE_DIR) / "docs" / "schemas";
}

json load(const std::string& name) {
    std::ifstream in(schema_dir() / name);
    if (!in)
        throw std::runtime_error("missing schema " + name);
    return json::parse(in);
}

} // namespace schema
