#include "schema.hpp"

#include <map>
#include <stdexcept>

namespace mfap::cli {

using nlohmann::json;

namespace {

bool has_type(const json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    throw std::logic_error("schema: unknown type '" + type + "'");
}

void check(const json& v, const json& schema, const std::string& at, std::vector<std::string>& errors) {
    if (auto t = schema.find("type"); t != schema.end()) {
        bool ok = false;
        if (t->is_array()) {
            for (const auto& alt : *t) ok = ok || has_type(v, alt.get<std::string>());
        } else {
            ok = has_type(v, t->get<std::string>());
        }
        if (!ok) {
            errors.push_back(at + ": expected " + t->dump() + ", got " + v.type_name());
            return;
        }
    }
    if (auto m = schema.find("minimum"); m != schema.end() && v.is_number() && v.get<double>() < m->get<double>())
        errors.push_back(at + ": below minimum " + m->dump());
    if (v.is_object()) {
        if (auto req = schema.find("required"); req != schema.end())
            for (const auto& key : *req)
                if (!v.contains(key.get<std::string>())) errors.push_back(at + ": missing '" + key.get<std::string>() + "'");
        if (auto props = schema.find("properties"); props != schema.end())
            for (const auto& [key, sub] : props->items())
                if (auto it = v.find(key); it != v.end()) check(*it, sub, at + "/" + key, errors);
    }
    if (v.is_array())
        if (auto items = schema.find("items"); items != schema.end())
            for (std::size_t i = 0; i < v.size(); ++i) check(v[i], *items, at + "/" + std::to_string(i), errors);
}

// Shorthands for writing the schemas below.
json type(const char* t) { return {{"type", t}}; }
json nonneg(const char* t) { return {{"type", t}, {"minimum", 0}}; }
json complex_pair() { return {{"type", "array"}, {"items", type("number")}}; }
json nullable_number() { return {{"type", json::array({"number", "null"})}}; }
json obj(json properties) {
    json required = json::array();
    for (const auto& [key, _] : properties.items()) required.push_back(key);
    return {{"type", "object"}, {"required", required}, {"properties", std::move(properties)}};
}
json list_of(json item) { return {{"type", "array"}, {"items", std::move(item)}}; }

json character() { return obj({{"label", type("string")}, {"modulus", nonneg("integer")}, {"index", nonneg("integer")},
                               {"conductor", nonneg("integer")}, {"order", nonneg("integer")}, {"real", type("boolean")}}); }

std::map<std::string, json> result_schemas() {
    std::map<std::string, json> s;
    s["constants"] = obj({{"name", type("string")}, {"value", type("number")}, {"method", type("string")},
                          {"estimated_error", nonneg("number")}});
    const json spectrum_entry = obj({{"j", nonneg("integer")}, {"character", character()}, {"t", type("number")},
                                     {"squared_distance", nonneg("number")}, {"repulsion_reference", type("number")}});
    s["pretension.find"] = obj({{"psi", character()}, {"r", nonneg("integer")}, {"t", type("number")},
                                {"min_squared_distance", nonneg("number")}, {"candidates", nonneg("integer")},
                                {"grid", obj({{"spacing", nonneg("number")}, {"points", nonneg("integer")},
                                              {"refine_tolerance", nonneg("number")}})},
                                {"spectrum", list_of(spectrum_entry)}});
    const json row = obj({{"a", nonneg("integer")}, {"F", complex_pair()}, {"residual", complex_pair()},
                          {"main_term", {{"type", json::array({"array", "null"})}}}});
    s["meanvalues.report"] = obj({{"exceptional", obj({{"psi", character()}, {"r", nonneg("integer")},
                                                      {"t", type("number")}, {"min_squared_distance", nonneg("number")}})},
                                  {"chi", character()}, {"r_divides_q", type("boolean")}, {"rows", list_of(row)},
                                  {"max_normalized_residual", nonneg("number")},
                                  {"error_ref_branch_a", nullable_number()}, {"error_ref_branch_b", type("number")}});
    s["meanvalues.halasz"] = obj({{"T", type("number")}, {"t", type("number")}, {"squared_distance", nonneg("number")},
                                  {"bound", nonneg("number")}, {"measured_mean", nonneg("number")}});
    s["meanvalues.euler"] = obj({{"t", type("number")}, {"truncation", nonneg("integer")}, {"product", complex_pair()},
                                 {"prediction", complex_pair()}, {"tail_log_bound", nonneg("number")}});
    s["sieve.bad-moduli"] = obj({{"terms", nonneg("integer")}, {"threshold", nonneg("number")},
                                 {"eta_below_hypothesis", type("boolean")}, {"bad", list_of(nonneg("integer"))},
                                 {"bad_weight", nonneg("number")}, {"weight_bound", nonneg("number")}});
    s["sieve.defect"] = obj({{"units", list_of(nonneg("integer"))}, {"max_defect", nonneg("number")},
                             {"normalizer", nonneg("number")}, {"normalized_max_defect", nonneg("number")},
                             {"reference_scale", nullable_number()}});
    s["sieve.legendre"] = obj({{"a_is_square", type("boolean")}, {"infimum", type("number")},
                               {"argmin_p", nonneg("integer")}, {"primes_scanned", nonneg("integer")}});
    s["nearchar.recover"] = obj({{"chi", character()}, {"epsilon", nonneg("number")},
                                 {"fourier_mass", nonneg("number")}, {"bound", nonneg("number")},
                                 {"measured", nonneg("number")}});
    s["chars.list"] = obj({{"count", nonneg("integer")}, {"characters", list_of(character())}});
    s["chars.eval"] = obj({{"character", character()}, {"n", nonneg("integer")}, {"value", complex_pair()},
                           {"angle", {{"type", json::array({"array", "null"})}}}});
    s["chars.conductor"] = obj({{"character", character()}, {"conductor", nonneg("integer")},
                                {"primitive_part", character()}});
    return s;
}

}  // namespace

std::vector<std::string> validate(const json& value, const json& schema) {
    std::vector<std::string> errors;
    check(value, schema, "", errors);
    return errors;
}

const json& report_schema(const std::string& kind) {
    static const std::map<std::string, json> schemas = [] {
        std::map<std::string, json> out;
        for (auto& [k, result] : result_schemas()) {
            out[k] = obj({{"tool", type("string")}, {"version", type("string")}, {"kind", type("string")},
                          {"timestamp", type("string")}, {"config", type("object")}, {"result", result}});
        }
        return out;
    }();
    const auto it = schemas.find(kind);
    if (it == schemas.end()) throw std::out_of_range("no report schema for kind '" + kind + "'");
    return it->second;
}

std::vector<std::string> validate_report_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        return {std::string("unparsable report: ") + e.what()};
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) return {"report has no kind"};
    try {
        return validate(doc, report_schema(doc["kind"].get<std::string>()));
    } catch (const std::out_of_range& e) {
        return {e.what()};
    }
}

}  // namespace mfap::cli
