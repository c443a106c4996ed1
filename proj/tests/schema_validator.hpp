#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

// Minimal JSON-schema-subset checker used to hold the CLI to its published
// output schemas. Supported keywords: type (name or list of names),
// properties, required, additionalProperties (boolean), items, enum,
// minimum, maximum, minItems, maxItems, minLength, maxLength, and local
// $ref into #/definitions. Unknown keywords are reported as errors rather
// than silently ignored, so a schema cannot promise more than this checker
// enforces.

namespace schemacheck {

using nlohmann::json;

namespace detail {

struct context {
  const json* root = nullptr;
  std::vector<std::string> errors;
};

inline bool type_matches(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  return false;
}

inline void check(const json& value, const json& schema, const std::string& path, context& ctx);

inline void check_ref(const json& value, const std::string& ref, const std::string& path,
                      context& ctx) {
  const std::string prefix = "#/definitions/";
  if (ref.rfind(prefix, 0) == 0 && ctx.root->contains("definitions")) {
    const json& defs = ctx.root->at("definitions");
    std::string name = ref.substr(prefix.size());
    if (defs.contains(name)) {
      check(value, defs.at(name), path, ctx);
      return;
    }
  }
  ctx.errors.push_back(path + ": unresolvable $ref '" + ref + "'");
}

inline void check(const json& value, const json& schema, const std::string& path, context& ctx) {
  static const std::set<std::string> known = {
      "$comment",   "$ref",       "definitions",          "type",     "properties",
      "required",   "additionalProperties", "items",      "enum",     "minimum",
      "maximum",    "minItems",   "maxItems",             "minLength", "maxLength"};
  for (auto it = schema.begin(); it != schema.end(); ++it)
    if (!known.count(it.key()))
      ctx.errors.push_back(path + ": unsupported schema keyword '" + it.key() + "'");

  if (schema.contains("$ref")) {
    check_ref(value, schema.at("$ref").get<std::string>(), path, ctx);
    return;
  }

  if (schema.contains("type")) {
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(value, t.get<std::string>());
    } else {
      for (const json& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
    }
    if (!ok) {
      ctx.errors.push_back(path + ": type is " + std::string(value.type_name()) +
                           ", schema wants " + t.dump());
      return;  // downstream keyword checks would only cascade
    }
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& alt : schema.at("enum")) ok = ok || (alt == value);
    if (!ok) ctx.errors.push_back(path + ": value " + value.dump() + " not in enum");
  }

  if (value.is_number()) {
    double x = value.get<double>();
    if (schema.contains("minimum") && x < schema.at("minimum").get<double>())
      ctx.errors.push_back(path + ": " + value.dump() + " below minimum");
    if (schema.contains("maximum") && x > schema.at("maximum").get<double>())
      ctx.errors.push_back(path + ": " + value.dump() + " above maximum");
  }

  if (value.is_string()) {
    size_t n = value.get<std::string>().size();
    if (schema.contains("minLength") && n < schema.at("minLength").get<size_t>())
      ctx.errors.push_back(path + ": string shorter than minLength");
    if (schema.contains("maxLength") && n > schema.at("maxLength").get<size_t>())
      ctx.errors.push_back(path + ": string longer than maxLength");
  }

  if (value.is_object()) {
    const json* props = schema.contains("properties") ? &schema.at("properties") : nullptr;
    if (schema.contains("required"))
      for (const json& name : schema.at("required"))
        if (!value.contains(name.get<std::string>()))
          ctx.errors.push_back(path + ": missing required property '" +
                               name.get<std::string>() + "'");
    bool extra_ok = !schema.contains("additionalProperties") ||
                    schema.at("additionalProperties").get<bool>();
    for (auto it = value.begin(); it != value.end(); ++it) {
      const json* sub = props && props->contains(it.key()) ? &props->at(it.key()) : nullptr;
      if (sub)
        check(it.value(), *sub, path + "." + it.key(), ctx);
      else if (!extra_ok)
        ctx.errors.push_back(path + ": unexpected property '" + it.key() + "'");
    }
  }

  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema.at("minItems").get<size_t>())
      ctx.errors.push_back(path + ": array shorter than minItems");
    if (schema.contains("maxItems") && value.size() > schema.at("maxItems").get<size_t>())
      ctx.errors.push_back(path + ": array longer than maxItems");
    if (schema.contains("items"))
      for (size_t i = 0; i < value.size(); ++i)
        check(value[i], schema.at("items"), path + "[" + std::to_string(i) + "]", ctx);
  }
}

}  // namespace detail

// Returns the list of violations ("" path root is '$'); empty means valid.
inline std::vector<std::string> validate(const json& value, const json& schema) {
  detail::context ctx;
  ctx.root = &schema;
  detail::check(value, schema, "$", ctx);
  return ctx.errors;
}

}  // namespace schemacheck
