#include <cmath>
#include <regex>
#include <string>

#include "rotodiff/cli.hpp"

namespace rotodiff::cli {

namespace detail {
extern const char* const kSchemaText;
}

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Interprets the subset of JSON Schema the published schema uses: $ref into
// $defs, type, enum, const, numeric bounds, pattern, items/minItems/maxItems,
// properties/required/additionalProperties, default, allOf, anyOf, oneOf,
// not, if/then.
class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  Json check(const Json& value, const Json& schema, const std::string& ptr) const {
    Json v = value;
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      v = check(v, resolve(ref->get<std::string>()), ptr);
    }
    if (auto type = schema.find("type"); type != schema.end()) {
      v = check_type(v, type->get<std::string>(), ptr);
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      bool found = false;
      for (const auto& option : *e) found = found || option == v;
      if (!found) fail(ptr, "must be one of " + e->dump());
    }
    if (auto c = schema.find("const"); c != schema.end() && *c != v) {
      fail(ptr, "must equal " + c->dump());
    }
    if (v.is_number()) check_bounds(v.get<double>(), schema, ptr);
    if (auto pat = schema.find("pattern"); pat != schema.end() && v.is_string()) {
      if (!std::regex_search(v.get<std::string>(), std::regex(pat->get<std::string>()))) {
        fail(ptr, "must match " + pat->get<std::string>());
      }
    }
    if (v.is_array()) check_array(v, schema, ptr);
    if (v.is_object()) check_object(v, schema, ptr);

    if (auto all = schema.find("allOf"); all != schema.end()) {
      for (const auto& sub : *all) v = check(v, sub, ptr);
    }
    if (auto cond = schema.find("if"); cond != schema.end()) {
      if (matches(v, *cond, ptr)) {
        if (auto then = schema.find("then"); then != schema.end()) v = check(v, *then, ptr);
      }
    }
    if (auto any = schema.find("anyOf"); any != schema.end()) {
      bool ok = false;
      for (const auto& sub : *any) ok = ok || matches(v, sub, ptr);
      if (!ok) fail(ptr, "does not match any allowed form");
    }
    if (auto one = schema.find("oneOf"); one != schema.end()) {
      int count = 0;
      Json chosen;
      for (const auto& sub : *one) {
        Json out;
        if (matches(v, sub, ptr, &out)) {
          ++count;
          chosen = std::move(out);
        }
      }
      if (count != 1) fail(ptr, "must match exactly one allowed form");
      v = std::move(chosen);
    }
    if (auto neg = schema.find("not"); neg != schema.end() && matches(v, *neg, ptr)) {
      auto d = schema.find("description");
      fail(ptr, d != schema.end() ? d->get<std::string>() : "matches a forbidden form");
    }
    return v;
  }

 private:
  [[noreturn]] static void fail(const std::string& ptr, const std::string& message) {
    throw ValidationError(ptr, (ptr.empty() ? std::string("/") : ptr) + ": " + message);
  }

  const Json& resolve(const std::string& ref) const {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) throw std::logic_error("schema: unsupported $ref " + ref);
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  bool matches(const Json& v, const Json& schema, const std::string& ptr,
               Json* out = nullptr) const {
    try {
      Json r = check(v, schema, ptr);
      if (out) *out = std::move(r);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }

  static Json check_type(const Json& v, const std::string& type, const std::string& ptr) {
    if (type == "object") {
      if (!v.is_object()) fail(ptr, "must be an object");
    } else if (type == "array") {
      if (!v.is_array()) fail(ptr, "must be an array");
    } else if (type == "string") {
      if (!v.is_string()) fail(ptr, "must be a string");
    } else if (type == "number") {
      if (!v.is_number()) fail(ptr, "must be a number");
      const double x = v.get<double>();
      if (!std::isfinite(x)) fail(ptr, "must be finite");
      return Json(x);
    } else if (type == "integer") {
      if (v.is_number_integer()) return v;
      if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
          return x < 0 ? Json(static_cast<std::int64_t>(x)) : Json(static_cast<std::uint64_t>(x));
        }
      }
      fail(ptr, "must be an integer");
    } else if (type == "boolean") {
      if (!v.is_boolean()) fail(ptr, "must be a boolean");
    } else {
      throw std::logic_error("schema: unsupported type " + type);
    }
    return v;
  }

  static void check_bounds(double x, const Json& schema, const std::string& ptr) {
    if (auto b = schema.find("minimum"); b != schema.end() && !(x >= b->get<double>())) {
      fail(ptr, "must be >= " + b->dump());
    }
    if (auto b = schema.find("maximum"); b != schema.end() && !(x <= b->get<double>())) {
      fail(ptr, "must be <= " + b->dump());
    }
    if (auto b = schema.find("exclusiveMinimum"); b != schema.end() && !(x > b->get<double>())) {
      fail(ptr, "must be > " + b->dump());
    }
  }

  void check_array(Json& v, const Json& schema, const std::string& ptr) const {
    if (auto n = schema.find("minItems"); n != schema.end() && v.size() < n->get<std::size_t>()) {
      fail(ptr, "needs at least " + n->dump() + " items");
    }
    if (auto n = schema.find("maxItems"); n != schema.end() && v.size() > n->get<std::size_t>()) {
      fail(ptr, "allows at most " + n->dump() + " items");
    }
    if (auto items = schema.find("items"); items != schema.end()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = check(v[i], *items, ptr + "/" + std::to_string(i));
      }
    }
  }

  // default may sit on the property schema or behind its $ref
  const Json* find_default(const Json& prop) const {
    if (auto d = prop.find("default"); d != prop.end()) return &*d;
    if (auto ref = prop.find("$ref"); ref != prop.end()) {
      return find_default(resolve(ref->get<std::string>()));
    }
    return nullptr;
  }

  void check_object(Json& v, const Json& schema, const std::string& ptr) const {
    const auto props = schema.find("properties");
    const bool closed = schema.value("additionalProperties", true) == false;
    if (closed) {
      for (const auto& item : v.items()) {
        if (props == schema.end() || !props->contains(item.key())) {
          fail(ptr + "/" + escape_token(item.key()), "unknown key '" + item.key() + "'");
        }
      }
    }
    if (auto req = schema.find("required"); req != schema.end()) {
      for (const auto& key : *req) {
        if (!v.contains(key.get<std::string>())) {
          fail(ptr, "missing required key '" + key.get<std::string>() + "'");
        }
      }
    }
    if (props == schema.end()) return;
    for (const auto& [key, sub] : props->items()) {
      const std::string child = ptr + "/" + escape_token(key);
      if (v.contains(key)) {
        v[key] = check(v[key], sub, child);
      } else if (const Json* d = find_default(sub)) {
        v[key] = check(*d, sub, child);
      }
    }
  }

  const Json& root_;
};

}  // namespace

const std::string& schema_text() {
  static const std::string text(detail::kSchemaText);
  return text;
}

const Json& schema() {
  static const Json parsed = Json::parse(schema_text());
  return parsed;
}

Json canonicalize(const Json& config) {
  return Validator(schema()).check(config, schema(), "");
}

}  // namespace rotodiff::cli
