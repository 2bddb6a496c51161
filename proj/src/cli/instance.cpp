#include "perdecomp/instance.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "perdecomp/error.hpp"

namespace perdecomp {

using Json = nlohmann::ordered_json;

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::FiniteAction: return "finite_action";
    case Mode::AbelianFinite: return "abelian_finite";
    case Mode::ZWindow: return "z_window";
    case Mode::TfConditions: return "tf_conditions";
  }
  return "?";
}

namespace {

std::string at(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

const Json& require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(key, "missing");
  return *it;
}

void only_keys(const Json& doc, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw SchemaError(key, "unknown field");
  }
}

std::int64_t get_int(const Json& v, const std::string& field, std::int64_t lo) {
  if (!v.is_number_integer()) throw SchemaError(field, "expected an integer");
  std::int64_t x;
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      throw SchemaError(field, "integer out of range");
    x = static_cast<std::int64_t>(u);
  } else {
    x = v.get<std::int64_t>();
  }
  if (x < lo) throw SchemaError(field, "must be at least " + std::to_string(lo));
  return x;
}

const Json& get_array(const Json& v, const std::string& field) {
  if (!v.is_array()) throw SchemaError(field, "expected an array");
  return v;
}

Rational get_rational(const Json& v, const std::string& field) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) {
      return Rational(BigInt(std::to_string(v.get<std::uint64_t>())));
    }
    return Rational(static_cast<long long>(v.get<std::int64_t>()));
  }
  if (!v.is_string()) throw SchemaError(field, "expected a rational string or an integer");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(field, e.what());
  }
}

FnVec get_values(const Json& doc, std::size_t expected) {
  const Json& arr = get_array(require(doc, "f"), "f");
  if (arr.size() != expected)
    throw SchemaError("f", "expected " + std::to_string(expected) + " values, got " +
                               std::to_string(arr.size()));
  FnVec f;
  f.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) f.push_back(get_rational(arr[i], at("f", i)));
  return f;
}

Json values_json(const FnVec& f) {
  Json arr = Json::array();
  for (const auto& v : f) arr.push_back(v.to_string());
  return arr;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("$", e.what());
  }
  if (!doc.is_object()) throw SchemaError("$", "expected an object");
  const Json& mode = require(doc, "mode");
  if (!mode.is_string()) throw SchemaError("mode", "expected a string");
  const std::string name = mode.get<std::string>();

  Instance out;
  if (name == "finite_action") {
    out.mode = Mode::FiniteAction;
    only_keys(doc, {"mode", "size", "perms", "f"});
    out.size = static_cast<std::size_t>(get_int(require(doc, "size"), "size", 1));
    if (out.size > std::numeric_limits<Point>::max()) throw SchemaError("size", "too large");
    const Json& perms = get_array(require(doc, "perms"), "perms");
    for (std::size_t j = 0; j < perms.size(); ++j) {
      const std::string field = at("perms", j);
      const Json& p = get_array(perms[j], field);
      if (p.size() != out.size)
        throw SchemaError(field, "expected " + std::to_string(out.size) + " images");
      std::vector<Point> images;
      std::vector<char> hit(out.size, 0);
      for (std::size_t x = 0; x < p.size(); ++x) {
        const std::int64_t y = get_int(p[x], at(field, x), 0);
        if (static_cast<std::uint64_t>(y) >= out.size)
          throw SchemaError(at(field, x), "image out of range");
        if (hit[static_cast<std::size_t>(y)]++)
          throw SchemaError(at(field, x), "repeated image " + std::to_string(y));
        images.push_back(static_cast<Point>(y));
      }
      out.perms.push_back(std::move(images));
    }
    out.f = get_values(doc, out.size);
  } else if (name == "abelian_finite") {
    out.mode = Mode::AbelianFinite;
    only_keys(doc, {"mode", "moduli", "periods", "f"});
    const Json& moduli = get_array(require(doc, "moduli"), "moduli");
    if (moduli.empty()) throw SchemaError("moduli", "at least one modulus is required");
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      out.moduli.push_back(get_int(moduli[i], at("moduli", i), 1));
      order *= static_cast<std::uint64_t>(out.moduli.back());
      if (order > (std::uint64_t{1} << 31)) throw SchemaError("moduli", "group order too large");
    }
    const Json& periods = get_array(require(doc, "periods"), "periods");
    for (std::size_t j = 0; j < periods.size(); ++j) {
      const std::string field = at("periods", j);
      const Json& p = get_array(periods[j], field);
      if (p.size() != out.moduli.size())
        throw SchemaError(field, "expected " + std::to_string(out.moduli.size()) + " coordinates");
      std::vector<std::int64_t> v;
      for (std::size_t i = 0; i < p.size(); ++i)
        v.push_back(get_int(p[i], at(field, i), std::numeric_limits<std::int64_t>::min()));
      out.translations.push_back(std::move(v));
    }
    out.f = get_values(doc, static_cast<std::size_t>(order));
  } else if (name == "z_window") {
    out.mode = Mode::ZWindow;
    only_keys(doc, {"mode", "periods", "window", "f"});
    const Json& periods = get_array(require(doc, "periods"), "periods");
    for (std::size_t j = 0; j < periods.size(); ++j)
      out.window_periods.push_back(get_int(periods[j], at("periods", j), 1));
    out.window = static_cast<std::size_t>(get_int(require(doc, "window"), "window", 1));
    out.f = get_values(doc, out.window);
  } else if (name == "tf_conditions") {
    out.mode = Mode::TfConditions;
    only_keys(doc, {"mode", "dim", "periods"});
    out.dim = static_cast<std::size_t>(get_int(require(doc, "dim"), "dim", 1));
    const Json& periods = get_array(require(doc, "periods"), "periods");
    for (std::size_t j = 0; j < periods.size(); ++j) {
      const std::string field = at("periods", j);
      const Json& p = get_array(periods[j], field);
      if (p.size() != out.dim)
        throw SchemaError(field, "expected " + std::to_string(out.dim) + " coordinates");
      PeriodVector v;
      bool zero = true;
      for (std::size_t i = 0; i < p.size(); ++i) {
        v.push_back(get_rational(p[i], at(field, i)));
        zero = zero && v.back().is_zero();
      }
      if (zero) throw SchemaError(field, "period is zero");
      out.real_periods.push_back(std::move(v));
    }
  } else {
    throw SchemaError("mode", "unknown mode '" + name + "'");
  }
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& instance) {
  Json doc;
  doc["mode"] = to_string(instance.mode);
  switch (instance.mode) {
    case Mode::FiniteAction:
      doc["size"] = instance.size;
      doc["perms"] = instance.perms;
      doc["f"] = values_json(instance.f);
      break;
    case Mode::AbelianFinite:
      doc["moduli"] = instance.moduli;
      doc["periods"] = instance.translations;
      doc["f"] = values_json(instance.f);
      break;
    case Mode::ZWindow:
      doc["periods"] = instance.window_periods;
      doc["window"] = instance.window;
      doc["f"] = values_json(instance.f);
      break;
    case Mode::TfConditions: {
      doc["dim"] = instance.dim;
      Json periods = Json::array();
      for (const auto& p : instance.real_periods) periods.push_back(values_json(p));
      doc["periods"] = std::move(periods);
      break;
    }
  }
  return doc.dump(2) + "\n";
}

Action build_action(const Instance& instance) {
  switch (instance.mode) {
    case Mode::FiniteAction:
      return Action::validate(instance.size, instance.perms);
    case Mode::AbelianFinite:
      return finite_abelian_action(instance.moduli, instance.translations);
    default:
      throw Error(ErrorKind::ShapeMismatch,
                  std::string("mode ") + to_string(instance.mode) + " has no finite action");
  }
}

WindowInstance build_window(const Instance& instance) {
  if (instance.mode != Mode::ZWindow)
    throw Error(ErrorKind::ShapeMismatch,
                std::string("mode ") + to_string(instance.mode) + " is not a window instance");
  WindowInstance w{instance.window_periods, instance.window, instance.f};
  w.validate();
  return w;
}

}  // namespace perdecomp
