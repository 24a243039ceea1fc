#include "stablab/spec_parse.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "stablab/error.hpp"
#include "stablab/format.hpp"

namespace stablab {
namespace {

using Fields = std::map<std::string, std::string, std::less<>>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

// "k1=v1,k2=v2" with exactly the expected keys.
Fields parse_fields(std::string_view body, std::string_view kind,
                    std::initializer_list<std::string_view> expected) {
  Fields fields;
  if (!trim(body).empty()) {
    for (std::string_view item : split(body, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ValidationError(std::string(kind) + ": expected key=value, got '" +
                              std::string(item) + "'");
      }
      std::string key(trim(item.substr(0, eq)));
      if (fields.count(key)) {
        throw ValidationError(std::string(kind) + ": duplicate field '" + key + "'");
      }
      fields[key] = std::string(trim(item.substr(eq + 1)));
    }
  }
  for (const auto& [key, value] : fields) {
    bool known = false;
    for (std::string_view e : expected) known = known || key == e;
    if (!known) {
      throw ValidationError(std::string(kind) + ": unknown field '" + key + "'");
    }
  }
  for (std::string_view e : expected) {
    if (!fields.count(e)) {
      throw ValidationError(std::string(kind) + ": missing field '" + std::string(e) + "'");
    }
  }
  return fields;
}

double field(const Fields& f, std::string_view key) {
  return parse_real(f.find(key)->second, key);
}

std::pair<std::string_view, std::string_view> split_kind(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

StableParams params_field(const Fields& f) {
  return StableParams(field(f, "alpha"), field(f, "c"));
}

SacMember parse_simple_member(std::string_view kind, std::string_view body) {
  if (kind == "stable") {
    return SacMember::pure_stable(params_field(parse_fields(body, kind, {"alpha", "c"})));
  }
  if (kind == "pareto") {
    const StableParams p = params_field(parse_fields(body, kind, {"alpha", "c"}));
    return make_pareto_matched(p, QuadratureSpec::for_params(p));
  }
  if (kind == "noise") {
    const Fields f = parse_fields(body, kind, {"alpha", "c", "eps"});
    return SacMember::noise_convolved(params_field(f), field(f, "eps"));
  }
  throw ValidationError("unknown member spec kind '" + std::string(kind) + "'");
}

}  // namespace

double parse_real(std::string_view text, std::string_view name) {
  text = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw ValidationError(std::string(name) + ": not a finite number: '" +
                          std::string(text) + "'");
  }
  return value;
}

SacMember parse_member(std::string_view text) {
  const auto [kind, body] = split_kind(text);
  if (kind != "mix") return parse_simple_member(kind, body);

  std::vector<std::pair<double, SacMember>> parts;
  for (std::string_view part : split(body, '|')) {
    part = trim(part);
    if (part.empty() || part.front() != '(') {
      throw ValidationError("mix: component must start with '(weight)': '" +
                            std::string(part) + "'");
    }
    const auto close = part.find(')');
    if (close == std::string_view::npos) {
      throw ValidationError("mix: unterminated weight in '" + std::string(part) + "'");
    }
    const double w = parse_real(part.substr(1, close - 1), "mix weight");
    const auto [inner_kind, inner_body] = split_kind(part.substr(close + 1));
    if (inner_kind == "mix") throw ValidationError("mix: nested mixtures are not supported");
    parts.emplace_back(w, parse_simple_member(inner_kind, inner_body));
  }
  return SacMember::mixture(std::move(parts));
}

Measure parse_measure(std::string_view text) {
  const auto [kind, body] = split_kind(text);
  if (kind == "twopoint") {
    return Measure::two_point(field(parse_fields(body, kind, {"v"}), "v"));
  }
  if (kind == "uniform") {
    return Measure::uniform(field(parse_fields(body, kind, {"b"}), "b"));
  }
  if (kind == "gauss") {
    return Measure::gaussian(field(parse_fields(body, kind, {"var"}), "var"));
  }
  return Measure(parse_member(text));
}

WeightScheme parse_weights(std::string_view text) {
  const auto [kind, body] = split_kind(text);
  if (kind == "constant") {
    if (!trim(body).empty()) throw ValidationError("constant: takes no fields");
    return WeightScheme::constant();
  }
  if (kind == "polynomial") {
    return WeightScheme::polynomial(field(parse_fields(body, kind, {"gamma"}), "gamma"));
  }
  if (kind == "geometric") {
    return WeightScheme::geometric(field(parse_fields(body, kind, {"r"}), "r"));
  }
  if (kind == "explicit") {
    std::vector<double> values;
    for (std::string_view v : split(body, ',')) values.push_back(parse_real(v, "explicit weight"));
    return WeightScheme::explicit_values(std::move(values));
  }
  throw ValidationError("unknown weight scheme '" + std::string(kind) + "'");
}

std::vector<double> parse_grid(std::string_view text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 3) {
    throw ValidationError("grid: expected start:stop:count, got '" + std::string(text) + "'");
  }
  const double start = parse_real(parts[0], "grid start");
  const double stop = parse_real(parts[1], "grid stop");
  const double count = parse_real(parts[2], "grid count");
  if (count < 2 || count != std::floor(count)) {
    throw ValidationError("grid count must be an integer >= 2");
  }
  std::vector<double> g(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = start + step * static_cast<double>(i);
  g.back() = stop;
  return g;
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (std::string_view item : split(trim(text), ',')) {
    item = trim(item);
    std::size_t v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size() || v == 0) {
      throw ValidationError("n-list: not a positive integer: '" + std::string(item) + "'");
    }
    if (!out.empty() && v <= out.back()) {
      throw ValidationError("n-list: values must be strictly increasing");
    }
    out.push_back(v);
  }
  return out;
}

ModelDocument model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("model: document must be an object");
  std::optional<double> alpha;
  std::optional<double> c;
  nlohmann::ordered_json echo;
  if (doc.contains("alpha")) {
    if (!doc["alpha"].is_number()) throw ValidationError("model: field 'alpha' must be a number");
    alpha = doc["alpha"].get<double>();
    echo["alpha"] = *alpha;
  }
  if (doc.contains("c")) {
    if (!doc["c"].is_number()) throw ValidationError("model: field 'c' must be a number");
    c = doc["c"].get<double>();
    echo["c"] = *c;
  }
  if (alpha.has_value() != c.has_value()) {
    throw ValidationError("model: fields 'alpha' and 'c' must be given together");
  }
  std::optional<StableParams> declared;
  if (alpha) declared = StableParams(*alpha, *c);

  if (!doc.contains("atoms") || !doc["atoms"].is_array() || doc["atoms"].empty()) {
    throw ValidationError("model: field 'atoms' must be a nonempty array");
  }
  std::vector<Atom> atoms;
  echo["atoms"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < doc["atoms"].size(); ++i) {
    const auto& a = doc["atoms"][i];
    const std::string where = "model: atoms[" + std::to_string(i) + "]";
    if (!a.is_object() || !a.contains("prob") || !a["prob"].is_number()) {
      throw ValidationError(where + ": field 'prob' must be a number");
    }
    if (!a.contains("spec") || !a["spec"].is_string()) {
      throw ValidationError(where + ": field 'spec' must be a string");
    }
    Measure m = parse_measure(a["spec"].get<std::string>());
    if (declared && m.sac() && m.sac()->params() != *declared) {
      throw ValidationError(where + ": (alpha, c) differs from the model's declared values");
    }
    nlohmann::ordered_json e;
    e["prob"] = a["prob"].get<double>();
    e["spec"] = a["spec"].get<std::string>();
    echo["atoms"].push_back(e);
    atoms.push_back({a["prob"].get<double>(), std::move(m)});
  }
  return ModelDocument{alpha, c, MeasureModel(std::move(atoms)), std::move(echo)};
}

ModelDocument load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("model: cannot read file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("model: '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace stablab
