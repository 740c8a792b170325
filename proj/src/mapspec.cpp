#include "hakimkit/mapspec.hpp"

#include <set>

#include <json.hpp>

#include "hakimkit/error.hpp"

namespace hakimkit {

using nlohmann::json;

std::string to_string(MapForm form) { return form == MapForm::gh ? "gh" : "pq"; }
std::string to_string(Domain domain) { return domain == Domain::exact ? "exact" : "float"; }

namespace {

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

int exponent(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SpecError(where, "exponent must be an integer");
  const auto e = v.get<long long>();
  if (e < 0) throw SpecError(where, "negative exponent " + std::to_string(e));
  if (e > 100000) throw SpecError(where, "exponent too large");
  return static_cast<int>(e);
}

mpq_class exact_part(const json& v, const std::string& where) {
  if (!v.is_string()) throw SpecError(where, "exact-domain coefficients must be strings like \"-3/7\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw SpecError(where, e.what());
  }
}

double float_part(const json& v, const std::string& where) {
  if (!v.is_number()) throw SpecError(where, "float-domain coefficients must be numbers");
  return v.get<double>();
}

template <CoefficientField S>
TruncatedSeries<S> parse_series(const json& doc, const std::string& name, int trunc) {
  if (!doc.contains(name)) throw SpecError(name, "missing");
  const json& list = doc.at(name);
  if (!list.is_array()) throw SpecError(name, "must be a list of [alpha, beta, re, im]");
  TruncatedSeries<S> s(trunc);
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = name + "[" + std::to_string(i) + "]";
    const json& q = list[i];
    if (!q.is_array() || q.size() != 4) throw SpecError(where, "expected [alpha, beta, re, im]");
    const int a = exponent(q[0], where + ".alpha");
    const int b = exponent(q[1], where + ".beta");
    if (a + b > trunc)
      throw SpecError(where, "degree " + std::to_string(a + b) + " exceeds truncation " + std::to_string(trunc));
    if (!seen.insert({a, b}).second) throw SpecError(where, "duplicate exponent");
    if constexpr (is_exact_v<S>) {
      auto re = exact_part(q[2], where + ".re");
      s.accumulate(a, b, S(std::move(re), exact_part(q[3], where + ".im")));
    } else {
      const double re = float_part(q[2], where + ".re");
      s.accumulate(a, b, S(re, float_part(q[3], where + ".im")));
    }
  }
  return s;
}

template <CoefficientField S>
json series_json(const TruncatedSeries<S>& s) {
  json list = json::array();
  for (const auto& [e, c] : s.terms()) {
    if constexpr (is_exact_v<S>)
      list.push_back({e.alpha, e.beta, rational_to_string(c.real()), rational_to_string(c.imag())});
    else
      list.push_back({e.alpha, e.beta, c.real(), c.imag()});
  }
  return list;
}

template <CoefficientField S>
MapSpec spec_of(MapForm form, const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  MapSpec spec;
  spec.form = form;
  spec.truncation = a.trunc();
  spec.series = std::pair{a, b};
  return spec;
}

}  // namespace

MapSpec parse_mapspec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(col), "JSON syntax error");
  }
  if (!doc.is_object()) throw SpecError("", "map spec must be a JSON object");

  MapSpec spec;
  if (!doc.contains("form") || !doc["form"].is_string()) throw SpecError("form", "must be \"gh\" or \"pq\"");
  const auto form = doc["form"].get<std::string>();
  if (form == "gh")
    spec.form = MapForm::gh;
  else if (form == "pq")
    spec.form = MapForm::pq;
  else
    throw SpecError("form", "must be \"gh\" or \"pq\", got \"" + form + "\"");

  if (!doc.contains("truncation") || !doc["truncation"].is_number_integer())
    throw SpecError("truncation", "must be a positive integer");
  const auto trunc = doc["truncation"].get<long long>();
  if (trunc < 1 || trunc > 1000) throw SpecError("truncation", "must be in [1, 1000]");
  spec.truncation = static_cast<int>(trunc);

  if (!doc.contains("domain") || !doc["domain"].is_string()) throw SpecError("domain", "must be \"exact\" or \"float\"");
  const auto domain = doc["domain"].get<std::string>();
  if (domain != "exact" && domain != "float")
    throw SpecError("domain", "must be \"exact\" or \"float\", got \"" + domain + "\"");

  const std::string first = spec.form == MapForm::gh ? "g" : "p";
  const std::string second = spec.form == MapForm::gh ? "h" : "q";
  for (const auto& [key, value] : doc.items())
    if (key != "form" && key != "truncation" && key != "domain" && key != first && key != second)
      throw SpecError(key, "unexpected field for form " + form);

  try {
    if (domain == "exact") {
      auto a = parse_series<GaussianRational>(doc, first, spec.truncation);
      auto b = parse_series<GaussianRational>(doc, second, spec.truncation);
      if (spec.form == MapForm::pq) ExactTangentMap(a, b);
      spec.series = std::pair{std::move(a), std::move(b)};
    } else {
      auto a = parse_series<Complex>(doc, first, spec.truncation);
      auto b = parse_series<Complex>(doc, second, spec.truncation);
      if (spec.form == MapForm::pq) FloatTangentMap(a, b);
      spec.series = std::pair{std::move(a), std::move(b)};
    }
  } catch (const MapError& e) {
    throw SpecError(first + "/" + second, e.what());
  }
  return spec;
}

std::string serialize_mapspec(const MapSpec& spec) {
  json doc = json::object();
  doc["form"] = to_string(spec.form);
  doc["truncation"] = spec.truncation;
  doc["domain"] = to_string(spec.domain());
  const std::string first = spec.form == MapForm::gh ? "g" : "p";
  const std::string second = spec.form == MapForm::gh ? "h" : "q";
  std::visit(
      [&](const auto& pair) {
        doc[first] = series_json(pair.first);
        doc[second] = series_json(pair.second);
      },
      spec.series);
  return doc.dump(2) + "\n";
}

MapSpec make_mapspec(const ExactAxesFixingMap& m) { return spec_of(MapForm::gh, m.g(), m.h()); }
MapSpec make_mapspec(const FloatAxesFixingMap& m) { return spec_of(MapForm::gh, m.g(), m.h()); }
MapSpec make_mapspec(const ExactTangentMap& f) { return spec_of(MapForm::pq, f.p(), f.q()); }
MapSpec make_mapspec(const FloatTangentMap& f) { return spec_of(MapForm::pq, f.p(), f.q()); }

}  // namespace hakimkit
