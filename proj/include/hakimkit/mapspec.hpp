#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "hakimkit/maps.hpp"

namespace hakimkit {

enum class MapForm { gh, pq };
enum class Domain { exact, float_ };

std::string to_string(MapForm form);
std::string to_string(Domain domain);

/// A map read from a JSON document:
///   {"form": "gh" | "pq", "truncation": N, "domain": "exact" | "float",
///    "g": [[alpha, beta, re, im], ...], "h": [...]}   (or "p", "q" for form pq)
/// Exact coefficients are strings "p/q" (optional sign); float coefficients are numbers.
struct MapSpec {
  MapForm form = MapForm::gh;
  int truncation = 0;
  /// (g, h) or (p, q), in the spec's domain.
  std::variant<std::pair<ExactSeries, ExactSeries>, std::pair<FloatSeries, FloatSeries>> series;

  Domain domain() const { return series.index() == 0 ? Domain::exact : Domain::float_; }
  bool operator==(const MapSpec&) const = default;
};

/// Throws SpecError naming the offending field (or line and column for JSON syntax errors).
MapSpec parse_mapspec(std::string_view text);
std::string serialize_mapspec(const MapSpec& spec);

MapSpec make_mapspec(const ExactAxesFixingMap& m);
MapSpec make_mapspec(const FloatAxesFixingMap& m);
MapSpec make_mapspec(const ExactTangentMap& f);
MapSpec make_mapspec(const FloatTangentMap& f);

/// The tangent map F of a spec (expanded from (g, h) for form gh).
template <CoefficientField S>
TangentMap<S> tangent_map(const MapSpec& spec) {
  const auto& [a, b] = std::get<std::pair<TruncatedSeries<S>, TruncatedSeries<S>>>(spec.series);
  if (spec.form == MapForm::pq) return TangentMap<S>(a, b);
  return expand(AxesFixingMap<S>(a, b));
}

/// (g, h) of a spec; for form pq, contract(F) (which throws MapError unless F fixes both axes).
template <CoefficientField S>
AxesFixingMap<S> axes_fixing_map(const MapSpec& spec) {
  const auto& [a, b] = std::get<std::pair<TruncatedSeries<S>, TruncatedSeries<S>>>(spec.series);
  if (spec.form == MapForm::gh) return AxesFixingMap<S>(a, b);
  return contract(TangentMap<S>(a, b));
}

}  // namespace hakimkit
