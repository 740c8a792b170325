#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hakimkit/maps.hpp"
#include "hakimkit/roots.hpp"

namespace hakimkit {

/// r(u) = Q(1, u) - u P(1, u) for a homogeneous pair of degree k; coefficients ascending in u.
template <CoefficientField S>
struct CharPolynomial {
  std::vector<S> coeffs;  // empty for the zero polynomial
  int source_degree = 0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  CharPolynomial derivative() const {
    CharPolynomial d{{}, source_degree};
    for (std::size_t j = 1; j < coeffs.size(); ++j) d.coeffs.push_back(coeffs[j] * S(static_cast<long>(j)));
    return d;
  }
};

template <CoefficientField S>
CharPolynomial<S> char_polynomial(const HomogeneousPair<S>& pair) {
  if (pair.is_zero()) throw MapError("characteristic polynomial of a zero pair");
  const int k = pair.degree;
  CharPolynomial<S> r{std::vector<S>(static_cast<std::size_t>(k) + 2), k};
  for (int j = 0; j <= k + 1; ++j) {
    S c = j <= k ? pair.Q.coeff(k - j, j) : S{};
    if (j >= 1) c -= pair.P.coeff(k - j + 1, j - 1);
    r.coeffs[static_cast<std::size_t>(j)] = c;
  }
  while (!r.coeffs.empty() && is_zero(r.coeffs.back())) r.coeffs.pop_back();
  return r;
}

/// Roots of r with multiplicities (floating), after exact removal of the u = 0 factor.
template <CoefficientField S>
std::vector<Root> roots(const CharPolynomial<S>& poly, const RootOptions& options = {}) {
  return find_roots(std::span<const S>(poly.coeffs), options);
}

/// Exchanges the two components and the two variables: (P~, Q~)(z, w) = (Q(w, z), P(w, z)).
/// Maps the direction (0, 1) to (1, 0) and (1, u) to (u, 1).
template <CoefficientField S>
HomogeneousPair<S> swap_chart(const HomogeneousPair<S>& pair) {
  auto swap_vars = [](const TruncatedSeries<S>& s) {
    TruncatedSeries<S> out(s.trunc());
    for (const auto& [e, c] : s.terms()) out.accumulate(e.beta, e.alpha, c);
    return out;
  };
  return {pair.degree, swap_vars(pair.Q), swap_vars(pair.P)};
}

enum class DirectionKind { degenerate, non_degenerate };
enum class Chart { finite, infinity };

std::string to_string(DirectionKind kind);

/// Exact data of a direction whose slope is a Gaussian rational.
struct ExactDirectionData {
  GaussianRational slope;  // 0 for the infinity chart
  GaussianRational lambda;
  std::optional<GaussianRational> index;
};

/// A characteristic direction v with (P_k(v), Q_k(v)) = lambda v.
///
/// Chart::finite means v = (1, slope); Chart::infinity means v = (0, 1).
/// The index A(v) is present exactly when the direction is non-degenerate.
struct CharacteristicDirection {
  Chart chart = Chart::finite;
  Complex slope{};
  Complex lambda{};
  DirectionKind kind = DirectionKind::degenerate;
  std::optional<Complex> index;
  int multiplicity = 1;
  /// Present when every quantity was computed in exact arithmetic.
  std::optional<ExactDirectionData> exact;

  Point vector() const { return chart == Chart::finite ? Point(1.0, slope) : Point(0.0, 1.0); }
  bool is_non_degenerate() const { return kind == DirectionKind::non_degenerate; }
};

/// "(1,2)", "(0,1)", "(1,0.5+0.25i)".
std::string direction_label(const CharacteristicDirection& d);

/// Zero test for lambda in the floating domain: |lambda| <= relative * max coefficient of the pair.
struct DirectionOptions {
  double relative_zero = 1e-10;
  RootOptions roots{};
};

/// P(1, u0) for a homogeneous series P, in the series' own domain.
template <CoefficientField S>
S eval_homogeneous(const TruncatedSeries<S>& p, const S& u0) {
  S total{};
  for (const auto& [e, c] : p.terms()) {
    S term = c;
    for (int j = 0; j < e.beta; ++j) term *= u0;
    total += term;
  }
  return total;
}

/// A(v) = r'(u0) / P(1, u0) in the finite chart of `pair`.
template <CoefficientField S>
S index_at(const HomogeneousPair<S>& pair, const S& u0) {
  const auto r = char_polynomial(pair);
  const auto dr = r.derivative();
  S numerator{};
  for (auto it = dr.coeffs.rbegin(); it != dr.coeffs.rend(); ++it) numerator = numerator * u0 + *it;
  const S lambda = eval_homogeneous(pair.P, u0);
  if (is_zero(lambda)) throw MapError("index requested for a degenerate direction");
  return numerator / lambda;
}

/// Characteristic directions of the leading pair: the roots of r in the chart
/// v = (1, u), plus v = (0, 1) when P(0, 1) = 0 (its index taken in the swapped chart).
template <CoefficientField S>
std::vector<CharacteristicDirection> directions(const HomogeneousPair<S>& pair, const DirectionOptions& options = {});

template <CoefficientField S>
std::vector<CharacteristicDirection> directions(const TangentMap<S>& f, const DirectionOptions& options = {}) {
  return directions(leading_pair(f), options);
}

/// Hakim index A(v) of a non-degenerate direction of F. Throws MapError for degenerate ones.
template <CoefficientField S>
Complex index(const TangentMap<S>& f, const CharacteristicDirection& dir) {
  if (!dir.is_non_degenerate()) throw MapError("index is defined only for non-degenerate directions");
  const auto pair = leading_pair(f);
  if constexpr (is_exact_v<S>) {
    if (dir.exact) {
      return dir.chart == Chart::finite ? to_complex(index_at(pair, dir.exact->slope))
                                        : to_complex(index_at(swap_chart(pair), S(0)));
    }
  }
  const auto fp = HomogeneousPair<Complex>(pair.degree, to_float(pair.P), to_float(pair.Q));
  return dir.chart == Chart::finite ? index_at(fp, dir.slope) : index_at(swap_chart(fp), Complex(0));
}

/// Non-degenerate directions with Re A(v) > 0, where an attracting basin tangent to v exists.
template <CoefficientField S>
std::vector<CharacteristicDirection> basin_candidates(const TangentMap<S>& f, const DirectionOptions& options = {}) {
  std::vector<CharacteristicDirection> out;
  for (auto& d : directions(f, options))
    if (d.is_non_degenerate() && d.index->real() > 0) out.push_back(d);
  return out;
}

extern template std::vector<CharacteristicDirection> directions(const HomogeneousPair<GaussianRational>&,
                                                                const DirectionOptions&);
extern template std::vector<CharacteristicDirection> directions(const HomogeneousPair<Complex>&,
                                                                const DirectionOptions&);

}  // namespace hakimkit
