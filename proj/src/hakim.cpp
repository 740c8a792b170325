#include "hakimkit/hakim.hpp"

#include "hakimkit/format.hpp"

namespace hakimkit {

std::string to_string(DirectionKind kind) {
  return kind == DirectionKind::degenerate ? "degenerate" : "non-degenerate";
}

std::string direction_label(const CharacteristicDirection& d) {
  if (d.chart == Chart::infinity) return "(0,1)";
  const std::string slope = d.exact ? d.exact->slope.to_string() : format_complex(d.slope, 10);
  return "(1," + slope + ")";
}

namespace {

using FloatPair = HomogeneousPair<Complex>;

CharacteristicDirection float_direction(const FloatPair& pair, const Root& root, double zero_threshold) {
  CharacteristicDirection d;
  d.chart = Chart::finite;
  d.slope = root.value;
  d.multiplicity = root.multiplicity;
  d.lambda = eval_homogeneous(pair.P, root.value);
  d.kind = std::abs(d.lambda) <= zero_threshold ? DirectionKind::degenerate : DirectionKind::non_degenerate;
  if (d.is_non_degenerate()) d.index = index_at(pair, root.value);
  return d;
}

}  // namespace

template <CoefficientField S>
std::vector<CharacteristicDirection> directions(const HomogeneousPair<S>& pair, const DirectionOptions& options) {
  const auto r = char_polynomial(pair);
  if (r.is_zero()) throw RootError("r vanishes identically: every direction is characteristic");
  const int k = pair.degree;
  const double scale = std::max(max_magnitude(pair.P), max_magnitude(pair.Q));
  const double threshold = options.relative_zero * scale;
  const FloatPair fpair(k, to_float(pair.P), to_float(pair.Q));

  auto lambda_vanishes = [&](const S& lambda) {
    if constexpr (is_exact_v<S>) {
      return is_zero(lambda);
    } else {
      return std::abs(lambda) <= threshold;
    }
  };

  std::vector<CharacteristicDirection> out;
  if constexpr (is_exact_v<S>) {
    const auto split = exact_rational_roots(std::span<const S>(r.coeffs), options.roots);
    for (const auto& root : split.rational) {
      CharacteristicDirection d;
      d.chart = Chart::finite;
      d.multiplicity = root.multiplicity;
      ExactDirectionData exact{root.value, eval_homogeneous(pair.P, root.value), std::nullopt};
      d.kind = lambda_vanishes(exact.lambda) ? DirectionKind::degenerate : DirectionKind::non_degenerate;
      if (d.is_non_degenerate()) exact.index = index_at(pair, root.value);
      d.slope = to_complex(exact.slope);
      d.lambda = to_complex(exact.lambda);
      if (exact.index) d.index = to_complex(*exact.index);
      d.exact = std::move(exact);
      out.push_back(std::move(d));
    }
    if (split.remainder.size() > 1) {
      for (const Root& root : find_roots(std::span<const S>(split.remainder), options.roots)) out.push_back(float_direction(fpair, root, threshold));
    }
  } else {
    for (const Root& root : roots(r, options.roots)) out.push_back(float_direction(fpair, root, threshold));
  }

  // v = (0, 1) is characteristic iff P(0, 1) = 0, with lambda = Q(0, 1).
  const S p_at_infinity = pair.P.coeff(0, k);
  if (lambda_vanishes(p_at_infinity)) {
    CharacteristicDirection d;
    d.chart = Chart::infinity;
    d.multiplicity = k + 1 - r.degree();
    const S lambda = pair.Q.coeff(0, k);
    d.lambda = to_complex(lambda);
    d.kind = lambda_vanishes(lambda) ? DirectionKind::degenerate : DirectionKind::non_degenerate;
    if constexpr (is_exact_v<S>) {
      ExactDirectionData exact{S(0), lambda, std::nullopt};
      if (d.is_non_degenerate()) exact.index = index_at(swap_chart(pair), S(0));
      if (exact.index) d.index = to_complex(*exact.index);
      d.exact = std::move(exact);
    } else {
      if (d.is_non_degenerate()) d.index = index_at(swap_chart(fpair), Complex(0));
    }
    out.push_back(std::move(d));
  }
  return out;
}

template std::vector<CharacteristicDirection> directions(const HomogeneousPair<GaussianRational>&,
                                                         const DirectionOptions&);
template std::vector<CharacteristicDirection> directions(const HomogeneousPair<Complex>&, const DirectionOptions&);

}  // namespace hakimkit
