#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hakimkit/hakim.hpp"
#include "hakimkit/maps.hpp"

namespace hakimkit {

/// g_z + h_w - g h - z g h_z - w h g_w - z w g_w h_z + z w g_z h_w, truncated at trunc - 1
/// (at trunc 0 the result keeps truncation 0).
template <CoefficientField S>
TruncatedSeries<S> pde_residual(const AxesFixingMap<S>& m) {
  const int n = std::max(m.trunc() - 1, 0);
  const auto g = truncate(m.g(), n);
  const auto h = truncate(m.h(), n);
  const auto gz = diff(m.g(), Var::z), gw = diff(m.g(), Var::w);
  const auto hz = diff(m.h(), Var::z), hw = diff(m.h(), Var::w);
  auto shifted = [n](const TruncatedSeries<S>& s, int a, int b) { return truncate(mul_monomial(s, a, b), n); };
  return gz + hw - g * h - shifted(g * hz, 1, 0) - shifted(h * gw, 0, 1) - shifted(gw * hz, 1, 1) +
         shifted(gz * hw, 1, 1);
}

/// jacobian_det(expand(m)) - exp(w g + z h), both truncated at trunc - 1.
/// Equals exp(w g + z h) * z w * pde_residual(m) there, so it vanishes iff the
/// residual vanishes through degree trunc - 3.
template <CoefficientField S>
TruncatedSeries<S> jacobian_defect(const AxesFixingMap<S>& m) {
  const int n = std::max(m.trunc() - 1, 0);
  const auto exponent = truncate(mul_monomial(m.g(), 0, 1) + mul_monomial(m.h(), 1, 0), n);
  return jacobian_det(expand(m)) - exp_series(exponent);
}

template <CoefficientField S>
struct RelationViolation {
  int alpha = 0;
  int beta = 0;
  S lhs{};  // d_{alpha-1, beta}
  S rhs{};  // -(alpha/beta) c_{alpha, beta-1}
};

template <CoefficientField S>
struct ConstraintReport {
  /// Exact domain: true iff the residual series is identically zero. Float: max |coefficient| <= tolerance.
  bool residual_zero = false;
  double residual_norm = 0.0;
  std::vector<RelationViolation<S>> violations;
  /// k, lowest total degree of (g, h); nullopt when both vanish.
  std::optional<int> series_order;
  /// Coefficient total degrees checked: [window_low, checked_degree]. Empty when checked_degree < window_low.
  int window_low = 0;
  int checked_degree = -1;
  std::string window_note;

  bool clean() const { return violations.empty(); }
};

struct ConstraintOptions {
  /// Float domain only: coefficients below this are zero.
  double tolerance = 1e-10;
};

/// Checks d_{a-1,b} = -(a/b) c_{a,b-1} (c: coefficients of g, d: of h) for a, b >= 1 with
/// coefficient degree a + b - 1 in [k, 2k], capped at the truncation order.
template <CoefficientField S>
ConstraintReport<S> relation_check(const AxesFixingMap<S>& m, const ConstraintOptions& options = {}) {
  ConstraintReport<S> report;
  const auto residual = pde_residual(m);
  report.residual_norm = max_magnitude(residual);
  report.residual_zero = is_exact_v<S> ? residual.is_zero() : report.residual_norm <= options.tolerance;
  report.series_order = m.series_order();
  if (!report.series_order) {
    report.window_note = "g = h = 0: no relation to check";
    return report;
  }
  const int k = *report.series_order;
  report.window_low = k;
  report.checked_degree = std::min(2 * k, m.trunc());
  report.window_note = "coefficient degree a+b-1 in [" + std::to_string(k) + ", " + std::to_string(2 * k) + "]";
  if (report.checked_degree < 2 * k) report.window_note += ", capped at truncation " + std::to_string(m.trunc());
  for (int degree = k; degree <= report.checked_degree; ++degree) {
    for (int beta = 1; beta <= degree; ++beta) {
      const int alpha = degree + 1 - beta;
      const S lhs = m.h().coeff(alpha - 1, beta);
      const S rhs = -(ScalarTraits<S>::ratio(alpha, beta) * m.g().coeff(alpha, beta - 1));
      const bool equal = is_exact_v<S> ? lhs == rhs : ScalarTraits<S>::magnitude(lhs - rhs) <= options.tolerance;
      if (!equal) report.violations.push_back({alpha, beta, lhs, rhs});
    }
  }
  return report;
}

/// Solves pde_residual(g, h) = 0 through degree trunc - 1 for h, degree by degree.
/// The residual of degree n fixes d_{a,b+1} through its h_w term; the axis
/// coefficients d_{n,0} are free and read from `free_axis_coeffs` (missing = 0).
ExactSeries complete_h(const ExactSeries& g, const std::map<int, GaussianRational>& free_axis_coeffs, int trunc);

/// The axis coefficients {n: d_{n,0}} of h, the free data of complete_h.
std::map<int, GaussianRational> axis_coefficients(const ExactSeries& h);

struct IdentityMismatch {
  int power = 0;
  GaussianRational lhs;
  GaussianRational rhs;
};

struct IndexCheck {
  CharacteristicDirection direction;
  Complex index{};
  double target = 0.0;
  bool pass = false;
};

struct Prop2Options {
  double index_tolerance = 1e-8;
  DirectionOptions directions{};
};

struct Prop2Verdict {
  std::optional<int> k;
  /// False when the relation fails or g = h = 0; the checks below are then informational only.
  bool applicable = false;
  std::string reason;

  /// Coefficientwise comparison, in u, of
  ///   sum_{b=1..k} b (d_{k-b,b} - c_{k-b+1,b-1}) u^{b-1} - (k+1) c_{0,k} u^k
  /// with -(k+1) sum_{b=0..k} c_{k-b,b} u^b.
  bool exact_identity = false;
  std::vector<IdentityMismatch> identity_mismatches;

  /// |A + (k+1)| for every non-degenerate direction of expand(m).
  bool numeric_available = false;
  std::string numeric_note;
  std::vector<IndexCheck> indices;
  bool numeric_pass = false;

  bool falsified() const { return applicable && (!exact_identity || (numeric_available && !numeric_pass)); }
};

Prop2Verdict verify_prop2(const ExactAxesFixingMap& m, const Prop2Options& options = {});

struct FixedPointCheck {
  Point point;
  bool on_axis = false;
  FixedPointClass classification;
  /// Off-axis points: |det DF - 1|. On-axis: distance of the closer eigenvalue to 1.
  double defect = 0.0;
  bool pass = false;
};

struct FixedPointReport {
  std::vector<FixedPointCheck> points;
  bool all_pass() const {
    for (const auto& p : points)
      if (!p.pass) return false;
    return true;
  }
};

struct FixedPointCheckOptions {
  FixedPointTolerance fixed{};
  double tolerance = 1e-7;
  /// |z| or |w| below this counts as lying on an axis.
  double axis_tolerance = 1e-9;
};

/// For a map satisfying the PDE through trunc - 1: every supplied fixed point is
/// non-attracting; off-axis ones have det DF = 1, on-axis ones have an eigenvalue 1.
/// Throws MapError when the PDE fails or a point is not fixed.
FixedPointReport no_attracting_fixed_points_check(const ExactAxesFixingMap& m, const std::vector<Point>& points,
                                                  const FixedPointCheckOptions& options = {});

}  // namespace hakimkit
