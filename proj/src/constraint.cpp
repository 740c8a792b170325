#include "hakimkit/constraint.hpp"

#include <cmath>

#include "hakimkit/error.hpp"

namespace hakimkit {

ExactSeries complete_h(const ExactSeries& g, const std::map<int, GaussianRational>& free_axis_coeffs, int trunc) {
  if (trunc < 0) throw MapError("negative truncation order");
  if (g.trunc() < trunc)
    throw MapError("g is known only through degree " + std::to_string(g.trunc()) + ", below the requested truncation");
  const auto gt = truncate(g, trunc);
  ExactSeries h(trunc);
  for (const auto& [n, c] : free_axis_coeffs) {
    if (n < 0 || n > trunc) throw MapError("free axis coefficient of degree " + std::to_string(n) + " out of range");
    h.accumulate(n, 0, c);
  }
  // Degree n of the residual involves the degree n+1 coefficients of h only through h_w.
  for (int n = 0; n < trunc; ++n) {
    const ExactAxesFixingMap partial(truncate(gt, n + 1), truncate(h, n + 1));
    const auto residual = pde_residual(partial).homogeneous_part(n);
    for (const auto& [e, c] : residual.terms())
      h.accumulate(e.alpha, e.beta + 1, -c / GaussianRational(e.beta + 1));
  }
  return h;
}

std::map<int, GaussianRational> axis_coefficients(const ExactSeries& h) {
  std::map<int, GaussianRational> out;
  for (const auto& [e, c] : h.terms())
    if (e.beta == 0) out[e.alpha] = c;
  return out;
}

Prop2Verdict verify_prop2(const ExactAxesFixingMap& m, const Prop2Options& options) {
  Prop2Verdict v;
  v.k = m.series_order();
  if (!v.k) {
    v.reason = "g = h = 0, so F is the identity";
    return v;
  }
  const int k = *v.k;
  const auto relation = relation_check(m);
  v.applicable = relation.clean();
  v.reason = v.applicable ? "relation holds on " + relation.window_note
                          : "relation fails at " + std::to_string(relation.violations.size()) + " index pair(s)";

  auto c = [&](int a, int b) { return m.g().coeff(a, b); };
  auto d = [&](int a, int b) { return m.h().coeff(a, b); };
  const GaussianRational k1(k + 1);
  for (int p = 0; p <= k; ++p) {
    GaussianRational lhs = 0;
    if (p < k) lhs = GaussianRational(p + 1) * (d(k - p - 1, p + 1) - c(k - p, p));
    if (p == k) lhs -= k1 * c(0, k);
    const GaussianRational rhs = -(k1 * c(k - p, p));
    if (lhs != rhs) v.identity_mismatches.push_back({p, lhs, rhs});
  }
  v.exact_identity = v.identity_mismatches.empty();

  if (m.trunc() < k + 2) {
    v.numeric_note = "truncation " + std::to_string(m.trunc()) + " < k+2 leaves the leading part of F undetermined";
    return v;
  }
  std::vector<CharacteristicDirection> dirs;
  try {
    dirs = directions(expand(m), options.directions);
  } catch (const RootError& e) {
    v.numeric_note = e.what();
    return v;
  }
  v.numeric_available = true;
  v.numeric_pass = true;
  const double target = -(k + 1.0);
  for (const auto& dir : dirs) {
    if (!dir.is_non_degenerate()) continue;
    IndexCheck check{dir, *dir.index, target, std::abs(*dir.index - target) <= options.index_tolerance};
    v.numeric_pass = v.numeric_pass && check.pass;
    v.indices.push_back(std::move(check));
  }
  if (v.indices.empty()) v.numeric_note = "no non-degenerate direction";
  return v;
}

FixedPointReport no_attracting_fixed_points_check(const ExactAxesFixingMap& m, const std::vector<Point>& points,
                                                  const FixedPointCheckOptions& options) {
  if (!pde_residual(m).is_zero())
    throw MapError("g, h do not satisfy the volume-form PDE through the truncation order");
  const auto f = to_float(expand(m));
  FixedPointReport report;
  for (const Point& p : points) {
    FixedPointCheck check;
    check.point = p;
    check.classification = classify_fixed_point(f, p, options.fixed);
    check.on_axis = std::min(std::abs(p(0)), std::abs(p(1))) <= options.axis_tolerance;
    // On an axis det DF = exp(z h) or exp(w g) is generally not 1; an eigenvalue 1 is what survives.
    check.defect = check.on_axis ? std::abs(check.classification.eigenvalues(0) - 1.0)
                                 : std::abs(check.classification.determinant - 1.0);
    check.pass = check.defect <= options.tolerance && check.classification.kind != FixedPointKind::attracting;
    report.points.push_back(std::move(check));
  }
  return report;
}

}  // namespace hakimkit
