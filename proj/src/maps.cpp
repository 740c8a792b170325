#include "hakimkit/maps.hpp"

#include <cmath>
#include <vector>

namespace hakimkit {

std::string to_string(FixedPointKind kind) {
  switch (kind) {
    case FixedPointKind::attracting:
      return "attracting";
    case FixedPointKind::tangent_to_identity:
      return "tangent-to-identity";
    case FixedPointKind::semi_attracting:
      return "semi-attracting";
    case FixedPointKind::semi_repelling:
      return "semi-repelling";
    case FixedPointKind::other:
      return "other";
  }
  return "other";
}

Eigen::Vector2cd eigenvalues_2x2(const Matrix2& m) {
  const Complex tr = m.trace();
  const Complex det = m.determinant();
  Complex root = std::sqrt(tr * tr - 4.0 * det);
  if (std::abs(tr - root) > std::abs(tr + root)) root = -root;
  const Complex big = (tr + root) / 2.0;
  const Complex small = big == Complex(0) ? Complex(0) : det / big;
  return {big, small};
}

namespace {

void require_fixed(const FloatTangentMap& f, const Point& p0, const FixedPointTolerance& tol) {
  const double residual = (eval_map(f, p0) - p0).cwiseAbs().maxCoeff();
  if (!(residual <= tol.fixed))
    throw MapError("point is not fixed (|F(p0) - p0| = " + std::to_string(residual) + ")");
}

}  // namespace

FixedPointClass classify_fixed_point(const FloatTangentMap& f, const Point& p0, const FixedPointTolerance& tol) {
  require_fixed(f, p0, tol);
  FixedPointClass out;
  out.derivative = jacobian_matrix(f, p0);
  out.determinant = out.derivative.determinant();
  out.eigenvalues = eigenvalues_2x2(out.derivative);
  if (std::abs(out.eigenvalues(1) - 1.0) < std::abs(out.eigenvalues(0) - 1.0))
    std::swap(out.eigenvalues(0), out.eigenvalues(1));

  const double off_identity = (out.derivative - Matrix2::Identity()).cwiseAbs().maxCoeff();
  const double m0 = std::abs(out.eigenvalues(0));
  const double m1 = std::abs(out.eigenvalues(1));
  if (off_identity <= tol.derivative) {
    out.kind = FixedPointKind::tangent_to_identity;
  } else if (std::abs(out.eigenvalues(0) - 1.0) <= tol.derivative) {
    // an eigenvalue equal to 1 up to rounding rules out attracting, even when |lambda| < 1 in floating point
    out.kind = m1 <= 1.0 + tol.derivative ? FixedPointKind::semi_attracting : FixedPointKind::semi_repelling;
  } else if (m0 < 1.0 && m1 < 1.0) {
    out.kind = FixedPointKind::attracting;
  } else {
    out.kind = FixedPointKind::other;
  }
  return out;
}

namespace {

std::vector<std::vector<double>> binomials(int n) {
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1.0;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

// s(z0 + x, w0 + y) as a series in (x, y), including constant and linear terms.
FloatSeries shift(const FloatSeries& s, Complex z0, Complex w0, const std::vector<std::vector<double>>& binom) {
  const int n = s.trunc();
  std::vector<Complex> zp(n + 1, 1.0), wp(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) {
    zp[i] = zp[i - 1] * z0;
    wp[i] = wp[i - 1] * w0;
  }
  FloatSeries out(n);
  for (const auto& [e, c] : s.terms())
    for (int i = 0; i <= e.alpha; ++i)
      for (int j = 0; j <= e.beta; ++j)
        out.accumulate(i, j, c * binom[e.alpha][i] * zp[e.alpha - i] * binom[e.beta][j] * wp[e.beta - j]);
  return out;
}

}  // namespace

FloatTangentMap recenter(const FloatTangentMap& f, const Point& p0, const FixedPointTolerance& tol) {
  require_fixed(f, p0, tol);
  const auto binom = binomials(f.trunc());
  auto p = shift(f.p(), p0(0), p0(1), binom);
  auto q = shift(f.q(), p0(0), p0(1), binom);
  for (const FloatSeries* s : {&p, &q})
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; a + b <= 1; ++b)
        if (std::abs(s->coeff(a, b)) > (a + b == 0 ? tol.fixed : tol.derivative))
          throw MapError(a + b == 0 ? "point is not fixed" : "derivative at the point is not the identity");
  auto drop_low = [](const FloatSeries& s) {
    FloatSeries out(s.trunc());
    for (const auto& [e, c] : s.terms())
      if (e.degree() >= 2) out.accumulate(e.alpha, e.beta, c);
    return out;
  };
  return FloatTangentMap(drop_low(p), drop_low(q));
}

Point locate_fixed_point(const FloatTangentMap& f, const Point& guess, const FixedPointTolerance& tol, int max_iter) {
  Point x = guess;
  double residual = (eval_map(f, x) - x).norm();
  for (int iter = 0; iter < max_iter && residual > 1e-15 * (1.0 + x.norm()); ++iter) {
    const Matrix2 a = jacobian_matrix(f, x) - Matrix2::Identity();
    Eigen::CompleteOrthogonalDecomposition<Matrix2> cod(a);
    cod.setThreshold(1e-10);
    const Point step = cod.solve(eval_map(f, x) - x);
    const Point next = x - step;
    const double next_residual = (eval_map(f, next) - next).norm();
    if (!(next_residual < residual)) break;
    x = next;
    residual = next_residual;
  }
  if (!((eval_map(f, x) - x).cwiseAbs().maxCoeff() <= tol.fixed))
    throw MapError("fixed-point iteration did not converge (residual " + std::to_string(residual) + ")");
  return x;
}

}  // namespace hakimkit
