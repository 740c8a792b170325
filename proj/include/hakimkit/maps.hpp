#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "hakimkit/series.hpp"

namespace hakimkit {

using Point = Eigen::Vector2cd;
using Matrix2 = Eigen::Matrix2cd;

/// Germ F(z, w) = (z + p(z, w), w + q(z, w)) tangent to the identity:
/// p and q carry no terms of total degree below 2.
template <CoefficientField S>
class TangentMap {
 public:
  using Scalar = S;
  using Series = TruncatedSeries<S>;

  TangentMap(Series p, Series q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.trunc() != q_.trunc()) throw MapError("components have different truncation orders");
    for (const Series* s : {&p_, &q_})
      if (auto low = s->lowest_degree(); low && *low < 2)
        throw MapError("map is not tangent to the identity (term of degree < 2)");
  }

  static TangentMap identity(int trunc) { return TangentMap(Series(trunc), Series(trunc)); }

  const Series& p() const { return p_; }
  const Series& q() const { return q_; }
  int trunc() const { return p_.trunc(); }
  bool is_identity() const { return p_.is_zero() && q_.is_zero(); }

  friend bool operator==(const TangentMap&, const TangentMap&) = default;

 private:
  Series p_;
  Series q_;
};

/// Axes-fixing normal form F(z, w) = (z exp(w g), w exp(z h)).
template <CoefficientField S>
class AxesFixingMap {
 public:
  using Scalar = S;
  using Series = TruncatedSeries<S>;

  AxesFixingMap(Series g, Series h) : g_(std::move(g)), h_(std::move(h)) {
    if (g_.trunc() != h_.trunc()) throw MapError("g and h have different truncation orders");
  }

  const Series& g() const { return g_; }
  const Series& h() const { return h_; }
  int trunc() const { return g_.trunc(); }

  /// k: the lowest total degree present in g or h; nullopt when both vanish.
  std::optional<int> series_order() const {
    auto a = g_.lowest_degree();
    auto b = h_.lowest_degree();
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }

  friend bool operator==(const AxesFixingMap&, const AxesFixingMap&) = default;

 private:
  Series g_;
  Series h_;
};

/// Homogeneous pair (P, Q) of a common total degree.
template <CoefficientField S>
struct HomogeneousPair {
  int degree = 0;
  TruncatedSeries<S> P;
  TruncatedSeries<S> Q;

  HomogeneousPair(int d, TruncatedSeries<S> p, TruncatedSeries<S> q) : degree(d), P(std::move(p)), Q(std::move(q)) {
    for (const auto* s : {&P, &Q})
      for (const auto& [e, c] : s->terms())
        if (e.degree() != degree) throw MapError("homogeneous pair has a term of the wrong degree");
  }

  bool is_zero() const { return P.is_zero() && Q.is_zero(); }
};

using ExactTangentMap = TangentMap<GaussianRational>;
using FloatTangentMap = TangentMap<Complex>;
using ExactAxesFixingMap = AxesFixingMap<GaussianRational>;
using FloatAxesFixingMap = AxesFixingMap<Complex>;

/// (z exp(w g), w exp(z h)) expanded and truncated at m.trunc().
template <CoefficientField S>
TangentMap<S> expand(const AxesFixingMap<S>& m) {
  const int n = m.trunc();
  if (n < 2) return TangentMap<S>::identity(n);
  const auto one = TruncatedSeries<S>::constant(S(1), n - 1);
  auto e1 = exp_series(truncate(mul_monomial(m.g(), 0, 1), n - 1));
  auto e2 = exp_series(truncate(mul_monomial(m.h(), 1, 0), n - 1));
  return TangentMap<S>(mul_monomial(e1 - one, 1, 0), mul_monomial(e2 - one, 0, 1));
}

/// Recovers (g, h) from a map fixing both axes pointwise, i.e. with p and q divisible by z*w:
/// g = log(1 + w r) / w with p = z w r, and h = log(1 + z s) / z with q = z w s.
/// Coefficients are determined up to total degree F.trunc() - 2, which becomes the result's truncation.
template <CoefficientField S>
AxesFixingMap<S> contract(const TangentMap<S>& f) {
  if (f.trunc() < 2) throw MapError("truncation order below 2 leaves g and h undetermined");
  auto by_zw = [](const TruncatedSeries<S>& s, const char* name) {
    try {
      return divide_monomial(divide_monomial(s, Var::z), Var::w);
    } catch (const SeriesError&) {
      throw MapError(std::string(name) + " is not divisible by z*w: the map does not fix both axes pointwise");
    }
  };
  auto r = by_zw(f.p(), "p");
  auto s = by_zw(f.q(), "q");
  auto g = divide_monomial(log1p_series(mul_monomial(r, 0, 1)), Var::w);
  auto h = divide_monomial(log1p_series(mul_monomial(s, 1, 0)), Var::z);
  return AxesFixingMap<S>(std::move(g), std::move(h));
}

/// Smallest total degree k >= 2 with (P_k, Q_k) not identically zero.
template <CoefficientField S>
int order(const TangentMap<S>& f) {
  if (f.is_identity()) throw MapError("map is the identity up to its truncation order");
  auto a = f.p().lowest_degree();
  auto b = f.q().lowest_degree();
  if (!a) return *b;
  if (!b) return *a;
  return std::min(*a, *b);
}

template <CoefficientField S>
HomogeneousPair<S> leading_pair(const TangentMap<S>& f) {
  const int k = order(f);
  return {k, f.p().homogeneous_part(k), f.q().homogeneous_part(k)};
}

/// det DF as a series truncated at trunc - 1.
template <CoefficientField S>
TruncatedSeries<S> jacobian_det(const TangentMap<S>& f) {
  const int n = std::max(f.trunc() - 1, 0);
  const auto one = TruncatedSeries<S>::constant(S(1), n);
  auto pz = one + diff(f.p(), Var::z);
  auto pw = diff(f.p(), Var::w);
  auto qz = diff(f.q(), Var::z);
  auto qw = one + diff(f.q(), Var::w);
  return pz * qw - pw * qz;
}

template <CoefficientField S>
Point eval_map(const TangentMap<S>& f, const Point& x) {
  return {x(0) + eval(f.p(), x(0), x(1)), x(1) + eval(f.q(), x(0), x(1))};
}

template <CoefficientField S>
Point eval_map(const TangentMap<S>& f, Complex z, Complex w) {
  return eval_map(f, Point(z, w));
}

template <CoefficientField S>
FloatTangentMap to_float(const TangentMap<S>& f) {
  return FloatTangentMap(to_float(f.p()), to_float(f.q()));
}

template <CoefficientField S>
FloatAxesFixingMap to_float(const AxesFixingMap<S>& m) {
  return FloatAxesFixingMap(to_float(m.g()), to_float(m.h()));
}

/// DF at a point, from the formal partial derivatives.
template <CoefficientField S>
Matrix2 jacobian_matrix(const TangentMap<S>& f, const Point& x) {
  Matrix2 d;
  d(0, 0) = 1.0 + eval(diff(f.p(), Var::z), x(0), x(1));
  d(0, 1) = eval(diff(f.p(), Var::w), x(0), x(1));
  d(1, 0) = eval(diff(f.q(), Var::z), x(0), x(1));
  d(1, 1) = 1.0 + eval(diff(f.q(), Var::w), x(0), x(1));
  return d;
}

/// Absolute tolerances for floating fixed-point work.
struct FixedPointTolerance {
  double fixed = 1e-9;       // |F(p0) - p0|
  double derivative = 1e-9;  // entries of DF(p0) - Id, and |eigenvalue - 1|
};

enum class FixedPointKind { attracting, tangent_to_identity, semi_attracting, semi_repelling, other };

std::string to_string(FixedPointKind kind);

struct FixedPointClass {
  FixedPointKind kind = FixedPointKind::other;
  /// Ordered so that the eigenvalue closest to 1 comes first.
  Eigen::Vector2cd eigenvalues;
  Matrix2 derivative;
  Complex determinant;
};

/// Eigenvalues of a 2x2 matrix by the quadratic formula, choosing the
/// discriminant branch that avoids cancellation.
Eigen::Vector2cd eigenvalues_2x2(const Matrix2& m);

/// Eigenvalues of DF(p0) and a tag: tangent-to-identity (DF = Id), attracting
/// (both moduli < 1), semi-attracting / semi-repelling (one eigenvalue is 1 and
/// the other has modulus <= 1 / > 1), other. Throws MapError when p0 is not fixed.
FixedPointClass classify_fixed_point(const FloatTangentMap& f, const Point& p0, const FixedPointTolerance& tol = {});

template <CoefficientField S>
  requires is_exact_v<S>
FixedPointClass classify_fixed_point(const TangentMap<S>& f, const Point& p0, const FixedPointTolerance& tol = {}) {
  return classify_fixed_point(to_float(f), p0, tol);
}

/// Conjugates by the translation to p0: G(x) = F(p0 + x) - p0, re-expanded
/// about the origin by binomial shift of the stored polynomial. p0 must be a
/// fixed point with DF(p0) = Id (within tolerance); the constant and linear
/// parts of the shift are checked and dropped.
FloatTangentMap recenter(const FloatTangentMap& f, const Point& p0, const FixedPointTolerance& tol = {});

/// Refines `guess` to a fixed point of the polynomial map by Gauss–Newton with
/// minimum-norm steps (the fixed-point set may be a curve, making DF - Id singular).
/// Throws MapError when the residual does not drop below tol.fixed.
Point locate_fixed_point(const FloatTangentMap& f, const Point& guess, const FixedPointTolerance& tol = {},
                         int max_iter = 100);

}  // namespace hakimkit
