#include <doctest.h>

#include <numbers>

#include "hakimkit/maps.hpp"
#include "random_maps.hpp"

using namespace hakimkit;
using hakimkit::testing::Rng;

namespace {

using Q = GaussianRational;
Q frac(long n, long d) { return Q::ratio(n, d); }
ExactSeries poly(std::initializer_list<Monomial<Q>> terms, int trunc) { return ExactSeries(terms, trunc); }

ExactAxesFixingMap gh(std::initializer_list<Monomial<Q>> g, std::initializer_list<Monomial<Q>> h, int trunc) {
  return {ExactSeries(g, trunc), ExactSeries(h, trunc)};
}

ExactTangentMap quadratic_map(int trunc) {
  return {poly({{2, 0, -1}}, trunc), poly({{0, 2, -1}}, trunc)};
}

bool near(const Point& a, const Point& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

}  // namespace

TEST_CASE("tangent map invariants") {
  CHECK_THROWS_AS(ExactTangentMap(poly({{1, 0, 1}}, 3), ExactSeries(3)), MapError);
  CHECK_THROWS_AS(ExactTangentMap(poly({{0, 0, 1}}, 3), ExactSeries(3)), MapError);
  CHECK_THROWS_AS(ExactTangentMap(ExactSeries(3), ExactSeries(4)), MapError);
  CHECK_THROWS_AS(ExactAxesFixingMap(ExactSeries(3), ExactSeries(4)), MapError);
  CHECK(gh({{1, 0, 1}}, {{0, 2, 1}}, 4).series_order() == 1);
  CHECK(gh({}, {}, 4).series_order() == std::nullopt);
}

TEST_CASE("expand") {
  // z e^w and w e^{2z} to degree 3.
  auto f = expand(gh({{0, 0, 1}}, {{0, 0, 2}}, 3));
  CHECK(f.p() == poly({{1, 1, 1}, {1, 2, frac(1, 2)}}, 3));
  CHECK(f.q() == poly({{1, 1, 2}, {2, 1, 2}}, 3));

  CHECK(expand(gh({}, {}, 5)).is_identity());

  // z e^{zw}, w e^{-zw}: z^3 w^2 / 2 has degree 5 > 4.
  auto f2 = expand(gh({{1, 0, 1}}, {{0, 1, -1}}, 4));
  CHECK(f2.p() == poly({{2, 1, 1}}, 4));
  CHECK(f2.q() == poly({{1, 2, -1}}, 4));
}

TEST_CASE("contract") {
  const int n = 7;
  auto g = contract(ExactTangentMap(poly({{1, 1, 1}}, n), ExactSeries(n)));
  // log(1 + w) / w = sum (-1)^j w^j / (j + 1), known to degree n - 2.
  ExactSeries expected(n - 2);
  for (int j = 0; j <= n - 2; ++j) expected.accumulate(0, j, frac(j % 2 == 0 ? 1 : -1, j + 1));
  CHECK(g.trunc() == n - 2);
  CHECK(g.g() == expected);
  CHECK(g.h().is_zero());

  auto id = contract(ExactTangentMap::identity(n));
  CHECK(id.g().is_zero());
  CHECK(id.h().is_zero());

  CHECK_THROWS_AS(contract(quadratic_map(n)), MapError);
  CHECK_THROWS_AS(contract(ExactTangentMap::identity(1)), MapError);
}

TEST_CASE("order and leading pair") {
  auto f = expand(gh({{0, 0, 1}}, {{0, 0, 2}}, 5));
  CHECK(order(f) == 2);
  auto lp = leading_pair(f);
  CHECK(lp.degree == 2);
  CHECK(lp.P == poly({{1, 1, 1}}, 5));
  CHECK(lp.Q == poly({{1, 1, 2}}, 5));

  auto sq = leading_pair(quadratic_map(4));
  CHECK(sq.degree == 2);
  CHECK(sq.P == poly({{2, 0, -1}}, 4));
  CHECK(sq.Q == poly({{0, 2, -1}}, 4));

  auto cubic = leading_pair(expand(gh({{1, 0, 1}}, {{1, 0, 1}, {0, 1, -1}}, 6)));
  CHECK(cubic.degree == 3);
  CHECK(cubic.P == poly({{2, 1, 1}}, 6));
  CHECK(cubic.Q == poly({{2, 1, 1}, {1, 2, -1}}, 6));

  CHECK(order(ExactTangentMap(poly({{3, 0, 1}}, 4), ExactSeries(4))) == 3);
  CHECK_THROWS_AS(order(ExactTangentMap::identity(4)), MapError);
  CHECK_THROWS_AS(leading_pair(ExactTangentMap::identity(4)), MapError);
}

TEST_CASE("jacobian_det") {
  CHECK(jacobian_det(ExactTangentMap::identity(5)) == ExactSeries::constant(1, 4));
  CHECK(jacobian_det(expand(gh({{1, 0, 1}}, {{0, 1, -1}}, 9))) == ExactSeries::constant(1, 8));
  CHECK(jacobian_det(ExactTangentMap(poly({{2, 0, 1}}, 4), ExactSeries(4))) == poly({{0, 0, 1}, {1, 0, 2}}, 3));
}

TEST_CASE("eval_map") {
  CHECK(eval_map(ExactTangentMap::identity(3), Complex(3), Complex(0, 4)) == Point(Complex(3), Complex(0, 4)));
  CHECK(near(eval_map(quadratic_map(3), Complex(0.5), Complex(0)), Point(0.25, 0), 1e-15));
  const Complex w0(0.3, -0.7);
  CHECK(eval_map(expand(gh({{0, 0, 1}}, {{0, 0, 2}}, 6)), Complex(0), w0) == Point(Complex(0), w0));
}

TEST_CASE("classify_fixed_point") {
  auto origin = classify_fixed_point(quadratic_map(4), Point::Zero());
  CHECK(origin.kind == FixedPointKind::tangent_to_identity);
  CHECK(std::abs(origin.eigenvalues(0) - 1.0) < 1e-15);
  CHECK(std::abs(origin.eigenvalues(1) - 1.0) < 1e-15);

  // (z e^w, w e^{2z}) on the z-axis: DF = [[1, z0], [0, e^{2 z0}]].
  auto f = to_float(expand(gh({{0, 0, 1}}, {{0, 0, 2}}, 30)));
  for (Complex z0 : {Complex(-0.3, 0.1), Complex(0.25, -0.4)}) {
    auto c = classify_fixed_point(f, Point(z0, 0));
    CHECK(std::abs(c.eigenvalues(0) - 1.0) < 1e-12);
    CHECK(std::abs(c.eigenvalues(1) - std::exp(2.0 * z0)) < 1e-12);
    CHECK(c.kind == (std::abs(std::exp(2.0 * z0)) < 1 ? FixedPointKind::semi_attracting : FixedPointKind::semi_repelling));
  }

  CHECK_THROWS_AS(classify_fixed_point(quadratic_map(4), Point(0.5, 0)), MapError);

  // z - 3/2 z^2 (z - 1) has derivative -1/2 at its fixed point z = 1.
  FloatTangentMap cubic(FloatSeries({{2, 0, 1.5}, {3, 0, -1.5}}, 3), FloatSeries({{0, 2, 1.5}, {0, 3, -1.5}}, 3));
  auto a = classify_fixed_point(cubic, Point(1, 1));
  CHECK(a.kind == FixedPointKind::attracting);
  CHECK(std::abs(a.eigenvalues(0) + 0.5) < 1e-12);
  CHECK(classify_fixed_point(cubic, Point(1, 0)).kind == FixedPointKind::semi_attracting);
}

TEST_CASE("eigenvalues_2x2 is accurate for widely separated eigenvalues") {
  Matrix2 m;
  m << 1e8, 1, 0, 1e-8;
  auto ev = eigenvalues_2x2(m);
  CHECK(std::abs(ev(0) - 1e8) < 1e-6);
  CHECK(std::abs(ev(1) - 1e-8) < 1e-20);
}

TEST_CASE("recenter") {
  auto id = FloatTangentMap::identity(5);
  CHECK(recenter(id, Point(Complex(2, 1), Complex(-3))) == id);

  auto f = to_float(expand(gh({{0, 0, 1}}, {{1, 1, 3}}, 6)));
  CHECK(recenter(f, Point::Zero()) == f);

  // p = z^2 (z - 1)^2 is tangent to the identity at z = 1 as well; there p = x^2 (1 + x)^2.
  FloatTangentMap quartic(FloatSeries({{2, 0, 1.0}, {3, 0, -2.0}, {4, 0, 1.0}}, 4),
                          FloatSeries({{0, 2, 1.0}, {0, 3, -2.0}, {0, 4, 1.0}}, 4));
  auto g = recenter(quartic, Point(1, 1));
  FloatSeries expected({{2, 0, 1.0}, {3, 0, 2.0}, {4, 0, 1.0}}, 4);
  for (const auto& [e, c] : expected.terms()) CHECK(std::abs(g.p().coeff(e.alpha, e.beta) - c) < 1e-12);
  CHECK(g.p().size() == 3);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Point x(testing::random_complex(rng, 0.1), testing::random_complex(rng, 0.1));
    const Point p0(1, 1);
    CHECK(near(eval_map(g, x), eval_map(quartic, Point(p0 + x)) - p0, 1e-9));
  }

  CHECK_THROWS_AS(recenter(quartic, Point(0.5, 0)), MapError);
  // (0, 1) is fixed but DF has a 3 in the corner: not tangent to the identity there.
  CHECK_THROWS_AS(recenter(quartic, Point(2, 0)), MapError);
}

TEST_CASE("off-axis fixed points of (z e^{zw}, w e^{-zw}) are not tangent to the identity") {
  // The fixed set near zw = 2 pi i is a curve; DF - Id = [[t, z^2], [-w^2, -t]] with t = zw.
  auto f = to_float(expand(gh({{1, 0, 1}}, {{0, 1, -1}}, 81)));
  const Complex z0(1.5, 0.5);
  const Complex t = Complex(0, 2 * std::numbers::pi);
  const Point p0 = locate_fixed_point(f, Point(z0, t / z0));
  CHECK((eval_map(f, p0) - p0).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(p0(0) * p0(1) - t) < 1e-8);
  auto c = classify_fixed_point(f, p0);
  CHECK(std::abs(c.determinant - 1.0) < 1e-7);
  CHECK(c.kind != FixedPointKind::attracting);
  CHECK_THROWS_AS(recenter(f, p0), MapError);
}

TEST_CASE("roundtrip, axes, and order properties on random exact maps") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = trial % 4;
    const int n = k + 2 + trial % 3;
    auto g = testing::random_series(rng, n, k);
    auto h = testing::random_series(rng, n, k);
    g.accumulate(k, 0, testing::random_nonzero_gaussian(rng));  // pin the lowest degree
    ExactAxesFixingMap m(g, h);
    auto f = expand(m);

    auto back = contract(f);
    CHECK(back == ExactAxesFixingMap(truncate(g, n - 2), truncate(h, n - 2)));

    const Q z0 = testing::random_gaussian(rng), w0 = testing::random_gaussian(rng);
    CHECK(eval_exact(f.p(), z0, Q(0)).is_zero());
    CHECK(eval_exact(f.q(), z0, Q(0)).is_zero());
    CHECK(eval_exact(f.p(), Q(0), w0).is_zero());
    CHECK(eval_exact(f.q(), Q(0), w0).is_zero());

    CHECK(order(f) == k + 2);
  }
}
