#include <doctest.h>

#include "hakimkit/format.hpp"
#include "hakimkit/series.hpp"
#include "random_maps.hpp"

using namespace hakimkit;
using hakimkit::testing::Rng;

namespace {

using Q = GaussianRational;

ExactSeries poly(std::initializer_list<Monomial<Q>> terms, int trunc) { return ExactSeries(terms, trunc); }
Q frac(long n, long d) { return Q::ratio(n, d); }

}  // namespace

TEST_CASE("gaussian rationals stay canonical") {
  auto x = Q::parse("-6/4", "2/8");
  CHECK(x.real() == mpq_class(-3, 2));
  CHECK(x.imag() == mpq_class(1, 4));
  CHECK(x.to_string() == "-3/2+1/4i");
  CHECK((Q::i() * Q::i()) == Q(-1));
  CHECK((x / x) == Q(1));
  CHECK_THROWS(Q::parse("1/0"));
  CHECK_THROWS(Q::parse("1.5"));
  CHECK_THROWS(Q::parse("--1"));
}

TEST_CASE("best rational recovers small fractions") {
  CHECK(best_rational(0.5L, 10) == mpq_class(1, 2));
  CHECK(best_rational(-7.0L / 3.0L, 100) == mpq_class(-7, 3));
  CHECK(best_rational(3.14159265358979L, 10) == mpq_class(22, 7));
}

TEST_CASE("add") {
  const int t = 3;
  auto z = ExactSeries::variable(Var::z, t);
  auto w = ExactSeries::variable(Var::w, t);
  CHECK(add(z, -z).is_zero());
  CHECK(add(ExactSeries::constant(1, t) + z, w) == poly({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}, t));
  CHECK(add(poly({{2, 1, 1}}, 3), poly({{1, 2, 1}}, 3)) == poly({{2, 1, 1}, {1, 2, 1}}, 3));
  CHECK_THROWS_AS(add(z, ExactSeries::variable(Var::z, 4)), SeriesError);
}

TEST_CASE("mul") {
  auto z = ExactSeries::variable(Var::z, 4);
  auto w = ExactSeries::variable(Var::w, 4);
  CHECK(mul(z + w, z - w) == poly({{2, 0, 1}, {0, 2, -1}}, 4));
  auto one_plus_z = poly({{0, 0, 1}, {1, 0, 1}}, 1);
  CHECK(mul(one_plus_z, one_plus_z) == poly({{0, 0, 1}, {1, 0, 2}}, 1));
  CHECK(mul(z, z - w) == poly({{2, 0, 1}, {1, 1, -1}}, 4));
}

TEST_CASE("diff") {
  CHECK(diff(poly({{2, 1, 1}}, 3), Var::z) == poly({{1, 1, 2}}, 2));
  CHECK(diff(ExactSeries::constant(5, 3), Var::w).is_zero());
  CHECK(diff(poly({{1, 2, frac(1, 2)}}, 3), Var::w) == poly({{1, 1, 1}}, 2));
  CHECK(diff(ExactSeries::constant(5, 0), Var::z).trunc() == 0);
}

TEST_CASE("exp_series") {
  CHECK(exp_series(ExactSeries(3)) == ExactSeries::constant(1, 3));
  CHECK(exp_series(ExactSeries::variable(Var::z, 3)) ==
        poly({{0, 0, 1}, {1, 0, 1}, {2, 0, frac(1, 2)}, {3, 0, frac(1, 6)}}, 3));
  CHECK(exp_series(poly({{1, 1, 1}}, 3)) == poly({{0, 0, 1}, {1, 1, 1}}, 3));
  CHECK_THROWS_AS(exp_series(ExactSeries::constant(1, 3)), SeriesError);
}

TEST_CASE("log1p_series") {
  CHECK(log1p_series(ExactSeries(3)).is_zero());
  CHECK(log1p_series(ExactSeries::variable(Var::w, 3)) ==
        poly({{0, 1, 1}, {0, 2, frac(-1, 2)}, {0, 3, frac(1, 3)}}, 3));
  auto zw = poly({{1, 1, 1}}, 4);
  CHECK(log1p_series(exp_series(zw) - ExactSeries::constant(1, 4)) == zw);
  CHECK_THROWS_AS(log1p_series(ExactSeries::constant(2, 3)), SeriesError);
}

TEST_CASE("divide_monomial") {
  CHECK(divide_monomial(poly({{1, 1, 1}, {1, 2, 1}}, 3), Var::w) == poly({{1, 0, 1}, {1, 1, 1}}, 2));
  CHECK(divide_monomial(ExactSeries(3), Var::w).is_zero());
  CHECK_THROWS_AS(divide_monomial(poly({{2, 0, 1}, {0, 1, 1}}, 3), Var::z), SeriesError);
}

TEST_CASE("eval") {
  const Complex i(0, 1);
  CHECK(eval(poly({{2, 0, 1}, {0, 2, -1}}, 2), Complex(2), Complex(1)) == Complex(3));
  CHECK(eval(poly({{0, 0, 1}, {1, 1, 1}}, 2), Complex(0), Complex(7, 3)) == Complex(1));
  const Complex v = eval(poly({{1, 0, 1}, {1, 1, 1}}, 2), i, i);
  CHECK(v.real() == doctest::Approx(-1.0));
  CHECK(v.imag() == doctest::Approx(1.0));
}

TEST_CASE("canonical form and truncation bookkeeping") {
  ExactSeries s(2);
  s.accumulate(1, 0, 3);
  s.accumulate(1, 0, -3);
  CHECK(s.is_zero());
  CHECK_THROWS_AS(s.accumulate(2, 1, 1), SeriesError);
  CHECK_THROWS_AS(s.accumulate(-1, 1, 1), SeriesError);
  CHECK(truncate(poly({{1, 0, 1}, {2, 1, 1}}, 3), 2) == poly({{1, 0, 1}}, 2));
  CHECK_THROWS_AS(truncate(ExactSeries(2), 3), SeriesError);
  CHECK(mul_monomial(poly({{1, 0, 1}}, 2), 0, 1) == poly({{1, 1, 1}}, 3));
}

TEST_CASE("to_string") {
  CHECK(to_string(ExactSeries(2)) == "0");
  CHECK(to_string(poly({{1, 2, frac(-1, 2)}, {2, 1, 1}}, 3)) == "-1/2*z*w^2 + z^2*w");
  CHECK(to_string(poly({{0, 0, Q(1, 1)}}, 0)) == "(1+i)");
}

TEST_CASE("ring axioms, Leibniz and exp/log on random exact series") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int t = 1 + trial % 8;
    auto a = testing::random_series(rng, t);
    auto b = testing::random_series(rng, t);
    auto c = testing::random_series(rng, t);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);

    for (Var v : {Var::z, Var::w}) {
      auto lhs = diff(a * b, v);
      auto rhs = diff(a, v) * truncate(b, t - 1) + truncate(a, t - 1) * diff(b, v);
      CHECK(lhs == rhs);
    }

    auto x = testing::random_series(rng, t, 1);
    auto y = testing::random_series(rng, t, 1);
    const auto one = ExactSeries::constant(1, t);
    CHECK(log1p_series(exp_series(x) - one) == x);
    CHECK(exp_series(log1p_series(x)) == one + x);
    CHECK(exp_series(x + y) == exp_series(x) * exp_series(y));
  }
}

TEST_CASE("eval is multiplicative in the floating domain") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = to_float(testing::random_series(rng, 6));
    auto b = to_float(testing::random_series(rng, 6));
    const Complex z = testing::random_complex(rng, 0.7), w = testing::random_complex(rng, 0.7);
    // Terms above the truncation are dropped, so multiply at a truncation wide enough to keep them all.
    FloatSeries pa(12), pb(12);
    for (const auto& [e, c] : a.terms()) pa.accumulate(e.alpha, e.beta, c);
    for (const auto& [e, c] : b.terms()) pb.accumulate(e.alpha, e.beta, c);
    const Complex prod = eval(pa * pb, z, w);
    const Complex expect = eval(a, z, w) * eval(b, z, w);
    CHECK(std::abs(prod - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
}
