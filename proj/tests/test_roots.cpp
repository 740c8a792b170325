#include <doctest.h>

#include <algorithm>

#include "hakimkit/roots.hpp"
#include "random_maps.hpp"

using namespace hakimkit;
using hakimkit::testing::Rng;

namespace {

using Q = GaussianRational;

using testing::from_roots;

std::vector<Complex> to_float(const std::vector<Q>& c) {
  std::vector<Complex> out;
  for (const auto& x : c) out.push_back(x.to_complex());
  return out;
}

const Root* nearest(const std::vector<Root>& found, Complex target) {
  const Root* best = nullptr;
  for (const auto& r : found)
    if (!best || std::abs(r.value - target) < std::abs(best->value - target)) best = &r;
  return best;
}

}  // namespace

TEST_CASE("find_roots on the worked characteristic polynomials") {
  // u - 2u^2 = u (1 - 2u)
  auto r1 = find_roots(std::vector<Complex>{0, 1, -2});
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].value == Complex(0));
  CHECK(std::abs(r1[1].value - 0.5) < 1e-15);
  // u (2 - u)
  auto r2 = find_roots(std::vector<Complex>{0, 2, -1});
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(r2[1].value - 2.0) < 1e-15);
  // u^2
  auto r3 = find_roots(std::vector<Complex>{0, 0, 1});
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].multiplicity == 2);
  CHECK(r3[0].value == Complex(0));
}

TEST_CASE("find_roots errors") {
  CHECK_THROWS_AS(find_roots(std::vector<Complex>{0, 0}), RootError);
  CHECK_THROWS_AS(find_roots(std::vector<Complex>{}), RootError);
  CHECK(find_roots(std::vector<Complex>{3}).empty());
}

TEST_CASE("find_roots recovers products of rational linear factors") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int degree = 1 + trial % 8;
    std::vector<Q> distinct;
    while (static_cast<int>(distinct.size()) < degree) {
      auto r = testing::random_gaussian(rng, 4, 3);
      if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
    }
    std::vector<Q> all = distinct;
    const bool with_double = degree >= 2 && trial % 2 == 0;
    if (with_double) all.back() = all.front();  // one double root
    auto exact = from_roots(all, testing::random_nonzero_gaussian(rng));
    // Rounding to binary64 splits a double root by ~1e-8..1e-7, so double roots start from exact data.
    auto found = with_double ? find_roots(std::span<const Q>(exact)) : find_roots(to_float(exact));
    int total = 0;
    for (const auto& r : found) total += r.multiplicity;
    CHECK(total == degree);
    for (const auto& r : all) {
      const Root* hit = nearest(found, r.to_complex());
      REQUIRE(hit != nullptr);
      CHECK(std::abs(hit->value - r.to_complex()) <= 1e-10);
      if (with_double && r == all.front()) CHECK(hit->multiplicity == 2);
    }
  }
}

TEST_CASE("exact_rational_roots") {
  // (u - 1/2)^2 (u + i) (u^2 - 2)
  auto c = from_roots({Q::ratio(1, 2), Q::ratio(1, 2), -Q::i()}, Q(3));
  std::vector<Q> irrational{Q(-2), Q(0), Q(1)};
  std::vector<Q> product(c.size() + 2);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < irrational.size(); ++j) product[i + j] += c[i] * irrational[j];
  auto split = exact_rational_roots(product);
  REQUIRE(split.rational.size() == 2);
  bool saw_half = false, saw_minus_i = false;
  for (const auto& r : split.rational) {
    if (r.value == Q::ratio(1, 2)) saw_half = r.multiplicity == 2;
    if (r.value == -Q::i()) saw_minus_i = r.multiplicity == 1;
  }
  CHECK(saw_half);
  CHECK(saw_minus_i);
  REQUIRE(split.remainder.size() == 3);
  CHECK(split.remainder[1].is_zero());
  CHECK(split.remainder[0] == Q(-2) * split.remainder[2]);

  auto with_zero = exact_rational_roots(std::vector<Q>{0, 0, 1, -2});
  REQUIRE(with_zero.rational.size() == 2);
  CHECK(with_zero.rational[0].value.is_zero());
  CHECK(with_zero.rational[0].multiplicity == 2);
  CHECK(with_zero.rational[1].value == Q::ratio(1, 2));
}

TEST_CASE("exact find_roots takes multiplicities from the square-free split") {
  // (u - 7/3)^3 (u - 7/3 - 1e-6 i) would merge numerically; the exact split keeps them apart
  const Q a = Q::ratio(7, 3);
  const Q b = a + Q(mpq_class(0), mpq_class(1, 1000000));
  const auto found = find_roots(std::span<const Q>(from_roots({a, a, a, b, Q(-1)}, Q(5))));
  REQUIRE(found.size() == 3);
  int triple = 0;
  for (const auto& r : found) {
    if (r.multiplicity == 3) {
      ++triple;
      CHECK(std::abs(r.value - a.to_complex()) < 1e-12);
    }
  }
  CHECK(triple == 1);
}
