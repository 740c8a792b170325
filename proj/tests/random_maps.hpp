#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <random>

#include "hakimkit/constraint.hpp"

namespace hakimkit::testing {

using Rng = std::mt19937_64;

/// Small Gaussian rational: numerators in [-range, range], denominators in [1, max_den].
inline GaussianRational random_gaussian(Rng& rng, int range = 3, int max_den = 3, bool allow_imag = true) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, max_den);
  mpq_class re(num(rng), den(rng));
  mpq_class im(allow_imag ? num(rng) : 0, den(rng));
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

inline GaussianRational random_nonzero_gaussian(Rng& rng, int range = 3, int max_den = 3) {
  for (;;) {
    auto x = random_gaussian(rng, range, max_den);
    if (!x.is_zero()) return x;
  }
}

/// Random exact series whose terms have total degree in [min_degree, max_degree]; each slot filled with probability `density`.
inline ExactSeries random_series(Rng& rng, int trunc, int min_degree = 0, int max_degree = -1, double density = 0.5) {
  if (max_degree < 0) max_degree = trunc;
  std::bernoulli_distribution fill(density);
  ExactSeries s(trunc);
  for (int d = min_degree; d <= max_degree; ++d)
    for (int a = 0; a <= d; ++a)
      if (fill(rng)) s.accumulate(a, d - a, random_gaussian(rng));
  return s;
}

inline Complex random_complex(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

/// Ascending coefficients of leading * prod (u - r).
inline std::vector<GaussianRational> from_roots(const std::vector<GaussianRational>& roots,
                                                const GaussianRational& leading) {
  std::vector<GaussianRational> c{leading};
  for (const auto& r : roots) {
    std::vector<GaussianRational> next(c.size() + 1);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= c[j] * r;
    }
    c = std::move(next);
  }
  return c;
}

/// (g, h) with lowest degree exactly k whose coefficients satisfy
/// d_{a-1,b} = -(a/b) c_{a,b-1} for every coefficient degree in [k, 2k]; axis terms d_{n,0} and
/// everything above degree 2k are random.
inline ExactAxesFixingMap random_relation_map(Rng& rng, int k, int trunc) {
  for (;;) {
    ExactSeries g = random_series(rng, trunc, k, trunc);
    ExactSeries h(trunc);
    std::bernoulli_distribution fill(0.5);
    for (int n = k; n <= trunc; ++n) {
      if (fill(rng)) h.accumulate(n, 0, random_gaussian(rng));
      for (int b = 1; b <= n; ++b) {
        const int a = n + 1 - b;
        if (n <= 2 * k)
          h.accumulate(a - 1, b, -(GaussianRational::ratio(a, b) * g.coeff(a, b - 1)));
        else if (fill(rng))
          h.accumulate(a - 1, b, random_gaussian(rng));
      }
    }
    ExactAxesFixingMap m(std::move(g), std::move(h));
    if (m.series_order() == k) return m;
  }
}

/// h = complete_h(g) for random g with lowest degree >= min_degree and random axis data.
inline ExactAxesFixingMap random_pde_map(Rng& rng, int trunc, int min_degree = 0) {
  ExactSeries g = random_series(rng, trunc, min_degree, trunc, 0.4);
  std::map<int, GaussianRational> axis;
  std::bernoulli_distribution fill(0.4);
  for (int n = min_degree; n <= trunc; ++n)
    if (fill(rng)) axis[n] = random_gaussian(rng);
  return {g, complete_h(g, axis, trunc)};
}

}  // namespace hakimkit::testing
