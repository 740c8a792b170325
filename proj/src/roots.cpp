#include "hakimkit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hakimkit/error.hpp"

namespace hakimkit {

namespace {

using LComplex = std::complex<long double>;

constexpr long double kEps = std::numeric_limits<long double>::epsilon();

struct HornerResult {
  LComplex value;
  LComplex derivative;
  long double magnitude;  // sum |a_j| |u|^j, the rounding-error scale
};

HornerResult horner(const std::vector<LComplex>& a, LComplex u) {
  LComplex p = 0, dp = 0;
  long double mag = 0;
  const long double au = std::abs(u);
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    dp = dp * u + p;
    p = p * u + *it;
    mag = mag * au + std::abs(*it);
  }
  return {p, dp, mag};
}

std::vector<LComplex> aberth(const std::vector<LComplex>& a, int max_iter) {
  const int n = static_cast<int>(a.size()) - 1;
  long double radius = 0;
  for (int j = 0; j < n; ++j) radius = std::max(radius, std::abs(a[j] / a[n]));
  radius += 1;

  // Irrational angular offset keeps the start off any symmetry of the coefficients.
  const long double offset = 0.5L * (std::sqrt(5.0L) - 1.0L);
  std::vector<LComplex> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::polar(radius, 2 * std::numbers::pi_v<long double> * i / n + offset);

  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const HornerResult h = horner(a, z[i]);
      if (std::abs(h.value) <= 8 * n * kEps * h.magnitude) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const LComplex ratio = h.value / h.derivative;
      LComplex repulsion = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) repulsion += 1.0L / (z[i] - z[j]);
      LComplex step = ratio / (1.0L - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      z[i] -= step;
    }
    if (all_done) return z;
  }
  // Unconverged approximations are judged by the caller's residual test.
  return z;
}

// A root of multiplicity m is a simple root of p^(m-1); Newton there recovers full accuracy.
LComplex polish_multiple(const std::vector<LComplex>& a, LComplex x, int multiplicity, long double max_move) {
  std::vector<LComplex> d = a;
  for (int m = 1; m < multiplicity; ++m) {
    std::vector<LComplex> next(d.size() - 1);
    for (std::size_t j = 1; j < d.size(); ++j) next[j - 1] = d[j] * static_cast<long double>(j);
    d = std::move(next);
  }
  const LComplex start = x;
  for (int iter = 0; iter < 30; ++iter) {
    const HornerResult h = horner(d, x);
    if (h.derivative == LComplex(0)) break;
    const LComplex step = h.value / h.derivative;
    x -= step;
    if (std::abs(step) <= 4 * kEps * std::abs(x)) break;
  }
  return std::abs(x - start) <= max_move ? x : start;
}

std::vector<Root> find_roots_extended(std::vector<LComplex> a, const RootOptions& options) {
  while (!a.empty() && a.back() == LComplex(0)) a.pop_back();
  if (a.empty()) throw RootError("zero polynomial has no isolated roots");

  std::vector<Root> roots;
  std::size_t zeros = 0;
  while (zeros < a.size() && a[zeros] == LComplex(0)) ++zeros;
  if (zeros > 0) {
    roots.push_back({Complex(0), static_cast<int>(zeros)});
    a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(zeros));
  }
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 0) return roots;

  std::vector<LComplex> approx;
  if (n == 1) {
    approx = {-a[0] / a[1]};
  } else {
    approx = aberth(a, options.max_iter);
  }

  // Merge approximations closer than the cluster radius (single linkage).
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(approx[i] - approx[j]) < options.cluster_radius) parent[find(i)] = find(j);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return find(x) < find(y); });
  for (int i = 0; i < n;) {
    const int root_id = find(order[i]);
    LComplex sum = 0;
    int count = 0;
    for (; i < n && find(order[i]) == root_id; ++i, ++count) sum += approx[order[i]];
    LComplex mean = sum / static_cast<long double>(count);
    if (count > 1) mean = polish_multiple(a, mean, count, options.cluster_radius);
    const HornerResult h = horner(a, mean);
    if (!(std::abs(h.value) <= options.residual_tol * h.magnitude))
      throw RootError("root iteration did not converge (residual " + std::to_string(double(std::abs(h.value))) + ")");
    roots.push_back({Complex(static_cast<double>(mean.real()), static_cast<double>(mean.imag())), count});
  }
  std::stable_sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return roots;
}

}  // namespace

std::vector<Root> find_roots(std::span<const Complex> coeffs, const RootOptions& options) {
  return find_roots_extended(std::vector<LComplex>(coeffs.begin(), coeffs.end()), options);
}

namespace {

using QPoly = std::vector<GaussianRational>;  // ascending, no trailing zeros

void trim(QPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

QPoly derivative(const QPoly& a) {
  QPoly d;
  for (std::size_t j = 1; j < a.size(); ++j) d.push_back(a[j] * GaussianRational(static_cast<long>(j)));
  trim(d);
  return d;
}

// a = q b + r
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) return {{}, std::move(a)};
  QPoly q(a.size() - b.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    const GaussianRational c = a[i + b.size() - 1] / b.back();
    q[i] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {std::move(q), std::move(a)};
}

QPoly monic_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = divmod(std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  const GaussianRational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

QPoly exact_quotient(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

QPoly subtract(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) a[j] -= b[j];
  trim(a);
  return a;
}

// Yun: f = lead * prod a_i^i with each a_i square-free and pairwise coprime.
std::vector<std::pair<QPoly, int>> squarefree_factors(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  const QPoly df = derivative(f);
  const QPoly a0 = monic_gcd(f, df);
  QPoly b = exact_quotient(f, a0);
  QPoly d = subtract(exact_quotient(df, a0), derivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    const QPoly a = monic_gcd(b, d);
    b = exact_quotient(b, a);
    d = subtract(exact_quotient(d, a), derivative(b));
    if (a.size() > 1) out.push_back({a, i});
  }
  return out;
}

}  // namespace

std::vector<Root> find_roots(std::span<const GaussianRational> coeffs, const RootOptions& options) {
  QPoly f(coeffs.begin(), coeffs.end());
  trim(f);
  if (f.empty()) throw RootError("zero polynomial has no isolated roots");
  std::vector<Root> roots;
  std::size_t zeros = 0;
  while (zeros < f.size() && f[zeros].is_zero()) ++zeros;
  if (zeros > 0) {
    roots.push_back({Complex(0), static_cast<int>(zeros)});
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(zeros));
  }
  // Multiplicities come from the exact square-free split, so each factor has only simple roots.
  for (const auto& [factor, multiplicity] : squarefree_factors(f)) {
    std::vector<LComplex> a;
    a.reserve(factor.size());
    for (const auto& c : factor) a.push_back(c.to_complex_ld());
    for (Root r : find_roots_extended(std::move(a), options)) {
      r.multiplicity *= multiplicity;
      roots.push_back(r);
    }
  }
  std::stable_sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return roots;
}

namespace {

// Synthetic division by (u - r); returns the quotient and whether the remainder vanished.
std::pair<std::vector<GaussianRational>, bool> deflate(const std::vector<GaussianRational>& a,
                                                       const GaussianRational& r) {
  const std::size_t n = a.size() - 1;
  std::vector<GaussianRational> q(n);
  GaussianRational carry = 0;
  for (std::size_t j = n; j-- > 0;) {
    carry = a[j + 1] + carry * r;
    q[j] = carry;
  }
  const GaussianRational remainder = a[0] + carry * r;
  return {std::move(q), remainder.is_zero()};
}

mpz_class norm_of_cleared_leading(const std::vector<GaussianRational>& a) {
  mpz_class lcm = 1;
  for (const auto& c : a) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.real().get_den_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.imag().get_den_mpz_t());
  }
  const mpq_class re = a.back().real() * lcm;
  const mpq_class im = a.back().imag() * lcm;
  return re.get_num() * re.get_num() + im.get_num() * im.get_num();
}

}  // namespace

ExactRootSplit exact_rational_roots(std::span<const GaussianRational> coeffs, const RootOptions& options) {
  std::vector<GaussianRational> a(coeffs.begin(), coeffs.end());
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  if (a.empty()) throw RootError("zero polynomial has no isolated roots");

  ExactRootSplit out;
  std::size_t zeros = 0;
  while (zeros < a.size() && a[zeros].is_zero()) ++zeros;
  if (zeros > 0) {
    out.rational.push_back({GaussianRational(0), static_cast<int>(zeros)});
    a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(zeros));
  }

  // Rounding is only trustworthy while the denominator bound stays well inside extended precision.
  const mpz_class max_useful_den = 1000000000;
  bool found = true;
  while (found && a.size() > 1) {
    found = false;
    mpz_class bound = norm_of_cleared_leading(a);
    if (bound > max_useful_den) bound = max_useful_den;
    std::vector<Root> approx;
    try {
      approx = find_roots(std::span<const GaussianRational>(a), options);
    } catch (const RootError&) {
      break;  // leave the rest to the floating path, which reports its own failure
    }
    for (const Root& r : approx) {
      const GaussianRational candidate(best_rational(r.value.real(), bound), best_rational(r.value.imag(), bound));
      int multiplicity = 0;
      for (;;) {
        if (a.size() <= 1) break;
        auto [quotient, divides] = deflate(a, candidate);
        if (!divides) break;
        a = std::move(quotient);
        ++multiplicity;
      }
      if (multiplicity > 0) {
        out.rational.push_back({candidate, multiplicity});
        found = true;
        break;  // recompute numeric roots of the deflated cofactor
      }
    }
  }
  out.remainder = std::move(a);
  return out;
}

}  // namespace hakimkit
