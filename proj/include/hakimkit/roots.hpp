#pragma once

#include <span>
#include <vector>

#include "hakimkit/gaussian_rational.hpp"
#include "hakimkit/scalar.hpp"

namespace hakimkit {

struct Root {
  Complex value;
  int multiplicity = 1;
};

struct RootOptions {
  int max_iter = 500;
  /// Converged approximations closer than this are merged into one multiple root.
  double cluster_radius = 1e-7;
  /// Accepted residual |p(root)| relative to sum |a_j| |root|^j.
  double residual_tol = 1e-10;
};

/// All complex roots of sum coeffs[j] u^j with multiplicities.
///
/// Exact zero low-order coefficients are split off as the root 0; the rest is
/// solved by Aberth–Ehrlich simultaneous iteration in extended precision.
/// Throws RootError for the zero polynomial or on non-convergence.
std::vector<Root> find_roots(std::span<const Complex> coeffs, const RootOptions& options = {});

/// Same, for exact coefficients: multiplicities come from an exact square-free
/// factorization, and each factor's simple roots are found in extended precision.
std::vector<Root> find_roots(std::span<const GaussianRational> coeffs, const RootOptions& options = {});

struct ExactRoot {
  GaussianRational value;
  int multiplicity = 1;
};

struct ExactRootSplit {
  std::vector<ExactRoot> rational;
  /// Cofactor left after dividing out every rational root (constant when all roots are rational).
  std::vector<GaussianRational> remainder;
};

/// Gaussian-rational roots of an exact polynomial. Candidates come from the
/// numeric roots, rounded to the nearest rationals whose denominators divide
/// the norm of the (integer-cleared) leading coefficient, and are accepted only
/// when they annihilate the polynomial exactly.
ExactRootSplit exact_rational_roots(std::span<const GaussianRational> coeffs, const RootOptions& options = {});

/// Horner evaluation, ascending coefficients.
template <typename S, typename T>
T eval_poly(std::span<const S> coeffs, const T& u) {
  T acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + T(*it);
  return acc;
}

}  // namespace hakimkit
