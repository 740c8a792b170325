#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <type_traits>

#include "hakimkit/gaussian_rational.hpp"

namespace hakimkit {

using Complex = std::complex<double>;

/// Operations every coefficient domain provides. Specialized for the exact
/// GaussianRational domain and the binary64 Complex domain.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational ratio(long num, long den) { return GaussianRational::ratio(num, den); }
  static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
  static double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static Complex ratio(long num, long den) { return {static_cast<double>(num) / static_cast<double>(den), 0.0}; }
  static Complex to_complex(const Complex& x) { return x; }
  static double magnitude(const Complex& x) { return std::abs(x); }
};

/// A coefficient field usable by TruncatedSeries and everything built on it.
template <typename S>
concept CoefficientField = std::regular<S> && requires(S a, const S& b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -b } -> std::convertible_to<S>;
  { ScalarTraits<S>::is_zero(b) } -> std::same_as<bool>;
  { ScalarTraits<S>::ratio(1L, 1L) } -> std::convertible_to<S>;
  { ScalarTraits<S>::to_complex(b) } -> std::convertible_to<Complex>;
};

template <CoefficientField S>
bool is_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

template <CoefficientField S>
Complex to_complex(const S& x) {
  return ScalarTraits<S>::to_complex(x);
}

template <CoefficientField S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

}  // namespace hakimkit
