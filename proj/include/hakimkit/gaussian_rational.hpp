#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hakimkit {

/// Exact complex number re + i*im with arbitrary-precision rational parts.
///
/// Both parts are kept canonical (lowest terms, positive denominator), so
/// structural equality is numeric equality.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  /// Parses "p", "-p/q", "+p/q" (decimal integers). Throws std::invalid_argument.
  static GaussianRational parse(std::string_view re, std::string_view im = "0");
  static GaussianRational ratio(long num, long den);
  static GaussianRational i();

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  /// |x|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::complex<long double> to_complex_ld() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "3/4", "-1+2/3i", "5i".
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

/// Canonical rational string "p" or "p/q".
std::string rational_to_string(const mpq_class& q);
/// Parses an optionally signed "p" or "p/q"; throws std::invalid_argument.
mpq_class parse_rational(std::string_view text);

/// Best rational approximation with denominator at most max_den (Stern–Brocot / continued fractions).
mpq_class best_rational(long double x, const mpz_class& max_den);

}  // namespace hakimkit
