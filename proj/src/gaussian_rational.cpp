#include "hakimkit/gaussian_rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace hakimkit {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

GaussianRational GaussianRational::ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q};
}

GaussianRational GaussianRational::i() { return {0, 1}; }

namespace {

long double to_long_double(const mpq_class& q) {
  // Split into a double head and a double tail; mpf carries enough bits for both.
  const mpf_class x(q, 160);
  const double head = x.get_d();
  const mpf_class tail = x - mpf_class(head, 160);
  return static_cast<long double>(head) + static_cast<long double>(tail.get_d());
}

}  // namespace

std::complex<long double> GaussianRational::to_complex_ld() const {
  return {to_long_double(re_), to_long_double(im_)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t pos = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t j = from; j < to; ++j)
      if (s[j] < '0' || s[j] > '9') return false;
    return true;
  };
  const std::size_t slash = s.find('/', pos);
  const std::size_t num_end = slash == std::string::npos ? s.size() : slash;
  if (!digits(pos, num_end)) throw bad();
  mpz_class num(s.substr(pos, num_end - pos), 10);
  mpz_class den = 1;
  if (slash != std::string::npos) {
    if (!digits(slash + 1, s.size())) throw bad();
    den = mpz_class(s.substr(slash + 1), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  mpq_class q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  return q;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return rational_to_string(re_);
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = rational_to_string(im_) + "i";
  }
  if (sgn(re_) == 0) return im_part;
  if (im_part[0] != '-') im_part = "+" + im_part;
  return rational_to_string(re_) + im_part;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.to_string(); }

mpq_class best_rational(long double x, const mpz_class& max_den) {
  // Continued-fraction convergents h/k, stopping before k exceeds the bound.
  const bool negative = x < 0;
  long double rest = std::fabs(x);
  mpz_class h_prev = 0, h = 1;
  mpz_class k_prev = 1, k = 0;
  mpq_class best = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_ld = std::floor(rest);
    if (a_ld > 1e18L) break;
    const mpz_class a(std::to_string(static_cast<long long>(a_ld)));
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = std::exchange(h, std::move(h_next));
    k_prev = std::exchange(k, std::move(k_next));
    best = mpq_class(h, k);
    const long double frac = rest - a_ld;
    if (frac < 1e-30L) break;
    rest = 1.0L / frac;
  }
  best.canonicalize();
  return negative ? mpq_class(-best) : best;
}

}  // namespace hakimkit
