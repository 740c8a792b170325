#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hakimkit/error.hpp"
#include "hakimkit/scalar.hpp"

namespace hakimkit {

enum class Var { z, w };

/// Exponent pair (alpha, beta) of the monomial z^alpha w^beta. Ordered lexicographically.
struct Exponent {
  int alpha = 0;
  int beta = 0;

  constexpr int degree() const { return alpha + beta; }
  friend constexpr auto operator<=>(const Exponent&, const Exponent&) = default;
};

template <CoefficientField S>
struct Monomial {
  int alpha = 0;
  int beta = 0;
  S coeff{};
};

/// Bivariate power series in z, w truncated at total degree `trunc`.
///
/// Stored sparsely: only nonzero coefficients with alpha + beta <= trunc are
/// kept, so two series compare equal iff they agree term by term and share
/// the same truncation order. Values are immutable once built.
template <CoefficientField S>
class TruncatedSeries {
 public:
  using Scalar = S;
  using Terms = std::map<Exponent, S>;

  explicit TruncatedSeries(int trunc = 0) : trunc_(trunc) {
    if (trunc < 0) throw SeriesError("negative truncation order");
  }

  TruncatedSeries(std::initializer_list<Monomial<S>> terms, int trunc) : TruncatedSeries(trunc) {
    for (const auto& m : terms) accumulate(m.alpha, m.beta, m.coeff);
  }

  static TruncatedSeries constant(const S& c, int trunc) { return TruncatedSeries({{0, 0, c}}, trunc); }
  static TruncatedSeries monomial(int alpha, int beta, const S& c, int trunc) {
    return TruncatedSeries({{alpha, beta, c}}, trunc);
  }
  static TruncatedSeries variable(Var v, int trunc) {
    return v == Var::z ? monomial(1, 0, S(1), trunc) : monomial(0, 1, S(1), trunc);
  }

  /// Adds c * z^alpha w^beta in place. Throws when the degree exceeds the truncation.
  void accumulate(int alpha, int beta, const S& c) {
    if (alpha < 0 || beta < 0) throw SeriesError("negative exponent");
    if (alpha + beta > trunc_) throw SeriesError("term degree exceeds truncation order");
    accumulate_unchecked({alpha, beta}, c);
  }

  int trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coeff(int alpha, int beta) const {
    auto it = terms_.find({alpha, beta});
    return it == terms_.end() ? S{} : it->second;
  }

  /// Lowest total degree carrying a nonzero coefficient; nullopt for the zero series.
  std::optional<int> lowest_degree() const {
    if (terms_.empty()) return std::nullopt;
    int best = trunc_;
    for (const auto& [e, c] : terms_) best = std::min(best, e.degree());
    return best;
  }

  /// Highest total degree carrying a nonzero coefficient; nullopt for the zero series.
  std::optional<int> highest_degree() const {
    if (terms_.empty()) return std::nullopt;
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e.degree());
    return best;
  }

  /// The homogeneous slice of total degree d, at the same truncation order.
  TruncatedSeries homogeneous_part(int d) const {
    TruncatedSeries out(trunc_);
    for (const auto& [e, c] : terms_)
      if (e.degree() == d) out.terms_.emplace(e, c);
    return out;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    require_same_trunc(o);
    for (const auto& [e, c] : o.terms_) accumulate_unchecked(e, c);
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    require_same_trunc(o);
    for (const auto& [e, c] : o.terms_) accumulate_unchecked(e, -c);
    return *this;
  }

  TruncatedSeries& operator*=(const S& s) {
    if (hakimkit::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      it = hakimkit::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= S(-1); }
  friend TruncatedSeries operator*(TruncatedSeries a, const S& s) { return a *= s; }
  friend TruncatedSeries operator*(const S& s, TruncatedSeries a) { return a *= s; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_same_trunc(b);
    TruncatedSeries out(a.trunc_);
    for (const auto& [ea, ca] : a.terms_) {
      const int room = a.trunc_ - ea.degree();
      for (const auto& [eb, cb] : b.terms_) {
        if (eb.degree() > room) continue;
        out.accumulate_unchecked({ea.alpha + eb.alpha, ea.beta + eb.beta}, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

 private:
  template <CoefficientField>
  friend class TruncatedSeries;

  void require_same_trunc(const TruncatedSeries& o) const {
    if (trunc_ != o.trunc_) throw SeriesError("truncation order mismatch");
  }

  void accumulate_unchecked(Exponent e, const S& c) {
    if (hakimkit::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (hakimkit::is_zero(it->second)) terms_.erase(it);
  }

  int trunc_ = 0;
  Terms terms_;

  template <CoefficientField T>
  friend TruncatedSeries<T> truncate(const TruncatedSeries<T>& a, int trunc);
  template <CoefficientField T>
  friend TruncatedSeries<T> mul_monomial(const TruncatedSeries<T>& a, int alpha, int beta);
  template <CoefficientField T>
  friend TruncatedSeries<T> diff(const TruncatedSeries<T>& a, Var v);
  template <CoefficientField T>
  friend TruncatedSeries<T> divide_monomial(const TruncatedSeries<T>& a, Var v);
  template <CoefficientField To, CoefficientField From, typename Fn>
  friend TruncatedSeries<To> map_coefficients(const TruncatedSeries<From>& a, Fn&& fn);
};

using ExactSeries = TruncatedSeries<GaussianRational>;
using FloatSeries = TruncatedSeries<Complex>;

template <CoefficientField S>
TruncatedSeries<S> add(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  return a + b;
}

template <CoefficientField S>
TruncatedSeries<S> mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  return a * b;
}

/// Drops every term above `trunc` and lowers the truncation order. Raising is rejected.
template <CoefficientField S>
TruncatedSeries<S> truncate(const TruncatedSeries<S>& a, int trunc) {
  if (trunc > a.trunc_) throw SeriesError("cannot raise truncation order: higher terms are unknown");
  TruncatedSeries<S> out(trunc);
  for (const auto& [e, c] : a.terms_)
    if (e.degree() <= trunc) out.terms_.emplace(e, c);
  return out;
}

/// Exact product with z^alpha w^beta; the truncation order rises by alpha + beta.
template <CoefficientField S>
TruncatedSeries<S> mul_monomial(const TruncatedSeries<S>& a, int alpha, int beta) {
  TruncatedSeries<S> out(a.trunc_ + alpha + beta);
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(Exponent{e.alpha + alpha, e.beta + beta}, c);
  return out;
}

/// Formal partial derivative; the truncation order drops by one (floor 0).
template <CoefficientField S>
TruncatedSeries<S> diff(const TruncatedSeries<S>& a, Var v) {
  TruncatedSeries<S> out(std::max(a.trunc_ - 1, 0));
  for (const auto& [e, c] : a.terms_) {
    const int power = v == Var::z ? e.alpha : e.beta;
    if (power == 0) continue;
    const Exponent lowered = v == Var::z ? Exponent{e.alpha - 1, e.beta} : Exponent{e.alpha, e.beta - 1};
    out.accumulate_unchecked(lowered, c * S(power));
  }
  return out;
}

/// Exact division by z or w. Every term must carry the variable.
template <CoefficientField S>
TruncatedSeries<S> divide_monomial(const TruncatedSeries<S>& a, Var v) {
  TruncatedSeries<S> out(std::max(a.trunc_ - 1, 0));
  for (const auto& [e, c] : a.terms_) {
    const int power = v == Var::z ? e.alpha : e.beta;
    if (power == 0)
      throw SeriesError(std::string("series not divisible by ") + (v == Var::z ? "z" : "w"));
    const Exponent lowered = v == Var::z ? Exponent{e.alpha - 1, e.beta} : Exponent{e.alpha, e.beta - 1};
    out.terms_.emplace(lowered, c);
  }
  return out;
}

namespace detail {

template <CoefficientField S>
void require_zero_constant(const TruncatedSeries<S>& a, const char* op) {
  if (!is_zero(a.coeff(0, 0))) throw SeriesError(std::string(op) + " requires a zero constant term");
}

}  // namespace detail

/// exp(a) = sum a^j / j!, for a with zero constant term.
template <CoefficientField S>
TruncatedSeries<S> exp_series(const TruncatedSeries<S>& a) {
  detail::require_zero_constant(a, "exp_series");
  auto result = TruncatedSeries<S>::constant(S(1), a.trunc());
  auto power = result;
  for (long j = 1; j <= a.trunc(); ++j) {
    power = power * a * ScalarTraits<S>::ratio(1, j);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

/// log(1 + a) = sum (-1)^(j+1) a^j / j, for a with zero constant term.
template <CoefficientField S>
TruncatedSeries<S> log1p_series(const TruncatedSeries<S>& a) {
  detail::require_zero_constant(a, "log1p_series");
  TruncatedSeries<S> result(a.trunc());
  auto power = TruncatedSeries<S>::constant(S(1), a.trunc());
  for (long j = 1; j <= a.trunc(); ++j) {
    power = power * a;
    if (power.is_zero()) break;
    result += power * ScalarTraits<S>::ratio(j % 2 == 1 ? 1 : -1, j);
  }
  return result;
}

/// Evaluates the stored polynomial at (z, w), Horner in w inside Horner in z.
/// Terms are visited in lexicographic (alpha, beta) order, so the rounding is deterministic.
template <CoefficientField S, typename T = Complex>
T eval(const TruncatedSeries<S>& a, const T& z, const T& w) {
  T outer{};
  int outer_alpha = -1;  // alpha of the polynomial currently held in `outer`
  auto it = a.terms().rbegin();
  while (it != a.terms().rend()) {
    const int alpha = it->first.alpha;
    T inner{};
    int inner_beta = it->first.beta;
    for (; it != a.terms().rend() && it->first.alpha == alpha; ++it) {
      for (int b = inner_beta; b > it->first.beta; --b) inner *= w;
      inner += T(to_complex(it->second));
      inner_beta = it->first.beta;
    }
    for (int b = inner_beta; b > 0; --b) inner *= w;
    if (outer_alpha >= 0)
      for (int p = outer_alpha; p > alpha; --p) outer *= z;
    outer += inner;
    outer_alpha = alpha;
  }
  for (int p = outer_alpha; p > 0; --p) outer *= z;
  return outer;
}

/// Exact evaluation at a Gaussian-rational point.
template <CoefficientField S>
  requires is_exact_v<S>
S eval_exact(const TruncatedSeries<S>& a, const S& z, const S& w) {
  S total{};
  for (const auto& [e, c] : a.terms()) {
    S term = c;
    for (int p = 0; p < e.alpha; ++p) term *= z;
    for (int p = 0; p < e.beta; ++p) term *= w;
    total += term;
  }
  return total;
}

template <CoefficientField To, CoefficientField From, typename Fn>
TruncatedSeries<To> map_coefficients(const TruncatedSeries<From>& a, Fn&& fn) {
  TruncatedSeries<To> out(a.trunc());
  for (const auto& [e, c] : a.terms()) out.accumulate_unchecked(e, fn(c));
  return out;
}

/// Converts to the floating domain (rounding each coefficient to nearest binary64).
template <CoefficientField S>
FloatSeries to_float(const TruncatedSeries<S>& a) {
  return map_coefficients<Complex>(a, [](const S& c) { return to_complex(c); });
}

/// Max coefficient magnitude (0 for the zero series).
template <CoefficientField S>
double max_magnitude(const TruncatedSeries<S>& a) {
  double m = 0.0;
  for (const auto& [e, c] : a.terms()) m = std::max(m, ScalarTraits<S>::magnitude(c));
  return m;
}

}  // namespace hakimkit
