#pragma once

#include <string>

#include "hakimkit/series.hpp"

namespace hakimkit {

/// Shortest round-trippable "%.17g"-style rendering, trimmed ("0.5", "-2").
std::string format_double(double x);
/// "1.5", "-2i", "(0.5+1.25i)".
std::string format_complex(const Complex& x, int precision = 12);
std::string format_scalar(const GaussianRational& x);
std::string format_scalar(const Complex& x);

/// "z^2*w - 1/2*z*w^2"; "0" for the zero series.
template <CoefficientField S>
std::string to_string(const TruncatedSeries<S>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    std::string coeff = format_scalar(c);
    bool negative = false;
    if (coeff.front() == '-' && coeff.find_first_of("+-", 1) == std::string::npos) {
      negative = true;
      coeff.erase(0, 1);
    } else if (coeff.find_first_of("+-", 1) != std::string::npos && coeff.front() != '(') {
      coeff = "(" + coeff + ")";
    }
    std::string mono;
    if (e.alpha > 0) mono += e.alpha == 1 ? "z" : "z^" + std::to_string(e.alpha);
    if (e.beta > 0) {
      if (!mono.empty()) mono += "*";
      mono += e.beta == 1 ? "w" : "w^" + std::to_string(e.beta);
    }
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

}  // namespace hakimkit
