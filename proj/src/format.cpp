#include "hakimkit/format.hpp"

#include <fmt/format.h>

namespace hakimkit {

std::string format_double(double x) {
  if (x == 0.0) return "0";
  return fmt::format("{}", x);
}

std::string format_complex(const Complex& x, int precision) {
  const double re = x.real();
  const double im = x.imag();
  auto num = [precision](double v) { return fmt::format("{:.{}g}", v, precision); };
  if (im == 0.0) return num(re);
  std::string im_part = im == 1.0 ? "i" : im == -1.0 ? "-i" : num(im) + "i";
  if (re == 0.0) return im_part;
  return "(" + num(re) + (im_part.front() == '-' ? "" : "+") + im_part + ")";
}

std::string format_scalar(const GaussianRational& x) { return x.to_string(); }

std::string format_scalar(const Complex& x) { return format_complex(x); }

}  // namespace hakimkit
