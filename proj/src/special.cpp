#include "antisym/special.hpp"

#include <array>
#include <numbers>
#include <stdexcept>

namespace antisym::special {

namespace {

constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  x -= 1.0;
  double a = kLanczos[0];
  const double t = x + kG + 0.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  return lanczos(x);
}

double c_ns(const Params& p) {
  p.validate();
  const double n = p.n, s = p.s;
  return s * std::pow(std::numbers::pi, -n / 2.0) * std::pow(4.0, s) * gamma_fn((n + 2.0 * s) / 2.0) /
         gamma_fn(1.0 - s);
}

double gamma_ns(const Params& p) {
  p.validate();
  const double n = p.n;
  return std::sin(std::numbers::pi * p.s) * gamma_fn(n / 2.0) / std::pow(std::numbers::pi, n / 2.0 + 1.0);
}

double tilde_c_ns(const Params& p) {
  p.validate();
  return c_ns(Params(1, p.s)) / (2.0 * p.s);
}

double halfspace_integral_closed(const Params& p) {
  p.validate();
  const double n = p.n, s = p.s;
  return std::pow(std::numbers::pi, (n - 1.0) / 2.0) * gamma_fn((1.0 + 2.0 * s) / 2.0) /
         (2.0 * s * gamma_fn((n + 2.0 * s) / 2.0));
}

double unit_sphere_area(int n) {
  if (n < 1) throw UsageError("unit_sphere_area: n must be positive");
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / gamma_fn(n / 2.0);
}

}  // namespace antisym::special
