#include "boxrevive/numeric.hpp"

#include <charconv>
#include <cmath>

#include "boxrevive/error.hpp"

namespace boxrevive {

complex cis_cycles(double c) {
  double r = c - std::floor(c);  // [0, 1)
  const int quarter = static_cast<int>(std::nearbyint(4.0 * r));
  r -= 0.25 * quarter;  // [-1/8, 1/8]
  const double angle = 2.0 * kPi * r;
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  switch (quarter & 3) {
    case 0: return {cs, sn};
    case 1: return {-sn, cs};
    case 2: return {-cs, -sn};
    default: return {sn, -cs};
  }
}

double sin_pi(double y) {
  double r = std::fmod(y, 2.0);
  if (r < 0.0) r += 2.0;  // [0, 2)
  const int half = static_cast<int>(std::nearbyint(2.0 * r));
  r -= 0.5 * half;  // [-1/4, 1/4]
  switch (half & 3) {
    case 0: return std::sin(kPi * r);
    case 1: return std::cos(kPi * r);
    case 2: return -std::sin(kPi * r);
    default: return -std::cos(kPi * r);
  }
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw ContractError("uniform_grid: need at least one sample");
  if (n == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(n));
  const double span = hi - lo;
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (span * i) / (n - 1);
  g.back() = hi;
  return g;
}

std::vector<double> symmetric_grid(double half_range, int n) {
  if (n < 2) throw ContractError("symmetric_grid: need at least two samples");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int k = 2 * j - (n - 1);
    g[static_cast<std::size_t>(j)] = (half_range * k) / (n - 1);
  }
  return g;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("trapezoid: abscissa and ordinate sizes differ");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Moments distribution_moments(std::span<const double> x, std::span<const double> w) {
  Moments m;
  m.norm = trapezoid(x, w);
  if (!(m.norm > 0.0)) throw NumericalError("distribution_moments: weight has zero norm");
  std::vector<double> tmp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] * w[i];
  m.mean = trapezoid(x, tmp) / m.norm;
  for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = (x[i] - m.mean) * (x[i] - m.mean) * w[i];
  m.spread = std::sqrt(trapezoid(x, tmp) / m.norm);
  return m;
}

}  // namespace boxrevive
