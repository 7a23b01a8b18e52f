#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace boxrevive {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Natural units: hbar = m = L = 1.
// T_rev = 4 m L^2 / (pi hbar) and the spectral scale 2 pi hbar / T_rev.
inline constexpr double kRevivalTime = 4.0 / kPi;
inline constexpr double kSpectralScale = kPi * kPi / 2.0;

/// e^{2 pi i c}. The argument is reduced to a quarter turn before any
/// trigonometry, so integer and quarter-integer cycle counts are exact.
complex cis_cycles(double c);

/// sin(pi y), exact zero at every integer y.
double sin_pi(double y);

/// `n` uniformly spaced samples from `lo` to `hi` inclusive. Sample i is
/// computed as lo + ((hi - lo) * i) / (n - 1) so that grids sharing points
/// produce bitwise equal coordinates.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Uniform grid symmetric about zero: sample j equals minus sample n-1-j exactly.
std::vector<double> symmetric_grid(double half_range, int n);

/// Trapezoid rule over arbitrary (ordered) abscissae.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Shortest round-trip decimal representation (locale independent).
std::string format_number(double v);

}  // namespace boxrevive

namespace boxrevive {

/// Zeroth, first and centered second moment of a sampled nonnegative weight.
struct Moments {
  double norm = 0.0;
  double mean = 0.0;
  double spread = 0.0;  // standard deviation
};

/// Moments by the trapezoid rule. Throws NumericalError for a zero-norm weight.
Moments distribution_moments(std::span<const double> x, std::span<const double> w);

}  // namespace boxrevive
