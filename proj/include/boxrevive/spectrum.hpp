#pragma once

#include <optional>

namespace boxrevive {

/// Dimensionless system parameters.
struct SystemConfig {
  double q_squared = 0.0;           // relativistic parameter q^2 >= 0
  double truncation_epsilon = 1e-6; // allowed norm deficit of the truncated basis
  int n_max_cap = 128;              // hard cap on the highest quantum number

  /// Throws ContractError naming the violated precondition.
  void validate() const;
};

/// Characteristic periods, all in units of T_rev.
struct TimeScales {
  int n_bar = 1;
  double t_cl = 0.0;
  double t_cl_bar = 0.0;
  double t_rev = 1.0;
  double t_rev_bar = 1.0;
  std::optional<double> t_sr3;  // absent for q^2 = 0
  std::optional<double> t_sr4;  // absent for q^2 = 0
};

/// E_n = (n^2 - q^2 n^4) pi^2 / 2, in units of hbar^2 / (m L^2).
double energy_level(int n, const SystemConfig& cfg);

/// sqrt(2) sin(n pi x) on [0, 1]; exactly zero at both walls.
double eigenfunction(int n, double x);

/// Quantum number n* = 1/sqrt(2 q^2) where dE/dn vanishes; absent for q^2 = 0.
std::optional<double> spectrum_turnover(const SystemConfig& cfg);

/// True when the basis reaches past 0.7 n*, the monotone-spectrum guard.
bool exceeds_validity_guard(int n_max, const SystemConfig& cfg);

inline constexpr double kValidityGuardFraction = 0.7;

/// Average quantum number round(|p_bar| / pi), never below 1.
int mean_quantum_number(double p_bar);

/// Periods derived from the Taylor coefficients of E_n around n_bar.
/// Throws ContractError when 6 q^2 n_bar^2 >= 1 (beyond perturbative regime).
TimeScales time_scales(int n_bar, const SystemConfig& cfg);

/// Fractional part of t (n^2 - q^2 n^4), i.e. the eigenphase E_n t T_rev / (2 pi)
/// reduced to [0, 1). t is in units of T_rev. The product is formed in extended
/// precision so that t ~ 1e5 keeps full double accuracy in the result.
double eigenphase_cycles(int n, double t, double q_squared);

}  // namespace boxrevive
