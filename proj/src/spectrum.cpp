#include "boxrevive/spectrum.hpp"

#include <cmath>
#include <string>

#include "boxrevive/error.hpp"
#include "boxrevive/numeric.hpp"

namespace boxrevive {

void SystemConfig::validate() const {
  if (!std::isfinite(q_squared) || q_squared < 0.0)
    throw ContractError("q_squared >= 0 required (got " + format_number(q_squared) + ")");
  if (!(truncation_epsilon > 0.0 && truncation_epsilon < 1.0))
    throw ContractError("truncation_epsilon in (0, 1) required (got " + format_number(truncation_epsilon) + ")");
  if (n_max_cap < 1) throw ContractError("n_max_cap >= 1 required (got " + std::to_string(n_max_cap) + ")");
}

double energy_level(int n, const SystemConfig& cfg) {
  if (n < 1) throw ContractError("energy_level: quantum number n >= 1 required (got " + std::to_string(n) + ")");
  const double n2 = static_cast<double>(n) * n;
  return (n2 - cfg.q_squared * n2 * n2) * kSpectralScale;
}

double eigenfunction(int n, double x) {
  if (n < 1) throw ContractError("eigenfunction: quantum number n >= 1 required");
  if (!(x >= 0.0 && x <= 1.0)) throw ContractError("eigenfunction: position in [0, 1] required");
  return std::numbers::sqrt2 * sin_pi(n * x);
}

std::optional<double> spectrum_turnover(const SystemConfig& cfg) {
  if (cfg.q_squared <= 0.0) return std::nullopt;
  return 1.0 / std::sqrt(2.0 * cfg.q_squared);
}

bool exceeds_validity_guard(int n_max, const SystemConfig& cfg) {
  const auto turnover = spectrum_turnover(cfg);
  return turnover && n_max > kValidityGuardFraction * *turnover;
}

int mean_quantum_number(double p_bar) {
  const long n = std::lround(std::fabs(p_bar) / kPi);
  return n < 1 ? 1 : static_cast<int>(n);
}

TimeScales time_scales(int n_bar, const SystemConfig& cfg) {
  cfg.validate();
  if (n_bar < 1) throw ContractError("time_scales: n_bar >= 1 required");
  const double q2 = cfg.q_squared;
  const double nb = n_bar;
  const double curvature = 1.0 - 6.0 * q2 * nb * nb;
  if (curvature <= 0.0)
    throw ContractError("time_scales: beyond perturbative regime, 6 q^2 n_bar^2 = " +
                        format_number(6.0 * q2 * nb * nb) + " >= 1");
  TimeScales ts;
  ts.n_bar = n_bar;
  ts.t_cl = 1.0 / (2.0 * nb);
  ts.t_cl_bar = 1.0 / (2.0 * nb - 4.0 * q2 * nb * nb * nb);
  ts.t_rev = 1.0;
  ts.t_rev_bar = 1.0 / curvature;
  if (q2 > 0.0) {
    ts.t_sr3 = 1.0 / (4.0 * nb * q2);
    ts.t_sr4 = 1.0 / q2;
  }
  return ts;
}

double eigenphase_cycles(int n, double t, double q_squared) {
  const long double nn = static_cast<long double>(n) * n;
  const long double c = static_cast<long double>(t) * (nn - static_cast<long double>(q_squared) * nn * nn);
  return static_cast<double>(c - std::floor(c));
}

}  // namespace boxrevive
