#include "boxrevive/subplanck.hpp"

#include <algorithm>
#include <cmath>

#include "boxrevive/error.hpp"
#include "boxrevive/wigner.hpp"

namespace boxrevive {

namespace {

inline constexpr int kFringeSamples = 1025;

}  // namespace

SubPlanckReport subplanck_dimension(const EvolvedState& state, bool measure_fringes) {
  const auto& packet = state.expansion().packet();
  SubPlanckReport r;
  r.time = state.time();
  r.q_squared = state.config().q_squared;
  r.captured_norm = state.expansion().captured_norm();
  r.delta_x_eff = position_moments(state).spread;
  r.delta_p_eff = momentum_moments(state).spread;
  r.action_A = r.delta_x_eff * r.delta_p_eff;
  if (!(r.action_A > 0.0)) throw NumericalError("subplanck_dimension: vanishing phase-space action");
  r.dim_a = 1.0 / r.action_A;
  if (measure_fringes) {
    const double window = 0.5 * std::fabs(packet.p_bar);
    if (window > 0.0) {
      const auto p = uniform_grid(-window, window, kFringeSamples);
      const auto w = wigner_line(state, packet.x_bar, p);
      r.fringe_spacing_p = zero_crossing_period(p, w);
    }
  }
  return r;
}

SubPlanckReport subplanck_dimension(const PacketSpec& packet, const SystemConfig& cfg, double t,
                                    bool measure_fringes) {
  if (!(t >= 0.0)) throw ContractError("subplanck_dimension: t >= 0 required");
  return subplanck_dimension(evolve(expand(packet, cfg), t, cfg), measure_fringes);
}

std::optional<SensitivityMode> parse_sensitivity_mode(std::string_view name) {
  if (name == "short_time") return SensitivityMode::short_time;
  if (name == "super_revival") return SensitivityMode::super_revival;
  return std::nullopt;
}

std::string_view to_string(SensitivityMode mode) {
  return mode == SensitivityMode::short_time ? "short_time" : "super_revival";
}

std::vector<SensitivityPoint> sensitivity_curve(const PacketSpec& packet, std::span<const double> q2_list,
                                                SensitivityMode mode, const SystemConfig& base,
                                                bool measure_fringes) {
  packet.validate();
  std::vector<double> q2s(q2_list.begin(), q2_list.end());
  for (double q2 : q2s)
    if (!(q2 >= 0.0)) throw ContractError("sensitivity_curve: q^2 >= 0 required");
  std::sort(q2s.begin(), q2s.end());

  SystemConfig reference_cfg = base;
  reference_cfg.q_squared = 0.0;
  const double reference_a = subplanck_dimension(packet, reference_cfg, 0.25).dim_a;

  std::vector<SensitivityPoint> curve;
  for (double q2 : q2s) {
    if (mode == SensitivityMode::super_revival && q2 == 0.0) continue;
    SystemConfig cfg = base;
    cfg.q_squared = q2;
    const double t = mode == SensitivityMode::short_time ? 0.25 : (1.0 / q2) / 4.0;
    SensitivityPoint point;
    point.q_squared = q2;
    point.report = subplanck_dimension(packet, cfg, t, measure_fringes);
    point.delta = point.report.dim_a / reference_a;
    curve.push_back(point);
  }
  return curve;
}

}  // namespace boxrevive
