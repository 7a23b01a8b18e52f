#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "boxrevive/wavepacket.hpp"

namespace boxrevive {

/// Sub-Planck scale of the phase-space structure at one time.
struct SubPlanckReport {
  double time = 0.0;
  double q_squared = 0.0;
  double delta_x_eff = 0.0;
  double delta_p_eff = 0.0;
  double action_A = 0.0;  // Delta x Delta p, units of hbar
  double dim_a = 0.0;     // hbar^2 / A, units of hbar
  double captured_norm = 0.0;
  std::optional<double> fringe_spacing_p;
};

/// Moment estimator: Delta x from the position density, Delta p from
/// |phi(p)|^2, A = Delta x Delta p and a = 1/A. With `measure_fringes` the
/// period of W(x_bar, p) over |p| <= |p_bar|/2 is reported separately.
SubPlanckReport subplanck_dimension(const PacketSpec& packet, const SystemConfig& cfg, double t,
                                    bool measure_fringes = false);
SubPlanckReport subplanck_dimension(const EvolvedState& state, bool measure_fringes = false);

enum class SensitivityMode {
  short_time,     // t = T_rev / 4
  super_revival,  // t = T_sr4 / 4, q^2 = 0 skipped
};

std::optional<SensitivityMode> parse_sensitivity_mode(std::string_view name);
std::string_view to_string(SensitivityMode mode);

struct SensitivityPoint {
  double q_squared = 0.0;
  double delta = 0.0;  // a_q(t_mode) / a(q^2 = 0, t = 1/4)
  SubPlanckReport report;
};

/// delta(q^2) for each requested q^2, sorted by q^2. `base` supplies the
/// truncation policy; its q_squared is ignored.
std::vector<SensitivityPoint> sensitivity_curve(const PacketSpec& packet, std::span<const double> q2_list,
                                                SensitivityMode mode, const SystemConfig& base = {},
                                                bool measure_fringes = false);

}  // namespace boxrevive
