#pragma once

#include <span>
#include <string>
#include <vector>

#include "boxrevive/numeric.hpp"
#include "boxrevive/spectrum.hpp"

namespace boxrevive {

/// Initial Gaussian packet in box units.
struct PacketSpec {
  double x_bar = 0.5;
  double delta_x = 0.1;
  double p_bar = 50.0;

  /// Throws ContractError unless 0 < x_bar < 1 and delta_x > 0.
  void validate() const;

  /// x_bar -/+ 3 delta_x stays inside the box. Failing this is a warning only.
  bool clears_walls() const;
};

inline constexpr int kDefaultPositionSamples = 1024;
inline constexpr int kDefaultMomentumSamples = 1024;

/// Truncated eigenexpansion of a packet. Coefficients outside
/// [n_min, n_max] are zero. The coefficients are the raw overlaps; no
/// renormalization is applied after truncation.
class EigenExpansion {
 public:
  EigenExpansion(PacketSpec packet, int n_min, std::vector<complex> coefficients);

  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_min_ + static_cast<int>(coefficients_.size()) - 1; }
  std::span<const complex> coefficients() const noexcept { return coefficients_; }
  complex coefficient(int n) const noexcept;
  double captured_norm() const noexcept { return captured_norm_; }
  const PacketSpec& packet() const noexcept { return packet_; }

 private:
  PacketSpec packet_;
  int n_min_;
  std::vector<complex> coefficients_;
  double captured_norm_;
};

/// Overlap <u_n|psi_0> of the Gaussian packet with eigenstate n, valid when
/// the packet is well inside the box.
complex gaussian_overlap(int n, const PacketSpec& packet);

/// Adds coefficients with increasing n until the cumulative population exceeds
/// 1 - eps and three consecutive terms each fall below eps/100. The kept range
/// is trimmed to the terms above eps/100.
/// Throws TruncationError if n_max_cap is reached first.
EigenExpansion expand(const PacketSpec& packet, const SystemConfig& cfg);

/// Coefficients multiplied by their eigenphases at time t (units of T_rev).
class EvolvedState {
 public:
  EvolvedState(EigenExpansion expansion, double t, SystemConfig cfg);

  const EigenExpansion& expansion() const noexcept { return expansion_; }
  double time() const noexcept { return time_; }
  const SystemConfig& config() const noexcept { return cfg_; }

  /// a_n exp(-i E_n t), indexed by n - n_min.
  std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
  int n_min() const noexcept { return expansion_.n_min(); }
  int n_max() const noexcept { return expansion_.n_max(); }
  double norm() const noexcept;

  complex psi(double x) const;
  std::vector<complex> psi(std::span<const double> x) const;

 private:
  EigenExpansion expansion_;
  double time_;
  SystemConfig cfg_;
  std::vector<complex> amplitudes_;
};

EvolvedState evolve(const EigenExpansion& expansion, double t, const SystemConfig& cfg);

/// Eigenfunction values sqrt(2) sin(n pi x_j) for a fixed grid and n range,
/// reused across many time slices.
class EigenBasisTable {
 public:
  EigenBasisTable(std::span<const double> x, int n_min, int n_max);

  std::size_t size() const noexcept { return points_; }
  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_max_; }

  /// Fills out[j] = sum_n amplitudes[n - n_min] u_n(x_j).
  void synthesize(std::span<const complex> amplitudes, std::span<complex> out) const;

 private:
  std::size_t points_;
  int n_min_;
  int n_max_;
  std::vector<double> values_;  // [point][n]
};

/// |psi(x, t)|^2 at every grid point.
std::vector<double> position_density(const EvolvedState& state, std::span<const double> x_grid);

/// Half range of momentum grids that momentum_amplitude accepts: |p_bar| + 6/delta_x.
double required_momentum_half_range(const PacketSpec& packet);

/// Symmetric grid over +-(|p_bar| + 8/delta_x).
std::vector<double> default_momentum_grid(const PacketSpec& packet,
                                          int samples = kDefaultMomentumSamples);

/// phi(p) = (2 pi)^{-1/2} int_0^1 psi(x) e^{-ipx} dx, using the exact transform
/// of every sine mode. Throws CoverageError if the grid is not symmetric about
/// zero or misses +-required_momentum_half_range.
std::vector<complex> momentum_amplitude(const EvolvedState& state, std::span<const double> p_grid);

/// Exact transform without any grid policy; used where a single p is needed.
complex momentum_amplitude_at(const EvolvedState& state, double p);

/// <psi(0)|psi(t)> = sum_n |a_n|^2 exp(-i E_n t).
complex autocorrelation(const EigenExpansion& expansion, double t, const SystemConfig& cfg);

/// <x> and Delta x from the density on a uniform grid with `samples` points.
Moments position_moments(const EvolvedState& state, int samples = kDefaultPositionSamples);

/// <p> and Delta p from |phi(p)|^2 on the given grid.
Moments momentum_moments(const EvolvedState& state, std::span<const double> p_grid);
Moments momentum_moments(const EvolvedState& state);

}  // namespace boxrevive
