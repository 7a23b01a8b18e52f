#pragma once

#include <span>
#include <vector>

#include "boxrevive/field.hpp"
#include "boxrevive/wavepacket.hpp"

namespace boxrevive {

inline constexpr int kDefaultCarpetTimes = 512;
inline constexpr int kDefaultCarpetPositions = 512;

struct CarpetRequest {
  double t0 = 0.0;
  double t1 = 0.5;
  int nt = kDefaultCarpetTimes;
  int nx = kDefaultCarpetPositions;

  void validate() const;
};

/// |psi(x_j, t_i)|^2 on a time x position grid. Rows are time slices (units of
/// T_rev) starting at t0; nt = 1 yields the single slice at t0.
Field2D carpet(const EigenExpansion& expansion, const SystemConfig& cfg, const CarpetRequest& request);
Field2D carpet(const PacketSpec& packet, const SystemConfig& cfg, const CarpetRequest& request);

/// Per-row <x> = int x rho dx / int rho dx. Throws NumericalError on a zero-norm row.
std::vector<double> centroid_trace(const Field2D& field);

/// Frequency (cycles per unit of the sample spacing) maximizing the
/// periodogram of the mean-removed samples. Scans [f_min, f_max] with `steps`
/// evaluations and refines the best bin by a parabola.
double dominant_frequency(std::span<const double> samples, double dt, double f_min, double f_max,
                          int steps = 20000);

/// Interior strict local maxima (v[i-1] < v[i] >= v[i+1]).
std::vector<std::size_t> local_maxima(std::span<const double> v);

}  // namespace boxrevive
