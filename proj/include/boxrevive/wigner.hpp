#pragma once

#include <optional>
#include <span>
#include <vector>

#include "boxrevive/field.hpp"
#include "boxrevive/wavepacket.hpp"

namespace boxrevive {

inline constexpr int kDefaultWignerPositions = 256;
inline constexpr int kDefaultWignerMomenta = 256;
inline constexpr int kMinReconstructionSamples = 2048;
inline constexpr double kWignerMarginalTolerance = 1e-3;

/// Momentum half range a Wigner grid must span: |p_bar| + 3/delta_x.
double wigner_required_half_range(const PacketSpec& packet);

struct WignerRequest {
  int nx = kDefaultWignerPositions;
  int np = kDefaultWignerMomenta;
  std::optional<double> p_half_range;  // defaults to wigner_required_half_range
  int min_reconstruction_samples = kMinReconstructionSamples;

  void validate() const;
};

/// W(x, p) on x in [0, 1] (rows) and a symmetric p grid (cols).
struct WignerField {
  Field2D field;
  double time = 0.0;
  double captured_norm = 0.0;
  double reconstruction_step = 0.0;  // x' step h
  int reconstruction_samples = 0;    // fine grid intervals over [0, 1]
  double max_imaginary_residue = 0.0;

  double min_value() const { return field.min_value(); }
};

/// W(x,p) = (1/pi) int psi*(x-x') psi(x+x') e^{-2ipx'} dx' with psi zero outside
/// the box, so |x'| <= min(x, 1-x). psi is reconstructed on a fine grid that
/// contains every output x, and the x' integral is a direct sum at each p.
/// Throws CoverageError if the p grid misses +-wigner_required_half_range and
/// NumericalError if the transform leaves an imaginary residue above 1e-10.
WignerField wigner(const EvolvedState& state, const WignerRequest& request = {});

/// W at a single position for arbitrary momenta, with x' step `step`.
std::vector<double> wigner_line(const EvolvedState& state, double x, std::span<const double> p,
                                double step = 1.0 / kMinReconstructionSamples);

/// int W dp for every x row.
std::vector<double> position_marginal(const WignerField& w);
/// int W dx for every p column.
std::vector<double> momentum_marginal(const WignerField& w);
/// int int W dx dp.
double integral(const WignerField& w);
/// int int W^2 dx dp.
double squared_integral(const WignerField& w);

struct MarginalReport {
  double position_error = 0.0;  // sup |int W dp - |psi|^2|
  double momentum_error = 0.0;  // sup |int W dx - |phi|^2|
  double norm_error = 0.0;      // |int int W - captured_norm|

  bool within(double tol) const {
    return position_error < tol && momentum_error < tol && norm_error < tol;
  }
};

/// Compares the marginals against |psi|^2 and the exact |phi|^2 of `state`.
MarginalReport check_marginals(const WignerField& w, const EvolvedState& state);

/// int int Wa Wb / sqrt(int int Wa^2 int int Wb^2). Throws ContractError when
/// the grids differ.
double wigner_overlap(const WignerField& a, const WignerField& b);

/// int int |W| dx dp - captured_norm.
double negativity_volume(const WignerField& w);

/// Twice the mean gap between consecutive sign changes of `values`, with the
/// crossings located by linear interpolation. Absent with fewer than two crossings.
std::optional<double> zero_crossing_period(std::span<const double> coords,
                                           std::span<const double> values);

}  // namespace boxrevive
