#include "boxrevive/carpet.hpp"

#include <cmath>
#include <string>

#include "boxrevive/error.hpp"
#include "boxrevive/parallel.hpp"

namespace boxrevive {

void CarpetRequest::validate() const {
  if (!(t0 >= 0.0)) throw ContractError("carpet: t0 >= 0 required");
  if (nt < 1) throw ContractError("carpet: nt >= 1 required");
  if (nt > 1 && !(t1 > t0)) throw ContractError("carpet: t1 > t0 required");
  if (nx < 2) throw ContractError("carpet: nx >= 2 required");
}

Field2D carpet(const EigenExpansion& expansion, const SystemConfig& cfg, const CarpetRequest& request) {
  request.validate();
  cfg.validate();
  Field2D field(Axis{"t", "T_rev", uniform_grid(request.t0, request.t1, request.nt)},
                Axis{"x", "L", uniform_grid(0.0, 1.0, request.nx)}, "probability density", "1/L");
  const EigenBasisTable basis(field.cols().samples, expansion.n_min(), expansion.n_max());
  parallel_for(field.row_count(), [&](std::size_t i) {
    const EvolvedState state(expansion, field.rows().samples[i], cfg);
    std::vector<complex> psi(field.col_count());
    basis.synthesize(state.amplitudes(), psi);
    auto row = field.row(i);
    for (std::size_t j = 0; j < psi.size(); ++j) row[j] = std::norm(psi[j]);
  });
  return field;
}

Field2D carpet(const PacketSpec& packet, const SystemConfig& cfg, const CarpetRequest& request) {
  request.validate();
  return carpet(expand(packet, cfg), cfg, request);
}

std::vector<double> centroid_trace(const Field2D& field) {
  std::vector<double> trace(field.row_count());
  for (std::size_t i = 0; i < field.row_count(); ++i) {
    const auto row = field.row(i);
    const double norm = trapezoid(field.cols().samples, row);
    if (!(norm > 0.0))
      throw NumericalError("centroid_trace: row " + std::to_string(i) + " has zero norm");
    trace[i] = distribution_moments(field.cols().samples, row).mean;
  }
  return trace;
}

namespace {

double periodogram(std::span<const double> centered, double dt, double f) {
  complex s{0.0, 0.0};
  for (std::size_t i = 0; i < centered.size(); ++i) s += centered[i] * cis_cycles(-f * dt * static_cast<double>(i));
  return std::norm(s);
}

}  // namespace

double dominant_frequency(std::span<const double> samples, double dt, double f_min, double f_max, int steps) {
  if (samples.size() < 3) throw ContractError("dominant_frequency: need at least three samples");
  if (!(dt > 0.0) || !(f_max > f_min) || steps < 3) throw ContractError("dominant_frequency: invalid scan");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  std::vector<double> centered(samples.begin(), samples.end());
  for (double& v : centered) v -= mean;

  const auto freqs = uniform_grid(f_min, f_max, steps);
  std::vector<double> power(freqs.size());
  parallel_for(freqs.size(), [&](std::size_t k) { power[k] = periodogram(centered, dt, freqs[k]); });
  std::size_t best = 0;
  for (std::size_t k = 1; k < power.size(); ++k)
    if (power[k] > power[best]) best = k;
  if (best == 0 || best + 1 == power.size()) return freqs[best];
  const double a = power[best - 1], b = power[best], c = power[best + 1];
  const double denom = a - 2.0 * b + c;
  const double shift = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
  return freqs[best] + shift * (freqs[1] - freqs[0]);
}

std::vector<std::size_t> local_maxima(std::span<const double> v) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i - 1] < v[i] && v[i] >= v[i + 1]) idx.push_back(i);
  return idx;
}

}  // namespace boxrevive
