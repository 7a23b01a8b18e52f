#include "boxrevive/wavepacket.hpp"

#include <cmath>
#include <string>

#include "boxrevive/error.hpp"

namespace boxrevive {

void PacketSpec::validate() const {
  if (!(x_bar > 0.0 && x_bar < 1.0))
    throw ContractError("x_bar in (0, 1) required (got " + format_number(x_bar) + ")");
  if (!(delta_x > 0.0) || !std::isfinite(delta_x))
    throw ContractError("delta_x > 0 required (got " + format_number(delta_x) + ")");
  if (!std::isfinite(p_bar)) throw ContractError("p_bar must be finite");
}

bool PacketSpec::clears_walls() const { return x_bar - 3.0 * delta_x > 0.0 && x_bar + 3.0 * delta_x < 1.0; }

EigenExpansion::EigenExpansion(PacketSpec packet, int n_min, std::vector<complex> coefficients)
    : packet_(packet), n_min_(n_min), coefficients_(std::move(coefficients)), captured_norm_(0.0) {
  if (n_min_ < 1) throw ContractError("EigenExpansion: n_min >= 1 required");
  if (coefficients_.empty()) throw ContractError("EigenExpansion: empty coefficient range");
  for (const auto& a : coefficients_) captured_norm_ += std::norm(a);
}

complex EigenExpansion::coefficient(int n) const noexcept {
  if (n < n_min() || n > n_max()) return {0.0, 0.0};
  return coefficients_[static_cast<std::size_t>(n - n_min_)];
}

complex gaussian_overlap(int n, const PacketSpec& packet) {
  const double dx = packet.delta_x;
  const double k = n * kPi;
  const double prefactor = 0.5 * std::sqrt(4.0 * dx * std::sqrt(kPi));
  const double plus = std::exp(-0.5 * dx * dx * (packet.p_bar + k) * (packet.p_bar + k));
  const double minus = std::exp(-0.5 * dx * dx * (packet.p_bar - k) * (packet.p_bar - k));
  const double half_cycles = 0.5 * n * packet.x_bar;  // n pi x_bar = 2 pi (n x_bar / 2)
  const complex bracket = cis_cycles(half_cycles) * plus - cis_cycles(-half_cycles) * minus;
  // 1/(2i) = -i/2
  return complex{0.0, -prefactor} * bracket;
}

EigenExpansion expand(const PacketSpec& packet, const SystemConfig& cfg) {
  packet.validate();
  cfg.validate();
  const double eps = cfg.truncation_epsilon;
  const double tail = eps / 100.0;

  std::vector<complex> all;
  double cumulative = 0.0;
  int quiet_run = 0;
  bool converged = false;
  for (int n = 1; n <= cfg.n_max_cap; ++n) {
    const complex a = gaussian_overlap(n, packet);
    all.push_back(a);
    const double pop = std::norm(a);
    cumulative += pop;
    quiet_run = pop < tail ? quiet_run + 1 : 0;
    if (cumulative > 1.0 - eps && quiet_run >= 3) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw TruncationError("expand: basis cap n_max_cap = " + std::to_string(cfg.n_max_cap) +
                              " reached with captured norm " + format_number(cumulative) +
                              " <= 1 - eps = " + format_number(1.0 - eps),
                          cumulative, cfg.n_max_cap);
  }

  std::size_t first = 0;
  while (first < all.size() && std::norm(all[first]) <= tail) ++first;
  std::size_t last = all.size();
  while (last > first && std::norm(all[last - 1]) <= tail) --last;
  if (first < last) {
    std::vector<complex> kept(all.begin() + static_cast<std::ptrdiff_t>(first),
                              all.begin() + static_cast<std::ptrdiff_t>(last));
    EigenExpansion trimmed(packet, static_cast<int>(first) + 1, std::move(kept));
    if (trimmed.captured_norm() > 1.0 - eps) return trimmed;
  }
  return EigenExpansion(packet, 1, std::move(all));
}

EvolvedState::EvolvedState(EigenExpansion expansion, double t, SystemConfig cfg)
    : expansion_(std::move(expansion)), time_(t), cfg_(cfg) {
  if (!std::isfinite(t)) throw ContractError("evolve: time must be finite");
  const auto coeffs = expansion_.coefficients();
  amplitudes_.resize(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const int n = expansion_.n_min() + static_cast<int>(k);
    amplitudes_[k] = coeffs[k] * cis_cycles(-eigenphase_cycles(n, t, cfg_.q_squared));
  }
}

double EvolvedState::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

complex EvolvedState::psi(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) return {0.0, 0.0};
  complex s{0.0, 0.0};
  for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
    const int n = n_min() + static_cast<int>(k);
    s += amplitudes_[k] * (std::numbers::sqrt2 * sin_pi(n * x));
  }
  return s;
}

std::vector<complex> EvolvedState::psi(std::span<const double> x) const {
  const EigenBasisTable table(x, n_min(), n_max());
  std::vector<complex> out(x.size());
  table.synthesize(amplitudes_, out);
  return out;
}

EvolvedState evolve(const EigenExpansion& expansion, double t, const SystemConfig& cfg) {
  return EvolvedState(expansion, t, cfg);
}

EigenBasisTable::EigenBasisTable(std::span<const double> x, int n_min, int n_max)
    : points_(x.size()), n_min_(n_min), n_max_(n_max) {
  if (n_min < 1 || n_max < n_min) throw ContractError("EigenBasisTable: invalid n range");
  const std::size_t width = static_cast<std::size_t>(n_max - n_min + 1);
  values_.assign(points_ * width, 0.0);
  for (std::size_t j = 0; j < points_; ++j) {
    if (!(x[j] >= 0.0 && x[j] <= 1.0)) continue;  // zero extension outside the box
    for (std::size_t k = 0; k < width; ++k) {
      const int n = n_min + static_cast<int>(k);
      values_[j * width + k] = std::numbers::sqrt2 * sin_pi(n * x[j]);
    }
  }
}

void EigenBasisTable::synthesize(std::span<const complex> amplitudes, std::span<complex> out) const {
  const std::size_t width = static_cast<std::size_t>(n_max_ - n_min_ + 1);
  if (amplitudes.size() != width || out.size() != points_)
    throw ContractError("EigenBasisTable::synthesize: size mismatch");
  for (std::size_t j = 0; j < points_; ++j) {
    const double* u = values_.data() + j * width;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      re += amplitudes[k].real() * u[k];
      im += amplitudes[k].imag() * u[k];
    }
    out[j] = {re, im};
  }
}

std::vector<double> position_density(const EvolvedState& state, std::span<const double> x_grid) {
  for (double x : x_grid)
    if (!(x >= 0.0 && x <= 1.0)) throw ContractError("position_density: grid points in [0, 1] required");
  const auto psi = state.psi(x_grid);
  std::vector<double> rho(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) rho[j] = std::norm(psi[j]);
  return rho;
}

double required_momentum_half_range(const PacketSpec& packet) {
  return std::fabs(packet.p_bar) + 6.0 / packet.delta_x;
}

std::vector<double> default_momentum_grid(const PacketSpec& packet, int samples) {
  return symmetric_grid(std::fabs(packet.p_bar) + 8.0 / packet.delta_x, samples);
}

namespace {

// int_0^1 e^{ikx} dx
complex unit_interval_transform(double k) {
  if (std::fabs(k) < 1e-8) return {1.0, 0.5 * k};
  const double s = std::sin(0.5 * k);
  return {std::sin(k) / k, 2.0 * s * s / k};
}

// int_0^1 sin(n pi x) e^{-ipx} dx
complex sine_mode_transform(int n, double p) {
  const double k = n * kPi;
  const complex diff = unit_interval_transform(k - p) - unit_interval_transform(-k - p);
  return diff / complex{0.0, 2.0};
}

}  // namespace

complex momentum_amplitude_at(const EvolvedState& state, double p) {
  const auto amps = state.amplitudes();
  complex s{0.0, 0.0};
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const int n = state.n_min() + static_cast<int>(k);
    s += amps[k] * sine_mode_transform(n, p);
  }
  return s * (std::numbers::sqrt2 / std::sqrt(2.0 * kPi));
}

std::vector<complex> momentum_amplitude(const EvolvedState& state, std::span<const double> p_grid) {
  if (p_grid.size() < 2) throw CoverageError("momentum_amplitude: grid needs at least two points");
  const double scale = std::max(std::fabs(p_grid.front()), std::fabs(p_grid.back()));
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    if (std::fabs(p_grid[j] + p_grid[p_grid.size() - 1 - j]) > 1e-12 * scale)
      throw CoverageError("momentum_amplitude: p grid must be symmetric about 0");
  }
  const double need = required_momentum_half_range(state.expansion().packet());
  if (p_grid.back() < need * (1.0 - 1e-12))
    throw CoverageError("momentum_amplitude: p grid half range " + format_number(p_grid.back()) +
                        " does not cover |p_bar| + 6/delta_x = " + format_number(need));
  std::vector<complex> phi(p_grid.size());
  for (std::size_t j = 0; j < p_grid.size(); ++j) phi[j] = momentum_amplitude_at(state, p_grid[j]);
  return phi;
}

complex autocorrelation(const EigenExpansion& expansion, double t, const SystemConfig& cfg) {
  const auto coeffs = expansion.coefficients();
  complex s{0.0, 0.0};
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const int n = expansion.n_min() + static_cast<int>(k);
    s += std::norm(coeffs[k]) * cis_cycles(-eigenphase_cycles(n, t, cfg.q_squared));
  }
  return s;
}

Moments position_moments(const EvolvedState& state, int samples) {
  const auto x = uniform_grid(0.0, 1.0, samples);
  const auto rho = position_density(state, x);
  return distribution_moments(x, rho);
}

Moments momentum_moments(const EvolvedState& state, std::span<const double> p_grid) {
  const auto phi = momentum_amplitude(state, p_grid);
  std::vector<double> w(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) w[j] = std::norm(phi[j]);
  return distribution_moments(p_grid, w);
}

Moments momentum_moments(const EvolvedState& state) {
  const auto grid = default_momentum_grid(state.expansion().packet());
  return momentum_moments(state, grid);
}

}  // namespace boxrevive
