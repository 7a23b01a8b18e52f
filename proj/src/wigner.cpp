#include "boxrevive/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boxrevive/error.hpp"
#include "boxrevive/parallel.hpp"

namespace boxrevive {

double wigner_required_half_range(const PacketSpec& packet) { return std::fabs(packet.p_bar) + 3.0 / packet.delta_x; }

void WignerRequest::validate() const {
  if (nx < 2) throw ContractError("wigner: nx >= 2 required");
  if (np < 2) throw ContractError("wigner: np >= 2 required");
  if (p_half_range && !(*p_half_range > 0.0)) throw ContractError("wigner: p half range > 0 required");
  if (min_reconstruction_samples < 2) throw ContractError("wigner: reconstruction samples >= 2 required");
}

namespace {

inline constexpr double kMaxImaginaryResidue = 1e-10;

// e^{-2 i p x'} for x' = m h
complex kernel(double p, double x_prime) { return cis_cycles(-p * x_prime / kPi); }

}  // namespace

WignerField wigner(const EvolvedState& state, const WignerRequest& request) {
  request.validate();
  const double need = wigner_required_half_range(state.expansion().packet());
  const double half_range = request.p_half_range.value_or(need);
  if (half_range < need * (1.0 - 1e-12))
    throw CoverageError("wigner: p grid half range " + format_number(half_range) +
                        " does not cover |p_bar| + 3/delta_x = " + format_number(need));

  const int refine = (request.min_reconstruction_samples + request.nx - 2) / (request.nx - 1);
  const int intervals = (request.nx - 1) * refine;
  const double h = 1.0 / intervals;
  const auto fine = uniform_grid(0.0, 1.0, intervals + 1);
  const auto psi = state.psi(fine);

  Axis x_axis{"x", "L", {}};
  x_axis.samples.reserve(static_cast<std::size_t>(request.nx));
  for (int i = 0; i < request.nx; ++i) x_axis.samples.push_back(fine[static_cast<std::size_t>(i * refine)]);
  Axis p_axis{"p", "hbar/L", symmetric_grid(half_range, request.np)};

  WignerField w{Field2D(std::move(x_axis), std::move(p_axis), "Wigner function", "1/hbar"), state.time(),
                state.expansion().captured_norm(), h, intervals, 0.0};
  const auto& p = w.field.cols().samples;
  const std::size_t np = p.size();
  const std::size_t half = static_cast<std::size_t>(intervals / 2) + 1;

  std::vector<complex> phasor(np * half);
  parallel_for(np, [&](std::size_t j) {
    for (std::size_t m = 0; m < half; ++m) phasor[j * half + m] = kernel(p[j], static_cast<double>(m) * h);
  });

  std::vector<double> residue(w.field.row_count(), 0.0);
  parallel_for(w.field.row_count(), [&](std::size_t i) {
    const std::size_t c = i * static_cast<std::size_t>(refine);
    const std::size_t reach = std::min(c, static_cast<std::size_t>(intervals) - c);
    std::vector<complex> forward(reach + 1), backward(reach + 1);
    for (std::size_t m = 0; m <= reach; ++m) {
      forward[m] = std::conj(psi[c - m]) * psi[c + m];   // x' = +m h
      backward[m] = std::conj(psi[c + m]) * psi[c - m];  // x' = -m h
    }
    auto row = w.field.row(i);
    double worst = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const complex* e = phasor.data() + j * half;
      complex s = forward[0];
      for (std::size_t m = 1; m <= reach; ++m) s += forward[m] * e[m] + backward[m] * std::conj(e[m]);
      s *= h / kPi;
      row[j] = s.real();
      worst = std::max(worst, std::fabs(s.imag()));
    }
    residue[i] = worst;
  });
  w.max_imaginary_residue = *std::max_element(residue.begin(), residue.end());
  if (w.max_imaginary_residue > kMaxImaginaryResidue)
    throw NumericalError("wigner: imaginary residue " + format_number(w.max_imaginary_residue) + " exceeds 1e-10");
  return w;
}

std::vector<double> wigner_line(const EvolvedState& state, double x, std::span<const double> p, double step) {
  if (!(x >= 0.0 && x <= 1.0)) throw ContractError("wigner_line: x in [0, 1] required");
  if (!(step > 0.0)) throw ContractError("wigner_line: step > 0 required");
  const auto reach = static_cast<std::size_t>(std::floor(std::min(x, 1.0 - x) / step + 1e-9));
  std::vector<double> pts(2 * reach + 1);
  for (std::size_t m = 0; m <= reach; ++m) {
    pts[reach + m] = std::min(1.0, x + static_cast<double>(m) * step);
    pts[reach - m] = std::max(0.0, x - static_cast<double>(m) * step);
  }
  const auto psi = state.psi(pts);
  std::vector<double> out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    double s = std::norm(psi[reach]);
    for (std::size_t m = 1; m <= reach; ++m) {
      const complex f = std::conj(psi[reach - m]) * psi[reach + m];
      s += 2.0 * (f * kernel(p[j], static_cast<double>(m) * step)).real();
    }
    out[j] = s * step / kPi;
  }
  return out;
}

namespace {

template <typename F>
double phase_space_integral(const Field2D& f, F&& transform) {
  const auto& x = f.rows().samples;
  const auto& p = f.cols().samples;
  std::vector<double> inner(f.row_count());
  std::vector<double> tmp(f.col_count());
  for (std::size_t i = 0; i < f.row_count(); ++i) {
    const auto row = f.row(i);
    for (std::size_t j = 0; j < tmp.size(); ++j) tmp[j] = transform(i, j, row[j]);
    inner[i] = trapezoid(p, tmp);
  }
  return trapezoid(x, inner);
}

}  // namespace

std::vector<double> position_marginal(const WignerField& w) {
  std::vector<double> m(w.field.row_count());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = trapezoid(w.field.cols().samples, w.field.row(i));
  return m;
}

std::vector<double> momentum_marginal(const WignerField& w) {
  std::vector<double> m(w.field.col_count());
  std::vector<double> column(w.field.row_count());
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t i = 0; i < column.size(); ++i) column[i] = w.field(i, j);
    m[j] = trapezoid(w.field.rows().samples, column);
  }
  return m;
}

double integral(const WignerField& w) {
  return phase_space_integral(w.field, [](std::size_t, std::size_t, double v) { return v; });
}

double squared_integral(const WignerField& w) {
  return phase_space_integral(w.field, [](std::size_t, std::size_t, double v) { return v * v; });
}

MarginalReport check_marginals(const WignerField& w, const EvolvedState& state) {
  MarginalReport r;
  const auto px = position_marginal(w);
  const auto psi = state.psi(w.field.rows().samples);
  for (std::size_t i = 0; i < px.size(); ++i) r.position_error = std::max(r.position_error, std::fabs(px[i] - std::norm(psi[i])));
  const auto pp = momentum_marginal(w);
  const auto& p = w.field.cols().samples;
  for (std::size_t j = 0; j < pp.size(); ++j)
    r.momentum_error = std::max(r.momentum_error, std::fabs(pp[j] - std::norm(momentum_amplitude_at(state, p[j]))));
  r.norm_error = std::fabs(integral(w) - w.captured_norm);
  return r;
}

double wigner_overlap(const WignerField& a, const WignerField& b) {
  if (a.field.rows().samples != b.field.rows().samples || a.field.cols().samples != b.field.cols().samples)
    throw ContractError("wigner_overlap: fields are sampled on different grids");
  const double ab =
      phase_space_integral(a.field, [&](std::size_t i, std::size_t j, double v) { return v * b.field(i, j); });
  const double norm = std::sqrt(squared_integral(a) * squared_integral(b));
  if (!(norm > 0.0)) throw NumericalError("wigner_overlap: zero field");
  return std::clamp(ab / norm, -1.0, 1.0);
}

double negativity_volume(const WignerField& w) {
  return phase_space_integral(w.field, [](std::size_t, std::size_t, double v) { return std::fabs(v); }) -
         w.captured_norm;
}

std::optional<double> zero_crossing_period(std::span<const double> coords, std::span<const double> values) {
  if (coords.size() != values.size()) throw ContractError("zero_crossing_period: size mismatch");
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double a = values[i], b = values[i + 1];
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      const double frac = a / (a - b);
      crossings.push_back(coords[i] + frac * (coords[i + 1] - coords[i]));
    }
  }
  if (crossings.size() < 2) return std::nullopt;
  const double mean_gap = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return 2.0 * mean_gap;
}

}  // namespace boxrevive
