#include "boxrevive/revival.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boxrevive/error.hpp"
#include "boxrevive/parallel.hpp"

namespace boxrevive {

namespace {

inline constexpr int kRefinementPasses = 12;

}  // namespace

Fraction Fraction::reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ContractError("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

std::string_view to_string(RevivalKind kind) {
  switch (kind) {
    case RevivalKind::classical: return "classical";
    case RevivalKind::revival: return "revival";
    case RevivalKind::super3: return "super3";
    case RevivalKind::super4: return "super4";
  }
  return "unknown";
}

std::vector<RevivalPrediction> enumerate_fractional(int n_bar, const SystemConfig& cfg, int s_max) {
  cfg.validate();
  if (cfg.q_squared <= 0.0) throw ContractError("enumerate_fractional: q^2 > 0 required (super-revival clocks undefined)");
  if (s_max < 2) throw ContractError("enumerate_fractional: s_max >= 2 required");
  if (n_bar < 1) throw ContractError("enumerate_fractional: n_bar >= 1 required");
  const double t_sr4 = 1.0 / cfg.q_squared;

  std::vector<RevivalPrediction> out;
  for (std::int64_t s2 = 2; s2 <= s_max; ++s2) {
    for (std::int64_t r2 = 1; r2 < s2; ++r2) {
      if (std::gcd(r2, s2) != 1) continue;
      RevivalPrediction p;
      p.on_sr4 = Fraction{r2, s2};
      // t = (r2/s2) T_sr4 = (4 n_bar r2 / s2) T_sr3
      p.on_sr3 = Fraction::reduced(4 * static_cast<std::int64_t>(n_bar) * r2, s2);
      p.time = t_sr4 * p.on_sr4.value();
      p.kind = RevivalKind::super4;
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.on_sr4 < b.on_sr4; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.on_sr4 == b.on_sr4; }),
            out.end());
  return out;
}

const FidelitySample& FidelityScan::top_peak() const {
  if (peaks.empty()) throw NumericalError("fidelity_scan: no peak above threshold");
  return *std::max_element(peaks.begin(), peaks.end(),
                           [](const auto& a, const auto& b) { return a.fidelity < b.fidelity; });
}

FidelityScan fidelity_scan(const EigenExpansion& expansion, const SystemConfig& cfg, double t0, double t1, int nt,
                           double threshold_fraction) {
  cfg.validate();
  if (nt < 3) throw ContractError("fidelity_scan: nt >= 3 required");
  if (!(t1 > t0)) throw ContractError("fidelity_scan: t1 > t0 required");
  FidelityScan scan;
  scan.captured_norm = expansion.captured_norm();
  scan.threshold = threshold_fraction * scan.captured_norm;
  const auto t = uniform_grid(t0, t1, nt);
  scan.samples.resize(t.size());
  parallel_for(t.size(), [&](std::size_t i) {
    scan.samples[i] = {t[i], std::abs(autocorrelation(expansion, t[i], cfg))};
  });

  const double step = t[1] - t[0];
  const auto fidelity = [&](double tv) { return std::abs(autocorrelation(expansion, tv, cfg)); };
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    double a = scan.samples[i - 1].fidelity, b = scan.samples[i].fidelity, c = scan.samples[i + 1].fidelity;
    if (!(a < b && b >= c) || b < scan.threshold) continue;
    // Successive parabolic interpolation, shrinking the stencil around the vertex.
    double tc = t[i];
    double h = step;
    for (int iter = 0; iter < kRefinementPasses; ++iter) {
      const double denom = a - 2.0 * b + c;
      if (!(denom < 0.0)) break;
      tc += std::clamp(0.5 * (a - c) / denom, -1.0, 1.0) * h;
      h *= 0.25;
      if (h <= 1e-13 * std::max(1.0, std::fabs(tc))) break;
      a = fidelity(tc - h);
      b = fidelity(tc);
      c = fidelity(tc + h);
    }
    scan.peaks.push_back({tc, fidelity(tc)});
  }
  return scan;
}

FidelityScan fidelity_scan(const PacketSpec& packet, const SystemConfig& cfg, double t0, double t1, int nt,
                           double threshold_fraction) {
  return fidelity_scan(expand(packet, cfg), cfg, t0, t1, nt, threshold_fraction);
}

}  // namespace boxrevive
