#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "boxrevive/wavepacket.hpp"

namespace boxrevive {

/// Reduced fraction with positive denominator.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction reduced(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return a.num * b.den < b.num * a.den;
  }
};

enum class RevivalKind { classical, revival, super3, super4 };
std::string_view to_string(RevivalKind kind);

/// t = (r2/s2) T_sr4 = (r1/s1) T_sr3 with both fractions reduced.
struct RevivalPrediction {
  double time = 0.0;      // units of T_rev
  Fraction on_sr3;        // r1 / s1
  Fraction on_sr4;        // r2 / s2
  RevivalKind kind = RevivalKind::super4;
};

/// Every r2/s2 with 1 <= r2 < s2 <= s_max, gcd(r2, s2) = 1, mapped onto the
/// T_sr3 clock through T_sr4 = 4 n_bar T_sr3. Strictly increasing in time.
/// Throws ContractError for q^2 = 0 or s_max < 2.
std::vector<RevivalPrediction> enumerate_fractional(int n_bar, const SystemConfig& cfg, int s_max);

struct FidelitySample {
  double t = 0.0;
  double fidelity = 0.0;  // |A(t)|
};

struct FidelityScan {
  std::vector<FidelitySample> samples;
  std::vector<FidelitySample> peaks;  // refined, sorted by time
  double captured_norm = 0.0;
  double threshold = 0.0;

  /// Peak with the largest fidelity. Throws NumericalError when there is none.
  const FidelitySample& top_peak() const;
};

inline constexpr double kPeakThresholdFraction = 0.8;

/// |A(t)| on nt uniform samples of [t0, t1]. Local maxima above
/// threshold_fraction * captured_norm are refined by successive parabolic
/// interpolation starting from the neighbouring samples.
FidelityScan fidelity_scan(const EigenExpansion& expansion, const SystemConfig& cfg, double t0, double t1,
                           int nt, double threshold_fraction = kPeakThresholdFraction);
FidelityScan fidelity_scan(const PacketSpec& packet, const SystemConfig& cfg, double t0, double t1, int nt,
                           double threshold_fraction = kPeakThresholdFraction);

}  // namespace boxrevive
