#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "boxrevive/error.hpp"
#include "boxrevive/wigner.hpp"
#include "oracles.hpp"

using namespace boxrevive;

namespace {

SystemConfig with_q2(double q2) {
  SystemConfig cfg;
  cfg.q_squared = q2;
  return cfg;
}

const EigenExpansion& default_expansion() {
  static const EigenExpansion e = expand(PacketSpec{}, {});
  return e;
}

WignerField field_at(double q2, double t, WignerRequest req = {}) {
  return wigner(evolve(default_expansion(), t, with_q2(q2)), req);
}

std::size_t nearest(std::span<const double> axis, double v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (std::fabs(axis[i] - v) < std::fabs(axis[best] - v)) best = i;
  return best;
}

// W(x, p) by Simpson quadrature of the defining integral.
double wigner_by_quadrature(const oracle::NaiveState& psi, double x, double p) {
  const double r = std::min(x, 1.0 - x);
  if (r == 0.0) return 0.0;
  const std::function<double(double)> f = [&](double y) {
    return (std::conj(psi(x - y)) * psi(x + y) * std::polar(1.0, -2.0 * p * y)).real();
  };
  return oracle::simpson<double>(f, -r, r, 4000) / oracle::pi;
}

}  // namespace

TEST_CASE("initial packet gives the Gaussian Wigner function") {
  const WignerField w = field_at(0.0, 0.0);
  const auto& x = w.field.rows().samples;
  const auto& p = w.field.cols().samples;
  CHECK(w.field.row_count() == 256);
  CHECK(w.field.col_count() == 256);
  CHECK(p.back() == doctest::Approx(80.0));
  double peak = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double u = (x[i] - 0.5) / 0.1;
      const double v = 0.1 * (p[j] - 50.0);
      worst = std::max(worst, std::fabs(w.field(i, j) - std::exp(-u * u - v * v) / kPi));
      peak = std::max(peak, w.field(i, j));
    }
  CHECK(peak == doctest::Approx(1.0 / kPi).epsilon(0.05));
  CHECK(worst < 1e-3);
  CHECK(std::fabs(negativity_volume(w)) < 1e-3);
  CHECK(w.min_value() > -1e-3);
}

TEST_CASE("grid values agree with direct quadrature of the definition") {
  for (double q2 : {0.0, 1e-5}) {
    const double t = 0.25;
    const WignerField w = field_at(q2, t);
    auto c = default_expansion().coefficients();
    const oracle::NaiveState psi{default_expansion().n_min(), {c.begin(), c.end()}, q2, t};
    const auto& x = w.field.rows().samples;
    const auto& p = w.field.cols().samples;
    for (std::size_t i : {std::size_t{40}, std::size_t{100}, std::size_t{128}, std::size_t{190}})
      for (std::size_t j : {std::size_t{0}, std::size_t{60}, std::size_t{127}, std::size_t{200}})
        CHECK(std::fabs(w.field(i, j) - wigner_by_quadrature(psi, x[i], p[j])) < 1e-5);
  }
}

TEST_CASE("quarter revival cat: two lobes, midline fringes, negativity") {
  const WignerField w = field_at(0.0, 0.25);
  const auto& x = w.field.rows().samples;
  const auto& p = w.field.cols().samples;
  // Lobe maxima, searched away from the interference band around p = 0.
  std::size_t bi_pos = 0, bj_pos = nearest(p, 30.0), bi_neg = 0, bj_neg = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] > 30.0 && w.field(i, j) > w.field(bi_pos, bj_pos)) bi_pos = i, bj_pos = j;
      if (p[j] < -30.0 && w.field(i, j) > w.field(bi_neg, bj_neg)) bi_neg = i, bj_neg = j;
    }
  CHECK(std::fabs(x[bi_pos] - 0.5) < 0.02);
  CHECK(std::fabs(x[bi_neg] - 0.5) < 0.02);
  CHECK(std::fabs(p[bj_pos] - 50.0) < 2.0);
  CHECK(std::fabs(p[bj_neg] + 50.0) < 2.0);
  CHECK(w.field(bi_pos, bj_pos) == doctest::Approx(0.5 / kPi).epsilon(0.05));

  // Between the lobes W oscillates in x with both signs.
  const std::size_t j0 = nearest(p, 0.0);
  int sign_changes = 0;
  for (std::size_t i = nearest(x, 0.4); i < nearest(x, 0.6); ++i)
    if ((w.field(i, j0) < 0.0) != (w.field(i + 1, j0) < 0.0)) ++sign_changes;
  CHECK(sign_changes >= 4);

  CHECK(negativity_volume(w) > 0.1);
  CHECK(w.min_value() < -0.05);
}

namespace {

void check_field_contracts(const EvolvedState& s, const WignerRequest& req) {
  const WignerField w = wigner(s, req);
  const MarginalReport m = check_marginals(w, s);
  CHECK(m.position_error < kWignerMarginalTolerance);
  CHECK(m.momentum_error < kWignerMarginalTolerance);
  CHECK(m.norm_error < kWignerMarginalTolerance);
  CHECK(m.within(kWignerMarginalTolerance));
  CHECK(w.max_imaginary_residue < 1e-10);
  CHECK(negativity_volume(w) >= -1e-3);
  CHECK(w.reconstruction_samples >= req.min_reconstruction_samples);
  CHECK(w.reconstruction_samples % (req.nx - 1) == 0);
}

}  // namespace

TEST_CASE("marginals, normalization and realness for states away from the walls") {
  struct Case {
    double q2, t;
  };
  for (const Case c : {Case{0.0, 0.0}, Case{0.0, 0.25}, Case{0.0, 0.5}, Case{0.0, 0.75}, Case{1e-5, 0.25},
                       Case{5e-4, 500.0}, Case{5e-4, 2000.0}}) {
    CAPTURE(c.q2);
    CAPTURE(c.t);
    check_field_contracts(evolve(default_expansion(), c.t, with_q2(c.q2)), {});
  }
}

TEST_CASE("marginals hold for spread states once the momentum range reaches the wall tails") {
  // Near a wall the x' window shrinks to min(x, 1-x), so W spreads in p as
  // that window narrows. The x marginal converges like 1/P^2 in the half range.
  WignerRequest wide;
  wide.p_half_range = 1280.0;
  wide.np = 4096;
  struct Case {
    double q2, t;
  };
  for (const Case c : {Case{0.0, 0.37}, Case{5e-4, 0.25}}) {
    CAPTURE(c.q2);
    CAPTURE(c.t);
    const EvolvedState s = evolve(default_expansion(), c.t, with_q2(c.q2));
    check_field_contracts(s, wide);
    const WignerField narrow = wigner(s);
    CHECK(check_marginals(narrow, s).position_error > kWignerMarginalTolerance);
  }
}

TEST_CASE("marginal comparison uses an independent momentum density") {
  const EvolvedState s = evolve(default_expansion(), 0.25, {});
  const WignerField w = wigner(s);
  const auto pm = momentum_marginal(w);
  auto c = default_expansion().coefficients();
  const oracle::NaiveState psi{default_expansion().n_min(), {c.begin(), c.end()}, 0.0, 0.25};
  const auto& p = w.field.cols().samples;
  for (std::size_t j = 0; j < p.size(); j += 23)
    CHECK(std::fabs(pm[j] - std::norm(oracle::momentum_by_quadrature(psi, p[j], 2000))) < 1e-3);
}

TEST_CASE("overlap properties") {
  const WignerField a = field_at(0.0, 0.25);
  const WignerField b = field_at(5e-4, 0.25);
  CHECK(wigner_overlap(a, a) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(wigner_overlap(a, b) == wigner_overlap(b, a));
  CHECK(wigner_overlap(a, b) < 0.5);
  CHECK(wigner_overlap(field_at(0.0, 0.0), field_at(0.0, 1.0)) > 1.0 - 1e-6);

  WignerRequest other;
  other.np = 128;
  CHECK_THROWS_AS(wigner_overlap(a, field_at(0.0, 0.25, other)), ContractError);
}

TEST_CASE("quarter super revival is the mirror cat") {
  // At t_sr4/4 = 500 every phase equals exp(-2 pi i (500 n^2 - n^4 / 4)), which
  // is the q = 0 phase at t = 3/4 up to a global factor: the cat with its
  // lobes exchanged rather than the t = 1/4 cat.
  const WignerField sr = field_at(5e-4, 500.0);
  CHECK(wigner_overlap(sr, field_at(0.0, 0.75)) > 0.95);
  CHECK(std::fabs(wigner_overlap(sr, field_at(0.0, 0.25))) < 0.5);
}

TEST_CASE("refinement changes the squared integral by less than 1e-3") {
  const EvolvedState s = evolve(default_expansion(), 0.25, {});
  const WignerField coarse = wigner(s);
  WignerRequest fine_req;
  fine_req.nx = 511;
  fine_req.min_reconstruction_samples = 2 * coarse.reconstruction_samples;
  const WignerField fine = wigner(s, fine_req);
  CHECK(fine.reconstruction_step <= 0.5 * coarse.reconstruction_step);
  const double a = squared_integral(coarse);
  const double b = squared_integral(fine);
  CHECK(std::fabs(a - b) < 1e-3 * std::fabs(b));
}

TEST_CASE("parity of a packet at rest") {
  PacketSpec packet;
  packet.p_bar = 0.0;
  const EvolvedState s = evolve(expand(packet, {}), 0.0, {});
  const WignerField w = wigner(s);
  const std::size_t nx = w.field.row_count(), np = w.field.col_count();
  double worst = 0.0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < np; ++j) {
      worst = std::max(worst, std::fabs(w.field(i, j) - w.field(nx - 1 - i, j)));
      worst = std::max(worst, std::fabs(w.field(i, j) - w.field(i, np - 1 - j)));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("cat fringe spacing matches the lobe separation") {
  // Lobes separated by d in momentum produce fringes along x with zeros
  // spaced pi / d.
  const EvolvedState s = evolve(default_expansion(), 0.25, {});
  const auto p = default_momentum_grid(PacketSpec{}, 2048);
  const auto phi = momentum_amplitude(s, p);
  std::vector<double> dens(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) dens[j] = std::norm(phi[j]);
  const std::size_t mid = p.size() / 2;
  const auto lo = std::max_element(dens.begin(), dens.begin() + static_cast<std::ptrdiff_t>(mid)) - dens.begin();
  const auto hi = std::max_element(dens.begin() + static_cast<std::ptrdiff_t>(mid), dens.end()) - dens.begin();
  const double d = p[static_cast<std::size_t>(hi)] - p[static_cast<std::size_t>(lo)];

  const auto x = uniform_grid(0.42, 0.58, 321);
  std::vector<double> w0(x.size());
  const std::vector<double> zero{0.0};
  for (std::size_t i = 0; i < x.size(); ++i) w0[i] = wigner_line(s, x[i], zero)[0];
  const auto period = zero_crossing_period(x, w0);
  REQUIRE(period);
  CHECK(std::fabs(0.5 * *period / (kPi / d) - 1.0) < 0.1);
}

TEST_CASE("wigner_line agrees with the grid evaluation") {
  const EvolvedState s = evolve(default_expansion(), 0.3, with_q2(1e-5));
  const WignerField w = wigner(s);
  const std::size_t i = 77;
  const auto line = wigner_line(s, w.field.rows().samples[i], w.field.cols().samples, w.reconstruction_step);
  for (std::size_t j = 0; j < line.size(); ++j) CHECK(std::fabs(line[j] - w.field(i, j)) < 1e-12);
}

TEST_CASE("coverage and request validation") {
  const EvolvedState s = evolve(default_expansion(), 0.0, {});
  WignerRequest narrow;
  narrow.p_half_range = 70.0;
  CHECK_THROWS_AS(wigner(s, narrow), CoverageError);
  WignerRequest bad;
  bad.nx = 1;
  CHECK_THROWS_AS(wigner(s, bad), ContractError);
  CHECK(wigner_required_half_range(PacketSpec{}) == doctest::Approx(80.0));
}
