#include <doctest.h>

#include <cmath>
#include <sstream>

#include "boxrevive/carpet.hpp"
#include "boxrevive/error.hpp"
#include "boxrevive/parallel.hpp"
#include "oracles.hpp"

using namespace boxrevive;

namespace {

SystemConfig with_q2(double q2) {
  SystemConfig cfg;
  cfg.q_squared = q2;
  return cfg;
}

CarpetRequest window(double t0, double t1, int nt, int nx) {
  CarpetRequest r;
  r.t0 = t0;
  r.t1 = t1;
  r.nt = nt;
  r.nx = nx;
  return r;
}

}  // namespace

TEST_CASE("carpet layout and axes") {
  const Field2D f = carpet(PacketSpec{}, {}, window(0.0, 0.5, 33, 65));
  CHECK(f.row_count() == 33);
  CHECK(f.col_count() == 65);
  CHECK(f.rows().name == "t");
  CHECK(f.cols().name == "x");
  CHECK(f.rows().samples.front() == 0.0);
  CHECK(f.rows().samples.back() == 0.5);
  CHECK(f.cols().samples.back() == 1.0);
  CHECK(f.min_value() >= 0.0);
}

TEST_CASE("half revival row reproduces the initial row") {
  const Field2D f = carpet(PacketSpec{}, {}, window(0.0, 0.5, 65, 512));
  const auto x = f.cols().samples;
  std::vector<double> sq(x.size());
  const auto first = f.row(0);
  const auto last = f.row(f.row_count() - 1);
  for (std::size_t j = 0; j < x.size(); ++j) sq[j] = (first[j] - last[j]) * (first[j] - last[j]);
  CHECK(std::sqrt(trapezoid(x, sq)) < 1e-3);
}

TEST_CASE("every row carries the captured norm") {
  const EigenExpansion e = expand(PacketSpec{}, {});
  for (double q2 : {0.0, 5e-4}) {
    const Field2D f = carpet(e, with_q2(q2), window(0.0, 0.5, 64, 512));
    for (std::size_t i = 0; i < f.row_count(); ++i)
      CHECK(std::fabs(trapezoid(f.cols().samples, f.row(i)) - e.captured_norm()) < 1e-4);
  }
}

TEST_CASE("single-slice request equals the density at t0") {
  const EigenExpansion e = expand(PacketSpec{}, {});
  const Field2D f = carpet(e, with_q2(1e-5), window(0.3, 0.3, 1, 200));
  CHECK(f.row_count() == 1);
  const auto rho = position_density(evolve(e, 0.3, with_q2(1e-5)), f.cols().samples);
  for (std::size_t j = 0; j < rho.size(); ++j) CHECK(f(0, j) == doctest::Approx(rho[j]).epsilon(1e-12));
  // Independent reconstruction.
  auto c = e.coefficients();
  const oracle::NaiveState ref{e.n_min(), {c.begin(), c.end()}, 1e-5, 0.3};
  for (std::size_t j = 0; j < rho.size(); j += 17) CHECK(std::fabs(f(0, j) - std::norm(ref(f.cols().samples[j]))) < 1e-10);
}

TEST_CASE("carpet request validation") {
  CHECK_THROWS_AS(carpet(PacketSpec{}, {}, window(0.5, 0.2, 10, 10)), ContractError);
  CHECK_THROWS_AS(carpet(PacketSpec{}, {}, window(-0.1, 0.2, 10, 10)), ContractError);
  CHECK_THROWS_AS(carpet(PacketSpec{}, {}, window(0.0, 0.2, 0, 10)), ContractError);
  CHECK_THROWS_AS(carpet(PacketSpec{}, {}, window(0.0, 0.2, 10, 1)), ContractError);
  SystemConfig tiny;
  tiny.n_max_cap = 5;
  CHECK_THROWS_AS(carpet(PacketSpec{}, tiny, window(0.0, 0.2, 10, 10)), TruncationError);
}

TEST_CASE("centroid starts at the packet mean and stays central for the cat") {
  const Field2D f = carpet(PacketSpec{}, {}, window(0.0, 0.5, 3, 1024));
  const auto c = centroid_trace(f);
  CHECK(std::fabs(c[0] - 0.5) < 1e-3);
  CHECK(std::fabs(c[1] - 0.5) < 1e-3);  // t = 0.25
  for (double v : c) CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("centroid of a zero row is rejected") {
  Field2D f(Axis{"t", "T_rev", {0.0}}, Axis{"x", "L", {0.0, 0.5, 1.0}}, "d", "1/L");
  CHECK_THROWS_AS(centroid_trace(f), NumericalError);
}

TEST_CASE("centroid oscillates at the shifted classical frequency") {
  const SystemConfig cfg = with_q2(5e-4);
  const Field2D f = carpet(PacketSpec{}, cfg, window(0.0, 0.5, 512, 512));
  const auto c = centroid_trace(f);
  const double dt = f.rows().samples[1] - f.rows().samples[0];
  const TimeScales ts = time_scales(16, cfg);
  const double freq = dominant_frequency(c, dt, 2.0, 60.0);
  CHECK(std::fabs(freq * ts.t_cl_bar - 1.0) < 0.02);
}

TEST_CASE("dominant_frequency recovers a synthetic tone") {
  std::vector<double> v(400);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.3 + std::sin(2.0 * kPi * 7.3 * 0.01 * static_cast<double>(i));
  CHECK(dominant_frequency(v, 0.01, 1.0, 20.0) == doctest::Approx(7.3).epsilon(2e-3));
  CHECK_THROWS_AS(dominant_frequency(std::vector<double>{1.0, 2.0}, 0.01, 1.0, 2.0), ContractError);
}

TEST_CASE("local maxima") {
  const std::vector<double> v{0, 1, 0, 2, 2, 1, 3, 4};
  const auto m = local_maxima(v);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == 1);
  CHECK(m[1] == 3);
}

TEST_CASE("mirror symmetry of the symmetric packet") {
  const Field2D f = carpet(PacketSpec{}, {}, window(0.0, 0.5, 2, 513));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < f.col_count(); ++j) CHECK(std::fabs(f(i, j) - f(i, f.col_count() - 1 - j)) < 1e-6);
}

TEST_CASE("shared time points agree under refinement") {
  const EigenExpansion e = expand(PacketSpec{}, {});
  const Field2D coarse = carpet(e, with_q2(5e-4), window(0.0, 0.5, 33, 128));
  const Field2D fine = carpet(e, with_q2(5e-4), window(0.0, 0.5, 65, 128));
  for (std::size_t i = 0; i < coarse.row_count(); ++i)
    for (std::size_t j = 0; j < coarse.col_count(); ++j) CHECK(std::fabs(coarse(i, j) - fine(2 * i, j)) < 1e-12);
}

TEST_CASE("carpet is bitwise independent of the worker count") {
  const EigenExpansion e = expand(PacketSpec{}, {});
  set_thread_count(1);
  const Field2D a = carpet(e, with_q2(1e-5), window(0.0, 0.5, 97, 256));
  set_thread_count(5);
  const Field2D b = carpet(e, with_q2(1e-5), window(0.0, 0.5, 97, 256));
  set_thread_count(0);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin(), b.values().end()));
}

TEST_CASE("csv export layout") {
  Field2D f(Axis{"t", "T_rev", {0.0, 0.25}}, Axis{"x", "L", {0.0, 0.5, 1.0}}, "probability density", "1/L");
  f(0, 1) = 1.5;
  f(1, 2) = 0.125;
  std::ostringstream os;
  write_csv(os, f);
  std::istringstream in(os.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0].rfind("# ", 0) == 0);
  CHECK(lines[1].rfind("# ", 0) == 0);
  CHECK(lines[0].find("T_rev") != std::string::npos);
  CHECK(lines[1].find("1/L") != std::string::npos);
  CHECK(lines[2] == "t\\x,0,0.5,1");
  CHECK(lines[3] == "0,0,1.5,0");
  CHECK(lines[4] == "0.25,0,0,0.125");
}

TEST_CASE("pgm export layout") {
  Field2D f(Axis{"t", "T_rev", {0.0, 1.0}}, Axis{"x", "L", {0.0, 0.5, 1.0}}, "d", "1/L");
  f(0, 0) = 4.0;
  f(1, 2) = 1.0;
  std::ostringstream os;
  write_pgm(os, f, PgmMapping::density_gamma);
  const std::string s = os.str();
  CHECK(s.rfind("P5\n#", 0) == 0);
  CHECK(s.find("gamma=0.5") != std::string::npos);
  const auto header_end = s.find("3 2\n255\n");
  REQUIRE(header_end != std::string::npos);
  const std::string px = s.substr(header_end + 8);
  REQUIRE(px.size() == 6);
  CHECK(static_cast<unsigned char>(px[0]) == 255);
  CHECK(static_cast<unsigned char>(px[1]) == 0);
  CHECK(static_cast<unsigned char>(px[5]) == 128);  // sqrt(1/4) * 255 = 127.5

  Field2D w(Axis{"x", "L", {0.0}}, Axis{"p", "hbar/L", {-1.0, 0.0, 1.0}}, "W", "1/hbar");
  w(0, 0) = -2.0;
  w(0, 2) = 1.0;
  std::ostringstream ws;
  write_pgm(ws, w, PgmMapping::signed_symmetric);
  const std::string t = ws.str();
  CHECK(t.find("max_abs=2") != std::string::npos);
  const std::string wp = t.substr(t.size() - 3);
  CHECK(static_cast<unsigned char>(wp[0]) == 0);
  CHECK(static_cast<unsigned char>(wp[1]) == 128);
  CHECK(static_cast<unsigned char>(wp[2]) == 191);  // 0.75 * 255 = 191.25
}
