#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <vector>

#include "subthz/los_mimo.hpp"
#include "subthz/noise.hpp"
#include "subthz/propagation.hpp"
#include "subthz/rng.hpp"

using namespace subthz;

TEST_CASE("phase-noise variance from floor and bandwidth") {
  CHECK(pn_variance(-100.0, 1e9) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(pn_variance(-110.0, 1e9) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(pn_variance(-100.0, 2e9) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("phase noise preserves magnitudes exactly") {
  Rng rng(21);
  std::vector<cplx> x;
  for (int i = 0; i < 1000; ++i) x.push_back(rng.cgaussian(2.0));
  auto y = add_phase_noise(x, 0.1, rng);
  REQUIRE(y.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(y[i]) == doctest::Approx(std::abs(x[i])).epsilon(1e-12));
  }
  // sigma2 = 0 is the identity.
  auto z = add_phase_noise(x, 0.0, rng);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(z[i] == x[i]);
  CHECK_THROWS_AS(add_phase_noise(x, -0.1, rng), std::invalid_argument);
}

TEST_CASE("phase-noise sample variance converges to sigma2") {
  Rng rng(22);
  const std::size_t n = 1000000;
  std::vector<cplx> ones(n, cplx{1.0, 0.0});
  auto y = add_phase_noise(ones, 0.1, rng);
  double mean = 0.0;
  std::vector<double> ph(n);
  for (std::size_t i = 0; i < n; ++i) {
    ph[i] = std::arg(y[i]);
    mean += ph[i];
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double p : ph) var += (p - mean) * (p - mean);
  var /= static_cast<double>(n - 1);
  CHECK(std::abs(var - 0.1) < 0.001);  // within 1%
}

TEST_CASE("awgn at requested snr") {
  Rng rng(23);
  const std::size_t n = 1000000;
  std::vector<cplx> x(n, cplx{1.0, 0.0});  // unit power
  auto y = add_awgn_snr(x, 10.0, rng);
  double np = 0.0;
  for (std::size_t i = 0; i < n; ++i) np += std::norm(y[i] - x[i]);
  np /= static_cast<double>(n);
  double snr_emp = 10.0 * std::log10(1.0 / np);
  CHECK(std::abs(snr_emp - 10.0) < 0.1);
  // N0 = 0 is the identity.
  auto z = add_awgn(x, 0.0, rng);
  for (std::size_t i = 0; i < 10; ++i) CHECK(z[i] == x[i]);
}

TEST_CASE("free-space path loss") {
  // 20*log10(4*pi*d*f/c), c = 299792458 m/s.
  CHECK(fspl_dB(150e9, 5.0) == doctest::Approx(89.94901).epsilon(1e-5));
  CHECK(fspl_dB(150e9, 100.0) == doctest::Approx(115.96961).epsilon(1e-5));
  // Doubling distance or frequency adds 20*log10(2) = 6.0206 dB.
  CHECK(fspl_dB(150e9, 10.0) - fspl_dB(150e9, 5.0) ==
        doctest::Approx(6.0206).epsilon(1e-4));
  CHECK(fspl_dB(300e9, 5.0) - fspl_dB(150e9, 5.0) ==
        doctest::Approx(6.0206).epsilon(1e-4));
}

TEST_CASE("atmospheric attenuation table") {
  auto table = AtmosphericTable::defaults();
  CHECK(table.specific_dB_per_km(150e9) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(atmospheric_loss_dB(150e9, 100.0, table) == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(atmospheric_loss_dB(150e9, 0.0, table) == 0.0);
  CHECK_THROWS_AS(table.specific_dB_per_km(50e9), std::out_of_range);
  CHECK_THROWS_AS(table.specific_dB_per_km(400e9), std::out_of_range);
  auto clamped = table;
  clamped.allow_extrapolation = true;
  CHECK(clamped.specific_dB_per_km(50e9) == doctest::Approx(0.4));   // low edge
  CHECK(clamped.specific_dB_per_km(400e9) == doctest::Approx(20.0));  // high edge
  // Interpolation stays between neighbors.
  double mid = table.specific_dB_per_km(140e9);
  CHECK(mid > 1.2);
  CHECK(mid < 2.0);
}

TEST_CASE("atmospheric table file parsing") {
  const char* path = "atmos_test_table.txt";
  {
    std::ofstream out(path);
    out << "# freq_GHz dB_per_km\n140 1.5\n150 2.5\n\n160 4.0\n";
  }
  auto table = AtmosphericTable::from_file(path);
  CHECK(table.rows.size() == 3);
  CHECK(table.specific_dB_per_km(150e9) == doctest::Approx(2.5));
  std::remove(path);

  {
    std::ofstream out(path);
    out << "150 2.0\n140 1.0\n";  // not increasing
  }
  CHECK_THROWS(AtmosphericTable::from_file(path));
  std::remove(path);
  CHECK_THROWS(AtmosphericTable::from_file("no_such_file_here.txt"));
}

TEST_CASE("antenna pattern gain") {
  AntennaPattern p{32.0, 3.0, -20.0};
  CHECK(antenna_gain_dBi(p, 0.0) == doctest::Approx(32.0));
  // Quadratic rolloff: G0 - 12*(off/bw)^2 -> 29 dBi at half beamwidth.
  CHECK(antenna_gain_dBi(p, 1.5) == doctest::Approx(29.0).epsilon(1e-9));
  CHECK(antenna_gain_dBi(p, 30.0) == doctest::Approx(-20.0));  // sidelobe floor
  CHECK(antenna_gain_dBi(p, -1.5) == doctest::Approx(29.0).epsilon(1e-9));
}

TEST_CASE("los mimo 1x1 boresight gain matches the link budget") {
  LosMimoGeometry g;
  g.carrier_Hz = 150e9;
  g.n_tx = 1;
  g.m_rx = 1;
  g.distance_m = 5.0;
  g.tx_pattern = {32.0, 3.0, -20.0};
  g.rx_pattern = {32.0, 3.0, -20.0};
  auto H = los_mimo_matrix(g);
  REQUIRE(H.rows() == 1);
  REQUIRE(H.cols() == 1);
  double mag_dB = 20.0 * std::log10(std::abs(H(0, 0)));
  CHECK(mag_dB == doctest::Approx(32.0 + 32.0 - 89.94901).epsilon(1e-4));
  // Propagation phase: -2*pi*d/lambda (mod 2*pi).
  double lambda = wavelength_m(150e9);
  double expect = std::remainder(-2.0 * M_PI * 5.0 / lambda, 2.0 * M_PI);
  CHECK(std::remainder(std::arg(H(0, 0)) - expect, 2.0 * M_PI) ==
        doctest::Approx(0.0).epsilon(1e-9));

  // Doubling the distance halves |h| (free-space amplitude rolloff).
  auto g2 = g;
  g2.distance_m = 10.0;
  auto H2 = los_mimo_matrix(g2);
  CHECK(std::abs(H(0, 0)) / std::abs(H2(0, 0)) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("rayleigh spacing yields a well-conditioned 2x2 channel") {
  double d = 5.0;
  double sp = rayleigh_spacing_m(150e9, d, 2);
  CHECK(sp == doctest::Approx(std::sqrt(wavelength_m(150e9) * d / 2.0)));
  LosMimoGeometry g;
  g.n_tx = 2;
  g.m_rx = 2;
  g.distance_m = d;
  g.tx_spacing_m = sp;
  g.rx_spacing_m = sp;
  g.tx_pattern = {32.0, 3.0, -20.0};
  g.rx_pattern = {32.0, 3.0, -20.0};
  auto H = los_mimo_matrix(g);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H);
  double cond = svd.singularValues()(0) / svd.singularValues()(1);
  CHECK(cond < 3.0);
  CHECK(half_wavelength_spacing_m(150e9) ==
        doctest::Approx(wavelength_m(150e9) / 2.0));
}

TEST_CASE("apply_mimo composes channel, phase noise, and awgn") {
  Rng rng(31);
  Eigen::MatrixXcd H(2, 2);
  H << cplx{1.0, 0.0}, cplx{0.2, 0.1}, cplx{-0.3, 0.2}, cplx{0.8, -0.1};
  Eigen::MatrixXcd X(2, 4);
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 4; ++k) X(r, k) = rng.cgaussian(1.0);
  }
  // Noiseless, PN-free: exact product.
  auto Y0 = apply_mimo(H, X, rng, 0.0, 0.0);
  CHECK((Y0 - H * X).norm() < 1e-15);
  // PN only: per-entry magnitudes of H*X preserved.
  auto Y1 = apply_mimo(H, X, rng, 0.0, 0.1);
  Eigen::MatrixXcd P = H * X;
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(Y1(r, k)) == doctest::Approx(std::abs(P(r, k))).epsilon(1e-12));
    }
  }
  // Dimension mismatch throws.
  Eigen::MatrixXcd bad(3, 4);
  CHECK_THROWS_AS(apply_mimo(H, bad, rng, 0.0, 0.0), std::invalid_argument);
}
