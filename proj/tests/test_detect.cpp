#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "subthz/detect.hpp"
#include "subthz/los_mimo.hpp"
#include "subthz/noise.hpp"
#include "subthz/rng.hpp"

using namespace subthz;

namespace {

Bits random_bits(std::size_t n, Rng& rng) {
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng.bit());
  return b;
}

Eigen::MatrixXcd random_channel(int m, int n, Rng& rng) {
  Eigen::MatrixXcd H(m, n);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) H(r, c) = rng.cgaussian(1.0);
  }
  return H;
}

// Reference ML: enumerate every bits-per-symbol pattern per period.
Bits brute_force_gsm(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& H,
                     const GsmConfig& cfg) {
  int bps = cfg.bits_per_symbol();
  Bits out;
  for (Eigen::Index k = 0; k < Y.cols(); ++k) {
    double best = 1e300;
    int best_pat = 0;
    for (int pat = 0; pat < (1 << bps); ++pat) {
      Bits bits;
      append_label_bits(pat, bps, bits);
      auto mapped = gsm_map(cfg, bits);
      Eigen::VectorXcd x = Eigen::VectorXcd::Zero(H.cols());
      const auto& combo = cfg.combos[mapped.combo_index[0]];
      for (std::size_t a = 0; a < combo.size(); ++a) {
        x(combo[a]) = mapped.symbols[0][a];
      }
      double metric = (Y.col(k) - H * x).squaredNorm();
      if (metric < best) {
        best = metric;
        best_pat = pat;
      }
    }
    append_label_bits(best_pat, bps, out);
  }
  return out;
}

}  // namespace

TEST_CASE("ml gsm detection is exact without noise") {
  Rng rng(41);
  auto cfg = make_gsm_config(4, 2, build_constellation(ConstKind::QAM, 4));
  Bits bits = random_bits(static_cast<std::size_t>(cfg.bits_per_symbol()) * 10000 / 6 * 6,
                          rng);
  auto X = gsm_frame(cfg, bits);
  auto H = random_channel(4, 4, rng);
  Eigen::MatrixXcd Y = H * X;
  Bits det = ml_gsm_detect(Y, H, cfg);
  CHECK(det == bits);
}

TEST_CASE("ml gsm detection equals brute-force enumeration under noise") {
  Rng rng(42);
  auto cfg = make_gsm_config(2, 1, build_constellation(ConstKind::PSK, 2));
  REQUIRE(cfg.bits_per_symbol() == 2);
  for (int trial = 0; trial < 100; ++trial) {
    auto H = random_channel(2, 2, rng);
    Bits bits = random_bits(2 * 20, rng);
    auto X = gsm_frame(cfg, bits);
    auto Y = apply_mimo(H, X, rng, 0.5, 0.0);
    CHECK(ml_gsm_detect(Y, H, cfg) == brute_force_gsm(Y, H, cfg));
  }
}

TEST_CASE("ml gsm refuses oversized hypothesis spaces") {
  auto cfg = make_gsm_config(16, 8, build_constellation(ConstKind::QAM, 16));
  // floor(log2 C(16,8)) = 13 index bits + 32 symbol bits >> 2^20 hypotheses.
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(16, 1);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(16, 16);
  CHECK_THROWS_AS(ml_gsm_detect(Y, H, cfg), std::invalid_argument);
}

TEST_CASE("zf equalizer inverts the channel") {
  Rng rng(43);
  // Identity channel: passthrough.
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(3, 3);
  auto X = random_channel(3, 5, rng);
  CHECK((linear_equalize(X, I, EqMode::ZF) - X).norm() < 1e-12);
  // Random full-rank 4x4: exact inversion.
  auto H = random_channel(4, 4, rng);
  Eigen::MatrixXcd Y = H * X.topRows(4);
  CHECK((linear_equalize(Y, H, EqMode::ZF) - X.topRows(4)).norm() < 1e-9);
  // Rank-deficient channel throws.
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(4, 4);
  R.col(0).setOnes();
  CHECK_THROWS_AS(linear_equalize(Y, R, EqMode::ZF), std::invalid_argument);
}

TEST_CASE("mmse approaches zf as noise vanishes") {
  Rng rng(44);
  auto H = random_channel(4, 4, rng);
  auto X = random_channel(4, 8, rng);
  Eigen::MatrixXcd Y = H * X;
  auto zf = linear_equalize(Y, H, EqMode::ZF);
  auto mmse = linear_equalize(Y, H, EqMode::MMSE, 1e-12);
  CHECK((zf - mmse).norm() / zf.norm() < 1e-6);
}

TEST_CASE("mmse beats zf in mse on an ill-conditioned channel") {
  Rng rng(45);
  double N0 = 0.5;
  double zf_mse = 0.0, mmse_mse = 0.0;
  int draws = 0;
  for (int trial = 0; trial < 120; ++trial) {
    // Nearly collinear columns -> huge ZF noise amplification.
    Eigen::MatrixXcd H = random_channel(2, 2, rng);
    H.col(1) = H.col(0) + 0.05 * H.col(1);
    auto X = random_channel(2, 16, rng);
    auto Y = apply_mimo(H, X, rng, N0, 0.0);
    auto zf = linear_equalize(Y, H, EqMode::ZF);
    auto mmse = linear_equalize(Y, H, EqMode::MMSE, N0);
    zf_mse += (zf - X).squaredNorm();
    mmse_mse += (mmse - X).squaredNorm();
    ++draws;
  }
  CHECK(draws >= 100);
  CHECK(mmse_mse < zf_mse);
}

TEST_CASE("fsim detection survives mild noise") {
  Rng rng(46);
  FsimConfig cfg{build_default_bank(2), build_constellation(ConstKind::QAM, 4)};
  Bits bits = random_bits(3 * 3000, rng);
  auto mapped = fsim_map(cfg, bits);
  auto wave = fsim_modulate(mapped.indices, mapped.symbols, cfg.bank);
  // Waveform-domain SNR is high; per-sample N0 low enough for zero errors.
  auto noisy = add_awgn(wave, 1e-6, rng);
  auto det = fsim_detect(noisy, cfg.bank, cfg.constellation);
  CHECK(det.bits == bits);
}

TEST_CASE("energy detector thresholds") {
  CHECK(ed_midpoint_threshold(1.0) == doctest::Approx(1.0));
  CHECK(ed_midpoint_threshold(0.25) == doctest::Approx(0.25));

  // Calibration is deterministic and lands between the two energy levels.
  double t1 = ed_calibrate_threshold(1.0, 0.1);
  double t2 = ed_calibrate_threshold(1.0, 0.1);
  CHECK(t1 == t2);
  CHECK(t1 > 0.0);
  CHECK(t1 < 2.0 + 4 * 0.1);

  // Noiseless midpoint detection makes no mistakes.
  Rng rng(47);
  auto ook = build_constellation(ConstKind::OOK, 2);
  Bits bits = random_bits(10000, rng);
  auto sym = map_bits(ook, bits);
  Bits det = energy_detect(sym, ed_midpoint_threshold(1.0));
  CHECK(det == bits);
}

TEST_CASE("energy detection is invariant to phase rotation") {
  Rng rng(48);
  auto ook = build_constellation(ConstKind::OOK, 2);
  Bits bits = random_bits(5000, rng);
  auto sym = map_bits(ook, bits);
  auto noisy = add_awgn(sym, 0.2, rng);
  auto rotated = noisy;
  for (auto& s : rotated) {
    double phi = 2.0 * M_PI * rng.uniform01();
    s *= cplx{std::cos(phi), std::sin(phi)};
  }
  double tau = 1.1;
  CHECK(energy_detect(noisy, tau) == energy_detect(rotated, tau));
}

TEST_CASE("joint ed-mimo reduces to the analytic siso rule") {
  Rng rng(49);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(1, 1);
  double N0 = 0.3;
  auto ook = build_constellation(ConstKind::OOK, 2);
  Bits bits = random_bits(20000, rng);
  auto sym = map_bits(ook, bits);
  auto noisy = add_awgn(sym, N0, rng);
  Eigen::MatrixXcd Y(1, static_cast<Eigen::Index>(noisy.size()));
  for (std::size_t k = 0; k < noisy.size(); ++k) Y(0, k) = noisy[k];
  Bits joint = ed_mimo_joint(Y, H, N0);
  // SISO metric argmin over energies {0, 2} + N0 bias = threshold at N0 + 1.
  Bits thresh = energy_detect(noisy, N0 + 1.0);
  CHECK(joint == thresh);
}

TEST_CASE("joint ed-mimo is exact without noise") {
  Rng rng(50);
  Eigen::MatrixXcd H(2, 2);
  H << 1.0, 0.2, 0.2, 1.0;
  auto ook = build_constellation(ConstKind::OOK, 2);
  Bits bits = random_bits(2 * 4000, rng);
  Eigen::MatrixXcd X(2, 4000);
  for (int k = 0; k < 4000; ++k) {
    // Antenna 0 carries the first bit of each period.
    X(0, k) = bits[2 * k] ? cplx{std::sqrt(2.0), 0.0} : cplx{0.0, 0.0};
    X(1, k) = bits[2 * k + 1] ? cplx{std::sqrt(2.0), 0.0} : cplx{0.0, 0.0};
  }
  Eigen::MatrixXcd Y = H * X;
  CHECK(ed_mimo_joint(Y, H, 0.0) == bits);
  CHECK_THROWS_AS(
      ed_mimo_joint(Eigen::MatrixXcd::Zero(9, 1), Eigen::MatrixXcd::Identity(9, 9), 0.0),
      std::invalid_argument);
}
