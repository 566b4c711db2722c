#pragma once
// Receivers: exhaustive joint-ML GSM detection, ZF/MMSE linear
// equalization, FSIM matched-filter-bank detection, and non-coherent
// energy detection (per-antenna threshold and joint MIMO forms).
//
// Tie-breaking everywhere: hypotheses are enumerated in ascending bit
// pattern order and only strict improvements replace the incumbent, so the
// lowest bit pattern wins ties.

#include <Eigen/Dense>
#include <vector>

#include "subthz/constellation.hpp"
#include "subthz/fsim.hpp"
#include "subthz/gsm.hpp"
#include "subthz/rng.hpp"

namespace subthz {

// Per symbol period, argmin over (combination, symbol vector) of
// ||y - H*x||^2. Throws if the hypothesis count exceeds 2^20.
Bits ml_gsm_detect(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& H,
                   const GsmConfig& cfg);

enum class EqMode { ZF, MMSE };

// ZF: Moore-Penrose pseudo-inverse (requires full column rank).
// MMSE: (H^H H + N0 I)^{-1} H^H.
Eigen::MatrixXcd linear_equalize(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& H,
                                 EqMode mode, double N0 = 0.0);

struct FsimDetected {
  std::vector<int> indices;
  std::vector<int> labels;
  Bits bits;
};

// Runs all N matched filters on the stream waveform; per symbol instant
// the joint decision (i, s) maximizes 2*Re(conj(s)*z_i) - |s|^2*rho_ii,
// with z_i the i-th matched-filter output and rho the bank's zero-lag
// correlation matrix. Cross-symbol ISI beyond zero lag is treated as
// noise by design.
FsimDetected fsim_detect(const std::vector<cplx>& waveform, const FilterBank& bank,
                         const Constellation& c);

enum class ThresholdPolicy { Fixed, Midpoint, Calibrated };

// Noiseless OOK energy levels are {0, 2*|h|^2}; their midpoint is |h|^2.
double ed_midpoint_threshold(double h_mag2);

// Numerically optimized threshold: simulates n calibration symbols (half
// off, half on) at the given channel gain and noise level with a dedicated
// deterministic seed, then picks the candidate threshold minimizing the
// empirical error count. Deterministic for fixed arguments.
double ed_calibrate_threshold(double h_mag2, double N0, int n = 100000,
                              std::uint64_t seed = 0xED5EEDULL);

// Per-antenna energy detection: bit = 1 iff |y|^2 > threshold.
Bits energy_detect(const std::vector<cplx>& y, double threshold);

// Joint ED-MIMO decision on per-antenna energies. For each symbol period
// (column of Y), argmin over OOK vectors x in {0, sqrt(2)*amp}^Nt of
//   sum_m (|y_m|^2 - |(Hx)_m|^2 - sigma2_post)^2
// with sigma2_post = N0 (analytic post-detection bias). This is an
// approximation to the reference joint demodulator; its SISO limit matches
// the analytic non-coherent OOK detector. Throws if 2^Nt > 256.
// Bit order per period: antenna 0 first (MSB of the hypothesis pattern).
Bits ed_mimo_joint(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& H, double N0,
                   double amp = 1.0);

}  // namespace subthz
