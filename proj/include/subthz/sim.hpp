#pragma once
// Monte-Carlo BER engine.
//
// Determinism contract: every frame draws from its own RNG substream,
// seeded by substream_seed(master, point_index, frame_index). Frames run
// in fixed batches of 32; budgets (bit count / error count) are evaluated
// only at batch boundaries, and per-frame results are accumulated in frame
// order. Serial and multi-threaded runs therefore produce identical
// counters, and identical CSV bytes downstream.
//
// SNR convention: snr_dB is Es/N0 per receive stream with unit average
// symbol energy (all constellations here are unit energy and all filters
// unit norm), so N0 = 10^(-snr_dB/10) per complex noise sample — applied
// per waveform sample on waveform paths (FSIM, SMX-FSIM), per symbol on
// symbol-rate paths (QAM/PSK/polar, GSM, OOK-ED). Phase noise draws one
// i.i.d. Gaussian phase per sample per receive chain.
//
// Frame composition: roughly 1024 information bits, rounded to whole
// symbol periods; with BCH coding enabled the frame is sized to hold a
// whole number of codewords AND a whole number of symbol periods. OOK-ED
// MIMO frames encode each antenna stream independently.

#include <cstdint>
#include <vector>

#include "subthz/bch.hpp"
#include "subthz/constellation.hpp"
#include "subthz/detect.hpp"
#include "subthz/fsim.hpp"
#include "subthz/gsm.hpp"

namespace subthz {

enum class Scheme { Qam, Gsm, Fsim, SmxFsim, OokEd };

struct SimConfig {
  Scheme scheme = Scheme::Qam;
  Constellation constellation;  // APM constellation; OOK for OokEd
  int Nt = 1;                   // antennas (Gsm, SmxFsim, OokEd)
  int Na = 1;                   // active antennas (Gsm)
  int n_filters = 2;            // bank size (Fsim, SmxFsim)
  int S = 8;
  int span = 8;
  double pn_sigma2 = 0.0;
  bool noise_enabled = true;    // false: N0 = 0 (infinite SNR)
  int bch_k = 0;                // 0 = uncoded, else BCH(63, k)
  EqMode eq = EqMode::ZF;       // SMX-FSIM equalizer
  ThresholdPolicy policy = ThresholdPolicy::Calibrated;  // OOK-ED
  double fixed_threshold = 1.0;
};

struct SimBudgets {
  std::uint64_t max_bits = 1000000;
  std::uint64_t max_errors = 100;
};

struct BerPoint {
  double snr_dB = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;

  double ber() const { return bits ? static_cast<double>(bit_errors) / bits : 0.0; }
};

BerPoint run_ber_point(const SimConfig& cfg, double snr_dB, std::uint64_t master_seed,
                       std::uint64_t point_index, const SimBudgets& budgets,
                       int threads = 1);

std::vector<BerPoint> run_ber_sweep(const SimConfig& cfg,
                                    const std::vector<double>& snrs_dB,
                                    std::uint64_t master_seed,
                                    const SimBudgets& budgets, int threads = 1);

std::string ber_csv(const std::vector<BerPoint>& points);

}  // namespace subthz
