#pragma once
// Link budgets, SNR -> spectral-efficiency curves with phase-noise
// dependent ceilings, and per-scheme rate arithmetic.

#include <string>
#include <utility>
#include <vector>

namespace subthz {

struct LinkBudget {
  double ptx_dBm = 0.0;        // per antenna / channel
  double gtx_dBi = 0.0;
  double grx_dBi = 0.0;
  double impl_losses_dB = 0.0;
  double noise_figure_dB = 0.0;
  double bandwidth_Hz = 1e9;
  double useful_fraction = 0.8;
};

// ptx + gtx + grx - pathloss - impl_losses - NF - (-174 + 10 log10 B).
double snr_dB(const LinkBudget& budget, double pathloss_dB);

enum class SeMode { NoPn, StrongPnQam, StrongPnPolar, Table };

struct SeCurve {
  SeMode mode = SeMode::NoPn;
  // (snr_dB, se) points, strictly increasing in SNR, non-decreasing in SE.
  std::vector<std::pair<double, double>> points;
  double ceiling = 7.2;
};

// Default curves: se = min(log2(1 + snr_linear), ceiling) sampled densely,
// with ceilings 7.2 (no PN), 2.5 (strong PN, square QAM) and 5.5 (strong
// PN, polar constellations; reached by 30 dB).
SeCurve make_se_curve(SeMode mode);

// TABLE mode from explicit points (e.g. measured BER sweeps).
SeCurve se_curve_from_points(std::vector<std::pair<double, double>> points,
                             double ceiling);

// Linear interpolation on the point list, clamped to [0, ceiling].
double se_from_snr(const SeCurve& curve, double snr_dB);

double throughput_bps(double se, double bandwidth_Hz, double useful_fraction);

enum class SchemeKind { Qam, Gsm, Fsim, SmxFsim, OokEd };

struct SchemeDesc {
  SchemeKind kind = SchemeKind::Qam;
  int M = 4;   // constellation order
  int Nt = 1;  // transmit antennas (GSM, SMX-FSIM, OOK-ED)
  int Na = 1;  // active antennas (GSM)
  int N = 2;   // filter count (FSIM, SMX-FSIM)
};

int scheme_bits_per_symbol(const SchemeDesc& desc);

// bits_per_symbol * symbol_rate * code_rate.
double scheme_rate_bps(const SchemeDesc& desc, double symbol_rate_baud,
                       double code_rate);

}  // namespace subthz
