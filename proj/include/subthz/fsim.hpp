#pragma once
// Filter-shape index modulation: the pulse-shaping filter is selected per
// symbol period from a bank of N shapes, conveying log2(N) extra bits per
// symbol on top of the log2(M) constellation bits.
//
// Bit layout per symbol (MSB first): log2(N) filter-index bits, then
// log2(M) constellation bits. SMX-FSIM runs Nt independent FSIM streams;
// bits are dealt round-robin in per-symbol groups: during symbol period k,
// stream 0 consumes the next (log2 N + log2 M) bits, then stream 1, ...
//
// Default bank: filter i is a root-raised-cosine (beta 0.25) multiplied by
// cos(2*pi*i*t/T) and renormalized — a frequency-offset root-Nyquist
// family. Each member keeps the Nyquist self-correlation property and the
// spectral offsets keep cross-filter correlation small at every symbol lag.
// Residual cross-symbol ISI from the non-Nyquist cross terms remains and is
// accepted as an impairment: the per-symbol zero-lag joint detector is
// noiseless-exact for constellations whose decision margin exceeds that ISI
// (BPSK, QPSK) and sees rare flips for dense ones (8-PSK, 16-QAM).

#include <Eigen/Dense>
#include <vector>

#include "subthz/constellation.hpp"
#include "subthz/pulse.hpp"

namespace subthz {

struct FilterBank {
  std::vector<PulseFilter> filters;  // shared S and span, unit energy
  Eigen::MatrixXd corr;              // zero-lag inner products, diag = 1

  int size() const { return static_cast<int>(filters.size()); }
  int S() const { return filters.empty() ? 0 : filters[0].S; }
};

// log2(M) + log2(N).
int fsim_bits_per_symbol(int N, int M);

// Validates shared S/span, unit energy, and pairwise |corr| < corr_max.
FilterBank build_bank(const std::vector<PulseFilter>& filters,
                      double corr_max = 0.95);

// N in {2, 4}; see header comment for the construction.
FilterBank build_default_bank(int N, int S = 8, int span = 8,
                              double corr_max = 0.95);

struct FsimConfig {
  FilterBank bank;
  Constellation constellation;

  int bits_per_symbol() const;
};

struct FsimMapped {
  std::vector<int> indices;   // filter index per symbol
  std::vector<cplx> symbols;  // constellation point per symbol
};

FsimMapped fsim_map(const FsimConfig& cfg, const Bits& bits);

// waveform = sum_k symbols[k] * filter_{indices[k]} delayed by k periods.
std::vector<cplx> fsim_modulate(const std::vector<int>& indices,
                                const std::vector<cplx>& symbols,
                                const FilterBank& bank);

// Nt parallel FSIM waveforms (round-robin bit split, see header comment).
std::vector<std::vector<cplx>> smx_fsim_frame(int Nt, const FsimConfig& cfg,
                                              const Bits& bits);

}  // namespace subthz
