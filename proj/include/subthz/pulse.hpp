#pragma once
// Pulse shaping: root-raised-cosine filters, upsample-and-filter
// transmit shaping, and matched filtering with delay compensation.

#include <complex>
#include <vector>

#include "subthz/constellation.hpp"

namespace subthz {

struct PulseFilter {
  std::vector<double> taps;  // unit energy, odd count
  int S = 8;                 // samples per symbol
  int span = 8;              // symbols covered (span*S + 1 taps)
  bool symmetric = true;
  int peak_index = 0;

  double energy() const;
};

// Root-raised-cosine, unit energy, span*S + 1 taps (span*S must be even so
// the filter is centered). Handles the t=0 and |t|=T/(4 beta) limit points
// of the closed form explicitly. Preconditions: 0 < beta <= 1, span >= 4,
// S >= 2; throws std::invalid_argument otherwise.
PulseFilter build_rrc(double beta, int span_symbols, int S);

// Upsample by S and convolve: waveform length (K-1)*S + taps.
std::vector<cplx> shape(const std::vector<cplx>& symbols, const PulseFilter& f);

// Correlate with the (unit-energy) taps at each symbol offset. Symbol k of
// the shaped waveform lands at full-convolution index k*S + taps-1, i.e. at
// the start-offset k*S of the correlation form used here, so the k-th output
// is aligned with the k-th transmitted symbol (group delay compensated).
std::vector<cplx> matched_filter(const std::vector<cplx>& waveform,
                                 const PulseFilter& f);

}  // namespace subthz
