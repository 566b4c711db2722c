#pragma once
// Stochastic impairments: oscillator phase noise (i.i.d. Gaussian phase per
// sample, uncorrelated model) and circular complex AWGN.

#include <vector>

#include "subthz/constellation.hpp"
#include "subthz/rng.hpp"

namespace subthz {

// Phase variance in rad^2 from a one-sided noise-floor spectral density
// (dBc/Hz) integrated over bandwidth B: 10^(floor/10) * B.
double pn_variance(double floor_dBcHz, double bandwidth_Hz);

// Multiplies each sample by exp(j*phi), phi ~ N(0, sigma2) i.i.d.
// Magnitudes are preserved exactly. sigma2 = 0 is the identity (and does
// not consume randomness).
std::vector<cplx> add_phase_noise(const std::vector<cplx>& signal, double sigma2,
                                  Rng& rng);

// Adds complex Gaussian noise with E|n|^2 = N0 per sample. N0 = 0 is the
// identity (and does not consume randomness).
std::vector<cplx> add_awgn(const std::vector<cplx>& signal, double N0, Rng& rng);

// SNR mode: noise power set from the measured mean input power so that
// mean(|x|^2)/N0 equals the requested SNR.
std::vector<cplx> add_awgn_snr(const std::vector<cplx>& signal, double snr_dB,
                               Rng& rng);

}  // namespace subthz
