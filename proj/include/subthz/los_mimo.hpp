#pragma once
// Line-of-sight MIMO channel from exact array geometry. Entries combine
// free-space amplitude and per-element antenna gains at the exact
// element-to-element offsets with a spherical-wavefront phase term
// exp(-j*2*pi*d_mn/lambda) — no plane-wave approximation, since short-range
// links with sizeable arrays sit in the radiating near field.
//
// Geometry: two parallel uniform linear arrays facing each other at
// boresight (broadside), element coordinates centered on the link axis.

#include <Eigen/Dense>

#include "subthz/constellation.hpp"
#include "subthz/propagation.hpp"
#include "subthz/rng.hpp"

namespace subthz {

struct LosMimoGeometry {
  double carrier_Hz = 150e9;
  int n_tx = 1;
  int m_rx = 1;
  double tx_spacing_m = 0.001;
  double rx_spacing_m = 0.001;
  double distance_m = 5.0;
  AntennaPattern tx_pattern;
  AntennaPattern rx_pattern;
};

double wavelength_m(double carrier_Hz);

// sqrt(lambda * d / N): spacing that orthogonalizes an N-element LoS link.
double rayleigh_spacing_m(double carrier_Hz, double distance_m, int N);

double half_wavelength_spacing_m(double carrier_Hz);

// M x N complex matrix; deterministic in the geometry.
Eigen::MatrixXcd los_mimo_matrix(const LosMimoGeometry& geom);

// Y = H*X, then one independent phase-noise process per receive chain
// (same phase applied across a chain's row entry per sample), then AWGN
// with E|n|^2 = N0 per receive sample. pn_sigma2 = 0 / N0 = 0 skip their
// stages without consuming randomness.
Eigen::MatrixXcd apply_mimo(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& X,
                            Rng& rng, double N0, double pn_sigma2);

}  // namespace subthz
