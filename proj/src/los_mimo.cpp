#include "subthz/los_mimo.hpp"

#include <cmath>
#include <stdexcept>

namespace subthz {

double wavelength_m(double carrier_Hz) {
  if (carrier_Hz <= 0.0) throw std::invalid_argument("carrier must be > 0");
  return 299792458.0 / carrier_Hz;
}

double rayleigh_spacing_m(double carrier_Hz, double distance_m, int N) {
  if (N < 1 || distance_m <= 0.0) {
    throw std::invalid_argument("rayleigh spacing: need N >= 1, d > 0");
  }
  return std::sqrt(wavelength_m(carrier_Hz) * distance_m / N);
}

double half_wavelength_spacing_m(double carrier_Hz) {
  return wavelength_m(carrier_Hz) / 2.0;
}

Eigen::MatrixXcd los_mimo_matrix(const LosMimoGeometry& geom) {
  if (geom.distance_m <= 0.0) throw std::invalid_argument("los mimo: distance must be > 0");
  if (geom.n_tx < 1 || geom.m_rx < 1) throw std::invalid_argument("los mimo: bad array sizes");
  if (geom.tx_spacing_m <= 0.0 || geom.rx_spacing_m <= 0.0) {
    throw std::invalid_argument("los mimo: spacing must be > 0");
  }
  double lambda = wavelength_m(geom.carrier_Hz);
  Eigen::MatrixXcd H(geom.m_rx, geom.n_tx);
  for (int m = 0; m < geom.m_rx; ++m) {
    double xr = (m - (geom.m_rx - 1) / 2.0) * geom.rx_spacing_m;
    for (int n = 0; n < geom.n_tx; ++n) {
      double xt = (n - (geom.n_tx - 1) / 2.0) * geom.tx_spacing_m;
      double dx = xt - xr;
      double dist = std::hypot(geom.distance_m, dx);
      double off_deg = std::abs(std::atan2(dx, geom.distance_m)) * 180.0 / M_PI;
      double gain_dB = antenna_gain_dBi(geom.tx_pattern, off_deg) +
                       antenna_gain_dBi(geom.rx_pattern, off_deg) -
                       fspl_dB(geom.carrier_Hz, dist);
      double amp = std::pow(10.0, gain_dB / 20.0);
      double ph = -2.0 * M_PI * dist / lambda;
      H(m, n) = amp * cplx{std::cos(ph), std::sin(ph)};
    }
  }
  return H;
}

Eigen::MatrixXcd apply_mimo(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& X,
                            Rng& rng, double N0, double pn_sigma2) {
  if (H.cols() != X.rows()) {
    throw std::invalid_argument("apply_mimo: H columns must match X rows");
  }
  Eigen::MatrixXcd Y = H * X;
  if (pn_sigma2 > 0.0) {
    double sd = std::sqrt(pn_sigma2);
    for (Eigen::Index m = 0; m < Y.rows(); ++m) {
      for (Eigen::Index k = 0; k < Y.cols(); ++k) {
        double phi = sd * rng.gaussian();
        Y(m, k) *= cplx{std::cos(phi), std::sin(phi)};
      }
    }
  } else if (pn_sigma2 < 0.0) {
    throw std::invalid_argument("apply_mimo: pn_sigma2 < 0");
  }
  if (N0 > 0.0) {
    for (Eigen::Index m = 0; m < Y.rows(); ++m) {
      for (Eigen::Index k = 0; k < Y.cols(); ++k) Y(m, k) += rng.cgaussian(N0);
    }
  } else if (N0 < 0.0) {
    throw std::invalid_argument("apply_mimo: N0 < 0");
  }
  return Y;
}

}  // namespace subthz
