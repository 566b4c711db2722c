#include "subthz/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace subthz {

double pn_variance(double floor_dBcHz, double bandwidth_Hz) {
  if (bandwidth_Hz <= 0.0) throw std::invalid_argument("pn_variance: B must be > 0");
  return std::pow(10.0, floor_dBcHz / 10.0) * bandwidth_Hz;
}

std::vector<cplx> add_phase_noise(const std::vector<cplx>& signal, double sigma2,
                                  Rng& rng) {
  if (sigma2 < 0.0) throw std::invalid_argument("add_phase_noise: sigma2 < 0");
  if (sigma2 == 0.0) return signal;
  std::vector<cplx> out;
  out.reserve(signal.size());
  double sd = std::sqrt(sigma2);
  for (const auto& x : signal) {
    double phi = sd * rng.gaussian();
    out.push_back(x * cplx{std::cos(phi), std::sin(phi)});
  }
  return out;
}

std::vector<cplx> add_awgn(const std::vector<cplx>& signal, double N0, Rng& rng) {
  if (N0 < 0.0) throw std::invalid_argument("add_awgn: N0 < 0");
  if (N0 == 0.0) return signal;
  std::vector<cplx> out;
  out.reserve(signal.size());
  for (const auto& x : signal) out.push_back(x + rng.cgaussian(N0));
  return out;
}

std::vector<cplx> add_awgn_snr(const std::vector<cplx>& signal, double snr_dB,
                               Rng& rng) {
  if (signal.empty()) return {};
  double p = 0.0;
  for (const auto& x : signal) p += std::norm(x);
  p /= static_cast<double>(signal.size());
  double N0 = p / std::pow(10.0, snr_dB / 10.0);
  return add_awgn(signal, N0, rng);
}

}  // namespace subthz
