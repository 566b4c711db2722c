#include "subthz/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace subthz {

double PulseFilter::energy() const {
  double e = 0.0;
  for (double t : taps) e += t * t;
  return e;
}

PulseFilter build_rrc(double beta, int span_symbols, int S) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("rrc: beta must be in (0, 1]");
  }
  if (span_symbols < 4) throw std::invalid_argument("rrc: span must be >= 4");
  if (S < 2) throw std::invalid_argument("rrc: samples/symbol must be >= 2");
  int n = span_symbols * S;
  if (n % 2 != 0) throw std::invalid_argument("rrc: span*S must be even");

  PulseFilter f;
  f.S = S;
  f.span = span_symbols;
  f.symmetric = true;
  f.peak_index = n / 2;
  f.taps.resize(n + 1);

  double singular_t = 1.0 / (4.0 * beta);
  for (int i = 0; i <= n; ++i) {
    double t = (i - n / 2) / static_cast<double>(S);  // in symbol periods
    double v;
    if (std::abs(t) < 1e-12) {
      v = 1.0 - beta + 4.0 * beta / M_PI;
    } else if (std::abs(std::abs(t) - singular_t) < 1e-9) {
      v = (beta / std::sqrt(2.0)) *
          ((1.0 + 2.0 / M_PI) * std::sin(M_PI / (4.0 * beta)) +
           (1.0 - 2.0 / M_PI) * std::cos(M_PI / (4.0 * beta)));
    } else {
      double num = std::sin(M_PI * t * (1.0 - beta)) +
                   4.0 * beta * t * std::cos(M_PI * t * (1.0 + beta));
      double den = M_PI * t * (1.0 - 16.0 * beta * beta * t * t);
      v = num / den;
    }
    f.taps[i] = v;
  }
  double e = std::sqrt(f.energy());
  for (double& t : f.taps) t /= e;
  return f;
}

std::vector<cplx> shape(const std::vector<cplx>& symbols, const PulseFilter& f) {
  std::size_t L = f.taps.size();
  if (symbols.empty()) return {};
  std::vector<cplx> wave((symbols.size() - 1) * f.S + L, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    cplx s = symbols[k];
    if (s == cplx{0.0, 0.0}) continue;
    std::size_t off = k * f.S;
    for (std::size_t i = 0; i < L; ++i) wave[off + i] += s * f.taps[i];
  }
  return wave;
}

std::vector<cplx> matched_filter(const std::vector<cplx>& waveform,
                                 const PulseFilter& f) {
  std::size_t L = f.taps.size();
  if (waveform.size() < L) return {};
  std::size_t K = (waveform.size() - L) / f.S + 1;
  std::vector<cplx> out(K);
  for (std::size_t k = 0; k < K; ++k) {
    cplx acc{0.0, 0.0};
    std::size_t off = k * f.S;
    for (std::size_t i = 0; i < L; ++i) acc += waveform[off + i] * f.taps[i];
    out[k] = acc;
  }
  return out;
}

}  // namespace subthz
