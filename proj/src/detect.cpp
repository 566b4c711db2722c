#include "subthz/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace subthz {

Bits ml_gsm_detect(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& H,
                   const GsmConfig& cfg) {
  if (Y.rows() != H.rows() || H.cols() != cfg.Nt) {
    throw std::invalid_argument("ml_gsm_detect: dimension mismatch");
  }
  int m = cfg.constellation.bits_per_symbol;
  double hyp_count = static_cast<double>(cfg.combos.size()) *
                     std::pow(static_cast<double>(cfg.constellation.M), cfg.Na);
  if (hyp_count > static_cast<double>(1 << 20)) {
    throw std::invalid_argument("ml_gsm_detect: hypothesis budget (2^20) exceeded");
  }

  // Precompute H columns for the active antennas of each combination.
  std::size_t n_combo = cfg.combos.size();
  std::vector<Eigen::MatrixXcd> Hsub(n_combo);
  for (std::size_t ci = 0; ci < n_combo; ++ci) {
    Eigen::MatrixXcd sub(H.rows(), cfg.Na);
    for (int a = 0; a < cfg.Na; ++a) sub.col(a) = H.col(cfg.combos[ci][a]);
    Hsub[ci] = sub;
  }

  Bits out;
  out.reserve(static_cast<std::size_t>(Y.cols()) * cfg.bits_per_symbol());
  std::vector<int> labels(cfg.Na);
  std::vector<int> best_labels(cfg.Na);
  Eigen::VectorXcd x(cfg.Na);
  for (Eigen::Index k = 0; k < Y.cols(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    int best_combo = 0;
    // Ascending combination index, then ascending label tuple (first
    // active antenna's label most significant) = ascending bit pattern.
    for (std::size_t ci = 0; ci < n_combo; ++ci) {
      std::fill(labels.begin(), labels.end(), 0);
      while (true) {
        for (int a = 0; a < cfg.Na; ++a) x(a) = cfg.constellation.points[labels[a]];
        double d = (Y.col(k) - Hsub[ci] * x).squaredNorm();
        if (d < best) {
          best = d;
          best_combo = static_cast<int>(ci);
          best_labels = labels;
        }
        int a = cfg.Na - 1;
        while (a >= 0 && labels[a] == cfg.constellation.M - 1) labels[a--] = 0;
        if (a < 0) break;
        ++labels[a];
      }
    }
    append_label_bits(best_combo, cfg.index_bits, out);
    for (int a = 0; a < cfg.Na; ++a) append_label_bits(best_labels[a], m, out);
  }
  return out;
}

Eigen::MatrixXcd linear_equalize(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& H,
                                 EqMode mode, double N0) {
  if (Y.rows() != H.rows()) throw std::invalid_argument("linear_equalize: dimension mismatch");
  if (mode == EqMode::ZF) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(H);
    if (cod.rank() < H.cols()) {
      throw std::invalid_argument("linear_equalize: H is column-rank deficient under ZF");
    }
    return cod.solve(Y);
  }
  Eigen::MatrixXcd A = H.adjoint() * H +
                       N0 * Eigen::MatrixXcd::Identity(H.cols(), H.cols());
  return A.ldlt().solve(H.adjoint() * Y);
}

FsimDetected fsim_detect(const std::vector<cplx>& waveform, const FilterBank& bank,
                         const Constellation& c) {
  int N = bank.size();
  std::vector<std::vector<cplx>> z(N);
  for (int i = 0; i < N; ++i) z[i] = matched_filter(waveform, bank.filters[i]);
  std::size_t K = z.empty() ? 0 : z[0].size();

  FsimDetected det;
  det.indices.reserve(K);
  det.labels.reserve(K);
  int nb = 0;
  while ((1 << nb) < N) ++nb;
  det.bits.reserve(K * (nb + c.bits_per_symbol));
  for (std::size_t k = 0; k < K; ++k) {
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0, best_lab = 0;
    for (int i = 0; i < N; ++i) {
      double rho = bank.corr(i, i);
      for (int lab = 0; lab < c.M; ++lab) {
        const cplx& s = c.points[lab];
        double metric = 2.0 * (std::conj(s) * z[i][k]).real() - std::norm(s) * rho;
        if (metric > best) {
          best = metric;
          best_i = i;
          best_lab = lab;
        }
      }
    }
    det.indices.push_back(best_i);
    det.labels.push_back(best_lab);
    append_label_bits(best_i, nb, det.bits);
    append_label_bits(best_lab, c.bits_per_symbol, det.bits);
  }
  return det;
}

double ed_midpoint_threshold(double h_mag2) { return h_mag2; }

double ed_calibrate_threshold(double h_mag2, double N0, int n, std::uint64_t seed) {
  Rng rng(seed);
  int half = n / 2;
  std::vector<double> off(half), on(half);
  double a = std::sqrt(2.0 * h_mag2);  // "on" amplitude through the channel
  for (int i = 0; i < half; ++i) off[i] = std::norm(rng.cgaussian(N0));
  for (int i = 0; i < half; ++i) on[i] = std::norm(cplx{a, 0.0} + rng.cgaussian(N0));
  std::sort(off.begin(), off.end());
  std::sort(on.begin(), on.end());
  // Scan candidate thresholds on a fixed grid between the noiseless levels
  // (plus noise headroom); errors(t) = #off > t + #on < t via binary search.
  int grid = 2048;
  double hi = 2.0 * h_mag2 + 8.0 * N0;
  double best_t = h_mag2;
  long best_err = std::numeric_limits<long>::max();
  for (int g = 1; g < grid; ++g) {
    double t = hi * g / grid;
    long e = static_cast<long>(off.end() -
                               std::upper_bound(off.begin(), off.end(), t)) +
             static_cast<long>(std::lower_bound(on.begin(), on.end(), t) -
                               on.begin());
    if (e < best_err) {
      best_err = e;
      best_t = t;
    }
  }
  return best_t;
}

Bits energy_detect(const std::vector<cplx>& y, double threshold) {
  Bits out;
  out.reserve(y.size());
  for (const auto& v : y) {
    out.push_back(std::norm(v) > threshold ? 1 : 0);
  }
  return out;
}

Bits ed_mimo_joint(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& H, double N0,
                   double amp) {
  int Nt = static_cast<int>(H.cols());
  int Mr = static_cast<int>(H.rows());
  if (Y.rows() != Mr) throw std::invalid_argument("ed_mimo_joint: dimension mismatch");
  if (Nt > 8) throw std::invalid_argument("ed_mimo_joint: hypothesis budget (2^8) exceeded");
  int n_hyp = 1 << Nt;

  // Hypothesis energy signatures |(Hx)_m|^2; pattern bit (Nt-1-i) is
  // antenna i so ascending pattern = ascending bit vector.
  Eigen::MatrixXd sig(Mr, n_hyp);
  Eigen::VectorXcd x(Nt);
  double on = std::sqrt(2.0) * amp;
  for (int h = 0; h < n_hyp; ++h) {
    for (int i = 0; i < Nt; ++i) {
      x(i) = ((h >> (Nt - 1 - i)) & 1) ? cplx{on, 0.0} : cplx{0.0, 0.0};
    }
    sig.col(h) = (H * x).cwiseAbs2();
  }

  Bits out;
  out.reserve(static_cast<std::size_t>(Y.cols()) * Nt);
  for (Eigen::Index k = 0; k < Y.cols(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    int best_h = 0;
    for (int h = 0; h < n_hyp; ++h) {
      double d = 0.0;
      for (int m = 0; m < Mr; ++m) {
        double r = std::norm(Y(m, k)) - sig(m, h) - N0;
        d += r * r;
      }
      if (d < best) {
        best = d;
        best_h = h;
      }
    }
    for (int i = 0; i < Nt; ++i) {
      out.push_back(static_cast<std::uint8_t>((best_h >> (Nt - 1 - i)) & 1));
    }
  }
  return out;
}

}  // namespace subthz
