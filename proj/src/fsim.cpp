#include "subthz/fsim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subthz {

namespace {

int ilog2(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

int fsim_bits_per_symbol(int N, int M) {
  if (!is_pow2(N) || !is_pow2(M)) {
    throw std::invalid_argument("fsim: N and M must be powers of 2");
  }
  return ilog2(M) + ilog2(N);
}

FilterBank build_bank(const std::vector<PulseFilter>& filters, double corr_max) {
  if (filters.empty()) throw std::invalid_argument("bank: no filters");
  int S = filters[0].S;
  int span = filters[0].span;
  std::size_t L = filters[0].taps.size();
  for (const auto& f : filters) {
    if (f.S != S || f.span != span || f.taps.size() != L) {
      throw std::invalid_argument("bank: filters must share S and span");
    }
    if (std::abs(f.energy() - 1.0) > 1e-9) {
      throw std::invalid_argument("bank: filters must have unit energy");
    }
  }
  int N = static_cast<int>(filters.size());
  FilterBank bank;
  bank.filters = filters;
  bank.corr.resize(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double c = 0.0;
      for (std::size_t t = 0; t < L; ++t) c += filters[i].taps[t] * filters[j].taps[t];
      bank.corr(i, j) = c;
    }
  }
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      if (std::abs(bank.corr(i, j)) >= corr_max) {
        throw std::invalid_argument(
            "bank: zero-lag correlation " + std::to_string(bank.corr(i, j)) +
            " between filters " + std::to_string(i) + "," + std::to_string(j) +
            " violates the distinguishability bound " + std::to_string(corr_max));
      }
    }
  }
  return bank;
}

FilterBank build_default_bank(int N, int S, int span, double corr_max) {
  if (N != 2 && N != 4) {
    throw std::invalid_argument("default bank supports N in {2, 4}, got " +
                                std::to_string(N));
  }
  PulseFilter base = build_rrc(0.25, span, S);
  int n = span * S;
  std::vector<PulseFilter> filters;
  filters.reserve(N);
  for (int i = 0; i < N; ++i) {
    PulseFilter f = base;
    if (i > 0) {
      for (int t = 0; t <= n; ++t) {
        double ts = (t - n / 2) / static_cast<double>(S);
        f.taps[t] *= std::cos(2.0 * M_PI * i * ts);
      }
      double e = std::sqrt(f.energy());
      for (double& v : f.taps) v /= e;
    }
    filters.push_back(std::move(f));
  }
  return build_bank(filters, corr_max);
}

int FsimConfig::bits_per_symbol() const {
  return fsim_bits_per_symbol(bank.size(), constellation.M);
}

FsimMapped fsim_map(const FsimConfig& cfg, const Bits& bits) {
  int nb = ilog2(cfg.bank.size());
  int mb = cfg.constellation.bits_per_symbol;
  int bps = nb + mb;
  if (bits.size() % bps != 0) {
    throw std::invalid_argument("fsim_map: bit count not divisible by bits/symbol");
  }
  FsimMapped out;
  std::size_t K = bits.size() / bps;
  out.indices.reserve(K);
  out.symbols.reserve(K);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < K; ++k) {
    int idx = 0;
    for (int i = 0; i < nb; ++i) idx = (idx << 1) | bits[pos++];
    int lab = 0;
    for (int i = 0; i < mb; ++i) lab = (lab << 1) | bits[pos++];
    out.indices.push_back(idx);
    out.symbols.push_back(cfg.constellation.points[lab]);
  }
  return out;
}

std::vector<cplx> fsim_modulate(const std::vector<int>& indices,
                                const std::vector<cplx>& symbols,
                                const FilterBank& bank) {
  if (indices.size() != symbols.size()) {
    throw std::invalid_argument("fsim_modulate: indices/symbols length mismatch");
  }
  if (indices.empty()) return {};
  int S = bank.S();
  std::size_t L = bank.filters[0].taps.size();
  std::vector<cplx> wave((indices.size() - 1) * S + L, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < indices.size(); ++k) {
    int idx = indices[k];
    if (idx < 0 || idx >= bank.size()) {
      throw std::invalid_argument("fsim_modulate: filter index out of range");
    }
    const auto& taps = bank.filters[idx].taps;
    cplx s = symbols[k];
    std::size_t off = k * S;
    for (std::size_t i = 0; i < L; ++i) wave[off + i] += s * taps[i];
  }
  return wave;
}

std::vector<std::vector<cplx>> smx_fsim_frame(int Nt, const FsimConfig& cfg,
                                              const Bits& bits) {
  if (Nt < 1) throw std::invalid_argument("smx_fsim_frame: Nt must be >= 1");
  int bps = cfg.bits_per_symbol();
  if (bits.size() % (static_cast<std::size_t>(Nt) * bps) != 0) {
    throw std::invalid_argument(
        "smx_fsim_frame: bit count not divisible by Nt * bits/symbol");
  }
  std::size_t K = bits.size() / (static_cast<std::size_t>(Nt) * bps);
  std::vector<Bits> per_stream(Nt);
  for (auto& b : per_stream) b.reserve(K * bps);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < K; ++k) {
    for (int s = 0; s < Nt; ++s) {
      for (int i = 0; i < bps; ++i) per_stream[s].push_back(bits[pos++]);
    }
  }
  std::vector<std::vector<cplx>> waves;
  waves.reserve(Nt);
  for (int s = 0; s < Nt; ++s) {
    FsimMapped m = fsim_map(cfg, per_stream[s]);
    waves.push_back(fsim_modulate(m.indices, m.symbols, cfg.bank));
  }
  return waves;
}

}  // namespace subthz
