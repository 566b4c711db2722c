#include "subthz/gsm.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace subthz {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

namespace {

int floor_log2_u64(std::uint64_t v) {
  int b = -1;
  while (v) {
    v >>= 1;
    ++b;
  }
  return b;
}

int ilog2(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

void check_nt_na(int Nt, int Na) {
  if (Na < 1 || Na > Nt) {
    throw std::invalid_argument("gsm: need 1 <= Na <= Nt, got Na=" +
                                std::to_string(Na) + " Nt=" + std::to_string(Nt));
  }
}

}  // namespace

int gsm_bits_per_symbol(int Nt, int Na, int M) {
  check_nt_na(Nt, Na);
  if (M < 2 || (M & (M - 1)) != 0) {
    throw std::invalid_argument("gsm: M must be a power of 2");
  }
  return Na * ilog2(M) + floor_log2_u64(binomial(Nt, Na));
}

std::vector<std::vector<int>> gsm_legal_combinations(int Nt, int Na) {
  check_nt_na(Nt, Na);
  std::size_t want = std::size_t{1} << floor_log2_u64(binomial(Nt, Na));
  std::vector<std::vector<int>> out;
  out.reserve(want);
  std::vector<int> cur(Na);
  for (int i = 0; i < Na; ++i) cur[i] = i;
  while (out.size() < want) {
    out.push_back(cur);
    // next lexicographic size-Na subset of {0..Nt-1}
    int i = Na - 1;
    while (i >= 0 && cur[i] == Nt - Na + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < Na; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> gsm_legal_combinations(
    int Nt, int Na, const std::vector<std::vector<int>>& user) {
  check_nt_na(Nt, Na);
  std::size_t want = std::size_t{1} << floor_log2_u64(binomial(Nt, Na));
  if (user.size() != want) {
    throw std::invalid_argument("gsm: combination list must have " +
                                std::to_string(want) + " entries, got " +
                                std::to_string(user.size()));
  }
  std::set<std::vector<int>> seen;
  for (auto combo : user) {
    std::sort(combo.begin(), combo.end());
    if (static_cast<int>(combo.size()) != Na) {
      throw std::invalid_argument("gsm: combination size must equal Na");
    }
    for (int a : combo) {
      if (a < 0 || a >= Nt) throw std::invalid_argument("gsm: antenna out of range");
    }
    if (!seen.insert(combo).second) {
      throw std::invalid_argument("gsm: duplicate combination in list");
    }
  }
  return user;
}

GsmConfig make_gsm_config(int Nt, int Na, const Constellation& c) {
  return make_gsm_config(Nt, Na, c, gsm_legal_combinations(Nt, Na));
}

GsmConfig make_gsm_config(int Nt, int Na, const Constellation& c,
                          const std::vector<std::vector<int>>& combos) {
  GsmConfig cfg;
  cfg.Nt = Nt;
  cfg.Na = Na;
  cfg.constellation = c;
  cfg.combos = gsm_legal_combinations(Nt, Na, combos);
  cfg.index_bits = floor_log2_u64(binomial(Nt, Na));
  cfg.apm_bits = Na * c.bits_per_symbol;
  return cfg;
}

GsmMapped gsm_map(const GsmConfig& cfg, const Bits& bits) {
  int bps = cfg.bits_per_symbol();
  if (bits.size() % bps != 0) {
    throw std::invalid_argument("gsm_map: bit count not divisible by bits/symbol");
  }
  GsmMapped out;
  std::size_t K = bits.size() / bps;
  out.combo_index.reserve(K);
  out.symbols.reserve(K);
  int m = cfg.constellation.bits_per_symbol;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < K; ++k) {
    int ci = 0;
    for (int i = 0; i < cfg.index_bits; ++i) ci = (ci << 1) | bits[pos++];
    out.combo_index.push_back(ci);
    std::vector<cplx> syms(cfg.Na);
    for (int a = 0; a < cfg.Na; ++a) {
      int lab = 0;
      for (int i = 0; i < m; ++i) lab = (lab << 1) | bits[pos++];
      syms[a] = cfg.constellation.points[lab];
    }
    out.symbols.push_back(std::move(syms));
  }
  return out;
}

Eigen::MatrixXcd gsm_frame(const GsmConfig& cfg, const Bits& bits) {
  GsmMapped mapped = gsm_map(cfg, bits);
  std::size_t K = mapped.combo_index.size();
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(cfg.Nt, static_cast<Eigen::Index>(K));
  for (std::size_t k = 0; k < K; ++k) {
    const auto& combo = cfg.combos[mapped.combo_index[k]];
    for (int a = 0; a < cfg.Na; ++a) {
      X(combo[a], static_cast<Eigen::Index>(k)) = mapped.symbols[k][a];
    }
  }
  return X;
}

}  // namespace subthz
