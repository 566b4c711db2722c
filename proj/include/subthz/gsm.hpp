#pragma once
// Generalized spatial modulation: Na of Nt antennas are active per symbol
// period; the choice of active set carries floor(log2 C(Nt,Na)) index bits
// and each active antenna carries one constellation symbol.
//
// Bit layout per symbol period (MSB first): index bits selecting the
// combination, then Na groups of log2(M) bits mapped onto the active
// antennas in ascending antenna order.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "subthz/constellation.hpp"

namespace subthz {

std::uint64_t binomial(int n, int k);

struct GsmConfig {
  int Nt = 2;
  int Na = 1;
  Constellation constellation;
  std::vector<std::vector<int>> combos;  // legal active sets, each sorted
  int index_bits = 0;
  int apm_bits = 0;

  int bits_per_symbol() const { return index_bits + apm_bits; }
};

// Na*log2(M) + floor(log2 C(Nt,Na)).
int gsm_bits_per_symbol(int Nt, int Na, int M);

// First 2^floor(log2 C(Nt,Na)) size-Na subsets in lexicographic order.
std::vector<std::vector<int>> gsm_legal_combinations(int Nt, int Na);

// Validates and adopts a user-supplied combination list (must have exactly
// 2^floor(log2 C(Nt,Na)) distinct size-Na subsets).
std::vector<std::vector<int>> gsm_legal_combinations(
    int Nt, int Na, const std::vector<std::vector<int>>& user);

GsmConfig make_gsm_config(int Nt, int Na, const Constellation& c);
GsmConfig make_gsm_config(int Nt, int Na, const Constellation& c,
                          const std::vector<std::vector<int>>& combos);

struct GsmMapped {
  std::vector<int> combo_index;           // per symbol period
  std::vector<std::vector<cplx>> symbols;  // Na symbols per period
};

GsmMapped gsm_map(const GsmConfig& cfg, const Bits& bits);

// Nt x K matrix; inactive antennas carry exact zeros.
Eigen::MatrixXcd gsm_frame(const GsmConfig& cfg, const Bits& bits);

}  // namespace subthz
