#pragma once
// Binary BCH(63, k, t) codes over GF(2^6), primitive polynomial
// x^6 + x + 1, narrow sense (b = 1). Systematic encoding (message bits
// first, parity last), hard-decision decoding via syndromes,
// Berlekamp-Massey and Chien search. Decode failure is a value, not an
// exception: the received systematic bits are returned unchanged with the
// failed flag set (downstream BER accounting counts them as-is).
//
// Bit order: codeword index 0 holds the highest-degree coefficient, i.e.
// codeword[0..k-1] = message, codeword[k..62] = parity.

#include <cstdint>
#include <vector>

#include "subthz/constellation.hpp"

namespace subthz {

struct BchCodeInfo {
  int k;
  int t;
  double rate;
};

// Rate-1 passthrough (63,63,0) plus the canonical rows
// (57,1) (51,2) (45,3) (39,4) (36,5) (30,6) (24,7).
std::vector<BchCodeInfo> code_table();

struct BchCode {
  int n = 63;
  int k = 63;
  int t = 0;
  std::vector<std::uint8_t> generator;  // degree n-k, generator[i] = coeff of x^i
};

// Builds the code for a message size k from code_table(); throws
// std::invalid_argument for k not in the table. The generator is
// constructed from cyclotomic cosets and asserted to have degree n-k.
BchCode make_bch(int k);

struct BchDecodeResult {
  Bits message;
  int corrected = 0;
  bool failed = false;
};

// message.size() must equal code.k.
Bits bch_encode(const BchCode& code, const Bits& message);

// received.size() must equal 63.
BchDecodeResult bch_decode(const BchCode& code, const Bits& received);

}  // namespace subthz
