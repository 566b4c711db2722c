#pragma once
// Labeled constellations with unit average energy: square QAM, PSK,
// polar (ring/phase) QAM, and OOK.
//
// Labeling conventions (fixed so bit-level results are reproducible):
//  - Labels are integers in [0, M); map_bits consumes log2(M) bits per
//    symbol MSB-first, so bit vector b0..b{m-1} -> label sum b_i 2^{m-1-i}.
//  - QAM (square, M in {4,16,64,256}): the high m/2 label bits Gray-code
//    the I axis, the low m/2 bits Gray-code the Q axis. Per axis, Gray
//    index g decodes to level (L-1) - 2*inv_gray(g), L = sqrt(M) levels,
//    so label 0 sits at the top-right corner: QPSK bits 00 -> (1+j)/sqrt(2).
//    Axis-adjacent points differ in exactly one bit.
//  - PSK: label Gray-codes the phase index p, point = exp(j*2*pi*p/M).
//    BPSK: 0 -> +1, 1 -> -1.
//  - POLAR: A rings x P phases (M = A*P). High log2(A) label bits Gray-code
//    the ring index a (radius (a+1)*delta), low log2(P) bits Gray-code the
//    phase index. delta = sqrt(6/((A+1)(2A+1))) normalizes mean energy to 1.
//    Default A = 2^floor(log2(M)/2) when the caller does not supply one.
//  - OOK: label 0 -> 0, label 1 -> sqrt(2) (unit mean energy with
//    equiprobable bits).
//
// Hard decisions: QAM/PSK/OOK decide by minimum Euclidean distance with
// ties broken toward the lowest label. POLAR decides ring and phase
// independently (nearest radius on |y|, nearest sector on arg y), which is
// the intended phase-noise-robust receiver for that scheme.

#include <complex>
#include <cstdint>
#include <vector>

namespace subthz {

using cplx = std::complex<double>;
using Bits = std::vector<std::uint8_t>;

enum class ConstKind { QAM, PSK, POLAR, OOK };

struct Constellation {
  ConstKind kind = ConstKind::QAM;
  int M = 4;
  int bits_per_symbol = 2;
  std::vector<cplx> points;  // indexed by label
  // POLAR geometry (rings=1 for other kinds).
  int rings = 1;
  int phases = 1;
  double ring_delta = 0.0;
};

std::uint32_t gray_encode(std::uint32_t n);
std::uint32_t gray_decode(std::uint32_t g);

// polar_rings = 0 selects the default ring count for POLAR; ignored
// otherwise. Throws std::invalid_argument on invalid (kind, M, rings).
Constellation build_constellation(ConstKind kind, int M, int polar_rings = 0);

std::vector<cplx> map_bits(const Constellation& c, const Bits& bits);

// Hard symbol decision -> label per symbol (see header comment for rules).
std::vector<int> demap_labels(const Constellation& c,
                              const std::vector<cplx>& symbols);

Bits demap_hard(const Constellation& c, const std::vector<cplx>& symbols);

// Label value -> bit vector (MSB first), appended to out.
void append_label_bits(int label, int nbits, Bits& out);

}  // namespace subthz
