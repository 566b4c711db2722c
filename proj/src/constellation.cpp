#include "subthz/constellation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subthz {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int ilog2(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

}  // namespace

std::uint32_t gray_encode(std::uint32_t n) { return n ^ (n >> 1); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t n = 0;
  for (; g; g >>= 1) n ^= g;
  return n;
}

Constellation build_constellation(ConstKind kind, int M, int polar_rings) {
  if (!is_pow2(M)) {
    throw std::invalid_argument("constellation order M must be a power of 2, got " +
                                std::to_string(M));
  }
  Constellation c;
  c.kind = kind;
  c.M = M;
  c.bits_per_symbol = ilog2(M);
  c.points.assign(M, cplx{0.0, 0.0});

  switch (kind) {
    case ConstKind::QAM: {
      int L = 1;
      while (L * L < M) ++L;
      if (L * L != M) {
        throw std::invalid_argument("QAM requires square M (4,16,64,256), got " +
                                    std::to_string(M));
      }
      int half = c.bits_per_symbol / 2;
      double es = 0.0;
      for (int lab = 0; lab < M; ++lab) {
        std::uint32_t gi = static_cast<std::uint32_t>(lab) >> half;
        std::uint32_t gq = static_cast<std::uint32_t>(lab) & ((1u << half) - 1);
        double I = (L - 1) - 2.0 * gray_decode(gi);
        double Q = (L - 1) - 2.0 * gray_decode(gq);
        c.points[lab] = {I, Q};
        es += I * I + Q * Q;
      }
      double scale = std::sqrt(es / M);
      for (auto& p : c.points) p /= scale;
      break;
    }
    case ConstKind::PSK: {
      for (int lab = 0; lab < M; ++lab) {
        double ph = 2.0 * M_PI * gray_decode(static_cast<std::uint32_t>(lab)) / M;
        c.points[lab] = {std::cos(ph), std::sin(ph)};
      }
      // Clean up the BPSK/QPSK axis points so exact comparisons behave.
      for (auto& p : c.points) {
        if (std::abs(p.real()) < 1e-15) p = {0.0, p.imag()};
        if (std::abs(p.imag()) < 1e-15) p = {p.real(), 0.0};
      }
      break;
    }
    case ConstKind::POLAR: {
      int A = polar_rings > 0 ? polar_rings : (1 << (c.bits_per_symbol / 2));
      if (!is_pow2(A) || M % A != 0) {
        throw std::invalid_argument("polar rings must be a power of 2 dividing M");
      }
      int P = M / A;
      if (P < 2) throw std::invalid_argument("polar needs at least 2 phases");
      c.rings = A;
      c.phases = P;
      c.ring_delta = std::sqrt(6.0 / ((A + 1.0) * (2.0 * A + 1.0)));
      int pbits = ilog2(P);
      for (int lab = 0; lab < M; ++lab) {
        std::uint32_t gr = static_cast<std::uint32_t>(lab) >> pbits;
        std::uint32_t gp = static_cast<std::uint32_t>(lab) & ((1u << pbits) - 1);
        int a = static_cast<int>(gray_decode(gr));
        int p = static_cast<int>(gray_decode(gp));
        double r = (a + 1) * c.ring_delta;
        double ph = 2.0 * M_PI * p / P;
        c.points[lab] = {r * std::cos(ph), r * std::sin(ph)};
      }
      break;
    }
    case ConstKind::OOK: {
      if (M != 2) throw std::invalid_argument("OOK requires M = 2");
      c.points[0] = {0.0, 0.0};
      c.points[1] = {std::sqrt(2.0), 0.0};
      break;
    }
  }
  return c;
}

void append_label_bits(int label, int nbits, Bits& out) {
  for (int i = nbits - 1; i >= 0; --i) {
    out.push_back(static_cast<std::uint8_t>((label >> i) & 1));
  }
}

std::vector<cplx> map_bits(const Constellation& c, const Bits& bits) {
  int m = c.bits_per_symbol;
  if (bits.size() % m != 0) {
    throw std::invalid_argument("bit count " + std::to_string(bits.size()) +
                                " not divisible by bits/symbol " + std::to_string(m));
  }
  std::vector<cplx> out;
  out.reserve(bits.size() / m);
  for (std::size_t k = 0; k < bits.size(); k += m) {
    int lab = 0;
    for (int i = 0; i < m; ++i) lab = (lab << 1) | bits[k + i];
    out.push_back(c.points[lab]);
  }
  return out;
}

std::vector<int> demap_labels(const Constellation& c,
                              const std::vector<cplx>& symbols) {
  std::vector<int> labels;
  labels.reserve(symbols.size());
  if (c.kind == ConstKind::POLAR) {
    int pbits = 0;
    while ((1 << pbits) < c.phases) ++pbits;
    for (const auto& y : symbols) {
      double r = std::abs(y);
      int a = 0;
      double best = std::abs(r - c.ring_delta);
      for (int i = 1; i < c.rings; ++i) {
        double d = std::abs(r - (i + 1) * c.ring_delta);
        if (d < best) {
          best = d;
          a = i;
        }
      }
      double sector = std::arg(y) / (2.0 * M_PI / c.phases);
      long p = std::lround(sector);
      p %= c.phases;
      if (p < 0) p += c.phases;
      int lab = static_cast<int>((gray_encode(a) << pbits) |
                                 gray_encode(static_cast<std::uint32_t>(p)));
      labels.push_back(lab);
    }
    return labels;
  }
  for (const auto& y : symbols) {
    int best_lab = 0;
    double best = std::norm(y - c.points[0]);
    for (int lab = 1; lab < c.M; ++lab) {
      double d = std::norm(y - c.points[lab]);
      if (d < best) {  // strict: ties keep the lowest label
        best = d;
        best_lab = lab;
      }
    }
    labels.push_back(best_lab);
  }
  return labels;
}

Bits demap_hard(const Constellation& c, const std::vector<cplx>& symbols) {
  Bits out;
  out.reserve(symbols.size() * c.bits_per_symbol);
  for (int lab : demap_labels(c, symbols)) {
    append_label_bits(lab, c.bits_per_symbol, out);
  }
  return out;
}

}  // namespace subthz
