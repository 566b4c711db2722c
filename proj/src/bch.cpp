#include "subthz/bch.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace subthz {

namespace {

// GF(2^6) with primitive polynomial x^6 + x + 1 (0b1000011).
struct Gf64 {
  std::array<int, 64> exp_of{};   // exp_of[i] = alpha^i as 6-bit int, i in [0,62]
  std::array<int, 64> log_of{};   // log_of[v] for v in [1,63]

  Gf64() {
    int v = 1;
    for (int i = 0; i < 63; ++i) {
      exp_of[i] = v;
      log_of[v] = i;
      v <<= 1;
      if (v & 64) v ^= 0x43;  // reduce by x^6 + x + 1
    }
    exp_of[63] = 1;  // convenience: alpha^63 = alpha^0
  }

  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_of[(log_of[a] + log_of[b]) % 63];
  }

  int inv(int a) const {
    if (a == 0) throw std::domain_error("GF(64) inverse of 0");
    return exp_of[(63 - log_of[a]) % 63];
  }

  int pow_alpha(int e) const {
    e %= 63;
    if (e < 0) e += 63;
    return exp_of[e];
  }
};

const Gf64& gf() {
  static const Gf64 field;
  return field;
}

// Minimal polynomial (over GF(2)) of alpha^c: product over the cyclotomic
// coset of c of (x - alpha^j). Coefficients come out in {0,1}.
std::vector<std::uint8_t> minimal_poly(int c) {
  const Gf64& f = gf();
  std::vector<int> coset;
  int j = c % 63;
  do {
    coset.push_back(j);
    j = (j * 2) % 63;
  } while (j != c % 63);

  // poly over GF(64), poly[i] = coeff of x^i; start with 1.
  std::vector<int> poly{1};
  for (int root_exp : coset) {
    int r = f.pow_alpha(root_exp);
    std::vector<int> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] ^= poly[i];            // x * poly
      next[i] ^= f.mul(poly[i], r);      // r * poly (GF(2): add = xor)
    }
    poly = std::move(next);
  }
  std::vector<std::uint8_t> out(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] != 0 && poly[i] != 1) {
      throw std::logic_error("minimal polynomial has non-binary coefficient");
    }
    out[i] = static_cast<std::uint8_t>(poly[i]);
  }
  return out;
}

std::vector<std::uint8_t> poly_mul_gf2(const std::vector<std::uint8_t>& a,
                                       const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
  }
  return out;
}

// lcm over GF(2) of the minimal polynomials of alpha^1 .. alpha^{2t}.
std::vector<std::uint8_t> generator_poly(int t) {
  std::vector<std::uint8_t> g{1};
  std::vector<int> used_cosets;
  for (int c = 1; c <= 2 * t; ++c) {
    int rep = c % 63;  // smallest member of the coset identifies it
    int j = rep, mn = rep;
    do {
      mn = std::min(mn, j);
      j = (j * 2) % 63;
    } while (j != rep);
    bool seen = false;
    for (int u : used_cosets) seen = seen || (u == mn);
    if (seen) continue;
    used_cosets.push_back(mn);
    g = poly_mul_gf2(g, minimal_poly(mn));
  }
  return g;
}

}  // namespace

std::vector<BchCodeInfo> code_table() {
  std::vector<BchCodeInfo> table{{63, 0, 1.0}};
  const int ks[] = {57, 51, 45, 39, 36, 30, 24};
  for (int i = 0; i < 7; ++i) {
    table.push_back({ks[i], i + 1, ks[i] / 63.0});
  }
  return table;
}

BchCode make_bch(int k) {
  for (const auto& row : code_table()) {
    if (row.k != k) continue;
    BchCode code;
    code.k = k;
    code.t = row.t;
    if (row.t == 0) {
      code.generator = {1};
      return code;
    }
    code.generator = generator_poly(row.t);
    if (static_cast<int>(code.generator.size()) - 1 != code.n - code.k) {
      throw std::logic_error("BCH generator degree mismatch for k=" +
                             std::to_string(k));
    }
    return code;
  }
  throw std::invalid_argument("no BCH(63,k) code with k=" + std::to_string(k));
}

Bits bch_encode(const BchCode& code, const Bits& message) {
  if (static_cast<int>(message.size()) != code.k) {
    throw std::invalid_argument("bch_encode: message length must be k=" +
                                std::to_string(code.k));
  }
  if (code.t == 0) return message;
  int par = code.n - code.k;
  // Systematic: codeword = message || remainder(message * x^{n-k} / g).
  // Work with bit index i <-> coefficient of x^{62-i}.
  Bits cw(code.n, 0);
  for (int i = 0; i < code.k; ++i) cw[i] = message[i];
  Bits rem(cw);  // long division on the shifted message
  for (int i = 0; i < code.k; ++i) {
    if (!rem[i]) continue;
    // generator degree par; generator[par] = 1 aligns with position i.
    for (int j = 0; j <= par; ++j) rem[i + j] ^= code.generator[par - j];
  }
  for (int i = 0; i < par; ++i) cw[code.k + i] = rem[code.k + i];
  return cw;
}

BchDecodeResult bch_decode(const BchCode& code, const Bits& received) {
  if (static_cast<int>(received.size()) != code.n) {
    throw std::invalid_argument("bch_decode: input length must be 63");
  }
  BchDecodeResult res;
  if (code.t == 0) {
    res.message = received;
    return res;
  }
  const Gf64& f = gf();

  // Syndromes S_j = r(alpha^j), j = 1..2t; bit i is coeff of x^{62-i}.
  int t2 = 2 * code.t;
  std::vector<int> S(t2 + 1, 0);
  bool any = false;
  for (int j = 1; j <= t2; ++j) {
    int s = 0;
    for (int i = 0; i < code.n; ++i) {
      if (received[i]) s ^= f.pow_alpha((62 - i) * j);
    }
    S[j] = s;
    any = any || (s != 0);
  }
  res.message.assign(received.begin(), received.begin() + code.k);
  if (!any) return res;

  // Berlekamp-Massey for the error locator Lambda(x).
  std::vector<int> Lambda{1}, B{1};
  int L = 0, m = 1, b = 1;
  for (int n = 1; n <= t2; ++n) {
    int d = S[n];
    for (int i = 1; i <= L && i < static_cast<int>(Lambda.size()); ++i) {
      d ^= f.mul(Lambda[i], S[n - i]);
    }
    if (d == 0) {
      ++m;
      continue;
    }
    std::vector<int> T = Lambda;
    int coef = f.mul(d, f.inv(b));
    if (Lambda.size() < B.size() + m) Lambda.resize(B.size() + m, 0);
    for (std::size_t i = 0; i < B.size(); ++i) {
      Lambda[i + m] ^= f.mul(coef, B[i]);
    }
    if (2 * L <= n - 1) {
      L = n - L;
      B = T;
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  while (!Lambda.empty() && Lambda.back() == 0) Lambda.pop_back();
  int deg = static_cast<int>(Lambda.size()) - 1;
  if (L > code.t || deg != L) {
    res.failed = true;
    return res;
  }

  // Chien search: error at position i (coeff x^{62-i}) iff
  // Lambda(alpha^{-(62-i)}) = 0.
  Bits corrected(received);
  int roots = 0;
  for (int p = 0; p < code.n; ++p) {  // p = exponent of the coefficient
    int acc = 0;  // Lambda evaluated at x = alpha^{-p}
    for (int i = 0; i <= deg; ++i) {
      if (Lambda[i]) acc ^= f.mul(Lambda[i], f.pow_alpha(-p * i));
    }
    if (acc == 0) {
      ++roots;
      corrected[62 - p] ^= 1;
    }
  }
  if (roots != L) {
    res.failed = true;
    res.message.assign(received.begin(), received.begin() + code.k);
    return res;
  }
  res.corrected = roots;
  res.message.assign(corrected.begin(), corrected.begin() + code.k);
  return res;
}

}  // namespace subthz
