#pragma once
// Deterministic random-number plumbing for the Monte-Carlo engine.
//
// All stochastic code in this project draws from Rng, never from
// std:: distributions: the Gaussian generator below is pinned so that
// results are bit-identical across standard libraries, platforms and
// thread counts. Substreams are derived from a master seed with
// splitmix64 so that frame-level parallelism reproduces serial runs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace subthz {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Substream seed for (sweep point, frame). Two mixing rounds keep the
// (point, frame) lattice from colliding across nearby master seeds.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t point,
                                    std::uint64_t frame) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s) ^ (point * 0xd1342543de82ef95ULL);
  std::uint64_t b = a;
  std::uint64_t c = splitmix64(b) ^ (frame * 0xaf251af3b0f025b5ULL);
  std::uint64_t d = c;
  return splitmix64(d);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (pinned implementation; the paired
  // value is cached so consecutive calls consume one uniform pair).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1]; keeps log() finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  // Circularly symmetric complex Gaussian with E|z|^2 = var.
  std::complex<double> cgaussian(double var) {
    double s = std::sqrt(var / 2.0);
    double re = gaussian();
    double im = gaussian();
    return {s * re, s * im};
  }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    // Modulo bias is negligible for the small n used here (n <= 2^20),
    // but use rejection to keep the stream well-defined anyway.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  int bit() { return static_cast<int>(gen_() >> 63); }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace subthz
