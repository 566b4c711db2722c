#include "subthz/sim.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "subthz/csv.hpp"
#include "subthz/los_mimo.hpp"
#include "subthz/noise.hpp"
#include "subthz/rng.hpp"

namespace subthz {

namespace {

constexpr int kBatchFrames = 32;
constexpr int kTargetInfoBits = 1024;

int ilog2(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

struct SimContext {
  SimConfig cfg;
  GsmConfig gsm;
  FsimConfig fsim;
  BchCode code;
  bool coded = false;
  int bps = 0;                   // coded bits per symbol period, all streams
  int periods_per_frame = 0;
  int codewords_per_frame = 0;   // total across streams
  std::uint64_t info_bits_per_frame = 0;
};

SimContext make_context(const SimConfig& cfg) {
  SimContext ctx;
  ctx.cfg = cfg;
  switch (cfg.scheme) {
    case Scheme::Qam:
      ctx.bps = cfg.constellation.bits_per_symbol;
      break;
    case Scheme::Gsm:
      ctx.gsm = make_gsm_config(cfg.Nt, cfg.Na, cfg.constellation);
      ctx.bps = ctx.gsm.bits_per_symbol();
      break;
    case Scheme::Fsim:
    case Scheme::SmxFsim: {
      ctx.fsim.bank = build_default_bank(cfg.n_filters, cfg.S, cfg.span);
      ctx.fsim.constellation = cfg.constellation;
      int per_stream = ctx.fsim.bits_per_symbol();
      ctx.bps = (cfg.scheme == Scheme::SmxFsim ? cfg.Nt : 1) * per_stream;
      break;
    }
    case Scheme::OokEd:
      if (cfg.constellation.kind != ConstKind::OOK) {
        throw std::invalid_argument("OOK-ED runs require the OOK constellation");
      }
      ctx.bps = cfg.Nt;
      break;
  }

  ctx.coded = cfg.bch_k > 0 && cfg.bch_k < 63;
  if (ctx.coded) {
    ctx.code = make_bch(cfg.bch_k);
    if (cfg.scheme == Scheme::OokEd && cfg.Nt > 1) {
      // Per-stream coding: each antenna stream carries whole codewords, so
      // the period count must be a multiple of 63.
      int reps = std::max(1, kTargetInfoBits / (cfg.bch_k * cfg.Nt));
      ctx.periods_per_frame = 63 * reps;
      ctx.codewords_per_frame = cfg.Nt * reps;
    } else {
      int g = std::gcd(63, ctx.bps);
      int base_periods = 63 / g;
      int base_cw = ctx.bps / g;
      int reps = std::max(1, kTargetInfoBits / (cfg.bch_k * base_cw));
      ctx.periods_per_frame = base_periods * reps;
      ctx.codewords_per_frame = base_cw * reps;
    }
    ctx.info_bits_per_frame =
        static_cast<std::uint64_t>(ctx.codewords_per_frame) * cfg.bch_k;
  } else {
    ctx.periods_per_frame = std::max(1, (kTargetInfoBits + ctx.bps - 1) / ctx.bps);
    ctx.info_bits_per_frame =
        static_cast<std::uint64_t>(ctx.periods_per_frame) * ctx.bps;
  }
  return ctx;
}

Bits random_bits(std::uint64_t n, Rng& rng) {
  Bits b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng.bit());
  return b;
}

// Sequential encode: info bits -> concatenated codewords.
Bits encode_stream(const SimContext& ctx, const Bits& info) {
  if (!ctx.coded) return info;
  Bits coded;
  coded.reserve(info.size() / ctx.code.k * 63);
  Bits msg(ctx.code.k);
  for (std::size_t p = 0; p < info.size(); p += ctx.code.k) {
    std::copy(info.begin() + p, info.begin() + p + ctx.code.k, msg.begin());
    Bits cw = bch_encode(ctx.code, msg);
    coded.insert(coded.end(), cw.begin(), cw.end());
  }
  return coded;
}

Bits decode_stream(const SimContext& ctx, const Bits& hard) {
  if (!ctx.coded) return hard;
  Bits info;
  info.reserve(hard.size() / 63 * ctx.code.k);
  Bits block(63);
  for (std::size_t p = 0; p < hard.size(); p += 63) {
    std::copy(hard.begin() + p, hard.begin() + p + 63, block.begin());
    BchDecodeResult res = bch_decode(ctx.code, block);
    info.insert(info.end(), res.message.begin(), res.message.end());
  }
  return info;
}

// Hard-decision pass through channel and detector for one frame of coded
// bits; returns the detected coded bits in transmitter order.
Bits transmit_detect(const SimContext& ctx, const Bits& coded, double N0,
                     double threshold, Rng& rng) {
  const SimConfig& cfg = ctx.cfg;
  switch (cfg.scheme) {
    case Scheme::Qam: {
      std::vector<cplx> x = map_bits(cfg.constellation, coded);
      std::vector<cplx> y = add_phase_noise(x, cfg.pn_sigma2, rng);
      y = add_awgn(y, N0, rng);
      return demap_hard(cfg.constellation, y);
    }
    case Scheme::Gsm: {
      Eigen::MatrixXcd X = gsm_frame(ctx.gsm, coded);
      Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(cfg.Nt, cfg.Nt);
      Eigen::MatrixXcd Y = apply_mimo(H, X, rng, N0, cfg.pn_sigma2);
      return ml_gsm_detect(Y, H, ctx.gsm);
    }
    case Scheme::Fsim: {
      FsimMapped m = fsim_map(ctx.fsim, coded);
      std::vector<cplx> wave = fsim_modulate(m.indices, m.symbols, ctx.fsim.bank);
      wave = add_phase_noise(wave, cfg.pn_sigma2, rng);
      wave = add_awgn(wave, N0, rng);
      return fsim_detect(wave, ctx.fsim.bank, ctx.fsim.constellation).bits;
    }
    case Scheme::SmxFsim: {
      std::vector<std::vector<cplx>> waves = smx_fsim_frame(cfg.Nt, ctx.fsim, coded);
      Eigen::Index Lw = static_cast<Eigen::Index>(waves[0].size());
      Eigen::MatrixXcd X(cfg.Nt, Lw);
      for (int s = 0; s < cfg.Nt; ++s) {
        for (Eigen::Index i = 0; i < Lw; ++i) X(s, i) = waves[s][i];
      }
      Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(cfg.Nt, cfg.Nt);
      Eigen::MatrixXcd Y = apply_mimo(H, X, rng, N0, cfg.pn_sigma2);
      Eigen::MatrixXcd Xh = linear_equalize(Y, H, cfg.eq, N0);
      // Per-stream detection, then invert the round-robin bit split.
      int per_stream = ctx.fsim.bits_per_symbol();
      std::vector<Bits> stream_bits(cfg.Nt);
      for (int s = 0; s < cfg.Nt; ++s) {
        std::vector<cplx> w(static_cast<std::size_t>(Lw));
        for (Eigen::Index i = 0; i < Lw; ++i) w[i] = Xh(s, i);
        stream_bits[s] = fsim_detect(w, ctx.fsim.bank, ctx.fsim.constellation).bits;
      }
      Bits out;
      out.reserve(coded.size());
      std::size_t K = stream_bits[0].size() / per_stream;
      for (std::size_t k = 0; k < K; ++k) {
        for (int s = 0; s < cfg.Nt; ++s) {
          for (int i = 0; i < per_stream; ++i) {
            out.push_back(stream_bits[s][k * per_stream + i]);
          }
        }
      }
      return out;
    }
    case Scheme::OokEd: {
      if (cfg.Nt == 1) {
        std::vector<cplx> x = map_bits(cfg.constellation, coded);
        std::vector<cplx> y = add_phase_noise(x, cfg.pn_sigma2, rng);
        y = add_awgn(y, N0, rng);
        return energy_detect(y, threshold);
      }
      // MIMO: bit (k, antenna s) = coded[k*Nt + s] (stream-interleaved when
      // uncoded; per-stream codewords are interleaved by the frame runner).
      std::size_t K = coded.size() / cfg.Nt;
      Eigen::MatrixXcd X(cfg.Nt, static_cast<Eigen::Index>(K));
      double on = std::sqrt(2.0);
      for (std::size_t k = 0; k < K; ++k) {
        for (int s = 0; s < cfg.Nt; ++s) {
          X(s, static_cast<Eigen::Index>(k)) =
              coded[k * cfg.Nt + s] ? cplx{on, 0.0} : cplx{0.0, 0.0};
        }
      }
      Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(cfg.Nt, cfg.Nt);
      Eigen::MatrixXcd Y = apply_mimo(H, X, rng, N0, cfg.pn_sigma2);
      return ed_mimo_joint(Y, H, N0);
    }
  }
  throw std::logic_error("unknown scheme");
}

struct FrameResult {
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
};

FrameResult run_frame(const SimContext& ctx, double N0, double threshold, Rng& rng) {
  const SimConfig& cfg = ctx.cfg;
  Bits info = random_bits(ctx.info_bits_per_frame, rng);

  Bits coded;
  bool per_stream_coding = ctx.coded && cfg.scheme == Scheme::OokEd && cfg.Nt > 1;
  if (per_stream_coding) {
    // Stream s owns info slice s; its codewords supply bit (k, s).
    std::size_t per = ctx.info_bits_per_frame / cfg.Nt;
    std::vector<Bits> streams(cfg.Nt);
    for (int s = 0; s < cfg.Nt; ++s) {
      Bits slice(info.begin() + s * per, info.begin() + (s + 1) * per);
      streams[s] = encode_stream(ctx, slice);
    }
    coded.resize(static_cast<std::size_t>(ctx.periods_per_frame) * cfg.Nt);
    for (int k = 0; k < ctx.periods_per_frame; ++k) {
      for (int s = 0; s < cfg.Nt; ++s) coded[k * cfg.Nt + s] = streams[s][k];
    }
  } else {
    coded = encode_stream(ctx, info);
  }

  Bits hard = transmit_detect(ctx, coded, N0, threshold, rng);

  Bits decoded;
  if (per_stream_coding) {
    std::size_t per = ctx.info_bits_per_frame / cfg.Nt;
    decoded.resize(ctx.info_bits_per_frame);
    for (int s = 0; s < cfg.Nt; ++s) {
      Bits stream(ctx.periods_per_frame);
      for (int k = 0; k < ctx.periods_per_frame; ++k) stream[k] = hard[k * cfg.Nt + s];
      Bits msg = decode_stream(ctx, stream);
      std::copy(msg.begin(), msg.end(), decoded.begin() + s * per);
    }
  } else {
    decoded = decode_stream(ctx, hard);
  }

  FrameResult res;
  res.bits = info.size();
  for (std::size_t i = 0; i < info.size(); ++i) {
    res.errors += info[i] != decoded[i];
  }
  return res;
}

}  // namespace

BerPoint run_ber_point(const SimConfig& cfg, double snr_dB, std::uint64_t master_seed,
                       std::uint64_t point_index, const SimBudgets& budgets,
                       int threads) {
  SimContext ctx = make_context(cfg);
  double N0 = cfg.noise_enabled ? std::pow(10.0, -snr_dB / 10.0) : 0.0;

  double threshold = 1.0;
  if (cfg.scheme == Scheme::OokEd) {
    switch (cfg.policy) {
      case ThresholdPolicy::Fixed:
        threshold = cfg.fixed_threshold;
        break;
      case ThresholdPolicy::Midpoint:
        threshold = ed_midpoint_threshold(1.0);
        break;
      case ThresholdPolicy::Calibrated:
        // With noise disabled the SNR is not finite; fall back to midpoint.
        threshold = N0 > 0.0 ? ed_calibrate_threshold(1.0, N0)
                             : ed_midpoint_threshold(1.0);
        break;
    }
  }

  BerPoint point;
  point.snr_dB = snr_dB;
  if (threads < 1) threads = 1;

  std::uint64_t frame_base = 0;
  while (point.bits < budgets.max_bits && point.bit_errors < budgets.max_errors) {
    std::vector<FrameResult> results(kBatchFrames);
    auto worker = [&](int tid) {
      for (int f = tid; f < kBatchFrames; f += threads) {
        Rng rng(substream_seed(master_seed, point_index, frame_base + f));
        results[f] = run_frame(ctx, N0, threshold, rng);
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }
    for (const auto& r : results) {  // fixed accumulation order
      point.bits += r.bits;
      point.bit_errors += r.errors;
      point.frames += 1;
      point.frame_errors += r.errors ? 1 : 0;
    }
    frame_base += kBatchFrames;
  }
  return point;
}

std::vector<BerPoint> run_ber_sweep(const SimConfig& cfg,
                                    const std::vector<double>& snrs_dB,
                                    std::uint64_t master_seed,
                                    const SimBudgets& budgets, int threads) {
  std::vector<BerPoint> out;
  out.reserve(snrs_dB.size());
  for (std::size_t i = 0; i < snrs_dB.size(); ++i) {
    out.push_back(run_ber_point(cfg, snrs_dB[i], master_seed, i, budgets, threads));
  }
  return out;
}

std::string ber_csv(const std::vector<BerPoint>& points) {
  std::ostringstream os;
  os << "snr_dB,bits,bit_errors,ber,frames,frame_errors\n";
  for (const auto& p : points) {
    os << fmt_g6(p.snr_dB) << ',' << p.bits << ',' << p.bit_errors << ','
       << fmt_g6(p.ber()) << ',' << p.frames << ',' << p.frame_errors << '\n';
  }
  return os.str();
}

}  // namespace subthz
