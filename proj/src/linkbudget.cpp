#include "subthz/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subthz/fsim.hpp"
#include "subthz/gsm.hpp"

namespace subthz {

double snr_dB(const LinkBudget& budget, double pathloss_dB) {
  if (budget.bandwidth_Hz <= 0.0) throw std::invalid_argument("snr_dB: bandwidth must be > 0");
  double noise_dBm = -174.0 + 10.0 * std::log10(budget.bandwidth_Hz);
  return budget.ptx_dBm + budget.gtx_dBi + budget.grx_dBi - pathloss_dB -
         budget.impl_losses_dB - budget.noise_figure_dB - noise_dBm;
}

namespace {

SeCurve sampled_shannon_curve(SeMode mode, double ceiling) {
  SeCurve c;
  c.mode = mode;
  c.ceiling = ceiling;
  for (double s = -20.0; s <= 60.0 + 1e-9; s += 0.25) {
    double se = std::min(std::log2(1.0 + std::pow(10.0, s / 10.0)), ceiling);
    c.points.emplace_back(s, se);
  }
  return c;
}

}  // namespace

SeCurve make_se_curve(SeMode mode) {
  switch (mode) {
    case SeMode::NoPn:
      return sampled_shannon_curve(mode, 7.2);
    case SeMode::StrongPnQam:
      return sampled_shannon_curve(mode, 2.5);
    case SeMode::StrongPnPolar:
      return sampled_shannon_curve(mode, 5.5);
    case SeMode::Table:
      throw std::invalid_argument("TABLE curves need explicit points");
  }
  throw std::invalid_argument("unknown SE mode");
}

SeCurve se_curve_from_points(std::vector<std::pair<double, double>> points,
                             double ceiling) {
  if (points.empty()) throw std::invalid_argument("SE curve needs points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].second < 0.0 || points[i].second > ceiling) {
      throw std::invalid_argument("SE curve values must lie in [0, ceiling]");
    }
    if (i == 0) continue;
    if (points[i].first <= points[i - 1].first) {
      throw std::invalid_argument("SE curve SNRs must be strictly increasing");
    }
    if (points[i].second < points[i - 1].second) {
      throw std::invalid_argument("SE curve must be non-decreasing");
    }
  }
  SeCurve c;
  c.mode = SeMode::Table;
  c.ceiling = ceiling;
  c.points = std::move(points);
  return c;
}

double se_from_snr(const SeCurve& curve, double snr_dB_val) {
  const auto& pts = curve.points;
  double se;
  if (snr_dB_val <= pts.front().first) {
    se = pts.front().second;
  } else if (snr_dB_val >= pts.back().first) {
    se = pts.back().second;
  } else {
    auto it = std::lower_bound(
        pts.begin(), pts.end(), snr_dB_val,
        [](const std::pair<double, double>& p, double v) { return p.first < v; });
    auto lo = it - 1;
    double w = (snr_dB_val - lo->first) / (it->first - lo->first);
    se = lo->second + w * (it->second - lo->second);
  }
  return std::clamp(se, 0.0, curve.ceiling);
}

double throughput_bps(double se, double bandwidth_Hz, double useful_fraction) {
  if (se < 0.0) throw std::invalid_argument("throughput: se must be >= 0");
  return se * bandwidth_Hz * useful_fraction;
}

int scheme_bits_per_symbol(const SchemeDesc& desc) {
  switch (desc.kind) {
    case SchemeKind::Qam: {
      int b = 0;
      while ((1 << b) < desc.M) ++b;
      return b;
    }
    case SchemeKind::Gsm:
      return gsm_bits_per_symbol(desc.Nt, desc.Na, desc.M);
    case SchemeKind::Fsim:
      return fsim_bits_per_symbol(desc.N, desc.M);
    case SchemeKind::SmxFsim:
      return desc.Nt * fsim_bits_per_symbol(desc.N, desc.M);
    case SchemeKind::OokEd:
      return desc.Nt;  // one OOK bit per antenna per period
  }
  throw std::invalid_argument("unknown scheme");
}

double scheme_rate_bps(const SchemeDesc& desc, double symbol_rate_baud,
                       double code_rate) {
  if (symbol_rate_baud <= 0.0 || code_rate <= 0.0 || code_rate > 1.0) {
    throw std::invalid_argument("scheme_rate: need baud > 0 and 0 < rate <= 1");
  }
  return scheme_bits_per_symbol(desc) * symbol_rate_baud * code_rate;
}

}  // namespace subthz
