#include "subthz/propagation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subthz {

double fspl_dB(double f_Hz, double d_m) {
  if (f_Hz <= 0.0 || d_m <= 0.0) {
    throw std::invalid_argument("fspl: frequency and distance must be > 0");
  }
  constexpr double c = 299792458.0;
  return 20.0 * std::log10(4.0 * M_PI * d_m * f_Hz / c);
}

double AtmosphericTable::specific_dB_per_km(double f_Hz) const {
  if (rows.empty()) throw std::runtime_error("atmospheric table is empty");
  double f_GHz = f_Hz / 1e9;
  if (f_GHz < rows.front().first || f_GHz > rows.back().first) {
    if (!allow_extrapolation) {
      throw std::out_of_range("frequency " + std::to_string(f_GHz) +
                              " GHz outside atmospheric table range [" +
                              std::to_string(rows.front().first) + ", " +
                              std::to_string(rows.back().first) + "]");
    }
    return f_GHz < rows.front().first ? rows.front().second : rows.back().second;
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (f_GHz <= rows[i].first) {
      double lf = std::log(f_GHz);
      double l0 = std::log(rows[i - 1].first);
      double l1 = std::log(rows[i].first);
      double w = (l1 == l0) ? 0.0 : (lf - l0) / (l1 - l0);
      return rows[i - 1].second + w * (rows[i].second - rows[i - 1].second);
    }
  }
  return rows.back().second;
}

AtmosphericTable AtmosphericTable::defaults() {
  AtmosphericTable t;
  // Configurable defaults spanning the band of interest (dry-ish air,
  // moderate humidity). The 150 GHz anchor is 2.0 dB/km.
  t.rows = {
      {90.0, 0.4}, {110.0, 0.7}, {130.0, 1.2}, {150.0, 2.0},
      {170.0, 5.0}, {200.0, 8.0}, {250.0, 12.0}, {300.0, 20.0},
  };
  return t;
}

AtmosphericTable AtmosphericTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open atmospheric table: " + path);
  AtmosphericTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double f, a;
    if (!(ss >> f)) continue;  // blank / comment-only line
    if (!(ss >> a)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected two columns (GHz, dB/km)");
    }
    if (!t.rows.empty() && f <= t.rows.back().first) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": frequencies must be strictly increasing");
    }
    t.rows.emplace_back(f, a);
  }
  if (t.rows.empty()) throw std::runtime_error(path + ": no table rows");
  return t;
}

double atmospheric_loss_dB(double f_Hz, double d_m, const AtmosphericTable& table) {
  if (d_m == 0.0) return 0.0;
  return table.specific_dB_per_km(f_Hz) * d_m / 1000.0;
}

double antenna_gain_dBi(const AntennaPattern& p, double offset_deg) {
  // The pattern is symmetric about boresight.
  double q = std::abs(offset_deg) / p.beamwidth_3dB_deg;
  return std::max(p.sidelobe_floor_dBi, p.boresight_gain_dBi - 12.0 * q * q);
}

}  // namespace subthz
