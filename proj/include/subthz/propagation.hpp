#pragma once
// Propagation building blocks: free-space path loss, a configurable
// atmospheric specific-attenuation table, and a quadratic (Gaussian
// main-lobe) antenna pattern with a sidelobe floor.

#include <string>
#include <utility>
#include <vector>

namespace subthz {

// 20*log10(4*pi*d*f/c), c = 299792458 m/s.
double fspl_dB(double f_Hz, double d_m);

struct AtmosphericTable {
  // (frequency_GHz, dB_per_km) rows, strictly increasing in frequency.
  std::vector<std::pair<double, double>> rows;
  bool allow_extrapolation = false;

  // Interpolates linearly in log-frequency. Throws std::out_of_range for
  // frequencies outside the table unless allow_extrapolation (then clamps
  // to the edge rows).
  double specific_dB_per_km(double f_Hz) const;

  // Built-in D-band-centric default (values are configurable stand-ins,
  // 150 GHz -> 2.0 dB/km).
  static AtmosphericTable defaults();

  // Plain-text file: two whitespace-separated columns per line
  // (frequency_GHz, dB_per_km); '#' starts a comment.
  static AtmosphericTable from_file(const std::string& path);
};

double atmospheric_loss_dB(double f_Hz, double d_m, const AtmosphericTable& table);

struct AntennaPattern {
  double boresight_gain_dBi = 0.0;
  double beamwidth_3dB_deg = 360.0;
  double sidelobe_floor_dBi = -30.0;
};

// max(floor, G0 - 12*(offset/beamwidth)^2).
double antenna_gain_dBi(const AntennaPattern& p, double offset_deg);

}  // namespace subthz
