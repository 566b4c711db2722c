#pragma once
// KPI registry: one row per benchmark scenario relating scheme, transmit
// power, antenna gains, losses, throughput and range. Throughputs are
// computed (not transcribed): scheme-rate rows use bits/symbol x baud x
// code rate; SE-curve rows use ceiling x bandwidth x useful fraction.

#include <string>
#include <vector>

namespace subthz {

struct KpiRow {
  std::string id;
  std::string description;
  std::string tx_power_dBm;  // display string ("20", "-6 to 14", "<= -43")
  double gtx_dBi = 0.0;
  double grx_dBi = 0.0;
  double losses_nf_dB = 0.0;
  std::string pn_condition;
  double throughput_bps = 0.0;
  std::string range_m;  // display string ("~300", "0.5 to 5", "5")
  std::string notes;
};

// All registered scenarios, fixed order.
const std::vector<KpiRow>& kpi_registry();

// Rows for the requested ids ("all" -> every row). Throws
// std::invalid_argument naming the first unknown id.
std::vector<KpiRow> kpi_table(const std::vector<std::string>& ids);

// CSV with a header row; deterministic 6-significant-digit formatting.
std::string kpi_csv(const std::vector<KpiRow>& rows);

}  // namespace subthz
