#pragma once
// Coverage planning: LOS/OLOS/NLOS environment grids, per-cell throughput
// heatmaps, and per-distance-bucket link statistics.
//
// Grid file format: a header line "width height cell_size_m" followed by
// `height` lines of `width` characters each, L (line of sight), O
// (obstructed LoS) or N (non-LoS). Line 1 of the body is grid row 0.
// Cell (ix, iy) covers [ix*c, (ix+1)*c) x [iy*c, (iy+1)*c) meters and is
// evaluated at its center.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "subthz/linkbudget.hpp"
#include "subthz/propagation.hpp"

namespace subthz {

enum class CellClass { LOS, OLOS, NLOS };

struct GridParseError : std::runtime_error {
  int line;    // 1-based line in the file
  int column;  // 1-based column of the first defect (0 = whole line)
  GridParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
};

struct EnvironmentGrid {
  int width = 0;
  int height = 0;
  double cell_size_m = 1.0;
  std::vector<CellClass> cells;  // row-major, cells[iy*width + ix]

  CellClass at(int ix, int iy) const { return cells[iy * width + ix]; }
};

EnvironmentGrid parse_grid(std::istream& in);
EnvironmentGrid load_grid(const std::string& path);  // throws on I/O failure

struct PlanningParams {
  double carrier_Hz = 150e9;
  double olos_excess_dB = 10.0;  // foliage-style obstruction penalty
  AtmosphericTable atmos = AtmosphericTable::defaults();
};

struct HeatCell {
  double x_m = 0.0;
  double y_m = 0.0;
  CellClass cls = CellClass::LOS;
  double snr_dB = 0.0;  // -inf for NLOS (link dropped)
  double throughput_bps = 0.0;
};

// Per cell: distance from the node (clamped below at cell_size/2 so the
// node's own cell stays finite), path loss = fspl + atmospheric + class
// excess (LOS 0, OLOS olos_excess_dB, NLOS -> dropped: snr -inf,
// throughput 0), then snr -> se -> throughput. Rows come out in row-major
// order (iy, then ix). Throws std::invalid_argument if the node lies
// outside the grid.
std::vector<HeatCell> heatmap(const EnvironmentGrid& grid, double node_x_m,
                              double node_y_m, const LinkBudget& budget,
                              const SeCurve& curve, const PlanningParams& params);

std::string heatmap_csv(const std::vector<HeatCell>& cells);

struct LinkSample {
  double distance_m = 0.0;
  CellClass cls = CellClass::LOS;
};

struct LinkBucketStats {
  double lo_m = 0.0;  // bucket [lo, hi)
  double hi_m = 0.0;
  CellClass cls = CellClass::LOS;
  int count = 0;
  double mean_bps = 0.0;
  double median_bps = 0.0;
  double frac_ge_threshold = 0.0;
};

// Buckets are half-open [edges[i], edges[i+1]); default edges {0,100,200}.
// Statistics are independent of input order. Throws on an empty list.
std::vector<LinkBucketStats> link_stats(const std::vector<LinkSample>& links,
                                        const LinkBudget& budget,
                                        const SeCurve& curve,
                                        const PlanningParams& params,
                                        const std::vector<double>& edges = {0.0,
                                                                            100.0,
                                                                            200.0},
                                        double threshold_bps = 1e9);

char class_char(CellClass c);

}  // namespace subthz
