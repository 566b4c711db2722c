#include "subthz/planning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "subthz/csv.hpp"

namespace subthz {

char class_char(CellClass c) {
  switch (c) {
    case CellClass::LOS: return 'L';
    case CellClass::OLOS: return 'O';
    case CellClass::NLOS: return 'N';
  }
  return '?';
}

EnvironmentGrid parse_grid(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw GridParseError("empty grid file", 1, 0);
  std::istringstream hs(header);
  EnvironmentGrid g;
  if (!(hs >> g.width >> g.height >> g.cell_size_m) || g.width <= 0 ||
      g.height <= 0 || g.cell_size_m <= 0.0) {
    throw GridParseError("grid header must be 'width height cell_size_m' with positive values",
                         1, 0);
  }
  g.cells.reserve(static_cast<std::size_t>(g.width) * g.height);
  std::string line;
  for (int iy = 0; iy < g.height; ++iy) {
    if (!std::getline(in, line)) {
      throw GridParseError("grid body ended early: expected " +
                               std::to_string(g.height) + " rows",
                           2 + iy, 0);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != g.width) {
      throw GridParseError("grid row has " + std::to_string(line.size()) +
                               " cells, expected " + std::to_string(g.width),
                           2 + iy, static_cast<int>(line.size()) + 1);
    }
    for (int ix = 0; ix < g.width; ++ix) {
      switch (line[ix]) {
        case 'L': g.cells.push_back(CellClass::LOS); break;
        case 'O': g.cells.push_back(CellClass::OLOS); break;
        case 'N': g.cells.push_back(CellClass::NLOS); break;
        default:
          throw GridParseError(std::string("illegal cell character '") + line[ix] +
                                   "' (expected L, O or N)",
                               2 + iy, ix + 1);
      }
    }
  }
  return g;
}

EnvironmentGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open grid file: " + path);
  return parse_grid(in);
}

namespace {

double link_throughput(double distance_m, CellClass cls, const LinkBudget& budget,
                       const SeCurve& curve, const PlanningParams& params,
                       double* snr_out) {
  if (cls == CellClass::NLOS) {
    if (snr_out) *snr_out = -std::numeric_limits<double>::infinity();
    return 0.0;
  }
  double pl = fspl_dB(params.carrier_Hz, distance_m) +
              atmospheric_loss_dB(params.carrier_Hz, distance_m, params.atmos);
  if (cls == CellClass::OLOS) pl += params.olos_excess_dB;
  double snr = snr_dB(budget, pl);
  if (snr_out) *snr_out = snr;
  return throughput_bps(se_from_snr(curve, snr), budget.bandwidth_Hz,
                        budget.useful_fraction);
}

}  // namespace

std::vector<HeatCell> heatmap(const EnvironmentGrid& grid, double node_x_m,
                              double node_y_m, const LinkBudget& budget,
                              const SeCurve& curve, const PlanningParams& params) {
  double wx = grid.width * grid.cell_size_m;
  double wy = grid.height * grid.cell_size_m;
  if (node_x_m < 0.0 || node_x_m > wx || node_y_m < 0.0 || node_y_m > wy) {
    throw std::invalid_argument("heatmap: node (" + fmt_g6(node_x_m) + ", " +
                                fmt_g6(node_y_m) + ") lies outside the " +
                                fmt_g6(wx) + " x " + fmt_g6(wy) + " m grid");
  }
  std::vector<HeatCell> out;
  out.reserve(grid.cells.size());
  for (int iy = 0; iy < grid.height; ++iy) {
    for (int ix = 0; ix < grid.width; ++ix) {
      HeatCell cell;
      cell.x_m = (ix + 0.5) * grid.cell_size_m;
      cell.y_m = (iy + 0.5) * grid.cell_size_m;
      cell.cls = grid.at(ix, iy);
      double d = std::hypot(cell.x_m - node_x_m, cell.y_m - node_y_m);
      d = std::max(d, grid.cell_size_m / 2.0);
      cell.throughput_bps =
          link_throughput(d, cell.cls, budget, curve, params, &cell.snr_dB);
      out.push_back(cell);
    }
  }
  return out;
}

std::string heatmap_csv(const std::vector<HeatCell>& cells) {
  std::ostringstream os;
  os << "x_m,y_m,class,snr_dB,throughput_bps\n";
  for (const auto& c : cells) {
    os << fmt_g6(c.x_m) << ',' << fmt_g6(c.y_m) << ',' << class_char(c.cls) << ','
       << fmt_g6(c.snr_dB) << ',' << fmt_g6(c.throughput_bps) << '\n';
  }
  return os.str();
}

std::vector<LinkBucketStats> link_stats(const std::vector<LinkSample>& links,
                                        const LinkBudget& budget,
                                        const SeCurve& curve,
                                        const PlanningParams& params,
                                        const std::vector<double>& edges,
                                        double threshold_bps) {
  if (links.empty()) throw std::invalid_argument("link_stats: empty link list");
  if (edges.size() < 2) throw std::invalid_argument("link_stats: need >= 2 bucket edges");

  const CellClass classes[] = {CellClass::LOS, CellClass::OLOS, CellClass::NLOS};
  std::vector<LinkBucketStats> out;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    for (CellClass cls : classes) {
      std::vector<double> tps;
      for (const auto& link : links) {
        if (link.cls != cls) continue;
        if (link.distance_m < edges[b] || link.distance_m >= edges[b + 1]) continue;
        tps.push_back(
            link_throughput(link.distance_m, cls, budget, curve, params, nullptr));
      }
      LinkBucketStats st;
      st.lo_m = edges[b];
      st.hi_m = edges[b + 1];
      st.cls = cls;
      st.count = static_cast<int>(tps.size());
      if (!tps.empty()) {
        std::sort(tps.begin(), tps.end());
        double sum = 0.0;
        int ge = 0;
        for (double v : tps) {
          sum += v;
          if (v >= threshold_bps) ++ge;
        }
        st.mean_bps = sum / tps.size();
        st.median_bps = tps.size() % 2 ? tps[tps.size() / 2]
                                       : 0.5 * (tps[tps.size() / 2 - 1] +
                                                tps[tps.size() / 2]);
        st.frac_ge_threshold = static_cast<double>(ge) / tps.size();
      }
      out.push_back(st);
    }
  }
  return out;
}

}  // namespace subthz
