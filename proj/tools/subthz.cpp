// subthz — command-line front end for the D-band link simulator.
//
// Subcommands: ber, kpi, heatmap, codes, se. Common flags: --seed, --out,
// --config (flat key=value file; command-line flags override config keys).
// Exit codes: 0 success, 1 I/O failure, 2 usage/config error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "subthz/bch.hpp"
#include "subthz/csv.hpp"
#include "subthz/kpi.hpp"
#include "subthz/linkbudget.hpp"
#include "subthz/noise.hpp"
#include "subthz/planning.hpp"
#include "subthz/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

subthz::Constellation parse_mod(const std::string& mod, int rings) {
  using subthz::ConstKind;
  if (mod == "bpsk") return subthz::build_constellation(ConstKind::PSK, 2);
  if (mod == "qpsk" || mod == "4qam") return subthz::build_constellation(ConstKind::QAM, 4);
  if (mod == "8psk") return subthz::build_constellation(ConstKind::PSK, 8);
  if (mod == "16qam") return subthz::build_constellation(ConstKind::QAM, 16);
  if (mod == "64qam") return subthz::build_constellation(ConstKind::QAM, 64);
  if (mod == "256qam") return subthz::build_constellation(ConstKind::QAM, 256);
  if (mod == "polar16") return subthz::build_constellation(ConstKind::POLAR, 16, rings);
  if (mod == "polar64") return subthz::build_constellation(ConstKind::POLAR, 64, rings);
  if (mod == "ook") return subthz::build_constellation(ConstKind::OOK, 2);
  throw UsageError("--mod: unknown modulation '" + mod +
                   "' (expected bpsk, qpsk, 8psk, 16qam, 64qam, 256qam, "
                   "polar16, polar64 or ook)");
}

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> out;
  auto c1 = text.find(':');
  try {
    if (c1 == std::string::npos) {
      out.push_back(std::stod(text));
      return out;
    }
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("");
    double start = std::stod(text.substr(0, c1));
    double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    double stop = std::stod(text.substr(c2 + 1));
    if (step <= 0.0 || stop < start) throw UsageError("");
    for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    return out;
  } catch (const std::exception&) {
    throw UsageError("--snr: expected 'value' or 'start:step:stop' with step > 0, got '" +
                     text + "'");
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat key=value config support. Keys name long options of the chosen
// subcommand (without the leading --); keys already present on the command
// line are skipped, so explicit flags override the file. The file is
// expanded into extra tokens before parsing.
void expand_config(const CLI::App& sub, std::vector<std::string>& tokens) {
  std::string path;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "--config") {
      if (i + 1 >= tokens.size()) return;  // parser reports the missing value
      path = tokens[i + 1];
      break;
    }
    if (tokens[i].rfind("--config=", 0) == 0) {
      path = tokens[i].substr(9);
      break;
    }
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);

  auto on_command_line = [&tokens](const std::string& opt) {
    for (const auto& t : tokens) {
      if (t == opt || t.rfind(opt + "=", 0) == 0) return true;
    }
    return false;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    auto eq = s.find('=');
    std::string key = eq == std::string::npos ? "" : trim(s.substr(0, eq));
    if (key.empty()) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    if (key == "config") continue;
    std::string value = trim(s.substr(eq + 1));
    std::string opt = "--" + key;
    const CLI::Option* o = sub.get_option_no_throw(opt);
    if (o == nullptr) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": unknown config key '" + key + "' for subcommand '" +
                       sub.get_name() + "'");
    }
    if (on_command_line(opt)) continue;  // command line wins
    if (o->get_expected_min() == 0) {    // flag-valued key
      if (value == "false" || value == "0" || value == "no" || value == "off") {
        continue;
      }
      tokens.push_back(value == "true" || value == "1" || value == "yes" ||
                               value == "on"
                           ? opt
                           : opt + "=" + value);
    } else {
      tokens.push_back(opt);
      tokens.push_back(value);
    }
  }
}

struct BerArgs {
  std::string scheme;
  std::string mod = "qpsk";
  int rings = 0;
  int nt = 2;
  int na = 1;
  int filters = 2;
  int sps = 8;
  int span = 8;
  std::string snr = "0:2:10";
  double pn_floor = 0.0;  // dBc/Hz; enabled by --pn-floor presence
  bool pn_set = false;
  double bandwidth = 1e9;
  bool no_noise = false;
  int code_k = 0;
  std::string eq = "zf";
  std::string threshold_policy = "calibrated";
  double threshold = 1.0;
  std::uint64_t bits = 1000000;
  std::uint64_t errors = 100;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int run_ber(const BerArgs& a) {
  subthz::SimConfig cfg;
  if (a.scheme == "qam") {
    cfg.scheme = subthz::Scheme::Qam;
  } else if (a.scheme == "gsm") {
    cfg.scheme = subthz::Scheme::Gsm;
  } else if (a.scheme == "fsim") {
    cfg.scheme = subthz::Scheme::Fsim;
  } else if (a.scheme == "smx-fsim") {
    cfg.scheme = subthz::Scheme::SmxFsim;
  } else if (a.scheme == "ook-ed") {
    cfg.scheme = subthz::Scheme::OokEd;
  } else {
    throw UsageError("--scheme: unknown scheme '" + a.scheme +
                     "' (expected qam, gsm, fsim, smx-fsim or ook-ed)");
  }
  try {
    cfg.constellation = cfg.scheme == subthz::Scheme::OokEd
                            ? parse_mod("ook", 0)
                            : parse_mod(a.mod, a.rings);
    cfg.Nt = a.nt;
    cfg.Na = a.na;
    cfg.n_filters = a.filters;
    cfg.S = a.sps;
    cfg.span = a.span;
    cfg.noise_enabled = !a.no_noise;
    cfg.bch_k = a.code_k;
    if (a.code_k != 0) subthz::make_bch(a.code_k);  // validates --code
    if (a.pn_set) cfg.pn_sigma2 = subthz::pn_variance(a.pn_floor, a.bandwidth);
    if (a.eq == "zf") {
      cfg.eq = subthz::EqMode::ZF;
    } else if (a.eq == "mmse") {
      cfg.eq = subthz::EqMode::MMSE;
    } else {
      throw UsageError("--eq: expected zf or mmse, got '" + a.eq + "'");
    }
    if (a.threshold_policy == "calibrated") {
      cfg.policy = subthz::ThresholdPolicy::Calibrated;
    } else if (a.threshold_policy == "midpoint") {
      cfg.policy = subthz::ThresholdPolicy::Midpoint;
    } else if (a.threshold_policy == "fixed") {
      cfg.policy = subthz::ThresholdPolicy::Fixed;
    } else {
      throw UsageError("--threshold-policy: expected calibrated, midpoint or fixed, got '" +
                       a.threshold_policy + "'");
    }
    cfg.fixed_threshold = a.threshold;

    std::vector<double> snrs = parse_sweep(a.snr);
    subthz::SimBudgets budgets{a.bits, a.errors};
    auto points = subthz::run_ber_sweep(cfg, snrs, a.seed, budgets, a.threads);
    write_output(a.out, subthz::ber_csv(points));
  } catch (const std::invalid_argument& e) {
    // Library-level config validation (bad Nt/Na, non-square QAM, ...).
    throw UsageError(e.what());
  }
  return kExitOk;
}

int run_kpi(const std::vector<std::string>& ids, const std::string& out) {
  std::vector<std::string> want = ids.empty() ? std::vector<std::string>{"all"} : ids;
  std::vector<subthz::KpiRow> rows;
  try {
    rows = subthz::kpi_table(want);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_output(out, subthz::kpi_csv(rows));
  return kExitOk;
}

struct HeatmapArgs {
  std::string grid;
  double node_x = 0.0;
  double node_y = 0.0;
  std::string curve = "no-pn";
  double ptx = 30.0;
  double gtx = 25.0;
  double grx = 25.0;
  double losses = 1.0;
  double nf = 12.0;
  double bandwidth = 1e9;
  double useful = 0.8;
  double freq = 150e9;
  double olos_excess = 10.0;
  std::string atmos_file;
  std::string out;
};

int run_heatmap(const HeatmapArgs& a) {
  subthz::SeCurve curve;
  if (a.curve == "no-pn") {
    curve = subthz::make_se_curve(subthz::SeMode::NoPn);
  } else if (a.curve == "strong-pn-qam") {
    curve = subthz::make_se_curve(subthz::SeMode::StrongPnQam);
  } else if (a.curve == "strong-pn-polar") {
    curve = subthz::make_se_curve(subthz::SeMode::StrongPnPolar);
  } else {
    throw UsageError("--curve: expected no-pn, strong-pn-qam or strong-pn-polar, got '" +
                     a.curve + "'");
  }
  subthz::EnvironmentGrid grid;
  try {
    grid = subthz::load_grid(a.grid);
  } catch (const subthz::GridParseError& e) {
    throw UsageError("--grid: " + a.grid + ":" + std::to_string(e.line) + ":" +
                     std::to_string(e.column) + ": " + e.what());
  } catch (const std::ios_base::failure& e) {
    throw IoError(e.what());
  }
  subthz::LinkBudget budget{a.ptx, a.gtx, a.grx, a.losses, a.nf, a.bandwidth, a.useful};
  subthz::PlanningParams params;
  params.carrier_Hz = a.freq;
  params.olos_excess_dB = a.olos_excess;
  if (!a.atmos_file.empty()) {
    try {
      params.atmos = subthz::AtmosphericTable::from_file(a.atmos_file);
    } catch (const std::runtime_error& e) {
      throw UsageError(std::string("--atmos: ") + e.what());
    }
  }
  try {
    auto cells = subthz::heatmap(grid, a.node_x, a.node_y, budget, curve, params);
    write_output(a.out, subthz::heatmap_csv(cells));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

int run_codes(const std::string& out, bool csv) {
  auto table = subthz::code_table();
  std::ostringstream os;
  if (csv || !(out.empty() || out == "-")) {
    os << "n,k,t,rate\n";
    for (const auto& row : table) {
      os << 63 << ',' << row.k << ',' << row.t << ',' << subthz::fmt_g6(row.rate)
         << '\n';
    }
  } else {
    os << "BCH(63, k, t) codes (hard-decision decoding)\n";
    os << "   k   t    rate\n";
    for (const auto& row : table) {
      char line[64];
      std::snprintf(line, sizeof line, "  %2d  %2d  %6.4f\n", row.k, row.t, row.rate);
      os << line;
    }
  }
  write_output(out, os.str());
  return kExitOk;
}

struct SeArgs {
  std::string scheme;
  std::string mod = "qpsk";
  int nt = 1;
  int na = 1;
  int filters = 2;
  double baud = 1e9;
  double rate = 1.0;
  bool csv = false;
  std::string out;
};

int run_se(const SeArgs& a) {
  subthz::SchemeDesc desc;
  if (a.scheme == "qam") {
    desc.kind = subthz::SchemeKind::Qam;
  } else if (a.scheme == "gsm") {
    desc.kind = subthz::SchemeKind::Gsm;
  } else if (a.scheme == "fsim") {
    desc.kind = subthz::SchemeKind::Fsim;
  } else if (a.scheme == "smx-fsim") {
    desc.kind = subthz::SchemeKind::SmxFsim;
  } else if (a.scheme == "ook-ed") {
    desc.kind = subthz::SchemeKind::OokEd;
  } else {
    throw UsageError("scheme: expected qam, gsm, fsim, smx-fsim or ook-ed, got '" +
                     a.scheme + "'");
  }
  int bits;
  double rate_bps;
  try {
    desc.M = parse_mod(a.mod, 0).M;
    desc.Nt = a.nt;
    desc.Na = a.na;
    desc.N = a.filters;
    bits = subthz::scheme_bits_per_symbol(desc);
    rate_bps = subthz::scheme_rate_bps(desc, a.baud, a.rate);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream os;
  if (a.csv || !(a.out.empty() || a.out == "-")) {
    os << "scheme,bits_per_symbol,symbol_rate_baud,code_rate,rate_bps\n";
    os << a.scheme << ',' << bits << ',' << subthz::fmt_g6(a.baud) << ','
       << subthz::fmt_g6(a.rate) << ',' << subthz::fmt_g6(rate_bps) << '\n';
  } else {
    os << a.scheme << ": " << bits << " bits/symbol; " << subthz::fmt_g6(a.baud)
       << " baud x rate " << subthz::fmt_g6(a.rate) << " = "
       << subthz::fmt_g6(rate_bps / 1e9) << " Gbps\n";
  }
  write_output(a.out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-THz D-band link-level simulator and planning toolkit"};
  app.require_subcommand(1);
  // Flat key=value config per subcommand; expand_config applies the file
  // before parsing so command-line flags take precedence.
  std::string config_path;
  auto add_config = [&config_path](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "flat key=value config file (flags override)");
  };

  BerArgs ber;
  CLI::App* cber = app.add_subcommand("ber", "Monte-Carlo BER sweep, CSV output");
  add_config(cber);
  cber->add_option("--scheme", ber.scheme, "qam | gsm | fsim | smx-fsim | ook-ed")
      ->required();
  cber->add_option("--mod", ber.mod, "constellation (default qpsk)");
  cber->add_option("--rings", ber.rings, "polar ring count (0 = default)");
  cber->add_option("--nt", ber.nt, "transmit antennas");
  cber->add_option("--na", ber.na, "active antennas (gsm)");
  cber->add_option("--filters", ber.filters, "FSIM bank size (2 or 4)");
  cber->add_option("--sps", ber.sps, "samples per symbol");
  cber->add_option("--span", ber.span, "filter span in symbols");
  cber->add_option("--snr", ber.snr, "SNR sweep 'start:step:stop' dB or single value");
  cber->add_option("--pn-floor", ber.pn_floor,
                   "phase-noise floor in dBc/Hz (omit to disable PN)");
  cber->add_option("--bandwidth", ber.bandwidth, "bandwidth in Hz (PN integration)");
  cber->add_flag("--no-noise", ber.no_noise, "disable AWGN (infinite SNR)");
  cber->add_option("--code", ber.code_k, "BCH(63,k) message size k (0 = uncoded)");
  cber->add_option("--eq", ber.eq, "smx-fsim equalizer: zf | mmse");
  cber->add_option("--threshold-policy", ber.threshold_policy,
                   "ook-ed threshold: calibrated | midpoint | fixed");
  cber->add_option("--threshold", ber.threshold, "fixed threshold value");
  cber->add_option("--bits", ber.bits, "bit budget per SNR point");
  cber->add_option("--errors", ber.errors, "error budget per SNR point");
  cber->add_option("--threads", ber.threads, "worker threads (results identical)");
  cber->add_option("--seed", ber.seed, "master seed");
  cber->add_option("--out", ber.out, "output CSV path (default stdout)");

  std::vector<std::string> kpi_ids;
  std::string kpi_out;
  CLI::App* ckpi = app.add_subcommand("kpi", "benchmark KPI table, CSV output");
  add_config(ckpi);
  ckpi->add_option("ids", kpi_ids, "scenario ids (default: all)");
  ckpi->add_option("--out", kpi_out, "output CSV path (default stdout)");

  HeatmapArgs hm;
  CLI::App* cheat = app.add_subcommand("heatmap", "per-cell throughput map, CSV output");
  add_config(cheat);
  cheat->add_option("--grid", hm.grid, "environment grid file")->required();
  cheat->add_option("--node-x", hm.node_x, "node x position (m)")->required();
  cheat->add_option("--node-y", hm.node_y, "node y position (m)")->required();
  cheat->add_option("--curve", hm.curve, "no-pn | strong-pn-qam | strong-pn-polar");
  cheat->add_option("--ptx", hm.ptx, "transmit power (dBm)");
  cheat->add_option("--gtx", hm.gtx, "transmit antenna gain (dBi)");
  cheat->add_option("--grx", hm.grx, "receive antenna gain (dBi)");
  cheat->add_option("--losses", hm.losses, "implementation losses (dB)");
  cheat->add_option("--nf", hm.nf, "noise figure (dB)");
  cheat->add_option("--bandwidth", hm.bandwidth, "bandwidth (Hz)");
  cheat->add_option("--useful", hm.useful, "useful bandwidth fraction");
  cheat->add_option("--freq", hm.freq, "carrier frequency (Hz)");
  cheat->add_option("--olos-excess", hm.olos_excess, "OLoS excess loss (dB)");
  cheat->add_option("--atmos", hm.atmos_file, "atmospheric table file (GHz dB/km)");
  cheat->add_option("--out", hm.out, "output CSV path (default stdout)");

  std::string codes_out;
  bool codes_csv = false;
  CLI::App* ccodes = app.add_subcommand("codes", "list BCH(63,k,t) codes");
  add_config(ccodes);
  ccodes->add_option("--out", codes_out, "output CSV path");
  ccodes->add_flag("--csv", codes_csv, "CSV to stdout");

  SeArgs se;
  CLI::App* cse = app.add_subcommand("se", "scheme bits/symbol and rate arithmetic");
  add_config(cse);
  cse->add_option("scheme", se.scheme, "qam | gsm | fsim | smx-fsim | ook-ed")
      ->required();
  cse->add_option("--mod", se.mod, "constellation (default qpsk)");
  cse->add_option("--nt", se.nt, "transmit antennas");
  cse->add_option("--na", se.na, "active antennas (gsm)");
  cse->add_option("--filters,--n", se.filters, "FSIM bank size");
  cse->add_option("--baud", se.baud, "symbol rate");
  cse->add_option("--rate", se.rate, "code rate");
  cse->add_flag("--csv", se.csv, "CSV output");
  cse->add_option("--out", se.out, "output path (default stdout)");

  try {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    if (!tokens.empty()) {
      if (const CLI::App* sub = app.get_subcommand_no_throw(tokens.front())) {
        expand_config(*sub, tokens);
      }
    }
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    ber.pn_set = cber->count("--pn-floor") > 0;
    if (cber->parsed()) return run_ber(ber);
    if (ckpi->parsed()) return run_kpi(kpi_ids, kpi_out);
    if (cheat->parsed()) return run_heatmap(hm);
    if (ccodes->parsed()) return run_codes(codes_out, codes_csv);
    if (cse->parsed()) return run_se(se);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
