#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "subthz/sim.hpp"

using namespace subthz;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

// Runs SUBTHZ_BIN with the given arguments, capturing stdout (+stderr when
// merge_stderr) and the exit code.
CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(SUBTHZ_BIN) + " " + args;
  if (merge_stderr) {
    cmd += " 2>&1";
  } else {
    cmd += " 2>/dev/null";
  }
  CmdResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

SimConfig qam_config(int M) {
  SimConfig cfg;
  cfg.scheme = Scheme::Qam;
  cfg.constellation = build_constellation(ConstKind::QAM, M);
  return cfg;
}

}  // namespace

TEST_CASE("engine results are independent of the thread count") {
  SimConfig cfg = qam_config(16);
  SimBudgets budgets{200000, 1000000000};
  auto serial = run_ber_point(cfg, 12.0, 99, 0, budgets, 1);
  auto parallel = run_ber_point(cfg, 12.0, 99, 0, budgets, 4);
  CHECK(serial.bits == parallel.bits);
  CHECK(serial.bit_errors == parallel.bit_errors);
  CHECK(serial.frames == parallel.frames);
  CHECK(serial.frame_errors == parallel.frame_errors);
}

TEST_CASE("engine is reproducible for a fixed seed and differs across seeds") {
  SimConfig cfg = qam_config(4);
  SimBudgets budgets{50000, 1000000000};
  auto a = run_ber_point(cfg, 6.0, 7, 0, budgets);
  auto b = run_ber_point(cfg, 6.0, 7, 0, budgets);
  CHECK(a.bit_errors == b.bit_errors);
  CHECK(a.bits == b.bits);
  auto c = run_ber_point(cfg, 6.0, 8, 0, budgets);
  CHECK(c.bit_errors != a.bit_errors);  // overwhelmingly likely
}

TEST_CASE("error budget stops a sweep point early") {
  SimConfig cfg = qam_config(64);
  SimBudgets budgets{100000000, 50};
  auto p = run_ber_point(cfg, 5.0, 1, 0, budgets);
  CHECK(p.bit_errors >= 50);
  CHECK(p.bits < 10000000);  // stopped long before the bit budget
}

TEST_CASE("ber csv has one row per sweep point") {
  SimConfig cfg = qam_config(4);
  SimBudgets budgets{5000, 10000000};
  auto points = run_ber_sweep(cfg, {0.0, 2.0, 4.0}, 5, budgets);
  REQUIRE(points.size() == 3);
  CHECK(points[0].snr_dB == 0.0);
  CHECK(points[2].snr_dB == 4.0);
  auto csv = ber_csv(points);
  CHECK(csv.rfind("snr_dB,bits,bit_errors,ber,frames,frame_errors", 0) == 0);
  CHECK(count_lines(csv) == 4);
}

TEST_CASE("noiseless engine runs are error-free") {
  SimConfig cfg;
  cfg.scheme = Scheme::Gsm;
  cfg.constellation = build_constellation(ConstKind::QAM, 4);
  cfg.Nt = 4;
  cfg.Na = 2;
  cfg.noise_enabled = false;
  SimBudgets budgets{20000, 1000000000};
  auto p = run_ber_point(cfg, 0.0, 1, 0, budgets);
  CHECK(p.bits >= 20000);
  CHECK(p.bit_errors == 0);
}

TEST_CASE("coded runs beat uncoded at moderate snr") {
  SimConfig uncoded = qam_config(4);
  SimConfig coded = uncoded;
  coded.bch_k = 45;
  SimBudgets budgets{200000, 1000000000};
  auto pu = run_ber_point(uncoded, 7.0, 3, 0, budgets);
  auto pc = run_ber_point(coded, 7.0, 3, 0, budgets);
  CHECK(pu.ber() > 0.0);
  CHECK(pc.ber() < pu.ber());
}

TEST_CASE("cli: kpi subcommand") {
  auto all = run_cli("kpi");
  CHECK(all.exit_code == 0);
  CHECK(all.output.rfind("scenario,", 0) == 0);
  CHECK(count_lines(all.output) == 8);

  auto one = run_cli("kpi backhaul");
  CHECK(one.exit_code == 0);
  CHECK(count_lines(one.output) == 2);

  auto bad = run_cli("kpi no-such-scenario", true);
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("no-such-scenario") != std::string::npos);
}

TEST_CASE("cli: ber sweep rows and determinism") {
  std::string args =
      "ber --scheme qam --mod 16qam --snr 0:2:10 --bits 20000 --errors 1000000 "
      "--seed 7";
  auto r1 = run_cli(args + " --out cli_ber_a.csv");
  CHECK(r1.exit_code == 0);
  auto r2 = run_cli(args + " --out cli_ber_b.csv");
  CHECK(r2.exit_code == 0);
  auto r4 = run_cli(args + " --threads 4 --out cli_ber_c.csv");
  CHECK(r4.exit_code == 0);

  std::string a = slurp("cli_ber_a.csv");
  CHECK(a == slurp("cli_ber_b.csv"));
  CHECK(a == slurp("cli_ber_c.csv"));
  CHECK(count_lines(a) == 7);  // header + 6 points
  CHECK(a.rfind("snr_dB,", 0) == 0);
  std::remove("cli_ber_a.csv");
  std::remove("cli_ber_b.csv");
  std::remove("cli_ber_c.csv");
}

TEST_CASE("cli: noiseless gsm run reports zero errors") {
  auto r = run_cli(
      "ber --scheme gsm --mod qpsk --nt 10 --na 3 --no-noise --snr 0 "
      "--bits 20000 --errors 1000000");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  // snr,bits,errors,... -> third field must be 0.
  auto c1 = row.find(',');
  auto c2 = row.find(',', c1 + 1);
  auto c3 = row.find(',', c2 + 1);
  CHECK(row.substr(c2 + 1, c3 - c2 - 1) == "0");
}

TEST_CASE("cli: config file supplies defaults, flags win") {
  {
    std::ofstream cfg("cli_cfg_test.ini");
    cfg << "bits=12000\nerrors=1000000\nsnr=0:5:5\nseed=9\n";
  }
  auto from_cfg = run_cli(
      "ber --scheme qam --mod qpsk --config cli_cfg_test.ini --out cli_cfg_a.csv");
  CHECK(from_cfg.exit_code == 0);
  std::string a = slurp("cli_cfg_a.csv");
  CHECK(count_lines(a) == 3);  // header + 2 points from config sweep

  // Explicit flag overrides the config's sweep.
  auto flag_wins = run_cli(
      "ber --scheme qam --mod qpsk --config cli_cfg_test.ini --snr 0 "
      "--out cli_cfg_b.csv");
  CHECK(flag_wins.exit_code == 0);
  CHECK(count_lines(slurp("cli_cfg_b.csv")) == 2);
  std::remove("cli_cfg_test.ini");
  std::remove("cli_cfg_a.csv");
  std::remove("cli_cfg_b.csv");
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli("ber --scheme nonsense --snr 0", true).exit_code == 2);
  CHECK(run_cli("ber --scheme qam --mod 32qam --snr 0", true).exit_code == 2);
  CHECK(run_cli("ber --scheme qam --snr 10:-2:0", true).exit_code == 2);
  CHECK(run_cli("ber", true).exit_code == 2);          // missing required
  CHECK(run_cli("no-such-subcommand", true).exit_code == 2);
  auto bad_mod = run_cli("ber --scheme qam --mod 32qam --snr 0", true);
  CHECK(bad_mod.output.find("--mod") != std::string::npos);
}

TEST_CASE("cli: malformed grid cites the defect position") {
  {
    std::ofstream g("cli_grid_bad.txt");
    g << "3 2 1.0\nLOL\nLXL\n";
  }
  auto r = run_cli("heatmap --grid cli_grid_bad.txt --node-x 1 --node-y 1", true);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find(":3:2") != std::string::npos);
  std::remove("cli_grid_bad.txt");

  auto missing = run_cli("heatmap --grid nope.txt --node-x 1 --node-y 1", true);
  CHECK(missing.exit_code == 1);
}

TEST_CASE("cli: heatmap on a valid grid") {
  {
    std::ofstream g("cli_grid_ok.txt");
    g << "4 3 5.0\nLLLL\nLOLN\nLLLL\n";
  }
  auto r = run_cli("heatmap --grid cli_grid_ok.txt --node-x 10 --node-y 7.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("x_m,y_m,class,snr_dB,throughput_bps", 0) == 0);
  CHECK(count_lines(r.output) == 13);  // header + 12 cells
  CHECK(r.output.find("-inf") != std::string::npos);  // the NLOS cell
  std::remove("cli_grid_ok.txt");
}

TEST_CASE("cli: unwritable output path exits 1") {
  auto r = run_cli("kpi --out /no_such_directory_xyz/out.csv", true);
  CHECK(r.exit_code == 1);
}

TEST_CASE("cli: codes and se subcommands") {
  auto codes = run_cli("codes --csv");
  CHECK(codes.exit_code == 0);
  CHECK(codes.output.rfind("n,k,t,rate", 0) == 0);
  CHECK(count_lines(codes.output) == 9);

  auto se = run_cli("se gsm --mod qpsk --nt 10 --na 3 --csv");
  CHECK(se.exit_code == 0);
  CHECK(se.output.find("gsm,12,") != std::string::npos);

  auto se_bad = run_cli("se gsm --mod qpsk --nt 3 --na 5", true);
  CHECK(se_bad.exit_code == 2);
}
