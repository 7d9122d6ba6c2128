// twqkd: secret-key-rate lower bounds for two-way Gaussian QKD protocols.
//
// Subcommands:
//   rate   single-point evaluation, key=value lines on stdout
//   sweep  path-length sweep to CSV
//   chi    eavesdropper Holevo bound and maximizing attack cross block
//   check  intrusion parameters from a measured-constraints file
//
// Exit codes: 0 success, 2 configuration/validation error, 3 I/O error.

#include "twqkd/config.hpp"
#include "twqkd/eve_bound.hpp"
#include "twqkd/protocols.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using twqkd::cli::RunConfig;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void print_rate_point(const twqkd::RatePoint& pt, const std::string& protocol) {
  std::printf("protocol=%s\n", protocol.c_str());
  std::printf("L_km=%.6g\n", pt.length_km);
  std::printf("kappa_S=%.4f\n", pt.kappa_s);
  std::printf("N_S=%.12g\n", pt.n_s);
  std::printf("I_AB_bits_per_symbol=%.12g\n", pt.i_ab);
  std::printf("chi_E_bits_per_mode=%.12g\n", pt.chi_e);
  std::printf("I_E_bits_per_symbol=%.12g\n", pt.i_e);
  std::printf("SKE_bits_per_symbol=%.12g\n", pt.ske);
  std::printf("SKR_bits_per_second=%.12g\n", pt.skr);
}

int cmd_rate(const RunConfig& cfg) {
  const double l_km = cfg.length_km.value_or(cfg.lmin);
  twqkd::RatePoint pt;
  if (cfg.optimize_ns) {
    const auto [lo, hi] = cfg.ns_range();
    const double kappa_s = twqkd::fiber_loss(l_km, cfg.alpha);
    pt = twqkd::optimize_brightness(cfg.to_protocol_spec(), l_km, lo, hi,
                                    cfg.intrusion_at(kappa_s))
             .point;
  } else {
    const auto spec = cfg.to_protocol_spec();
    const double kappa_s = twqkd::fiber_loss(l_km, spec.alpha_db_per_km);
    pt = twqkd::rate_point(spec, l_km, cfg.intrusion_at(kappa_s));
  }
  print_rate_point(pt, cfg.protocol);
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto rows = twqkd::cli::run_sweep(cfg);
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << cfg.out << "\n";
    return kExitIo;
  }
  twqkd::cli::write_sweep_csv(out, rows);
  if (!out.good()) {
    std::cerr << "error: write failed: " << cfg.out << "\n";
    return kExitIo;
  }
  return 0;
}

int cmd_chi(const RunConfig& cfg) {
  const auto spec = cfg.to_protocol_spec();
  if (!cfg.ns) {
    std::cerr << "config error: field 'ns': chi needs an explicit --ns\n";
    return kExitConfig;
  }
  double kappa_bar = 1.0;
  if (cfg.kappa_bar) {
    kappa_bar = *cfg.kappa_bar;
  } else if (cfg.length_km) {
    kappa_bar = twqkd::fiber_loss(*cfg.length_km, spec.alpha_db_per_km);
  }
  const twqkd::IntrusionParams intr{kappa_bar, cfg.fe.value_or(0.0)};
  const auto chi = twqkd::chi_e(spec.n_s, intr, spec.psi(), spec.encoding());
  std::printf("chi_E_bits_per_mode=%.12g\n", chi.value);
  std::printf("c_x=%.12g\n", chi.argmax.c_x);
  std::printf("c_p=%.12g\n", chi.argmax.c_p);
  return 0;
}

int cmd_check(const std::string& path, const RunConfig& cfg) {
  if (!cfg.ns) {
    std::cerr << "config error: field 'ns': check needs --ns\n";
    return kExitConfig;
  }
  const auto meas = twqkd::cli::parse_constraints_file(path);
  const auto intr = twqkd::extract_intrusion(meas, *cfg.ns);
  std::printf("kappa_bar_S=%.6f\n", intr.kappa_bar_s);
  std::printf("f_E=%.6f\n", intr.f_e);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secret-key-rate lower bounds for two-way Gaussian QKD"};
  app.fallthrough();
  app.set_config("--config")->configurable(false);

  RunConfig cfg;
  app.add_option("--protocol", cfg.protocol, "Protocol family: tmsv-disp | fl-qkd");
  app.add_option("--ns", cfg.ns, "Source brightness N_S (photons/mode)");
  app.add_flag("--optimize-ns", cfg.optimize_ns, "Optimize N_S for maximum SKE");
  app.add_option("--ns-min", cfg.ns_min, "Brightness search lower bound");
  app.add_option("--ns-max", cfg.ns_max, "Brightness search upper bound");
  app.add_option("--ex", cfg.ex, "Displacement power E_X (tmsv-disp)");
  app.add_option("--gb", cfg.gb, "Amplifier gain G_B (fl-qkd)");
  app.add_option("--me", cfg.me, "Modes per encoded symbol M_E (fl-qkd)");
  app.add_option("--xi", cfg.xi, "Reconciliation efficiency");
  app.add_option("--rate-hz", cfg.rate_hz, "Symbol rate R (symbols/s)");
  app.add_option("--fe", cfg.fe, "Intrusion override f_E");
  app.add_option("--kappa-bar", cfg.kappa_bar, "Intrusion override kappa_bar_S");
  app.add_option("--alpha", cfg.alpha, "Fiber loss (dB/km)");
  app.add_option("--lmin", cfg.lmin, "Sweep start (km)");
  app.add_option("--lmax", cfg.lmax, "Sweep end (km)");
  app.add_option("--lstep", cfg.lstep, "Sweep step (km)");
  app.add_option("-L,--length-km", cfg.length_km, "Path length for rate/chi (km)");
  app.add_option("--out", cfg.out, "Sweep CSV output path");
  app.add_option("--jobs", cfg.jobs, "Sweep worker threads");

  auto* rate = app.add_subcommand("rate", "Evaluate one rate point");
  auto* sweep = app.add_subcommand("sweep", "Sweep path length, write CSV");
  auto* chi = app.add_subcommand("chi", "Evaluate the eavesdropper bound");
  auto* check = app.add_subcommand("check", "Extract intrusion from measured file");
  std::string check_file;
  check->add_option("file", check_file, "Measured-constraints key=value file")
      ->required();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (rate->parsed()) return cmd_rate(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (chi->parsed()) return cmd_chi(cfg);
    if (check->parsed()) return cmd_check(check_file, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}
