#pragma once

// Run configuration shared by the CLI subcommands, the sweep runner, and
// the CSV emitter. Config files are flat key=value text with the same keys
// as the long command-line flags; flags win over file values.

#include "twqkd/eve_bound.hpp"
#include "twqkd/protocols.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace twqkd::cli {

struct RunConfig {
  std::string protocol;  // "tmsv-disp" | "fl-qkd"
  std::optional<double> ns;
  bool optimize_ns = false;
  std::optional<double> ns_min;  // search range for --optimize-ns
  std::optional<double> ns_max;
  std::optional<double> ex;      // tmsv-disp displacement power
  double gb = 1e6;
  std::optional<int> me;         // fl-qkd modes/symbol; defaults to 200
  double xi = 1.0;
  double rate_hz = 1e10;
  std::optional<double> fe;         // intrusion override
  std::optional<double> kappa_bar;  // intrusion override
  double alpha = 0.2;
  double lmin = 0.0;
  double lmax = 50.0;
  double lstep = 5.0;
  std::optional<double> length_km;  // single-point commands
  std::string out = "sweep.csv";
  int jobs = 1;

  /// Validates cross-field constraints and builds the protocol spec.
  /// Throws std::invalid_argument with a message naming the field.
  ProtocolSpec to_protocol_spec() const;

  /// Default brightness search range for --optimize-ns, per family.
  std::pair<double, double> ns_range() const;

  /// Intrusion override if --fe / --kappa-bar were given; kappa_bar
  /// defaults to the honest fiber loss at the evaluated length.
  std::optional<IntrusionParams> intrusion_at(double kappa_s) const;

  std::vector<double> sweep_lengths() const;  // ascending, inclusive
};

/// Exact CSV header the sweep emits.
inline constexpr const char* kSweepCsvHeader =
    "L_km,kappa_S,N_S,I_AB_bits_per_symbol,chi_E_bits_per_mode,"
    "I_E_bits_per_symbol,SKE_bits_per_symbol,SKR_bits_per_second";

/// Evaluates one sweep row (fixed or optimized brightness).
RatePoint sweep_row(const RunConfig& cfg, double l_km);

/// Runs the full sweep with a worker pool of cfg.jobs threads; rows come
/// back in ascending-L order regardless of scheduling.
std::vector<RatePoint> run_sweep(const RunConfig& cfg);

/// Serializes rows with full-precision scientific notation, bytewise
/// reproducible across runs and job counts.
void write_sweep_csv(std::ostream& os, const std::vector<RatePoint>& rows);

/// Parses a measured-constraints file: three key=value lines M=...,
/// total_photons=..., total_correlation=... (any order, '#' comments and
/// blank lines allowed). Throws std::invalid_argument with the offending
/// line number on malformed input.
MeasuredConstraints parse_constraints_file(const std::string& path);

}  // namespace twqkd::cli
