#pragma once

// Honest-channel models, Alice-Bob mutual information for the two shipped
// protocols, intrusion extraction from measured constraints, and the
// Devetak-Winter key-rate assembly SKE = max(xi I_AB - I_E, 0),
// SKR = R SKE.

#include "twqkd/channels.hpp"
#include "twqkd/eve_bound.hpp"
#include "twqkd/gaussian.hpp"
#include "twqkd/numopt.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <variant>

namespace twqkd {

enum class ProtocolFamily {
  TmsvDisplacement,  // random displacement power E_X, identity return channel
  FlQkd,             // binary phase encoding, amplifier G_B, M_E modes/symbol
};

struct ProtocolSpec {
  ProtocolFamily family;
  double n_s = 0.0;              // source brightness, photons per mode
  double e_x = 0.0;              // TmsvDisplacement only
  double g_b = 1e6;              // FlQkd only
  int m_e = 1;                   // FlQkd: modes per encoded symbol
  double xi = 1.0;               // reconciliation efficiency, (0, 1]
  double rate_hz = 1e10;         // symbol rate, symbols/second
  double alpha_db_per_km = 0.2;  // fiber loss coefficient

  GaussianChannelSpec psi() const;      // Identity | Amplifier(g_b)
  EncodingSpec encoding() const;
  void validate() const;                // throws invalid_argument naming the field
};

/// Session-level security-check totals.
struct MeasuredConstraints {
  std::int64_t m;            // mode pairs in the session, >= 1
  double total_photons;      // sum of <a†a> over received S modes
  double total_correlation;  // sum of |<a_S a_W>|^2 + |<a_S a_W†>|^2
};

struct RatePoint {
  double length_km;
  double kappa_s;  // honest one-way fiber transmissivity
  double n_s;      // brightness used (optimized value when optimized)
  double i_ab;     // bits/symbol
  double chi_e;    // bits/mode
  double i_e;      // bits/symbol, = M_E * chi_e
  double ske;      // bits/symbol
  double skr;      // bits/second
};

/// One-way fiber transmissivity 10^(-alpha L / 10).
double fiber_loss(double l_km, double alpha_db_per_km = 0.2);

/// Inverts the measured totals into intrusion parameters:
///   kbar_S = total_photons / (M N_S)
///   f_E    = 1 - total_correlation / (kbar_S M N_S (N_S + 1))
/// f_E is clamped into [0, 1]; clamps beyond 1e-6 are reported on stderr.
IntrusionParams extract_intrusion(const MeasuredConstraints& meas, double n_s);

struct PhaseBit {
  int bit;  // 0 or 1; theta = bit * pi
};
struct DisplacementInput {
  std::complex<double> d;
};
using EncodingInput = std::variant<PhaseBit, DisplacementInput>;

/// Joint covariance matrix of (returned mode A', retained mode W) plus the
/// conditional first moments, for the honest channel: forward pure loss,
/// encoding, Psi, backward pure loss, no excess noise anywhere.
struct HonestReturn {
  CovarianceMatrix cm;
  Eigen::Vector4d mean;  // (x_A', p_A', x_W, p_W)
};
HonestReturn honest_return_cm(const ProtocolSpec& spec, double kappa_s,
                              const EncodingInput& input);

/// Exact Gaussian mutual information, bits/symbol, between the complex
/// displacement d (<|d|^2> = E_X, i.i.d. real/imag) and dual-heterodyne
/// outcomes on (A', W) with optimal linear post-processing:
/// I = 1/2 log2 det(Sig_y) / det(Sig_y | d), summed over both quadratures.
double i_ab_tmsv_displacement(double kappa_s, double n_s, double e_x);

struct CorrelatorStats {
  double mean;
  double variance;
};

/// Mean and variance of the decision statistic
///   T = sum_{m=1..M_E} (x_A' x_W + p_A' p_W) / 4
/// for quadratures Gaussian-distributed with the given joint covariance;
/// fourth moments factor into second moments (Isserlis), and the M_E mode
/// pairs are independent. The bit flips the sign of the mean only.
CorrelatorStats flqkd_correlator_stats(const CovarianceMatrix& joint, int m_e, int bit);

/// Binary-phase hard-decision receiver: Alice heterodynes A' and W,
/// conjugates the W outcome in post-processing (which moves the source's
/// phase-sensitive correlation into the correlator above), thresholds T at
/// zero. I_AB = 1 - H2(perr), perr = erfc(|mean| / sqrt(2 var)) / 2.
double i_ab_flqkd(double kappa_s, double g_b, double n_s, int m_e);

struct SkeResult {
  double ske;  // bits/symbol
  double i_e;  // bits/symbol
};

/// Devetak-Winter assembly: I_E = M_E chi_E, SKE = max(xi I_AB - I_E, 0).
SkeResult ske(const ProtocolSpec& spec, double i_ab, double chi_e_per_mode);

/// Full evaluation at one path length. Default intrusion is the honest
/// channel (kbar_S = fiber loss, f_E = 0); an override changes only the
/// eavesdropper bound, never the honest I_AB model.
RatePoint rate_point(const ProtocolSpec& spec, double l_km,
                     const std::optional<IntrusionParams>& intrusion = {},
                     const numopt::OptConfig& opt = {});

struct BrightnessOpt {
  double n_s;
  RatePoint point;
};

/// Maximizes SKE over the source brightness by golden section on log N_S
/// after a 64-point coarse scan; ties resolve toward smaller N_S. If the
/// optimum lands on a range boundary the range is widened (with a warning
/// on stderr) up to a few decades before giving up.
BrightnessOpt optimize_brightness(const ProtocolSpec& spec, double l_km,
                                  double n_s_min, double n_s_max,
                                  const std::optional<IntrusionParams>& intrusion = {},
                                  const numopt::OptConfig& opt = {});

}  // namespace twqkd
