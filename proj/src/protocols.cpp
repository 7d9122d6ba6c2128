#include "twqkd/protocols.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace twqkd {

namespace {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    std::ostringstream os;
    os << "ProtocolSpec: field '" << field << "' " << what;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

GaussianChannelSpec ProtocolSpec::psi() const {
  switch (family) {
    case ProtocolFamily::TmsvDisplacement:
      return GaussianChannelSpec::identity();
    case ProtocolFamily::FlQkd:
      return GaussianChannelSpec::amplifier(g_b);
  }
  throw std::logic_error("ProtocolSpec::psi: unknown family");
}

EncodingSpec ProtocolSpec::encoding() const {
  switch (family) {
    case ProtocolFamily::TmsvDisplacement:
      return EncodingSpec::random_displacement(e_x);
    case ProtocolFamily::FlQkd:
      return EncodingSpec::binary_phase();
  }
  throw std::logic_error("ProtocolSpec::encoding: unknown family");
}

void ProtocolSpec::validate() const {
  require(n_s >= 0.0, "n_s", "must be >= 0");
  require(xi > 0.0 && xi <= 1.0, "xi", "must be in (0, 1]");
  require(rate_hz > 0.0, "rate_hz", "must be > 0");
  require(alpha_db_per_km > 0.0, "alpha_db_per_km", "must be > 0");
  require(m_e >= 1, "m_e", "must be an integer >= 1");
  if (family == ProtocolFamily::TmsvDisplacement) {
    require(e_x >= 0.0, "e_x", "must be >= 0");
    require(m_e == 1, "m_e", "must be 1 for the displacement protocol");
  } else {
    require(g_b >= 1.0, "g_b", "must be >= 1");
    require(e_x == 0.0, "e_x", "must be 0 for binary phase encoding");
  }
}

double fiber_loss(double l_km, double alpha_db_per_km) {
  if (l_km < 0) throw std::invalid_argument("fiber_loss: length must be >= 0");
  if (!(alpha_db_per_km > 0)) {
    throw std::invalid_argument("fiber_loss: alpha must be > 0");
  }
  return std::pow(10.0, -alpha_db_per_km * l_km / 10.0);
}

IntrusionParams extract_intrusion(const MeasuredConstraints& meas, double n_s) {
  if (meas.m < 1) throw std::invalid_argument("extract_intrusion: M must be >= 1");
  if (meas.total_photons < 0 || meas.total_correlation < 0) {
    throw std::invalid_argument("extract_intrusion: totals must be >= 0");
  }
  if (!(n_s > 0)) throw std::invalid_argument("extract_intrusion: n_s must be > 0");

  const double m = static_cast<double>(meas.m);
  const double kappa_bar = meas.total_photons / (m * n_s);
  if (kappa_bar == 0.0) {
    if (meas.total_correlation > 0.0) {
      throw std::runtime_error(
          "extract_intrusion: zero received photons but nonzero correlation");
    }
    return {0.0, 1.0};
  }
  const double passive = kappa_bar * m * n_s * (n_s + 1.0);
  const double raw = 1.0 - meas.total_correlation / passive;
  const double clamped = std::clamp(raw, 0.0, 1.0);
  if (std::abs(raw - clamped) > 1e-6) {
    std::cerr << "warning: extract_intrusion: f_E = " << raw
              << " outside [0, 1]; clamped to " << clamped << "\n";
  }
  return {kappa_bar, clamped};
}

HonestReturn honest_return_cm(const ProtocolSpec& spec, double kappa_s,
                              const EncodingInput& input) {
  spec.validate();
  if (!(kappa_s > 0.0 && kappa_s <= 1.0)) {
    throw std::invalid_argument("honest_return_cm: kappa_s must be in (0, 1]");
  }
  const GaussianChannelSpec forward = GaussianChannelSpec::pure_loss(kappa_s);

  CovarianceMatrix cm = apply_to_joint(forward, tmsv_cm(spec.n_s), 0);
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();

  if (std::holds_alternative<PhaseBit>(input)) {
    if (spec.family != ProtocolFamily::FlQkd) {
      throw std::invalid_argument("honest_return_cm: phase input requires fl-qkd");
    }
    const int bit = std::get<PhaseBit>(input).bit;
    if (bit != 0 && bit != 1) {
      throw std::invalid_argument("honest_return_cm: bit must be 0 or 1");
    }
    if (bit == 1) {  // R(pi) = -I on the S quadratures
      Eigen::MatrixXd m = cm.m();
      m.block<2, 2>(0, 2) *= -1.0;
      m.block<2, 2>(2, 0) *= -1.0;
      cm = CovarianceMatrix(m);
    }
  } else {
    if (spec.family != ProtocolFamily::TmsvDisplacement) {
      throw std::invalid_argument(
          "honest_return_cm: displacement input requires tmsv-disp");
    }
    const auto d = std::get<DisplacementInput>(input).d;
    mean(0) += 2.0 * d.real();
    mean(1) += 2.0 * d.imag();
  }

  const GaussianChannelSpec psi = spec.psi();
  if (psi.kind != ChannelKind::Identity) {
    cm = apply_to_joint(psi, cm, 0);
    const Eigen::Matrix2d x = action_of(psi).x;
    mean.head<2>() = (x * mean.head<2>()).eval();
  }

  cm = apply_to_joint(forward, cm, 0);
  mean.head<2>() *= std::sqrt(kappa_s);
  return {std::move(cm), mean};
}

double i_ab_tmsv_displacement(double kappa_s, double n_s, double e_x) {
  ProtocolSpec spec;
  spec.family = ProtocolFamily::TmsvDisplacement;
  spec.n_s = n_s;
  spec.e_x = e_x;

  const HonestReturn quiet = honest_return_cm(spec, kappa_s, DisplacementInput{{0, 0}});
  const HonestReturn unit_r = honest_return_cm(spec, kappa_s, DisplacementInput{{1, 0}});
  const HonestReturn unit_i = honest_return_cm(spec, kappa_s, DisplacementInput{{0, 1}});

  // outcome = quadratures + one unit of heterodyne vacuum noise
  const Eigen::Matrix4d cond = quiet.cm.m() + Eigen::Matrix4d::Identity();
  Eigen::Matrix<double, 4, 2> t;
  t.col(0) = unit_r.mean - quiet.mean;
  t.col(1) = unit_i.mean - quiet.mean;
  const Eigen::Matrix2d sig_d = (e_x / 2.0) * Eigen::Matrix2d::Identity();
  const Eigen::Matrix4d uncond = cond + t * sig_d * t.transpose();

  return 0.5 * std::log2(uncond.determinant() / cond.determinant());
}

CorrelatorStats flqkd_correlator_stats(const CovarianceMatrix& joint, int m_e, int bit) {
  if (joint.n_modes() != 2) {
    throw std::invalid_argument("flqkd_correlator_stats: expected a two-mode CM");
  }
  if (m_e < 1) throw std::invalid_argument("flqkd_correlator_stats: m_e must be >= 1");
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("flqkd_correlator_stats: bit must be 0 or 1");
  }
  const Eigen::MatrixXd& s = joint.m();
  const double v_xa = s(0, 0), v_pa = s(1, 1), v_xb = s(2, 2), v_pb = s(3, 3);
  const double c_xx = s(0, 2), c_pp = s(1, 3), c_xp = s(0, 3), c_px = s(1, 2);
  const double a_xp = s(0, 1), b_xp = s(2, 3);

  const double mean1 = (c_xx + c_pp) / 4.0;
  const double var1 = (v_xa * v_xb + c_xx * c_xx + v_pa * v_pb + c_pp * c_pp +
                       2.0 * (a_xp * b_xp + c_xp * c_px)) /
                      16.0;
  const double sign = (bit == 0) ? 1.0 : -1.0;
  return {sign * m_e * mean1, m_e * var1};
}

double i_ab_flqkd(double kappa_s, double g_b, double n_s, int m_e) {
  ProtocolSpec spec;
  spec.family = ProtocolFamily::FlQkd;
  spec.n_s = n_s;
  spec.g_b = g_b;
  spec.m_e = m_e;

  const HonestReturn honest = honest_return_cm(spec, kappa_s, PhaseBit{0});

  // heterodyne outcomes on both modes, reference outcome conjugated
  Eigen::Matrix4d meas = honest.cm.m() + Eigen::Matrix4d::Identity();
  Eigen::Matrix4d conj = Eigen::Matrix4d::Identity();
  conj(3, 3) = -1.0;
  meas = (conj * meas * conj).eval();

  const CorrelatorStats stats =
      flqkd_correlator_stats(CovarianceMatrix(meas), m_e, 0);
  if (!(stats.variance > 0.0)) {
    throw std::runtime_error("i_ab_flqkd: correlator variance not positive");
  }
  const double p_err =
      0.5 * std::erfc(std::abs(stats.mean) / std::sqrt(2.0 * stats.variance));
  return 1.0 - binary_entropy(p_err);
}

SkeResult ske(const ProtocolSpec& spec, double i_ab, double chi_e_per_mode) {
  if (i_ab < 0 || chi_e_per_mode < 0) {
    throw std::invalid_argument("ske: inputs must be >= 0");
  }
  const double i_e = static_cast<double>(spec.m_e) * chi_e_per_mode;
  return {std::max(spec.xi * i_ab - i_e, 0.0), i_e};
}

RatePoint rate_point(const ProtocolSpec& spec, double l_km,
                     const std::optional<IntrusionParams>& intrusion,
                     const numopt::OptConfig& opt) {
  spec.validate();
  const double kappa_s = fiber_loss(l_km, spec.alpha_db_per_km);
  const IntrusionParams intr = intrusion.value_or(IntrusionParams{kappa_s, 0.0});

  double i_ab = 0.0;
  switch (spec.family) {
    case ProtocolFamily::TmsvDisplacement:
      i_ab = i_ab_tmsv_displacement(kappa_s, spec.n_s, spec.e_x);
      break;
    case ProtocolFamily::FlQkd:
      i_ab = i_ab_flqkd(kappa_s, spec.g_b, spec.n_s, spec.m_e);
      break;
  }
  const ChiResult chi = chi_e(spec.n_s, intr, spec.psi(), spec.encoding(), opt);
  const SkeResult dw = ske(spec, i_ab, chi.value);

  RatePoint pt;
  pt.length_km = l_km;
  pt.kappa_s = kappa_s;
  pt.n_s = spec.n_s;
  pt.i_ab = i_ab;
  pt.chi_e = chi.value;
  pt.i_e = dw.i_e;
  pt.ske = dw.ske;
  pt.skr = spec.rate_hz * dw.ske;
  return pt;
}

BrightnessOpt optimize_brightness(const ProtocolSpec& spec, double l_km,
                                  double n_s_min, double n_s_max,
                                  const std::optional<IntrusionParams>& intrusion,
                                  const numopt::OptConfig& opt) {
  if (!(n_s_min > 0.0 && n_s_min < n_s_max)) {
    throw std::invalid_argument("optimize_brightness: need 0 < n_s_min < n_s_max");
  }

  numopt::OptConfig scan = opt;
  scan.coarse_points = 64;

  double lo = n_s_min, hi = n_s_max;
  for (int attempt = 0;; ++attempt) {
    auto objective = [&](double log_ns) {
      ProtocolSpec trial = spec;
      trial.n_s = std::exp(log_ns);
      return rate_point(trial, l_km, intrusion, opt).ske;
    };
    const numopt::ScalarMax best =
        numopt::maximize_1d(objective, std::log(lo), std::log(hi), scan);

    const double cell = (std::log(hi) - std::log(lo)) / (scan.coarse_points - 1);
    const bool at_low = best.arg <= std::log(lo) + cell;
    const bool at_high = best.arg >= std::log(hi) - cell;
    if ((at_low || at_high) && attempt < 3) {
      if (at_low) lo /= 10.0;
      if (at_high) hi *= 10.0;
      std::cerr << "warning: optimize_brightness: optimum at range boundary; "
                   "widening to ["
                << lo << ", " << hi << "]\n";
      continue;
    }
    if (at_low || at_high) {
      std::cerr << "warning: optimize_brightness: optimum still at boundary "
                   "after widening\n";
    }

    ProtocolSpec final_spec = spec;
    final_spec.n_s = std::exp(best.arg);
    return {final_spec.n_s, rate_point(final_spec, l_km, intrusion, opt)};
  }
}

}  // namespace twqkd
