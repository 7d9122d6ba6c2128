#include "twqkd/eve_bound.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace twqkd {

namespace {

void validate_intrusion(const IntrusionParams& intrusion) {
  if (!(intrusion.kappa_bar_s >= 0.0)) {
    throw std::invalid_argument("IntrusionParams: kappa_bar_s must be >= 0");
  }
  if (!(intrusion.f_e >= 0.0 && intrusion.f_e <= 1.0)) {
    throw std::invalid_argument("IntrusionParams: f_e must be in [0, 1]");
  }
}

}  // namespace

EncodingSpec EncodingSpec::random_displacement(double e_x) {
  if (!(e_x >= 0.0)) {
    throw std::invalid_argument("EncodingSpec: e_x must be >= 0");
  }
  return {Kind::RandomDisplacement, e_x};
}

EncodingSpec EncodingSpec::binary_phase() { return {Kind::BinaryPhase, 0.0}; }

std::optional<CovarianceMatrix> build_joint_cm(double n_s,
                                               const IntrusionParams& intrusion,
                                               const AttackStateParams& attack,
                                               double phys_tol) {
  if (!(n_s >= 0.0)) throw std::invalid_argument("build_joint_cm: n_s must be >= 0");
  validate_intrusion(intrusion);
  const double a = 2.0 * intrusion.kappa_bar_s * n_s + 1.0;
  const double b = 2.0 * n_s + 1.0;
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = b;
  m(0, 2) = m(2, 0) = attack.c_x;
  m(1, 3) = m(3, 1) = attack.c_p;
  CovarianceMatrix cm{m};
  if (!is_physical(cm, phys_tol)) return std::nullopt;
  return cm;
}

double correlation_functional(const AttackStateParams& attack) {
  return (attack.c_x * attack.c_x + attack.c_p * attack.c_p) / 8.0;
}

double mean_photon_after_psi(const GaussianChannelSpec& psi, double n_in, double e_x) {
  if (!(n_in >= 0.0) || !(e_x >= 0.0)) {
    throw std::invalid_argument("mean_photon_after_psi: photon numbers must be >= 0");
  }
  const double n = n_in + e_x;
  switch (psi.kind) {
    case ChannelKind::PureLoss:
      return psi.parameter * n;
    case ChannelKind::Amplifier:
      return psi.parameter * n + psi.parameter - 1.0;
    case ChannelKind::PhaseConjugator:
      return psi.parameter * (n + 1.0);
    case ChannelKind::Identity:
      return n;
    case ChannelKind::ConstantVacuum:
      break;
  }
  throw std::invalid_argument("mean_photon_after_psi: invalid return channel");
}

double f_single(const CovarianceMatrix& sigma_sw, const GaussianChannelSpec& psi,
                const EncodingSpec& encoding) {
  const double n_s_mode = mean_photon(sigma_sw, 0);
  const double n_b = mean_photon_after_psi(psi, std::max(0.0, n_s_mode), encoding.e_x);
  const GaussianChannelSpec comp = complementary_of(psi);
  const double gain = entropy(apply_to_joint(comp, sigma_sw, 0)) - entropy(sigma_sw);
  return g_func(n_b) - gain;
}

ChiResult chi_e(double n_s, const IntrusionParams& intrusion,
                const GaussianChannelSpec& psi, const EncodingSpec& encoding,
                const numopt::OptConfig& cfg) {
  if (!(n_s >= 0.0)) throw std::invalid_argument("chi_e: n_s must be >= 0");
  validate_intrusion(intrusion);

  const double r = std::sqrt(8.0 * (1.0 - intrusion.f_e) * intrusion.kappa_bar_s *
                             n_s * (n_s + 1.0));
  auto objective = [&](double phi) {
    const AttackStateParams attack{r * std::cos(phi), r * std::sin(phi)};
    const auto cm = build_joint_cm(n_s, intrusion, attack);
    if (!cm) return numopt::kInfeasible;
    return f_single(*cm, psi, encoding);
  };

  // Round the scan up to a multiple of 8 intervals over [0, 2pi] so the
  // angles phi = k pi/4 land on grid points exactly.
  numopt::OptConfig scan = cfg;
  const int intervals = ((std::max(cfg.coarse_points, 8) - 1 + 7) / 8) * 8;
  scan.coarse_points = intervals + 1;

  numopt::ScalarMax best;
  try {
    best = numopt::maximize_1d(objective, 0.0, 2.0 * std::numbers::pi, scan);
  } catch (const std::runtime_error&) {
    std::ostringstream os;
    os << "chi_e: empty feasible set (n_s = " << n_s
       << ", kappa_bar_s = " << intrusion.kappa_bar_s << ", f_e = " << intrusion.f_e
       << "); no physical attack satisfies the constraints";
    throw std::runtime_error(os.str());
  }

  ChiResult out;
  out.raw = best.value;
  out.value = std::max(best.value, 0.0);
  out.argmax = {r * std::cos(best.arg), r * std::sin(best.arg)};
  return out;
}

}  // namespace twqkd
