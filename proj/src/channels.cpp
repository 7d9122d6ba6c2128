#include "twqkd/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace twqkd {

namespace {

const Eigen::Matrix2d kZ = (Eigen::Matrix2d() << 1.0, 0.0, 0.0, -1.0).finished();

}  // namespace

GaussianChannelSpec GaussianChannelSpec::pure_loss(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("pure_loss: eta must be in (0, 1]");
  }
  return {ChannelKind::PureLoss, eta};
}

GaussianChannelSpec GaussianChannelSpec::amplifier(double gain) {
  if (!(gain >= 1.0)) throw std::invalid_argument("amplifier: gain must be >= 1");
  return {ChannelKind::Amplifier, gain};
}

GaussianChannelSpec GaussianChannelSpec::phase_conjugator(double gain) {
  if (!(gain > 0.0)) throw std::invalid_argument("phase_conjugator: gain must be > 0");
  return {ChannelKind::PhaseConjugator, gain};
}

GaussianChannelSpec GaussianChannelSpec::identity() {
  return {ChannelKind::Identity, 0.0};
}

GaussianChannelSpec GaussianChannelSpec::constant_vacuum() {
  return {ChannelKind::ConstantVacuum, 0.0};
}

ChannelAction action_of(const GaussianChannelSpec& spec) {
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  switch (spec.kind) {
    case ChannelKind::PureLoss:
      return {std::sqrt(spec.parameter) * id, (1.0 - spec.parameter) * id};
    case ChannelKind::Amplifier:
      return {std::sqrt(spec.parameter) * id, (spec.parameter - 1.0) * id};
    case ChannelKind::PhaseConjugator:
      return {std::sqrt(spec.parameter) * kZ, (spec.parameter + 1.0) * id};
    case ChannelKind::Identity:
      return {id, Eigen::Matrix2d::Zero()};
    case ChannelKind::ConstantVacuum:
      throw std::invalid_argument(
          "action_of: ConstantVacuum has no (X, Y) form; use apply_to_joint");
  }
  throw std::logic_error("action_of: unknown channel kind");
}

GaussianChannelSpec complementary_of(const GaussianChannelSpec& spec) {
  switch (spec.kind) {
    case ChannelKind::PureLoss:
      if (spec.parameter == 1.0) return GaussianChannelSpec::constant_vacuum();
      return GaussianChannelSpec::pure_loss(1.0 - spec.parameter);
    case ChannelKind::Amplifier:
      if (spec.parameter == 1.0) return GaussianChannelSpec::constant_vacuum();
      return GaussianChannelSpec::phase_conjugator(spec.parameter - 1.0);
    case ChannelKind::PhaseConjugator:
      return GaussianChannelSpec::amplifier(spec.parameter + 1.0);
    case ChannelKind::Identity:
      return GaussianChannelSpec::constant_vacuum();
    case ChannelKind::ConstantVacuum:
      throw std::invalid_argument("complementary_of: ConstantVacuum has no complement");
  }
  throw std::logic_error("complementary_of: unknown channel kind");
}

CovarianceMatrix apply_to_joint(const GaussianChannelSpec& spec,
                                const CovarianceMatrix& sigma, int mode) {
  const int n = sigma.n_modes();
  if (mode < 0 || mode >= n) {
    throw std::invalid_argument("apply_to_joint: mode index out of range");
  }

  Eigen::MatrixXd out;
  if (spec.kind == ChannelKind::ConstantVacuum) {
    out = sigma.m();
    out.middleRows(2 * mode, 2).setZero();
    out.middleCols(2 * mode, 2).setZero();
    out.block<2, 2>(2 * mode, 2 * mode) = Eigen::Matrix2d::Identity();
  } else {
    const ChannelAction act = action_of(spec);
    Eigen::MatrixXd x_full = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    x_full.block<2, 2>(2 * mode, 2 * mode) = act.x;
    out = x_full * sigma.m() * x_full.transpose();
    out.block<2, 2>(2 * mode, 2 * mode) += act.y;
  }
  out = ((out + out.transpose()) / 2.0).eval();
  CovarianceMatrix result{std::move(out)};
  if (!is_physical(result, kEntropyPhysTol)) {
    throw std::runtime_error("apply_to_joint: output unphysical beyond tolerance");
  }
  return result;
}

double entropy_gain(const GaussianChannelSpec& spec, const CovarianceMatrix& sigma,
                    int mode) {
  return entropy(apply_to_joint(spec, sigma, mode)) - entropy(sigma);
}

}  // namespace twqkd
