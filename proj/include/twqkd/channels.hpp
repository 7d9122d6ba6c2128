#pragma once

// Single-mode Gaussian channels without excess noise, their complements,
// and the entropy-gain functional. A channel acts on covariance matrices
// as Sigma -> X Sigma X^T + Y.

#include "twqkd/gaussian.hpp"

#include <Eigen/Dense>

namespace twqkd {

enum class ChannelKind {
  PureLoss,         // transmissivity eta in (0, 1]
  Amplifier,        // quantum-limited, gain G >= 1
  PhaseConjugator,  // quantum-limited, gain G > 0
  Identity,
  ConstantVacuum,   // maps every input to vacuum; arises as Identity's complement
};

struct GaussianChannelSpec {
  ChannelKind kind;
  double parameter;  // eta or G; ignored for Identity / ConstantVacuum

  static GaussianChannelSpec pure_loss(double eta);
  static GaussianChannelSpec amplifier(double gain);
  static GaussianChannelSpec phase_conjugator(double gain);
  static GaussianChannelSpec identity();
  static GaussianChannelSpec constant_vacuum();
};

/// (X, Y) pair of a channel's covariance action on one mode.
/// Complete positivity requires Y + i Omega - i X Omega X^T >= 0.
struct ChannelAction {
  Eigen::Matrix2d x;
  Eigen::Matrix2d y;
};

/// The (X, Y) action of a channel. ConstantVacuum has no such form and is
/// rejected; it is handled structurally by apply_to_joint.
ChannelAction action_of(const GaussianChannelSpec& spec);

/// The complementary channel (input -> environment of the isometric
/// dilation), itself one of the five kinds:
///   PureLoss(eta)        -> PureLoss(1 - eta)   [eta = 1 -> ConstantVacuum]
///   Amplifier(G)         -> PhaseConjugator(G - 1)   [G = 1 -> ConstantVacuum]
///   PhaseConjugator(G)   -> Amplifier(G + 1)
///   Identity             -> ConstantVacuum
/// The phase-conjugator convention is a_out = sqrt(G) a† + sqrt(G+1) v,
/// whose complement b = sqrt(G+1) a + sqrt(G) v† preserves [a, a†] = 1.
GaussianChannelSpec complementary_of(const GaussianChannelSpec& spec);

/// Applies the channel to one mode of a joint state: Sigma' =
/// (X ⊕ I) Sigma (X ⊕ I)^T + (Y ⊕ 0). ConstantVacuum replaces the acted
/// mode's block by I and zeroes its cross blocks.
CovarianceMatrix apply_to_joint(const GaussianChannelSpec& spec,
                                const CovarianceMatrix& sigma, int mode);

/// Entropy gain S(phi[rho]) - S(rho) in bits; may be negative.
double entropy_gain(const GaussianChannelSpec& spec, const CovarianceMatrix& sigma,
                    int mode);

}  // namespace twqkd
