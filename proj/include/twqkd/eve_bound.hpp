#pragma once

// Single-letter upper bound chi_E on the eavesdropper's Holevo information
// per mode, evaluated by constrained maximization over Gaussian joint
// states of the delivered signal mode S and the retained mode W.
//
// The feasible states have S block (2 kbar_S N_S + 1) I fixed by the
// received-photon measurement, W block (2 N_S + 1) I frozen (W never
// leaves the lab), and cross block diag(c_x, c_p) whose correlation
// functional |<a_S a_W>|^2 + |<a_S a_W†>|^2 = (c_x^2 + c_p^2)/8 sits on
// the measured lower bound (1 - f_E) kbar_S N_S (N_S + 1); less surviving
// correlation only helps the eavesdropper, so her optimum saturates it.

#include "twqkd/channels.hpp"
#include "twqkd/gaussian.hpp"
#include "twqkd/numopt.hpp"

#include <optional>

namespace twqkd {

/// Measured disturbance of the forward leg.
struct IntrusionParams {
  double kappa_bar_s;  // effective forward transmissivity, >= 0
  double f_e;          // correlation-destruction fraction, in [0, 1]
};

struct EncodingSpec {
  enum class Kind { RandomDisplacement, BinaryPhase };
  Kind kind;
  double e_x;  // mean displacement power in photons; 0 for BinaryPhase

  static EncodingSpec random_displacement(double e_x);
  static EncodingSpec binary_phase();
};

/// Cross-covariance entries diag(c_x, c_p) of the S-W block.
struct AttackStateParams {
  double c_x;
  double c_p;
};

/// Joint (S, W) covariance matrix of an attack state, or nullopt when the
/// combination violates the uncertainty principle (the optimizer treats
/// that as a rejected point, not an error).
std::optional<CovarianceMatrix> build_joint_cm(double n_s,
                                               const IntrusionParams& intrusion,
                                               const AttackStateParams& attack,
                                               double phys_tol = kDefaultPhysTol);

/// |<a_S a_W>|^2 + |<a_S a_W†>|^2 = (c_x^2 + c_p^2) / 8 for a diagonal
/// cross block; photons^2 units.
double correlation_functional(const AttackStateParams& attack);

/// Mean photon number of the returned mode: encoding adds its displacement
/// power, then the return channel maps n' = n_in + e_x to
///   PureLoss: eta n'   Amplifier: G n' + G - 1
///   PhaseConjugator: G (n' + 1)   Identity: n'
double mean_photon_after_psi(const GaussianChannelSpec& psi, double n_in, double e_x);

/// The capacity functional F of one attack state:
///   F = g(n_B)  -  [ S((Psi^c ⊗ I)[rho_SW]) - S(rho_SW) ]
/// where n_B is the returned mode's photon number and g(n_B) is the
/// max-entropy (thermal) stand-in for S(rho_B) — exact for Gaussian
/// displacement averaging and for binary-phase encoding on the
/// phase-insensitive attack states above, conservative otherwise.
double f_single(const CovarianceMatrix& sigma_sw, const GaussianChannelSpec& psi,
                const EncodingSpec& encoding);

struct ChiResult {
  double value;              // max(raw, 0)
  double raw;                // unclamped maximum of F
  AttackStateParams argmax;  // maximizing cross block
};

/// chi_E = max_phi F over the equality manifold c_x = r cos(phi),
/// c_p = r sin(phi), r^2 = 8 (1 - f_E) kbar_S N_S (N_S + 1), with
/// unphysical angles rejected. Coarse scan plus golden-section refinement;
/// the scan grid is aligned so the beamsplitter-attack angles (odd
/// multiples of pi/4) are always sampled — at zero slack they are the only
/// feasible points. Deterministic.
ChiResult chi_e(double n_s, const IntrusionParams& intrusion,
                const GaussianChannelSpec& psi, const EncodingSpec& encoding,
                const numopt::OptConfig& cfg = {});

}  // namespace twqkd
