#pragma once

// Covariance-matrix algebra for zero-mean Gaussian states of n bosonic modes.
//
// Quadrature convention, used throughout this library:
//
//   x = a + a†,   p = -i(a - a†),   ordering (x1, p1, ..., xn, pn)
//
// so the vacuum has <x^2> = <p^2> = 1 and the vacuum covariance matrix is
// the identity. In this convention the commutator is [x, p] = 2i, i.e. the
// raw commutator matrix is 2*Omega with Omega = ⊕_k [[0,1],[-1,0]]. All
// symplectic spectra below are taken against the normalized Omega so that
// the vacuum gives nu = 1 and physical states satisfy nu >= 1. The factor
// of two lives in this comment and nowhere else.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace twqkd {

/// Default tolerance on the physicality test min(nu) >= 1 - tol.
inline constexpr double kDefaultPhysTol = 1e-9;

/// Entropy refuses inputs whose symplectic spectrum dips below 1 by more
/// than this; smaller dips are treated as numerical noise and clamped.
inline constexpr double kEntropyPhysTol = 1e-6;

/// Real symmetric 2n x 2n covariance matrix in the convention above.
/// Symmetry is validated on construction (1e-12 per entry, absolute);
/// the stored matrix is the exactly symmetrized input.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd mat);

  int n_modes() const { return n_modes_; }
  int dim() const { return 2 * n_modes_; }
  const Eigen::MatrixXd& m() const { return mat_; }

  /// 2x2 block coupling modes i and j (i == j gives a mode's own block).
  Eigen::Matrix2d block(int i, int j) const;

  static CovarianceMatrix vacuum(int n_modes);
  static CovarianceMatrix thermal(double n_bar);  // single mode, (2n̄+1) I

 private:
  Eigen::MatrixXd mat_;
  int n_modes_;
};

/// Normalized symplectic form Omega = ⊕_k [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int n_modes);

/// g(x) = (x+1) log2(x+1) - x log2 x, the entropy in bits of a thermal
/// state with mean photon number x. g(0) = 0; series expansion below 1e-12.
double g_func(double x);

/// Moduli of the eigenvalues of i*Omega*Sigma, one per mode, sorted
/// descending. Meaningful as a symplectic spectrum only for Sigma >= 0.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Von Neumann entropy in bits: sum_k g((nu_k - 1)/2). Throws if the state
/// is unphysical beyond kEntropyPhysTol.
double entropy(const CovarianceMatrix& sigma);

/// Uncertainty-principle test. Implemented as min eig(Sigma + i*Omega) >=
/// -tol, which coincides with min(nu) >= 1 - tol on the positive cone and
/// correctly rejects indefinite matrices (where eigenvalue moduli of
/// i*Omega*Sigma alone can be misleading).
bool is_physical(const CovarianceMatrix& sigma, double tol = kDefaultPhysTol);

/// Two-mode squeezed vacuum with mean photon number n_s per mode.
/// Mode order: signal S then retained W. Diagonal blocks (2 n_s + 1) I,
/// cross block diag(c, -c) with c = 2 sqrt(n_s (n_s + 1)).
CovarianceMatrix tmsv_cm(double n_s);

/// <a† a> of one mode: (Sigma_xx + Sigma_pp - 2) / 4 for zero-mean states.
double mean_photon(const CovarianceMatrix& sigma, int mode);

/// Annihilation-operator moments between two modes.
struct ModeMoments {
  double n_ss;                  // <a_i† a_i>
  std::complex<double> m_sw;    // <a_i a_j>
  std::complex<double> k_sw;    // <a_i a_j†>
};

/// Converts the quadrature cross block between modes i and j into
/// annihilation-operator moments:
///   <a_i a_j>  = (c_xx - c_pp + i (c_xp + c_px)) / 4
///   <a_i a_j†> = (c_xx + c_pp + i (c_px - c_xp)) / 4
ModeMoments cross_moments(const CovarianceMatrix& sigma, int i, int j);

/// Conditional covariance of the unmeasured modes after ideal heterodyne
/// detection of `measured`: the Schur complement A - C (B + I)^{-1} C^T,
/// B being the measured block. Mode order of the result follows the
/// ascending order of the kept modes.
CovarianceMatrix condition_on_heterodyne(const CovarianceMatrix& sigma,
                                         const std::vector<int>& measured);

}  // namespace twqkd
