#include "twqkd/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace twqkd {

namespace {

constexpr double kSymmetryTol = 1e-12;

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 2 || mat_.rows() % 2 != 0) {
    std::ostringstream os;
    os << "CovarianceMatrix: expected square 2n x 2n matrix, got " << mat_.rows()
       << " x " << mat_.cols();
    throw std::invalid_argument(os.str());
  }
  const double asym = (mat_ - mat_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    std::ostringstream os;
    os << "CovarianceMatrix: matrix not symmetric (max |M - M^T| = " << asym << ")";
    throw std::invalid_argument(os.str());
  }
  mat_ = ((mat_ + mat_.transpose()) / 2.0).eval();
  n_modes_ = static_cast<int>(mat_.rows()) / 2;
}

Eigen::Matrix2d CovarianceMatrix::block(int i, int j) const {
  if (i < 0 || i >= n_modes_ || j < 0 || j >= n_modes_) {
    throw std::invalid_argument("CovarianceMatrix::block: mode index out of range");
  }
  return mat_.block<2, 2>(2 * i, 2 * j);
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum: n_modes must be >= 1");
  return CovarianceMatrix(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix CovarianceMatrix::thermal(double n_bar) {
  if (n_bar < 0) throw std::invalid_argument("thermal: n_bar must be >= 0");
  return CovarianceMatrix((2.0 * n_bar + 1.0) * Eigen::Matrix2d::Identity());
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double g_func(double x) {
  if (x < 0) throw std::invalid_argument("g_func: negative mean photon number");
  if (x == 0.0) return 0.0;
  if (x < 1e-12) {
    // leading term of (x+1)log2(x+1) - x log2 x; avoids 1+x rounding to 1
    return x * (std::numbers::log2e - std::log2(x));
  }
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  const int n = sigma.n_modes();
  const Eigen::MatrixXd k = symplectic_form(n) * sigma.m();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(k, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symplectic_eigenvalues: eigen decomposition failed");
  }
  std::vector<double> mods(2 * n);
  for (int i = 0; i < 2 * n; ++i) mods[i] = std::abs(solver.eigenvalues()[i]);
  std::sort(mods.begin(), mods.end(), std::greater<double>());
  // eigenvalues of i*Omega*Sigma come in +/- pairs; keep one per mode
  std::vector<double> nus(n);
  for (int i = 0; i < n; ++i) nus[i] = mods[2 * i];
  return nus;
}

double entropy(const CovarianceMatrix& sigma) {
  if (!is_physical(sigma, kEntropyPhysTol)) {
    throw std::runtime_error("entropy: covariance matrix is unphysical");
  }
  double bits = 0.0;
  for (double nu : symplectic_eigenvalues(sigma)) {
    bits += g_func(std::max(0.0, (nu - 1.0) / 2.0));
  }
  return bits;
}

bool is_physical(const CovarianceMatrix& sigma, double tol) {
  Eigen::MatrixXcd h = sigma.m().cast<std::complex<double>>();
  h += std::complex<double>(0.0, 1.0) * symplectic_form(sigma.n_modes());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues().minCoeff() >= -tol;
}

CovarianceMatrix tmsv_cm(double n_s) {
  if (n_s < 0) throw std::invalid_argument("tmsv_cm: n_s must be >= 0");
  const double diag = 2.0 * n_s + 1.0;
  const double c = 2.0 * std::sqrt(n_s * (n_s + 1.0));
  Eigen::Matrix4d m = diag * Eigen::Matrix4d::Identity();
  m(0, 2) = m(2, 0) = c;
  m(1, 3) = m(3, 1) = -c;
  return CovarianceMatrix(m);
}

double mean_photon(const CovarianceMatrix& sigma, int mode) {
  if (mode < 0 || mode >= sigma.n_modes()) {
    throw std::invalid_argument("mean_photon: mode index out of range");
  }
  const auto b = sigma.block(mode, mode);
  return (b(0, 0) + b(1, 1) - 2.0) / 4.0;
}

ModeMoments cross_moments(const CovarianceMatrix& sigma, int i, int j) {
  if (i == j) throw std::invalid_argument("cross_moments: modes must differ");
  const auto c = sigma.block(i, j);
  const double c_xx = c(0, 0), c_xp = c(0, 1), c_px = c(1, 0), c_pp = c(1, 1);
  ModeMoments out;
  out.n_ss = mean_photon(sigma, i);
  out.m_sw = {(c_xx - c_pp) / 4.0, (c_xp + c_px) / 4.0};
  out.k_sw = {(c_xx + c_pp) / 4.0, (c_px - c_xp) / 4.0};
  return out;
}

CovarianceMatrix condition_on_heterodyne(const CovarianceMatrix& sigma,
                                         const std::vector<int>& measured) {
  const int n = sigma.n_modes();
  std::vector<bool> is_measured(n, false);
  for (int m : measured) {
    if (m < 0 || m >= n) {
      throw std::invalid_argument("condition_on_heterodyne: mode index out of range");
    }
    if (is_measured[m]) {
      throw std::invalid_argument("condition_on_heterodyne: duplicate mode index");
    }
    is_measured[m] = true;
  }
  if (measured.empty() || static_cast<int>(measured.size()) == n) {
    throw std::invalid_argument(
        "condition_on_heterodyne: measured set must be a nonempty proper subset");
  }

  std::vector<int> kept_rows, meas_rows;
  for (int m = 0; m < n; ++m) {
    auto& dst = is_measured[m] ? meas_rows : kept_rows;
    dst.push_back(2 * m);
    dst.push_back(2 * m + 1);
  }
  const int nk = static_cast<int>(kept_rows.size());
  const int nm = static_cast<int>(meas_rows.size());
  Eigen::MatrixXd a(nk, nk), b(nm, nm), c(nk, nm);
  for (int r = 0; r < nk; ++r) {
    for (int s = 0; s < nk; ++s) a(r, s) = sigma.m()(kept_rows[r], kept_rows[s]);
    for (int s = 0; s < nm; ++s) c(r, s) = sigma.m()(kept_rows[r], meas_rows[s]);
  }
  for (int r = 0; r < nm; ++r) {
    for (int s = 0; s < nm; ++s) b(r, s) = sigma.m()(meas_rows[r], meas_rows[s]);
  }

  // B + I is positive definite for any physical Sigma
  b += Eigen::MatrixXd::Identity(nm, nm);
  Eigen::MatrixXd schur = a - c * b.ldlt().solve(c.transpose());
  schur = ((schur + schur.transpose()) / 2.0).eval();
  CovarianceMatrix out{std::move(schur)};
  if (!is_physical(out, kEntropyPhysTol)) {
    throw std::runtime_error(
        "condition_on_heterodyne: conditioning broke physicality beyond tolerance");
  }
  return out;
}

}  // namespace twqkd
