#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "twqkd/gaussian.hpp"

#include <cmath>
#include <random>

using namespace twqkd;

TEST_CASE("g_func anchor values") {
  CHECK(g_func(0.0) == 0.0);
  CHECK(g_func(1.0) == 2.0);
  CHECK(std::abs(g_func(999999.0) - 21.3744) < 1e-3);
  // continuity near zero and series branch
  CHECK(g_func(1e-13) == doctest::Approx(1e-13 * std::log2(std::exp(1.0) / 1e-13))
                             .epsilon(1e-9));
  CHECK(g_func(1e-9) > 0.0);
  CHECK_THROWS_AS(g_func(-1e-9), std::invalid_argument);
}

TEST_CASE("g_func strictly increasing and concave on a grid") {
  double prev = g_func(0.01);
  double prev_slope = 1e300;
  for (double x = 0.02; x < 100.0; x *= 1.5) {
    const double v = g_func(x);
    CHECK(v > prev);
    const double slope = (v - prev) / (x - x / 1.5);
    CHECK(slope < prev_slope);
    prev = v;
    prev_slope = slope;
  }
}

TEST_CASE("symplectic eigenvalues of vacuum, thermal, TMSV") {
  const auto vac = symplectic_eigenvalues(CovarianceMatrix::vacuum(2));
  REQUIRE(vac.size() == 2);
  CHECK(vac[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vac[1] == doctest::Approx(1.0).epsilon(1e-12));

  const auto th = symplectic_eigenvalues(CovarianceMatrix::thermal(1.0));
  REQUIRE(th.size() == 1);
  CHECK(th[0] == doctest::Approx(3.0).epsilon(1e-12));

  const auto tmsv = symplectic_eigenvalues(tmsv_cm(1.0));
  REQUIRE(tmsv.size() == 2);
  CHECK(std::abs(tmsv[0] - 1.0) < 1e-9);
  CHECK(std::abs(tmsv[1] - 1.0) < 1e-9);
}

TEST_CASE("entropy: vacuum, thermal identity, TMSV purity") {
  CHECK(entropy(CovarianceMatrix::vacuum(1)) == 0.0);
  CHECK(entropy(CovarianceMatrix::vacuum(3)) == 0.0);
  CHECK(entropy(CovarianceMatrix::thermal(1.0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy(tmsv_cm(5.0)) <= 1e-8);

  for (double n_bar : {0.0, 0.1, 1.0, 10.0, 1e4}) {
    CHECK(std::abs(entropy(CovarianceMatrix::thermal(n_bar)) - g_func(n_bar)) < 1e-10);
  }
}

TEST_CASE("TMSV physical and pure across a brightness grid") {
  for (double n_s = 1e-4; n_s <= 1e3 + 1; n_s *= 10.0) {
    const auto cm = tmsv_cm(n_s);
    CHECK(is_physical(cm));
    CHECK(entropy(cm) <= 1e-8);
    CHECK(mean_photon(cm, 0) == doctest::Approx(n_s).epsilon(1e-12));
    CHECK(mean_photon(cm, 1) == doctest::Approx(n_s).epsilon(1e-12));
  }
}

TEST_CASE("is_physical rejects uncertainty violations") {
  CHECK(is_physical(CovarianceMatrix::vacuum(1)));
  CHECK_FALSE(is_physical(CovarianceMatrix(0.5 * Eigen::Matrix2d::Identity())));

  // inflating the TMSV cross terms breaks physicality (TMSV saturates it)
  Eigen::MatrixXd m = tmsv_cm(1.0).m();
  m.block<2, 2>(0, 2) *= 1.01;
  m.block<2, 2>(2, 0) *= 1.01;
  CHECK_FALSE(is_physical(CovarianceMatrix(m)));
}

TEST_CASE("tmsv_cm entries") {
  CHECK((tmsv_cm(0.0).m() - Eigen::Matrix4d::Identity()).norm() == 0.0);
  const auto cm = tmsv_cm(1.0);
  CHECK(cm.m()(0, 0) == doctest::Approx(3.0));
  CHECK(cm.m()(0, 2) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cm.m()(1, 3) == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(tmsv_cm(-0.1), std::invalid_argument);
}

TEST_CASE("mean_photon basics") {
  CHECK(mean_photon(CovarianceMatrix::vacuum(1), 0) == 0.0);
  CHECK(mean_photon(CovarianceMatrix::thermal(2.5), 0) == doctest::Approx(2.5));
  CHECK_THROWS_AS(mean_photon(CovarianceMatrix::vacuum(1), 1), std::invalid_argument);
}

TEST_CASE("cross_moments of TMSV and product states") {
  const double n_s = 1.7;
  const auto mm = cross_moments(tmsv_cm(n_s), 0, 1);
  CHECK(std::norm(mm.m_sw) == doctest::Approx(n_s * (n_s + 1.0)).epsilon(1e-12));
  CHECK(std::abs(mm.k_sw) < 1e-14);
  CHECK(mm.n_ss == doctest::Approx(n_s).epsilon(1e-12));

  Eigen::Matrix4d prod = Eigen::Matrix4d::Identity();
  prod(2, 2) = prod(3, 3) = 7.0;
  const auto pm = cross_moments(CovarianceMatrix(prod), 0, 1);
  CHECK(std::abs(pm.m_sw) == 0.0);
  CHECK(std::abs(pm.k_sw) == 0.0);

  CHECK_THROWS_AS(cross_moments(tmsv_cm(1.0), 0, 0), std::invalid_argument);
}

TEST_CASE("cross moments after one-sided loss scale as kappa N (N+1)") {
  const double n_s = 2.0, kappa = 0.37;
  Eigen::Matrix4d m = tmsv_cm(n_s).m();
  // beamsplitter on S: variances kappa-mixed with vacuum, cross scaled sqrt(kappa)
  m.block<2, 2>(0, 0) =
      kappa * m.block<2, 2>(0, 0) + (1.0 - kappa) * Eigen::Matrix2d::Identity();
  m.block<2, 2>(0, 2) *= std::sqrt(kappa);
  m.block<2, 2>(2, 0) *= std::sqrt(kappa);
  const auto mm = cross_moments(CovarianceMatrix(m), 0, 1);
  CHECK(std::norm(mm.m_sw) ==
        doctest::Approx(kappa * n_s * (n_s + 1.0)).epsilon(1e-12));
}

TEST_CASE("correlation identity |m|^2 + |k|^2 on random physical CMs") {
  std::mt19937_64 rng(20260809);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cm = test::random_physical_cm2(rng);
    const auto mm = cross_moments(cm, 0, 1);
    const auto c = cm.block(0, 1);
    const double direct =
        (c(0, 0) * c(0, 0) + c(1, 1) * c(1, 1) + c(0, 1) * c(0, 1) + c(1, 0) * c(1, 0)) /
        8.0;
    CHECK(std::norm(mm.m_sw) + std::norm(mm.k_sw) ==
          doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("symplectic spectrum invariant under phase rotations") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cm = test::random_physical_cm2(rng);
    const double theta = angle(rng);
    Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
    r.block<2, 2>(0, 0) = test::rot2(theta);
    r.block<2, 2>(2, 2) = test::rot2(theta);
    Eigen::Matrix4d rotated = r * cm.m() * r.transpose();
    rotated = ((rotated + rotated.transpose()) / 2.0).eval();
    const auto nu0 = symplectic_eigenvalues(cm);
    const auto nu1 = symplectic_eigenvalues(CovarianceMatrix(rotated));
    for (size_t i = 0; i < nu0.size(); ++i) CHECK(std::abs(nu0[i] - nu1[i]) < 1e-9);
  }
}

TEST_CASE("condition_on_heterodyne basics") {
  // product state: conditioning on one factor leaves the other unchanged
  Eigen::Matrix4d prod = Eigen::Matrix4d::Identity();
  prod(0, 0) = prod(1, 1) = 5.0;
  const auto cond = condition_on_heterodyne(CovarianceMatrix(prod), {1});
  CHECK((cond.m() - 5.0 * Eigen::Matrix2d::Identity()).norm() < 1e-14);

  // TMSV N_S = 1, heterodyne W: 3 - 8/4 = 1 per quadrature
  const auto s_given_w = condition_on_heterodyne(tmsv_cm(1.0), {1});
  CHECK(s_given_w.m()(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s_given_w.m()(1, 1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(condition_on_heterodyne(tmsv_cm(1.0), {}), std::invalid_argument);
  CHECK_THROWS_AS(condition_on_heterodyne(tmsv_cm(1.0), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(condition_on_heterodyne(tmsv_cm(1.0), {2}), std::invalid_argument);
}

TEST_CASE("conditioning never increases diagonal entries") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    const auto cm = test::random_physical_cm2(rng);
    const auto cond = condition_on_heterodyne(cm, {1});
    CHECK(cond.m()(0, 0) <= cm.m()(0, 0) + 1e-12);
    CHECK(cond.m()(1, 1) <= cm.m()(1, 1) + 1e-12);
    CHECK(is_physical(cond, 1e-6));
  }
}

TEST_CASE("conditioning matches a Monte Carlo linear-regression oracle") {
  std::mt19937_64 cm_rng(99123);
  const int n_samples = 1000000;
  for (int trial = 0; trial < 20; ++trial) {
    const auto cm = test::random_physical_cm2(cm_rng);
    const auto schur = condition_on_heterodyne(cm, {1});

    // outcomes y = measured quadratures + unit vacuum noise; regress the
    // kept quadratures on y and compare residual covariance
    test::MvnSampler sampler(cm.m(), 33000 + trial);
    std::mt19937_64 noise_rng(77000 + trial);
    std::normal_distribution<double> unit;
    Eigen::Matrix2d s_kk = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d s_ky = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d s_yy = Eigen::Matrix2d::Zero();
    for (int i = 0; i < n_samples; ++i) {
      const Eigen::VectorXd r = sampler();
      const Eigen::Vector2d kept = r.head<2>();
      const Eigen::Vector2d y =
          r.tail<2>() + Eigen::Vector2d(unit(noise_rng), unit(noise_rng));
      s_kk += kept * kept.transpose();
      s_ky += kept * y.transpose();
      s_yy += y * y.transpose();
    }
    s_kk /= n_samples;
    s_ky /= n_samples;
    s_yy /= n_samples;
    const Eigen::Matrix2d resid = s_kk - s_ky * s_yy.inverse() * s_ky.transpose();

    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double se = std::sqrt(
            (resid(a, a) * resid(b, b) + resid(a, b) * resid(a, b)) / n_samples);
        CHECK(std::abs(resid(a, b) - schur.m()(a, b)) < 3.0 * se + 1e-12);
      }
    }
  }
}

TEST_CASE("covariance matrix constructor validation") {
  CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd::Identity(3, 3)),
                  std::invalid_argument);
  Eigen::Matrix2d bad = Eigen::Matrix2d::Identity();
  bad(0, 1) = 1e-6;  // asymmetric beyond tolerance
  CHECK_THROWS_AS((CovarianceMatrix{bad}), std::invalid_argument);
}
