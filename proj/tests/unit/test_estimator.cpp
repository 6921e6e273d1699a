#include "symmix/error.hpp"
#include "symmix/estimator.hpp"
#include "symmix/simulate.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace symmix;
using cplx = std::complex<double>;

namespace {

Sample draw(NoiseFamily family, const EuclideanParam& theta0, std::size_t n, std::uint64_t seed, std::size_t rep = 0)
{
  ScenarioSpec spec;
  spec.family = family;
  spec.theta0 = theta0;
  spec.n = n;
  spec.seed = seed;
  return sample_mixture(spec, rep);
}

const EuclideanParam kTheta0{ 0.25, -1.0, 2.0 };

} // namespace

TEST(InitialPoints, FirstPointIsInterquartilePair)
{
  const Sample s = draw(NoiseFamily::gauss, kTheta0, 100, 1);
  FitConfig cfg;
  cfg.starts = 1;
  const auto pts = initial_points(s, cfg);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].p, 0.25);
  EXPECT_EQ(pts[0].alpha, s.quantile(0.25));
  EXPECT_EQ(pts[0].beta, s.quantile(0.75));
}

TEST(InitialPoints, DeterministicDistinctAndInsideBox)
{
  const Sample s = draw(NoiseFamily::gauss, kTheta0, 100, 2);
  FitConfig cfg;
  cfg.starts = 100;
  const auto pts = initial_points(s, cfg);
  EXPECT_EQ(pts.size(), 18u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_TRUE(satisfies(pts[i], cfg.box));
    for (std::size_t j = 0; j < i; ++j)
      EXPECT_FALSE(pts[i] == pts[j]);
  }
  EXPECT_EQ(pts, initial_points(s, cfg));
  cfg.starts = 8;
  EXPECT_EQ(initial_points(s, cfg).size(), 8u);
}

TEST(InitialPoints, ShiftEquivariant)
{
  const Sample s = draw(NoiseFamily::laplace, kTheta0, 60, 3);
  const double c = 12.5;
  const auto a = initial_points(s, FitConfig{});
  const auto b = initial_points(s.shifted(c), FitConfig{});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].p, b[i].p);
    EXPECT_NEAR(a[i].alpha + c, b[i].alpha, 1e-12);
    EXPECT_NEAR(a[i].beta + c, b[i].beta, 1e-12);
  }
}

TEST(InitialPoints, TiedDataStillSeparated)
{
  const Sample s(std::vector<double>(20, 3.0));
  for (const auto& t : initial_points(s, FitConfig{}))
    EXPECT_GE(std::abs(t.alpha - t.beta), 1e-6);
}

TEST(Fit, RecoversParametersOnLargeSample)
{
  const Sample s = draw(NoiseFamily::gauss, kTheta0, 4000, 5);
  const FitResult r = fit(s, FitConfig{}, default_contrast_config(s.size()));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.theta_hat.p, 0.5);
  EXPECT_NEAR(r.theta_hat.p, 0.25, 0.05);
  EXPECT_NEAR(r.theta_hat.alpha, -1.0, 0.2);
  EXPECT_NEAR(r.theta_hat.beta, 2.0, 0.1);
  EXPECT_GE(r.n_restarts_agreeing, 1u);
  for (const auto& st : r.starts)
    EXPECT_LE(r.contrast_at_opt, empirical_contrast(s, st.start, r.contrast_config) + 1e-15);
  ASSERT_TRUE(r.covariance_available);
  for (int i = 0; i < 3; ++i) {
    const double z = (std::array{ r.theta_hat.p, r.theta_hat.alpha, r.theta_hat.beta }[i] -
                      std::array{ 0.25, -1.0, 2.0 }[i]) / r.std_errors[i];
    EXPECT_LT(std::abs(z), 4.0) << i;
  }
}

TEST(Fit, TranslationEquivariant)
{
  const Sample s = draw(NoiseFamily::gauss, kTheta0, 150, 6);
  const auto ccfg = default_contrast_config(s.size());
  const FitResult a = fit(s, FitConfig{}, ccfg);
  const double c = 7.25;
  const FitResult b = fit(s.shifted(c), FitConfig{}, ccfg);
  EXPECT_NEAR(a.theta_hat.p, b.theta_hat.p, 1e-6);
  EXPECT_NEAR(a.theta_hat.alpha + c, b.theta_hat.alpha, 1e-6);
  EXPECT_NEAR(a.theta_hat.beta + c, b.theta_hat.beta, 1e-6);
}

TEST(Fit, Deterministic)
{
  const Sample s = draw(NoiseFamily::cauchy, { 0.2, 1.0, 5.0 }, 100, 8);
  const auto ccfg = default_contrast_config(s.size());
  const FitResult a = fit(s, FitConfig{}, ccfg);
  const FitResult b = fit(s, FitConfig{}, ccfg);
  EXPECT_EQ(a.theta_hat, b.theta_hat);
  EXPECT_EQ(a.contrast_at_opt, b.contrast_at_opt);
}

TEST(Fit, RejectsTinySamples)
{
  try {
    fit(Sample({ 1, 2, 3, 4, 5, 6, 7, 8, 9 }), FitConfig{}, default_contrast_config(9));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::sample_too_small);
  }
}

TEST(Fit, OneComponentSampleIsFlagged)
{
  // With p0 = 0 alpha is not identified: either the fit degenerates or its
  // standard error is huge.
  const Sample s = draw(NoiseFamily::gauss, { 0.0, 0.0, 1.0 }, 300, 9);
  try {
    const FitResult r = fit(s, FitConfig{}, default_contrast_config(s.size()));
    const bool weak = !r.covariance_available || r.std_errors[1] > 0.5 || r.theta_hat.p < 0.05;
    EXPECT_TRUE(weak) << r.theta_hat.p << " " << r.std_errors[1];
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_fit);
  }
}

TEST(Fit, ConsistencyTrend)
{
  auto median_error = [](std::size_t n) {
    std::vector<double> errs;
    for (std::size_t r = 0; r < 12; ++r) {
      const Sample s = draw(NoiseFamily::gauss, kTheta0, n, 31, r);
      try {
        const auto t = fit(s, FitConfig{}, default_contrast_config(n)).theta_hat;
        errs.push_back(std::hypot(t.p - 0.25, t.alpha + 1.0, t.beta - 2.0));
      } catch (const Error&) {
        errs.push_back(1e9);
      }
    }
    std::nth_element(errs.begin(), errs.begin() + 6, errs.end());
    return errs[6];
  };
  EXPECT_LT(median_error(1000), median_error(100));
}

TEST(Covariance, InformationMatchesHessianOfPlugInContrast)
{
  const Sample s = draw(NoiseFamily::gauss, kTheta0, 20000, 10);
  const auto ccfg = default_contrast_config(s.size());
  const FitResult r = fit(s, FitConfig{}, ccfg);
  const CovarianceEstimate cov = asymptotic_covariance(s, r.theta_hat, ccfg);
  const EmpiricalContrast contrast(s, ccfg);
  auto at = [&](const Eigen::Vector3d& v) { return contrast.value({ v[0], v[1], v[2] }); };
  const Eigen::Vector3d x0(r.theta_hat.p, r.theta_hat.alpha, r.theta_hat.beta);
  Eigen::Matrix3d hess;
  const double h = 1e-3;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d ei = Eigen::Vector3d::Unit(i) * h, ej = Eigen::Vector3d::Unit(j) * h;
      hess(i, j) = (at(x0 + ei + ej) - at(x0 + ei - ej) - at(x0 - ei + ej) + at(x0 - ei - ej)) / (4 * h * h);
    }
  }
  EXPECT_LT((hess - cov.information).norm() / cov.information.norm(), 0.05);
  EXPECT_LE((cov.information - cov.information.transpose()).norm(), 1e-12 * cov.information.norm());
}

TEST(Covariance, MatchesComplexScoreFormulas)
{
  const Sample s = draw(NoiseFamily::laplace, kTheta0, 300, 12);
  const auto ccfg = default_contrast_config(s.size());
  const EuclideanParam theta{ 0.27, -0.9, 2.05 };
  const CovarianceEstimate cov = asymptotic_covariance(s, theta, ccfg);

  // Z_k(u) = e^{iuX}/M(u) - e^{-iuX}/M(-u); its theta-derivative by central
  // differences; J-dot = mean of Z-dot; I = -1/2 sum w Re(J-dot J-dot^T);
  // U_k = sum w Z_k J-dot; V = (1/4n) sum U_k U_k^T.
  auto zk = [](double x, const EuclideanParam& t, double u) {
    const cplx m = t.p * std::exp(cplx(0, u * t.alpha)) + (1 - t.p) * std::exp(cplx(0, u * t.beta));
    return std::exp(cplx(0, u * x)) / m - std::exp(cplx(0, -u * x)) / std::conj(m);
  };
  const auto nodes = ccfg.weight_rule.nodes();
  const auto weights = ccfg.weight_rule.weights();
  const std::size_t n = s.size();
  Eigen::Matrix3d info = Eigen::Matrix3d::Zero();
  std::vector<Eigen::Vector3cd> jdot(nodes.size());
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
    for (double x : s.values()) {
      for (int i = 0; i < 3; ++i) {
        const double h = 1e-6;
        EuclideanParam up = theta, dn = theta;
        (i == 0 ? up.p : i == 1 ? up.alpha : up.beta) += h;
        (i == 0 ? dn.p : i == 1 ? dn.alpha : dn.beta) -= h;
        acc[i] += (zk(x, up, nodes[q]) - zk(x, dn, nodes[q])) / (2 * h);
      }
    }
    jdot[q] = acc / static_cast<double>(n);
    info += -0.5 * weights[q] * (jdot[q] * jdot[q].transpose()).real();
  }
  Eigen::Matrix3d v = Eigen::Matrix3d::Zero();
  for (double x : s.values()) {
    Eigen::Vector3cd u = Eigen::Vector3cd::Zero();
    for (std::size_t q = 0; q < nodes.size(); ++q)
      u += weights[q] * zk(x, theta, nodes[q]) * jdot[q];
    EXPECT_LE(u.imag().norm(), 1e-9 * std::max(1.0, u.real().norm()));
    v += u.real() * u.real().transpose();
  }
  v /= 4.0 * static_cast<double>(n);
  EXPECT_LT((info - cov.information).norm() / info.norm(), 1e-6);
  EXPECT_LT((v - cov.score_variance).norm() / v.norm(), 1e-6);

  const Eigen::Matrix3d inv = info.inverse();
  const Eigen::Matrix3d sandwich = inv * v * inv;
  EXPECT_LT((sandwich - cov.sandwich).norm() / sandwich.norm(), 1e-5);
  EXPECT_LT((inv * v * info - cov.stated_form).norm() / cov.stated_form.norm(), 1e-5);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov.sandwich);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8 * eig.eigenvalues().maxCoeff());
}

TEST(Covariance, SingularInformationIsReported)
{
  // All observations identical: the empirical characteristic function has
  // modulus one and theta = (p, x, x + d) makes g_q vanish along a direction.
  const Sample s(std::vector<double>(30, 0.0));
  const auto ccfg = default_contrast_config(s.size());
  try {
    asymptotic_covariance(s, { 0.3, 0.0, 0.0 }, ccfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_information);
  }
}

TEST(LeaveOneOut, WarmStartedRefitsStayClose)
{
  const Sample s = draw(NoiseFamily::gauss, kTheta0, 60, 14);
  const auto ccfg = default_contrast_config(s.size());
  const FitResult full = fit(s, FitConfig{}, ccfg);
  const auto loo = leave_one_out(s, full.theta_hat, FitConfig{}, ccfg);
  ASSERT_EQ(loo.size(), s.size());
  for (const auto& t : loo) {
    EXPECT_LT(std::abs(t.p - full.theta_hat.p), 0.15);
    EXPECT_LT(std::abs(t.beta - full.theta_hat.beta), 0.5);
  }
}
