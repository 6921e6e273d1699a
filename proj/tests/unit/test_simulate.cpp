#include "symmix/error.hpp"
#include "symmix/estimator.hpp"
#include "symmix/rng.hpp"
#include "symmix/simulate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

using namespace symmix;

namespace {

//! Two-sided Kolmogorov-Smirnov statistic sqrt(n) D_n.
double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf)
{
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({ d, (i + 1) / n - f, f - i / n });
  }
  return std::sqrt(n) * d;
}

std::vector<double> noise_draws(NoiseFamily family, std::size_t n, std::uint64_t seed, double lambda = 0.5)
{
  PhiloxStream rng(seed, 0);
  std::vector<double> xs(n);
  for (auto& x : xs)
    x = draw_noise(family, lambda, rng);
  return xs;
}

constexpr double kKsCritical1pct = 1.628;

} // namespace

TEST(Philox, KnownAnswers)
{
  using W = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({ 0, 0, 0, 0 }, { 0, 0 }), (W{ 0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8 }));
  EXPECT_EQ(philox4x32({ 0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff }, { 0xffffffff, 0xffffffff }),
            (W{ 0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd }));
  EXPECT_EQ(philox4x32({ 0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344 }, { 0xa4093822, 0x299f31d0 }),
            (W{ 0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1 }));
}

TEST(Philox, StreamsAreReproducibleAndDistinct)
{
  PhiloxStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  for (int i = 0; i < 10; ++i) {
    const auto va = a.next_u64();
    EXPECT_EQ(va, b.next_u64());
    EXPECT_NE(va, c.next_u64());
    EXPECT_NE(va, d.next_u64());
  }
  PhiloxStream u(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
}

TEST(Noise, GaussMatchesNormalCdf)
{
  const auto xs = noise_draws(NoiseFamily::gauss, 100000, 11);
  EXPECT_LT(ks_statistic(xs, [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }),
            kKsCritical1pct);
}

TEST(Noise, CauchyMatchesCdf)
{
  const auto xs = noise_draws(NoiseFamily::cauchy, 100000, 12);
  EXPECT_LT(ks_statistic(xs, [](double x) { return 0.5 + std::atan(x) / std::numbers::pi; }),
            kKsCritical1pct);
}

TEST(Noise, LaplaceMatchesCdfAndUnitAbsoluteMean)
{
  const auto xs = noise_draws(NoiseFamily::laplace, 100000, 13);
  EXPECT_LT(ks_statistic(xs,
                         [](double x) {
                           return x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
                         }),
            kKsCritical1pct);

  const auto big = noise_draws(NoiseFamily::laplace, 1000000, 14);
  double sum = 0.0;
  for (double x : big)
    sum += std::abs(x);
  const double mean_abs = sum / static_cast<double>(big.size());
  // |eps| ~ Exp(1): sd 1.
  EXPECT_NEAR(mean_abs, 1.0, 3.0 / std::sqrt(static_cast<double>(big.size())));
}

TEST(Noise, AsymmetricMixtureMoments)
{
  for (double lambda : { 0.3, 0.5 }) {
    const auto xs = noise_draws(NoiseFamily::asym_gauss_mix, 400000, 15, lambda);
    double s1 = 0.0, s2 = 0.0;
    for (double x : xs) {
      s1 += x;
      s2 += x * x;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    const double expected_var = 2.0 + lambda / 4.0 + std::pow(0.5 * lambda, 2) / (1.0 - lambda);
    EXPECT_NEAR(mean, 0.0, 4.0 * std::sqrt(expected_var / n));
    EXPECT_NEAR(var, expected_var, 0.02 * expected_var);

    const double mu1 = 0.5, mu2 = -0.5 * lambda / (1.0 - lambda), sd = std::numbers::sqrt2;
    auto cdf = [&](double x) {
      return lambda * 0.5 * std::erfc(-(x - mu1) / (sd * std::numbers::sqrt2))
           + (1 - lambda) * 0.5 * std::erfc(-(x - mu2) / (sd * std::numbers::sqrt2));
    };
    EXPECT_LT(ks_statistic(std::vector<double>(xs.begin(), xs.begin() + 100000), cdf), kKsCritical1pct);
  }
}

TEST(Sampler, PointMassAtOneComponent)
{
  ScenarioSpec spec;
  spec.theta0 = { 0.0, -1.0, 2.0 };
  spec.n = 2000;
  spec.seed = 5;
  const Sample s = sample_mixture(spec, 0);
  // Same stream, same noise: with p0 = 0 every draw is beta0 + eps.
  PhiloxStream rng(spec.seed, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    rng.uniform();
    const double eps = draw_noise(spec.family, spec.lambda, rng);
    ASSERT_DOUBLE_EQ(s[i], 2.0 + eps);
  }
}

TEST(Sampler, ReplicationsDependOnlyOnSeedAndIndex)
{
  ScenarioSpec spec;
  spec.seed = 77;
  const Sample a = sample_mixture(spec, 3);
  const Sample b = sample_mixture(spec, 3);
  const Sample c = sample_mixture(spec, 4);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}

TEST(Scenario, Validation)
{
  auto expect_bad = [](ScenarioSpec spec) {
    try {
      validate(spec);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::bad_scenario);
    }
  };
  ScenarioSpec s;
  s.n = 5;
  expect_bad(s);
  s = {};
  s.replications = 0;
  expect_bad(s);
  s = {};
  s.theta0.p = 1.5;
  expect_bad(s);
  s = {};
  s.family = NoiseFamily::asym_gauss_mix;
  s.lambda = 1.0;
  expect_bad(s);
  EXPECT_THROW(noise_family_from_string("student"), Error);
  EXPECT_EQ(noise_family_from_string("laplace"), NoiseFamily::laplace);
}

TEST(Scenario, JobsDoNotChangeResults)
{
  ScenarioSpec spec;
  spec.n = 60;
  spec.replications = 6;
  spec.seed = 3;
  const FitConfig cfg;
  const auto ccfg = default_contrast_config(spec.n);
  const MCSummary one = run_scenario(spec, cfg, ccfg, 1);
  const MCSummary three = run_scenario(spec, cfg, ccfg, 3);
  ASSERT_EQ(one.per_replication.size(), 6u);
  for (std::size_t r = 0; r < 6; ++r) {
    const auto& a = one.per_replication[r];
    const auto& b = three.per_replication[r];
    EXPECT_EQ(a.index, r);
    EXPECT_EQ(b.index, r);
    EXPECT_EQ(a.theta_hat.p, b.theta_hat.p);
    EXPECT_EQ(a.theta_hat.alpha, b.theta_hat.alpha);
    EXPECT_EQ(a.theta_hat.beta, b.theta_hat.beta);
    EXPECT_EQ(a.error, b.error);
  }
  EXPECT_EQ(one.failures, three.failures);
  ASSERT_EQ(one.empirical_means.has_value(), three.empirical_means.has_value());
  if (one.empirical_means)
    EXPECT_EQ(*one.empirical_means, *three.empirical_means);
}

TEST(Scenario, SingleReplicationHasNoSpread)
{
  ScenarioSpec spec;
  spec.n = 80;
  spec.replications = 1;
  spec.seed = 9;
  const MCSummary s = run_scenario(spec, {}, default_contrast_config(spec.n));
  EXPECT_FALSE(s.empirical_sds.has_value());
  EXPECT_EQ(s.per_replication.size(), 1u);
}
