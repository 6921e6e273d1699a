#pragma once

#include "symmix/contrast.hpp"
#include "symmix/estimator.hpp"
#include "symmix/model.hpp"
#include "symmix/rng.hpp"
#include "symmix/sample.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symmix {

enum class NoiseFamily
{
  gauss,
  cauchy,
  laplace,
  asym_gauss_mix //!< lambda N(0.5, 2) + (1 - lambda) N(-0.5 lambda / (1 - lambda), 2)
};

std::string_view to_string(NoiseFamily family);
NoiseFamily noise_family_from_string(std::string_view name);

struct ScenarioSpec
{
  NoiseFamily family = NoiseFamily::gauss;
  double lambda = 0.5; //!< asym_gauss_mix only
  EuclideanParam theta0{ 0.25, -1.0, 2.0 };
  std::size_t n = 100;
  std::size_t replications = 100;
  std::uint64_t seed = 1;
};

//! Throws BadScenario when n < 10, replications < 1, p_0 outside [0, 1],
//! non-finite locations, or lambda outside (0, 1) for asym_gauss_mix.
void validate(const ScenarioSpec& spec);

//! One draw of the noise epsilon.
double draw_noise(NoiseFamily family, double lambda, PhiloxStream& rng);

//! n draws from p_0 f(x - alpha_0) + (1 - p_0) f(x - beta_0); replication r
//! reads its own Philox stream, so the result depends only on (seed, r).
Sample sample_mixture(const ScenarioSpec& spec, std::size_t replication_index);

struct ReplicationDigest
{
  std::size_t index = 0;
  bool converged = false;
  EuclideanParam theta_hat;
  double contrast = 0.0;
  Eigen::Vector3d std_errors = Eigen::Vector3d::Constant(std::numeric_limits<double>::quiet_NaN());
  std::size_t n_restarts_agreeing = 0;
  std::string error; //!< set when the fit threw
};

struct MCSummary
{
  ScenarioSpec spec;
  //! Over converged replications; absent when there are none (means) or
  //! fewer than two (sds).
  std::optional<Eigen::Vector3d> empirical_means;
  std::optional<Eigen::Vector3d> empirical_sds;
  std::vector<ReplicationDigest> per_replication;
  std::size_t failures = 0;
};

//! Fits every replication and merges results in replication order. jobs = 0
//! uses the hardware concurrency; the output does not depend on jobs.
MCSummary run_scenario(const ScenarioSpec& spec,
                       const FitConfig& fit_cfg,
                       const ContrastConfig& contrast_cfg,
                       std::size_t jobs = 1);

} // namespace symmix
