#include "symmix/simulate.hpp"

#include "symmix/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace symmix {

namespace {

double standard_normal(PhiloxStream& rng)
{
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ReplicationDigest run_one(const ScenarioSpec& spec,
                          std::size_t r,
                          const FitConfig& fit_cfg,
                          const ContrastConfig& contrast_cfg)
{
  ReplicationDigest digest;
  digest.index = r;
  try {
    const FitResult result = fit(sample_mixture(spec, r), fit_cfg, contrast_cfg);
    digest.converged = result.converged;
    digest.theta_hat = result.theta_hat;
    digest.contrast = result.contrast_at_opt;
    digest.std_errors = result.std_errors;
    digest.n_restarts_agreeing = result.n_restarts_agreeing;
  } catch (const Error& e) {
    digest.converged = false;
    digest.error = e.what();
  }
  return digest;
}

} // namespace

std::string_view to_string(NoiseFamily family)
{
  switch (family) {
    case NoiseFamily::gauss:
      return "gauss";
    case NoiseFamily::cauchy:
      return "cauchy";
    case NoiseFamily::laplace:
      return "laplace";
    case NoiseFamily::asym_gauss_mix:
      return "asym_gauss_mix";
  }
  return "unknown";
}

NoiseFamily noise_family_from_string(std::string_view name)
{
  for (auto family : { NoiseFamily::gauss, NoiseFamily::cauchy, NoiseFamily::laplace,
                       NoiseFamily::asym_gauss_mix }) {
    if (name == to_string(family))
      return family;
  }
  throw Error(ErrorCode::bad_scenario, "unknown noise family '" + std::string(name) + "'");
}

void validate(const ScenarioSpec& spec)
{
  if (spec.n < 10)
    throw Error(ErrorCode::bad_scenario, "n must be >= 10");
  if (spec.replications < 1)
    throw Error(ErrorCode::bad_scenario, "replications must be >= 1");
  if (!(spec.theta0.p >= 0.0 && spec.theta0.p <= 1.0))
    throw Error(ErrorCode::bad_scenario, "p0 must lie in [0, 1]");
  if (!std::isfinite(spec.theta0.alpha) || !std::isfinite(spec.theta0.beta))
    throw Error(ErrorCode::bad_scenario, "locations must be finite");
  if (spec.family == NoiseFamily::asym_gauss_mix && !(spec.lambda > 0.0 && spec.lambda < 1.0))
    throw Error(ErrorCode::bad_scenario, "lambda must lie in (0, 1)");
}

double draw_noise(NoiseFamily family, double lambda, PhiloxStream& rng)
{
  switch (family) {
    case NoiseFamily::gauss:
      return standard_normal(rng);
    case NoiseFamily::cauchy:
      return std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    case NoiseFamily::laplace: {
      const double u = rng.uniform();
      return u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
    }
    case NoiseFamily::asym_gauss_mix: {
      const double mean = rng.uniform() < lambda ? 0.5 : -0.5 * lambda / (1.0 - lambda);
      return mean + std::numbers::sqrt2 * standard_normal(rng);
    }
  }
  return 0.0;
}

Sample sample_mixture(const ScenarioSpec& spec, std::size_t replication_index)
{
  validate(spec);
  PhiloxStream rng(spec.seed, replication_index);
  std::vector<double> xs(spec.n);
  for (auto& x : xs) {
    const double location = rng.uniform() < spec.theta0.p ? spec.theta0.alpha : spec.theta0.beta;
    x = location + draw_noise(spec.family, spec.lambda, rng);
  }
  return Sample(std::move(xs));
}

MCSummary run_scenario(const ScenarioSpec& spec,
                       const FitConfig& fit_cfg,
                       const ContrastConfig& contrast_cfg,
                       std::size_t jobs)
{
  validate(spec);
  MCSummary summary;
  summary.spec = spec;
  summary.per_replication.resize(spec.replications);

  if (jobs == 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, spec.replications);

  std::atomic<std::size_t> next{ 0 };
  auto worker = [&] {
    for (std::size_t r = next++; r < spec.replications; r = next++)
      summary.per_replication[r] = run_one(spec, r, fit_cfg, contrast_cfg);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }

  std::vector<Eigen::Vector3d> fits;
  for (const auto& d : summary.per_replication) {
    if (d.converged)
      fits.emplace_back(d.theta_hat.p, d.theta_hat.alpha, d.theta_hat.beta);
    else
      ++summary.failures;
  }
  if (!fits.empty()) {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& v : fits)
      mean += v;
    mean /= static_cast<double>(fits.size());
    summary.empirical_means = mean;
    if (fits.size() > 1) {
      Eigen::Vector3d ss = Eigen::Vector3d::Zero();
      for (const auto& v : fits)
        ss += (v - mean).cwiseAbs2();
      summary.empirical_sds = (ss / static_cast<double>(fits.size() - 1)).cwiseSqrt();
    }
  }
  return summary;
}

} // namespace symmix
