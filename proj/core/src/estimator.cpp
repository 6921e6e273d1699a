#include "symmix/estimator.hpp"

#include "symmix/error.hpp"
#include "symmix/nelder_mead.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

namespace symmix {

namespace {

constexpr std::size_t kMinFitSize = 10;
constexpr double kMaxCondition = 1e12;

struct BoxTransform
{
  ParamBox box;

  double to_p(double t) const
  {
    const double s = 1.0 / (1.0 + std::exp(-t));
    return box.p_low + (box.p_high - box.p_low) * s;
  }

  double to_t(double p) const
  {
    // Starts are strictly inside the box; clamp keeps the logit finite.
    const double width = box.p_high - box.p_low;
    const double frac = std::clamp((p - box.p_low) / width, 1e-9, 1.0 - 1e-9);
    return std::log(frac / (1.0 - frac));
  }

  EuclideanParam theta(const Eigen::VectorXd& z) const { return { to_p(z[0]), z[1], z[2] }; }
};

bool lexicographically_less(const EuclideanParam& a, const EuclideanParam& b)
{
  return std::tie(a.p, a.alpha, a.beta) < std::tie(b.p, b.alpha, b.beta);
}

double distance(const EuclideanParam& a, const EuclideanParam& b)
{
  return std::max({ std::abs(a.p - b.p), std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta) });
}

} // namespace

ContrastConfig default_contrast_config(std::size_t n,
                                       std::optional<double> trunc_h,
                                       std::size_t node_count,
                                       double cutoff,
                                       ContrastKind kind)
{
  const double h = trunc_h ? *trunc_h : default_trunc_h(n, 1.0, cutoff);
  return make_contrast_config(node_count, cutoff, h, kind);
}

std::vector<EuclideanParam> initial_points(const Sample& sample, const FitConfig& cfg)
{
  const std::array<std::pair<double, double>, 3> pairs{ {
    { sample.quantile(0.25), sample.quantile(0.75) },
    { sample.quantile(0.20), sample.quantile(0.80) },
    { sample.quantile(0.10), sample.quantile(0.90) },
  } };
  constexpr std::array<double, 3> ps{ 0.25, 0.1, 0.4 };
  constexpr std::array<std::pair<int, int>, 9> combos{ {
    { 0, 0 }, { 1, 1 }, { 2, 2 }, { 0, 1 }, { 1, 2 }, { 2, 0 }, { 0, 2 }, { 1, 0 }, { 2, 1 },
  } };
  const double min_gap = std::max(10.0 * cfg.box.sep_min, 1e-3);

  std::vector<EuclideanParam> out;
  auto push = [&](EuclideanParam theta) {
    if (out.size() >= cfg.starts)
      return;
    if (std::find(out.begin(), out.end(), theta) == out.end())
      out.push_back(theta);
  };
  for (const auto& [pair_index, p_index] : combos) {
    auto [lo, hi] = pairs[static_cast<std::size_t>(pair_index)];
    if (hi - lo < min_gap) {
      const double mid = 0.5 * (lo + hi);
      lo = mid - 0.5 * min_gap;
      hi = mid + 0.5 * min_gap;
    }
    const double p = std::clamp(ps[static_cast<std::size_t>(p_index)], cfg.box.p_low, cfg.box.p_high);
    push({ p, lo, hi });
    push({ p, hi, lo });
  }
  return out;
}

FitResult fit_from(const Sample& sample,
                   const std::vector<EuclideanParam>& starts,
                   const FitConfig& cfg,
                   const ContrastConfig& ccfg,
                   bool with_covariance)
{
  if (sample.size() < 2)
    throw Error(ErrorCode::sample_too_small, "fit needs observations");
  if (starts.empty())
    throw Error(ErrorCode::bad_input, "fit needs at least one start");
  if (!(cfg.tol > 0.0))
    throw Error(ErrorCode::bad_input, "tol must be positive");

  // Work on median-centred data; the contrast is exactly translation
  // equivariant, and centring makes the optimizer path shift-invariant too.
  const double centre = sample.median();
  const Sample centred = sample.shifted(-centre);
  const EmpiricalContrast contrast(centred, ccfg);
  const BoxTransform transform{ cfg.box };

  NelderMeadOptions options;
  options.max_iter = cfg.max_iter;
  options.f_tol = cfg.tol;
  options.x_tol = 1e-9;

  FitResult result{ .n = sample.size(), .fit_config = cfg, .contrast_config = ccfg };

  const auto objective = [&](const Eigen::VectorXd& z) { return contrast.value(transform.theta(z)); };

  std::size_t best = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const EuclideanParam start = shifted(starts[s], -centre);
    Eigen::VectorXd z0(3);
    z0 << transform.to_t(start.p), start.alpha, start.beta;
    const double spread = std::max(std::abs(start.beta - start.alpha), 1e-3);
    Eigen::VectorXd step(3);
    // A small initial simplex keeps each search local to its start; wide
    // simplices tend to fall into the merged-component valley alpha = beta.
    step << 0.05, 0.05 * spread, 0.05 * spread;

    const NelderMeadResult nm = nelder_mead(objective, z0, step, options);
    StartOutcome outcome;
    outcome.start = starts[s];
    outcome.theta = shifted(transform.theta(nm.x), centre);
    outcome.contrast = nm.f;
    outcome.iterations = nm.iterations;
    outcome.converged = nm.converged;
    result.starts.push_back(outcome);

    if (s == 0)
      continue;
    const StartOutcome& incumbent = result.starts[best];
    if (outcome.contrast < incumbent.contrast - cfg.tol ||
        (std::abs(outcome.contrast - incumbent.contrast) <= cfg.tol &&
         lexicographically_less(outcome.theta, incumbent.theta))) {
      best = s;
    }
  }

  const StartOutcome& winner = result.starts[best];
  if (!(std::abs(winner.theta.alpha - winner.theta.beta) >= cfg.box.sep_min)) {
    throw Error(ErrorCode::degenerate_fit,
                "minimizer merges the two components (one-component sample?)");
  }
  result.theta_hat = canonicalize(winner.theta, cfg.box);
  result.contrast_at_opt = winner.contrast;
  result.converged = std::any_of(result.starts.begin(), result.starts.end(),
                                 [](const StartOutcome& o) { return o.converged; });
  const double agree_tol = 1e-4 * (1.0 + std::max({ std::abs(result.theta_hat.alpha),
                                                    std::abs(result.theta_hat.beta) }));
  result.n_restarts_agreeing = static_cast<std::size_t>(
    std::count_if(result.starts.begin(), result.starts.end(), [&](const StartOutcome& o) {
      return distance(o.theta, result.theta_hat) <= agree_tol;
    }));

  if (with_covariance) {
    try {
      const CovarianceEstimate cov = asymptotic_covariance(sample, result.theta_hat, ccfg);
      result.covariance = cov.sandwich;
      result.covariance_stated_form = cov.stated_form;
      result.std_errors = (cov.sandwich.diagonal() / static_cast<double>(sample.size())).cwiseSqrt();
      result.covariance_available = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::singular_information)
        throw;
      result.covariance_note = e.what();
    }
  }
  return result;
}

FitResult fit(const Sample& sample, const FitConfig& cfg, const ContrastConfig& ccfg)
{
  if (sample.size() < kMinFitSize) {
    throw Error(ErrorCode::sample_too_small,
                "fit needs n >= 10, got " + std::to_string(sample.size()));
  }
  if (cfg.starts < 1)
    throw Error(ErrorCode::bad_input, "starts must be >= 1");
  return fit_from(sample, initial_points(sample, cfg), cfg, ccfg, true);
}

CovarianceEstimate asymptotic_covariance(const Sample& sample,
                                         const EuclideanParam& theta_hat,
                                         const ContrastConfig& ccfg)
{
  using cplx = std::complex<double>;
  if (sample.size() < 2)
    throw Error(ErrorCode::sample_too_small, "covariance needs n >= 2");
  const EmpiricalContrast contrast(sample, ccfg);
  const auto nodes = contrast.nodes();
  const auto weights = contrast.weights();
  const auto sums = contrast.first_sums();
  const std::size_t n = sample.size();
  const double nn = static_cast<double>(n);

  // g_q = Im(J-dot(u_q)) / 2 with J-dot estimated by the sample mean of Z-dot.
  std::vector<Eigen::Vector3d> g(nodes.size());
  std::vector<cplx> inv_m(nodes.size());
  Eigen::Matrix3d info = Eigen::Matrix3d::Zero();
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    const double u = nodes[q];
    const cplx w = 1.0 / mixing_operator(theta_hat, u);
    const auto dm = mixing_operator_gradient(theta_hat, u);
    const cplx mean_e = sums[q] / nn;
    for (int i = 0; i < 3; ++i)
      g[q][i] = (-mean_e * dm[static_cast<std::size_t>(i)] * w * w).imag();
    inv_m[q] = w;
    info += 2.0 * weights[q] * g[q] * g[q].transpose();
  }

  Eigen::Matrix3d score_var = Eigen::Matrix3d::Zero();
  for (double x : sample.values()) {
    Eigen::Vector3d score = Eigen::Vector3d::Zero();
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double im_psi = (std::polar(1.0, nodes[q] * x) * inv_m[q]).imag();
      score += weights[q] * im_psi * g[q];
    }
    score *= -4.0;
    score_var += score * score.transpose();
  }
  score_var /= 4.0 * nn;

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(info);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  const double cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxCondition)) {
    throw Error(ErrorCode::singular_information,
                "information matrix condition number " + std::to_string(cond) + " exceeds 1e12");
  }

  CovarianceEstimate out;
  out.information = info;
  out.score_variance = score_var;
  out.condition_number = cond;
  const Eigen::Matrix3d inv = eig.eigenvectors() *
                              eig.eigenvalues().cwiseInverse().asDiagonal() *
                              eig.eigenvectors().transpose();
  const Eigen::Matrix3d sandwich = inv * score_var * inv;
  out.sandwich = 0.5 * (sandwich + sandwich.transpose());
  out.stated_form = inv * score_var * info;
  return out;
}

std::vector<EuclideanParam> leave_one_out(const Sample& sample,
                                          const EuclideanParam& theta_hat,
                                          const FitConfig& cfg,
                                          const ContrastConfig& ccfg)
{
  std::vector<EuclideanParam> out;
  out.reserve(sample.size());
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const Sample reduced = sample.without(k);
    out.push_back(fit_from(reduced, { theta_hat }, cfg, ccfg, false).theta_hat);
  }
  return out;
}

} // namespace symmix
