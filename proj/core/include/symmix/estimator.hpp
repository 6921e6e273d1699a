#pragma once

#include "symmix/contrast.hpp"
#include "symmix/model.hpp"
#include "symmix/sample.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace symmix {

struct FitConfig
{
  std::size_t starts = 8;
  std::size_t max_iter = 500;
  double tol = 1e-10;
  ParamBox box{};
};

//! Plug-in estimates of the quantities in the asymptotic law of theta-hat.
//! information is I = 2 sum_q w_q g_q g_q^T with g_q = Im(J-dot)/2 (i.e.
//! -1/2 int J-dot J-dot^T dW for the purely imaginary J-dot), score_variance
//! is V = (1/4n) sum_k U_k U_k^T.
struct CovarianceEstimate
{
  Eigen::Matrix3d information;
  Eigen::Matrix3d score_variance;
  Eigen::Matrix3d sandwich;    //!< I^{-1} V I^{-1}
  Eigen::Matrix3d stated_form; //!< I^{-1} V I, reported for comparison only
  double condition_number = 0.0;
};

struct StartOutcome
{
  EuclideanParam start;
  EuclideanParam theta;
  double contrast = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct FitResult
{
  EuclideanParam theta_hat{};
  double contrast_at_opt = 0.0;
  //! Asymptotic covariance Sigma of sqrt(n) (theta-hat - theta_0);
  //! std_errors = sqrt(diag(Sigma) / n). NaN when the information is singular.
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Constant(std::numeric_limits<double>::quiet_NaN());
  Eigen::Matrix3d covariance_stated_form =
    Eigen::Matrix3d::Constant(std::numeric_limits<double>::quiet_NaN());
  Eigen::Vector3d std_errors = Eigen::Vector3d::Constant(std::numeric_limits<double>::quiet_NaN());
  bool covariance_available = false;
  std::string covariance_note{};
  bool converged = false;
  std::size_t n_restarts_agreeing = 0;
  std::size_t n = 0;
  FitConfig fit_config;
  ContrastConfig contrast_config;
  std::vector<StartOutcome> starts{};
};

//! Defaults used by the CLI and the simulation harness: Laplace weight with
//! 256 nodes on [-30, 30], plug-in contrast, and h from default_trunc_h
//! unless trunc_h is given.
ContrastConfig default_contrast_config(std::size_t n,
                                       std::optional<double> trunc_h = std::nullopt,
                                       std::size_t node_count = 256,
                                       double cutoff = 30.0,
                                       ContrastKind kind = ContrastKind::plug_in);

//! Deterministic starting points. Quantile pairs (q25,q75), (q20,q80),
//! (q10,q90) are crossed with p in {0.25, 0.1, 0.4} in a Latin order
//! ((q25,q75,0.25) first); each combination is emitted with alpha below beta
//! and then mirrored. Points are clipped to the box, deduplicated and
//! truncated to cfg.starts.
std::vector<EuclideanParam> initial_points(const Sample& sample, const FitConfig& cfg);

//! Minimizes the configured contrast over the box (multi-start Nelder-Mead on
//! (logit p, alpha, beta)). Throws SampleTooSmall for n < 10 and DegenerateFit
//! when the minimizer merges the two components.
FitResult fit(const Sample& sample, const FitConfig& cfg, const ContrastConfig& ccfg);

//! Single local search from a given point (used for warm-started refits).
FitResult fit_from(const Sample& sample,
                   const std::vector<EuclideanParam>& starts,
                   const FitConfig& cfg,
                   const ContrastConfig& ccfg,
                   bool with_covariance = true);

//! Throws SingularInformation when cond(I) > 1e12.
CovarianceEstimate asymptotic_covariance(const Sample& sample,
                                         const EuclideanParam& theta_hat,
                                         const ContrastConfig& ccfg);

//! theta-hat_{n,-k} for every k, each warm-started at the full-sample estimate.
std::vector<EuclideanParam> leave_one_out(const Sample& sample,
                                          const EuclideanParam& theta_hat,
                                          const FitConfig& cfg,
                                          const ContrastConfig& ccfg);

} // namespace symmix
