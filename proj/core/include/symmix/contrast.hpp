#pragma once

#include "symmix/model.hpp"
#include "symmix/sample.hpp"
#include "symmix/weight_rule.hpp"

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace symmix {

//! Which estimator of S(theta) to evaluate.
//!
//! u_statistic is the order-2 U-statistic over ordered pairs j != k.
//! plug_in keeps the diagonal: int Im(g_n*(u) / M(theta, u))^2 dW(u), with
//! g_n* the empirical characteristic function. It is non-negative, which the
//! U-statistic is not: near p = 1/2 the latter can be driven arbitrarily
//! negative by high-frequency noise.
enum class ContrastKind
{
  u_statistic,
  plug_in
};

std::string_view to_string(ContrastKind kind);
ContrastKind contrast_kind_from_string(std::string_view name);

struct ContrastConfig
{
  WeightRule weight_rule;
  double trunc_h; //!< integration restricted to |u| <= 1 / trunc_h
  ContrastKind kind = ContrastKind::u_statistic;
};

//! Builds a Laplace weight rule on [-U, U] with U = min(cutoff, 1 / trunc_h),
//! so the frequency truncation never cuts through a quadrature panel.
ContrastConfig make_contrast_config(std::size_t node_count,
                                    double cutoff,
                                    double trunc_h,
                                    ContrastKind kind);

//! h = n^{-1/2} / log(n), raised to 1 / cutoff when a cutoff is given.
//! Meets h * n^{1/(4 beta)} -> 0 for every beta > 1/4.
double default_trunc_h(std::size_t n,
                       double beta_assumed = 1.0,
                       double cutoff = std::numeric_limits<double>::infinity());

//! Imaginary part of Z_k(theta, u) = e^{iuX}/M(theta,u) - e^{-iuX}/M(theta,-u),
//! which is purely imaginary: z = 2 Im(e^{iuX} / M(theta, u)).
double z_score(double x, const EuclideanParam& theta, double u);

//! Imaginary part of dZ_k/dtheta.
Eigen::Vector3d z_score_gradient(double x, const EuclideanParam& theta, double u);

//! Imaginary parts of J(theta, u) and its gradient for a given g*(u).
double j_value(std::complex<double> gstar_u, const EuclideanParam& theta, double u);
Eigen::Vector3d j_gradient(std::complex<double> gstar_u,
                           const EuclideanParam& theta,
                           double u);

//! Empirical contrast bound to one sample. Construction caches, per active
//! quadrature node, the sums sum_k e^{iuX_k} and sum_k e^{2iuX_k}; every
//! subsequent evaluation is O(Q) and exact algebra of the pairwise sum:
//!   sum_{j!=k} Im(psi_j) Im(psi_k) = (sum Im psi)^2 - sum (Im psi)^2,
//!   sum_k (Im psi_k)^2 = (n |1/M|^2 - Re(M^{-2} sum_k e^{2iuX_k})) / 2.
class EmpiricalContrast
{
public:
  EmpiricalContrast(const Sample& sample, ContrastConfig config);

  double value(const EuclideanParam& theta) const;
  Eigen::Vector3d gradient(const EuclideanParam& theta) const;

  std::size_t sample_size() const { return n_; }
  const ContrastConfig& config() const { return config_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  //! sum_k e^{iu_q X_k} at each active node.
  std::span<const std::complex<double>> first_sums() const { return sum1_; }

private:
  ContrastConfig config_;
  std::size_t n_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<std::complex<double>> sum1_;
  std::vector<std::complex<double>> sum2_;
};

double empirical_contrast(const Sample& sample,
                          const EuclideanParam& theta,
                          const ContrastConfig& config);

Eigen::Vector3d contrast_gradient(const Sample& sample,
                                  const EuclideanParam& theta,
                                  const ContrastConfig& config);

using CharacteristicFunction = std::function<std::complex<double>(double)>;

//! Quadrature version of S(theta) = int Im(g*(u)/M(theta,u))^2 dW(u) over the
//! same truncated rule the empirical contrast uses. Requires g*(0) = 1 and
//! g*(-u) = conj(g*(u)).
double oracle_contrast(const CharacteristicFunction& gstar,
                       const EuclideanParam& theta,
                       const ContrastConfig& config);

} // namespace symmix
