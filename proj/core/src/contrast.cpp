#include "symmix/contrast.hpp"

#include "symmix/error.hpp"

#include <algorithm>
#include <cmath>

namespace symmix {

namespace {

using cplx = std::complex<double>;

bool node_active(double u, double trunc_h)
{
  return std::abs(u) * trunc_h <= 1.0 + 1e-12;
}

void require_pairs(std::size_t n)
{
  if (n < 2) {
    throw Error(ErrorCode::sample_too_small,
                "contrast needs at least 2 observations, got " + std::to_string(n));
  }
}

// d(1/M)/dtheta = -M' / M^2
std::array<cplx, 3> inverse_gradient(const EuclideanParam& theta, double u, cplx w)
{
  auto dm = mixing_operator_gradient(theta, u);
  const cplx w2 = w * w;
  for (auto& d : dm)
    d = -d * w2;
  return dm;
}

} // namespace

std::string_view to_string(ContrastKind kind)
{
  return kind == ContrastKind::u_statistic ? "ustat" : "plugin";
}

ContrastKind contrast_kind_from_string(std::string_view name)
{
  if (name == "ustat" || name == "u_statistic")
    return ContrastKind::u_statistic;
  if (name == "plugin" || name == "plug_in")
    return ContrastKind::plug_in;
  throw Error(ErrorCode::bad_input, "unknown contrast kind '" + std::string(name) + "'");
}

ContrastConfig make_contrast_config(std::size_t node_count,
                                    double cutoff,
                                    double trunc_h,
                                    ContrastKind kind)
{
  if (!(trunc_h > 0.0) || !std::isfinite(trunc_h))
    throw Error(ErrorCode::bad_input, "trunc_h must be positive and finite");
  const double radius = std::min(cutoff, 1.0 / trunc_h);
  return { WeightRule::laplace(node_count, radius), trunc_h, kind };
}

double default_trunc_h(std::size_t n, double beta_assumed, double cutoff)
{
  if (!(beta_assumed > 0.25)) {
    throw Error(ErrorCode::bad_smoothness,
                "truncation rate needs Sobolev smoothness beta > 1/4");
  }
  if (n < 2)
    throw Error(ErrorCode::sample_too_small, "h rule needs n >= 2");
  const double nn = static_cast<double>(n);
  const double h = 1.0 / (std::sqrt(nn) * std::log(nn));
  return std::max(h, 1.0 / cutoff);
}

double z_score(double x, const EuclideanParam& theta, double u)
{
  return 2.0 * (std::polar(1.0, u * x) / mixing_operator(theta, u)).imag();
}

Eigen::Vector3d z_score_gradient(double x, const EuclideanParam& theta, double u)
{
  const cplx w = 1.0 / mixing_operator(theta, u);
  const auto dw = inverse_gradient(theta, u, w);
  const cplx e = std::polar(1.0, u * x);
  return { 2.0 * (e * dw[0]).imag(), 2.0 * (e * dw[1]).imag(), 2.0 * (e * dw[2]).imag() };
}

double j_value(cplx gstar_u, const EuclideanParam& theta, double u)
{
  return 2.0 * (gstar_u / mixing_operator(theta, u)).imag();
}

Eigen::Vector3d j_gradient(cplx gstar_u, const EuclideanParam& theta, double u)
{
  const cplx w = 1.0 / mixing_operator(theta, u);
  const auto dw = inverse_gradient(theta, u, w);
  return { 2.0 * (gstar_u * dw[0]).imag(),
           2.0 * (gstar_u * dw[1]).imag(),
           2.0 * (gstar_u * dw[2]).imag() };
}

EmpiricalContrast::EmpiricalContrast(const Sample& sample, ContrastConfig config)
  : config_(std::move(config))
  , n_(sample.size())
{
  require_pairs(n_);
  if (!(config_.trunc_h > 0.0))
    throw Error(ErrorCode::bad_input, "trunc_h must be positive");
  const auto nodes = config_.weight_rule.nodes();
  const auto weights = config_.weight_rule.weights();
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    if (!node_active(nodes[q], config_.trunc_h))
      continue;
    nodes_.push_back(nodes[q]);
    weights_.push_back(weights[q]);
  }
  sum1_.assign(nodes_.size(), cplx(0.0, 0.0));
  sum2_.assign(nodes_.size(), cplx(0.0, 0.0));
  const auto xs = sample.values();
  for (std::size_t q = 0; q < nodes_.size(); ++q) {
    const double u = nodes_[q];
    cplx s1(0.0, 0.0);
    cplx s2(0.0, 0.0);
    for (double x : xs) {
      const cplx e = std::polar(1.0, u * x);
      s1 += e;
      s2 += e * e;
    }
    sum1_[q] = s1;
    sum2_[q] = s2;
  }
}

double EmpiricalContrast::value(const EuclideanParam& theta) const
{
  const double n = static_cast<double>(n_);
  double total = 0.0;
  if (config_.kind == ContrastKind::u_statistic) {
    for (std::size_t q = 0; q < nodes_.size(); ++q) {
      const cplx w = 1.0 / mixing_operator(theta, nodes_[q]);
      const double lin = (w * sum1_[q]).imag();
      const double diag = 0.5 * (n * std::norm(w) - (w * w * sum2_[q]).real());
      total += weights_[q] * (lin * lin - diag);
    }
    return total / (n * (n - 1.0));
  }
  for (std::size_t q = 0; q < nodes_.size(); ++q) {
    const cplx w = 1.0 / mixing_operator(theta, nodes_[q]);
    const double lin = (w * sum1_[q]).imag();
    total += weights_[q] * lin * lin;
  }
  return total / (n * n);
}

Eigen::Vector3d EmpiricalContrast::gradient(const EuclideanParam& theta) const
{
  const double n = static_cast<double>(n_);
  const bool ustat = config_.kind == ContrastKind::u_statistic;
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  for (std::size_t q = 0; q < nodes_.size(); ++q) {
    const double u = nodes_[q];
    const cplx w = 1.0 / mixing_operator(theta, u);
    const auto dw = inverse_gradient(theta, u, w);
    const double lin = (w * sum1_[q]).imag();
    for (int i = 0; i < 3; ++i) {
      double d = 2.0 * lin * (dw[i] * sum1_[q]).imag();
      if (ustat) {
        d -= n * (dw[i] * std::conj(w)).real() - (w * dw[i] * sum2_[q]).real();
      }
      g[i] += weights_[q] * d;
    }
  }
  return g / (ustat ? n * (n - 1.0) : n * n);
}

double empirical_contrast(const Sample& sample,
                          const EuclideanParam& theta,
                          const ContrastConfig& config)
{
  return EmpiricalContrast(sample, config).value(theta);
}

Eigen::Vector3d contrast_gradient(const Sample& sample,
                                  const EuclideanParam& theta,
                                  const ContrastConfig& config)
{
  return EmpiricalContrast(sample, config).gradient(theta);
}

double oracle_contrast(const CharacteristicFunction& gstar,
                       const EuclideanParam& theta,
                       const ContrastConfig& config)
{
  const cplx at_zero = gstar(0.0);
  if (std::abs(at_zero - cplx(1.0, 0.0)) > 1e-8) {
    throw Error(ErrorCode::bad_characteristic_function, "g*(0) must equal 1");
  }
  const auto nodes = config.weight_rule.nodes();
  const auto weights = config.weight_rule.weights();
  double total = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    if (!node_active(nodes[q], config.trunc_h))
      continue;
    const double im = (gstar(nodes[q]) / mixing_operator(theta, nodes[q])).imag();
    total += weights[q] * im * im;
  }
  return total;
}

} // namespace symmix
