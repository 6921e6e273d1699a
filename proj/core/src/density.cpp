#include "symmix/density.hpp"

#include "symmix/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace symmix {

namespace {

constexpr double kTailLevel = 1e-12;
constexpr std::size_t kMinFrequencyNodes = 512;
constexpr std::size_t kMinGridPoints = 512;
constexpr double kEchoLevel = 1e-3;
constexpr int kMaxEchoes = 10;

double frequency_cutoff(double bandwidth)
{
  return std::sqrt(-2.0 * std::log(kTailLevel)) / bandwidth;
}

DensityCurve deconvolve(const Sample& sample,
                        std::span<const EuclideanParam> thetas,
                        const DensityConfig& cfg)
{
  using cplx = std::complex<double>;
  validate(cfg);
  const std::size_t n = sample.size();
  if (n < 1)
    throw Error(ErrorCode::sample_too_small, "density needs observations");

  DensityCurve curve;
  curve.xs = cfg.grid.abscissae();
  curve.bandwidth = cfg.bandwidth;

  // Largest |X_k - x - location| decides the node spacing: the trapezoid
  // rule with step du reproduces e^{iuy} integrals for |y| < pi / du.
  double reach = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const EuclideanParam& th = thetas[thetas.size() == 1 ? 0 : k];
    for (double loc : { th.alpha, th.beta }) {
      reach = std::max({ reach,
                         std::abs(sample[k] - cfg.grid.x_min - loc),
                         std::abs(sample[k] - cfg.grid.x_max - loc) });
    }
  }
  const double cutoff = frequency_cutoff(cfg.bandwidth);
  const std::size_t nodes = std::max(
    kMinFrequencyNodes, static_cast<std::size_t>(std::ceil(cutoff * reach / std::numbers::pi)) + 2);
  const double du = cutoff / static_cast<double>(nodes - 1);
  curve.frequency_nodes = nodes;
  curve.frequency_cutoff = cutoff;

  // coeff_j = t_j e^{-b^2 u_j^2 / 2} sum_k e^{iu_j X_k} conj(M_k(u_j)) / |M_k(u_j)|^2
  std::vector<cplx> coeff(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const double u = du * static_cast<double>(j);
    cplx acc = 0.0;
    if (thetas.size() == 1) {
      cplx e = 0.0;
      for (double x : sample.values())
        e += std::polar(1.0, u * x);
      acc = e / mixing_operator(thetas[0], u);
    } else {
      for (std::size_t k = 0; k < n; ++k)
        acc += std::polar(1.0, u * sample[k]) / mixing_operator(thetas[k], u);
    }
    const double trap = (j == 0 || j + 1 == nodes) ? 0.5 * du : du;
    coeff[j] = trap * std::exp(-0.5 * cfg.bandwidth * cfg.bandwidth * u * u) * acc;
  }

  const double scale = 1.0 / (std::numbers::pi * static_cast<double>(n));
  curve.f_raw.resize(curve.xs.size());
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    const double x = curve.xs[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const double phase = -du * static_cast<double>(j) * x;
      acc += coeff[j].real() * std::cos(phase) - coeff[j].imag() * std::sin(phase);
    }
    curve.f_raw[i] = scale * acc;
  }

  std::vector<double> positive(curve.f_raw.size());
  std::transform(curve.f_raw.begin(), curve.f_raw.end(), positive.begin(),
                 [](double v) { return std::max(v, 0.0); });
  curve.mass_kept = trapezoid(curve.xs, positive);
  if (!(curve.mass_kept > 0.0))
    throw Error(ErrorCode::empty_positive_part, "f_n has no positive mass on the grid");
  curve.f_tilde.resize(positive.size());
  std::transform(positive.begin(), positive.end(), curve.f_tilde.begin(),
                 [&](double v) { return v / curve.mass_kept; });
  return curve;
}

} // namespace

std::string_view to_string(Kernel)
{
  return "gauss";
}

std::string_view to_string(ThetaMode mode)
{
  return mode == ThetaMode::full_sample ? "full_sample" : "leave_one_out";
}

ThetaMode theta_mode_from_string(std::string_view name)
{
  if (name == "full_sample")
    return ThetaMode::full_sample;
  if (name == "leave_one_out")
    return ThetaMode::leave_one_out;
  throw Error(ErrorCode::bad_input, "unknown theta mode '" + std::string(name) + "'");
}

std::vector<double> Grid::abscissae() const
{
  std::vector<double> xs(points);
  const double h = step();
  for (std::size_t i = 0; i < points; ++i)
    xs[i] = x_min + h * static_cast<double>(i);
  if (points > 1)
    xs.back() = x_max;
  return xs;
}

double Grid::step() const
{
  return points > 1 ? (x_max - x_min) / static_cast<double>(points - 1) : 0.0;
}

void validate(const DensityConfig& cfg)
{
  if (!(cfg.bandwidth > 0.0) || !std::isfinite(cfg.bandwidth))
    throw Error(ErrorCode::bad_input, "bandwidth must be positive");
  if (cfg.grid.points < 16)
    throw Error(ErrorCode::bad_input, "grid needs at least 16 points");
  if (!(cfg.grid.x_min < cfg.grid.x_max) || !std::isfinite(cfg.grid.x_min) ||
      !std::isfinite(cfg.grid.x_max))
    throw Error(ErrorCode::bad_input, "grid needs finite x_min < x_max");
}

double default_bandwidth(std::size_t n, BandwidthMode mode, double beta_assumed)
{
  if (n < 2)
    throw Error(ErrorCode::sample_too_small, "bandwidth rule needs n >= 2");
  const double nn = static_cast<double>(n);
  if (mode == BandwidthMode::practical)
    return 2.0 * std::pow(nn, -0.25);
  if (!(beta_assumed > 0.5))
    throw Error(ErrorCode::bad_smoothness, "theoretical bandwidth needs beta > 1/2");
  if (std::isinf(beta_assumed))
    return std::pow(nn, -0.5);
  return std::pow(nn, -(beta_assumed - 0.5) / (2.0 * beta_assumed));
}

Grid default_grid(const Sample& sample, const EuclideanParam& theta, double bandwidth)
{
  const double lo = sample.min();
  const double hi = sample.max();
  double x_min = lo;
  double x_max = hi;
  auto cover = [&](double shift) {
    x_min = std::min(x_min, lo + shift);
    x_max = std::max(x_max, hi + shift);
  };
  cover(-theta.alpha);
  cover(-theta.beta);

  // Echo j of the minor component sits at -beta + j (alpha - beta) with
  // weight (p / (1 - p))^j (p < 1/2 after canonicalization).
  const double p = std::min(theta.p, 1.0 - theta.p);
  const double ratio = p / (1.0 - p);
  int echoes = kMaxEchoes;
  if (ratio <= 0.0)
    echoes = 0;
  else if (ratio < 1.0)
    echoes = std::min(kMaxEchoes, static_cast<int>(std::ceil(std::log(kEchoLevel) / std::log(ratio))));
  const double major = theta.p < 0.5 ? theta.beta : theta.alpha;
  const double minor = theta.p < 0.5 ? theta.alpha : theta.beta;
  for (int j = 0; j <= echoes; ++j)
    cover(-major + j * (minor - major));

  x_min -= 3.0 * bandwidth;
  x_max += 3.0 * bandwidth;
  const double span = x_max - x_min;
  const std::size_t points =
    std::max(kMinGridPoints, static_cast<std::size_t>(std::ceil(span / (bandwidth / 20.0))) + 1);
  return { x_min, x_max, points };
}

DensityCurve estimate_density(const Sample& sample,
                              const EuclideanParam& theta_hat,
                              const DensityConfig& cfg)
{
  return deconvolve(sample, std::span<const EuclideanParam>(&theta_hat, 1), cfg);
}

DensityCurve estimate_density(const Sample& sample,
                              std::span<const EuclideanParam> theta_hats,
                              const DensityConfig& cfg)
{
  if (theta_hats.size() != sample.size()) {
    throw Error(ErrorCode::bad_input, "leave-one-out density needs one theta per observation");
  }
  return deconvolve(sample, theta_hats, cfg);
}

std::vector<double> estimate_g(const Sample& sample, const DensityConfig& cfg)
{
  validate(cfg);
  const std::vector<double> xs = cfg.grid.abscissae();
  const double b = cfg.bandwidth;
  const double norm = 1.0 / (static_cast<double>(sample.size()) * b * std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double acc = 0.0;
    for (double x : sample.values()) {
      const double z = (xs[i] - x) / b;
      acc += std::exp(-0.5 * z * z);
    }
    out[i] = norm * acc;
  }
  return out;
}

std::vector<double> reconstruct_mixture(const DensityCurve& curve,
                                        const EuclideanParam& theta,
                                        CurveComponent component)
{
  const std::vector<double>& f = component == CurveComponent::raw ? curve.f_raw : curve.f_tilde;
  const std::size_t m = curve.xs.size();
  const double x0 = curve.xs.front();
  const double step = (curve.xs.back() - x0) / static_cast<double>(m - 1);
  auto at = [&](double x) {
    const double t = (x - x0) / step;
    if (t < 0.0 || t > static_cast<double>(m - 1))
      return 0.0;
    const auto i = std::min(static_cast<std::size_t>(t), m - 2);
    const double frac = t - static_cast<double>(i);
    return (1.0 - frac) * f[i] + frac * f[i + 1];
  };
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = curve.xs[i];
    out[i] = theta.p * at(x - theta.alpha) + (1.0 - theta.p) * at(x - theta.beta);
  }
  return out;
}

double trapezoid(std::span<const double> xs, std::span<const double> ys)
{
  double acc = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    acc += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
  return acc;
}

} // namespace symmix
