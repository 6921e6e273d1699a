#pragma once

#include "symmix/model.hpp"
#include "symmix/sample.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace symmix {

enum class Kernel
{
  gauss
};

enum class ThetaMode
{
  full_sample,
  leave_one_out
};

enum class BandwidthMode
{
  practical,
  theoretical
};

std::string_view to_string(Kernel kernel);
std::string_view to_string(ThetaMode mode);
ThetaMode theta_mode_from_string(std::string_view name);

//! Uniform grid of `points` abscissae from x_min to x_max inclusive.
struct Grid
{
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t points = 512;

  std::vector<double> abscissae() const;
  double step() const;
};

struct DensityConfig
{
  Kernel kernel = Kernel::gauss;
  double bandwidth = 1.0;
  Grid grid;
  ThetaMode theta_mode = ThetaMode::full_sample;
};

//! Throws BadInput unless bandwidth > 0, points >= 16 and x_min < x_max.
void validate(const DensityConfig& cfg);

struct DensityCurve
{
  std::vector<double> xs;
  std::vector<double> f_raw;   //!< deconvolution estimate f_n, may be negative
  std::vector<double> f_tilde; //!< max(f_n, 0) / mass_kept
  double mass_kept = 0.0;      //!< trapezoid integral of max(f_n, 0)
  double bandwidth = 0.0;
  std::size_t frequency_nodes = 0;
  double frequency_cutoff = 0.0;
};

//! practical: 2 n^{-1/4}; theoretical: n^{-(beta - 1/2) / (2 beta)}.
//! Throws SampleTooSmall for n < 2 and BadSmoothness for theoretical mode
//! with beta <= 1/2.
double default_bandwidth(std::size_t n, BandwidthMode mode = BandwidthMode::practical,
                         double beta_assumed = 1.0);

//! Grid covering the data and the support of f_n implied by theta: the
//! shifted copies of the data range that reconstruction reads, plus the
//! alternating echoes of 1/M(theta, u) at multiples of alpha - beta until
//! their weight (p / (1 - p))^j drops below 1e-3. Padded by 3 b on each side,
//! with spacing at most b / 20 and at least 512 points.
Grid default_grid(const Sample& sample, const EuclideanParam& theta, double bandwidth);

//! f_n(x) = (1/n) sum_k int (1/2pi) e^{-b^2 u^2/2} / |M(theta,u)|^2
//!          [p cos(u(X_k - x - alpha)) + (1 - p) cos(u(X_k - x - beta))] du,
//! evaluated with the trapezoid rule on [0, U_f], e^{-b^2 U_f^2 / 2} = 1e-12,
//! using enough nodes that no term aliases on the grid.
//! Throws EmptyPositivePart when max(f_n, 0) has no mass on the grid.
DensityCurve estimate_density(const Sample& sample,
                              const EuclideanParam& theta_hat,
                              const DensityConfig& cfg);

//! Leave-one-out variant: observation k enters with theta_hats[k].
DensityCurve estimate_density(const Sample& sample,
                              std::span<const EuclideanParam> theta_hats,
                              const DensityConfig& cfg);

//! Gaussian kernel estimate g_n of the mixed density on cfg.grid.
std::vector<double> estimate_g(const Sample& sample, const DensityConfig& cfg);

enum class CurveComponent
{
  raw,
  tilde
};

//! p f(x - alpha) + (1 - p) f(x - beta) on curve.xs, with f interpolated
//! linearly on the curve grid and taken as zero outside it.
std::vector<double> reconstruct_mixture(const DensityCurve& curve,
                                        const EuclideanParam& theta,
                                        CurveComponent component = CurveComponent::raw);

//! Trapezoid integral of ys over xs.
double trapezoid(std::span<const double> xs, std::span<const double> ys);

} // namespace symmix
