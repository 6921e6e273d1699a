#pragma once

#include <array>
#include <complex>

namespace symmix {

//! Compact parameter box Theta. The mixing proportion is kept strictly below
//! 1/2 so that |M(theta, u)| >= 1 - 2 * p_high > 0.
struct ParamBox
{
  double p_low = 0.001;
  double p_high = 0.499;
  double sep_min = 1e-6;
};

//! theta = (p, alpha, beta): weight and location of the first component, and
//! location of the second one.
struct EuclideanParam
{
  double p = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const EuclideanParam&, const EuclideanParam&) = default;
};

bool satisfies(const EuclideanParam& theta, const ParamBox& box);

//! (p, alpha, beta) -> (1 - p, beta, alpha); leaves the mixture unchanged.
EuclideanParam swap_labels(const EuclideanParam& theta);

//! Resolves label swapping so that p < 1/2. Throws DegenerateParam when
//! p == 1/2, |alpha - beta| < sep_min, or the result falls outside the box.
EuclideanParam canonicalize(const EuclideanParam& raw, const ParamBox& box = {});

EuclideanParam shifted(const EuclideanParam& theta, double c);

//! M(theta, u) = p e^{iu alpha} + (1 - p) e^{iu beta}.
std::complex<double> mixing_operator(const EuclideanParam& theta, double u);

//! |M(theta, u)|^2 = 2p^2 - 2p + 1 + 2p(1 - p) cos(u (alpha - beta)).
double mixing_modulus_sq(const EuclideanParam& theta, double u);

//! dM/d(p, alpha, beta).
std::array<std::complex<double>, 3> mixing_operator_gradient(
  const EuclideanParam& theta,
  double u);

} // namespace symmix
