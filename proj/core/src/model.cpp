#include "symmix/model.hpp"

#include "symmix/error.hpp"

#include <cmath>
#include <sstream>

namespace symmix {

bool satisfies(const EuclideanParam& theta, const ParamBox& box)
{
  return std::isfinite(theta.alpha) && std::isfinite(theta.beta) &&
         theta.p >= box.p_low && theta.p <= box.p_high &&
         std::abs(theta.alpha - theta.beta) >= box.sep_min;
}

EuclideanParam swap_labels(const EuclideanParam& theta)
{
  return { 1.0 - theta.p, theta.beta, theta.alpha };
}

EuclideanParam canonicalize(const EuclideanParam& raw, const ParamBox& box)
{
  if (!(raw.p > 0.0 && raw.p < 1.0) || raw.p == 0.5) {
    std::ostringstream msg;
    msg << "mixing proportion " << raw.p << " must lie in (0,1) \\ {1/2}";
    throw Error(ErrorCode::degenerate_param, msg.str());
  }
  const EuclideanParam out = raw.p < 0.5 ? raw : swap_labels(raw);
  if (!(std::abs(out.alpha - out.beta) >= box.sep_min)) {
    throw Error(ErrorCode::degenerate_param,
                "component locations closer than sep_min");
  }
  if (out.p < box.p_low || out.p > box.p_high) {
    std::ostringstream msg;
    msg << "canonical p = " << out.p << " outside [" << box.p_low << ", "
        << box.p_high << "]";
    throw Error(ErrorCode::degenerate_param, msg.str());
  }
  return out;
}

EuclideanParam shifted(const EuclideanParam& theta, double c)
{
  return { theta.p, theta.alpha + c, theta.beta + c };
}

std::complex<double> mixing_operator(const EuclideanParam& theta, double u)
{
  return theta.p * std::polar(1.0, u * theta.alpha) +
         (1.0 - theta.p) * std::polar(1.0, u * theta.beta);
}

double mixing_modulus_sq(const EuclideanParam& theta, double u)
{
  const double p = theta.p;
  return 2.0 * p * p - 2.0 * p + 1.0 +
         2.0 * p * (1.0 - p) * std::cos(u * (theta.alpha - theta.beta));
}

std::array<std::complex<double>, 3> mixing_operator_gradient(
  const EuclideanParam& theta,
  double u)
{
  const std::complex<double> ea = std::polar(1.0, u * theta.alpha);
  const std::complex<double> eb = std::polar(1.0, u * theta.beta);
  const std::complex<double> iu(0.0, u);
  return { ea - eb, iu * theta.p * ea, iu * (1.0 - theta.p) * eb };
}

} // namespace symmix
