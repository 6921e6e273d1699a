#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>

namespace symmix {

struct NelderMeadOptions
{
  std::size_t max_iter = 500; //!< total iterations, restarts included
  double f_tol = 1e-10;       //!< spread of simplex values
  double x_tol = 1e-9;        //!< simplex diameter, relative to 1 + |x_best|
  std::size_t max_restarts = 4;
};

struct NelderMeadResult
{
  Eigen::VectorXd x;
  double f = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

//! Unconstrained Nelder-Mead with standard coefficients. After the simplex
//! collapses it is rebuilt around the best vertex with a smaller step, until a
//! restart no longer improves the value (guards against premature collapse).
//! Non-finite objective values are treated as +infinity.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& step,
                             const NelderMeadOptions& options = {});

} // namespace symmix
