#include "symmix/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace symmix {

namespace {

struct Simplex
{
  std::vector<Eigen::VectorXd> x;
  std::vector<double> f;
};

} // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& step,
                             const NelderMeadOptions& options)
{
  const auto dim = static_cast<std::size_t>(x0.size());
  NelderMeadResult result;

  auto eval = [&](const Eigen::VectorXd& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  Eigen::VectorXd best_x = x0;
  double best_f = eval(x0);
  Eigen::VectorXd cur_step = step;
  std::size_t iter = 0;

  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    Simplex s;
    s.x.push_back(best_x);
    s.f.push_back(best_f);
    for (std::size_t i = 0; i < dim; ++i) {
      Eigen::VectorXd v = best_x;
      v[static_cast<Eigen::Index>(i)] += cur_step[static_cast<Eigen::Index>(i)];
      s.x.push_back(v);
      s.f.push_back(eval(v));
    }

    std::vector<std::size_t> order(dim + 1);
    bool collapsed = false;
    while (iter < options.max_iter) {
      std::iota(order.begin(), order.end(), std::size_t{ 0 });
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[dim - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= dim; ++i)
        diameter = std::max(diameter, (s.x[i] - s.x[lo]).cwiseAbs().maxCoeff());
      const double scale = 1.0 + s.x[lo].cwiseAbs().maxCoeff();
      if (s.f[hi] - s.f[lo] <= options.f_tol && diameter <= options.x_tol * scale) {
        collapsed = true;
        break;
      }
      ++iter;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(x0.size());
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i != hi)
          centroid += s.x[i];
      }
      centroid /= static_cast<double>(dim);

      const Eigen::VectorXd xr = centroid + (centroid - s.x[hi]);
      const double fr = eval(xr);
      if (fr < s.f[lo]) {
        const Eigen::VectorXd xe = centroid + 2.0 * (centroid - s.x[hi]);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[hi] = xe;
          s.f[hi] = fe;
        } else {
          s.x[hi] = xr;
          s.f[hi] = fr;
        }
        continue;
      }
      if (fr < s.f[second]) {
        s.x[hi] = xr;
        s.f[hi] = fr;
        continue;
      }
      const bool outside = fr < s.f[hi];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                         : Eigen::VectorXd(centroid + 0.5 * (s.x[hi] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : s.f[hi])) {
        s.x[hi] = xc;
        s.f[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == lo)
          continue;
        s.x[i] = s.x[lo] + 0.5 * (s.x[i] - s.x[lo]);
        s.f[i] = eval(s.x[i]);
      }
    }

    const auto lo_it = std::min_element(s.f.begin(), s.f.end());
    const auto lo = static_cast<std::size_t>(lo_it - s.f.begin());
    const bool improved = s.f[lo] < best_f - options.f_tol;
    if (s.f[lo] <= best_f) {
      best_f = s.f[lo];
      best_x = s.x[lo];
    }
    // Budget exhausted: keep the flag from any earlier collapse.
    if (!collapsed)
      break;
    result.converged = true;
    if (restart > 0 && !improved)
      break;
    cur_step *= 0.1;
    // Keep the restart simplex resolvable at the x tolerance.
    const double floor = 10.0 * options.x_tol * (1.0 + best_x.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < cur_step.size(); ++i) {
      if (std::abs(cur_step[i]) < floor)
        cur_step[i] = floor;
    }
  }

  result.x = best_x;
  result.f = best_f;
  result.iterations = iter;
  return result;
}

} // namespace symmix
