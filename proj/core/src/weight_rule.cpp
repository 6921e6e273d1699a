#include "symmix/weight_rule.hpp"

#include "symmix/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>
#include <utility>

namespace symmix {

namespace {

constexpr std::size_t kPanelOrder = 16;

// (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t order, double x)
{
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= order; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  const double n = static_cast<double>(order);
  return { p1, n * (x * p1 - p0) / (x * x - 1.0) };
}

} // namespace

std::string_view to_string(WeightDensity id)
{
  switch (id) {
    case WeightDensity::laplace_default:
      return "laplace_default";
    case WeightDensity::user_table:
      return "user_table";
  }
  return "unknown";
}

WeightDensity weight_density_from_string(std::string_view name)
{
  if (name == "laplace_default")
    return WeightDensity::laplace_default;
  if (name == "user_table")
    return WeightDensity::user_table;
  throw Error(ErrorCode::bad_weight_spec,
              "unknown weight density '" + std::string(name) + "'");
}

GaussLegendre gauss_legendre(std::size_t order)
{
  GaussLegendre rule;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);
  if (order == 0)
    return rule;
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (n + 0.5));
    auto [pn, dpn] = legendre(order, x);
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = pn / dpn;
      x -= dx;
      std::tie(pn, dpn) = legendre(order, x);
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1)
    rule.nodes[order / 2] = 0.0;
  return rule;
}

WeightRule::WeightRule(WeightDensity id,
                       std::vector<double> nodes,
                       std::vector<double> weights,
                       double cutoff)
  : density_id_(id)
  , nodes_(std::move(nodes))
  , weights_(std::move(weights))
  , cutoff_(cutoff)
{}

WeightRule WeightRule::laplace(std::size_t node_count, double cutoff)
{
  if (node_count < 16 || node_count % 2 != 0) {
    throw Error(ErrorCode::bad_weight_spec,
                "node_count must be even and >= 16, got " +
                  std::to_string(node_count));
  }
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw Error(ErrorCode::bad_weight_spec, "cutoff must be positive");
  }

  // Panels on [0, cutoff]; the negative half is the mirror image.
  const std::size_t half = node_count / 2;
  const std::size_t panels = std::max<std::size_t>(1, half / kPanelOrder);
  const double width = cutoff / static_cast<double>(panels);

  std::vector<double> pos_nodes;
  std::vector<double> pos_weights;
  pos_nodes.reserve(half);
  pos_weights.reserve(half);
  for (std::size_t j = 0; j < panels; ++j) {
    const std::size_t order = half / panels + (j < half % panels ? 1 : 0);
    const GaussLegendre gl = gauss_legendre(order);
    const double lo = width * static_cast<double>(j);
    const double mid = lo + 0.5 * width;
    for (std::size_t i = 0; i < order; ++i) {
      const double u = mid + 0.5 * width * gl.nodes[i];
      pos_nodes.push_back(u);
      pos_weights.push_back(0.5 * width * gl.weights[i] * 0.5 * std::exp(-u));
    }
  }

  std::vector<double> nodes(node_count);
  std::vector<double> weights(node_count);
  for (std::size_t i = 0; i < half; ++i) {
    nodes[half - 1 - i] = -pos_nodes[i];
    weights[half - 1 - i] = pos_weights[i];
    nodes[half + i] = pos_nodes[i];
    weights[half + i] = pos_weights[i];
  }
  return WeightRule(WeightDensity::laplace_default,
                    std::move(nodes),
                    std::move(weights),
                    cutoff);
}

WeightRule WeightRule::from_table(std::vector<double> nodes,
                                  std::vector<double> weights,
                                  double cutoff)
{
  if (nodes.size() != weights.size() || nodes.empty()) {
    throw Error(ErrorCode::bad_weight_spec,
                "nodes and weights must be non-empty and of equal length");
  }
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw Error(ErrorCode::bad_weight_spec, "cutoff must be positive");
  }
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes[a] < nodes[b];
  });
  std::vector<double> sn(nodes.size());
  std::vector<double> sw(nodes.size());
  double third = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double u = nodes[order[i]];
    const double w = weights[order[i]];
    if (!std::isfinite(u) || !std::isfinite(w)) {
      throw Error(ErrorCode::bad_weight_spec, "non-finite node or weight");
    }
    if (w < 0.0) {
      std::ostringstream msg;
      msg << "negative weight " << w << " at node " << u;
      throw Error(ErrorCode::bad_weight_spec, msg.str());
    }
    if (std::abs(u) > cutoff * (1.0 + 1e-12)) {
      throw Error(ErrorCode::bad_weight_spec, "node outside [-cutoff, cutoff]");
    }
    third += w * std::abs(u) * u * u;
    sn[i] = u;
    sw[i] = w;
  }
  if (!std::isfinite(third)) {
    throw Error(ErrorCode::bad_weight_spec, "third absolute moment is not finite");
  }
  const std::size_t m = sn.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double tol = 1e-12 * std::max(1.0, std::abs(sn[i]));
    if (std::abs(sn[i] + sn[m - 1 - i]) > tol ||
        std::abs(sw[i] - sw[m - 1 - i]) > 1e-12 * std::max(1.0, sw[i])) {
      throw Error(ErrorCode::bad_weight_spec, "rule is not symmetric about 0");
    }
  }
  return WeightRule(WeightDensity::user_table, std::move(sn), std::move(sw), cutoff);
}

double WeightRule::density(double u) const
{
  if (density_id_ == WeightDensity::laplace_default)
    return 0.5 * std::exp(-std::abs(u));
  return std::numeric_limits<double>::quiet_NaN();
}

double WeightRule::total_mass() const
{
  double s = 0.0;
  for (double w : weights_)
    s += w;
  return s;
}

double WeightRule::absolute_moment(int k) const
{
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    s += weights_[i] * std::pow(std::abs(nodes_[i]), k);
  return s;
}

double WeightRule::exact_mass() const
{
  if (density_id_ == WeightDensity::laplace_default)
    return -std::expm1(-cutoff_);
  return total_mass();
}

WeightRule build_weight_rule(WeightDensity density_id,
                             std::size_t node_count,
                             double cutoff)
{
  if (density_id == WeightDensity::user_table) {
    throw Error(ErrorCode::bad_weight_spec,
                "user_table rules are built from explicit nodes and weights");
  }
  return WeightRule::laplace(node_count, cutoff);
}

} // namespace symmix
