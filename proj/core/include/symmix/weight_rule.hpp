#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace symmix {

enum class WeightDensity
{
  laplace_default, //!< w(u) = exp(-|u|) / 2
  user_table       //!< caller-supplied nodes and weights
};

std::string_view to_string(WeightDensity id);
WeightDensity weight_density_from_string(std::string_view name);

//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(std::size_t order);

//! Quadrature rule for integrals against the weight measure W, truncated to
//! [-cutoff, cutoff]. The density is folded into the weights, so
//! sum_q weights[q] * phi(nodes[q]) approximates int phi dW. Nodes are sorted
//! and symmetric about zero.
class WeightRule
{
public:
  //! Composite Gauss-Legendre on [-cutoff, 0] and [0, cutoff] (the Laplace
  //! density has a kink at the origin). node_count must be even and >= 16.
  static WeightRule laplace(std::size_t node_count, double cutoff);

  //! Validates a tabulated rule: equal lengths, non-negative finite weights,
  //! nodes in [-cutoff, cutoff], symmetric, finite third absolute moment.
  static WeightRule from_table(std::vector<double> nodes,
                               std::vector<double> weights,
                               double cutoff);

  WeightDensity density_id() const { return density_id_; }
  std::size_t node_count() const { return nodes_.size(); }
  double cutoff() const { return cutoff_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  //! w(u); NaN for tabulated rules, which carry no closed-form density.
  double density(double u) const;

  double total_mass() const;
  //! sum_q weights[q] * |u_q|^k.
  double absolute_moment(int k) const;
  //! W([-cutoff, cutoff]) in closed form (laplace_default) or total_mass().
  double exact_mass() const;

private:
  WeightRule(WeightDensity id,
             std::vector<double> nodes,
             std::vector<double> weights,
             double cutoff);

  WeightDensity density_id_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double cutoff_;
};

//! Factory matching the configuration surface: user_table is rejected here,
//! use WeightRule::from_table instead.
WeightRule build_weight_rule(WeightDensity density_id,
                             std::size_t node_count,
                             double cutoff);

} // namespace symmix
