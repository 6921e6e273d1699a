#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace symmix {

//! Immutable ordered collection of real observations.
class Sample
{
public:
  //! Throws BadInput on non-finite values.
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  //! Linear-interpolation quantile (R type 7), prob in [0, 1].
  double quantile(double prob) const;
  double median() const { return quantile(0.5); }
  double min() const;
  double max() const;

  Sample shifted(double c) const;
  Sample without(std::size_t index) const;

private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

} // namespace symmix
