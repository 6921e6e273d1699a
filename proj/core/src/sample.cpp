#include "symmix/sample.hpp"

#include "symmix/error.hpp"

#include <algorithm>
#include <cmath>

namespace symmix {

Sample::Sample(std::vector<double> values)
  : values_(std::move(values))
{
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::bad_input,
                  "observation " + std::to_string(i + 1) + " is not finite");
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

double Sample::quantile(double prob) const
{
  if (sorted_.empty())
    throw Error(ErrorCode::sample_too_small, "quantile of an empty sample");
  prob = std::clamp(prob, 0.0, 1.0);
  const double h = prob * static_cast<double>(sorted_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted_.size() - 1);
  return sorted_[lo] + (h - static_cast<double>(lo)) * (sorted_[hi] - sorted_[lo]);
}

double Sample::min() const
{
  if (sorted_.empty())
    throw Error(ErrorCode::sample_too_small, "min of an empty sample");
  return sorted_.front();
}

double Sample::max() const
{
  if (sorted_.empty())
    throw Error(ErrorCode::sample_too_small, "max of an empty sample");
  return sorted_.back();
}

Sample Sample::shifted(double c) const
{
  std::vector<double> out(values_);
  for (double& x : out)
    x += c;
  return Sample(std::move(out));
}

Sample Sample::without(std::size_t index) const
{
  std::vector<double> out;
  out.reserve(values_.size() - 1);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i != index)
      out.push_back(values_[i]);
  }
  return Sample(std::move(out));
}

} // namespace symmix
