#pragma once

#include "symmix/contrast.hpp"
#include "symmix/density.hpp"
#include "symmix/estimator.hpp"
#include "symmix/model.hpp"
#include "symmix/simulate.hpp"
#include "symmix/weight_rule.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <string_view>

namespace symmix {

using Json = nlohmann::ordered_json;

Json as_json(const EuclideanParam& theta);
//! Accepts {"p","alpha","beta"} or a fit result carrying "theta_hat".
EuclideanParam theta_from_json(const Json& j);

Json as_json(const WeightRule& rule);
//! Inverse of as_json(WeightRule). Laplace rules are rebuilt from
//! (node_count, cutoff) and must match the stored nodes and weights.
WeightRule weight_rule_from_json(const Json& j);

Json as_json(const ContrastConfig& cfg, bool with_nodes = true);
ContrastConfig contrast_config_from_json(const Json& j);

Json as_json(const ParamBox& box);
Json as_json(const FitConfig& cfg);
Json as_json(const FitResult& result, bool with_nodes = false);
Json as_json(const ScenarioSpec& spec);
Json as_json(const ReplicationDigest& digest);
Json as_json(const MCSummary& summary);

//! "%.12g", or an empty string for NaN.
std::string format_number(double value);

//! Header plus one row: n, p0, alpha0, beta0, three means, three SDs,
//! failures, replications. Absent statistics are empty fields.
std::string mc_table_csv(const MCSummary& summary);

//! Columns x, f_raw, f_tilde, g_n, g_reconstructed.
std::string density_csv(const DensityCurve& curve,
                        std::span<const double> g_n,
                        std::span<const double> g_reconstructed);

//! 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a64_hex(std::string_view bytes);

} // namespace symmix
