#include "symmix/serialize.hpp"

#include "symmix/error.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace symmix {

namespace {

Json nullable(double v)
{
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json vec3(const Eigen::Vector3d& v)
{
  return Json::array({ nullable(v[0]), nullable(v[1]), nullable(v[2]) });
}

Json mat3(const Eigen::Matrix3d& m)
{
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back(vec3(m.row(i).transpose()));
  return rows;
}

[[noreturn]] void bad(const std::string& what)
{
  throw Error(ErrorCode::bad_input, what);
}

} // namespace

Json as_json(const EuclideanParam& theta)
{
  return { { "p", theta.p }, { "alpha", theta.alpha }, { "beta", theta.beta } };
}

EuclideanParam theta_from_json(const Json& j)
{
  try {
    if (j.contains("theta_hat"))
      return theta_from_json(j.at("theta_hat"));
    return { j.at("p").get<double>(), j.at("alpha").get<double>(), j.at("beta").get<double>() };
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("theta JSON: ") + e.what());
  }
}

Json as_json(const WeightRule& rule)
{
  return { { "density_id", std::string(to_string(rule.density_id())) },
           { "node_count", rule.node_count() },
           { "cutoff", rule.cutoff() },
           { "nodes", std::vector<double>(rule.nodes().begin(), rule.nodes().end()) },
           { "weights", std::vector<double>(rule.weights().begin(), rule.weights().end()) } };
}

WeightRule weight_rule_from_json(const Json& j)
{
  try {
    const WeightDensity id = weight_density_from_string(j.at("density_id").get<std::string>());
    const double cutoff = j.at("cutoff").get<double>();
    auto nodes = j.at("nodes").get<std::vector<double>>();
    auto weights = j.at("weights").get<std::vector<double>>();
    if (id == WeightDensity::user_table)
      return WeightRule::from_table(std::move(nodes), std::move(weights), cutoff);
    WeightRule rule = WeightRule::laplace(j.at("node_count").get<std::size_t>(), cutoff);
    if (!std::equal(nodes.begin(), nodes.end(), rule.nodes().begin(), rule.nodes().end()) ||
        !std::equal(weights.begin(), weights.end(), rule.weights().begin(), rule.weights().end())) {
      throw Error(ErrorCode::bad_weight_spec, "stored nodes do not match the laplace rule");
    }
    return rule;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::bad_weight_spec, std::string("weight rule JSON: ") + e.what());
  }
}

Json as_json(const ContrastConfig& cfg, bool with_nodes)
{
  Json rule;
  if (with_nodes) {
    rule = as_json(cfg.weight_rule);
  } else {
    rule = { { "density_id", std::string(to_string(cfg.weight_rule.density_id())) },
             { "node_count", cfg.weight_rule.node_count() },
             { "cutoff", cfg.weight_rule.cutoff() } };
  }
  return { { "weight_rule", rule },
           { "trunc_h", cfg.trunc_h },
           { "kind", std::string(to_string(cfg.kind)) } };
}

ContrastConfig contrast_config_from_json(const Json& j)
{
  try {
    return { weight_rule_from_json(j.at("weight_rule")),
             j.at("trunc_h").get<double>(),
             contrast_kind_from_string(j.at("kind").get<std::string>()) };
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("contrast config JSON: ") + e.what());
  }
}

Json as_json(const ParamBox& box)
{
  return { { "p_low", box.p_low }, { "p_high", box.p_high }, { "sep_min", box.sep_min } };
}

Json as_json(const FitConfig& cfg)
{
  return { { "starts", cfg.starts },
           { "max_iter", cfg.max_iter },
           { "tol", cfg.tol },
           { "box", as_json(cfg.box) } };
}

Json as_json(const FitResult& result, bool with_nodes)
{
  Json starts = Json::array();
  for (const auto& s : result.starts) {
    starts.push_back({ { "start", as_json(s.start) },
                       { "theta", as_json(s.theta) },
                       { "contrast", s.contrast },
                       { "iterations", s.iterations },
                       { "converged", s.converged } });
  }
  Json out = { { "theta_hat", as_json(result.theta_hat) },
               { "contrast_at_opt", result.contrast_at_opt },
               { "std_errors", vec3(result.std_errors) },
               { "covariance", mat3(result.covariance) },
               { "covariance_stated_form", mat3(result.covariance_stated_form) },
               { "covariance_available", result.covariance_available } };
  if (!result.covariance_note.empty())
    out["covariance_note"] = result.covariance_note;
  out["converged"] = result.converged;
  out["n_restarts_agreeing"] = result.n_restarts_agreeing;
  out["n"] = result.n;
  out["fit_config"] = as_json(result.fit_config);
  out["contrast_config"] = as_json(result.contrast_config, with_nodes);
  out["starts"] = starts;
  return out;
}

Json as_json(const ScenarioSpec& spec)
{
  Json out = { { "family", std::string(to_string(spec.family)) } };
  if (spec.family == NoiseFamily::asym_gauss_mix)
    out["lambda"] = spec.lambda;
  out["theta0"] = as_json(spec.theta0);
  out["n"] = spec.n;
  out["replications"] = spec.replications;
  out["seed"] = spec.seed;
  return out;
}

Json as_json(const ReplicationDigest& d)
{
  Json out = { { "index", d.index }, { "converged", d.converged } };
  if (!d.error.empty()) {
    out["error"] = d.error;
    return out;
  }
  out["theta_hat"] = as_json(d.theta_hat);
  out["contrast"] = d.contrast;
  out["std_errors"] = vec3(d.std_errors);
  out["n_restarts_agreeing"] = d.n_restarts_agreeing;
  return out;
}

Json as_json(const MCSummary& summary)
{
  Json reps = Json::array();
  for (const auto& d : summary.per_replication)
    reps.push_back(as_json(d));
  return { { "spec", as_json(summary.spec) },
           { "empirical_means", summary.empirical_means ? vec3(*summary.empirical_means) : Json(nullptr) },
           { "empirical_sds", summary.empirical_sds ? vec3(*summary.empirical_sds) : Json(nullptr) },
           { "failures", summary.failures },
           { "per_replication", reps } };
}

std::string format_number(double value)
{
  if (std::isnan(value))
    return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string mc_table_csv(const MCSummary& s)
{
  std::string out =
    "n,p0,alpha0,beta0,mean_p,mean_alpha,mean_beta,sd_p,sd_alpha,sd_beta,failures,replications\n";
  const double nan = std::nan("");
  const Eigen::Vector3d means = s.empirical_means.value_or(Eigen::Vector3d::Constant(nan));
  const Eigen::Vector3d sds = s.empirical_sds.value_or(Eigen::Vector3d::Constant(nan));
  out += std::to_string(s.spec.n);
  for (double v : { s.spec.theta0.p, s.spec.theta0.alpha, s.spec.theta0.beta, means[0], means[1],
                    means[2], sds[0], sds[1], sds[2] }) {
    out += ',';
    out += format_number(v);
  }
  out += ',' + std::to_string(s.failures) + ',' + std::to_string(s.spec.replications) + '\n';
  return out;
}

std::string density_csv(const DensityCurve& curve,
                        std::span<const double> g_n,
                        std::span<const double> g_reconstructed)
{
  std::string out = "x,f_raw,f_tilde,g_n,g_reconstructed\n";
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    out += format_number(curve.xs[i]) + ',' + format_number(curve.f_raw[i]) + ',' +
           format_number(curve.f_tilde[i]) + ',' + format_number(g_n[i]) + ',' +
           format_number(g_reconstructed[i]) + '\n';
  }
  return out;
}

std::string fnv1a64_hex(std::string_view bytes)
{
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

} // namespace symmix
