#include "symmix/cli.hpp"

#include "symmix/contrast.hpp"
#include "symmix/csv.hpp"
#include "symmix/density.hpp"
#include "symmix/error.hpp"
#include "symmix/estimator.hpp"
#include "symmix/serialize.hpp"
#include "symmix/simulate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace symmix::cli {

namespace {

struct FitFlags
{
  std::size_t weight_nodes = 256;
  double cutoff = 30.0;
  std::optional<double> trunc_h;
  std::size_t starts = 8;
  std::size_t max_iter = 500;
  std::string contrast = "plugin";
};

struct Input
{
  std::string path;
  std::string bytes;
  Sample sample;
};

void add_fit_flags(CLI::App* cmd, FitFlags& flags)
{
  cmd->add_option("--weight-nodes", flags.weight_nodes, "Quadrature nodes of the weight rule")
    ->capture_default_str();
  cmd->add_option("--cutoff", flags.cutoff, "Frequency cutoff U of the weight rule")
    ->capture_default_str();
  cmd->add_option("--trunc-h", flags.trunc_h, "Truncation h (|u| <= 1/h); default 1/(sqrt(n) log n)");
  cmd->add_option("--starts", flags.starts, "Optimizer starting points")->capture_default_str();
  cmd->add_option("--max-iter", flags.max_iter, "Iterations per start")->capture_default_str();
  cmd->add_option("--contrast", flags.contrast, "Objective: plugin or ustat")
    ->check(CLI::IsMember({ "plugin", "ustat" }))
    ->capture_default_str();
}

ContrastConfig contrast_config(const FitFlags& flags, std::size_t n)
{
  return default_contrast_config(n, flags.trunc_h, flags.weight_nodes, flags.cutoff,
                                 contrast_kind_from_string(flags.contrast));
}

FitConfig fit_config(const FitFlags& flags)
{
  FitConfig cfg;
  cfg.starts = flags.starts;
  cfg.max_iter = flags.max_iter;
  return cfg;
}

Input load(const std::string& path)
{
  std::string bytes = read_file(path);
  Sample sample(parse_numeric_column(bytes, path));
  return { path, std::move(bytes), std::move(sample) };
}

std::string utc_timestamp()
{
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json manifest(const std::string& subcommand,
              const Input* input,
              Json config,
              std::optional<std::uint64_t> seed,
              bool stamp)
{
  Json m = { { "subcommand", subcommand }, { "software", "symmix" }, { "version", SYMMIX_VERSION } };
  if (input) {
    m["input"] = { { "path", input->path },
                   { "fnv1a64", fnv1a64_hex(input->bytes) },
                   { "n", input->sample.size() } };
  }
  m["config"] = std::move(config);
  if (seed)
    m["seed"] = *seed;
  if (stamp)
    m["timestamp"] = utc_timestamp();
  return m;
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw Error(ErrorCode::bad_input, "cannot write '" + path + "'");
  file << text;
  if (!file)
    throw Error(ErrorCode::bad_input, "write failed for '" + path + "'");
}

double parse_number(const std::string& token, const std::string& what)
{
  double value = 0.0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
    throw Error(ErrorCode::bad_input, what + ": not a number '" + token + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep)
{
  std::vector<std::string> parts;
  std::stringstream stream(text);
  for (std::string part; std::getline(stream, part, sep);)
    parts.push_back(part);
  return parts;
}

EuclideanParam parse_triple(const std::string& text, const std::string& what)
{
  const auto parts = split(text, ',');
  if (parts.size() != 3)
    throw Error(ErrorCode::bad_input, what + " expects p,alpha,beta");
  return { parse_number(parts[0], what), parse_number(parts[1], what), parse_number(parts[2], what) };
}

//! "p,alpha,beta" or the path of a JSON document holding a theta.
EuclideanParam parse_theta(const std::string& text)
{
  if (std::count(text.begin(), text.end(), ',') == 2)
    return parse_triple(text, "--theta");
  Json doc;
  try {
    doc = Json::parse(read_file(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::bad_input, "--theta: " + std::string(e.what()));
  }
  return theta_from_json(doc.contains("result") ? doc["result"] : doc);
}

struct Range
{
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

//! "lo:hi:count" or three separate tokens.
Range parse_range(const std::vector<std::string>& tokens, const std::string& what)
{
  std::vector<std::string> parts = tokens;
  if (tokens.size() == 1)
    parts = split(tokens[0], ':');
  if (parts.size() != 3)
    throw Error(ErrorCode::bad_input, what + " expects lo:hi:count");
  const double count = parse_number(parts[2], what);
  if (!(count >= 1.0) || count != std::floor(count))
    throw Error(ErrorCode::bad_input, what + ": count must be a positive integer");
  return { parse_number(parts[0], what), parse_number(parts[1], what), static_cast<std::size_t>(count) };
}

std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& flag)
{
  if (flag)
    return flag;
  if (const char* env = std::getenv("SYMMIX_SEED")) {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw Error(ErrorCode::bad_input, "SYMMIX_SEED is not an unsigned integer");
    return value;
  }
  return std::nullopt;
}

int exit_code_for(ErrorCode code)
{
  switch (code) {
    case ErrorCode::degenerate_fit:
    case ErrorCode::singular_information:
      return exit_degenerate;
    case ErrorCode::empty_positive_part:
      return exit_density;
    default:
      return exit_input;
  }
}

Json fit_manifest_config(const FitConfig& cfg, const ContrastConfig& ccfg)
{
  return { { "fit", as_json(cfg) }, { "contrast", as_json(ccfg, false) } };
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Semiparametric two-component symmetric mixtures: estimation, deconvolution, "
                "simulation" };
  app.name(args.empty() ? "symmix" : args[0]);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SYMMIX_VERSION));
  bool stamp = false;
  app.add_flag("--stamp", stamp, "Record a UTC timestamp in the manifest");

  // fit
  FitFlags fit_flags;
  std::string fit_csv, fit_out;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate (p, alpha, beta) from a one-column CSV");
  fit_cmd->add_option("csv", fit_csv, "Input data")->required();
  fit_cmd->add_option("--out", fit_out, "Also write the JSON result here");
  add_fit_flags(fit_cmd, fit_flags);

  // density
  FitFlags dens_flags;
  std::string dens_csv, dens_out, dens_meta, dens_theta;
  std::optional<double> bandwidth;
  std::vector<std::string> grid_tokens;
  bool loo = false;
  auto* dens_cmd = app.add_subcommand("density", "Deconvolution estimate of the component density");
  dens_cmd->add_option("csv", dens_csv, "Input data")->required();
  dens_cmd->add_option("--bandwidth", bandwidth, "Kernel bandwidth; default 2 n^(-1/4)");
  dens_cmd->add_option("--grid", grid_tokens, "Evaluation grid lo:hi:n (or three values)")
    ->expected(1, 3)
    ->allow_extra_args(false);
  dens_cmd->add_option("--theta", dens_theta, "p,alpha,beta or a fit JSON file; skips fitting");
  dens_cmd->add_flag("--loo", loo, "Use leave-one-out parameter estimates");
  dens_cmd->add_option("--out", dens_out, "CSV output (default: stdout)");
  dens_cmd->add_option("--meta", dens_meta, "Metadata JSON (default: <out>.json)");
  add_fit_flags(dens_cmd, dens_flags);

  // simulate
  FitFlags sim_flags;
  std::string family = "gauss", theta0_text = "0.25,-1,2", sim_out, sim_archive;
  double lambda = 0.5;
  std::size_t sim_n = 100, replications = 100, jobs = 1;
  std::optional<std::uint64_t> seed_flag;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of the estimator");
  sim_cmd->add_option("--family", family, "gauss, cauchy, laplace or asym_gauss_mix")
    ->capture_default_str();
  sim_cmd->add_option("--lambda", lambda, "Weight of asym_gauss_mix")->capture_default_str();
  sim_cmd->add_option("--theta0", theta0_text, "True p,alpha,beta")->capture_default_str();
  sim_cmd->add_option("--n", sim_n, "Sample size")->capture_default_str();
  sim_cmd->add_option("--M", replications, "Replications")->capture_default_str();
  sim_cmd->add_option("--seed", seed_flag, "64-bit seed (fallback: SYMMIX_SEED, then 1)");
  sim_cmd->add_option("--jobs", jobs, "Worker threads (0: all cores)")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "Table CSV (default: stdout)");
  sim_cmd->add_option("--archive", sim_archive, "Replication archive JSON (default: <out>.json)");
  add_fit_flags(sim_cmd, sim_flags);

  // scan
  FitFlags scan_flags;
  std::string scan_csv, scan_param, scan_theta, scan_out;
  std::vector<std::string> range_tokens;
  auto* scan_cmd = app.add_subcommand("scan", "Profile of the empirical contrast along one coordinate");
  scan_cmd->add_option("csv", scan_csv, "Input data")->required();
  scan_cmd->add_option("--param", scan_param, "p, alpha or beta")
    ->required()
    ->check(CLI::IsMember({ "p", "alpha", "beta" }));
  scan_cmd->add_option("--range", range_tokens, "lo:hi:steps (or three values)")
    ->required()
    ->expected(1, 3)
    ->allow_extra_args(false);
  scan_cmd->add_option("--theta", scan_theta, "Base point p,alpha,beta or fit JSON; default: fit");
  scan_cmd->add_option("--out", scan_out, "CSV output (default: stdout)");
  add_fit_flags(scan_cmd, scan_flags);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*fit_cmd) {
      const Input input = load(fit_csv);
      const FitConfig cfg = fit_config(fit_flags);
      const ContrastConfig ccfg = contrast_config(fit_flags, input.sample.size());
      const FitResult result = fit(input.sample, cfg, ccfg);
      const Json doc = { { "manifest",
                           manifest("fit", &input, fit_manifest_config(cfg, ccfg), std::nullopt, stamp) },
                         { "result", as_json(result) } };
      const std::string text = doc.dump(2) + "\n";
      out << text;
      if (!fit_out.empty())
        write_file(fit_out, text);
      return exit_ok;
    }

    if (*dens_cmd) {
      const Input input = load(dens_csv);
      const Sample& sample = input.sample;
      const FitConfig cfg = fit_config(dens_flags);
      const ContrastConfig ccfg = contrast_config(dens_flags, sample.size());
      EuclideanParam theta;
      if (dens_theta.empty())
        theta = fit(sample, cfg, ccfg).theta_hat;
      else
        theta = canonicalize(parse_theta(dens_theta), cfg.box);

      DensityConfig dcfg;
      dcfg.bandwidth = bandwidth ? *bandwidth : default_bandwidth(sample.size());
      if (grid_tokens.empty()) {
        dcfg.grid = default_grid(sample, theta, dcfg.bandwidth);
      } else {
        const Range r = parse_range(grid_tokens, "--grid");
        dcfg.grid = { r.lo, r.hi, r.count };
      }
      dcfg.theta_mode = loo ? ThetaMode::leave_one_out : ThetaMode::full_sample;
      validate(dcfg);

      DensityCurve curve;
      if (loo) {
        const auto thetas = leave_one_out(sample, theta, cfg, ccfg);
        curve = estimate_density(sample, thetas, dcfg);
      } else {
        curve = estimate_density(sample, theta, dcfg);
      }
      const std::vector<double> g = estimate_g(sample, dcfg);
      const std::vector<double> recon = reconstruct_mixture(curve, theta);
      double g_max = 0.0, gap = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        g_max = std::max(g_max, g[i]);
        gap = std::max(gap, std::abs(recon[i] - g[i]));
      }

      const std::string csv = density_csv(curve, g, recon);
      Json config = fit_manifest_config(cfg, ccfg);
      config["density"] = { { "kernel", std::string(to_string(dcfg.kernel)) },
                            { "bandwidth", dcfg.bandwidth },
                            { "grid", { dcfg.grid.x_min, dcfg.grid.x_max, dcfg.grid.points } },
                            { "theta_mode", std::string(to_string(dcfg.theta_mode)) } };
      if (!dens_theta.empty())
        config["theta_source"] = dens_theta;
      const Json meta = {
        { "manifest", manifest("density", &input, config, std::nullopt, stamp) },
        { "theta", as_json(theta) },
        { "bandwidth", curve.bandwidth },
        { "grid", { { "x_min", dcfg.grid.x_min }, { "x_max", dcfg.grid.x_max }, { "points", dcfg.grid.points } } },
        { "mass_kept", curve.mass_kept },
        { "renormalization_factor", 1.0 / curve.mass_kept },
        { "frequency_nodes", curve.frequency_nodes },
        { "frequency_cutoff", curve.frequency_cutoff },
        { "reconstruction_rel_error", g_max > 0.0 ? gap / g_max : 0.0 },
      };
      if (dens_out.empty())
        out << csv;
      else
        write_file(dens_out, csv);
      const std::string meta_path = !dens_meta.empty() ? dens_meta : (dens_out.empty() ? "" : dens_out + ".json");
      if (!meta_path.empty())
        write_file(meta_path, meta.dump(2) + "\n");
      err << "mass_kept=" << format_number(curve.mass_kept)
          << " reconstruction_rel_error=" << format_number(g_max > 0.0 ? gap / g_max : 0.0) << "\n";
      return exit_ok;
    }

    if (*sim_cmd) {
      ScenarioSpec spec;
      spec.family = noise_family_from_string(family);
      spec.lambda = lambda;
      spec.theta0 = parse_triple(theta0_text, "--theta0");
      spec.n = sim_n;
      spec.replications = replications;
      spec.seed = resolve_seed(seed_flag).value_or(1);
      validate(spec);
      const FitConfig cfg = fit_config(sim_flags);
      const ContrastConfig ccfg = contrast_config(sim_flags, spec.n);
      const MCSummary summary = run_scenario(spec, cfg, ccfg, jobs);

      Json config = fit_manifest_config(cfg, ccfg);
      config["scenario"] = as_json(spec);
      const Json archive = { { "manifest", manifest("simulate", nullptr, config, spec.seed, stamp) },
                             { "summary", as_json(summary) } };
      const std::string table = mc_table_csv(summary);
      if (sim_out.empty())
        out << table;
      else
        write_file(sim_out, table);
      const std::string archive_path =
        !sim_archive.empty() ? sim_archive : (sim_out.empty() ? "" : sim_out + ".json");
      if (!archive_path.empty())
        write_file(archive_path, archive.dump(2) + "\n");
      return exit_ok;
    }

    if (*scan_cmd) {
      const Input input = load(scan_csv);
      const FitConfig cfg = fit_config(scan_flags);
      const ContrastConfig ccfg = contrast_config(scan_flags, input.sample.size());
      const EuclideanParam base =
        scan_theta.empty() ? fit(input.sample, cfg, ccfg).theta_hat : parse_theta(scan_theta);
      const Range r = parse_range(range_tokens, "--range");
      const EmpiricalContrast contrast(input.sample, ccfg);

      std::string csv = "value,S_n\n";
      for (std::size_t i = 0; i < r.count; ++i) {
        const double v =
          r.count == 1 ? r.lo : r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(r.count - 1);
        EuclideanParam theta = base;
        (scan_param == "p" ? theta.p : scan_param == "alpha" ? theta.alpha : theta.beta) = v;
        csv += format_number(v) + ',' + format_number(contrast.value(theta)) + '\n';
      }
      Json config = fit_manifest_config(cfg, ccfg);
      config["scan"] = { { "param", scan_param },
                         { "range", { r.lo, r.hi, r.count } },
                         { "base", as_json(base) } };
      if (scan_out.empty()) {
        out << csv;
      } else {
        write_file(scan_out, csv);
        write_file(scan_out + ".json",
                   Json{ { "manifest", manifest("scan", &input, config, std::nullopt, stamp) } }.dump(2) + "\n");
      }
      return exit_ok;
    }
  } catch (const Error& e) {
    err << "symmix: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "symmix: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}

} // namespace symmix::cli
