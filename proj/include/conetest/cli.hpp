#pragma once

// CLI wiring: subcommands `project`, `geometry`, `radius`, `lower-bound`, and
// `experiment <name>`. Exit codes: 0 success, 2 malformed configuration,
// 3 numerical failure (including any failed row in an experiment table).

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conetest/cones.hpp"
#include "conetest/errors.hpp"
#include "conetest/experiments.hpp"
#include "conetest/geometry.hpp"
#include "conetest/lowerbound.hpp"
#include "conetest/testing.hpp"

namespace conetest {

namespace detail {

inline Eigen::VectorXd parse_point(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ConfigError("point: cannot parse '" + tok + "' as a number");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
      ++used;
    if (used != tok.size())
      throw ConfigError("point: cannot parse '" + tok + "' as a number");
    vals.push_back(v);
  }
  if (vals.empty()) throw ConfigError("point: at least one coordinate required");
  return Eigen::Map<const Eigen::VectorXd>(vals.data(),
                                           static_cast<Eigen::Index>(vals.size()));
}

// Cone arguments accept three forms:
//   @path            JSON descriptor loaded from a file
//   { ... }          inline JSON descriptor
//   label:params     shorthand: orthant:d, monotone:d, circular:alpha:d,
//                    subspace:d:k, product-line:alpha:d, zero:d, full:d
inline ConeDescriptor parse_cone_arg(const std::string& arg, std::uint64_t seed) {
  if (arg.empty()) throw ConfigError("cone: empty argument");
  if (arg[0] == '@') {
    std::ifstream f(arg.substr(1));
    if (!f) throw ConfigError("cone: cannot open '" + arg.substr(1) + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("cone: ") + e.what());
    }
    return cone_from_json(j, seed);
  }
  if (arg[0] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(arg);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("cone: ") + e.what());
    }
    return cone_from_json(j, seed);
  }
  std::vector<std::string> parts;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  auto want = [&](std::size_t k) {
    if (parts.size() != k)
      throw ConfigError("cone: shorthand '" + parts[0] + "' takes " +
                        std::to_string(k - 1) + " parameter(s)");
  };
  auto to_int = [](const std::string& s) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw ConfigError("cone: cannot parse '" + s + "' as an integer");
    }
  };
  auto to_double = [](const std::string& s) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw ConfigError("cone: cannot parse '" + s + "' as a number");
    }
  };
  const std::string& label = parts[0];
  if (label == "orthant") {
    want(2);
    return make_orthant(to_int(parts[1]));
  }
  if (label == "monotone") {
    want(2);
    return make_monotone(to_int(parts[1]));
  }
  if (label == "circular") {
    want(3);
    return make_circular(to_double(parts[1]), to_int(parts[2]));
  }
  if (label == "subspace") {
    want(3);
    return make_coordinate_subspace(to_int(parts[1]), to_int(parts[2]));
  }
  if (label == "product-line") {
    want(3);
    return make_circular_cross_line(to_double(parts[1]), to_int(parts[2]));
  }
  if (label == "zero") {
    want(2);
    return make_zero_cone(to_int(parts[1]));
  }
  if (label == "full") {
    want(2);
    return make_full_space(to_int(parts[1]));
  }
  throw ConfigError("cone: unknown shorthand '" + label + "'");
}

inline void print_json(const nlohmann::json& j) {
  const std::string s = j.dump(2) + "\n";
  std::fwrite(s.data(), 1, s.size(), stdout);
}

inline nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace detail

inline int run_project_command(const std::string& cone_arg,
                               const std::string& point_arg,
                               std::uint64_t seed) {
  const ConeDescriptor cone = detail::parse_cone_arg(cone_arg, seed);
  const Eigen::VectorXd y = detail::parse_point(point_arg);
  const Eigen::VectorXd p = project(cone, y);
  const Eigen::VectorXd polar = y - p;  // Moreau complement
  nlohmann::json out;
  out["cone"] = cone_label(cone);
  out["d"] = cone.dim;
  out["point"] = detail::vector_to_json(y);
  out["projection"] = detail::vector_to_json(p);
  out["polar"] = detail::vector_to_json(polar);
  out["norm_sq"] = p.squaredNorm();
  out["inner_product_check"] = p.dot(polar);  // should vanish
  detail::print_json(out);
  return 0;
}

inline int run_geometry_command(const std::string& cone_arg, std::int64_t n,
                                std::uint64_t seed) {
  const ConeDescriptor cone = detail::parse_cone_arg(cone_arg, seed);
  const GeometrySummary s = summarize_geometry(cone, n, seed);
  detail::print_json(geometry_to_json(s));
  return 0;
}

inline int run_radius_command(const std::string& cone_arg,
                              const std::string& inner_arg, double sigma,
                              double rho, std::int64_t n, std::uint64_t seed,
                              int n_dirs) {
  ConeDescriptor outer = detail::parse_cone_arg(cone_arg, seed);
  ConeDescriptor inner = inner_arg.empty()
                             ? make_zero_cone(outer.dim)
                             : detail::parse_cone_arg(inner_arg, seed);
  auto pair = make_cone_pair(std::move(inner), std::move(outer), seed);
  TestProblem problem{pair, sigma, 0.0, rho};
  validate_problem(problem);
  const auto mean = estimate_mean_projection(
      pair->outer, std::min<std::int64_t>(n, 2000), seed);
  const auto dirs = default_directions(pair->outer, mean.mean, n_dirs, seed);
  const RadiusEstimate r = glrt_radius(problem, dirs, 0.0, 0.0, 8, n, seed);
  nlohmann::json out;
  out["cone"] = cone_label(pair->outer);
  out["inner"] = cone_label(pair->inner);
  out["d"] = pair->outer.dim;
  out["sigma"] = sigma;
  out["rho"] = rho;
  out["radius_sq"] = r.radius_sq;
  out["epsilon"] = r.epsilon;
  out["bracket_lo"] = r.bracket_lo;
  out["bracket_hi"] = r.bracket_hi;
  out["error_lo"] = r.error_lo;
  out["error_hi"] = r.error_hi;
  out["expansions"] = r.expansions;
  out["threshold"] = r.at_midpoint.best_threshold;
  out["type1"] = r.at_midpoint.type1.mean;
  out["type2_worst"] = r.at_midpoint.type2_worst.mean;
  out["total"] = r.at_midpoint.total;
  out["directions"] = r.at_midpoint.directions_evaluated;
  out["n"] = n;
  out["seed"] = seed;
  detail::print_json(out);
  return 0;
}

inline int run_lower_bound_command(const std::string& prior, int d, double rho,
                                   double alpha, std::int64_t n,
                                   std::uint64_t seed) {
  PriorSampler sampler = [&]() {
    if (prior == "orthant-sparse") return PriorSampler::orthant_sparse(d);
    if (prior == "monotone-fg") return build_monotone_fg(d, false);
    if (prior == "monotone-fg-centered") return build_monotone_fg(d, true);
    if (prior == "projection") {
      const ConeDescriptor circ = make_circular(alpha, d);
      const WidthEstimate w = estimate_width(circ, 20000, seed);
      return PriorSampler::projection_based(circ, w.norm.mean);
    }
    throw ConfigError("prior: unknown kind '" + prior + "'");
  }();
  const LowerRadiusEstimate lr = minimax_lower_radius(sampler, rho, n, seed);
  nlohmann::json out;
  out["prior"] = prior_kind_name(sampler.kind());
  out["d"] = d;
  out["rho"] = rho;
  out["radius_sq"] = lr.radius_sq;
  out["epsilon"] = lr.epsilon;
  out["bracket_lo"] = lr.bracket_lo;
  out["bracket_hi"] = lr.bracket_hi;
  out["expansions"] = lr.expansions;
  out["moment"] = lr.at_radius.moment;
  out["moment_se"] = lr.at_radius.moment_se;
  out["error_lb"] = lr.at_radius.error_lb;
  out["method"] = moment_method_name(lr.at_radius.method);
  out["heavy_tail"] = lr.at_radius.heavy_tail;
  out["n"] = n;
  out["seed"] = seed;
  detail::print_json(out);
  return 0;
}

inline int run_experiment_command(const std::string& name,
                                  const std::string& config_path,
                                  const CLI::App* cmd,
                                  const std::vector<int>& dims, double sigma,
                                  double rho, double alpha, std::int64_t n,
                                  std::uint64_t seed, const std::string& out,
                                  const std::string& format,
                                  const std::string& cone) {
  nlohmann::ordered_json raw = nlohmann::ordered_json::object();
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw ConfigError("config: cannot open '" + config_path + "'");
    try {
      raw = nlohmann::ordered_json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  raw["experiment"] = name;  // positional name wins over the file
  if (cmd->count("--dims")) raw["dims"] = dims;
  if (cmd->count("--sigma")) raw["sigma"] = sigma;
  if (cmd->count("--rho")) raw["rho"] = rho;
  if (cmd->count("--alpha")) raw["alpha"] = alpha;
  if (cmd->count("--n")) raw["n"] = n;
  if (cmd->count("--seed")) raw["seed"] = seed;
  if (cmd->count("--out")) raw["out"] = out;
  if (cmd->count("--format")) raw["format"] = format;
  if (cmd->count("--cone")) raw["cone"] = cone;
  const ExperimentConfig cfg = validate_config(raw);
  const ExperimentReport rep = run_experiment(cfg);
  write_report(rep, cfg);
  if (rep.any_error) {
    std::fprintf(stderr, "numerical error: one or more rows failed\n");
    return 3;
  }
  return 0;
}

inline int cli_main(int argc, char** argv) {
  CLI::App app{"Gaussian cone-testing geometry harness"};
  app.require_subcommand(1);

  std::string cone_arg, inner_arg, point_arg, prior = "orthant-sparse";
  std::string config_path, out_path, format = "csv", exp_name, cone_label_arg;
  std::vector<int> dims;
  double sigma = 1.0, rho = 0.1, alpha = M_PI / 4.0;
  std::int64_t n = 0;
  std::uint64_t seed = 1;
  int d = 0, n_dirs = 4;

  CLI::App* proj = app.add_subcommand("project", "Project a point onto a cone");
  proj->add_option("--cone", cone_arg,
                   "cone: @file, inline JSON, or label shorthand")
      ->required();
  proj->add_option("--point", point_arg, "comma-separated coordinates")
      ->required();
  proj->add_option("--seed", seed, "seed for induced-pair certification");

  CLI::App* geom = app.add_subcommand(
      "geometry", "Width, mean projection, and critical radii of a cone");
  geom->add_option("--cone", cone_arg, "cone argument")->required();
  geom->add_option("--n", n, "Monte Carlo sample size");
  geom->add_option("--seed", seed, "stream seed");

  CLI::App* rad = app.add_subcommand(
      "radius", "Empirical testing radius of the likelihood-ratio test");
  rad->add_option("--cone", cone_arg, "alternative cone")->required();
  rad->add_option("--inner", inner_arg, "null cone (default: {0})");
  rad->add_option("--sigma", sigma, "noise level");
  rad->add_option("--rho", rho, "target total error in (0, 0.5)");
  rad->add_option("--n", n, "replicates per error evaluation");
  rad->add_option("--seed", seed, "stream seed");
  rad->add_option("--dirs", n_dirs, "number of random alternative directions");

  CLI::App* lb = app.add_subcommand(
      "lower-bound", "Information-theoretic lower bound on the radius");
  lb->add_option("--prior", prior,
                 "orthant-sparse | monotone-fg | monotone-fg-centered | projection");
  lb->add_option("--d", d, "ambient dimension")->required();
  lb->add_option("--rho", rho, "target error level in (0, 1)");
  lb->add_option("--alpha", alpha, "cone angle for the projection prior");
  lb->add_option("--n", n, "Monte Carlo prior pairs");
  lb->add_option("--seed", seed, "stream seed");

  CLI::App* exp = app.add_subcommand("experiment", "Run a named experiment");
  exp->add_option("name", exp_name, "experiment name")->required();
  exp->add_option("--config", config_path, "JSON config file");
  exp->add_option("--dims", dims, "dimension grid")->delimiter(',');
  exp->add_option("--sigma", sigma, "noise level");
  exp->add_option("--rho", rho, "target total error");
  exp->add_option("--alpha", alpha, "circular-cone angle");
  exp->add_option("--n", n, "Monte Carlo size");
  exp->add_option("--seed", seed, "stream seed");
  exp->add_option("--out", out_path, "output path (default: stdout)");
  exp->add_option("--format", format, "csv | json");
  exp->add_option("--cone", cone_label_arg, "cone label for geometry-report");

  try {
    app.parse(argc, argv);
    if (proj->parsed()) return run_project_command(cone_arg, point_arg, seed);
    if (geom->parsed())
      return run_geometry_command(cone_arg, n > 0 ? n : 100000, seed);
    if (rad->parsed())
      return run_radius_command(cone_arg, inner_arg, sigma, rho,
                                n > 0 ? n : 4000, seed, n_dirs);
    if (lb->parsed())
      return run_lower_bound_command(prior, d, rho, alpha, n > 0 ? n : 2000,
                                     seed);
    if (exp->parsed())
      return run_experiment_command(exp_name, config_path, exp, dims, sigma,
                                    rho, alpha, n, seed, out_path, format,
                                    cone_label_arg);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace conetest
