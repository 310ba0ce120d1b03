#pragma once

// Experiment registry: each named experiment reproduces one scaling study as
// a deterministic table. Rows re-run bit-identically for a fixed config and
// build; metadata (including wall time) is advisory and excluded from that
// guarantee.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "conetest/cones.hpp"
#include "conetest/errors.hpp"
#include "conetest/geometry.hpp"
#include "conetest/lowerbound.hpp"
#include "conetest/testing.hpp"

namespace conetest {

inline constexpr const char* kBuildId = "conetest 1.0.0";

struct ExperimentConfig {
  std::string experiment;
  std::vector<int> dims;
  double sigma = 1.0;
  double rho = 0.1;
  double alpha = M_PI / 4.0;
  std::int64_t n = 0;  // 0 = per-experiment default
  std::uint64_t seed = 1;
  std::string out;            // empty = stdout
  std::string format = "csv";
  std::string cone;           // optional cone label for geometry-report
};

inline const std::set<std::string>& experiment_names() {
  static const std::set<std::string> names{
      "subspace-scaling", "circular",       "orthant-scaling",
      "monotone-scaling", "product-suboptimality", "kpiece",
      "concentration",    "lower-bounds",   "geometry-report"};
  return names;
}

// Strict validation: unknown keys rejected, first offending field reported.
inline ExperimentConfig validate_config(const nlohmann::ordered_json& raw) {
  static const std::vector<std::string> allowed{
      "experiment", "dims", "sigma", "rho",  "alpha",
      "n",          "seed", "out",   "format", "cone"};
  if (!raw.is_object()) throw ConfigError("config: must be a JSON object");
  for (const auto& item : raw.items()) {
    bool ok = false;
    for (const auto& k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) throw ConfigError(item.key() + ": unknown field");
  }
  ExperimentConfig cfg;
  if (!raw.contains("experiment") || !raw.at("experiment").is_string())
    throw ConfigError("experiment: name required");
  cfg.experiment = raw.at("experiment").get<std::string>();
  if (experiment_names().count(cfg.experiment) == 0)
    throw ConfigError("experiment: unknown name '" + cfg.experiment + "'");
  if (!raw.contains("dims") || !raw.at("dims").is_array() || raw.at("dims").empty())
    throw ConfigError("dims: nonempty required");
  for (const auto& v : raw.at("dims")) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      throw ConfigError("dims: entries must be positive integers");
    cfg.dims.push_back(v.get<int>());
  }
  for (std::size_t i = 0; i + 1 < cfg.dims.size(); ++i)
    if (cfg.dims[i] >= cfg.dims[i + 1])
      throw ConfigError("dims: must be strictly increasing");
  if (raw.contains("sigma")) {
    if (!raw.at("sigma").is_number()) throw ConfigError("sigma: number required");
    cfg.sigma = raw.at("sigma").get<double>();
  }
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma))
    throw ConfigError("sigma: must be a finite positive number");
  if (raw.contains("rho")) {
    if (!raw.at("rho").is_number()) throw ConfigError("rho: number required");
    cfg.rho = raw.at("rho").get<double>();
  }
  if (!(cfg.rho > 0.0 && cfg.rho < 0.5)) throw ConfigError("rho ∈ (0, 0.5)");
  if (raw.contains("alpha")) {
    if (!raw.at("alpha").is_number()) throw ConfigError("alpha: number required");
    cfg.alpha = raw.at("alpha").get<double>();
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < M_PI_2))
    throw ConfigError("alpha: must lie in (0, pi/2)");
  if (raw.contains("n")) {
    if (!raw.at("n").is_number_integer() || raw.at("n").get<std::int64_t>() < 2)
      throw ConfigError("n: integer >= 2 required");
    cfg.n = raw.at("n").get<std::int64_t>();
  }
  if (raw.contains("seed")) {
    if (!raw.at("seed").is_number_integer())
      throw ConfigError("seed: integer required");
    cfg.seed = raw.at("seed").get<std::uint64_t>();
  }
  if (raw.contains("out")) {
    if (!raw.at("out").is_string()) throw ConfigError("out: string required");
    cfg.out = raw.at("out").get<std::string>();
  }
  if (raw.contains("format")) {
    if (!raw.at("format").is_string()) throw ConfigError("format: string required");
    cfg.format = raw.at("format").get<std::string>();
  }
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("format: must be csv or json");
  if (raw.contains("cone")) {
    if (!raw.at("cone").is_string()) throw ConfigError("cone: string required");
    cfg.cone = raw.at("cone").get<std::string>();
    static const std::set<std::string> cones{"orthant", "monotone", "circular",
                                             "subspace", "product"};
    if (cones.count(cfg.cone) == 0)
      throw ConfigError("cone: unknown cone label '" + cfg.cone + "'");
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

struct ExperimentReport {
  std::vector<std::string> columns;
  std::vector<nlohmann::ordered_json> rows;
  nlohmann::ordered_json metadata;
  bool any_error = false;
};

namespace detail {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  return format_number(v.get<double>());
}

inline nlohmann::ordered_json config_echo(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["experiment"] = cfg.experiment;
  j["dims"] = cfg.dims;
  j["sigma"] = cfg.sigma;
  j["rho"] = cfg.rho;
  j["alpha"] = cfg.alpha;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["format"] = cfg.format;
  if (!cfg.cone.empty()) j["cone"] = cfg.cone;
  return j;
}

struct RowBuilder {
  nlohmann::ordered_json row = nlohmann::ordered_json::object();
  RowBuilder& set(const std::string& k, nlohmann::ordered_json v) {
    row[k] = std::move(v);
    return *this;
  }
};

}  // namespace detail

inline std::string report_to_csv(const ExperimentReport& rep) {
  std::string out;
  out += "# config: " + rep.metadata.at("config").dump() + "\n";
  out += "# build: " + rep.metadata.at("build").get<std::string>() + "\n";
  out += "# wall_time_s: " +
         detail::format_number(rep.metadata.at("wall_time_s").get<double>()) +
         "\n";
  for (std::size_t c = 0; c < rep.columns.size(); ++c) {
    if (c) out += ",";
    out += rep.columns[c];
  }
  out += "\n";
  for (const auto& row : rep.rows) {
    for (std::size_t c = 0; c < rep.columns.size(); ++c) {
      if (c) out += ",";
      if (row.contains(rep.columns[c]))
        out += detail::format_cell(row.at(rep.columns[c]));
    }
    out += "\n";
  }
  return out;
}

inline std::string report_to_json(const ExperimentReport& rep) {
  nlohmann::ordered_json j;
  j["metadata"] = rep.metadata;
  j["columns"] = rep.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) j["rows"].push_back(row);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Experiment bodies
// ---------------------------------------------------------------------------

namespace detail {

struct RadiusRowSpec {
  std::string normalized_column;  // empty = none
  std::function<double(int)> normalizer;
};

inline std::shared_ptr<const ConePair> scaling_pair(const std::string& name,
                                                    int d, double alpha,
                                                    std::uint64_t seed) {
  if (name == "subspace-scaling")
    return make_cone_pair(make_zero_cone(d), make_full_space(d), seed);
  if (name == "orthant-scaling")
    return make_cone_pair(make_zero_cone(d), make_orthant(d), seed);
  if (name == "monotone-scaling")
    return make_cone_pair(make_zero_cone(d), make_monotone(d), seed);
  if (name == "circular")
    return make_cone_pair(make_zero_cone(d), make_circular(alpha, d), seed);
  throw ConfigError("unknown scaling experiment '" + name + "'");
}

inline void run_scaling_rows(const ExperimentConfig& cfg,
                             const RadiusRowSpec& spec, ExperimentReport& rep) {
  rep.columns = {"d", "radius_sq", "bracket_lo", "bracket_hi"};
  if (!spec.normalized_column.empty())
    rep.columns.push_back(spec.normalized_column);
  rep.columns.insert(rep.columns.end(), {"seed", "n", "status"});
  const std::int64_t n = cfg.n > 0 ? cfg.n : 4000;
  for (const int d : cfg.dims) {
    detail::RowBuilder rb;
    rb.set("d", d).set("seed", cfg.seed).set("n", n);
    try {
      auto pair = scaling_pair(cfg.experiment, d, cfg.alpha, cfg.seed);
      const auto mean = estimate_mean_projection(pair->outer,
                                                 std::min<std::int64_t>(n, 2000),
                                                 cfg.seed);
      const auto dirs = default_directions(pair->outer, mean.mean, 4, cfg.seed);
      TestProblem problem{pair, cfg.sigma, 0.0, cfg.rho};
      const RadiusEstimate r = glrt_radius(problem, dirs, 0.0, 0.0, 8, n, cfg.seed);
      rb.set("radius_sq", r.radius_sq)
          .set("bracket_lo", r.bracket_lo)
          .set("bracket_hi", r.bracket_hi);
      if (!spec.normalized_column.empty())
        rb.set(spec.normalized_column, r.radius_sq / spec.normalizer(d));
      rb.set("status", "ok");
    } catch (const NumericalError& e) {
      rb.set("status", std::string("error: ") + e.what());
      rep.any_error = true;
    }
    rep.rows.push_back(std::move(rb.row));
  }
}

inline void run_product_suboptimality(const ExperimentConfig& cfg,
                                      ExperimentReport& rep) {
  rep.columns = {"d",
                 "glr_radius_sq",
                 "trunc_radius_sq",
                 "ratio",
                 "glr_bracket_lo",
                 "glr_bracket_hi",
                 "trunc_bracket_lo",
                 "trunc_bracket_hi",
                 "seed",
                 "n",
                 "status"};
  const std::int64_t n = cfg.n > 0 ? cfg.n : 4000;
  for (const int d : cfg.dims) {
    detail::RowBuilder rb;
    rb.set("d", d).set("seed", cfg.seed).set("n", n);
    try {
      if (d < 3) throw ConfigError("product experiment: need d >= 3");
      auto cone = make_circular_cross_line(cfg.alpha, d);
      auto pair = make_cone_pair(make_zero_cone(d), std::move(cone), cfg.seed);
      const auto mean = estimate_mean_projection(pair->outer,
                                                 std::min<std::int64_t>(n, 2000),
                                                 cfg.seed);
      const auto dirs = default_directions(pair->outer, mean.mean, 4, cfg.seed);
      TestProblem problem{pair, cfg.sigma, 0.0, cfg.rho};
      const RadiusEstimate glr = glrt_radius(problem, dirs, 0.0, 0.0, 8, n, cfg.seed);
      const RadiusEstimate trunc = truncation_radius(problem, {0, d - 1}, dirs,
                                                     0.0, 0.0, 8, n, cfg.seed);
      rb.set("glr_radius_sq", glr.radius_sq)
          .set("trunc_radius_sq", trunc.radius_sq)
          .set("ratio", glr.radius_sq / trunc.radius_sq)
          .set("glr_bracket_lo", glr.bracket_lo)
          .set("glr_bracket_hi", glr.bracket_hi)
          .set("trunc_bracket_lo", trunc.bracket_lo)
          .set("trunc_bracket_hi", trunc.bracket_hi)
          .set("status", "ok");
    } catch (const NumericalError& e) {
      rb.set("status", std::string("error: ") + e.what());
      rep.any_error = true;
    }
    rep.rows.push_back(std::move(rb.row));
  }
}

inline Eigen::VectorXd kpiece_base_point(int d, int k) {
  Eigen::VectorXd theta(d);
  const int base = d / k;
  const int extra = d % k;
  int pos = 0;
  for (int block = 0; block < k; ++block) {
    const int len = base + (block < extra ? 1 : 0);
    for (int j = 0; j < len; ++j) theta[pos++] = double(block);
  }
  return theta;
}

inline void run_kpiece(const ExperimentConfig& cfg, ExperimentReport& rep) {
  rep.columns = {"k",          "d", "radius_sq", "bracket_lo",
                 "bracket_hi", "seed", "n", "status"};
  const int d = 256;
  const std::int64_t n = cfg.n > 0 ? cfg.n : 4000;
  for (const int k : cfg.dims) {
    detail::RowBuilder rb;
    rb.set("k", k).set("d", d).set("seed", cfg.seed).set("n", n);
    try {
      if (k < 1 || k > d)
        throw ConfigError("dims: kpiece requires k in [1, " + std::to_string(d) + "]");
      const RadiusEstimate r =
          kpiece_radius(kpiece_base_point(d, k), cfg.sigma, cfg.rho, n, cfg.seed);
      rb.set("radius_sq", r.radius_sq)
          .set("bracket_lo", r.bracket_lo)
          .set("bracket_hi", r.bracket_hi)
          .set("status", "ok");
    } catch (const NumericalError& e) {
      rb.set("status", std::string("error: ") + e.what());
      rep.any_error = true;
    }
    rep.rows.push_back(std::move(rb.row));
  }
}

inline void run_concentration(const ExperimentConfig& cfg,
                              ExperimentReport& rep) {
  rep.columns = {"cone",  "d",        "t",         "upper_tail", "lower_tail",
                 "bound", "width",    "width_se",  "variance",   "exceedance",
                 "exceedance_se",     "seed",      "n",          "status"};
  const std::int64_t n = cfg.n > 0 ? cfg.n : 100000;
  for (const int d : cfg.dims) {
    for (const std::string label : {"orthant", "monotone"}) {
      try {
        const ConeDescriptor cone =
            label == "orthant" ? make_orthant(d) : make_monotone(d);
        const ConcentrationReport rep_c = concentration_report(cone, n, cfg.seed);
        const McEstimate exceed = median_exceedance(cone, n, cfg.seed);
        for (const TailRow& tr : rep_c.tails) {
          detail::RowBuilder rb;
          rb.set("cone", label)
              .set("d", d)
              .set("t", tr.t)
              .set("upper_tail", tr.upper)
              .set("lower_tail", tr.lower)
              .set("bound", tr.bound)
              .set("width", rep_c.width.mean)
              .set("width_se", rep_c.width.se)
              .set("variance", rep_c.variance)
              .set("exceedance", exceed.mean)
              .set("exceedance_se", exceed.se)
              .set("seed", cfg.seed)
              .set("n", n)
              .set("status", "ok");
          rep.rows.push_back(std::move(rb.row));
        }
      } catch (const NumericalError& e) {
        detail::RowBuilder rb;
        rb.set("cone", label).set("d", d).set("seed", cfg.seed).set("n", n)
            .set("status", std::string("error: ") + e.what());
        rep.any_error = true;
        rep.rows.push_back(std::move(rb.row));
      }
    }
  }
}

inline void run_lower_bounds(const ExperimentConfig& cfg,
                             ExperimentReport& rep) {
  rep.columns = {"prior", "d",    "epsilon", "moment",     "moment_se",
                 "error_lb", "method", "heavy_tail", "seed", "n",
                 "at_radius", "status"};
  const std::int64_t n = cfg.n > 0 ? cfg.n : 2000;
  for (const int d : cfg.dims) {
    for (const std::string prior_label :
         {"orthant-sparse", "monotone-fg", "projection"}) {
      try {
        PriorSampler sampler = [&]() {
          if (prior_label == "orthant-sparse")
            return PriorSampler::orthant_sparse(d);
          if (prior_label == "monotone-fg") return build_monotone_fg(d, false);
          const ConeDescriptor circ = make_circular(cfg.alpha, std::max(d, 2));
          const WidthEstimate w = estimate_width(circ, 20000, cfg.seed);
          return PriorSampler::projection_based(circ, w.norm.mean);
        }();
        const LowerRadiusEstimate lr =
            minimax_lower_radius(sampler, cfg.rho, n, cfg.seed);
        for (const double f : {0.5, 0.75, 1.0, 1.25, 1.5}) {
          const double eps = f * lr.epsilon;
          const LowerBoundPoint pt =
              chi2_error_lower_bound(sampler, eps, n, cfg.seed);
          detail::RowBuilder rb;
          rb.set("prior", prior_label)
              .set("d", d)
              .set("epsilon", pt.epsilon)
              .set("moment", pt.moment)
              .set("moment_se", pt.moment_se)
              .set("error_lb", pt.error_lb)
              .set("method", moment_method_name(pt.method))
              .set("heavy_tail", pt.heavy_tail)
              .set("seed", cfg.seed)
              .set("n", pt.n)
              .set("at_radius", f == 1.0)
              .set("status", "ok");
          rep.rows.push_back(std::move(rb.row));
        }
      } catch (const NumericalError& e) {
        detail::RowBuilder rb;
        rb.set("prior", prior_label).set("d", d).set("seed", cfg.seed).set("n", n)
            .set("status", std::string("error: ") + e.what());
        rep.any_error = true;
        rep.rows.push_back(std::move(rb.row));
      }
    }
  }
}

inline std::vector<ConeDescriptor> geometry_cones(const ExperimentConfig& cfg,
                                                  int d) {
  std::vector<ConeDescriptor> cones;
  auto add = [&](const std::string& label) {
    if (label == "orthant") cones.push_back(make_orthant(d));
    if (label == "monotone") cones.push_back(make_monotone(d));
    if (label == "circular" && d >= 2) cones.push_back(make_circular(cfg.alpha, d));
    if (label == "subspace")
      cones.push_back(make_coordinate_subspace(d, std::max(1, d / 4)));
    if (label == "product" && d >= 3)
      cones.push_back(make_circular_cross_line(cfg.alpha, d));
  };
  if (!cfg.cone.empty()) {
    add(cfg.cone);
    if (cones.empty())
      throw ConfigError("cone: label '" + cfg.cone + "' needs a larger d");
  } else {
    for (const std::string label :
         {"orthant", "monotone", "circular", "subspace", "product"})
      add(label);
  }
  return cones;
}

inline void run_geometry_report(const ExperimentConfig& cfg,
                                ExperimentReport& rep) {
  rep.columns = {"cone",
                 "d",
                 "width",
                 "width_se",
                 "width_sq",
                 "mean_proj_norm",
                 "mean_proj_se_norm",
                 "inf_inner",
                 "delta_lr_sq",
                 "lr_ratio_infinite",
                 "delta_opt_sq",
                 "opt_ratio_infinite",
                 "seed",
                 "n",
                 "status"};
  const std::int64_t n = cfg.n > 0 ? cfg.n : 100000;
  for (const int d : cfg.dims) {
    for (const ConeDescriptor& cone : geometry_cones(cfg, d)) {
      detail::RowBuilder rb;
      rb.set("cone", cone_label(cone)).set("d", d).set("seed", cfg.seed).set("n", n);
      try {
        const GeometrySummary s = summarize_geometry(cone, n, cfg.seed);
        rb.set("width", s.width.norm.mean)
            .set("width_se", s.width.norm.se)
            .set("width_sq", s.width.norm_sq.mean)
            .set("mean_proj_norm", s.mean_projection.norm)
            .set("mean_proj_se_norm", s.mean_projection.se_norm)
            .set("inf_inner", s.inf_inner.value == kInf
                                  ? nlohmann::ordered_json()
                                  : nlohmann::ordered_json(s.inf_inner.value))
            .set("delta_lr_sq", s.lr.value)
            .set("lr_ratio_infinite", s.lr.ratio_infinite)
            .set("delta_opt_sq", s.opt.value)
            .set("opt_ratio_infinite", s.opt.ratio_infinite)
            .set("status", "ok");
      } catch (const NumericalError& e) {
        rb.set("status", std::string("error: ") + e.what());
        rep.any_error = true;
      }
      rep.rows.push_back(std::move(rb.row));
    }
  }
}

}  // namespace detail

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  if (cfg.experiment == "subspace-scaling" || cfg.experiment == "orthant-scaling") {
    detail::run_scaling_rows(
        cfg, {"radius_sq_over_sqrt_d", [](int d) { return std::sqrt(double(d)); }},
        rep);
  } else if (cfg.experiment == "monotone-scaling") {
    detail::run_scaling_rows(cfg,
                             {"radius_sq_over_sqrt_log_d",
                              [](int d) { return std::sqrt(std::log(double(d))); }},
                             rep);
  } else if (cfg.experiment == "circular") {
    detail::run_scaling_rows(cfg, {"", {}}, rep);
  } else if (cfg.experiment == "product-suboptimality") {
    detail::run_product_suboptimality(cfg, rep);
  } else if (cfg.experiment == "kpiece") {
    detail::run_kpiece(cfg, rep);
  } else if (cfg.experiment == "concentration") {
    detail::run_concentration(cfg, rep);
  } else if (cfg.experiment == "lower-bounds") {
    detail::run_lower_bounds(cfg, rep);
  } else if (cfg.experiment == "geometry-report") {
    detail::run_geometry_report(cfg, rep);
  } else {
    throw ConfigError("experiment: unknown name '" + cfg.experiment + "'");
  }
  const auto end = std::chrono::steady_clock::now();
  rep.metadata["config"] = detail::config_echo(cfg);
  rep.metadata["build"] = kBuildId;
  rep.metadata["wall_time_s"] =
      std::chrono::duration<double>(end - start).count();
  return rep;
}

inline void write_report(const ExperimentReport& rep,
                         const ExperimentConfig& cfg) {
  const std::string body =
      cfg.format == "json" ? report_to_json(rep) : report_to_csv(rep);
  if (cfg.out.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("out: cannot open '" + cfg.out + "' for writing");
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
}

}  // namespace conetest
