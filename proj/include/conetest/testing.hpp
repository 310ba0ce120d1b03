#pragma once

// GLRT and truncation tests over cone pairs: statistic evaluation, exhaustive
// threshold sweeps for the minimal uniform error at a fixed separation, and
// bisection for the empirical testing radius.
//
// Error evaluation protocol: the null statistic is simulated at theta = 0
// (the reduced problem's null) and the alternative at theta = epsilon * u for
// each unit direction u in the reduced cone; one threshold is chosen to
// minimize type-I plus the worst type-II over directions. Common random
// numbers: the replicate streams depend only on (seed, context, lane,
// replicate), never on epsilon, so error curves are smooth in epsilon and
// bisection acts on a deterministic function.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conetest/cones.hpp"
#include "conetest/errors.hpp"
#include "conetest/geometry.hpp"
#include "conetest/mc.hpp"
#include "conetest/rng.hpp"

namespace conetest {

struct TestProblem {
  std::shared_ptr<const ConePair> pair;
  double sigma = 1.0;
  double epsilon = 0.0;
  double rho = 0.1;
};

inline void validate_problem(const TestProblem& p) {
  if (!p.pair) throw ConfigError("test problem: missing cone pair");
  if (!(p.sigma > 0.0)) throw ConfigError("test problem: sigma must be > 0");
  if (!(p.epsilon >= 0.0)) throw ConfigError("test problem: epsilon must be >= 0");
  if (!(p.rho > 0.0 && p.rho < 0.5)) throw ConfigError("rho ∈ (0, 0.5)");
}

struct ErrorCurvePoint {
  double epsilon = 0.0;
  double best_threshold = 0.0;
  McEstimate type1;
  McEstimate type2_worst;
  double total = 0.0;
  int directions_evaluated = 0;
};

// ---------------------------------------------------------------------------
// GLRT statistic
// ---------------------------------------------------------------------------

// T(y) = ||Π_{C2 ∩ C1*} y||^2, which for a non-oblique pair equals the
// projection-amplitude difference ||Π_{C2} y||^2 - ||Π_{C1} y||^2. With
// cross_check set, both forms are computed and compared at 1e-8 relative.
inline double glrt_statistic(const ConePair& pair, const Eigen::VectorXd& y,
                             bool cross_check = false) {
  const double reduced = project_induced(pair, y).squaredNorm();
  if (cross_check) {
    const double diff =
        project(pair.outer, y).squaredNorm() - project(pair.inner, y).squaredNorm();
    const double scale = std::max(1.0, std::abs(reduced));
    if (std::abs(diff - reduced) > 1e-8 * scale)
      throw NumericalError(
          "glrt statistic mismatch: reduced form " + std::to_string(reduced) +
          " vs projection difference " + std::to_string(diff));
  }
  return reduced;
}

// ---------------------------------------------------------------------------
// Direction sets
// ---------------------------------------------------------------------------

namespace detail {

inline void push_direction(const ConeDescriptor& cone, const Eigen::VectorXd& v,
                           std::vector<Eigen::VectorXd>& out) {
  const double nrm = v.norm();
  if (nrm <= 1e-12) return;
  Eigen::VectorXd unit = v / nrm;
  for (const auto& u : out)
    if (u.dot(unit) > 1.0 - 1e-12) return;  // duplicate
  if (!is_member(cone, unit, 1e-7))
    throw NumericalError("direction candidate failed cone membership for " +
                         cone_label(cone));
  out.push_back(std::move(unit));
}

inline void analytic_directions(const ConeDescriptor& cone,
                                std::vector<Eigen::VectorXd>& out);

// Embed each component's analytic directions with zeros elsewhere (zero is a
// member of every cone, so the embedding stays inside the product).
inline void product_directions(const ConeDescriptor& cone,
                               std::vector<Eigen::VectorXd>& out) {
  int off = 0;
  for (const auto& comp : cone.components) {
    std::vector<Eigen::VectorXd> sub;
    analytic_directions(comp, sub);
    for (const auto& v : sub) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(cone.dim);
      e.segment(off, comp.dim) = v;
      push_direction(cone, e, out);
    }
    off += comp.dim;
  }
}

inline void analytic_directions(const ConeDescriptor& cone,
                                std::vector<Eigen::VectorXd>& out) {
  const int d = cone.dim;
  switch (cone.kind) {
    case ConeKind::Orthant: {
      Eigen::VectorXd e1 = Eigen::VectorXd::Zero(d);
      e1[0] = 1.0;
      push_direction(cone, e1, out);
      push_direction(cone, Eigen::VectorXd::Ones(d), out);
      const int s = std::max(1, static_cast<int>(std::floor(std::sqrt(double(d)))));
      Eigen::VectorXd sparse = Eigen::VectorXd::Zero(d);
      for (int i = 0; i < s; ++i) sparse[i] = 1.0;
      push_direction(cone, sparse, out);
      break;
    }
    case ConeKind::Monotone: {
      push_direction(cone, Eigen::VectorXd::Ones(d), out);
      push_direction(cone, (-Eigen::VectorXd::Ones(d)).eval(), out);
      Eigen::VectorXd ramp(d);
      for (int i = 0; i < d; ++i) ramp[i] = double(i);
      push_direction(cone, ramp, out);
      if (d >= 2) {
        Eigen::VectorXd step = Eigen::VectorXd::Zero(d);
        for (int i = d / 2; i < d; ++i) step[i] = 1.0;
        push_direction(cone, step, out);
      }
      break;
    }
    case ConeKind::Circular: {
      Eigen::VectorXd axis = Eigen::VectorXd::Zero(d);
      axis[0] = 1.0;
      push_direction(cone, axis, out);
      Eigen::VectorXd boundary = Eigen::VectorXd::Zero(d);
      boundary[0] = std::cos(cone.alpha);
      boundary[1] = std::sin(cone.alpha);
      push_direction(cone, boundary, out);
      break;
    }
    case ConeKind::Subspace: {
      if (cone.coord_k > 0) {
        const int take = std::min(cone.coord_k, 4);
        for (int i = 0; i < take; ++i) {
          Eigen::VectorXd ei = Eigen::VectorXd::Zero(d);
          ei[i] = 1.0;
          push_direction(cone, ei, out);
        }
        Eigen::VectorXd all = Eigen::VectorXd::Zero(d);
        all.head(cone.coord_k).setOnes();
        push_direction(cone, all, out);
      } else if (cone.coord_k < 0) {
        const int take = std::min<int>(static_cast<int>(cone.basis.cols()), 4);
        for (int i = 0; i < take; ++i)
          push_direction(cone, cone.basis.col(i), out);
      }
      break;
    }
    case ConeKind::Ray:
      push_direction(cone, cone.axis, out);
      break;
    case ConeKind::GeneratorCone:
      for (int c = 0; c < cone.generators.cols() && c < 8; ++c)
        push_direction(cone, cone.generators.col(c), out);
      break;
    case ConeKind::HalfspaceCone:
      break;
    case ConeKind::Product:
      product_directions(cone, out);
      break;
    case ConeKind::Induced: {
      if (is_zero_cone(cone.pair->inner)) {
        std::vector<Eigen::VectorXd> sub;
        analytic_directions(cone.pair->outer, sub);
        for (const auto& v : sub) push_direction(cone, v, out);
        break;
      }
      if (cone.pair->outer.kind == ConeKind::Monotone &&
          cone.pair->inner.kind == ConeKind::Subspace) {
        for (const int k : {1, d / 2, d - 1}) {
          if (k < 1 || k >= d) continue;
          Eigen::VectorXd eta(d);
          const double lo = -std::sqrt(double(d - k) / (double(d) * k));
          const double hi = std::sqrt(double(k) / (double(d) * (d - k)));
          for (int i = 0; i < d; ++i) eta[i] = (i < k) ? lo : hi;
          push_direction(cone, eta, out);
        }
        Eigen::VectorXd ramp(d);
        for (int i = 0; i < d; ++i) ramp[i] = double(i) - 0.5 * (d - 1);
        push_direction(cone, ramp, out);
      }
      break;
    }
  }
}

}  // namespace detail

// Candidate worst-case alternative directions in K ∩ S: the normalized mean
// projection, analytic hard directions per cone kind, and n_random
// normalized projections of Gaussian draws.
inline std::vector<Eigen::VectorXd> default_directions(
    const ConeDescriptor& cone, const Eigen::VectorXd& mean_projection,
    int n_random, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  if (mean_projection.size() == cone.dim)
    detail::push_direction(cone, mean_projection, out);
  detail::analytic_directions(cone, out);
  int added = 0;
  for (int i = 0; added < n_random && i < 4 * n_random + 8; ++i) {
    const Eigen::VectorXd g = sample_std_gaussian(
        cone.dim, {seed, stream_id(stream_context::kDirections, 0,
                                   static_cast<std::uint64_t>(i))});
    const Eigen::VectorXd p = project(cone, g);
    if (p.norm() <= 1e-8) continue;
    const auto before = out.size();
    detail::push_direction(cone, p, out);
    if (out.size() > before) ++added;
  }
  if (out.empty())
    throw ConfigError("direction set is empty; cone has no unit vectors");
  return out;
}

inline std::vector<Eigen::VectorXd> default_directions(
    const ConeDescriptor& cone, int n_random, std::uint64_t seed) {
  return default_directions(cone, Eigen::VectorXd(), n_random, seed);
}

// ---------------------------------------------------------------------------
// Uniform error at fixed separation
// ---------------------------------------------------------------------------

using StatisticFn = std::function<double(const Eigen::VectorXd&)>;

// Exhaustive threshold sweep: every distinct simulated statistic value (plus
// a +inf sentinel for the always-accept rule) is tried as a threshold; the
// reported threshold minimizes type-I + worst type-II, ties resolved toward
// the smallest threshold.
inline ErrorCurvePoint uniform_error_statistic(
    const StatisticFn& statistic, int dim,
    const std::vector<Eigen::VectorXd>& directions, double epsilon,
    double sigma, std::int64_t n, std::uint64_t seed) {
  if (directions.empty()) throw ConfigError("uniform error: empty direction list");
  if (n < 2) throw ConfigError("uniform error: need n >= 2");
  if (!(sigma > 0.0)) throw ConfigError("uniform error: sigma must be > 0");
  const auto K = static_cast<int>(directions.size());

  std::vector<double> null_stats(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    RandomStream rs{seed, stream_id(stream_context::kNullSim, 0,
                                    static_cast<std::uint64_t>(i))};
    null_stats[static_cast<std::size_t>(i)] =
        statistic(sigma * rs.normal_vector(dim));
  }
  std::vector<std::vector<double>> alt_stats(K);
  for (int k = 0; k < K; ++k) {
    alt_stats[k].resize(static_cast<std::size_t>(n));
    const Eigen::VectorXd theta = epsilon * directions[k];
    for (std::int64_t i = 0; i < n; ++i) {
      RandomStream rs{seed, stream_id(stream_context::kAltSim,
                                      static_cast<unsigned>(k + 1),
                                      static_cast<std::uint64_t>(i))};
      alt_stats[k][static_cast<std::size_t>(i)] =
          statistic(theta + sigma * rs.normal_vector(dim));
    }
  }

  std::vector<double> candidates = null_stats;
  for (const auto& a : alt_stats)
    candidates.insert(candidates.end(), a.begin(), a.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  candidates.push_back(std::numeric_limits<double>::infinity());

  std::sort(null_stats.begin(), null_stats.end());
  for (auto& a : alt_stats) std::sort(a.begin(), a.end());

  const double dn = double(n);
  double best_total = 2.0, best_beta = 0.0, best_t1 = 1.0, best_t2 = 1.0;
  int best_k = 0;
  for (const double beta : candidates) {
    const auto reject0 =
        null_stats.end() -
        std::lower_bound(null_stats.begin(), null_stats.end(), beta);
    const double t1 = double(reject0) / dn;
    double t2 = 0.0;
    int worst_k = 0;
    for (int k = 0; k < K; ++k) {
      const auto accept =
          std::lower_bound(alt_stats[k].begin(), alt_stats[k].end(), beta) -
          alt_stats[k].begin();
      const double tk = double(accept) / dn;
      if (tk > t2) {
        t2 = tk;
        worst_k = k;
      }
    }
    if (t1 + t2 < best_total) {
      best_total = t1 + t2;
      best_beta = beta;
      best_t1 = t1;
      best_t2 = t2;
      best_k = worst_k;
    }
  }

  auto binom = [&](double p) {
    return McEstimate{p, std::sqrt(std::max(p * (1.0 - p), 0.0) / dn), n, seed};
  };
  ErrorCurvePoint pt;
  pt.epsilon = epsilon;
  pt.best_threshold = best_beta;
  pt.type1 = binom(best_t1);
  pt.type2_worst = binom(best_t2);
  pt.total = best_t1 + best_t2;
  pt.directions_evaluated = K;
  (void)best_k;
  return pt;
}

inline ErrorCurvePoint uniform_error_glrt(
    const TestProblem& problem, const std::vector<Eigen::VectorXd>& directions,
    std::int64_t n, std::uint64_t seed) {
  validate_problem(problem);
  const ConePair& pair = *problem.pair;
  return uniform_error_statistic(
      [&pair](const Eigen::VectorXd& y) { return glrt_statistic(pair, y); },
      pair.outer.dim, directions, problem.epsilon, problem.sigma, n, seed);
}

// Truncation test: reject when ||y_S||^2 is large. For product cones whose
// members satisfy ||theta_S|| >= gamma ||theta||, this statistic sees a fixed
// fraction of any alternative's energy while its null is chi^2 on |S|
// degrees of freedom only.
inline ErrorCurvePoint truncation_test_error(
    const TestProblem& problem, const std::vector<int>& coords,
    const std::vector<Eigen::VectorXd>& directions, double epsilon,
    std::int64_t n, std::uint64_t seed) {
  validate_problem(problem);
  const int dim = problem.pair->outer.dim;
  if (coords.empty()) throw ConfigError("truncation test: empty coordinate set");
  for (const int c : coords)
    if (c < 0 || c >= dim)
      throw ConfigError("truncation test: coordinate index out of range");
  auto stat = [coords](const Eigen::VectorXd& y) {
    double s = 0.0;
    for (const int c : coords) s += y[c] * y[c];
    return s;
  };
  return uniform_error_statistic(stat, dim, directions, epsilon, problem.sigma,
                                 n, seed);
}

// ---------------------------------------------------------------------------
// Radius bisection
// ---------------------------------------------------------------------------

struct RadiusEstimate {
  double epsilon = 0.0;     // midpoint of the final bracket
  double radius_sq = 0.0;   // epsilon^2
  double bracket_lo = 0.0;  // squared lower bracket (error still above rho)
  double bracket_hi = 0.0;  // squared upper bracket (error at or below rho)
  double error_lo = 0.0;
  double error_hi = 0.0;
  int expansions = 0;
  ErrorCurvePoint at_midpoint;
};

// Bisection on epsilon of the map epsilon -> inf_beta (type-I + worst
// type-II), which is nonincreasing up to Monte Carlo noise. The direction set
// and replicate streams are fixed across evaluations.
inline RadiusEstimate radius_bisect(const StatisticFn& statistic, int dim,
                                    const std::vector<Eigen::VectorXd>& directions,
                                    double sigma, double rho, double eps_lo,
                                    double eps_hi, int bisect_iters,
                                    std::int64_t n, std::uint64_t seed,
                                    int max_expansions = 40) {
  if (!(rho > 0.0 && rho < 0.5)) throw ConfigError("rho ∈ (0, 0.5)");
  if (!(eps_hi > eps_lo) || eps_lo < 0.0)
    throw ConfigError("radius bisection: need 0 <= eps_lo < eps_hi");
  auto err = [&](double eps) {
    return uniform_error_statistic(statistic, dim, directions, eps, sigma, n,
                                   seed);
  };
  RadiusEstimate out;
  ErrorCurvePoint hi_pt = err(eps_hi);
  while (hi_pt.total > rho) {
    if (++out.expansions > max_expansions)
      throw NumericalError(
          "radius bisection: upper bracket not found after " +
          std::to_string(max_expansions) + " doublings (error " +
          std::to_string(hi_pt.total) + " > target)");
    eps_lo = eps_hi;
    eps_hi *= 2.0;
    hi_pt = err(eps_hi);
  }
  ErrorCurvePoint lo_pt = err(eps_lo);
  if (lo_pt.total <= rho) {
    // Degenerate: even the lower end already meets the target.
    out.epsilon = eps_lo;
    out.radius_sq = eps_lo * eps_lo;
    out.bracket_lo = eps_lo * eps_lo;
    out.bracket_hi = eps_hi * eps_hi;
    out.error_lo = lo_pt.total;
    out.error_hi = hi_pt.total;
    out.at_midpoint = lo_pt;
    return out;
  }
  for (int it = 0; it < bisect_iters; ++it) {
    const double mid = 0.5 * (eps_lo + eps_hi);
    const ErrorCurvePoint mid_pt = err(mid);
    if (mid_pt.total <= rho) {
      eps_hi = mid;
      hi_pt = mid_pt;
    } else {
      eps_lo = mid;
      lo_pt = mid_pt;
    }
  }
  out.epsilon = 0.5 * (eps_lo + eps_hi);
  out.radius_sq = out.epsilon * out.epsilon;
  out.bracket_lo = eps_lo * eps_lo;
  out.bracket_hi = eps_hi * eps_hi;
  out.error_lo = lo_pt.total;
  out.error_hi = hi_pt.total;
  out.at_midpoint = err(out.epsilon);
  return out;
}

inline RadiusEstimate glrt_radius(const TestProblem& problem,
                                  const std::vector<Eigen::VectorXd>& directions,
                                  double eps_lo = 0.0, double eps_hi = 0.0,
                                  int bisect_iters = 8, std::int64_t n = 4000,
                                  std::uint64_t seed = 1) {
  validate_problem(problem);
  const ConePair& pair = *problem.pair;
  if (eps_hi <= eps_lo) eps_hi = 4.0 * problem.sigma;
  return radius_bisect(
      [&pair](const Eigen::VectorXd& y) { return glrt_statistic(pair, y); },
      pair.outer.dim, directions, problem.sigma, problem.rho, eps_lo, eps_hi,
      bisect_iters, n, seed);
}

inline RadiusEstimate truncation_radius(const TestProblem& problem,
                                        const std::vector<int>& coords,
                                        const std::vector<Eigen::VectorXd>& directions,
                                        double eps_lo = 0.0, double eps_hi = 0.0,
                                        int bisect_iters = 8,
                                        std::int64_t n = 4000,
                                        std::uint64_t seed = 1) {
  validate_problem(problem);
  const int dim = problem.pair->outer.dim;
  if (coords.empty()) throw ConfigError("truncation test: empty coordinate set");
  for (const int c : coords)
    if (c < 0 || c >= dim)
      throw ConfigError("truncation test: coordinate index out of range");
  if (eps_hi <= eps_lo) eps_hi = 4.0 * problem.sigma;
  auto stat = [coords](const Eigen::VectorXd& y) {
    double s = 0.0;
    for (const int c : coords) s += y[c] * y[c];
    return s;
  };
  return radius_bisect(stat, dim, directions, problem.sigma, problem.rho,
                       eps_lo, eps_hi, bisect_iters, n, seed);
}

// Testing radius of the tangent-cone problem at a nondecreasing base point:
// {0} versus the tangent cone of the monotone cone at theta0.
inline RadiusEstimate kpiece_radius(const Eigen::VectorXd& theta0, double sigma,
                                    double rho, std::int64_t n,
                                    std::uint64_t seed, int n_random_dirs = 4,
                                    int bisect_iters = 8) {
  ConeDescriptor tangent = tangent_cone_monotone(theta0);
  const int d = tangent.dim;
  auto pair = make_cone_pair(make_zero_cone(d), std::move(tangent), seed);
  TestProblem problem{pair, sigma, 0.0, rho};
  const auto dirs =
      default_directions(pair->outer, n_random_dirs, seed);
  return glrt_radius(problem, dirs, 0.0, 0.0, bisect_iters, n, seed);
}

}  // namespace conetest
