// Acceptance gate: one numbered check per invocation (argv[1] in 1..11),
// one final [PASS]/[FAIL] line on stdout, exit 0 on pass and 1 on fail.
// Tolerances are pinned here as named constants.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conetest/experiments.hpp"

using namespace conetest;

namespace {

// ---------------------------------------------------------------------------
// Pinned tolerances
// ---------------------------------------------------------------------------

constexpr double kZooRelTol = 1e-6;         // projection invariants
constexpr double kSolverCrossTol = 1e-6;    // isotonic vs halfspace solver
constexpr double kCircular2dTol = 1e-7;     // closed form vs 1-d search
constexpr double kMomentBruteTol = 1e-12;   // hypergeometric vs enumeration
constexpr double kSigmaRule = 3.0;          // Monte Carlo agreement band
constexpr double kTailSlack = 0.005;        // absolute slack on tail bounds
constexpr double kVarianceCap = 4.0;        // cap on Var ||proj|| (1-Lipschitz)
constexpr double kExceedanceFloor = 7.0 / 16.0;
constexpr double kScalingTolTight = 0.35;   // subspace / orthant families
constexpr double kScalingTolLoose = 0.40;   // monotone / circular families
constexpr double kGrowthLo = 2.0;           // product-cone ratio growth window
constexpr double kGrowthHi = 8.0;
constexpr double kOrthonormalTol = 1e-12;
constexpr std::int64_t kSamplewiseDraws = 10000;

struct Outcome {
  bool ok = false;
  std::string summary;
};

double chi_mean(int k) {
  return std::sqrt(2.0) *
         std::exp(std::lgamma((double(k) + 1.0) / 2.0) -
                  std::lgamma(double(k) / 2.0));
}

Eigen::MatrixXd monotone_rows(int d) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d - 1, d);
  for (int i = 0; i + 1 < d; ++i) {
    a(i, i) = 1.0;
    a(i, i + 1) = -1.0;
  }
  return a;
}

struct NamedCone {
  std::string label;
  ConeDescriptor cone;
};

// Ten structurally distinct cones at the given ambient dimension.
std::vector<NamedCone> cone_zoo(int d, std::uint64_t seed) {
  std::vector<NamedCone> zoo;
  zoo.push_back({"orthant", make_orthant(d)});
  zoo.push_back({"monotone", make_monotone(d)});
  zoo.push_back({"circular", make_circular(0.9, d)});
  zoo.push_back({"coordinate-subspace",
                 make_coordinate_subspace(d, std::max(1, d / 2))});
  RandomStream rs(seed, stream_id(stream_context::kSphereSamples, 63, 0));
  zoo.push_back({"ray", make_ray(rs.normal_vector(d))});
  {
    // Generic subspace from an orthonormalized random basis.
    const int k = std::max(1, d / 3);
    Eigen::MatrixXd raw(d, k);
    for (int c = 0; c < k; ++c) raw.col(c) = rs.normal_vector(d);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
    zoo.push_back({"generic-subspace", make_subspace(q)});
  }
  {
    const int m = std::min(d, 8);
    Eigen::MatrixXd gen(d, m);
    for (int c = 0; c < m; ++c) gen.col(c) = rs.normal_vector(d);
    zoo.push_back({"generator", make_generator_cone(gen)});
  }
  {
    const int r = std::min(3, d - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r, d);
    for (int i = 0; i < r; ++i) {
      a(i, i) = 1.0;
      a(i, i + 1) = -1.0;
    }
    zoo.push_back({"halfspace", make_halfspace_cone(a)});
  }
  {
    std::vector<ConeDescriptor> comps;
    comps.push_back(make_orthant(d / 2));
    comps.push_back(make_monotone(d - d / 2));
    zoo.push_back({"product", make_product(std::move(comps))});
  }
  zoo.push_back({"induced", make_induced_cone(make_cone_pair(
                                 make_span_of_ones(d), make_monotone(d), seed))});
  return zoo;
}

// ---------------------------------------------------------------------------
// 1. Projection invariants across the cone zoo
// ---------------------------------------------------------------------------

Outcome criterion_1() {
  const std::int64_t points = 10000;
  const double scales[3] = {1.0, 0.2, 5.0};
  long long checked = 0;
  for (const int d : {3, 10, 100}) {
    for (const auto& nc : cone_zoo(d, 0x5eedULL + std::uint64_t(d))) {
      Eigen::VectorXd prev_x, prev_p;
      for (std::int64_t i = 0; i < points; ++i) {
        RandomStream rs(17, stream_id(stream_context::kSphereSamples, 1,
                                      std::uint64_t(i) + 1000000ull * d));
        const Eigen::VectorXd x =
            scales[i % 3] * rs.normal_vector(d);
        const double s = std::max(1.0, x.norm());
        const Eigen::VectorXd p = project(nc.cone, x);
        const Eigen::VectorXd r = x - p;

        const double moreau = std::abs(p.dot(r));
        const double pyth =
            std::abs(x.squaredNorm() - p.squaredNorm() - r.squaredNorm());
        const double idem = (project(nc.cone, p) - p).norm();
        const double homo = (project(nc.cone, 2.5 * x) - 2.5 * p).norm();
        double nonexp = 0.0;
        double nonexp_budget = 1.0;
        if (prev_x.size() == d) {
          nonexp = (p - prev_p).norm() - (x - prev_x).norm();
          nonexp_budget = std::max(1.0, x.norm() + prev_x.norm());
        }
        const bool ok = moreau <= kZooRelTol * s * s &&
                        pyth <= kZooRelTol * s * s &&
                        idem <= kZooRelTol * s &&
                        homo <= kZooRelTol * 2.5 * s &&
                        nonexp <= kZooRelTol * nonexp_budget;
        if (!ok) {
          std::printf(
              "  violation: cone=%s d=%d point=%lld moreau=%.3g pyth=%.3g "
              "idem=%.3g homo=%.3g nonexp=%.3g\n",
              nc.label.c_str(), d, static_cast<long long>(i), moreau, pyth,
              idem, homo, nonexp);
          return {false, "projection invariant violated for " + nc.label +
                             " at d=" + std::to_string(d)};
        }
        prev_x = x;
        prev_p = p;
        ++checked;
      }
    }
  }
  std::printf("  %lld projections satisfied all five invariants (tol %.0e)\n",
              checked, kZooRelTol);
  return {true, "idempotence, orthogonality, Pythagoras, homogeneity, and "
                "nonexpansiveness hold across 10 cone kinds x {3,10,100}"};
}

// ---------------------------------------------------------------------------
// 2. Independent solver cross-checks
// ---------------------------------------------------------------------------

Outcome criterion_2() {
  // (a) Isotonic solver against the iterative halfspace solver.
  double worst_iso = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 3 + trial % 8;
    RandomStream rs(23, stream_id(stream_context::kSphereSamples, 2,
                                  std::uint64_t(trial)));
    const Eigen::VectorXd x = 2.0 * rs.normal_vector(d);
    const Eigen::VectorXd p1 = project(make_monotone(d), x);
    const Eigen::VectorXd p2 = project(make_halfspace_cone(monotone_rows(d)), x);
    worst_iso = std::max(
        worst_iso, (p1 - p2).lpNorm<Eigen::Infinity>() / std::max(1.0, x.norm()));
  }
  if (worst_iso > kSolverCrossTol)
    return {false, "isotonic vs halfspace disagreement " +
                       std::to_string(worst_iso)};

  // (b) Circular closed form against a grid + golden-section angular search.
  double worst_circ = 0.0;
  const double angles[4] = {0.3, M_PI / 4.0, 1.0, 1.3};
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 5;
    const double alpha = angles[trial % 4];
    RandomStream rs(29, stream_id(stream_context::kSphereSamples, 4,
                                  std::uint64_t(trial)));
    const Eigen::VectorXd x = 1.5 * rs.normal_vector(d);
    const double x1 = x[0];
    const Eigen::VectorXd tail = x.tail(d - 1);
    const double t = tail.norm();
    if (t < 1e-12) continue;
    // maximize g(phi) = x1 cos phi + t sin phi over [0, alpha]
    auto g = [&](double phi) { return x1 * std::cos(phi) + t * std::sin(phi); };
    const int grid = 2000;
    int best_i = 0;
    double best_g = g(0.0);
    for (int i = 1; i <= grid; ++i) {
      const double v = g(alpha * double(i) / double(grid));
      if (v > best_g) {
        best_g = v;
        best_i = i;
      }
    }
    double lo = alpha * double(std::max(0, best_i - 1)) / double(grid);
    double hi = alpha * double(std::min(grid, best_i + 1)) / double(grid);
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double a1 = hi - golden * (hi - lo);
    double b1 = lo + golden * (hi - lo);
    for (int it = 0; it < 80; ++it) {
      if (g(a1) < g(b1)) {
        lo = a1;
        a1 = b1;
        b1 = lo + golden * (hi - lo);
      } else {
        hi = b1;
        b1 = a1;
        a1 = hi - golden * (hi - lo);
      }
    }
    const double phi = 0.5 * (lo + hi);
    const double radius = std::max(0.0, g(phi));
    Eigen::VectorXd want = Eigen::VectorXd::Zero(d);
    if (radius > 0.0) {
      want[0] = radius * std::cos(phi);
      want.tail(d - 1) = (radius * std::sin(phi) / t) * tail;
    }
    const Eigen::VectorXd got = project(make_circular(alpha, d), x);
    worst_circ = std::max(worst_circ, (got - want).lpNorm<Eigen::Infinity>() /
                                          std::max(1.0, x.norm()));
  }
  if (worst_circ > kCircular2dTol)
    return {false, "circular closed form vs angular search disagreement " +
                       std::to_string(worst_circ)};

  // (c) Hypergeometric pair moment against bitmask enumeration.
  double worst_mom = 0.0;
  for (const int d : {4, 6, 8}) {
    const int s = int(std::floor(std::sqrt(double(d))));
    for (const double lam : {0.7, 2.2}) {
      std::vector<std::uint32_t> supports;
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
        if (std::popcount(mask) == s) supports.push_back(mask);
      double acc = 0.0;
      for (const std::uint32_t a : supports)
        for (const std::uint32_t b : supports)
          acc += std::exp(lam * double(std::popcount(a & b)) / double(s));
      const double brute = acc / (double(supports.size()) * double(supports.size()));
      const double fast = orthant_chi2_moment_exact(d, s, lam);
      worst_mom = std::max(worst_mom, std::abs(fast - brute) / brute);
    }
  }
  if (worst_mom > kMomentBruteTol)
    return {false, "moment vs enumeration disagreement " +
                       std::to_string(worst_mom)};

  std::printf(
      "  isotonic vs halfspace worst rel error %.2e (tol %.0e)\n"
      "  circular closed form vs angular search worst rel error %.2e (tol %.0e)\n"
      "  hypergeometric vs enumeration worst rel error %.2e (tol %.0e)\n",
      worst_iso, kSolverCrossTol, worst_circ, kCircular2dTol, worst_mom,
      kMomentBruteTol);
  return {true, "three independent solver routes agree on shared problems"};
}

// ---------------------------------------------------------------------------
// 3. Orthant projection closed-form moments
// ---------------------------------------------------------------------------

Outcome criterion_3() {
  const int d = 50;
  const std::int64_t n = 1000000;
  const ConeDescriptor cone = make_orthant(d);
  RunningStat norm_sq;
  double coord_sum = 0.0;
  double coord_sum_sq = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    RandomStream rs(31, stream_id(stream_context::kWidth, 3,
                                  static_cast<std::uint64_t>(i)));
    const Eigen::VectorXd p = project(cone, rs.normal_vector(d));
    norm_sq.add(p.squaredNorm());
    coord_sum += p.sum();
    coord_sum_sq += p.squaredNorm();  // sum of squared coordinates
  }
  const double nd = double(n) * double(d);
  const double coord_mean = coord_sum / nd;
  const double coord_var = coord_sum_sq / nd - coord_mean * coord_mean;
  const double coord_se = std::sqrt(coord_var / nd);
  const double coord_target = 1.0 / std::sqrt(2.0 * M_PI);

  const McEstimate nsq = norm_sq.estimate(31);
  const double nsq_target = double(d) / 2.0;

  std::printf(
      "  pooled coordinate mean %.6f vs 1/sqrt(2 pi) = %.6f (se %.2e)\n"
      "  E||proj||^2 %.4f vs d/2 = %.1f (se %.4f)\n",
      coord_mean, coord_target, coord_se, nsq.mean, nsq_target, nsq.se);
  const bool ok =
      std::abs(coord_mean - coord_target) <= kSigmaRule * coord_se &&
      std::abs(nsq.mean - nsq_target) <= kSigmaRule * nsq.se;
  return {ok, ok ? "orthant projection matches its closed-form moments at "
                   "d=50, n=1e6 (3-sigma)"
                 : "orthant projection moments off beyond 3 sigma"};
}

// ---------------------------------------------------------------------------
// 4. Subspace width windows
// ---------------------------------------------------------------------------

Outcome criterion_4() {
  const std::int64_t n = 200000;
  bool ok = true;
  for (const int k : {4, 16, 64}) {
    const ConeDescriptor cone = make_coordinate_subspace(128, k);
    const WidthEstimate w = estimate_width(cone, n, 37);
    const double target = chi_mean(k);
    const double rk = std::sqrt(double(k));
    const bool exact_ok = std::abs(w.norm.mean - target) <= kSigmaRule * w.norm.se;
    const bool window_ok = w.norm.mean >= rk / 2.0 && w.norm.mean <= rk;
    std::printf(
        "  k=%-3d width %.5f (se %.5f) vs chi mean %.5f; window [%.3f, %.3f] %s\n",
        k, w.norm.mean, w.norm.se, target, rk / 2.0, rk,
        exact_ok && window_ok ? "ok" : "VIOLATED");
    ok = ok && exact_ok && window_ok;
  }
  return {ok, ok ? "subspace widths sit at the chi mean inside [sqrt(k)/2, sqrt(k)]"
                 : "subspace width outside its window"};
}

// ---------------------------------------------------------------------------
// 5. Lipschitz concentration of the projection norm
// ---------------------------------------------------------------------------

Outcome criterion_5() {
  const std::int64_t n = 100000;
  bool ok = true;
  for (const auto& nc : {NamedCone{"orthant", make_orthant(256)},
                         NamedCone{"monotone", make_monotone(256)}}) {
    const ConcentrationReport rep = concentration_report(nc.cone, n, 41);
    std::printf("  %s: width %.4f variance %.4f (cap %.1f)\n", nc.label.c_str(),
                rep.width.mean, rep.variance, kVarianceCap);
    if (rep.variance > kVarianceCap) ok = false;
    for (const TailRow& row : rep.tails) {
      const double budget = row.bound + kSigmaRule * row.tail_se + kTailSlack;
      std::printf("    t=%.1f upper %.5f lower %.5f  bound+slack %.5f %s\n",
                  row.t, row.upper, row.lower, budget,
                  row.upper <= budget && row.lower <= budget ? "ok" : "VIOLATED");
      if (row.upper > budget || row.lower > budget) ok = false;
    }
  }
  return {ok, ok ? "projection-norm deviations respect exp(-t^2/2) at d=256"
                 : "tail bound violated"};
}

// ---------------------------------------------------------------------------
// 6. High-dimensional exceedance of the mean
// ---------------------------------------------------------------------------

Outcome criterion_6() {
  const McEstimate est = median_exceedance(make_orthant(40000), 10000, 43);
  const double floor_val = kExceedanceFloor - kSigmaRule * est.se;
  std::printf("  P(||proj|| >= mean) = %.4f (se %.4f), floor %.4f\n", est.mean,
              est.se, floor_val);
  const bool ok = est.mean >= floor_val;
  return {ok, ok ? "orthant d=40000 exceedance stays above 7/16 (3-sigma)"
                 : "exceedance fell below 7/16 - 3 se"};
}

// ---------------------------------------------------------------------------
// 7. Scaling laws of the empirical testing radius
// ---------------------------------------------------------------------------

struct ScalingFamily {
  std::string name;
  std::vector<int> dims;
  double tol;
  std::function<ConeDescriptor(int)> outer;
  std::function<double(int)> normalizer;
};

Outcome criterion_7() {
  const std::int64_t n = 4000;
  const double rho = 0.1;
  const std::uint64_t seed = 47;
  std::vector<ScalingFamily> families;
  families.push_back({"subspace",
                      {4, 16, 64},
                      kScalingTolTight,
                      [](int d) { return make_full_space(d); },
                      [](int d) { return std::sqrt(double(d)); }});
  families.push_back({"orthant",
                      {64, 256, 1024},
                      kScalingTolTight,
                      [](int d) { return make_orthant(d); },
                      [](int d) { return std::sqrt(double(d)); }});
  families.push_back({"monotone",
                      {64, 256, 1024},
                      kScalingTolLoose,
                      [](int d) { return make_monotone(d); },
                      [](int d) { return std::sqrt(std::log(double(d))); }});
  families.push_back({"circular",
                      {32, 128, 512},
                      kScalingTolLoose,
                      [](int d) { return make_circular(M_PI / 4.0, d); },
                      [](int /*d*/) { return 1.0; }});
  bool all_ok = true;
  for (const auto& fam : families) {
    std::vector<double> ratios;
    for (const int d : fam.dims) {
      auto pair = make_cone_pair(make_zero_cone(d), fam.outer(d), seed);
      const auto mean = estimate_mean_projection(pair->outer, 2000, seed);
      const auto dirs = default_directions(pair->outer, mean.mean, 4, seed);
      TestProblem problem{pair, 1.0, 0.0, rho};
      const RadiusEstimate r = glrt_radius(problem, dirs, 0.0, 0.0, 8, n, seed);
      ratios.push_back(r.radius_sq / fam.normalizer(d));
    }
    double log_sum = 0.0;
    for (const double r : ratios) log_sum += std::log(r);
    const double gmean = std::exp(log_sum / double(ratios.size()));
    double max_dev = 0.0;
    for (const double r : ratios)
      max_dev = std::max(max_dev, std::abs(r / gmean - 1.0));
    std::printf("  %-9s dims {", fam.name.c_str());
    for (std::size_t i = 0; i < fam.dims.size(); ++i)
      std::printf("%s%d", i ? "," : "", fam.dims[i]);
    std::printf("} normalized radii {");
    for (std::size_t i = 0; i < ratios.size(); ++i)
      std::printf("%s%.3f", i ? "," : "", ratios[i]);
    std::printf("} gmean %.3f maxdev %.3f tol %.2f %s\n", gmean, max_dev,
                fam.tol, max_dev <= fam.tol ? "ok" : "VIOLATED");
    if (max_dev > fam.tol) all_ok = false;
  }
  return {all_ok, all_ok ? "normalized radii are flat across dimensions for "
                           "all four cone families"
                         : "a scaling family deviates beyond tolerance"};
}

// ---------------------------------------------------------------------------
// 8. Growing likelihood-ratio suboptimality on the product cone
// ---------------------------------------------------------------------------

Outcome criterion_8() {
  const std::int64_t n = 4000;
  const double rho = 0.1;
  const std::uint64_t seed = 53;
  auto ratio_at = [&](int d) {
    auto pair =
        make_cone_pair(make_zero_cone(d), make_circular_cross_line(M_PI / 4.0, d),
                       seed);
    const auto mean = estimate_mean_projection(pair->outer, 2000, seed);
    const auto dirs = default_directions(pair->outer, mean.mean, 4, seed);
    TestProblem problem{pair, 1.0, 0.0, rho};
    const RadiusEstimate glr = glrt_radius(problem, dirs, 0.0, 0.0, 8, n, seed);
    const RadiusEstimate trunc =
        truncation_radius(problem, {0, d - 1}, dirs, 0.0, 0.0, 8, n, seed);
    std::printf("  d=%-5d glr %.2f trunc %.2f ratio %.3f\n", d, glr.radius_sq,
                trunc.radius_sq, glr.radius_sq / trunc.radius_sq);
    return glr.radius_sq / trunc.radius_sq;
  };
  const double r64 = ratio_at(64);
  const double r1024 = ratio_at(1024);
  const double growth = r1024 / r64;
  std::printf("  growth r(1024)/r(64) = %.3f, window [%.1f, %.1f]\n", growth,
              kGrowthLo, kGrowthHi);
  const bool ok = growth >= kGrowthLo && growth <= kGrowthHi;
  return {ok, ok ? "likelihood-ratio radius outgrows the two-coordinate test "
                   "like sqrt(d)"
                 : "suboptimality growth outside [2, 8]"};
}

// ---------------------------------------------------------------------------
// 9. Lower-bound prior machinery
// ---------------------------------------------------------------------------

Outcome criterion_9() {
  bool ok = true;
  // (a) closed-form moment bound dominates the exact moment; nontrivial at 81.
  for (const int d : {81, 100, 400}) {
    const double lam = std::sqrt(double(d)) / 8.0;
    const int s = int(std::floor(std::sqrt(double(d))));
    const double exact = orthant_chi2_moment_exact(d, s, lam);
    const double bound = orthant_moment_bound(d, lam);
    std::printf("  sparse d=%-4d lam %.4f exact %.6f bound %.6f %s\n", d, lam,
                exact, bound, exact <= bound ? "ok" : "VIOLATED");
    if (exact > bound) ok = false;
  }
  const double b81 = orthant_moment_bound(81, std::sqrt(81.0) / 8.0);
  std::printf("  bound at d=81 is %.6f (< 2 required)\n", b81);
  if (!(b81 < 2.0)) ok = false;

  // (b) staircase construction: orthonormal block basis, nondecreasing
  // samples, and the per-sample norm target 9/4 - 63/(32 s).
  for (const int d : {1000, 10000}) {
    const PriorSampler prior = build_monotone_fg(d);
    const int s = prior.sparsity();
    const double target = 9.0 / 4.0 - 63.0 / (32.0 * double(s));
    const Eigen::MatrixXd F = prior.fg_f_matrix();
    const int m = prior.partition().m;
    const double gram_err =
        (F.transpose() * F - Eigen::MatrixXd::Identity(m, m))
            .cwiseAbs()
            .maxCoeff();
    std::printf("  staircase d=%-6d m=%d s=%d  ||F'F - I|| = %.2e\n", d, m, s,
                gram_err);
    if (gram_err > kOrthonormalTol) ok = false;

    double min_norm_sq = std::numeric_limits<double>::infinity();
    std::int64_t violations = 0;
    bool monotone_ok = true;
    for (std::int64_t i = 0; i < kSamplewiseDraws; ++i) {
      RandomStream rs(59, stream_id(stream_context::kPrior, 0,
                                    static_cast<std::uint64_t>(i)));
      const Eigen::VectorXd eta = prior.sample(rs);
      for (int j = 0; j + 1 < d; ++j)
        if (eta[j] > eta[j + 1]) monotone_ok = false;
      const double nsq = eta.squaredNorm();
      min_norm_sq = std::min(min_norm_sq, nsq);
      if (nsq < target - 1e-12) ++violations;
    }
    std::printf(
        "    %lld samples: nondecreasing %s, min ||eta||^2 = %.9f vs target "
        "%.6f, violations %lld\n",
        static_cast<long long>(kSamplewiseDraws), monotone_ok ? "yes" : "NO",
        min_norm_sq, target, static_cast<long long>(violations));
    if (!monotone_ok) ok = false;
    if (violations > 0) {
      ok = false;
      if (d == 10000)
        std::printf(
            "    counterexample: coefficient support {first, last} of four "
            "blocks gives ||G b||^2 = 1603/1458 = %.9f < %.6f, so the "
            "per-sample norm target is unattainable at d=10000\n",
            1603.0 / 1458.0, target);
    }
    // Centered variant: exact enumeration over all coefficient supports shows
    // the re-centered norm dips below one, so its sampler must reject at draw
    // time rather than promise a per-sample floor. Record the exact minimum.
    const PriorSampler centered = build_monotone_fg(d, true);
    const Eigen::MatrixXd Fc = centered.fg_f_matrix();
    const Eigen::MatrixXd& G = centered.fg_g_matrix();
    double min_centered = std::numeric_limits<double>::infinity();
    std::vector<int> idx(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) idx[std::size_t(i)] = i;
    while (true) {
      Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
      for (const int j : idx) b[j] = 1.0 / std::sqrt(double(s));
      Eigen::VectorXd eta = Fc * (G * b);
      eta.array() -= eta.mean();
      min_centered = std::min(min_centered, eta.squaredNorm());
      int pos = s - 1;
      while (pos >= 0 && idx[std::size_t(pos)] == m - s + pos) --pos;
      if (pos < 0) break;
      ++idx[std::size_t(pos)];
      for (int j = pos + 1; j < s; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
    std::printf("    centered-variant exact min ||eta - mean||^2 = %.9f\n",
                min_centered);
  }
  return {ok, ok ? "prior moments bounded and staircase samples meet the "
                   "per-sample norm target"
                 : "staircase per-sample norm target fails at d=10000 "
                   "(exact counterexample 1603/1458 < 1.265625)"};
}

// ---------------------------------------------------------------------------
// 10. Lower bounds sandwich the empirical radius
// ---------------------------------------------------------------------------

Outcome criterion_10() {
  const double rho = 0.1;
  const std::uint64_t seed = 61;
  bool ok = true;
  struct Case {
    std::string family;
    int d;
  };
  auto run_case = [&](const std::string& family, int d) {
    PriorSampler prior = family == "orthant"
                             ? PriorSampler::orthant_sparse(d)
                             : build_monotone_fg(d);
    const ConeDescriptor outer =
        family == "orthant" ? make_orthant(d) : make_monotone(d);
    const LowerRadiusEstimate lb = minimax_lower_radius(prior, rho, 2000, seed);
    auto pair = make_cone_pair(make_zero_cone(d), outer, seed);
    const auto mean = estimate_mean_projection(pair->outer, 2000, seed);
    const auto dirs = default_directions(pair->outer, mean.mean, 4, seed);
    TestProblem problem{pair, 1.0, 0.0, rho};
    const RadiusEstimate glr =
        glrt_radius(problem, dirs, 0.0, 0.0, 8, 4000, seed);
    const bool pair_ok = lb.radius_sq <= glr.radius_sq;
    std::printf(
        "  %-8s d=%-5d lower %.3f [%.3f, %.3f]  glr %.3f [%.3f, %.3f] %s\n",
        family.c_str(), d, lb.radius_sq, lb.bracket_lo, lb.bracket_hi,
        glr.radius_sq, glr.bracket_lo, glr.bracket_hi,
        pair_ok ? "ok" : "VIOLATED");
    if (!pair_ok) ok = false;
  };
  for (const int d : {16, 64, 256}) run_case("orthant", d);
  for (const int d : {64, 256, 1024}) run_case("monotone", d);
  return {ok, ok ? "information-theoretic lower radii stay below the "
                   "empirical radii on both families"
                 : "a lower bound exceeded the empirical radius"};
}

// ---------------------------------------------------------------------------
// 11. Experiment reproducibility
// ---------------------------------------------------------------------------

Outcome criterion_11() {
  using nlohmann::ordered_json;
  std::vector<ordered_json> configs;
  configs.push_back({{"experiment", "subspace-scaling"},
                     {"dims", {4, 16}},
                     {"n", 800},
                     {"seed", 5}});
  configs.push_back(
      {{"experiment", "circular"}, {"dims", {8, 16}}, {"n", 800}, {"seed", 5}});
  configs.push_back({{"experiment", "orthant-scaling"},
                     {"dims", {8, 16}},
                     {"n", 800},
                     {"seed", 5}});
  configs.push_back({{"experiment", "monotone-scaling"},
                     {"dims", {8, 16}},
                     {"n", 800},
                     {"seed", 5}});
  configs.push_back({{"experiment", "product-suboptimality"},
                     {"dims", {8}},
                     {"n", 600},
                     {"seed", 5}});
  configs.push_back(
      {{"experiment", "kpiece"}, {"dims", {1, 4}}, {"n", 400}, {"seed", 5}});
  configs.push_back({{"experiment", "concentration"},
                     {"dims", {32}},
                     {"n", 4000},
                     {"seed", 5}});
  configs.push_back({{"experiment", "lower-bounds"},
                     {"dims", {16}},
                     {"n", 500},
                     {"seed", 5}});
  configs.push_back({{"experiment", "geometry-report"},
                     {"dims", {8}},
                     {"n", 4000},
                     {"seed", 5}});
  bool ok = true;
  for (const auto& raw : configs) {
    const ExperimentConfig cfg = validate_config(raw);
    const ExperimentReport a = run_experiment(cfg);
    const ExperimentReport b = run_experiment(cfg);
    const bool same = a.rows == b.rows && a.columns == b.columns;
    const bool clean = !a.any_error && !b.any_error;
    std::printf("  %-22s rows %zu  repeat-identical %s  errors %s\n",
                cfg.experiment.c_str(), a.rows.size(), same ? "yes" : "NO",
                clean ? "none" : "PRESENT");
    if (!same || !clean) ok = false;
  }
  return {ok, ok ? "all nine experiments replay identically under a fixed seed"
                 : "an experiment failed to replay identically"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..11>\n");
    return 2;
  }
  const int num = std::atoi(argv[1]);
  Outcome out;
  try {
    switch (num) {
      case 1: out = criterion_1(); break;
      case 2: out = criterion_2(); break;
      case 3: out = criterion_3(); break;
      case 4: out = criterion_4(); break;
      case 5: out = criterion_5(); break;
      case 6: out = criterion_6(); break;
      case 7: out = criterion_7(); break;
      case 8: out = criterion_8(); break;
      case 9: out = criterion_9(); break;
      case 10: out = criterion_10(); break;
      case 11: out = criterion_11(); break;
      default:
        std::fprintf(stderr, "usage: acceptance <criterion 1..11>\n");
        return 2;
    }
  } catch (const std::exception& e) {
    out.ok = false;
    out.summary = std::string("unexpected exception: ") + e.what();
  }
  std::printf("[%s] criterion %d: %s\n", out.ok ? "PASS" : "FAIL", num,
              out.summary.c_str());
  return out.ok ? 0 : 1;
}
