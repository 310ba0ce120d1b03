#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "conetest/lowerbound.hpp"
#include "oracle_tables.hpp"

using namespace conetest;

namespace {

// Brute-force pair moment for the s-sparse ensemble at small d: average
// exp(lam * |S ∩ S'| / s) over all ordered support pairs, via bitmasks.
double moment_brute_force(int d, int s, double lam) {
  std::vector<std::uint32_t> supports;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
    if (std::popcount(mask) == s) supports.push_back(mask);
  double acc = 0.0;
  for (const std::uint32_t a : supports)
    for (const std::uint32_t b : supports)
      acc += std::exp(lam * double(std::popcount(a & b)) / double(s));
  const double count = double(supports.size());
  return acc / (count * count);
}

Eigen::VectorXd coeff_on_support(int m, const std::vector<int>& support) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  const double value = 1.0 / std::sqrt(double(support.size()));
  for (const int idx : support) b[idx] = value;
  return b;
}

// Minimum centered staircase norm^2 over all sparsity-s coefficient supports
// (the exact support set of the sampler), built from the F and G matrices so
// the computation does not go through the validating fg_vector path.
double min_centered_norm_sq(const PriorSampler& prior) {
  const Eigen::MatrixXd F = prior.fg_f_matrix();
  const Eigen::MatrixXd& G = prior.fg_g_matrix();
  const int m = prior.partition().m;
  const int s = prior.sparsity();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> support(static_cast<std::size_t>(s));
  // Enumerate s-subsets of {0..m-1} in lexicographic order.
  for (int i = 0; i < s; ++i) support[static_cast<std::size_t>(i)] = i;
  while (true) {
    const Eigen::VectorXd eta = F * (G * coeff_on_support(m, support));
    const Eigen::VectorXd centered = eta.array() - eta.mean();
    best = std::min(best, centered.squaredNorm());
    int pos = s - 1;
    while (pos >= 0 && support[static_cast<std::size_t>(pos)] == m - s + pos) --pos;
    if (pos < 0) break;
    ++support[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < s; ++j)
      support[static_cast<std::size_t>(j)] =
          support[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace

TEST_CASE("sparse pair moment matches frozen hypergeometric values",
          "[lowerbound]") {
  for (const auto& c : oracle::kSparseMoments) {
    const double got = orthant_chi2_moment_exact(c.d, c.s, c.lam);
    REQUIRE(got == Catch::Approx(c.value).epsilon(1e-10));
  }
}

TEST_CASE("sparse pair moment matches brute-force enumeration at d=6",
          "[lowerbound]") {
  for (const int s : {1, 2, 3})
    for (const double lam : {0.5, 1.25}) {
      const double brute = moment_brute_force(6, s, lam);
      const double fast = orthant_chi2_moment_exact(6, s, lam);
      REQUIRE(fast == Catch::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("sparse moment series coefficients are consistent", "[lowerbound]") {
  const int d = 100;
  const int s = 10;
  const double lam = 1.25;
  // Successive coefficient ratios match the closed form and decrease.
  double prev_ratio = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= s; ++i) {
    const double from_logs =
        std::exp(orthant_ai_log(d, s, i) - orthant_ai_log(d, s, i - 1));
    const double ratio = orthant_ai_ratio(d, s, i);
    REQUIRE(from_logs == Catch::Approx(ratio).epsilon(1e-10));
    REQUIRE(ratio < prev_ratio);
    prev_ratio = ratio;
  }
  // Re-summing the series A_i z^i / i! reproduces the direct evaluation.
  double total = 0.0;
  for (int i = 0; i <= s; ++i)
    total += std::exp(orthant_ai_log(d, s, i) + lam * double(i) / double(s) -
                      std::lgamma(double(i) + 1.0));
  REQUIRE(total ==
          Catch::Approx(orthant_chi2_moment_exact(d, s, lam)).epsilon(1e-12));
}

TEST_CASE("closed-form moment bound matches frozen values and dominates",
          "[lowerbound]") {
  for (const auto& c : oracle::kMomentBounds) {
    const double lam = std::sqrt(double(c.d)) / 8.0;
    REQUIRE(orthant_moment_bound(c.d, lam) ==
            Catch::Approx(c.value).epsilon(1e-12));
    const int s = static_cast<int>(std::floor(std::sqrt(double(c.d))));
    for (const double l : {0.25, 1.0, lam, 4.0})
      REQUIRE(orthant_chi2_moment_exact(c.d, s, l) <=
              orthant_moment_bound(c.d, l));
  }
  // The d = 81 bound certifies a nontrivial radius: it stays below 2.
  REQUIRE(orthant_moment_bound(81, std::sqrt(81.0) / 8.0) < 2.0);
}

TEST_CASE("moment input validation", "[lowerbound]") {
  REQUIRE_THROWS_AS(orthant_chi2_moment_exact(4, 0, 1.0), ConfigError);
  REQUIRE_THROWS_AS(orthant_chi2_moment_exact(4, 3, 1.0), ConfigError);
  REQUIRE_THROWS_AS(orthant_chi2_moment_exact(16, 4, -0.5), ConfigError);
  REQUIRE_THROWS_AS(orthant_moment_bound(3, 1.0), ConfigError);
  REQUIRE_THROWS_AS(orthant_ai_log(10, 3, 4), ConfigError);
  REQUIRE_THROWS_AS(orthant_ai_ratio(10, 3, 0), ConfigError);
}

TEST_CASE("staircase partition matches frozen tables", "[lowerbound]") {
  for (const auto& c : oracle::kFgPartitions) {
    const conetest::FgPartition part = fg_partition(static_cast<int>(c.d));
    REQUIRE(part.m == static_cast<int>(c.m));
    REQUIRE(part.s == static_cast<int>(c.s));
    REQUIRE(part.lengths.size() == c.blocks.size());
    long long total = 0;
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
      REQUIRE(part.lengths[i] == static_cast<int>(c.blocks[i]));
      total += part.lengths[i];
    }
    REQUIRE(total == c.d);
    for (std::size_t i = 0; i + 1 < part.lengths.size(); ++i)
      REQUIRE(part.lengths[i] >= 9 * part.lengths[i + 1]);
  }
  REQUIRE_THROWS_AS(fg_partition(1), ConfigError);
}

TEST_CASE("staircase block basis is orthonormal", "[lowerbound]") {
  for (const int d : {1000, 10000}) {
    const PriorSampler prior = build_monotone_fg(d);
    const Eigen::MatrixXd F = prior.fg_f_matrix();
    const int m = prior.partition().m;
    const Eigen::MatrixXd gram = F.transpose() * F;
    REQUIRE((gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <=
            1e-12);
  }
}

TEST_CASE("staircase coefficient Gram products satisfy the decay budget",
          "[lowerbound]") {
  // For unit-sparsity coefficients e_i the pair products <G e_i, G e_j> must
  // stay below 9/4 * <e_i, e_j> + 27/32, exhaustively over all block pairs.
  for (const int d : {256, 1000}) {
    const PriorSampler prior = build_monotone_fg(d);
    REQUIRE(prior.sparsity() == 1);
    const Eigen::MatrixXd& G = prior.fg_g_matrix();
    const int m = prior.partition().m;
    const Eigen::MatrixXd gram = G.transpose() * G;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double budget = (i == j ? 9.0 / 4.0 : 0.0) + 27.0 / 32.0;
        REQUIRE(gram(i, j) <= budget);
      }
  }
}

TEST_CASE("staircase coefficient norm can dip below the block-decay target",
          "[lowerbound]") {
  // At d = 10000 the prior has four blocks and sparsity two; the support
  // {first, last} yields ||G b||^2 = 1603/1458, strictly below the
  // 9/4 - 63/(32 s) = 1.265625 level that per-sample norm arguments assume.
  const PriorSampler prior = build_monotone_fg(10000);
  REQUIRE(prior.partition().m == 4);
  REQUIRE(prior.sparsity() == 2);
  const Eigen::VectorXd b = coeff_on_support(4, {0, 3});
  const double norm_sq = (prior.fg_g_matrix() * b).squaredNorm();
  REQUIRE(norm_sq == Catch::Approx(1603.0 / 1458.0).epsilon(1e-12));
  REQUIRE(norm_sq < 9.0 / 4.0 - 63.0 / (32.0 * 2.0));
  // The uncentered sample itself is still a valid nondecreasing unit vector.
  const Eigen::VectorXd eta = prior.fg_vector(b);
  REQUIRE(eta.norm() >= 1.0 - 1e-12);
}

TEST_CASE("centered staircase minima match exact enumeration", "[lowerbound]") {
  for (const auto& c : oracle::kFgCenteredMinima) {
    const PriorSampler prior = build_monotone_fg(static_cast<int>(c.d), true);
    const double got = min_centered_norm_sq(prior);
    REQUIRE(got == Catch::Approx(c.min_norm_sq).epsilon(1e-12));
    REQUIRE(got < 1.0);  // centering genuinely breaks the unit-norm floor
  }
}

TEST_CASE("centered staircase sampler reports the norm violation",
          "[lowerbound]") {
  // Every d = 1000 support centers to norm below one, so the first draw from
  // any stream must throw rather than emit an invalid prior sample.
  const PriorSampler prior = build_monotone_fg(1000, true);
  for (const std::uint64_t seed : {1ull, 2ull, 99ull}) {
    RandomStream rs{seed, stream_id(stream_context::kPriorPairLeft, 0, 0)};
    REQUIRE_THROWS_AS(prior.sample(rs), NumericalError);
  }
}

TEST_CASE("sparse orthant sampler emits exact s-sparse unit vectors",
          "[lowerbound]") {
  const int d = 100;
  const PriorSampler prior = PriorSampler::orthant_sparse(d);
  REQUIRE(prior.sparsity() == 10);
  const double value = 1.0 / std::sqrt(10.0);
  Eigen::VectorXd hits = Eigen::VectorXd::Zero(d);
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    RandomStream rs{7, stream_id(stream_context::kPriorPairLeft, 0,
                                 static_cast<std::uint64_t>(i))};
    const Eigen::VectorXd eta = prior.sample(rs);
    int nonzero = 0;
    for (int j = 0; j < d; ++j)
      if (eta[j] != 0.0) {
        ++nonzero;
        REQUIRE(eta[j] == Catch::Approx(value).epsilon(1e-15));
        hits[j] += 1.0;
      }
    REQUIRE(nonzero == 10);
    REQUIRE(eta.norm() == Catch::Approx(1.0).epsilon(1e-12));
  }
  // Every coordinate should be selected at least once in 200 draws of 10.
  REQUIRE(hits.minCoeff() > 0.0);
}

TEST_CASE("staircase sampler emits nondecreasing unit-or-larger vectors",
          "[lowerbound]") {
  const PriorSampler prior = build_monotone_fg(256);
  for (int i = 0; i < 100; ++i) {
    RandomStream rs{11, stream_id(stream_context::kPriorPairRight, 0,
                                  static_cast<std::uint64_t>(i))};
    const Eigen::VectorXd eta = prior.sample(rs);
    REQUIRE(eta.size() == 256);
    for (int j = 0; j + 1 < 256; ++j) REQUIRE(eta[j] <= eta[j + 1]);
    REQUIRE(eta.norm() >= 1.0 - 1e-12);
  }
}

TEST_CASE("projection prior samples live on the cone with unit-plus norm",
          "[lowerbound]") {
  const ConeDescriptor cone = make_circular(0.8, 16);
  const double width = estimate_width(cone, 4000, 5).norm.mean;
  PriorSampler prior = PriorSampler::projection_based(cone, width);
  RandomStream rs{3, stream_id(stream_context::kPriorPairLeft, 0, 0)};
  const Eigen::VectorXd eta = prior.sample(rs);
  REQUIRE(eta.norm() >= 1.0 - 1e-12);
  REQUIRE(is_member(cone, eta));
  REQUIRE(prior.last_attempts() >= 1);
  // Same stream state reproduces the sample bit for bit.
  RandomStream rs2{3, stream_id(stream_context::kPriorPairLeft, 0, 0)};
  std::int64_t attempts = 0;
  const Eigen::VectorXd again =
      sample_projection_prior(cone, width, rs2, &attempts);
  REQUIRE((eta - again).norm() == 0.0);
  REQUIRE(attempts == prior.last_attempts());
}

TEST_CASE("prior construction validation", "[lowerbound]") {
  REQUIRE_THROWS_AS(PriorSampler::projection_based(make_orthant(4), 0.0),
                    ConfigError);
  REQUIRE_THROWS_AS(PriorSampler::orthant_sparse(3), ConfigError);
  REQUIRE(prior_kind_name(PriorKind::ProjectionBased) == "projection");
  REQUIRE(prior_kind_name(PriorKind::OrthantSparse) == "orthant-sparse");
  REQUIRE(prior_kind_name(PriorKind::MonotoneFG) == "monotone-fg");
  REQUIRE(moment_method_name(MomentMethod::ExactHypergeometric) ==
          "exact-hypergeometric");
  REQUIRE(moment_method_name(MomentMethod::McPairs) == "mc-pairs");
}

TEST_CASE("error bound uses the exact moment for the sparse prior",
          "[lowerbound]") {
  const PriorSampler prior = PriorSampler::orthant_sparse(100);
  const LowerBoundPoint pt = chi2_error_lower_bound(prior, 1.5, 2, 17);
  REQUIRE(pt.method == MomentMethod::ExactHypergeometric);
  REQUIRE(pt.moment_se == 0.0);
  REQUIRE(pt.n == 0);
  REQUIRE_FALSE(pt.heavy_tail);
  const double expected = orthant_chi2_moment_exact(100, 10, 1.5 * 1.5);
  REQUIRE(pt.moment == Catch::Approx(expected).epsilon(1e-15));
  const double lb = 1.0 - 0.5 * std::sqrt(expected - 1.0);
  REQUIRE(pt.error_lb == Catch::Approx(lb).margin(1e-15));

  // epsilon = 0 gives a vacuous-moment, error-one point.
  const LowerBoundPoint zero = chi2_error_lower_bound(prior, 0.0, 2, 17);
  REQUIRE(zero.moment == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(zero.error_lb == Catch::Approx(1.0).margin(1e-12));

  // Larger separation always weakens the bound.
  double prev = 2.0;
  for (const double eps : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    const double lb_eps = chi2_error_lower_bound(prior, eps, 2, 17).error_lb;
    REQUIRE(lb_eps <= prev + 1e-15);
    prev = lb_eps;
  }
  // And eventually clamps to zero rather than going negative.
  REQUIRE(chi2_error_lower_bound(prior, 6.0, 2, 17).error_lb == 0.0);

  REQUIRE_THROWS_AS(chi2_error_lower_bound(prior, -1.0, 2, 17), ConfigError);
}

TEST_CASE("pair-sampled moment matches the quadrature value", "[lowerbound]") {
  // Full space at d = 8: the projection is the identity, so the prior is a
  // conditioned-and-rescaled Gaussian whose pair moment has an independent
  // quadrature evaluation frozen in the oracle tables.
  PriorSampler prior = PriorSampler::projection_based(
      make_full_space(8), oracle::kProjectionFullD8Width);
  const double eps = std::sqrt(0.5);
  const LowerBoundPoint pt = chi2_error_lower_bound(prior, eps, 3000, 11);
  REQUIRE(pt.method == MomentMethod::McPairs);
  REQUIRE(pt.n == 3000);
  REQUIRE(pt.moment_se > 0.0);
  REQUIRE(pt.moment_se < 0.2);
  REQUIRE(std::abs(pt.moment - oracle::kProjectionFullD8MomentEpsSq05) <=
          6.0 * pt.moment_se + 1e-9);
  // Same seed replays bit for bit; a different seed moves the estimate.
  const LowerBoundPoint again = chi2_error_lower_bound(prior, eps, 3000, 11);
  REQUIRE(again.moment == pt.moment);
  REQUIRE(again.moment_se == pt.moment_se);
  const LowerBoundPoint other = chi2_error_lower_bound(prior, eps, 3000, 12);
  REQUIRE(other.moment != pt.moment);

  REQUIRE_THROWS_AS(chi2_error_lower_bound(prior, eps, 1, 11), ConfigError);
}

TEST_CASE("extreme separations trip the heavy-tail diagnostic", "[lowerbound]") {
  // At d = 3 with a huge separation the largest pair term dwarfs the rest,
  // so the top-percentile share must flag the estimate as untrustworthy.
  PriorSampler prior = PriorSampler::projection_based(
      make_full_space(3), estimate_width(make_full_space(3), 4000, 5).norm.mean);
  const LowerBoundPoint pt =
      chi2_error_lower_bound(prior, std::sqrt(50.0), 5000, 21);
  REQUIRE(pt.heavy_tail);
}

TEST_CASE("lower radius inverts the exact moment at the target error",
          "[lowerbound]") {
  const PriorSampler prior = PriorSampler::orthant_sparse(100);
  for (const double rho : {0.5, 0.1}) {
    const LowerRadiusEstimate est = minimax_lower_radius(prior, rho, 2, 9);
    // At the returned radius the bound sits at rho, i.e. the moment equals
    // 1 + 4 (1 - rho)^2.
    const double target = 1.0 + 4.0 * (1.0 - rho) * (1.0 - rho);
    REQUIRE(est.at_radius.moment == Catch::Approx(target).epsilon(1e-9));
    REQUIRE(est.radius_sq == Catch::Approx(est.epsilon * est.epsilon).epsilon(1e-15));
    REQUIRE(est.bracket_lo <= est.radius_sq);
    REQUIRE(est.radius_sq <= est.bracket_hi);
    const double lb_lo = chi2_error_lower_bound(
        prior, std::sqrt(est.bracket_lo), 2, 9).error_lb;
    const double lb_hi = chi2_error_lower_bound(
        prior, std::sqrt(est.bracket_hi), 2, 9).error_lb;
    REQUIRE(lb_lo >= rho);
    REQUIRE(lb_hi < rho);
  }
  REQUIRE_THROWS_AS(minimax_lower_radius(prior, 0.0, 2, 9), ConfigError);
  REQUIRE_THROWS_AS(minimax_lower_radius(prior, 1.0, 2, 9), ConfigError);
}

TEST_CASE("lower radius reuses pair draws across the bisection", "[lowerbound]") {
  PriorSampler prior = PriorSampler::projection_based(
      make_full_space(8), oracle::kProjectionFullD8Width);
  const LowerRadiusEstimate est = minimax_lower_radius(prior, 0.3, 1500, 13);
  // The final point is evaluated on the same common random numbers, so the
  // reported bound must sit at the target up to bisection resolution.
  REQUIRE(est.at_radius.error_lb == Catch::Approx(0.3).margin(1e-6));
  REQUIRE(est.bracket_lo <= est.radius_sq);
  REQUIRE(est.radius_sq <= est.bracket_hi);
  const LowerRadiusEstimate replay = minimax_lower_radius(prior, 0.3, 1500, 13);
  REQUIRE(replay.radius_sq == est.radius_sq);
  REQUIRE(replay.at_radius.moment == est.at_radius.moment);
}
