#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conetest/geometry.hpp"
#include "oracle_tables.hpp"

using namespace conetest;

namespace {

// E ||g||_k for a standard normal in R^k: sqrt(2) Gamma((k+1)/2) / Gamma(k/2).
double chi_mean(int k) {
  return std::sqrt(2.0) *
         std::exp(std::lgamma(0.5 * (k + 1)) - std::lgamma(0.5 * k));
}

}  // namespace

TEST_CASE("orthant width matches the closed form", "[geometry]") {
  const int d = 16;
  const WidthEstimate w = estimate_width(make_orthant(d), 20000, 31);
  // E ||Pi g||^2 = d/2 exactly for the nonnegative orthant.
  REQUIRE(std::abs(w.norm_sq.mean - 0.5 * d) <= 5.0 * w.norm_sq.se);
  REQUIRE(w.norm.mean > 0.0);
  REQUIRE(w.norm.se > 0.0);
}

TEST_CASE("subspace width equals the chi mean", "[geometry]") {
  for (const int k : {1, 4, 9}) {
    const WidthEstimate w =
        estimate_width(make_coordinate_subspace(16, k), 20000, 32);
    REQUIRE(std::abs(w.norm.mean - chi_mean(k)) <= 5.0 * w.norm.se);
    REQUIRE(std::abs(w.norm_sq.mean - k) <= 5.0 * w.norm_sq.se);
  }
}

TEST_CASE("orthant mean projection is the half-normal mean per coordinate",
          "[geometry]") {
  const int d = 9;
  const MeanProjectionEstimate mp =
      estimate_mean_projection(make_orthant(d), 40000, 33);
  const double half_normal_mean = 1.0 / std::sqrt(2.0 * M_PI);
  for (int j = 0; j < d; ++j)
    REQUIRE(std::abs(mp.mean[j] - half_normal_mean) <= 5.0 * mp.se[j]);
  REQUIRE(std::abs(mp.norm - std::sqrt(double(d)) * half_normal_mean) <=
          5.0 * mp.se_norm);
}

TEST_CASE("sphere infimum is exact on analytic cases", "[geometry]") {
  // Orthant against the all-ones direction: minimized at any basis vector.
  const InfInnerResult a =
      inf_inner_on_sphere(make_orthant(5), Eigen::VectorXd::Ones(5));
  REQUIRE(a.value == Catch::Approx(1.0).margin(1e-12));

  // Monotone cone in the plane against e2: minimized at -(1,1)/sqrt(2).
  Eigen::VectorXd e2(2);
  e2 << 0.0, 1.0;
  const InfInnerResult b = inf_inner_on_sphere(make_monotone(2), e2);
  REQUIRE(b.value == Catch::Approx(-1.0 / std::sqrt(2.0)).margin(1e-12));

  // Circular cone against its axis: boundary rays give cos(alpha).
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(4);
  axis[0] = 1.0;
  const InfInnerResult c = inf_inner_on_sphere(make_circular(0.7, 4), axis);
  REQUIRE(c.value == Catch::Approx(std::cos(0.7)).margin(1e-12));

  // Full space: the infimum is minus the norm of the target.
  Eigen::VectorXd v(3);
  v << 1.0, -2.0, 2.0;
  const InfInnerResult f = inf_inner_on_sphere(make_full_space(3), v);
  REQUIRE(f.value == Catch::Approx(-3.0).margin(1e-12));

  // Product of full spaces mixes blockwise minima with exact weights.
  std::vector<ConeDescriptor> comps;
  comps.push_back(make_full_space(2));
  comps.push_back(make_full_space(2));
  Eigen::VectorXd w(4);
  w << 1.0, 2.0, -2.0, 3.0;
  const InfInnerResult g = inf_inner_on_sphere(make_product(std::move(comps)), w);
  REQUIRE(g.value == Catch::Approx(-std::sqrt(18.0)).margin(1e-12));

  // Zero cone: empty intersection with the sphere.
  const InfInnerResult z =
      inf_inner_on_sphere(make_zero_cone(3), Eigen::VectorXd::Ones(3));
  REQUIRE(z.value == kInf);
  REQUIRE(z.candidates == 0);
}

TEST_CASE("infimum result certifies membership of its argmin", "[geometry]") {
  RandomStream rs(41, stream_id(stream_context::kSphereSamples, 6, 0));
  for (const auto& cone :
       {make_orthant(6), make_monotone(6), make_circular(0.8, 6)}) {
    const Eigen::VectorXd v = rs.normal_vector(6);
    const InfInnerResult r = inf_inner_on_sphere(cone, v);
    REQUIRE(r.value < kInf);
    REQUIRE(r.argmin.size() == 6);
    REQUIRE(r.argmin.norm() == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(is_member(cone, r.argmin, 1e-8));
    REQUIRE(r.argmin.dot(v) == Catch::Approx(r.value).margin(1e-10));
  }
}

TEST_CASE("subspace radii hit the infinite-ratio branches", "[geometry]") {
  const ConeDescriptor cone = make_coordinate_subspace(8, 3);
  const std::int64_t n = 20000;
  const RadiusSummary lr = delta_lr_sq(cone, n, 35);
  const RadiusSummary opt = delta_opt_sq(cone, n, 35);
  // A subspace contains antipodal directions, so the clipped infimum is zero
  // and the likelihood-ratio radius collapses to the width term.
  REQUIRE(lr.ratio_infinite);
  REQUIRE(lr.value == Catch::Approx(lr.width).margin(1e-14));
  // The mean projection of a subspace vanishes, so the optimal-test ratio
  // degenerates the same way.
  REQUIRE(opt.ratio_infinite);
  REQUIRE(opt.value == Catch::Approx(opt.width).margin(1e-14));
}

TEST_CASE("radius functionals are ordered for the circular cone",
          "[geometry]") {
  const GeometrySummary s = summarize_geometry(make_circular(M_PI / 4.0, 32),
                                               20000, 36);
  REQUIRE(s.lr.value <= s.width.norm.mean + 1e-12);
  REQUIRE(s.opt.value <= s.lr.value + 1e-12);
  REQUIRE(!s.lr.ratio_infinite);
  REQUIRE(!s.opt.ratio_infinite);
}

TEST_CASE("mean shift along a cone direction increases the projection norm",
          "[geometry]") {
  const int d = 12;
  Eigen::VectorXd theta = Eigen::VectorXd::Ones(d) / std::sqrt(double(d));
  const McEstimate shift = gamma_shift(make_orthant(d), theta, 20000, 37);
  REQUIRE(shift.mean > 0.0);
  REQUIRE(shift.mean > 3.0 * shift.se);
  REQUIRE_THROWS_AS(
      gamma_shift(make_orthant(d), Eigen::VectorXd::Ones(d + 1), 100, 37),
      ConfigError);
}

TEST_CASE("width variance and exceedance match the one-dimensional law",
          "[geometry]") {
  // For k = 1 the projection norm is |g|: variance 1 - 2/pi, and the
  // probability of exceeding its mean is a known constant.
  const ConeDescriptor line = make_full_space(1);
  const ConcentrationReport rep = concentration_report(line, 50000, 38);
  REQUIRE(std::abs(rep.variance - (1.0 - 2.0 / M_PI)) <= 0.012);
  const McEstimate exceed = median_exceedance(line, 50000, 38);
  REQUIRE(std::abs(exceed.mean - oracle::kHalfNormalExceedance) <= 0.015);
}

TEST_CASE("deviation tails respect the lipschitz rate", "[geometry]") {
  for (const auto& cone : {make_orthant(64), make_monotone(64)}) {
    const ConcentrationReport rep = concentration_report(cone, 30000, 39);
    REQUIRE(rep.tails.size() == 3);
    for (const TailRow& row : rep.tails) {
      REQUIRE(row.bound == Catch::Approx(std::exp(-0.5 * row.t * row.t)));
      REQUIRE(row.upper <= row.bound + 3.0 * row.tail_se + 0.005);
      REQUIRE(row.lower <= row.bound + 3.0 * row.tail_se + 0.005);
    }
    REQUIRE(rep.variance <= 1.5);  // 1-Lipschitz => variance at most 1 + noise
  }
}

TEST_CASE("centered monotone slack stays far below the safety constant",
          "[geometry]") {
  const int d = 128;
  auto pair = make_cone_pair(make_span_of_ones(d), make_monotone(d));
  const ConeDescriptor induced = make_induced_cone(pair);
  const MeanProjectionEstimate mp =
      estimate_mean_projection(induced, 20000, 40);
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(d);
  eta[0] = -1.0 / std::sqrt(2.0);
  eta[d - 1] = 1.0 / std::sqrt(2.0);
  REQUIRE(is_member(induced, eta, 1e-9));
  REQUIRE(eta.dot(mp.mean) <= 40.0);
  REQUIRE(eta.dot(mp.mean) > 0.0);
}

TEST_CASE("geometry summaries are deterministic and serialize", "[geometry]") {
  const GeometrySummary a = summarize_geometry(make_monotone(16), 5000, 41);
  const GeometrySummary b = summarize_geometry(make_monotone(16), 5000, 41);
  REQUIRE(a.width.norm.mean == b.width.norm.mean);
  REQUIRE(a.mean_projection.norm == b.mean_projection.norm);
  REQUIRE(a.lr.value == b.lr.value);
  const nlohmann::json j = geometry_to_json(a);
  REQUIRE(j.at("cone") == "monotone");
  REQUIRE(j.at("dim") == 16);
  REQUIRE(j.at("width").at("n") == 5000);
  REQUIRE(j.contains("delta_lr_sq"));
  REQUIRE(j.contains("delta_opt_sq"));
}

TEST_CASE("width estimation validates inputs", "[geometry]") {
  REQUIRE_THROWS_AS(estimate_width(make_orthant(4), 1, 1), ConfigError);
  REQUIRE_THROWS_AS(estimate_mean_projection(make_orthant(4), 0, 1),
                    ConfigError);
}
