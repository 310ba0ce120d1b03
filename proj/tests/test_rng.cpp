#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "conetest/mc.hpp"
#include "conetest/rng.hpp"

using namespace conetest;

TEST_CASE("streams replay bit-identically", "[rng]") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_uint64() == b.next_uint64());
}

TEST_CASE("distinct streams and seeds decorrelate", "[rng]") {
  RandomStream a(42, 7), b(42, 8), c(43, 7);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_uint64();
    if (va == b.next_uint64()) ++same_ab;
    if (va == c.next_uint64()) ++same_ac;
  }
  REQUIRE(same_ab == 0);
  REQUIRE(same_ac == 0);
}

TEST_CASE("replicate streams are order-independent", "[rng]") {
  auto draw = [](std::uint64_t replicate) {
    RandomStream rs(9, stream_id(stream_context::kWidth, 0, replicate));
    return rs.normal_vector(5);
  };
  const Eigen::VectorXd late_first = draw(7);
  const Eigen::VectorXd early = draw(3);
  const Eigen::VectorXd late_again = draw(7);
  REQUIRE((late_first - late_again).norm() == 0.0);
  REQUIRE((early - late_first).norm() != 0.0);
}

TEST_CASE("stream id packs context, lane, replicate", "[rng]") {
  REQUIRE(stream_id(0xAB, 0xCDEF, 0x123456789Aull) == 0xABCDEF123456789Aull);
  REQUIRE(stream_id(1, 0, 0) == (1ull << 56));
  // Replicate field is 40 bits; overflow must not leak into the lane bits.
  REQUIRE(stream_id(0, 1, (1ull << 40)) == (1ull << 40));
}

TEST_CASE("uniforms lie strictly inside (0,1)", "[rng]") {
  RandomStream rs(1, 2);
  for (int i = 0; i < 10000; ++i) {
    const double u = rs.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("below stays within range", "[rng]") {
  RandomStream rs(5, 6);
  for (int i = 0; i < 1000; ++i) REQUIRE(rs.below(17) < 17);
  for (int i = 0; i < 10; ++i) REQUIRE(rs.below(1) == 0);
}

TEST_CASE("inverse normal cdf matches reference quantiles", "[rng]") {
  // Reference values: standard normal quantile function to double precision.
  REQUIRE(detail::inverse_normal_cdf(0.5) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(detail::inverse_normal_cdf(0.975) ==
          Catch::Approx(1.959963984540054).epsilon(1e-12));
  REQUIRE(detail::inverse_normal_cdf(0.9) ==
          Catch::Approx(1.2815515655446004).epsilon(1e-12));
  REQUIRE(detail::inverse_normal_cdf(0.99) ==
          Catch::Approx(2.3263478740408408).epsilon(1e-12));
  REQUIRE(detail::inverse_normal_cdf(0.0001) ==
          Catch::Approx(-3.719016485455709).epsilon(1e-11));
  // Symmetry.
  for (double p : {0.31, 0.047, 0.0021}) {
    REQUIRE(detail::inverse_normal_cdf(p) ==
            Catch::Approx(-detail::inverse_normal_cdf(1.0 - p)).epsilon(1e-12));
  }
}

TEST_CASE("normal draws have standard moments", "[rng]") {
  RunningStat stat;
  RunningStat stat_sq;
  const std::int64_t n = 200000;
  for (std::int64_t i = 0; i < n; ++i) {
    RandomStream rs(2026, stream_id(stream_context::kWidth, 0,
                                    static_cast<std::uint64_t>(i)));
    const double g = rs.normal();
    stat.add(g);
    stat_sq.add(g * g);
  }
  REQUIRE(std::abs(stat.mean()) <= 5.0 * stat.standard_error());
  REQUIRE(std::abs(stat_sq.mean() - 1.0) <= 5.0 * stat_sq.standard_error());
}

TEST_CASE("mc_estimate reproduces and reports its seed", "[rng][mc]") {
  auto f = [](RandomStream& rs) { return rs.normal() * rs.normal(); };
  const McEstimate a = mc_estimate(f, 5000, 77, stream_context::kWidth, 3);
  const McEstimate b = mc_estimate(f, 5000, 77, stream_context::kWidth, 3);
  REQUIRE(a.mean == b.mean);
  REQUIRE(a.se == b.se);
  REQUIRE(a.n == 5000);
  REQUIRE(a.seed == 77);
  const McEstimate c = mc_estimate(f, 5000, 78, stream_context::kWidth, 3);
  REQUIRE(a.mean != c.mean);
}

TEST_CASE("running stat matches two-pass formulas", "[mc]") {
  const std::vector<double> xs{1.5, -2.0, 0.25, 4.0, -1.0, 3.5};
  RunningStat s;
  for (double x : xs) s.add(x);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= double(xs.size() - 1);
  REQUIRE(s.mean() == Catch::Approx(mean).epsilon(1e-14));
  REQUIRE(s.variance() == Catch::Approx(var).epsilon(1e-14));
  REQUIRE(s.standard_error() ==
          Catch::Approx(std::sqrt(var / double(xs.size()))).epsilon(1e-14));
}
