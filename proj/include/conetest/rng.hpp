#pragma once

// Counter-based random number generation.
//
// Every sample in this library is addressed, not sequenced: a draw is a pure
// function of (seed, stream, position). Replicate i of any Monte Carlo loop
// owns stream i, so estimates do not depend on evaluation order and a rerun
// with the same seed is bit-identical.
//
// Generator: Philox-4x32 with 10 rounds (key = the 64-bit seed, counter =
// [stream | block]). Normals are produced by applying the AS 241 inverse
// normal CDF (Wichura's PPND16, accurate to ~1e-16) to 53-bit uniforms; the
// transform is fixed per build so sequences never depend on library internals.

#include <array>
#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace conetest {

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0,
                         std::uint32_t k1) {
  constexpr std::uint64_t kM0 = 0xD2511F53ull;
  constexpr std::uint64_t kM1 = 0xCD9E8D57ull;
  const std::uint64_t p0 = kM0 * c[0];
  const std::uint64_t p1 = kM1 * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

inline std::array<std::uint32_t, 4> philox_block(std::uint64_t seed,
                                                 std::uint64_t stream,
                                                 std::uint64_t block) {
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  std::array<std::uint32_t, 4> c = {
      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  for (int r = 0; r < 10; ++r) {
    philox_round(c, k0, k1);
    k0 += kW0;
    k1 += kW1;
  }
  return c;
}

// AS 241 (PPND16): inverse of the standard normal CDF for p in (0,1).
inline double inverse_normal_cdf(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -value : value;
}

}  // namespace detail

// Addressed stream identity: the same (seed, stream) always replays the same
// sequence; distinct streams are statistically independent.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Namespacing of the 64-bit stream id: the top byte separates usage contexts
// (so e.g. width estimation and error simulation under one seed never share a
// stream), the next two bytes index a lane (e.g. an alternative direction),
// and the low 40 bits index the replicate.
inline std::uint64_t stream_id(unsigned context, unsigned lane,
                               std::uint64_t replicate) {
  return (static_cast<std::uint64_t>(context & 0xFFu) << 56) |
         (static_cast<std::uint64_t>(lane & 0xFFFFu) << 40) |
         (replicate & 0xFFFFFFFFFFull);
}

namespace stream_context {
constexpr unsigned kWidth = 1;
constexpr unsigned kMeanProjection = 2;
constexpr unsigned kSphereSamples = 3;
constexpr unsigned kNullSim = 4;
constexpr unsigned kAltSim = 5;
constexpr unsigned kGammaShift = 6;
constexpr unsigned kPrior = 7;
constexpr unsigned kPriorPairLeft = 8;
constexpr unsigned kPriorPairRight = 9;
constexpr unsigned kPairCheck = 10;
constexpr unsigned kConcentration = 11;
constexpr unsigned kMedianWidth = 12;
constexpr unsigned kMedianExceed = 13;
constexpr unsigned kDirections = 14;
constexpr unsigned kInclusion = 15;
}  // namespace stream_context

// Stateful view over one (seed, stream): hands out uniforms/normals by
// consuming Philox blocks in order. Cheap to construct; not thread-safe
// (use one per replicate).
class RandomStream {
 public:
  explicit RandomStream(RngStream id) : id_(id) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream) : id_{seed, stream} {}

  std::uint64_t next_uint64() {
    const std::uint32_t lo = next_word();
    const std::uint32_t hi = next_word();
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
  }

  // Uniform on the open interval (0,1) with 53-bit resolution.
  double uniform01() {
    return (static_cast<double>(next_uint64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the fixed inverse-CDF transform.
  double normal() { return detail::inverse_normal_cdf(uniform01()); }

  // Uniform integer in [0, m), m >= 1.
  std::uint64_t below(std::uint64_t m) { return next_uint64() % m; }

  Eigen::VectorXd normal_vector(int d) {
    Eigen::VectorXd g(d);
    for (int i = 0; i < d; ++i) g[i] = normal();
    return g;
  }

 private:
  std::uint32_t next_word() {
    if (pos_ == 4) {
      buf_ = detail::philox_block(id_.seed, id_.stream, block_++);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  RngStream id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

inline Eigen::VectorXd sample_std_gaussian(int d, RngStream id) {
  RandomStream rs(id);
  return rs.normal_vector(d);
}

}  // namespace conetest
