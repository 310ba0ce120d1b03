#pragma once

// Monte Carlo primitives: a mean/standard-error pair and a replicated
// estimator in which replicate i draws from its own random stream.

#include <cmath>
#include <cstdint>
#include <functional>

#include "conetest/errors.hpp"
#include "conetest/rng.hpp"

namespace conetest {

// A Monte Carlo estimate: sample mean, standard error of the mean, the
// replicate count, and the seed that reproduces it.
struct McEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
};

// Welford's online mean/variance accumulator.
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }

  double variance() const {
    return (n_ > 1) ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }

  double standard_error() const {
    return (n_ > 1) ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

  McEstimate estimate(std::uint64_t seed) const {
    return McEstimate{mean(), standard_error(), count(), seed};
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Replicated Monte Carlo: evaluates f once per replicate, replicate i reading
// from stream (context, lane, i) under the given seed.
inline McEstimate mc_estimate(const std::function<double(RandomStream&)>& f,
                              std::int64_t n, std::uint64_t seed,
                              unsigned context, unsigned lane = 0) {
  if (n < 1) throw ConfigError("monte carlo replicate count must be >= 1");
  RunningStat acc;
  for (std::int64_t i = 0; i < n; ++i) {
    RandomStream rs(seed, stream_id(context, lane, static_cast<std::uint64_t>(i)));
    acc.add(f(rs));
  }
  return acc.estimate(seed);
}

}  // namespace conetest
