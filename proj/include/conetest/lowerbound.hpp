#pragma once

// Information-theoretic lower bounds on minimax testing error via priors on
// K ∩ {||eta|| >= 1} and the chi-square distance: for y = eps*eta + g with
// eta ~ Q, the total testing error of ANY test is at least
//     1 - (1/2) sqrt( E exp(eps^2 <eta, eta'>) - 1 ),
// where eta, eta' are an i.i.d. pair from Q. Three prior families:
//   - ProjectionBased: Pi_K g conditioned on ||Pi_K g|| >= width/2, rescaled;
//   - OrthantSparse:   uniform s-sparse vectors with entries 1/sqrt(s),
//                      s = floor(sqrt(d)), whose moment is an exact
//                      hypergeometric sum;
//   - MonotoneFG:      block staircase eta = F*G*b with geometrically
//                      decaying block lengths and sparse nonnegative b.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conetest/cones.hpp"
#include "conetest/errors.hpp"
#include "conetest/geometry.hpp"
#include "conetest/mc.hpp"
#include "conetest/rng.hpp"

namespace conetest {

enum class PriorKind { ProjectionBased, OrthantSparse, MonotoneFG };

inline std::string prior_kind_name(PriorKind k) {
  switch (k) {
    case PriorKind::ProjectionBased: return "projection";
    case PriorKind::OrthantSparse: return "orthant-sparse";
    case PriorKind::MonotoneFG: return "monotone-fg";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Exact hypergeometric moment for the sparse orthant prior
// ---------------------------------------------------------------------------

namespace detail {

inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

inline double log_sum_exp(const std::vector<double>& terms) {
  const double m = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (const double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

}  // namespace detail

// E exp(lambda <eta, eta'>) for two independent uniform s-sparse 1/sqrt(s)
// vectors: the overlap |supp ∩ supp'| is hypergeometric, so the moment is
//   sum_{i=0}^{s} C(s,i) C(d-s,s-i) / C(d,s) * exp(lambda i / s),
// evaluated in log space.
inline double orthant_chi2_moment_exact(int d, int s, double lambda) {
  if (s < 1 || 2 * s > d)
    throw ConfigError("orthant moment: need 1 <= s <= d/2");
  if (lambda < 0.0) throw ConfigError("orthant moment: lambda must be >= 0");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(s) + 1);
  const double log_total = detail::log_binomial(d, s);
  for (int i = 0; i <= s; ++i)
    terms.push_back(detail::log_binomial(s, i) +
                    detail::log_binomial(d - s, s - i) - log_total +
                    lambda * double(i) / double(s));
  return std::exp(detail::log_sum_exp(terms));
}

// Closed-form upper bound exp(exp((2+lambda)/(sqrt(d)-1)) - (1-1/sqrt(d))^2)
// that dominates the exact moment at s = floor(sqrt(d)).
inline double orthant_moment_bound(int d, double lambda) {
  if (d < 4) throw ConfigError("orthant moment bound: need d >= 4");
  const double rd = std::sqrt(double(d));
  return std::exp(std::exp((2.0 + lambda) / (rd - 1.0)) -
                  (1.0 - 1.0 / rd) * (1.0 - 1.0 / rd));
}

// Coefficients of the moment written as sum_i A_i z^i / i! with z =
// exp(lambda/s): A_i is lambda-free and the ratio A_i/A_{i-1} equals
// (s-i+1)^2 / (d-2s+i), which is decreasing in i.
inline double orthant_ai_log(int d, int s, int i) {
  if (i < 0 || i > s) throw ConfigError("orthant A_i: need 0 <= i <= s");
  return 2.0 * (std::lgamma(double(s) + 1.0) + std::lgamma(double(d - s) + 1.0) -
                std::lgamma(double(s - i) + 1.0)) -
         std::lgamma(double(d) + 1.0) - std::lgamma(double(d - 2 * s + i) + 1.0);
}

inline double orthant_ai_ratio(int d, int s, int i) {
  if (i < 1 || i > s) throw ConfigError("orthant A ratio: need 1 <= i <= s");
  const double num = double(s - i + 1);
  return num * num / double(d - 2 * s + i);
}

// ---------------------------------------------------------------------------
// Monotone staircase construction
// ---------------------------------------------------------------------------

struct FgPartition {
  int m = 0;                 // number of blocks
  std::vector<int> lengths;  // block lengths, sum to d, geometrically decaying
  int s = 0;                 // sparsity floor(sqrt(m)) of the coefficient prior
};

// Block lengths l_i = floor((delta-1)/delta^i * (d + log_delta d + 3)) with
// delta = 9, cut at the first index where the running sum reaches d; the last
// block is the remainder, which keeps every ratio l_i / l_{i+1} >= delta.
inline FgPartition fg_partition(int d) {
  if (d < 2) throw ConfigError("staircase partition: need d >= 2");
  const double delta = 9.0;
  const double base = double(d) + std::log(double(d)) / std::log(delta) + 3.0;
  FgPartition part;
  long long acc = 0;
  for (int i = 1; acc < d; ++i) {
    const long long li =
        static_cast<long long>(std::floor((delta - 1.0) / std::pow(delta, i) * base));
    if (li < 1) {
      part.lengths.push_back(static_cast<int>(d - acc));
      acc = d;
      break;
    }
    if (acc + li >= d) {
      part.lengths.push_back(static_cast<int>(d - acc));
      acc = d;
    } else {
      part.lengths.push_back(static_cast<int>(li));
      acc += li;
    }
  }
  part.m = static_cast<int>(part.lengths.size());
  part.s = std::max(1, static_cast<int>(std::floor(std::sqrt(double(part.m)))));
  for (int i = 0; i + 1 < part.m; ++i)
    if (part.lengths[i] < 9 * part.lengths[i + 1])
      throw NumericalError("staircase partition: block ratio below 9 at d=" +
                           std::to_string(d) + ", m=" + std::to_string(part.m));
  return part;
}

// ---------------------------------------------------------------------------
// Prior samplers
// ---------------------------------------------------------------------------

class PriorSampler {
 public:
  static PriorSampler projection_based(ConeDescriptor cone, double width) {
    if (!(width > 0.0))
      throw ConfigError("projection prior: width must be > 0");
    PriorSampler p;
    p.kind_ = PriorKind::ProjectionBased;
    p.d_ = cone.dim;
    p.cone_ = std::move(cone);
    p.width_ = width;
    return p;
  }

  static PriorSampler orthant_sparse(int d) {
    if (d < 4) throw ConfigError("sparse orthant prior: need d >= 4");
    PriorSampler p;
    p.kind_ = PriorKind::OrthantSparse;
    p.d_ = d;
    p.s_ = static_cast<int>(std::floor(std::sqrt(double(d))));
    if (2 * p.s_ > d)
      throw ConfigError("sparse orthant prior: sparsity exceeds d/2");
    return p;
  }

  static PriorSampler monotone_fg(int d, bool centered) {
    PriorSampler p;
    p.kind_ = PriorKind::MonotoneFG;
    p.d_ = d;
    p.centered_ = centered;
    p.part_ = fg_partition(d);
    p.s_ = p.part_.s;
    const int m = p.part_.m;
    p.G_ = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) p.G_(i, j) = std::pow(1.0 / 3.0, i - j);
    return p;
  }

  PriorKind kind() const { return kind_; }
  int dim() const { return d_; }
  int sparsity() const { return s_; }
  bool centered() const { return centered_; }
  const FgPartition& partition() const { return part_; }
  const ConeDescriptor& cone() const { return cone_; }
  double width() const { return width_; }

  // Columns of F are block indicators scaled by 1/sqrt(l_j).
  Eigen::MatrixXd fg_f_matrix() const {
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(d_, part_.m);
    int off = 0;
    for (int j = 0; j < part_.m; ++j) {
      F.col(j).segment(off, part_.lengths[j])
          .setConstant(1.0 / std::sqrt(double(part_.lengths[j])));
      off += part_.lengths[j];
    }
    return F;
  }

  const Eigen::MatrixXd& fg_g_matrix() const { return G_; }

  // Staircase vector for a given coefficient vector b (validation included).
  Eigen::VectorXd fg_vector(const Eigen::VectorXd& b) const {
    const Eigen::VectorXd u = G_ * b;
    Eigen::VectorXd eta(d_);
    int off = 0;
    for (int j = 0; j < part_.m; ++j) {
      eta.segment(off, part_.lengths[j])
          .setConstant(u[j] / std::sqrt(double(part_.lengths[j])));
      off += part_.lengths[j];
    }
    if (centered_) eta.array() -= eta.mean();
    validate_fg(eta, u.norm());
    return eta;
  }

  Eigen::VectorXd sample(RandomStream& rs) const {
    switch (kind_) {
      case PriorKind::ProjectionBased:
        return sample_projection(rs);
      case PriorKind::OrthantSparse: {
        Eigen::VectorXd eta = Eigen::VectorXd::Zero(d_);
        const double value = 1.0 / std::sqrt(double(s_));
        for (const int idx : sample_support(rs, d_, s_)) eta[idx] = value;
        return eta;
      }
      case PriorKind::MonotoneFG: {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(part_.m);
        const double value = 1.0 / std::sqrt(double(s_));
        for (const int idx : sample_support(rs, part_.m, s_)) b[idx] = value;
        return fg_vector(b);
      }
    }
    throw ConfigError("prior sampler: unknown kind");
  }

  std::int64_t last_attempts() const { return last_attempts_; }

 private:
  PriorSampler() = default;

  static std::vector<int> sample_support(RandomStream& rs, int n, int k) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < k; ++i) {
      const int j =
          i + static_cast<int>(rs.below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    idx.resize(static_cast<std::size_t>(k));
    return idx;
  }

  Eigen::VectorXd sample_projection(RandomStream& rs) const {
    const double threshold = width_ / 2.0;
    constexpr std::int64_t kMaxAttempts = 1000000;
    for (std::int64_t attempt = 1; attempt <= kMaxAttempts; ++attempt) {
      const Eigen::VectorXd p = project(cone_, rs.normal_vector(d_));
      if (p.norm() >= threshold) {
        last_attempts_ = attempt;
        Eigen::VectorXd eta = p / threshold;
        if (eta.norm() < 1.0 - 1e-12)
          throw NumericalError("projection prior emitted a sub-unit sample");
        if (!is_member(cone_, eta))
          throw NumericalError("projection prior sample failed cone membership");
        return eta;
      }
    }
    throw NumericalError(
        "projection prior: rejection sampling stalled after 1e6 draws "
        "(width estimate likely too large)");
  }

  void validate_fg(const Eigen::VectorXd& eta, double coeff_norm) const {
    for (int i = 0; i + 1 < d_; ++i)
      if (eta[i] > eta[i + 1])
        throw NumericalError(
            "staircase prior sample not nondecreasing at d=" +
            std::to_string(d_) + ", m=" + std::to_string(part_.m));
    const double nrm = centered_ ? eta.norm() : coeff_norm;
    if (nrm < 1.0 - 1e-12)
      throw NumericalError(
          "staircase prior sample norm " + std::to_string(nrm) +
          " below 1 at d=" + std::to_string(d_) +
          ", m=" + std::to_string(part_.m) +
          (centered_ ? " (centered variant)" : ""));
  }

  PriorKind kind_ = PriorKind::OrthantSparse;
  int d_ = 0;
  int s_ = 0;
  bool centered_ = false;
  ConeDescriptor cone_;
  double width_ = 0.0;
  FgPartition part_;
  Eigen::MatrixXd G_;
  mutable std::int64_t last_attempts_ = 0;
};

// Standalone rejection sampler matching the prior's definition; returns the
// sample and reports the number of draws used through `attempts`.
inline Eigen::VectorXd sample_projection_prior(const ConeDescriptor& cone,
                                               double width_estimate,
                                               RandomStream& rs,
                                               std::int64_t* attempts = nullptr) {
  PriorSampler p = PriorSampler::projection_based(cone, width_estimate);
  Eigen::VectorXd eta = p.sample(rs);
  if (attempts) *attempts = p.last_attempts();
  return eta;
}

inline Eigen::VectorXd sample_orthant_sparse(int d, RandomStream& rs) {
  return PriorSampler::orthant_sparse(d).sample(rs);
}

inline PriorSampler build_monotone_fg(int d, bool centered = false) {
  return PriorSampler::monotone_fg(d, centered);
}

// ---------------------------------------------------------------------------
// Chi-square error lower bound
// ---------------------------------------------------------------------------

enum class MomentMethod { ExactHypergeometric, McPairs };

struct LowerBoundPoint {
  double epsilon = 0.0;
  double moment = 1.0;
  double moment_se = 0.0;
  double error_lb = 1.0;
  MomentMethod method = MomentMethod::McPairs;
  bool heavy_tail = false;  // top 1% of pair terms carried > 50% of the sum
  std::int64_t n = 0;
  std::uint64_t seed = 0;
};

inline std::string moment_method_name(MomentMethod m) {
  return m == MomentMethod::ExactHypergeometric ? "exact-hypergeometric"
                                                : "mc-pairs";
}

namespace detail {

// Inner products of i.i.d. prior pairs; the expensive part, reusable across
// epsilon values (common random numbers for the radius bisection).
inline std::vector<double> prior_pair_dots(const PriorSampler& sampler,
                                           std::int64_t n, std::uint64_t seed) {
  if (n < 2) throw ConfigError("lower bound: need n >= 2 pairs");
  std::vector<double> dots(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    RandomStream left{seed, stream_id(stream_context::kPriorPairLeft, 0,
                                      static_cast<std::uint64_t>(i))};
    RandomStream right{seed, stream_id(stream_context::kPriorPairRight, 0,
                                       static_cast<std::uint64_t>(i))};
    dots[static_cast<std::size_t>(i)] =
        sampler.sample(left).dot(sampler.sample(right));
  }
  return dots;
}

struct MomentEstimate {
  double moment = 1.0;
  double se = 0.0;
  bool heavy_tail = false;
};

// Mean of exp(eps^2 * dot) with log-sum-exp stabilization; the SE and the
// tail-domination flag are computed on terms scaled by the max exponent.
inline MomentEstimate moment_from_dots(const std::vector<double>& dots,
                                       double eps_sq) {
  const std::size_t n = dots.size();
  double tmax = -std::numeric_limits<double>::infinity();
  for (const double d : dots) tmax = std::max(tmax, eps_sq * d);
  std::vector<double> scaled(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = std::exp(eps_sq * dots[i] - tmax);
    sum += scaled[i];
  }
  MomentEstimate out;
  out.moment = std::exp(tmax) * (sum / double(n));
  double var = 0.0;
  const double mean_scaled = sum / double(n);
  for (const double sv : scaled) var += (sv - mean_scaled) * (sv - mean_scaled);
  var /= double(n - 1);
  out.se = std::exp(tmax) * std::sqrt(var / double(n));
  std::vector<double> sorted = scaled;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t top = std::max<std::size_t>(1, n / 100);
  double top_sum = 0.0;
  for (std::size_t i = n - top; i < n; ++i) top_sum += sorted[i];
  out.heavy_tail = top_sum > 0.5 * sum;
  return out;
}

inline double error_lb_from_moment(double moment) {
  const double excess = std::max(0.0, moment - 1.0);
  return std::clamp(1.0 - 0.5 * std::sqrt(excess), 0.0, 1.0);
}

}  // namespace detail

inline LowerBoundPoint chi2_error_lower_bound(const PriorSampler& sampler,
                                              double epsilon,
                                              std::int64_t n_pairs,
                                              std::uint64_t seed) {
  if (epsilon < 0.0) throw ConfigError("lower bound: epsilon must be >= 0");
  LowerBoundPoint pt;
  pt.epsilon = epsilon;
  pt.seed = seed;
  if (sampler.kind() == PriorKind::OrthantSparse) {
    pt.method = MomentMethod::ExactHypergeometric;
    pt.moment = orthant_chi2_moment_exact(sampler.dim(), sampler.sparsity(),
                                          epsilon * epsilon);
    pt.moment_se = 0.0;
    pt.n = 0;
  } else {
    pt.method = MomentMethod::McPairs;
    const auto dots = detail::prior_pair_dots(sampler, n_pairs, seed);
    const auto est = detail::moment_from_dots(dots, epsilon * epsilon);
    pt.moment = est.moment;
    pt.moment_se = est.se;
    pt.heavy_tail = est.heavy_tail;
    pt.n = n_pairs;
    if (pt.moment < 1.0 - 5.0 * pt.moment_se)
      throw NumericalError(
          "pair moment " + std::to_string(pt.moment) +
          " is below 1 beyond noise; prior or moment computation bug");
  }
  pt.error_lb = detail::error_lb_from_moment(pt.moment);
  return pt;
}

// ---------------------------------------------------------------------------
// Lower radius: largest epsilon whose error lower bound still exceeds rho
// ---------------------------------------------------------------------------

struct LowerRadiusEstimate {
  double epsilon = 0.0;
  double radius_sq = 0.0;
  double bracket_lo = 0.0;  // squared; error_lb still >= rho here
  double bracket_hi = 0.0;  // squared; error_lb < rho here
  LowerBoundPoint at_radius;
  int expansions = 0;
};

inline LowerRadiusEstimate minimax_lower_radius(const PriorSampler& sampler,
                                                double rho,
                                                std::int64_t n_pairs,
                                                std::uint64_t seed,
                                                int bisect_iters = 48,
                                                int max_expansions = 60) {
  if (!(rho > 0.0 && rho < 1.0))
    throw ConfigError("lower radius: rho must lie in (0, 1)");
  const bool exact = sampler.kind() == PriorKind::OrthantSparse;
  std::vector<double> dots;
  if (!exact) dots = detail::prior_pair_dots(sampler, n_pairs, seed);
  auto error_at = [&](double eps) {
    if (exact)
      return detail::error_lb_from_moment(orthant_chi2_moment_exact(
          sampler.dim(), sampler.sparsity(), eps * eps));
    return detail::error_lb_from_moment(
        detail::moment_from_dots(dots, eps * eps).moment);
  };
  LowerRadiusEstimate out;
  double lo = 0.0;
  double hi = 1.0;
  while (error_at(hi) >= rho) {
    if (++out.expansions > max_expansions)
      throw NumericalError(
          "lower radius: error bound still above target after doubling limit");
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < bisect_iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (error_at(mid) >= rho)
      lo = mid;
    else
      hi = mid;
  }
  out.epsilon = 0.5 * (lo + hi);
  out.radius_sq = out.epsilon * out.epsilon;
  out.bracket_lo = lo * lo;
  out.bracket_hi = hi * hi;
  out.at_radius = chi2_error_lower_bound(sampler, out.epsilon, exact ? 2 : n_pairs, seed);
  return out;
}

}  // namespace conetest
