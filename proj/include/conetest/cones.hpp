#pragma once

// Closed convex cones in R^d and their Euclidean projections.
//
// The taxonomy is fixed: orthant, monotone, circular(alpha), subspace, ray,
// generator cone {Xb : b >= 0}, halfspace cone {x : Ax <= 0}, Cartesian
// product, and the induced cone C2 ∩ C1* of a nested non-oblique pair.
// Projections are exact closed forms where available (orthant, circular,
// subspace, ray), PAVA for the monotone cone, active-set NNLS for generator
// cones, and Dykstra's cyclic projection for halfspace cones.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "conetest/errors.hpp"
#include "conetest/rng.hpp"

namespace conetest {

enum class ConeKind {
  Orthant,
  Monotone,
  Circular,
  Subspace,
  Ray,
  GeneratorCone,
  HalfspaceCone,
  Product,
  Induced,
};

struct ConePair;

struct ConeDescriptor {
  ConeKind kind = ConeKind::Orthant;
  int dim = 0;

  // Circular: half-aperture angle in (0, pi/2).
  double alpha = 0.0;

  // Subspace: either the span of the first `coord_k` coordinates (fast path,
  // coord_k in [0, dim]; 0 encodes {0} and dim encodes R^d), or an explicit
  // orthonormal basis (dim x k) when coord_k < 0.
  int coord_k = -1;
  Eigen::MatrixXd basis;

  // Ray: unit direction.
  Eigen::VectorXd axis;

  // GeneratorCone: columns generate the cone.
  Eigen::MatrixXd generators;

  // HalfspaceCone: rows a_i of A define {x : <a_i, x> <= 0}.
  Eigen::MatrixXd halfspaces;

  // Product: ordered components, dims summing to dim.
  std::vector<ConeDescriptor> components;

  // Induced: the defining nested pair.
  std::shared_ptr<const ConePair> pair;
};

enum class CertificateKind { TrustedAnalytic, NumericallyChecked, Unchecked };

struct NonobliqueCertificate {
  CertificateKind kind = CertificateKind::Unchecked;
  std::int64_t n_samples = 0;
  double max_residual = 0.0;
};

// A nested pair C1 ⊆ C2 whose projections compose: Π_{C1} = Π_{C1}∘Π_{C2}.
// The induced cone K = C2 ∩ C1* then has Π_K = Π_{C1*}∘Π_{C2}.
struct ConePair {
  ConeDescriptor inner;
  ConeDescriptor outer;
  NonobliqueCertificate certificate;
};

// ---------------------------------------------------------------------------
// Projection primitives
// ---------------------------------------------------------------------------

inline Eigen::VectorXd project_orthant(const Eigen::VectorXd& x) {
  return x.cwiseMax(0.0);
}

// Pool-adjacent-violators for the nondecreasing cone; pooled blocks take the
// arithmetic mean of their entries, O(d).
inline Eigen::VectorXd project_monotone_pava(const Eigen::VectorXd& x) {
  const auto d = static_cast<int>(x.size());
  if (d < 1) throw ConfigError("monotone projection requires dimension >= 1");
  std::vector<double> sum(d);
  std::vector<int> count(d);
  int top = 0;
  for (int i = 0; i < d; ++i) {
    sum[top] = x[i];
    count[top] = 1;
    ++top;
    while (top >= 2 &&
           sum[top - 2] * count[top - 1] > sum[top - 1] * count[top - 2]) {
      sum[top - 2] += sum[top - 1];
      count[top - 2] += count[top - 1];
      --top;
    }
  }
  Eigen::VectorXd out(d);
  int pos = 0;
  for (int b = 0; b < top; ++b) {
    const double level = sum[b] / count[b];
    for (int j = 0; j < count[b]; ++j) out[pos++] = level;
  }
  return out;
}

// Second-order (circular) cone {x : x_1 >= ||x_{2:d}|| / tan(alpha)}.
//
// With tau = tan(alpha) and t = ||x_{2:d}||: points with tau*x_1 >= t are
// members; points with x_1 <= -tau*t lie in the polar cone (the polar of
// C(alpha) is -C(pi/2 - alpha), whose membership test is exactly that
// inequality) and project to 0; otherwise the projection lands on the
// boundary at s = (x_1 + tau*t)/(1 + tau^2) > 0. The t = 0 axis falls into
// the first branch when x_1 >= 0 and the polar branch when x_1 < 0, so the
// division by t below is never reached with t = 0.
inline Eigen::VectorXd project_circular(double alpha, const Eigen::VectorXd& x) {
  const auto d = static_cast<int>(x.size());
  if (d < 2) throw ConfigError("circular cone requires dimension >= 2");
  if (!(alpha > 0.0 && alpha < M_PI_2))
    throw ConfigError("circular cone angle must lie in (0, pi/2)");
  const double tau = std::tan(alpha);
  const double t = x.tail(d - 1).norm();
  if (tau * x[0] >= t) return x;
  if (x[0] <= -tau * t) return Eigen::VectorXd::Zero(d);
  const double s = (x[0] + tau * t) / (1.0 + tau * tau);
  Eigen::VectorXd out(d);
  out[0] = s;
  out.tail(d - 1) = (s * tau / t) * x.tail(d - 1);
  return out;
}

inline Eigen::VectorXd project_ray(const Eigen::VectorXd& unit_axis,
                                   const Eigen::VectorXd& x) {
  return std::max(0.0, unit_axis.dot(x)) * unit_axis;
}

// Non-negative least squares by the Lawson-Hanson active-set method:
// min_{beta >= 0} ||x - X beta||. Returns beta; convergence is declared when
// every inactive gradient coordinate is <= tol (scaled by ||X^T x||_inf).
inline Eigen::VectorXd nnls_coefficients(const Eigen::MatrixXd& X,
                                         const Eigen::VectorXd& x,
                                         double tol = 1e-9,
                                         int max_iter = 1000) {
  const auto p = static_cast<int>(X.cols());
  if (X.rows() != x.size()) throw ConfigError("nnls: dimension mismatch");
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  std::vector<bool> passive(p, false);
  const double scale = std::max(1.0, (X.transpose() * x).cwiseAbs().maxCoeff());
  Eigen::VectorXd w = X.transpose() * x;
  int iter = 0;
  auto solve_passive = [&](const std::vector<int>& idx) {
    Eigen::MatrixXd Xp(X.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) Xp.col(j) = X.col(idx[j]);
    return Xp.colPivHouseholderQr().solve(x).eval();
  };
  while (true) {
    int jstar = -1;
    double wmax = tol * scale;
    for (int j = 0; j < p; ++j)
      if (!passive[j] && w[j] > wmax) {
        wmax = w[j];
        jstar = j;
      }
    if (jstar < 0) break;
    passive[jstar] = true;
    while (true) {
      if (++iter > max_iter) {
        const double res = (X.transpose() * (x - X * beta)).cwiseAbs().maxCoeff();
        throw ConvergenceError("nnls active-set did not converge", res, iter);
      }
      std::vector<int> idx;
      for (int j = 0; j < p; ++j)
        if (passive[j]) idx.push_back(j);
      const Eigen::VectorXd z = solve_passive(idx);
      bool all_positive = true;
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (z[j] <= 0.0) all_positive = false;
      if (all_positive) {
        beta.setZero();
        for (std::size_t j = 0; j < idx.size(); ++j) beta[idx[j]] = z[j];
        break;
      }
      double step = 1.0;
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (z[j] <= 0.0) {
          const double denom = beta[idx[j]] - z[j];
          if (denom > 0.0) step = std::min(step, beta[idx[j]] / denom);
        }
      for (std::size_t j = 0; j < idx.size(); ++j)
        beta[idx[j]] += step * (z[j] - beta[idx[j]]);
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (z[j] <= 0.0 && beta[idx[j]] <= 1e-12) {
          beta[idx[j]] = 0.0;
          passive[idx[j]] = false;
        }
    }
    w = X.transpose() * (x - X * beta);
  }
  return beta;
}

inline Eigen::VectorXd project_generator_cone(const Eigen::MatrixXd& X,
                                              const Eigen::VectorXd& x,
                                              double tol = 1e-9,
                                              int max_iter = 1000) {
  if (X.cwiseAbs().maxCoeff() == 0.0)
    throw ConfigError("generator cone matrix must be nonzero");
  return X * nnls_coefficients(X, x, tol, max_iter);
}

// Dykstra's cyclic projection onto {x : Ax <= 0}, one halfspace per row.
// Stops when the iterate change over a full cycle is <= tol and the iterate
// is feasible to within tol (scaled by max(1, ||x||)).
inline Eigen::VectorXd project_halfspace_cone_dykstra(const Eigen::MatrixXd& A,
                                                      const Eigen::VectorXd& x,
                                                      double tol = 1e-10,
                                                      int max_iter = 100000) {
  const auto m = static_cast<int>(A.rows());
  const auto d = static_cast<int>(A.cols());
  if (x.size() != d) throw ConfigError("halfspace cone: dimension mismatch");
  Eigen::MatrixXd rows = A;
  for (int r = 0; r < m; ++r) {
    const double nrm = rows.row(r).norm();
    if (nrm == 0.0) throw ConfigError("halfspace cone: zero constraint row");
    rows.row(r) /= nrm;  // row scaling leaves the cone unchanged
  }
  const double scale = std::max(1.0, x.norm());
  Eigen::VectorXd cur = x;
  Eigen::MatrixXd corrections = Eigen::MatrixXd::Zero(m, d);
  double change = 0.0;
  for (int cycle = 0; cycle < max_iter; ++cycle) {
    const Eigen::VectorXd before = cur;
    for (int r = 0; r < m; ++r) {
      const Eigen::VectorXd v = cur + corrections.row(r).transpose();
      const double viol = std::max(0.0, rows.row(r).dot(v));
      const Eigen::VectorXd projected = v - viol * rows.row(r).transpose();
      corrections.row(r) = (v - projected).transpose();
      cur = projected;
    }
    change = (cur - before).norm();
    if (change <= tol && (rows * cur).maxCoeff() <= tol * scale) return cur;
  }
  throw ConvergenceError("dykstra cyclic projection did not converge", change,
                         max_iter);
}

// ---------------------------------------------------------------------------
// Descriptor factories (validated at construction)
// ---------------------------------------------------------------------------

inline ConeDescriptor make_orthant(int d) {
  if (d < 1) throw ConfigError("orthant: dimension must be >= 1");
  ConeDescriptor c;
  c.kind = ConeKind::Orthant;
  c.dim = d;
  return c;
}

inline ConeDescriptor make_monotone(int d) {
  if (d < 1) throw ConfigError("monotone: dimension must be >= 1");
  ConeDescriptor c;
  c.kind = ConeKind::Monotone;
  c.dim = d;
  return c;
}

inline ConeDescriptor make_circular(double alpha, int d) {
  if (d < 2) throw ConfigError("circular: dimension must be >= 2");
  if (!(alpha > 0.0 && alpha < M_PI_2))
    throw ConfigError("circular: angle must lie in (0, pi/2)");
  ConeDescriptor c;
  c.kind = ConeKind::Circular;
  c.dim = d;
  c.alpha = alpha;
  return c;
}

// Span of the first k coordinates; k = 0 is {0}, k = d is all of R^d.
inline ConeDescriptor make_coordinate_subspace(int d, int k) {
  if (d < 1 || k < 0 || k > d)
    throw ConfigError("subspace: need 0 <= k <= d with d >= 1");
  ConeDescriptor c;
  c.kind = ConeKind::Subspace;
  c.dim = d;
  c.coord_k = k;
  return c;
}

inline ConeDescriptor make_zero_cone(int d) { return make_coordinate_subspace(d, 0); }
inline ConeDescriptor make_full_space(int d) { return make_coordinate_subspace(d, d); }

inline ConeDescriptor make_subspace(const Eigen::MatrixXd& orthonormal_basis) {
  const auto d = static_cast<int>(orthonormal_basis.rows());
  const auto k = static_cast<int>(orthonormal_basis.cols());
  if (d < 1 || k < 0 || k > d) throw ConfigError("subspace: bad basis shape");
  if (k > 0) {
    const Eigen::MatrixXd gram =
        orthonormal_basis.transpose() * orthonormal_basis;
    const double err =
        (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > 1e-12)
      throw ConfigError("subspace: basis columns not orthonormal to 1e-12");
  }
  ConeDescriptor c;
  c.kind = ConeKind::Subspace;
  c.dim = d;
  c.coord_k = -1;
  c.basis = orthonormal_basis;
  return c;
}

inline ConeDescriptor make_span_of_ones(int d) {
  if (d < 1) throw ConfigError("span(1): dimension must be >= 1");
  Eigen::MatrixXd b = Eigen::MatrixXd::Constant(d, 1, 1.0 / std::sqrt(double(d)));
  return make_subspace(b);
}

inline ConeDescriptor make_ray(const Eigen::VectorXd& direction) {
  const double nrm = direction.norm();
  if (direction.size() < 1 || nrm == 0.0)
    throw ConfigError("ray: direction must be nonzero");
  ConeDescriptor c;
  c.kind = ConeKind::Ray;
  c.dim = static_cast<int>(direction.size());
  c.axis = direction / nrm;
  return c;
}

inline ConeDescriptor make_generator_cone(const Eigen::MatrixXd& X) {
  if (X.rows() < 1 || X.cols() < 1 || X.cwiseAbs().maxCoeff() == 0.0)
    throw ConfigError("generator cone: matrix must be nonzero");
  ConeDescriptor c;
  c.kind = ConeKind::GeneratorCone;
  c.dim = static_cast<int>(X.rows());
  c.generators = X;
  return c;
}

inline ConeDescriptor make_halfspace_cone(const Eigen::MatrixXd& A) {
  if (A.rows() < 1 || A.cols() < 1)
    throw ConfigError("halfspace cone: matrix must be nonempty");
  for (int r = 0; r < A.rows(); ++r)
    if (A.row(r).norm() == 0.0)
      throw ConfigError("halfspace cone: zero constraint row");
  ConeDescriptor c;
  c.kind = ConeKind::HalfspaceCone;
  c.dim = static_cast<int>(A.cols());
  c.halfspaces = A;
  return c;
}

inline ConeDescriptor make_product(std::vector<ConeDescriptor> components) {
  if (components.empty()) throw ConfigError("product cone: no components");
  int d = 0;
  for (const auto& comp : components) d += comp.dim;
  ConeDescriptor c;
  c.kind = ConeKind::Product;
  c.dim = d;
  c.components = std::move(components);
  return c;
}

inline ConeDescriptor make_induced_cone(std::shared_ptr<const ConePair> pair) {
  if (!pair) throw ConfigError("induced cone: missing pair");
  if (pair->certificate.kind == CertificateKind::Unchecked)
    throw ConfigError("induced cone: pair must carry a non-obliqueness certificate");
  ConeDescriptor c;
  c.kind = ConeKind::Induced;
  c.dim = pair->outer.dim;
  c.pair = std::move(pair);
  return c;
}

// Convenience: the product of a circular cone in the first d-1 coordinates
// with a free line in the last, C(alpha, d-1) x R in R^d.
inline ConeDescriptor make_circular_cross_line(double alpha, int d) {
  if (d < 3) throw ConfigError("circular x line: dimension must be >= 3");
  std::vector<ConeDescriptor> comps;
  comps.push_back(make_circular(alpha, d - 1));
  comps.push_back(make_full_space(1));
  return make_product(std::move(comps));
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline Eigen::VectorXd project(const ConeDescriptor& cone,
                               const Eigen::VectorXd& x);

inline Eigen::VectorXd project_subspace(const ConeDescriptor& cone,
                                        const Eigen::VectorXd& x) {
  if (cone.coord_k >= 0) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(cone.dim);
    out.head(cone.coord_k) = x.head(cone.coord_k);
    return out;
  }
  if (cone.basis.cols() == 0) return Eigen::VectorXd::Zero(cone.dim);
  return cone.basis * (cone.basis.transpose() * x);
}

inline Eigen::VectorXd project_product(const ConeDescriptor& cone,
                                       const Eigen::VectorXd& x) {
  Eigen::VectorXd out(cone.dim);
  int off = 0;
  for (const auto& comp : cone.components) {
    out.segment(off, comp.dim) = project(comp, x.segment(off, comp.dim));
    off += comp.dim;
  }
  return out;
}

inline Eigen::VectorXd project_induced(const ConePair& pair,
                                       const Eigen::VectorXd& x) {
  if (pair.certificate.kind == CertificateKind::Unchecked)
    throw ConfigError("induced projection requires a certified pair");
  const Eigen::VectorXd outer = project(pair.outer, x);
  return outer - project(pair.inner, outer);
}

inline Eigen::VectorXd project(const ConeDescriptor& cone,
                               const Eigen::VectorXd& x) {
  if (x.size() != cone.dim)
    throw ConfigError("projection: input length " + std::to_string(x.size()) +
                      " does not match cone dimension " +
                      std::to_string(cone.dim));
  switch (cone.kind) {
    case ConeKind::Orthant:
      return project_orthant(x);
    case ConeKind::Monotone:
      return project_monotone_pava(x);
    case ConeKind::Circular:
      return project_circular(cone.alpha, x);
    case ConeKind::Subspace:
      return project_subspace(cone, x);
    case ConeKind::Ray:
      return project_ray(cone.axis, x);
    case ConeKind::GeneratorCone:
      return project_generator_cone(cone.generators, x);
    case ConeKind::HalfspaceCone:
      return project_halfspace_cone_dykstra(cone.halfspaces, x);
    case ConeKind::Product:
      return project_product(cone, x);
    case ConeKind::Induced:
      return project_induced(*cone.pair, x);
  }
  throw ConfigError("projection: unknown cone kind");
}

// Moreau residual: x - Π_C(x) = Π_{C*}(x).
inline Eigen::VectorXd polar_project(const ConeDescriptor& cone,
                                     const Eigen::VectorXd& x) {
  return x - project(cone, x);
}

inline bool is_member(const ConeDescriptor& cone, const Eigen::VectorXd& x,
                      double tol = 1e-9) {
  return (project(cone, x) - x).norm() <= tol * std::max(1.0, x.norm());
}

// ---------------------------------------------------------------------------
// Pairs and the non-obliqueness check
// ---------------------------------------------------------------------------

struct NonobliqueReport {
  bool pass = false;
  std::int64_t n_samples = 0;
  double max_residual = 0.0;
  double tol = 0.0;
};

// Samples standard Gaussians and measures max ||Π_{C1}x - Π_{C1}Π_{C2}x||.
inline NonobliqueReport check_nonoblique(const ConeDescriptor& inner,
                                         const ConeDescriptor& outer,
                                         int n_samples, std::uint64_t seed,
                                         double tol = 1e-8) {
  if (inner.dim != outer.dim)
    throw ConfigError("cone pair: inner and outer dimensions differ");
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const Eigen::VectorXd x = sample_std_gaussian(
        inner.dim, {seed, stream_id(stream_context::kPairCheck, 0,
                                    static_cast<std::uint64_t>(i))});
    const double res = (project(inner, x) - project(inner, project(outer, x))).norm();
    worst = std::max(worst, res);
  }
  return NonobliqueReport{worst <= tol, n_samples, worst, tol};
}

inline bool is_subspace_kind(const ConeDescriptor& c) {
  return c.kind == ConeKind::Subspace;
}

inline bool is_zero_cone(const ConeDescriptor& c) {
  return c.kind == ConeKind::Subspace &&
         (c.coord_k == 0 || (c.coord_k < 0 && c.basis.cols() == 0));
}

// Builds a certified nested pair. Inclusion C1 ⊆ C2 is spot-checked on
// projected Gaussian samples; non-obliqueness is trusted analytically when
// either cone is a subspace (projections onto a subspace commute with any
// projection landing inside it), and otherwise verified numerically.
inline std::shared_ptr<const ConePair> make_cone_pair(
    ConeDescriptor inner, ConeDescriptor outer, std::uint64_t seed = 0x636f6e65,
    int n_inclusion = 64, int n_check = 200, double tol = 1e-8) {
  if (inner.dim != outer.dim)
    throw ConfigError("cone pair: inner and outer dimensions differ");
  for (int i = 0; i < n_inclusion; ++i) {
    const Eigen::VectorXd g = sample_std_gaussian(
        inner.dim, {seed, stream_id(stream_context::kInclusion, 0,
                                    static_cast<std::uint64_t>(i))});
    const Eigen::VectorXd p = project(inner, g);
    if (!is_member(outer, p, 1e-7))
      throw ConfigError("cone pair: inner cone is not contained in outer cone");
  }
  NonobliqueCertificate cert;
  if (is_zero_cone(inner)) {
    cert = {CertificateKind::TrustedAnalytic, 0, 0.0};
  } else if (is_subspace_kind(inner) || is_subspace_kind(outer)) {
    cert = {CertificateKind::TrustedAnalytic, 0, 0.0};
  } else {
    const NonobliqueReport rep = check_nonoblique(inner, outer, n_check, seed, tol);
    if (!rep.pass)
      throw NumericalError(
          "cone pair appears oblique: max residual " +
          std::to_string(rep.max_residual) + " over " +
          std::to_string(rep.n_samples) + " samples exceeds tolerance");
    cert = {CertificateKind::NumericallyChecked, rep.n_samples, rep.max_residual};
  }
  auto pair = std::make_shared<ConePair>();
  pair->inner = std::move(inner);
  pair->outer = std::move(outer);
  pair->certificate = cert;
  return pair;
}

// ---------------------------------------------------------------------------
// Tangent cone of the monotone cone
// ---------------------------------------------------------------------------

// For nondecreasing theta0 with k maximal constant pieces (exact equality),
// the tangent cone is the product of k monotone cones with the piece lengths;
// k is recoverable as components.size().
inline ConeDescriptor tangent_cone_monotone(const Eigen::VectorXd& theta0) {
  const auto d = static_cast<int>(theta0.size());
  if (d < 1) throw ConfigError("tangent cone: dimension must be >= 1");
  for (int i = 0; i + 1 < d; ++i)
    if (theta0[i] > theta0[i + 1])
      throw ConfigError("tangent cone: base point is not nondecreasing");
  std::vector<ConeDescriptor> comps;
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i == d || theta0[i] != theta0[start]) {
      comps.push_back(make_monotone(i - start));
      start = i;
    }
  }
  return make_product(std::move(comps));
}

// ---------------------------------------------------------------------------
// JSON serialization: {"kind": ..., "dim": ..., "params": {...}}
// ---------------------------------------------------------------------------

inline std::string cone_kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::Orthant: return "Orthant";
    case ConeKind::Monotone: return "Monotone";
    case ConeKind::Circular: return "Circular";
    case ConeKind::Subspace: return "Subspace";
    case ConeKind::Ray: return "Ray";
    case ConeKind::GeneratorCone: return "GeneratorCone";
    case ConeKind::HalfspaceCone: return "HalfspaceCone";
    case ConeKind::Product: return "Product";
    case ConeKind::Induced: return "Induced";
  }
  return "Unknown";
}

// Short lowercase label for tabular output.
inline std::string cone_label(const ConeDescriptor& c) {
  switch (c.kind) {
    case ConeKind::Orthant: return "orthant";
    case ConeKind::Monotone: return "monotone";
    case ConeKind::Circular: return "circular";
    case ConeKind::Subspace: return "subspace";
    case ConeKind::Ray: return "ray";
    case ConeKind::GeneratorCone: return "generator";
    case ConeKind::HalfspaceCone: return "halfspace";
    case ConeKind::Product: return "product";
    case ConeKind::Induced: return "induced";
  }
  return "unknown";
}

namespace detail {

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw ConfigError("cone json: matrix must be a nonempty array of rows");
  const auto rows = static_cast<int>(j.size());
  const auto cols = static_cast<int>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j.at(r).size()) != cols)
      throw ConfigError("cone json: ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

inline Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw ConfigError("cone json: vector must be a nonempty array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j.at(i).get<double>();
  return v;
}

}  // namespace detail

inline nlohmann::json cone_to_json(const ConeDescriptor& c) {
  nlohmann::json params = nlohmann::json::object();
  switch (c.kind) {
    case ConeKind::Orthant:
    case ConeKind::Monotone:
      break;
    case ConeKind::Circular:
      params["alpha"] = c.alpha;
      break;
    case ConeKind::Subspace:
      if (c.coord_k >= 0)
        params["k"] = c.coord_k;
      else
        params["basis"] = detail::matrix_to_json(c.basis);
      break;
    case ConeKind::Ray: {
      nlohmann::json axis = nlohmann::json::array();
      for (int i = 0; i < c.axis.size(); ++i) axis.push_back(c.axis[i]);
      params["axis"] = std::move(axis);
      break;
    }
    case ConeKind::GeneratorCone:
      params["generators"] = detail::matrix_to_json(c.generators);
      break;
    case ConeKind::HalfspaceCone:
      params["halfspaces"] = detail::matrix_to_json(c.halfspaces);
      break;
    case ConeKind::Product: {
      nlohmann::json comps = nlohmann::json::array();
      for (const auto& comp : c.components) comps.push_back(cone_to_json(comp));
      params["components"] = std::move(comps);
      break;
    }
    case ConeKind::Induced:
      params["inner"] = cone_to_json(c.pair->inner);
      params["outer"] = cone_to_json(c.pair->outer);
      break;
  }
  return nlohmann::json{
      {"kind", cone_kind_name(c.kind)}, {"dim", c.dim}, {"params", params}};
}

inline ConeDescriptor cone_from_json(const nlohmann::json& j,
                                     std::uint64_t pair_seed = 0x636f6e65) {
  if (!j.contains("kind") || !j.contains("dim"))
    throw ConfigError("cone json: 'kind' and 'dim' required");
  const std::string kind = j.at("kind").get<std::string>();
  const int d = j.at("dim").get<int>();
  const nlohmann::json params =
      j.contains("params") ? j.at("params") : nlohmann::json::object();
  if (kind == "Orthant") return make_orthant(d);
  if (kind == "Monotone") return make_monotone(d);
  if (kind == "Circular")
    return make_circular(params.at("alpha").get<double>(), d);
  if (kind == "Subspace") {
    if (params.contains("k")) return make_coordinate_subspace(d, params.at("k").get<int>());
    ConeDescriptor c = make_subspace(detail::matrix_from_json(params.at("basis")));
    if (c.dim != d) throw ConfigError("cone json: basis rows disagree with dim");
    return c;
  }
  if (kind == "Ray") {
    ConeDescriptor c = make_ray(detail::vector_from_json(params.at("axis")));
    if (c.dim != d) throw ConfigError("cone json: axis length disagrees with dim");
    return c;
  }
  if (kind == "GeneratorCone") {
    ConeDescriptor c = make_generator_cone(detail::matrix_from_json(params.at("generators")));
    if (c.dim != d) throw ConfigError("cone json: generator rows disagree with dim");
    return c;
  }
  if (kind == "HalfspaceCone") {
    ConeDescriptor c = make_halfspace_cone(detail::matrix_from_json(params.at("halfspaces")));
    if (c.dim != d) throw ConfigError("cone json: constraint cols disagree with dim");
    return c;
  }
  if (kind == "Product") {
    std::vector<ConeDescriptor> comps;
    for (const auto& comp : params.at("components"))
      comps.push_back(cone_from_json(comp, pair_seed));
    ConeDescriptor c = make_product(std::move(comps));
    if (c.dim != d) throw ConfigError("cone json: component dims disagree with dim");
    return c;
  }
  if (kind == "Induced") {
    auto pair = make_cone_pair(cone_from_json(params.at("inner"), pair_seed),
                               cone_from_json(params.at("outer"), pair_seed),
                               pair_seed);
    if (pair->outer.dim != d)
      throw ConfigError("cone json: pair dims disagree with dim");
    return make_induced_cone(std::move(pair));
  }
  throw ConfigError("cone json: unknown kind '" + kind + "'");
}

}  // namespace conetest
