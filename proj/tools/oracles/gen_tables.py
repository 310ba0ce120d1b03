#!/usr/bin/env python3
"""Generate frozen reference tables for the C++ test suite.

Every value here is computed by an *independent* implementation path
(cvxpy/Clarabel conic solver, scipy's Lawson-Hanson NNLS, sklearn's isotonic
regression, mpmath arbitrary precision) so the C++ library under test shares
no code or algorithm with the oracle. The output is a self-contained C++
header; regenerate with:

    python3 tools/oracles/gen_tables.py > tests/oracle_tables.hpp

The script is deterministic (fixed RNG seeds).
"""

import sys

import mpmath as mp
import numpy as np
import cvxpy as cp
from scipy.optimize import nnls
from sklearn.isotonic import IsotonicRegression

mp.mp.dps = 60


def fmt(x: float) -> str:
    return repr(float(x))


def vec(xs) -> str:
    return "{" + ", ".join(fmt(v) for v in xs) + "}"


def project_polyhedral_exact(A, x):
    """Exact projection of x onto {u : A u <= 0} by brute-force active-set
    enumeration: for every subset S of rows, solve the equality-constrained
    least-distance problem and keep the candidate satisfying primal and dual
    feasibility. Exact up to one dense linear solve (~1e-14)."""
    from itertools import combinations
    m = A.shape[0]
    best = None
    for k in range(m + 1):
        for S in combinations(range(m), k):
            As = A[list(S), :]
            if k == 0:
                u, nu = x.copy(), np.zeros(0)
            else:
                gram = As @ As.T
                nu = np.linalg.pinv(gram, rcond=1e-12) @ (As @ x)
                u = x - As.T @ nu
            if np.any(A @ u > 1e-10) or np.any(nu < -1e-10):
                continue
            if best is None or np.dot(x - u, x - u) < np.dot(x - best, x - best) - 1e-14:
                best = u
    assert best is not None
    assert abs(float(np.dot(x - best, best))) <= 1e-10 * (1 + np.dot(x, x))
    return best


def project_circular_numeric(alpha, x):
    """Projection onto {u : ||u_2:|| <= tan(alpha) u_1} by a generic conic
    solve polished with a constrained trust-region minimizer. Never uses the
    closed-form branch formula."""
    from scipy.optimize import minimize, NonlinearConstraint
    d = len(x)
    tan_a = np.tan(alpha)
    t = np.linalg.norm(x[1:])
    if t <= tan_a * x[0]:                       # already a member
        return x.copy()
    if x[0] <= -tan_a * t:                      # in the polar cone: sup of
        return np.zeros(d)                      # <x,u>/(cone u) is <= 0
    u = cp.Variable(d)
    prob = cp.Problem(cp.Minimize(cp.sum_squares(u - x)),
                      [cp.SOC(tan_a * u[0], u[1:])])
    prob.solve(solver=cp.CLARABEL)
    assert prob.status in (cp.OPTIMAL, "optimal_inaccurate"), prob.status
    warm = np.asarray(u.value).ravel()

    def cval(v):
        return tan_a * v[0] - np.linalg.norm(v[1:])

    def cjac(v):
        g = np.zeros(d)
        g[0] = tan_a
        nrm = np.linalg.norm(v[1:])
        if nrm > 0:
            g[1:] = -v[1:] / nrm
        return g

    res = minimize(lambda v: 0.5 * np.dot(v - x, v - x), warm,
                   jac=lambda v: v - x, method="trust-constr",
                   constraints=[NonlinearConstraint(cval, 0.0, np.inf,
                                                    jac=lambda v: cjac(v).reshape(1, -1))],
                   options={"xtol": 1e-14, "gtol": 1e-14, "maxiter": 2000})
    sol = res.x
    assert cval(sol) >= -1e-9, (alpha, x, sol)
    # Certify KKT orthogonality to ~1e-8: solution error is then ~1e-9,
    # two orders below the 1e-7 comparison tolerance used by the tests.
    assert abs(float(np.dot(x - sol, sol))) <= 1e-8 * (1 + np.dot(x, x)), \
        (alpha, x, sol, np.dot(x - sol, sol))
    assert np.max(np.abs(sol - warm)) < 1e-6    # gross-error cross-check
    return sol


def circular_cases():
    rng = np.random.default_rng(20240611)
    cases = []
    alphas = [np.pi / 6, np.pi / 4, np.pi / 3, 1.0, 0.3]
    for d in range(2, 7):
        for i, alpha in enumerate(alphas):
            scale = 3.0 if i % 2 else 1.0
            x = scale * rng.standard_normal(d)
            cases.append((alpha, x, project_circular_numeric(alpha, x)))
    # the hand-checkable case: alpha=pi/4, x=(0,3,4)
    x = np.array([0.0, 3.0, 4.0])
    proj = project_circular_numeric(np.pi / 4, x)
    assert np.allclose(proj, [2.5, 1.5, 2.0], atol=1e-9), proj
    cases.append((np.pi / 4, x, proj))
    return cases


def monotone_matrix(d):
    """Rows encoding u_i - u_{i+1} <= 0."""
    A = np.zeros((d - 1, d))
    for i in range(d - 1):
        A[i, i], A[i, i + 1] = 1.0, -1.0
    return A


def monotone_cases():
    rng = np.random.default_rng(907)
    iso = IsotonicRegression()
    cases = []
    for _ in range(5):
        x = 2.0 * rng.standard_normal(6)
        proj = project_polyhedral_exact(monotone_matrix(6), x)
        # cross-check two independent oracles against each other
        proj_iso = iso.fit_transform(np.arange(6), x)
        assert np.max(np.abs(proj - proj_iso)) < 1e-10, (proj, proj_iso)
        cases.append((x, proj))
    x = np.array([3.0, 1.0, 2.0])
    proj = project_polyhedral_exact(monotone_matrix(3), x)
    assert np.allclose(proj, [2.0, 2.0, 2.0]), proj
    cases.append((x, proj))
    return cases


def nnls_cases():
    cases = []
    mats = [
        np.array([[1.0, 1.0], [0.0, 1.0]]),          # columns (1,0),(1,1)
        np.array([[1.0, -1.0, 0.5],
                  [2.0, 0.5, -1.0],
                  [0.0, 1.0, 1.0]]),
        np.array([[1.0, 0.9], [1.0, 1.0], [1.0, 1.1]]),  # nearly collinear
    ]
    xs = [
        np.array([-1.0, 2.0]),
        np.array([1.0, -2.0, 3.0]),
        np.array([0.5, -4.0, 2.5]),
    ]
    for X, x in zip(mats, xs):
        beta, _ = nnls(X, x)
        cases.append((X, x, X @ beta))
    assert np.allclose(cases[0][2], [0.5, 0.5], atol=1e-12), cases[0][2]
    return cases


def convexity_cone_cases():
    """Cone of convex sequences: x[i-1] - 2x[i] + x[i+1] >= 0."""
    rng = np.random.default_rng(3331)
    d = 6
    A = np.zeros((d - 2, d))
    for i in range(d - 2):
        A[i, i], A[i, i + 1], A[i, i + 2] = -1.0, 2.0, -1.0
    cases = []
    for _ in range(3):
        x = 2.0 * rng.standard_normal(d)
        cases.append((x, project_polyhedral_exact(A, x)))
    return cases


def subspace_case():
    rng = np.random.default_rng(77)
    raw = rng.standard_normal((5, 2))
    basis, _ = np.linalg.qr(raw)
    x = rng.standard_normal(5)
    proj = basis @ (basis.T @ x)
    return basis, x, proj


def hyper_moment_exact(d: int, s: int, lam) -> mp.mpf:
    """E exp(lam * <eta, eta'>) for the s-sparse equal-entry pair ensemble,
    via the exact overlap distribution (hypergeometric), in mpmath."""
    lam = mp.mpf(lam)
    total = mp.mpf(0)
    denom = mp.binomial(d, s)
    for i in range(0, s + 1):
        total += mp.binomial(s, i) * mp.binomial(d - s, s - i) * mp.e ** (lam * i / s)
    return total / denom


def moment_closed_bound(d: int, lam) -> mp.mpf:
    lam = mp.mpf(lam)
    rd = mp.sqrt(d)
    return mp.e ** (mp.e ** ((2 + lam) / (rd - 1)) - (1 - 1 / rd) ** 2)


def fg_partition(d: int):
    """Block-length partition for the staircase prior: lengths
    l_i = floor((delta-1)/delta^i * (d + log_delta d + 3)), delta = 9,
    block count m = first n with partial sum >= d, last block = remainder."""
    delta = 9
    mu = mp.mpf(d) + mp.log(d) / mp.log(delta) + 3
    lengths = []
    total = 0
    i = 1
    while total < d:
        li = int(mp.floor(mp.mpf(delta - 1) / delta ** i * mu))
        if total + li >= d:
            lengths.append(d - total)
            total = d
        else:
            assert li >= 1, (d, i, li)
            lengths.append(li)
            total += li
        i += 1
    m = len(lengths)
    s = int(np.floor(np.sqrt(m)))
    for a, b in zip(lengths, lengths[1:]):
        assert a >= delta * b, (d, lengths)
    return m, s, lengths


def fg_centered_min(d: int):
    """Exact enumeration of the centered staircase-prior norm over all
    sparse supports; returns min ||eta - mean(eta) 1||^2."""
    from itertools import combinations
    m, s, lengths = fg_partition(d)
    r = 1.0 / 3.0
    best = None
    for supp in combinations(range(m), s):
        b = np.zeros(m)
        b[list(supp)] = 1.0 / np.sqrt(s)
        u = np.zeros(m)
        acc = 0.0
        for i in range(m):
            acc = r * acc + b[i]
            u[i] = acc
        eta_blocks = u / np.sqrt(lengths)          # constant value per block
        mean = float(np.dot(np.array(lengths, dtype=float), eta_blocks)) / d
        cn = float(np.dot(np.array(lengths, dtype=float),
                          (eta_blocks - mean) ** 2))
        best = cn if best is None else min(best, cn)
    return best


def main():
    out = sys.stdout
    w = out.write
    w("#pragma once\n")
    w("// Frozen reference values produced by tools/oracles/gen_tables.py\n")
    w("// (independent solvers: Clarabel conic QP, scipy NNLS, sklearn isotonic,\n")
    w("//  mpmath 60-digit arithmetic). Do not edit by hand.\n\n")
    w("#include <vector>\n\n")
    w("namespace oracle {\n\n")

    w("struct ProjCase { double alpha; std::vector<double> x; std::vector<double> proj; };\n")
    w("struct MatCase { int rows; int cols; std::vector<double> mat_rowmajor;\n")
    w("                 std::vector<double> x; std::vector<double> proj; };\n\n")

    w("// Projections onto circular cones (axis e1, half-angle alpha).\n")
    w("inline const std::vector<ProjCase> kCircularCases = {\n")
    for alpha, x, proj in circular_cases():
        w(f"  {{{fmt(alpha)}, {vec(x)}, {vec(proj)}}},\n")
    w("};\n\n")

    w("// Projections onto the nondecreasing cone at d=6 and the pinned d=3 case.\n")
    w("inline const std::vector<ProjCase> kMonotoneCases = {\n")
    for x, proj in monotone_cases():
        w(f"  {{0.0, {vec(x)}, {vec(proj)}}},\n")
    w("};\n\n")

    w("// Nonnegative-combination cones {X b : b >= 0}; mat is X (rows x cols).\n")
    w("inline const std::vector<MatCase> kGeneratorCases = {\n")
    for X, x, proj in nnls_cases():
        r, c = X.shape
        w(f"  {{{r}, {c}, {vec(X.ravel())}, {vec(x)}, {vec(proj)}}},\n")
    w("};\n\n")

    w("// Projections onto the cone of convex sequences at d=6\n")
    w("// (rows of A encode -x[i-1] + 2 x[i] - x[i+1] <= 0).\n")
    w("inline const std::vector<ProjCase> kConvexSeqCases = {\n")
    for x, proj in convexity_cone_cases():
        w(f"  {{0.0, {vec(x)}, {vec(proj)}}},\n")
    w("};\n\n")

    basis, x, proj = subspace_case()
    r, c = basis.shape
    w("// One generic (non-axis-aligned) subspace projection case.\n")
    w(f"inline const MatCase kSubspaceCase = {{{r}, {c}, {vec(basis.ravel())}, {vec(x)}, {vec(proj)}}};\n\n")

    p = mp.erfc(mp.sqrt(1 / mp.pi))
    w("// P(|N(0,1)| > sqrt(2/pi)) = erfc(sqrt(1/pi)).\n")
    w(f"inline constexpr double kHalfNormalExceedance = {fmt(p)};\n\n")

    m1 = hyper_moment_exact(4, 2, 1)
    m1_closed = (1 + 4 * mp.sqrt(mp.e) + mp.e) / 6
    assert abs(m1 - m1_closed) < mp.mpf("1e-50")
    w("// Exact pair-overlap exponential moments E exp(lam <eta,eta'>)\n")
    w("// for the s-sparse ensemble: (d, s, lam, value).\n")
    w("struct MomentCase { int d; int s; double lam; double value; };\n")
    w("inline const std::vector<MomentCase> kSparseMoments = {\n")
    cases = [(4, 2, mp.mpf(1)), (100, 10, mp.mpf("1.25")),
             (81, 9, mp.mpf(9) / 8), (100, 10, mp.mpf(10) / 8),
             (400, 20, mp.mpf(20) / 8), (16, 4, mp.mpf(2))]
    for d, s, lam in cases:
        w(f"  {{{d}, {s}, {fmt(lam)}, {fmt(hyper_moment_exact(d, s, lam))}}},\n")
    w("};\n\n")

    w("// Closed-form moment bound exp(exp((2+lam)/(sqrt(d)-1)) - (1-1/sqrt(d))^2)\n")
    w("// evaluated at lam = sqrt(d)/8: (d, value).\n")
    w("struct BoundCase { int d; double value; };\n")
    w("inline const std::vector<BoundCase> kMomentBounds = {\n")
    for d in (81, 100, 400):
        w(f"  {{{d}, {fmt(moment_closed_bound(d, mp.sqrt(d) / 8))}}},\n")
    w("};\n\n")

    w("// Staircase-prior partition: (d, m, s, block lengths).\n")
    w("struct FgPartition { long d; long m; long s; std::vector<long> blocks; };\n")
    w("inline const std::vector<FgPartition> kFgPartitions = {\n")
    for d in (256, 1000, 1024, 4096, 10000):
        m, s, lengths = fg_partition(d)
        blk = "{" + ", ".join(str(v) for v in lengths) + "}"
        w(f"  {{{d}, {m}, {s}, {blk}}},\n")
    w("};\n\n")

    w("// Exact enumeration minima of the centered staircase sample norm^2.\n")
    w("struct FgCenteredMin { long d; double min_norm_sq; };\n")
    w("inline const std::vector<FgCenteredMin> kFgCenteredMinima = {\n")
    for d in (1000, 10000):
        w(f"  {{{d}, {fmt(fg_centered_min(d))}}},\n")
    w("};\n\n")

    w("}  // namespace oracle\n")

    # side-channel sanity notes for the implementer (stderr, not the header)
    for d in (256, 1000, 1024, 4096, 10000):
        print(f"[fg] d={d}: m,s,blocks = {fg_partition(d)}", file=sys.stderr)
    for d in (1000, 10000):
        print(f"[fg] d={d}: centered min norm^2 = {fg_centered_min(d):.6f}",
              file=sys.stderr)
    print(f"[const] bound(81, sqrt81/8) = {float(moment_closed_bound(81, mp.mpf(9)/8)):.6f}",
          file=sys.stderr)


if __name__ == "__main__":
    main()
