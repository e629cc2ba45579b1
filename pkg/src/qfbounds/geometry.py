"""Hyperboloid-model geometry of the right-angled 6-dimensional
polyhedron P6 and the generic horoball/tube formulas feeding the
geodesic residual-finiteness growth constant K.

All computations run in high-precision floating point (mpmath, 50+
significant digits).  Exact radical identities are certified through
squared relations in tests, not symbolic algebra.

Matrix conventions.  For a Coxeter simplex with Gram matrix A of
signature (n,1) there are two natural triangular matrices:

  * the factor C, upper-triangular with positive diagonal, with
    C^t A C = J = diag(1,...,1,-1) (Gram-Schmidt on the standard
    basis); its rows produce the simplex vertices via x_i ~ J * row_i;
  * the normal matrix N = C^{-1}, whose columns are the unit inward
    facet normals v_i (so N^t J N = A).

These are inverse to each other, not equal, and source material that
prints one while naming the property of the other is reconciled here
by exposing both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

PRECISION_DPS = 50

P6_GROUP_ORDER = 2 ** 7 * 3 ** 4 * 5  # order of the vertex stabilizer group


def set_precision(digits: int) -> None:
    """Set the target precision (decimal digits, minimum 15) module-wide."""
    global PRECISION_DPS
    PRECISION_DPS = max(int(digits), 15)


def _wp():
    """Working-precision context: target digits plus guard digits."""
    return mp.workdps(PRECISION_DPS + 10)


# ---------------------------------------------------------------------------
# Lorentzian linear algebra


def lorentz_product(x, y):
    """sum(x_i y_i, i <= n) - x_{n+1} y_{n+1} for (n+1)-vectors."""
    if len(x) != len(y):
        raise ValueError("dimension mismatch: %d vs %d" % (len(x), len(y)))
    with _wp():
        s = mpmath.fsum(mpf(a) * mpf(b) for a, b in zip(x[:-1], y[:-1]))
        return s - mpf(x[-1]) * mpf(y[-1])


def gram_from_diagram(n: int, labels: dict) -> list:
    """Gram matrix of a Coxeter diagram on n nodes.

    labels maps node pairs (i, j), 0-indexed, to the edge label m in
    {3, 4}; absent pairs commute (entry 0).  Entries are -cos(pi/m):
    -1/2 for 3, -1/sqrt(2) for 4, diagonal 1.
    """
    with _wp():
        A = [[mpf(1) if i == j else mpf(0) for j in range(n)] for i in range(n)]
        for (i, j), m in labels.items():
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError("bad node pair (%d, %d)" % (i, j))
            if m == 3:
                val = mpf(-1) / 2
            elif m == 4:
                val = -1 / mpmath.sqrt(2)
            else:
                raise ValueError("unsupported edge label %r" % (m,))
            if A[i][j] != 0 and A[i][j] != val:
                raise ValueError("conflicting labels for pair (%d, %d)" % (i, j))
            A[i][j] = A[j][i] = val
        return A


def p6_diagram() -> tuple:
    """The 7-node diagram of the simplex sigma tiling P6.

    Chain 1-2, 2-4, 3-4, 4-5, 5-6 with label 3 and tail 6-7 with
    label 4 (0-indexed pairs below).
    """
    labels = {(0, 1): 3, (1, 3): 3, (2, 3): 3, (3, 4): 3, (4, 5): 3, (5, 6): 4}
    return 7, labels


def _signature_counts(A) -> tuple:
    M = mpmath.matrix(A)
    E = mpmath.eigsy(M, eigvals_only=True)
    tol = mpf(10) ** (-(mp.dps - 5))
    pos = sum(1 for i in range(M.rows) if E[i] > tol)
    neg = sum(1 for i in range(M.rows) if E[i] < -tol)
    return pos, neg


def lorentz_gram_factor(A) -> list:
    """Upper-triangular C with positive diagonal and C^t A C = J.

    Gram-Schmidt on the standard basis under the bilinear form A.  A
    must have signature (n,1) with positive leading principal minors
    through n; then C is unique.
    """
    with _wp():
        n1 = len(A)
        pos, neg = _signature_counts(A)
        if not (pos == n1 - 1 and neg == 1):
            raise ValueError(
                "expected signature (%d,1), found (%d,%d)" % (n1 - 1, pos, neg)
            )

        def bform(u, v):
            return mpmath.fsum(
                u[i] * A[i][j] * v[j] for i in range(n1) for j in range(n1) if u[i] and v[j]
            )

        basis = []
        norms = []
        for k in range(n1):
            u = [mpf(1) if i == k else mpf(0) for i in range(n1)]
            for prev, d in zip(basis, norms):
                coef = bform(u, prev) / d
                u = [ui - coef * pi_ for ui, pi_ in zip(u, prev)]
            d = bform(u, u)
            if k < n1 - 1 and d <= 0:
                raise ValueError("leading principal minor %d is not positive" % (k + 1))
            basis.append(u)
            norms.append(d)
        cols = [
            [ui / mpmath.sqrt(abs(d)) for ui in u] for u, d in zip(basis, norms)
        ]
        return [[cols[j][i] for j in range(n1)] for i in range(n1)]


def normal_matrix_from_factor(C) -> list:
    """N = C^{-1}; columns are the unit inward facet normals."""
    with _wp():
        M = mpmath.matrix(C) ** -1
        return [[M[i, j] for j in range(M.cols)] for i in range(M.rows)]


def vertices_from_normals(C) -> tuple:
    """Vertices x_1..x_{n+1} from the factor C (C^t A C = J).

    Row i of C, flipped by J, is Lorentz-orthogonal to every normal
    v_j with j != i, hence lies over vertex i.  Finite vertices are
    normalized to x.x = -1 and future-pointing; light-like (ideal)
    vertices are scaled so that max over finite j of x_j . x_ideal
    equals -1 (the deepest adjacent vertex touches the horoball
    boundary).
    """
    with _wp():
        n1 = len(C)
        raw = []
        for i in range(n1):
            row = list(C[i])
            row[-1] = -row[-1]
            raw.append(row)
        tol = mpf(10) ** (-(mp.dps - 10))
        finite, ideal = {}, []
        for i, v in enumerate(raw):
            nrm = lorentz_product(v, v)
            if abs(nrm) < tol:
                ideal.append(i)
            elif nrm < 0:
                s = mpmath.sqrt(-nrm)
                x = [c / s for c in v]
                if x[-1] < 0:
                    x = [-c for c in x]
                finite[i] = x
            else:
                raise ValueError("vertex %d is ultra-ideal (positive norm)" % (i + 1))
        out = [None] * n1
        for i, x in finite.items():
            out[i] = tuple(x)
        for i in ideal:
            v = raw[i]
            if v[-1] < 0:
                v = [-c for c in v]
            m = max(lorentz_product(v, x) for x in finite.values())
            lam = -1 / m
            out[i] = tuple(lam * c for c in v)
        return tuple(out)


@dataclass(frozen=True)
class CoxeterSimplex:
    """Gram matrix, its triangular factor, facet normals, and vertices."""

    gram: tuple
    factor: tuple  # C with C^t A C = J
    normal_matrix: tuple  # N = C^{-1}, columns are unit inward normals
    vertices: tuple

    @classmethod
    def from_diagram(cls, n: int, labels: dict) -> "CoxeterSimplex":
        A = gram_from_diagram(n, labels)
        C = lorentz_gram_factor(A)
        N = normal_matrix_from_factor(C)
        xs = vertices_from_normals(C)
        freeze = lambda M: tuple(tuple(row) for row in M)
        return cls(gram=freeze(A), factor=freeze(C), normal_matrix=freeze(N), vertices=xs)

    @classmethod
    def p6(cls) -> "CoxeterSimplex":
        n, labels = p6_diagram()
        return cls.from_diagram(n, labels)

    def normal(self, j: int) -> tuple:
        return tuple(self.normal_matrix[i][j] for i in range(len(self.normal_matrix)))


# ---------------------------------------------------------------------------
# horoballs and distances


def horoball_contains(b, y, tol: float = 1e-12) -> bool:
    """Whether y (on the hyperboloid) lies in the horoball {y.b >= -1}."""
    return bool(lorentz_product(y, b) >= -1 - mpf(tol))


def project_to_horosphere(x, b) -> tuple:
    """Flow x along the geodesic toward the ideal class of b onto the
    horosphere {y : y.b = -1}.

    gamma(t) = exp(-t) x - (sinh t / (x.b)) b reaches the horosphere at
    t* = ln(-x.b).  x strictly inside the horoball is rejected.
    """
    with _wp():
        s = lorentz_product(x, b)
        if s > -1 + mpf(10) ** (-(mp.dps - 10)):
            raise ValueError("point lies inside the horoball; no outward projection")
        t = mpmath.log(-s)
        e = mpmath.exp(-t)
        coef = mpmath.sinh(t) / s
        return tuple(e * xi - coef * bi for xi, bi in zip(x, b))


def hyp_distance(x, y):
    """acosh(-x.y) for hyperboloid points."""
    with _wp():
        c = -lorentz_product(x, y)
        if c < 1 - mpf(10) ** (-9):
            raise ValueError("points are not at real distance (product %s)" % mpmath.nstr(c))
        return mpmath.acosh(max(c, mpf(1)))


def slice_radius_from_height(h):
    """Hyperbolic radius acosh(e^h) of the horoball slice at depth h >= 0."""
    with _wp():
        h = mpf(h)
        if h < 0:
            raise ValueError("height must be nonnegative")
        return mpmath.acosh(mpmath.exp(h))


# ---------------------------------------------------------------------------
# spherical links and tubes


def spherical_inradius(n: int):
    """In-radius acos(sqrt(n)/sqrt(n+1)) of the all-right spherical n-simplex."""
    if n < 1:
        raise ValueError("n must be >= 1")
    with _wp():
        return mpmath.acos(mpmath.sqrt(n) / mpmath.sqrt(n + 1))


def spherical_barycenter_distance(n: int, k: int):
    """Distance acos(sqrt(k+1)/sqrt(n+1)) between the barycenter of the
    all-right spherical n-simplex and the barycenter of a k-face."""
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    with _wp():
        return mpmath.acos(mpmath.sqrt(k + 1) / mpmath.sqrt(n + 1))


def unit_ball_volume(n: int):
    """Euclidean unit n-ball volume pi^{n/2} / Gamma(n/2 + 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _wp():
        return mpf(mpmath.pi) ** (mpf(n) / 2) / mpmath.gamma(mpf(n) / 2 + 1)


def tube_volume(n: int, R, length):
    """Volume v_n(1) sinh^n(R) * length of an R-tube about a geodesic
    segment of the given length in H^{n+1}."""
    with _wp():
        R, length = mpf(R), mpf(length)
        if R < 0 or length < 0:
            raise ValueError("R and length must be nonnegative")
        return unit_ball_volume(n) * mpmath.sinh(R) ** n * length


# ---------------------------------------------------------------------------
# P6 constants


def cusp_cross_section_volume():
    """Euclidean volume of the cusp cross-section piece: a 5-cube flag
    simplex pair of edge 1/sqrt(2), i.e. edge^5 * 2 / (2^5 * 5!)."""
    with _wp():
        edge = 1 / mpmath.sqrt(2)
        return edge ** 5 * 2 / (2 ** 5 * mpmath.factorial(5))


def p6_sigma_volume():
    """Hyperbolic volume pi^3 / 777600 of the Coxeter simplex sigma."""
    with _wp():
        return mpf(mpmath.pi) ** 3 / 777600


def p6_V0_closed_form():
    """(2^{5/2} pi^3 - 3^4) / (2^{5/2} * 5 * 3)."""
    with _wp():
        c = mpmath.sqrt(2) * 4  # 2^{5/2}
        return (c * mpf(mpmath.pi) ** 3 - 81) / (c * 15)


@dataclass(frozen=True)
class GeometryConstants:
    R: object
    d_max: object
    V0: object
    v_n1: object
    sigma_volume: object
    group_order: int
    h_max: object = None
    r_max: object = None
    K_log10: object = None

    def to_json(self) -> dict:
        def s(v):
            return None if v is None else mpmath.nstr(mpf(v), PRECISION_DPS - 10)

        return {
            "precision_digits": PRECISION_DPS,
            "R": s(self.R),
            "d_max": s(self.d_max),
            "V0": s(self.V0),
            "v_n1": s(self.v_n1),
            "sigma_volume": s(self.sigma_volume),
            "group_order": self.group_order,
            "h_max": s(self.h_max),
            "r_max": s(self.r_max),
            "K_log10": s(self.K_log10),
        }


def p6_constants() -> GeometryConstants:
    """Static constants of the P6 horoball packing.

    R = ln(sqrt(7)+sqrt(6)); d_max = acosh(sqrt(3)); V0 is the volume
    of the cusp-free core piece: group_order * (sigma volume minus one
    fifth of the cusp cross-section volume), with closed form
    (2^{5/2} pi^3 - 3^4) / (2^{5/2} * 15).
    """
    with _wp():
        R = mpmath.log(mpmath.sqrt(7) + mpmath.sqrt(6))
        d_max = mpmath.acosh(mpmath.sqrt(3))
        V0 = P6_GROUP_ORDER * (p6_sigma_volume() - cusp_cross_section_volume() / 5)
        return GeometryConstants(
            R=R,
            d_max=d_max,
            V0=V0,
            v_n1=unit_ball_volume(5),
            sigma_volume=p6_sigma_volume(),
            group_order=P6_GROUP_ORDER,
        )


# ---------------------------------------------------------------------------
# ball volumes and the growth constant


def ball_poly_p(x):
    """p(x) = x^5/5 - 2x^3/3 + x - 8/15; V6(r) = pi^3 p(cosh r)."""
    with _wp():
        x = mpf(x)
        return x ** 5 / 5 - 2 * x ** 3 / 3 + x - mpf(8) / 15


def ball_volume_h6(r):
    """Volume of the radius-r ball in H^6."""
    with _wp():
        r = mpf(r)
        if r < 0:
            raise ValueError("radius must be nonnegative")
        return mpf(mpmath.pi) ** 3 * ball_poly_p(mpmath.cosh(r))


def rmax_bound_from_volume(vol, mode: str = "paper_h6"):
    """cosh(r_max) for the largest embedded ball the volume allows.

    paper_h6 mode inverts the H^6 polynomial directly at vol (the
    source's reproduction convention): cosh r_max = p^{-1}(vol), found
    by bisection (p is strictly increasing on [1, oo), p(1) = 0).
    dim3 mode solves the 3-dimensional relation
    pi (sinh 2r - 2r) = vol and returns cosh(r).
    """
    with _wp():
        vol = mpf(vol)
        if vol <= 0:
            raise ValueError("volume must be positive")
        if mode == "paper_h6":
            f = lambda x: ball_poly_p(x) - vol
            lo, hi = mpf(1), mpf(2)
            while f(hi) < 0:
                hi *= 2
            for _ in range(mp.prec + 20):
                mid = (lo + hi) / 2
                if f(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            return (lo + hi) / 2
        if mode == "dim3":
            g = lambda r: mpf(mpmath.pi) * (mpmath.sinh(2 * r) - 2 * r) - vol
            lo, hi = mpf(0), mpf(1)
            while g(hi) < 0:
                hi *= 2
            for _ in range(mp.prec + 20):
                mid = (lo + hi) / 2
                if g(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            return mpmath.cosh((lo + hi) / 2)
        raise ValueError("mode must be 'paper_h6' or 'dim3'")


def rf_growth_constant(n: int, V_core, d_core, R, h_max=None):
    """(2 v_n(1) / V_core) * sinh^n(R + d_core).

    The coefficient of the geodesic length in the index bound; V_core
    and d_core are the volume and diameter bounds of the thick core at
    depth parameter R + h_max (h_max itself enters only through them
    and is accepted for call-site documentation).
    """
    with _wp():
        V_core, d_core, R = mpf(V_core), mpf(d_core), mpf(R)
        if V_core <= 0 or d_core < 0 or R < 0:
            raise ValueError("arguments must be positive (V_core) / nonnegative")
        return 2 * unit_ball_volume(n) / V_core * mpmath.sinh(R + d_core) ** n


def _log_sinh(x):
    """ln sinh x, stable for large x: x + ln(1 - e^{-2x}) - ln 2."""
    if x <= 0:
        raise ValueError("argument must be positive")
    return x + mpmath.log(1 - mpmath.exp(-2 * x)) - mpmath.log(2)


def effective_K(
    vol_M,
    eps,
    log10_C_eps,
    log10_D,
    mode: str = "paper_h6",
    include_vol_eps: bool = True,
) -> dict:
    """log10 of K = 2^7 3^4 5 * C_eps * D * vol^eps * (v_5(1)/V0)
    * sinh^5(2(2R + d_max + ln p^{-1}(vol))).

    Everything is assembled in log space; the sinh term uses the
    large-argument expansion of ln sinh.  include_vol_eps=False drops
    the vol^eps factor (a display variant seen in worked summaries of
    the same bound).  Returns the log10 value together with the
    per-manifold constants (h_max, cosh r_max) it used.
    """
    with _wp():
        vol = mpf(vol_M)
        if vol <= 0:
            raise ValueError("volume must be positive")
        consts = p6_constants()
        cosh_rmax = rmax_bound_from_volume(vol, mode)
        h_max = mpmath.log(cosh_rmax)
        arg = 2 * (2 * consts.R + consts.d_max + h_max)
        ln10 = mpmath.log(10)
        log10_K = (
            mpmath.log(P6_GROUP_ORDER) / ln10
            + mpf(log10_C_eps)
            + mpf(log10_D)
            + (mpf(eps) * mpmath.log(vol) / ln10 if include_vol_eps else mpf(0))
            + mpmath.log(consts.v_n1 / consts.V0) / ln10
            + 5 * _log_sinh(arg) / ln10
        )
        return {
            "log10_K": log10_K,
            "h_max": h_max,
            "cosh_r_max": cosh_rmax,
            "sinh_argument": arg,
            "mode": mode,
            "include_vol_eps": include_vol_eps,
        }
