"""Univariate polynomials in the monomial basis: Chebyshev, Jacobi, Klurman families.

Also houses the interval-extremum machinery used to certify sup norms and
monotonicity, and the Bernstein-Markov reference bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq
from scipy.special import binom, gammaln

from .errors import BadParam


@dataclass(frozen=True)
class UniPoly:
    """c_0 + c_1 x + ... + c_d x^d."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1))

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if c.size == 0:
            c = np.zeros(1)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, c: float) -> "UniPoly":
        return cls(np.array([float(c)]))

    @classmethod
    def identity(cls) -> "UniPoly":
        return cls(np.array([0.0, 1.0]))

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def trim(self, tol: float = 0.0) -> "UniPoly":
        return UniPoly(P.polytrim(self.coeffs, tol))

    def __call__(self, x):
        return eval_poly(self, x)

    def deriv(self, m: int = 1) -> "UniPoly":
        return derivative(self, m)

    def integ(self, lbnd: float = 0.0) -> "UniPoly":
        return UniPoly(P.polyint(self.coeffs, lbnd=lbnd))

    def __add__(self, other):
        if isinstance(other, UniPoly):
            return UniPoly(P.polyadd(self.coeffs, other.coeffs))
        return UniPoly(P.polyadd(self.coeffs, [float(other)]))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, UniPoly):
            return UniPoly(P.polysub(self.coeffs, other.coeffs))
        return UniPoly(P.polysub(self.coeffs, [float(other)]))

    def __neg__(self):
        return UniPoly(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return UniPoly(P.polymul(self.coeffs, other.coeffs))
        return UniPoly(self.coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "UniPoly":
        return UniPoly(self.coeffs / float(scalar))

    def __pow__(self, k: int) -> "UniPoly":
        return UniPoly(P.polypow(self.coeffs, k))


def eval_poly(p: UniPoly, x):
    """Horner evaluation."""
    x = np.asarray(x, dtype=float)
    acc = np.zeros_like(x)
    for c in p.coeffs[::-1]:
        acc = acc * x + c
    return acc if acc.ndim else float(acc)


def derivative(p: UniPoly, m: int = 1) -> UniPoly:
    return UniPoly(P.polyder(p.coeffs, m))


def chebyshev(d: int) -> UniPoly:
    """T_d from T_{k+1} = 2x T_k - T_{k-1}."""
    if d < 0:
        raise BadParam(f"degree must be >= 0, got {d}")
    prev, cur = np.array([1.0]), np.array([0.0, 1.0])
    if d == 0:
        return UniPoly(prev)
    for _ in range(d - 1):
        prev, cur = cur, P.polysub(P.polymulx(2.0 * cur), prev)
    return UniPoly(cur)


def _check_ab(alpha: float, beta: float) -> None:
    if not (alpha > -1 and beta > -1):
        raise BadParam(f"Jacobi parameters need alpha, beta > -1, got ({alpha}, {beta})")


def jacobi(d: int, alpha: float, beta: float) -> UniPoly:
    """J_d^{a,b}(x) = 2^-d sum_j C(d+a, j) C(d+b, d-j) (x-1)^(d-j) (x+1)^j."""
    _check_ab(alpha, beta)
    if d < 0:
        raise BadParam(f"degree must be >= 0, got {d}")
    total = np.zeros(d + 1)
    for j in range(d + 1):
        w = binom(d + alpha, j) * binom(d + beta, d - j)
        term = P.polymul(P.polypow([-1.0, 1.0], d - j), P.polypow([1.0, 1.0], j))
        total = P.polyadd(total, w * term)
    return UniPoly(np.ldexp(total, -d))


def jacobi_norm_sq(i: int, alpha: float, beta: float) -> float:
    """int_{-1}^{1} (1-x)^a (1+x)^b J_i^{a,b}(x)^2 dx."""
    log_h = (
        (alpha + beta + 1) * np.log(2.0)
        - np.log(2 * i + alpha + beta + 1)
        + gammaln(i + alpha + 1)
        + gammaln(i + beta + 1)
        - gammaln(i + alpha + beta + 1)
        - gammaln(i + 1)
    )
    return float(np.exp(log_h))


def jacobi_values(dmax: int, alpha: float, beta: float, x) -> np.ndarray:
    """Rows J_0 .. J_dmax evaluated at x by the three-term recurrence.

    Same normalization as :func:`jacobi`; stable for large degree, unlike the
    expanded monomial coefficients.
    """
    _check_ab(alpha, beta)
    x = np.asarray(x, dtype=float)
    out = np.empty((dmax + 1,) + x.shape)
    out[0] = 1.0
    if dmax >= 1:
        out[1] = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    ab = alpha + beta
    for n in range(2, dmax + 1):
        a = 2 * n * (n + ab) * (2 * n + ab - 2)
        b = (2 * n + ab - 1) * ((2 * n + ab) * (2 * n + ab - 2) * x + alpha**2 - beta**2)
        c = 2 * (n + alpha - 1) * (n + beta - 1) * (2 * n + ab)
        out[n] = (b * out[n - 1] - c * out[n - 2]) / a
    return out


_FAMILY = {"S": (0.0, 1.0), "H": (1.0, 1.0), "F": (0.0, 0.0)}


def _family_weight(kind: str) -> UniPoly:
    return {"S": UniPoly([1.0, 1.0]), "H": UniPoly([1.0, 0.0, -1.0]), "F": UniPoly([1.0])}[kind]


def _family_top(kind: str, index: int) -> int:
    if kind not in _FAMILY:
        raise BadParam(f"family must be one of S, H, F; got {kind!r}")
    if index < 0 or (kind == "H" and index < 1):
        raise BadParam(f"index {index} invalid for family {kind}")
    return index - 1 if kind == "H" else index


def klurman_family(kind: str, index: int, normalized: bool = False) -> UniPoly:
    """S_d = (1+x) sum_{i<=d} (J_i^{0,1})^2, H_d = (1-x^2) sum_{i<d} (J_i^{1,1})^2,
    F_d = sum_{i<=d} (J_i^{0,0})^2.

    With ``normalized=True`` each J_i is scaled to unit weighted L2 norm, which
    is the normalization under which 2 * family(x0) bounds |p'(x0)| for
    monotone p with sup norm 1.
    """
    top = _family_top(kind, index)
    alpha, beta = _FAMILY[kind]
    acc = UniPoly([0.0])
    for i in range(top + 1):
        term = jacobi(i, alpha, beta) ** 2
        if normalized:
            term = term / jacobi_norm_sq(i, alpha, beta)
        acc = acc + term
    return _family_weight(kind) * acc


def klurman_family_value(kind: str, index: int, x0: float) -> float:
    """Orthonormal-normalized family value at x0 via the recurrence (any degree)."""
    if kind == "H" and index == 0:
        return 0.0
    top = _family_top(kind, index)
    alpha, beta = _FAMILY[kind]
    vals = jacobi_values(top, alpha, beta, x0)
    norms = np.array([jacobi_norm_sq(i, alpha, beta) for i in range(top + 1)])
    return float(_family_weight(kind)(x0) * np.sum(vals**2 / norms))


def klurman_bound(d: int, x0: float = 0.0) -> float:
    """Upper bound on |p'(x0)| / ||p||_inf for monotone p of degree d."""
    if d < 1:
        raise BadParam(f"degree must be >= 1, got {d}")
    if d % 2 == 0:
        k = (d - 2) // 2
        return 2.0 * max(klurman_family_value("S", k, x0), klurman_family_value("S", k, -x0))
    k = (d - 1) // 2
    return 2.0 * max(klurman_family_value("F", k, x0), klurman_family_value("H", k, x0))


def bernstein_markov_bound(d: int, x: float) -> float:
    """min(d^2, d / sqrt(1 - x^2)), taken as d^2 at |x| = 1."""
    if abs(x) > 1:
        raise BadParam(f"x must lie in [-1, 1], got {x}")
    if abs(x) == 1:
        return float(d * d)
    return float(min(d * d, d / np.sqrt(1.0 - x * x)))


# -- extrema on intervals ---------------------------------------------------

def _cheb_grid(a: float, b: float, size: int) -> np.ndarray:
    t = np.cos(np.pi * np.arange(size) / (size - 1))[::-1]
    return 0.5 * (a + b) + 0.5 * (b - a) * t


def stationary_points(p: UniPoly, a: float = -1.0, b: float = 1.0, tol: float = 1e-12) -> np.ndarray:
    """Endpoints plus the roots of p' in (a, b), bracketed by sign changes on a
    Chebyshev grid of 32 * deg nodes and refined to ``tol``."""
    dp = p.deriv()
    deg = max(p.degree, 1)
    grid = _cheb_grid(a, b, max(32 * deg, 65))
    vals = dp(grid)
    roots = [a, b]
    for lo, hi, vlo, vhi in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if vlo == 0.0:
            roots.append(lo)
        elif vlo * vhi < 0:
            roots.append(brentq(lambda t: float(dp(t)), lo, hi, xtol=tol * max(1.0, abs(lo)), rtol=1e-15))
    return np.array(roots)


def critical_points(p: UniPoly, a: float = -1.0, b: float = 1.0, tol: float = 1e-12) -> np.ndarray:
    """Candidates for the extrema of p on [a, b]: the stationary points and the
    whole bracketing grid (a safety net for double roots of p')."""
    deg = max(p.degree, 1)
    return np.concatenate([_cheb_grid(a, b, max(32 * deg, 65)), stationary_points(p, a, b, tol)])


_SPLIT = 134217729.0  # 2^27 + 1


def _two_prod(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """a * b = p + e exactly (Dekker splitting)."""
    p = a * b
    ca, cb = _SPLIT * a, _SPLIT * b
    ah, bh = ca - (ca - a), cb - (cb - b)
    al, bl = a - ah, b - bh
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _two_sum(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def eval_accurate(p: UniPoly, x) -> np.ndarray:
    """Compensated Horner: as accurate as Horner in twice the working precision.

    Monomial coefficients of high-degree orthogonal polynomials are large and
    alternate in sign, so plain Horner loses about log10(sum |c_k|) digits
    near the endpoints; the sup-norm certification needs them back.
    """
    x = np.asarray(x, dtype=float)
    c = p.coeffs
    s = np.full(x.shape, c[-1])
    err = np.zeros(x.shape)
    for ck in c[-2::-1]:
        prod, pe = _two_prod(s, x)
        s, se = _two_sum(prod, np.full(x.shape, ck))
        err = err * x + (pe + se)
    return s + err


def sup_norm(p: UniPoly, tol: float = 1e-12, a: float = -1.0, b: float = 1.0) -> float:
    """max |p| over [a, b]."""
    if p.degree == 0:
        return abs(float(p.coeffs[0]))
    return float(np.max(np.abs(eval_accurate(p, critical_points(p, a, b, tol)))))


def argmax_abs(p: UniPoly, a: float = -1.0, b: float = 1.0) -> float:
    pts = critical_points(p, a, b)
    return float(pts[np.argmax(np.abs(eval_accurate(p, pts)))])


def min_on(p: UniPoly, a: float = -1.0, b: float = 1.0) -> tuple[float, float]:
    """(min value, argmin) of p on [a, b]."""
    if p.degree == 0:
        return float(p.coeffs[0]), a
    pts = critical_points(p, a, b)
    vals = p(pts)
    j = int(np.argmin(vals))
    return float(vals[j]), float(pts[j])
