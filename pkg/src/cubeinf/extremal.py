"""Extremal polynomial constants by linear programming with continuous certification.

K_d  sup h'(1) over real polynomials with |h(e)| <= max(1, |e|^d) on the whole line.
M_d  max p'(0) over monotone p of degree d with sup norm 1 on [-1, 1].

Both searches discretize the constraint, solve a small LP, then check the LP
optimum against the continuous constraint.  A rescaled (or repaired) copy of
the LP polynomial is feasible, which gives a certified lower bound; the LP
value itself is an upper bound.  Points of worst violation are added as new
rows until the two agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as C

from .constructs import best_extremal
from .errors import BadParam, CertificationFailed
from .lp import maximize_free
from .orthopoly import UniPoly, _cheb_grid, klurman_bound, min_on, stationary_points, sup_norm

MAX_K_DEGREE = 8
MAX_M_DEGREE = 20
GAP_LIMIT = 1e-6


@dataclass(frozen=True)
class KEstimate:
    d: int
    value: float
    upper: float
    polynomial: UniPoly
    rounds: int
    certified: bool

    @property
    def gap(self) -> float:
        return self.upper - self.value


@dataclass(frozen=True)
class MEstimate:
    d: int
    value: float
    upper: float
    klurman_reference: float
    literal_reference: float
    bound: float
    polynomial: UniPoly
    rounds: int
    certified: bool


# -- K_d ----------------------------------------------------------------------

def _reverse(h: UniPoly, d: int) -> UniPoly:
    """u^d h(1/u): on |u| <= 1 this is h(e) / e^d for |e| >= 1, with u = 1/e."""
    c = np.zeros(d + 1)
    c[: h.coeffs.size] = h.coeffs[: d + 1]
    return UniPoly(c[::-1])


def _k_rows(d: int, inner: np.ndarray, outer: np.ndarray) -> np.ndarray:
    """Rows giving h(e) at inner points e in [-1, 1] and h(e)/e^d at e = 1/u."""
    j = np.arange(d + 1)
    rows_in = inner[:, None] ** j
    rows_out = outer[:, None] ** (d - j)
    return np.vstack([rows_in, rows_out])


def _violators(p: UniPoly, level: float) -> np.ndarray:
    """Stationary points (and endpoints) of p on [-1, 1] where |p| exceeds ``level``."""
    pts = stationary_points(p)
    return pts[np.abs(p(pts)) > level]


def _merge(points: np.ndarray, new: np.ndarray, sep: float = 1e-7) -> tuple[np.ndarray, bool]:
    """Add the new points that are not within ``sep`` of an existing one.

    Near-duplicate rows make the LP basis nearly singular while adding almost
    nothing: at distance sep from a touching point the violation is O(sep^2).
    """
    fresh = [x for x in np.atleast_1d(new) if np.min(np.abs(points - x)) > sep]
    if not fresh:
        return points, False
    return np.unique(np.append(points, fresh)), True


def _k_violation(h: UniPoly, d: int) -> tuple[float, np.ndarray, np.ndarray]:
    """(sup over the line of |h| / max(1, |e|^d), violating inner points, violating outer u)."""
    rev = _reverse(h, d)
    s = max(sup_norm(h), sup_norm(rev))
    return s, _violators(h, 1.0), _violators(rev, 1.0)


def _k_initial_grid(d: int, grid_radius: float, grid_size: int) -> tuple[np.ndarray, np.ndarray]:
    inner = np.unique(np.concatenate([_cheb_grid(-1.0, 1.0, grid_size), [0.0]]))
    e = np.linspace(-grid_radius, grid_radius, grid_size)
    e = e[np.abs(e) > 1.0]
    # Everything beyond the radius is one interval in u = 1/e around 0.
    tail = _cheb_grid(-1.0 / grid_radius, 1.0 / grid_radius, max(9, grid_size // 8))
    outer = np.unique(np.concatenate([1.0 / e, tail, [-1.0, 0.0, 1.0]]))
    return inner, outer


def _solve_k(d: int, inner: np.ndarray, outer: np.ndarray) -> tuple[UniPoly, float]:
    # The row at u = 0 is the leading-coefficient box |c_d| <= 1.
    rows = _k_rows(d, inner, outer)
    G = np.vstack([rows, -rows])
    res = maximize_free(np.arange(d + 1, dtype=float), G, np.ones(len(G)))
    return UniPoly(res.x), res.objective


def estimate_K(
    d: int,
    grid_radius: float | None = None,
    grid_size: int = 64,
    tol: float = 1e-9,
    max_rounds: int = 60,
    strict: bool = True,
) -> KEstimate:
    """Certified bracket for K_d, d <= 8.

    ``value`` is h'(1) / s for the LP optimum h, where s >= 1 is the true
    supremum of |h| / max(1, |e|^d); ``upper`` is the LP optimum.  If the
    bracket does not close within ``max_rounds`` this raises
    CertificationFailed, or with ``strict=False`` returns the open bracket
    flagged ``certified=False``.
    """
    if not 1 <= d <= MAX_K_DEGREE:
        raise BadParam(f"K_d is supported for 1 <= d <= {MAX_K_DEGREE}, got {d}")
    R = max(4.0, 2.0 * d) if grid_radius is None else float(grid_radius)
    if R < 4.0:
        raise BadParam(f"grid radius must be at least 4, got {R}")
    est = _estimate_K_cached(d, R, int(grid_size), float(tol), int(max_rounds))
    if strict and not est.certified:
        raise CertificationFailed(
            f"K_{d}: bracket [{est.value:.9g}, {est.upper:.9g}] still open after {est.rounds} rounds"
        )
    return est


@lru_cache(maxsize=64)
def _estimate_K_cached(d: int, R: float, grid_size: int, tol: float, max_rounds: int) -> KEstimate:
    inner, outer = _k_initial_grid(d, R, grid_size)
    for rounds in range(1, max_rounds + 1):
        h, upper = _solve_k(d, inner, outer)
        s, e_worst, u_worst = _k_violation(h, d)
        s = max(s, 1.0)
        value = float(h.deriv()(1.0)) / s
        if upper - value <= tol * max(1.0, abs(upper)):
            return KEstimate(d, value, upper, h / s, rounds, True)
        inner, grew_in = _merge(inner, e_worst)
        outer, grew_out = _merge(outer, u_worst)
        if not (grew_in or grew_out):
            break
    return KEstimate(d, value, upper, h / s, rounds, False)


# -- M_d ----------------------------------------------------------------------

def _cheb_basis(d: int, x: np.ndarray, deriv: int = 0) -> np.ndarray:
    """Column k holds T_k^{(deriv)}(x)."""
    out = np.empty((x.size, d + 1))
    for k in range(d + 1):
        e = np.zeros(k + 1)
        e[k] = 1.0
        out[:, k] = C.chebval(x, C.chebder(e, deriv) if deriv else e)
    return out


def _solve_m(d: int, mono_pts: np.ndarray, bound_pts: np.ndarray) -> tuple[UniPoly, float]:
    D = _cheb_basis(d, mono_pts, 1)
    V = _cheb_basis(d, bound_pts)
    G = np.vstack([-D, V, -V])
    h = np.concatenate([np.zeros(len(D)), np.ones(2 * len(V))])
    c = _cheb_basis(d, np.zeros(1), 1)[0]
    res = maximize_free(c, G, h)
    return UniPoly(C.cheb2poly(res.x)), res.objective


def _repair(p: UniPoly) -> tuple[UniPoly, np.ndarray, np.ndarray]:
    """Feasible copy of p: add a multiple of x to make p' >= 0, then scale to sup norm 1.

    Returns (repaired polynomial, points where p' < 0, points where |p| > 1).
    """
    dp = p.deriv()
    dmin, _ = min_on(dp)
    q = p + UniPoly([0.0, max(0.0, -dmin)])
    pts = stationary_points(dp)
    return q / sup_norm(q), pts[dp(pts) < 0.0], _violators(p, 1.0)


def klurman_reference(d: int) -> float:
    """p'(0) of the kernel construction, evaluated by the Jacobi recurrence (any d)."""
    return klurman_bound(d, 0.0)


def estimate_M(d: int, grid_size: int = 64, tol: float = 1e-10, max_rounds: int = 80) -> MEstimate:
    """Certified value of M_d for d <= 20, with the construction and bound alongside."""
    if not 1 <= d <= MAX_M_DEGREE:
        raise BadParam(f"M_d is supported for 1 <= d <= {MAX_M_DEGREE}, got {d}")
    return _estimate_M_cached(d, int(grid_size), float(tol), int(max_rounds))


@lru_cache(maxsize=64)
def _estimate_M_cached(d: int, grid_size: int, tol: float, max_rounds: int) -> MEstimate:
    grid = np.unique(np.concatenate([_cheb_grid(-1.0, 1.0, max(grid_size, 2 * d + 3)), [0.0]]))
    mono_pts, bound_pts = grid.copy(), grid.copy()
    best_value, best_p = -math.inf, None
    for rounds in range(1, max_rounds + 1):
        p, upper = _solve_m(d, mono_pts, bound_pts)
        q, neg_pts, big_pts = _repair(p)
        value = float(q.deriv()(0.0))
        if value > best_value:
            best_value, best_p = value, q
        if upper - best_value <= tol * max(1.0, upper):
            break
        mono_pts, grew_mono = _merge(mono_pts, neg_pts)
        bound_pts, grew_bound = _merge(bound_pts, big_pts)
        if not (grew_mono or grew_bound):
            break
    if upper - best_value > GAP_LIMIT * max(1.0, upper):
        raise CertificationFailed(
            f"M_{d}: bracket [{best_value:.9g}, {upper:.9g}] still open after {rounds} rounds"
        )
    _, _, construct = best_extremal(d)
    _, _, literal = best_extremal(d, literal=True)
    return MEstimate(
        d=d,
        value=best_value,
        upper=upper,
        klurman_reference=construct,
        literal_reference=literal,
        bound=klurman_bound(d, 0.0),
        polynomial=best_p,
        rounds=rounds,
        certified=upper - best_value <= tol * max(1.0, upper),
    )
