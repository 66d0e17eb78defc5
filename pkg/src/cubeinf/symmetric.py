"""Symmetric functions as level profiles, and the bridge to univariate polynomials.

A symmetric f on {-1,1}^n is determined by its n + 1 level values; level k is
the value at points with k coordinates equal to -1, i.e. at mean coordinate
t_k = (n - 2k) / n.  Influence computations run in O(n) with log-space
binomial weights, so n may be far beyond the dense-table limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.special import gammaln

from .cube import MAX_N, CubeFunction, popcounts
from .errors import DegreeTooHigh, InconsistentProfile, RegimeError, SizeError
from .orthopoly import UniPoly, sup_norm
from .report import BoundReport, within

RESIDUAL_TOL = 1e-8


def log_binom(n: int, k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


def binomial_weights(n: int) -> np.ndarray:
    """C(n, k) / 2^n for k = 0..n, renormalized to sum to one."""
    w = np.exp(log_binom(n, np.arange(n + 1)) - n * math.log(2.0))
    return w / w.sum()


@dataclass(frozen=True)
class LevelProfile:
    n: int
    levels: np.ndarray

    def __post_init__(self):
        levels = np.asarray(self.levels, dtype=float)
        if levels.shape != (self.n + 1,):
            raise SizeError(f"expected {self.n + 1} levels for n = {self.n}, got shape {levels.shape}")
        object.__setattr__(self, "levels", levels)

    @cached_property
    def binom_log_cache(self) -> np.ndarray:
        return log_binom(self.n, np.arange(self.n + 1))

    @property
    def abscissas(self) -> np.ndarray:
        return (self.n - 2.0 * np.arange(self.n + 1)) / self.n

    def sup_norm(self) -> float:
        return float(np.abs(self.levels).max())

    def first_level_sum(self) -> float:
        """E[(x_1 + ... + x_n) f(x)]."""
        k = np.arange(self.n + 1)
        return float(np.dot(binomial_weights(self.n), (self.n - 2.0 * k) * self.levels))

    def to_cube(self) -> CubeFunction:
        if self.n > MAX_N:
            raise SizeError(f"n = {self.n} is too large to tabulate")
        return CubeFunction(self.n, self.levels[popcounts(self.n)])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "levels": self.levels.tolist()}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LevelProfile":
        return cls(int(doc["n"]), np.asarray(doc["levels"], dtype=float))


def level_profile(f: CubeFunction) -> LevelProfile:
    """Mean of f over each Hamming level (exact levels when f is symmetric)."""
    w = popcounts(f.n)
    sums = np.bincount(w, weights=f.values, minlength=f.n + 1)
    counts = np.bincount(w, minlength=f.n + 1)
    return LevelProfile(f.n, sums / counts)


def from_univariate(p: UniPoly, n: int) -> LevelProfile:
    if p.degree > n:
        raise DegreeTooHigh(f"polynomial degree {p.degree} exceeds n = {n}")
    t = (n - 2.0 * np.arange(n + 1)) / n
    return LevelProfile(n, np.asarray(p(t), dtype=float))


def fit_degree(lp: LevelProfile, residual_tol: float = RESIDUAL_TOL) -> tuple[np.ndarray, int, float]:
    """Smallest D whose least-squares fit in the Chebyshev basis reproduces every level.

    Returns (chebyshev coefficients, D, max residual at the nodes).
    """
    t, y = lp.abscissas, lp.levels
    scale = max(1.0, float(np.abs(y).max()))
    resid = math.inf
    for deg in range(lp.n + 1):
        coef = C.chebfit(t, y, deg)
        resid = float(np.abs(C.chebval(t, coef) - y).max())
        if resid <= residual_tol * scale:
            return coef, deg, resid
    raise InconsistentProfile(f"no polynomial fit reaches residual {residual_tol:g} (best {resid:.3g})")


def to_univariate(lp: LevelProfile, deg_tol: float = RESIDUAL_TOL) -> UniPoly:
    """The polynomial p with f(x) = p((x_1 + ... + x_n) / n); its degree is discovered."""
    coef, deg, _ = fit_degree(lp, deg_tol)
    mono = C.cheb2poly(coef)[: deg + 1]
    return UniPoly(mono)


def symmetric_total_influence(lp: LevelProfile) -> float:
    """Inf[f] = n E_{x in {-1,1}^(n-1)} |f_n(x)| summed over the weight of x."""
    n = lp.n
    if n == 0:
        return 0.0
    gaps = np.abs(lp.levels[:-1] - lp.levels[1:]) / 2.0
    return float(n * np.dot(binomial_weights(n - 1), gaps))


def symmetric_delta_at_one(p: UniPoly, n: int) -> float:
    """Delta(f)(1) for f = p(mean of coordinates): n |p(1) - p(1 - 2/n)| / 2."""
    if p.degree > n:
        raise DegreeTooHigh(f"polynomial degree {p.degree} exceeds n = {n}")
    return n * abs(float(p(1.0)) - float(p(1.0 - 2.0 / n))) / 2.0


def _monotone_on(p: UniPoly, half_width: float, samples: int = 1000) -> bool:
    xs = np.linspace(-half_width, half_width, samples)
    dp = p.deriv()(xs)
    return bool(np.all(dp >= -1e-12) or np.all(dp <= 1e-12))


def symmetric_bound_report(lp: LevelProfile, strict: bool = False) -> BoundReport:
    """Measured influence of a symmetric function against its degree.

    The norm lemma ||p|| <= n / (n - d^2) is certified when n > d^2; otherwise
    the report carries ``norm_lemma_applicable = False`` (or RegimeError when
    ``strict``).
    """
    n = lp.n
    p = to_univariate(lp)
    d = p.degree
    inf = symmetric_total_influence(lp)
    p_sup = sup_norm(p)
    ctx: dict = {"n": n, "d": d, "sup_norm_p": p_sup}

    norm_ok = True
    if n > d * d:
        norm_bound = n / (n - d * d)
        norm_ok = within(p_sup, norm_bound)
        ctx.update(norm_lemma_applicable=True, norm_bound=norm_bound, norm_certified=norm_ok)
    else:
        if strict:
            raise RegimeError(f"n = {n} <= d^2 = {d * d}: norm lemma does not apply")
        ctx.update(norm_lemma_applicable=False)

    if d >= 1:
        ctx["strong_regime"] = bool(n >= 64 * d**4 * math.log(d))
        t = math.sqrt(n) * (1.0 / (4 * d * d) - 2.0 / n)
        ctx["t"] = t
        half = t / math.sqrt(n) + 2.0 / n
        ctx["monotone_on_central_interval"] = _monotone_on(p, half) if half > 0 else None
    if d * d >= n:
        ctx["trivial_bound_sqrt_dn"] = math.sqrt(d * n)

    report = BoundReport.make("symmetric", inf, float(d), **ctx)
    if not norm_ok:
        report.passed = False
        report.status = "fail"
    elif not report.passed:
        # Inf <= d is only conjectured at this n, so exceeding it is news, not a bug.
        report.status = "counterexample-candidate"
    return report
