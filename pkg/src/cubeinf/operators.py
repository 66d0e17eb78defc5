"""Noise operator, symmetrization, and collapse of a cube function to a bivariate polynomial."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .cube import CubeFunction, FourierExpansion, popcounts, synthesize
from .errors import BadM, BadParam
from .orthopoly import UniPoly
from .symmetric import LevelProfile, level_profile, log_binom

MAX_M = 10**6
EXACT_WEIGHT_M = 1000


def noise(f: CubeFunction, rho: float) -> CubeFunction:
    """T_rho f: scale f^(S) by rho^|S|."""
    e = f.fourier
    scaled = e.coeffs * np.power(float(rho), popcounts(f.n))
    return synthesize(FourierExpansion(f.n, scaled))


def symmetrize(f: CubeFunction) -> LevelProfile:
    """Sym(f) as its n + 1 level values (mean of f over each Hamming level)."""
    return level_profile(f)


def _hypergeometric_weights(m: int, n: int) -> np.ndarray:
    """H[j, w] = Pr[w of j minus-ones fall in the first n of m coordinates]."""
    j = np.arange(m + 1)[:, None]
    w = np.arange(n + 1)[None, :]
    if m <= EXACT_WEIGHT_M:
        out = np.zeros((m + 1, n + 1))
        for jj in range(m + 1):
            den = math.comb(m, jj)
            for ww in range(max(0, jj - (m - n)), min(n, jj) + 1):
                out[jj, ww] = math.comb(n, ww) * math.comb(m - n, jj - ww) / den
        return out
    valid = (w <= j) & (j - w <= m - n)
    jw = np.where(valid, j - w, 0)
    logh = log_binom(n, w) + log_binom(m - n, jw) - log_binom(m, j)
    return np.where(valid, np.exp(np.where(valid, logh, 0.0)), 0.0)


def symmetrize_m(f: CubeFunction, m: int) -> LevelProfile:
    """Sym_m(f): symmetrization of f viewed as a function of m >= n coordinates."""
    if m < f.n:
        raise BadM(f"m = {m} must be at least n = {f.n}")
    if m > MAX_M:
        raise BadM(f"m = {m} exceeds {MAX_M}")
    averages = level_profile(f).levels
    return LevelProfile(m, _hypergeometric_weights(m, f.n) @ averages)


@dataclass(frozen=True)
class BiPoly:
    """sum_{j,k} coeffs[j, k] x^j y^k."""

    coeffs: np.ndarray

    def __call__(self, x, y):
        return P.polyval2d(x, y, self.coeffs)

    @property
    def total_degree(self) -> int:
        j, k = np.nonzero(self.coeffs)
        return int((j + k).max()) if j.size else 0


def collapse_partition(f: CubeFunction, S: int) -> BiPoly:
    """g(x, y) = f with x substituted on the coordinates in mask S and y elsewhere."""
    if not 0 <= S < 1 << f.n:
        raise BadParam(f"mask {S} is not an {f.n}-bit subset")
    masks = np.arange(1 << f.n, dtype=np.int64)
    inside = np.bitwise_count(masks & S).astype(np.int64)
    outside = popcounts(f.n) - inside
    coeffs = np.zeros((f.n + 1, f.n + 1))
    np.add.at(coeffs, (inside, outside), f.fourier.coeffs)
    return BiPoly(coeffs)


def diag_line(g: BiPoly, mode: str = "plus_minus") -> UniPoly:
    """Restrict g to a line: g(1+e, 1-e), g(e, 1) or g(1, e)."""
    a = g.coeffs
    out = np.zeros(1)
    for j, k in zip(*np.nonzero(a)):
        if mode == "plus_minus":
            term = P.polymul(P.polypow([1.0, 1.0], j), P.polypow([1.0, -1.0], k))
        elif mode == "x_line":
            term = P.polypow([0.0, 1.0], j)
        elif mode == "y_line":
            term = P.polypow([0.0, 1.0], k)
        else:
            raise BadParam(f"unknown mode {mode!r}")
        out = P.polyadd(out, a[j, k] * term)
    return UniPoly(out)


def sign_partition_at_one(f: CubeFunction) -> int:
    """Mask of the variables i with f_i(1) >= 0."""
    e = f.fourier
    mask = 0
    masks = np.arange(1 << f.n, dtype=np.int64)
    for i in range(f.n):
        if e.coeffs[(masks >> i) & 1 == 1].sum() >= 0:
            mask |= 1 << i
    return mask
