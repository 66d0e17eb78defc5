"""Tight and near-tight examples: characters, f4, the quadratics s and t, the
homogeneous counterexample, Chebyshev symmetric functions and extremal
monotone polynomials."""

from __future__ import annotations

import math
import warnings
from typing import Callable

import numpy as np

from .cube import MAX_N, CubeFunction, from_callable, popcounts
from .errors import BadDegreeWarning, BadParam, SizeError, UnknownName
from .orthopoly import UniPoly, chebyshev, jacobi, jacobi_norm_sq, klurman_family
from .symmetric import LevelProfile, from_univariate

SQRT2 = math.sqrt(2.0)


def character(S: int, n: int) -> CubeFunction:
    """chi_S as a truth table; S is a subset mask."""
    if not 0 <= S < 1 << n:
        raise BadParam(f"mask {S} is not a subset of [{n}]")
    parity = np.bitwise_count(np.arange(1 << n, dtype=np.int64) & S) & 1
    return CubeFunction(n, 1.0 - 2.0 * parity)


def mask_of(*variables: int) -> int:
    """Subset mask from 1-based variable indices."""
    return sum(1 << (i - 1) for i in set(variables))


def _f4(x, y, z, w):
    return (x * (z + w) + y * (z - w)) / 2


def _quad_s(x, y, z, w):
    return (x * y - z * w) / 2 + (SQRT2 - 1) / 8 * (x * z + y * w)


def _quad_t(x, y, z, w):
    return (x * y - z * w) / 2 + (SQRT2 - 1) / 16 * (x + y) * (z + w)


def counterexample_point(block: int) -> Callable[[np.ndarray], float]:
    """The homogeneous quadratic (mean of block 1)^2 - (mean of block 2)^2 on 2*block
    coordinates, evaluated pointwise so any block size works."""

    def f(x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        return float((x[:block].sum() / block) ** 2 - (x[block:].sum() / block) ** 2)

    return f


def majority(n: int) -> CubeFunction:
    if n % 2 == 0:
        raise BadParam("majority needs an odd number of variables")
    return from_callable(n, lambda *xs: np.sign(sum(xs)))


def named_example(name: str, d: int | None = None, block: int | None = None) -> CubeFunction:
    """Truth table of a named example.

    Names: f4, quad_s, quad_t, f4_times_character (needs d >= 2),
    homogeneous_counterexample (needs block), majority3.
    """
    if name == "f4":
        return from_callable(4, _f4)
    if name == "quad_s":
        return from_callable(4, _quad_s)
    if name == "quad_t":
        return from_callable(4, _quad_t)
    if name == "majority3":
        return majority(3)
    if name == "f4_times_character":
        if d is None or d < 2:
            raise BadParam("f4_times_character needs d >= 2")
        n = d + 2
        if n > MAX_N:
            raise SizeError(f"f4 * chi needs {n} variables, limit is {MAX_N}")
        return from_callable(n, lambda x, y, z, w, *rest: _f4(x, y, z, w) * np.prod(rest, axis=0))
    if name == "homogeneous_counterexample":
        if block is None or block < 1:
            raise BadParam("homogeneous_counterexample needs block >= 1")
        n = 2 * block
        if n > MAX_N:
            raise SizeError(f"counterexample needs {n} variables, limit is {MAX_N}; use counterexample_point")
        weights = popcounts(n)
        first = popcounts(n) - np.bitwise_count(np.arange(1 << n, dtype=np.int64) >> block).astype(np.int64)
        second = weights - first
        mean1 = (block - 2.0 * first) / block
        mean2 = (block - 2.0 * second) / block
        return CubeFunction(n, mean1**2 - mean2**2)
    raise UnknownName(f"unknown example {name!r}")


def chebyshev_symmetric(d: int, n: int) -> LevelProfile:
    """Level profile of T_d((x_1 + ... + x_n) / n)."""
    if n < d * d:
        raise BadParam(f"need n >= d^2 = {d * d}, got n = {n}")
    if d % 2 == 0:
        warnings.warn(f"chebyshev_symmetric with even d = {d}: T_d'(0) = 0", BadDegreeWarning, stacklevel=2)
    return from_univariate(chebyshev(d), n)


# -- extremal monotone polynomials ----------------------------------------

_KERNEL_PARAMS = {"S": ((0.0, 1.0), UniPoly([1.0, 1.0])), "F": ((0.0, 0.0), UniPoly([1.0])),
                  "H": ((1.0, 1.0), UniPoly([1.0, 0.0, -1.0]))}


def _kernel_derivative(kind: str, top: int, x0: float) -> UniPoly:
    """w(x) * (sum_{i<=top} q_i(x) q_i(x0))^2 with q_i orthonormal for the weight w."""
    (alpha, beta), weight = _KERNEL_PARAMS[kind]
    kernel = UniPoly([0.0])
    for i in range(top + 1):
        q = jacobi(i, alpha, beta)
        kernel = kernel + q * (q(x0) / jacobi_norm_sq(i, alpha, beta))
    return weight * kernel**2


def _normalize_monotone(dp: UniPoly) -> UniPoly:
    """Antiderivative of a nonnegative dp, centered and scaled to sup norm 1."""
    P = dp.integ()
    lo, hi = float(P(-1.0)), float(P(1.0))
    return (P - (hi + lo) / 2) / ((hi - lo) / 2)


def klurman_monotone_extremal(d: int, literal: bool = False) -> dict[str, UniPoly]:
    """Monotone degree-d polynomials with sup norm 1 and large p'(0), keyed by family.

    By default p' is the weighted square of the reproducing kernel at 0 for
    the parity-matched family; this attains 2 * max(family(0)) with the
    orthonormal families.  ``literal=True`` instead takes p' proportional to
    the family polynomial itself (standard Jacobi normalization).
    """
    if d < 1:
        raise BadParam(f"degree must be >= 1, got {d}")
    if d % 2 == 0:
        k = (d - 2) // 2
        branches = [("S", k, k)]
    else:
        k = (d - 1) // 2
        branches = [("F", k, k)] + ([("H", k, k - 1)] if k >= 1 else [])
    out = {}
    for kind, index, top in branches:
        dp = klurman_family(kind, index) if literal else _kernel_derivative(kind, top, 0.0)
        out[kind] = _normalize_monotone(dp)
    return out


def best_extremal(d: int, literal: bool = False) -> tuple[str, UniPoly, float]:
    """The branch with the largest p'(0)."""
    cands = klurman_monotone_extremal(d, literal)
    kind = max(cands, key=lambda k: float(cands[k].deriv()(0.0)))
    p = cands[kind]
    return kind, p, float(p.deriv()(0.0))
