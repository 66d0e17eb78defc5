"""Discrete derivatives, L_p influences, pointwise sensitivity and the Laplacian."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cube import CubeFunction
from .errors import BadExponent, IndexOutOfRange


def _check_p(p: float) -> None:
    if not p >= 1:
        raise BadExponent(f"p must be >= 1, got {p}")


def _derivative_values(values: np.ndarray, k: int) -> np.ndarray:
    """Table of (f(x) - f(x xor e_{k+1})) / 2 for 0-based coordinate k."""
    halves = values.reshape(-1, 2, 1 << k)
    diff = (halves[:, 0, :] - halves[:, 1, :]) / 2.0
    return np.stack((diff, -diff), axis=1).reshape(-1)


def discrete_derivative(f: CubeFunction, i: int) -> CubeFunction:
    """f_i(x) = (f(x) - f(x xor e_i)) / 2 for 1-based variable i."""
    if not 1 <= i <= f.n:
        raise IndexOutOfRange(f"variable index {i} not in 1..{f.n}")
    return CubeFunction(f.n, _derivative_values(f.values, i - 1))


def influence_p(f: CubeFunction, i: int, p: float = 1.0) -> float:
    _check_p(p)
    return float(np.mean(np.abs(discrete_derivative(f, i).values) ** p))


def influences_p(f: CubeFunction, p: float = 1.0) -> np.ndarray:
    """Vector of Inf_i^(p)[f] for i = 1..n."""
    _check_p(p)
    return np.array([np.mean(np.abs(_derivative_values(f.values, k)) ** p) for k in range(f.n)])


def total_influence_p(f: CubeFunction, p: float = 1.0) -> float:
    return float(influences_p(f, p).sum())


def total_influence(f: CubeFunction) -> float:
    return total_influence_p(f, 1.0)


def spectral_influence(f: CubeFunction) -> float:
    """sum_S |S| f^(S)^2, which equals Inf^(2)[f]."""
    w = f.fourier.weight_by_level()
    return float(np.dot(np.arange(w.size), w))


@dataclass(frozen=True)
class SensitivityField:
    """Delta(f)(x) = sum_i |f_i(x)| at every point of the cube."""

    n: int
    delta_values: np.ndarray

    @property
    def max(self) -> float:
        return float(self.delta_values.max())

    @property
    def mean(self) -> float:
        return float(self.delta_values.mean())

    def at(self, index: int) -> float:
        return float(self.delta_values[index])


def sensitivity_field(f: CubeFunction) -> SensitivityField:
    acc = np.zeros_like(f.values)
    for k in range(f.n):
        acc += np.abs(_derivative_values(f.values, k))
    return SensitivityField(f.n, acc)


def max_sensitivity(f: CubeFunction) -> float:
    return sensitivity_field(f).max


def sensitivity_at(func: Callable[[np.ndarray], float], x) -> float:
    """Delta(f)(x) for a function given pointwise on a +-1 vector, any n.

    Needs n + 1 evaluations, so it also serves functions too large to tabulate.
    """
    x = np.asarray(x, dtype=float)
    base = float(func(x))
    total = 0.0
    for i in range(x.size):
        y = x.copy()
        y[i] = -y[i]
        total += abs(base - float(func(y))) / 2.0
    return total


def laplacian(f: CubeFunction) -> CubeFunction:
    """Lf = f_1 + ... + f_n, so that (Lf)^(S) = |S| f^(S)."""
    acc = np.zeros_like(f.values)
    for k in range(f.n):
        acc += _derivative_values(f.values, k)
    return CubeFunction(f.n, acc)


def variance_p(f: CubeFunction, p: float = 2.0) -> float:
    _check_p(p)
    return float(np.mean(np.abs(f.values - f.fourier[0]) ** p))


def first_level_sum(f: CubeFunction) -> float:
    """E[(x_1 + ... + x_n) f(x)] = sum_i f^({i})."""
    return f.fourier.first_level_sum()
