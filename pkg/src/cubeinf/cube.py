"""Dense functions on {-1,1}^n and their Walsh-Fourier expansions.

Index convention (shared by every module): bit k of a point index i is 0 when
x_{k+1} = +1 and 1 when x_{k+1} = -1.  Index 0 is therefore the all-ones
point, flipping coordinate i is ``index ^ (1 << (i - 1))`` and the character
chi_S evaluated at index i is ``(-1) ** popcount(i & S)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator

import numpy as np

from .errors import LengthMismatch, NonFinite, SchemaError, TooLarge

MAX_N = 24
DEG_TOL = 1e-9
CONVENTION = "bit0_plus_one"


def popcounts(n: int) -> np.ndarray:
    """|S| for every mask S in 0 .. 2^n - 1."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)


def coordinates(n: int) -> np.ndarray:
    """(n, 2^n) array whose row k holds x_{k+1} at every point."""
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[None, :] >> np.arange(n, dtype=np.int64)[:, None]) & 1
    return (1 - 2 * bits).astype(float)


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard butterfly along the last axis (returns a copy).

    out[..., S] = sum_i a[..., i] * (-1)^{popcount(i & S)}.
    """
    out = np.array(a, dtype=float, copy=True)
    size = out.shape[-1]
    lead = out.shape[:-1]
    h = 1
    while h < size:
        view = out.reshape(*lead, size // (2 * h), 2, h)
        top = view[..., 0, :].copy()
        bottom = view[..., 1, :]
        view[..., 0, :] += bottom
        view[..., 1, :] = top - bottom
        h *= 2
    return out


def _check_n(n: int) -> None:
    if n < 1:
        raise LengthMismatch(f"n must be >= 1, got {n}")
    if n > MAX_N:
        raise TooLarge(f"n = {n} exceeds the dense-table limit {MAX_N}")


@dataclass(frozen=True)
class FourierExpansion:
    """Coefficients f^(S) stored densely, ``coeffs[S]`` for subset-mask S."""

    n: int
    coeffs: np.ndarray

    def __getitem__(self, mask: int) -> float:
        return float(self.coeffs[mask])

    def items(self, tol: float = 0.0) -> Iterator[tuple[int, float]]:
        for mask in np.flatnonzero(np.abs(self.coeffs) > tol):
            yield int(mask), float(self.coeffs[mask])

    def degree(self, tol: float = DEG_TOL) -> int:
        support = np.abs(self.coeffs) > tol
        if not support.any():
            return 0
        return int(popcounts(self.n)[support].max())

    def levels_present(self, tol: float = DEG_TOL) -> set[int]:
        return set(np.unique(popcounts(self.n)[np.abs(self.coeffs) > tol]).tolist())

    def is_homogeneous(self, tol: float = DEG_TOL) -> bool:
        return len(self.levels_present(tol)) <= 1

    def first_level_sum(self) -> float:
        """sum_i f^({i})."""
        return float(sum(self.coeffs[1 << k] for k in range(self.n)))

    def weight_by_level(self) -> np.ndarray:
        """W_k = sum_{|S| = k} f^(S)^2 for k = 0..n."""
        return np.bincount(popcounts(self.n), weights=self.coeffs**2, minlength=self.n + 1)


class CubeFunction:
    """A real-valued function on {-1,1}^n held as a truth table of 2^n values."""

    def __init__(self, n: int, values: np.ndarray):
        self.n = n
        values = np.asarray(values, dtype=float)
        values.flags.writeable = False
        self.values = values

    def __repr__(self) -> str:
        return f"CubeFunction(n={self.n})"

    def __len__(self) -> int:
        return self.values.size

    @cached_property
    def fourier(self) -> FourierExpansion:
        return FourierExpansion(self.n, fwht(self.values) / self.values.size)

    def __add__(self, other: "CubeFunction") -> "CubeFunction":
        return CubeFunction(self.n, self.values + other.values)

    def __mul__(self, other) -> "CubeFunction":
        if isinstance(other, CubeFunction):
            return CubeFunction(self.n, self.values * other.values)
        return CubeFunction(self.n, self.values * float(other))

    __rmul__ = __mul__

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max())

    def norm(self, p: float = 1.0) -> float:
        return float(np.mean(np.abs(self.values) ** p) ** (1.0 / p))

    def mean(self) -> float:
        return float(self.values.mean())


def from_truth_table(n: int, values) -> CubeFunction:
    _check_n(n)
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size != 1 << n:
        raise LengthMismatch(f"expected {1 << n} values for n = {n}, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite("truth table contains NaN or infinite entries")
    return CubeFunction(n, arr.copy())


def from_callable(n: int, func: Callable[..., np.ndarray]) -> CubeFunction:
    """Tabulate ``func(x1, ..., xn)`` where each argument is an array over all points."""
    _check_n(n)
    return from_truth_table(n, np.broadcast_to(func(*coordinates(n)), (1 << n,)))


def fourier(f: CubeFunction) -> FourierExpansion:
    return f.fourier


def synthesize(e: FourierExpansion) -> CubeFunction:
    _check_n(e.n)
    f = CubeFunction(e.n, fwht(e.coeffs))
    f.__dict__["fourier"] = e
    return f


def expansion_from_dict(n: int, coeffs: dict[int, float]) -> FourierExpansion:
    _check_n(n)
    dense = np.zeros(1 << n)
    for mask, c in coeffs.items():
        if not 0 <= mask < 1 << n:
            raise LengthMismatch(f"mask {mask} out of range for n = {n}")
        dense[mask] = c
    return FourierExpansion(n, dense)


@dataclass(frozen=True)
class PropertyFlags:
    boolean_valued: bool
    bounded_by_one: bool
    homogeneous: bool
    symmetric: bool
    monotone: bool
    degree: int
    sup_norm: float


def is_monotone(f: CubeFunction, tol: float = DEG_TOL) -> bool:
    """Increasing in every coordinate: f(.., +1, ..) >= f(.., -1, ..) on all edges."""
    v = f.values
    for k in range(f.n):
        halves = v.reshape(-1, 2, 1 << k)
        if np.any(halves[:, 0, :] < halves[:, 1, :] - tol):
            return False
    return True


def is_symmetric(f: CubeFunction, tol: float = DEG_TOL) -> bool:
    weights = popcounts(f.n)
    v = f.values
    lo = np.full(f.n + 1, np.inf)
    hi = np.full(f.n + 1, -np.inf)
    np.minimum.at(lo, weights, v)
    np.maximum.at(hi, weights, v)
    return bool(np.all(hi - lo <= tol))


def classify(f: CubeFunction, tol: float = DEG_TOL) -> PropertyFlags:
    v = f.values
    sup = f.sup_norm()
    boolean = bool(np.all(np.abs(np.abs(v) - 1.0) <= tol))
    e = f.fourier
    return PropertyFlags(
        boolean_valued=boolean,
        bounded_by_one=sup <= 1.0 + tol,
        homogeneous=e.is_homogeneous(tol),
        symmetric=is_symmetric(f, tol),
        monotone=is_monotone(f, tol),
        degree=e.degree(tol),
        sup_norm=sup,
    )


# -- JSON schema -----------------------------------------------------------

def to_json_dict(f: CubeFunction, format: str = "truth_table", tol: float = 0.0) -> dict:
    if format == "truth_table":
        values = f.values.tolist()
    elif format == "fourier":
        values = [[format_mask(m, f.n), c] for m, c in f.fourier.items(tol)]
    else:
        raise SchemaError(f"unknown format {format!r}")
    return {"n": f.n, "format": format, "convention": CONVENTION, "values": values}


def format_mask(mask: int, n: int) -> str:
    """Binary string of the mask, most significant first: the last character is x_1."""
    return format(mask, f"0{n}b")


def from_json_dict(doc: dict) -> CubeFunction:
    if not isinstance(doc, dict):
        raise SchemaError("top level: expected a JSON object")
    for key in ("n", "values"):
        if key not in doc:
            raise SchemaError(f"field {key!r}: missing")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise SchemaError(f"field 'n': expected integer, got {n!r}")
    convention = doc.get("convention", CONVENTION)
    if convention != CONVENTION:
        raise SchemaError(f"field 'convention': only {CONVENTION!r} is supported, got {convention!r}")
    fmt = doc.get("format", "truth_table")
    values = doc["values"]
    if not isinstance(values, list):
        raise SchemaError("field 'values': expected a list")
    if fmt == "truth_table":
        try:
            return from_truth_table(n, [float(v) for v in values])
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"field 'values': {exc}") from exc
    if fmt == "fourier":
        coeffs: dict[int, float] = {}
        for pos, pair in enumerate(values):
            try:
                mask_str, c = pair
                mask = int(mask_str, 2)
                coeffs[mask] = coeffs.get(mask, 0.0) + float(c)
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"field 'values'[{pos}]: expected [binary_string, number] ({exc})") from exc
        try:
            return synthesize(expansion_from_dict(n, coeffs))
        except ValueError as exc:
            raise SchemaError(f"field 'values': {exc}") from exc
    raise SchemaError(f"field 'format': expected 'truth_table' or 'fourier', got {fmt!r}")


def load_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
