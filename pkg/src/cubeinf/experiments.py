"""Tables reproducing the numerical observations: each returns (columns, rows)."""

from __future__ import annotations

import csv
import io
import math

from .bounds import estimate_C
from .constructs import chebyshev_symmetric
from .errors import BadParam, ParamError
from .extremal import MAX_K_DEGREE, estimate_K, klurman_reference
from .symmetric import symmetric_total_influence

Table = tuple[list[str], list[list]]

CHEB_DEGREES = (3, 5, 7)
MONOTONE_DEGREES = (8, 16, 40, 100, 200)


def cheb_ladder(d: int) -> list[int]:
    return [d * d + 1, 10**3, 10**4, 10**5]


def cheb_limit(degrees=CHEB_DEGREES, ladder=None) -> Table:
    """Influence of T_d(mean of coordinates) along a ladder of n, with its gap to d."""
    rows = []
    for d in degrees:
        if d < 1 or d % 2 == 0:
            raise ParamError(f"cheb_limit uses odd degrees, got {d}")
        for n in ladder or cheb_ladder(d):
            inf = symmetric_total_influence(chebyshev_symmetric(d, n))
            rows.append([d, n, inf, d - inf])
    return ["d", "n", "inf", "gap"], rows


def monotone_asymptotics(degrees=MONOTONE_DEGREES) -> Table:
    """p'(0) of the extremal monotone construction, from the Jacobi recurrence."""
    rows = []
    for d in degrees:
        if d < 1:
            raise ParamError(f"degree must be >= 1, got {d}")
        ref = klurman_reference(d)
        rows.append([d, ref, ref / d, 1.0 / (2.0 * math.pi), 1.0 / math.pi])
    return ["d", "klurman_p0", "ratio", "one_over_2pi", "one_over_pi"], rows


def kd_table(dmax: int = 4) -> Table:
    if not 1 <= dmax <= MAX_K_DEGREE:
        raise ParamError(f"kd_table needs 1 <= dmax <= {MAX_K_DEGREE}, got {dmax}")
    rows = []
    for d in range(1, dmax + 1):
        est = estimate_K(d, strict=False)
        rows.append([d, est.value, est.upper, "certified" if est.certified else "open"])
    return ["d", "k_lower", "k_upper", "status"], rows


def c_estimate(d: int = 2, alpha: float | None = None, n: int = 8, trials: int = 2000, seed: int = 0) -> Table:
    if alpha is None:
        alpha = 1.0 - 1.0 / d if d >= 2 else 0.5
    try:
        value = estimate_C(d, alpha, n, trials, seed)
    except BadParam as exc:
        raise ParamError(str(exc)) from exc
    return ["d", "alpha", "n", "c_lower", "cap"], [[d, alpha, n, value, alpha ** (-min(d * d, n))]]


EXPERIMENTS = {
    "cheb_limit": cheb_limit,
    "monotone_asymptotics": monotone_asymptotics,
    "kd_table": kd_table,
    "c_estimate": c_estimate,
}


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def to_csv(table: Table) -> str:
    cols, rows = table
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(x) for x in r])
    return buf.getvalue()
