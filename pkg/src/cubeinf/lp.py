"""Dense two-phase tableau simplex with Bland's anti-cycling entering rule.

Small problems only (a few thousand rows, a few hundred columns).  The final
basis is re-solved directly from the original data and certified by checking
primal feasibility, dual feasibility and a zero duality gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import Infeasible, IterationLimit, LPError, Unbounded

LE, EQ, GE = "<=", "==", ">="
PIVOT_TOL = 1e-11
COST_TOL = 1e-10
UNBOUNDED_TOL = 1e-7
HARRIS_TOL = 1e-9


@dataclass
class DenseLP:
    """Optimize c.x subject to rows ``A[i] . x (senses[i]) b[i]`` and lower <= x <= upper.

    ``lower`` defaults to 0 and ``upper`` to +inf; use -inf for free variables.
    """

    c: np.ndarray
    A: np.ndarray
    senses: Sequence[str]
    b: np.ndarray
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None
    maximize: bool = True

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        nvar = self.c.size
        self.A = np.asarray(self.A, dtype=float).reshape(-1, nvar)
        self.b = np.asarray(self.b, dtype=float).ravel()
        self.senses = list(self.senses)
        self.lower = np.zeros(nvar) if self.lower is None else np.asarray(self.lower, dtype=float)
        self.upper = np.full(nvar, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float)
        m = self.A.shape[0]
        if self.b.size != m or len(self.senses) != m:
            raise ValueError("A, b and senses disagree on the number of rows")
        if self.lower.size != nvar or self.upper.size != nvar:
            raise ValueError("bounds do not match the number of variables")
        if any(s not in (LE, EQ, GE) for s in self.senses):
            raise ValueError(f"senses must be among {LE!r}, {EQ!r}, {GE!r}")
        finite = [self.c, self.A, self.b]
        if not all(np.all(np.isfinite(a)) for a in finite):
            raise ValueError("LP data must be finite")
        if np.any(self.lower > self.upper):
            raise Infeasible("a lower bound exceeds its upper bound")


@dataclass
class LPResult:
    x: np.ndarray
    objective: float
    iterations: int
    basis: tuple[int, ...]
    certified: bool
    residual: float
    duality_gap: float
    info: dict = field(default_factory=dict)
    duals: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _standardize(lp: DenseLP):
    """Rewrite as min cs.u s.t. As u = bs, u >= 0, with x = T u + offset."""
    nvar = lp.c.size
    cols, offset = [], np.zeros(nvar)
    bound_rows = []
    for j in range(nvar):
        lo, hi = lp.lower[j], lp.upper[j]
        e = np.zeros(nvar)
        e[j] = 1.0
        if np.isfinite(lo):
            offset[j] = lo
            cols.append(e)
            if np.isfinite(hi):
                bound_rows.append((len(cols) - 1, hi - lo))
        elif np.isfinite(hi):
            offset[j] = hi
            cols.append(-e)
        else:
            cols.append(e)
            cols.append(-e)
    T = np.array(cols).T
    nu = T.shape[1]

    rows = [lp.A @ T]
    rhs = [lp.b - lp.A @ offset]
    senses = list(lp.senses)
    for col, width in bound_rows:
        r = np.zeros((1, nu))
        r[0, col] = 1.0
        rows.append(r)
        rhs.append(np.array([width]))
        senses.append(LE)
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1
    senses = [{LE: GE, GE: LE, EQ: EQ}[s] if fl else s for s, fl in zip(senses, flip)]

    m = A.shape[0]
    n_slack = sum(s != EQ for s in senses)
    n_art = sum(s != LE for s in senses)
    full = np.zeros((m, nu + n_slack + n_art))
    full[:, :nu] = A
    basis = np.empty(m, dtype=int)
    si, ai = nu, nu + n_slack
    for i, s in enumerate(senses):
        if s == LE:
            full[i, si] = 1.0
            basis[i] = si
            si += 1
        elif s == GE:
            full[i, si] = -1.0
            si += 1
            full[i, ai] = 1.0
            basis[i] = ai
            ai += 1
        else:
            full[i, ai] = 1.0
            basis[i] = ai
            ai += 1
    sign = -1.0 if lp.maximize else 1.0
    cost = np.zeros(full.shape[1])
    cost[:nu] = sign * (lp.c @ T)
    return full, b, cost, basis, nu + n_slack, T, offset, flip


class _Tableau:
    """Tableau over [A | b], rebuilt from the original data every REFRESH pivots."""

    REFRESH = 25

    def __init__(self, A: np.ndarray, b: np.ndarray, basis: np.ndarray):
        self.A, self.b = A, b
        self.M = np.hstack([A, b[:, None]])
        self.basis = basis.copy()
        self.iterations = 0

    def restrict(self, rows: np.ndarray, ncols: int) -> None:
        self.A, self.b = self.A[rows, :ncols], self.b[rows]
        self.M = np.hstack([self.M[rows, :ncols], self.M[rows, -1:]])
        self.basis = self.basis[rows]

    def refresh(self) -> None:
        B = self.A[:, self.basis]
        try:
            self.M = np.linalg.solve(B, np.hstack([self.A, self.b[:, None]]))
        except np.linalg.LinAlgError:
            return
        self.M[:, -1] = np.maximum(self.M[:, -1], 0.0)

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        cb = cost[self.basis]
        return cost - cb @ self.M[:, :-1]

    def pivot(self, row: int, col: int) -> None:
        M = self.M
        M[row] /= M[row, col]
        colv = M[:, col].copy()
        colv[row] = 0.0
        M -= np.outer(colv, M[row])
        self.basis[row] = col
        self.iterations += 1
        if self.iterations % self.REFRESH == 0:
            self.refresh()

    def run(self, cost: np.ndarray, allowed: int, max_iter: int) -> None:
        """Bland's entering rule (lowest-index improving column) with a Harris ratio test;
        remaining ties go to the lowest-index basic variable."""
        scale = max(1.0, float(np.abs(cost).max()))
        while True:
            if self.iterations >= max_iter:
                raise IterationLimit(f"simplex stopped after {self.iterations} pivots")
            r = self.reduced_costs(cost)[:allowed]
            candidates = np.flatnonzero(r < -COST_TOL * scale)
            if candidates.size == 0:
                return
            for col in candidates:
                a = self.M[:, col]
                pos = np.flatnonzero(a > PIVOT_TOL * max(1.0, float(np.abs(a).max())))
                if pos.size:
                    break
                if r[col] < -UNBOUNDED_TOL * scale:
                    raise Unbounded("objective is unbounded")
            else:
                # Only round-off-sized improvements remain, none of them pivotable.
                return
            # Harris two-pass ratio test: among rows whose ratio is within a
            # feasibility tolerance of the minimum, pivot on the largest entry.
            rhs = self.M[pos, -1]
            theta = np.min((rhs + HARRIS_TOL) / a[pos])
            eligible = pos[rhs / a[pos] <= theta]
            piv = self.M[eligible, col]
            ties = eligible[piv >= piv.max() * (1.0 - 1e-12)]
            row = int(ties[np.argmin(self.basis[ties])])
            self.pivot(row, col)


def lp_solve(lp: DenseLP, max_iter: int = 50_000, tol: float = 1e-9) -> LPResult:
    A, b, cost, basis, n_real, T, offset, flip = _standardize(lp)
    m, ncol = A.shape
    keep = np.ones(m, dtype=bool)
    tab = _Tableau(A, b, basis)

    if ncol > n_real:
        phase1 = np.zeros(ncol)
        phase1[n_real:] = 1.0
        tab.run(phase1, ncol, max_iter)
        infeas = float(phase1[tab.basis] @ tab.M[:, -1])
        if infeas > tol * max(1.0, float(np.abs(b).max())):
            raise Infeasible(f"phase one ended with infeasibility {infeas:.3g}")
        for i in range(m):
            if tab.basis[i] >= n_real:
                row = tab.M[i, :n_real]
                if np.abs(row).max(initial=0.0) > 1e-9:
                    tab.pivot(i, int(np.argmax(np.abs(row))))
                else:
                    keep[i] = False
        tab.restrict(keep, n_real)
        tab.refresh()
        A, b = tab.A, tab.b
        cost = cost[:n_real]

    tab.run(cost, n_real, max_iter)
    tab.refresh()
    tab.run(cost, n_real, max_iter)

    # Re-solve the final basis from the original data.
    B = A[:, tab.basis]
    try:
        xb = np.linalg.solve(B, b)
        y = np.linalg.solve(B.T, cost[tab.basis])
    except np.linalg.LinAlgError as exc:
        raise LPError(f"final basis is singular: {exc}") from exc
    u = np.zeros(A.shape[1])
    u[tab.basis] = xb
    scale = max(1.0, float(np.abs(b).max()))
    residual = float(np.abs(A @ u - b).max()) if b.size else 0.0
    primal_ok = bool(xb.min(initial=0.0) >= -tol * scale) and residual <= tol * scale
    reduced = cost - A.T @ y
    dual_ok = bool(reduced.min(initial=0.0) >= -tol * max(1.0, float(np.abs(cost).max())))
    gap = abs(float(cost @ u) - float(b @ y))
    certified = primal_ok and dual_ok and gap <= tol * max(1.0, abs(float(cost @ u)))

    # Row multipliers in the caller's sign convention (redundant rows get 0).
    y_full = np.zeros(m)
    y_full[keep] = y
    y_full[flip] *= -1.0
    duals = (-1.0 if lp.maximize else 1.0) * y_full[: lp.A.shape[0]]

    u = np.maximum(u, 0.0)
    x = T @ u[: T.shape[1]] + offset
    obj = float(lp.c @ x)
    return LPResult(
        x=x,
        objective=obj,
        iterations=tab.iterations,
        basis=tuple(int(i) for i in tab.basis),
        certified=certified,
        residual=residual,
        duality_gap=gap,
        info={"primal_feasible": primal_ok, "dual_feasible": dual_ok},
        duals=duals,
    )


def maximize_free(c, G, h, max_iter: int = 50_000, tol: float = 1e-9) -> LPResult:
    """max c.x subject to G x <= h with x free, solved through its dual.

    The dual (min h.y, G^T y = c, y >= 0) has one row per variable, so the
    tableau stays small when G is tall; x is read off the dual's row
    multipliers and re-checked against the primal rows.
    """
    c = np.asarray(c, dtype=float).ravel()
    G = np.asarray(G, dtype=float).reshape(-1, c.size)
    h = np.asarray(h, dtype=float).ravel()
    dual = DenseLP(h, G.T, [EQ] * c.size, c, maximize=False)
    res = lp_solve(dual, max_iter=max_iter, tol=tol)
    x = res.duals
    primal_resid = float(np.max(G @ x - h, initial=0.0))
    scale = max(1.0, float(np.abs(h).max(initial=0.0)))
    ok = res.certified and primal_resid <= tol * scale
    return LPResult(
        x=x,
        objective=float(c @ x),
        iterations=res.iterations,
        basis=res.basis,
        certified=ok,
        residual=primal_resid,
        duality_gap=abs(float(c @ x) - res.objective),
        info={**res.info, "dual_objective": res.objective},
        duals=res.x,
    )
