"""Inequality checkers, the random bounded-function generator, and the C_{d,alpha} estimator.

Each checker returns :class:`BoundReport` objects.  Proved inequalities carry
status "pass" or "fail"; a fail on a proved inequality means a bug somewhere,
so corpus sweeps collect those as counterexample candidates.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constructs import _f4, _quad_s, _quad_t
from .cube import CubeFunction, classify, from_callable, fwht, popcounts, to_json_dict
from .errors import BadExponent, BadParam, CertificationFailed, NotBounded
from .influence import (
    first_level_sum,
    influences_p,
    sensitivity_field,
    total_influence_p,
    variance_p,
)
from .operators import collapse_partition, diag_line, noise, sign_partition_at_one
from .report import BoundReport, within
from .symmetric import level_profile, symmetric_bound_report

MAX_RANDOM_N = 12
BOUND_TOL = 1e-9
EQUAL_INF_TOL = 1e-6

# Exact values; higher degrees use the certified LP upper bound.
KNOWN_K = {1: 1.0, 2: 1.0 + math.sqrt(2.0)}


def _require_bounded(f: CubeFunction) -> None:
    sup = f.sup_norm()
    if sup > 1.0 + BOUND_TOL:
        raise NotBounded(f"sup norm {sup:.12g} exceeds 1")


def _degree(f: CubeFunction) -> int:
    return f.fourier.degree()


# -- generator ------------------------------------------------------------------

def random_bounded(n: int, d: int, seed) -> CubeFunction:
    """Degree <= d function with standard normal coefficients, scaled to sup norm 1."""
    if not 0 <= d <= n <= MAX_RANDOM_N:
        raise BadParam(f"need 0 <= d <= n <= {MAX_RANDOM_N}, got d = {d}, n = {n}")
    rng = np.random.default_rng(seed)
    low = popcounts(n) <= d
    coeffs = np.zeros(1 << n)
    coeffs[low] = rng.standard_normal(int(low.sum()))
    values = fwht(coeffs)
    sup = np.abs(values).max()
    if sup == 0.0:
        values = np.ones(1 << n)
    else:
        values = values / sup
    # Pin the extreme point to exactly +-1 after rounding.
    j = int(np.argmax(np.abs(values)))
    values[j] = math.copysign(1.0, values[j])
    return CubeFunction(n, values)


# -- proved inequalities -------------------------------------------------------

def check_general(f: CubeFunction) -> list[BoundReport]:
    """Inf[f] <= ||Delta f||_inf <= d^2, as two linked reports."""
    _require_bounded(f)
    d = _degree(f)
    field_ = sensitivity_field(f)
    inf, maxs = field_.mean, field_.max
    return [
        BoundReport.make("inf_le_max_sensitivity", inf, maxs, d=d, n=f.n),
        BoundReport.make("max_sensitivity_le_d2", maxs, float(d * d), d=d, n=f.n),
    ]


def check_interpolated(f: CubeFunction, p: float) -> BoundReport:
    """Inf^(p)[f] <= d^(3 - p) for 1 <= p <= 2."""
    if not 1.0 <= p <= 2.0:
        raise BadExponent(f"p must lie in [1, 2], got {p}")
    _require_bounded(f)
    d = _degree(f)
    return BoundReport.make("interpolated", total_influence_p(f, p), float(d) ** (3.0 - p), d=d, n=f.n, p=p)


def check_transitive(f: CubeFunction, p: float) -> list[BoundReport]:
    """Inf^(p)[f] <= d^(2p) e^(pd) / n^(p - 1), plus Var[f] <= Inf^(2)[f].

    Transitive symmetry forces equal per-variable influences; inputs that
    fail that test are reported as skipped.
    """
    if not 1.0 <= p <= 2.0:
        raise BadExponent(f"p must lie in [1, 2], got {p}")
    _require_bounded(f)
    d, n = _degree(f), f.n
    infs = influences_p(f, 1.0)
    if n and np.ptp(infs) > EQUAL_INF_TOL:
        reason = "per-variable influences differ, so f is not transitive-symmetric"
        return [BoundReport.skipped("transitive", reason, not_equivariant=True, d=d, n=n, p=p)]
    if d == 0:
        bound = 0.0
    else:
        bound = d ** (2 * p) * math.exp(p * d) / n ** (p - 1)
    return [
        BoundReport.make("transitive", total_influence_p(f, p), bound, d=d, n=n, p=p),
        BoundReport.make("variance_le_inf2", variance_p(f, 2.0), total_influence_p(f, 2.0), d=d, n=n),
    ]


def check_noise_contraction(f: CubeFunction, alpha: float) -> BoundReport:
    """||T_alpha f||_1 >= alpha^min(d^2, n) ||f||_1, reported as the ratio
    ||f||_1 / ||T_alpha f||_1 against alpha^-min(d^2, n)."""
    if not 0.0 < alpha <= 1.0:
        raise BadParam(f"alpha must lie in (0, 1], got {alpha}")
    d, n = _degree(f), f.n
    norm = f.norm(1.0)
    smoothed = noise(f, alpha).norm(1.0)
    ratio = 1.0 if norm == 0.0 else norm / smoothed
    k = min(d * d, n)
    return BoundReport.make(
        "noise_contraction", ratio, alpha ** (-k), d=d, n=n, alpha=alpha, exponent=k,
        l1=norm, l1_smoothed=smoothed,
    )


def check_first_level(f: CubeFunction) -> BoundReport:
    """E[(x_1 + ... + x_n) f(x)] <= d."""
    _require_bounded(f)
    d = _degree(f)
    return BoundReport.make("first_level", first_level_sum(f), float(d), d=d, n=f.n)


def _k_upper(d: int) -> float | None:
    if d in KNOWN_K:
        return KNOWN_K[d]
    from .extremal import MAX_K_DEGREE, estimate_K

    if d > MAX_K_DEGREE:
        return None
    try:
        return estimate_K(d).upper
    except CertificationFailed:
        return None


def check_homogeneous(f: CubeFunction) -> list[BoundReport]:
    """Sensitivity bounds that hold for homogeneous f.

    Boolean input: Delta(f) = d at every point.  Degree d >= 2, with
    alpha = 1 - 1/d: Delta(T_alpha f) <= d / sqrt(1 - alpha^2) pointwise, hence
    ||Delta f||_inf <= alpha^-d d / sqrt(1 - alpha^2).  Any degree up to 8:
    ||Delta f||_inf <= 2 K_d.
    """
    _require_bounded(f)
    flags = classify(f)
    d = flags.degree
    if not flags.homogeneous:
        return [BoundReport.skipped("homogeneous", "f is not homogeneous", d=d, n=f.n)]
    delta = sensitivity_field(f).delta_values
    maxs = float(delta.max())
    # The collapse of the proof: h(e) = g(1 + e, 1 - e) with S the sign set at 1.
    S = sign_partition_at_one(f)
    h = diag_line(collapse_partition(f, S), "plus_minus")
    ctx = {"d": d, "n": f.n, "h_prime_at_0": float(h.deriv()(0.0)), "delta_at_one": float(delta[0])}
    out = []
    if flags.boolean_valued:
        out.append(BoundReport.make("homogeneous_boolean_exact", float(np.abs(delta - d).max()), 0.0, **ctx))
    if d >= 2:
        alpha = 1.0 - 1.0 / d
        cap = d / math.sqrt(1.0 - alpha * alpha)
        smoothed = float(sensitivity_field(noise(f, alpha)).delta_values.max())
        out.append(BoundReport.make("homogeneous_noise_pointwise", smoothed, cap, alpha=alpha, **ctx))
        out.append(BoundReport.make("homogeneous_d32", maxs, alpha ** (-d) * cap, alpha=alpha, **ctx))
    k = _k_upper(d) if d >= 1 else None
    if k is not None:
        out.append(BoundReport.make("homogeneous_2k", maxs, 2.0 * k, k_upper=k, **ctx))
    if not out:
        out.append(BoundReport.make("homogeneous_2k", maxs, 0.0, **ctx))
    return out


def check_symmetric(f: CubeFunction) -> BoundReport:
    flags = classify(f)
    if not flags.symmetric:
        return BoundReport.skipped("symmetric", "f is not symmetric", n=f.n)
    return symmetric_bound_report(level_profile(f))


# -- conjecture, informational -----------------------------------------------

def gopalan_servedio_report(f: CubeFunction) -> BoundReport:
    """sum_i f^({i}) against sqrt(deg f); labelled consistent or counterexample-candidate."""
    flags = classify(f)
    measured = first_level_sum(f)
    bound = math.sqrt(flags.degree)
    ok = within(measured, bound)
    return BoundReport(
        "gopalan_servedio",
        measured,
        bound,
        ok,
        {"d": flags.degree, "n": f.n, "boolean": flags.boolean_valued},
        status="consistent" if ok else "counterexample-candidate",
    )


CHECKS = ("general", "interpolated", "transitive", "noise", "first_level", "homogeneous", "symmetric",
          "gopalan_servedio")


def run_checks(f: CubeFunction, which=("all",), p: float = 1.5, alpha: float | None = None) -> list[BoundReport]:
    """Run the named checks; "all" means every one.  alpha defaults to 1 - 1/d (0.5 for d <= 1)."""
    names = CHECKS if "all" in which else tuple(which)
    unknown = [w for w in names if w not in CHECKS]
    if unknown:
        raise BadParam(f"unknown checks {unknown}; choose from {', '.join(CHECKS)} or all")
    d = _degree(f)
    if alpha is None:
        alpha = 1.0 - 1.0 / d if d >= 2 else 0.5
    bounded = f.sup_norm() <= 1.0 + BOUND_TOL
    out: list[BoundReport] = []
    for name in names:
        if not bounded and name not in ("noise", "gopalan_servedio"):
            out.append(BoundReport.skipped(name, "sup norm exceeds 1", n=f.n))
        elif name == "general":
            out.extend(check_general(f))
        elif name == "interpolated":
            out.append(check_interpolated(f, p))
        elif name == "transitive":
            out.extend(check_transitive(f, p))
        elif name == "noise":
            out.append(check_noise_contraction(f, alpha))
        elif name == "first_level":
            out.append(check_first_level(f))
        elif name == "homogeneous":
            out.extend(check_homogeneous(f))
        elif name == "symmetric":
            out.append(check_symmetric(f))
        elif name == "gopalan_servedio":
            out.append(gopalan_servedio_report(f))
    return out


# -- C_{d, alpha} ---------------------------------------------------------------

def _candidate_seeds(d: int, n: int) -> list[np.ndarray]:
    """Fourier vectors of characters with |S| <= d and the named degree-2 examples."""
    out = []
    weights = popcounts(n)
    for mask in np.flatnonzero((weights >= 1) & (weights <= d)):
        e = np.zeros(1 << n)
        e[mask] = 1.0
        out.append(e)
    if d >= 2 and n >= 4:
        for func in (_f4, _quad_s, _quad_t):
            g = from_callable(n, lambda x, y, z, w, *rest, func=func: func(x, y, z, w))
            out.append(g.fourier.coeffs.copy())
    return out


def _ratios(coeffs: np.ndarray, scale: np.ndarray) -> np.ndarray:
    num = np.abs(fwht(coeffs)).mean(axis=-1)
    den = np.abs(fwht(coeffs * scale)).mean(axis=-1)
    return np.divide(num, den, out=np.ones_like(num), where=den > 0)


def estimate_C(d: int, alpha: float, n: int, trials: int = 1000, seed: int = 0, batch: int = 512) -> float:
    """Empirical lower bound on C_{d,alpha} = sup ||f||_1 / ||T_alpha f||_1 over deg f <= d."""
    if not 0 <= d <= n <= MAX_RANDOM_N:
        raise BadParam(f"need 0 <= d <= n <= {MAX_RANDOM_N}, got d = {d}, n = {n}")
    if not 0.0 < alpha <= 1.0:
        raise BadParam(f"alpha must lie in (0, 1], got {alpha}")
    if d == 0:
        return 1.0
    weights = popcounts(n)
    scale = np.power(float(alpha), weights)
    seeds = _candidate_seeds(d, n)
    best = float(_ratios(np.array(seeds), scale).max()) if seeds else 1.0
    rng = np.random.default_rng(seed)
    low = weights <= d
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        coeffs = np.zeros((m, 1 << n))
        coeffs[:, low] = rng.standard_normal((m, int(low.sum())))
        best = max(best, float(_ratios(coeffs, scale).max()))
        done += m
    return max(best, 1.0)


# -- corpus sweep -------------------------------------------------------------------

@dataclass
class SweepResult:
    rows: list[dict] = field(default_factory=list)
    candidates: list[dict] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["function", "n", "d", "name", "measured", "bound", "slack", "status"]
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for r in self.rows:
            writer.writerow({k: r[k] for k in cols})
        return buf.getvalue()


def corpus_function(index: int, seed: int = 0, n_max: int = 10, d_max: int = 5) -> CubeFunction:
    """The index-th member of the seeded random corpus (n <= n_max, d <= d_max)."""
    rng = np.random.default_rng([seed, index])
    n = int(rng.integers(1, n_max + 1))
    d = int(rng.integers(0, min(d_max, n) + 1))
    return random_bounded(n, d, [seed, index, 1])


def _sweep_one(index: int, seed: int, n_max: int, d_max: int, ps, alphas_fn) -> list[tuple[CubeFunction, BoundReport]]:
    f = corpus_function(index, seed, n_max, d_max)
    d = _degree(f)
    reports = list(check_general(f))
    reports += [check_interpolated(f, p) for p in ps]
    reports += [check_noise_contraction(f, a) for a in alphas_fn(d)]
    return [(f, r) for r in reports]


def _default_alphas(d: int) -> list[float]:
    # 1 - 1/d is 0 at d = 1, outside (0, 1]; only 0.5 applies there.
    return [0.5] + ([1.0 - 1.0 / d] if d >= 2 else [])


def sweep_corpus(
    count: int = 500,
    seed: int = 0,
    n_max: int = 10,
    d_max: int = 5,
    ps=(1.0, 1.25, 1.5, 2.0),
    alphas_fn=_default_alphas,
    dump_dir: str | Path | None = None,
    workers: int = 4,
) -> SweepResult:
    """Run the proved-inequality checkers over the seeded corpus.

    Trials are independent and run on a thread pool; results keep corpus
    order, so the output is deterministic.  Any fail is written to
    ``dump_dir`` (function JSON plus report) when given.
    """
    result = SweepResult()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        batches = pool.map(lambda i: _sweep_one(i, seed, n_max, d_max, ps, alphas_fn), range(count))
        for index, batch in enumerate(batches):
            for f, r in batch:
                row = {"function": index, "n": f.n, "d": r.context.get("d"), "name": r.name,
                       "measured": r.measured, "bound": r.bound, "slack": r.slack, "status": r.status}
                if "p" in r.context:
                    row["name"] = f"{r.name}[p={r.context['p']:g}]"
                if "alpha" in r.context:
                    row["name"] = f"{r.name}[alpha={r.context['alpha']:g}]"
                result.rows.append(row)
                if not r.passed:
                    cand = {"function": to_json_dict(f), "report": r.to_dict(), "index": index}
                    result.candidates.append(cand)
    if dump_dir is not None and result.candidates:
        path = Path(dump_dir)
        path.mkdir(parents=True, exist_ok=True)
        for k, cand in enumerate(result.candidates):
            (path / f"candidate_{k:04d}.json").write_text(json.dumps(cand, indent=2))
    return result


__all__ = [
    "CHECKS",
    "SweepResult",
    "check_first_level",
    "check_general",
    "check_homogeneous",
    "check_interpolated",
    "check_noise_contraction",
    "check_symmetric",
    "check_transitive",
    "corpus_function",
    "estimate_C",
    "gopalan_servedio_report",
    "random_bounded",
    "run_checks",
    "sweep_corpus",
]
