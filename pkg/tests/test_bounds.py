import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeinf.bounds import (
    CHECKS,
    check_first_level,
    check_general,
    check_homogeneous,
    check_interpolated,
    check_noise_contraction,
    check_symmetric,
    check_transitive,
    corpus_function,
    estimate_C,
    gopalan_servedio_report,
    random_bounded,
    run_checks,
    sweep_corpus,
)
from cubeinf.constructs import character, mask_of, named_example
from cubeinf.cube import classify, from_callable, from_truth_table
from cubeinf.errors import BadExponent, BadParam, NotBounded
from cubeinf.report import BoundReport, within
from cubeinf.symmetric import from_univariate
from cubeinf.orthopoly import chebyshev


def test_within_rule():
    assert within(1.0, 1.0)
    assert within(1.0 + 5e-10, 1.0)
    assert not within(1.0 + 1e-8, 1.0)


def test_report_dict():
    r = BoundReport.make("x", 1.0, 2.0, d=2)
    doc = r.to_dict()
    assert doc["pass"] and doc["status"] == "pass" and doc["slack"] == 1.0
    assert BoundReport.skipped("y", "why").status == "skipped"


@pytest.mark.parametrize("n, d", [(1, 0), (4, 2), (6, 3), (10, 5)])
def test_random_bounded_contract(n, d):
    f = random_bounded(n, d, 7)
    flags = classify(f)
    assert flags.degree <= d
    assert f.sup_norm() == 1.0


def test_random_bounded_is_reproducible():
    a = random_bounded(6, 3, 42).values
    b = random_bounded(6, 3, 42).values
    assert a.tobytes() == b.tobytes()
    assert random_bounded(6, 3, 43).values.tobytes() != a.tobytes()


def test_random_bounded_degree_zero_is_sign():
    assert set(np.abs(random_bounded(3, 0, 1).values)) == {1.0}


def test_random_bounded_range():
    with pytest.raises(BadParam):
        random_bounded(13, 2, 0)


@pytest.mark.parametrize("f, inf, maxs", [(character(mask_of(1, 2), 3), 2.0, 2.0), (named_example("quad_s"), 2.0, 2.0)])
def test_check_general_examples(f, inf, maxs):
    a, b = check_general(f)
    assert a.measured == pytest.approx(inf) and a.bound == pytest.approx(maxs)
    assert b.bound == 4.0
    assert a.status == b.status == "pass"


def test_check_general_needs_bounded():
    with pytest.raises(NotBounded):
        check_general(from_truth_table(1, [2.0, 0.0]))


def test_interpolated_examples():
    r = check_interpolated(character(mask_of(1, 2, 3), 3), 2.0)
    assert r.measured == pytest.approx(3.0) and r.bound == pytest.approx(3.0) and r.status == "pass"
    r = check_interpolated(named_example("f4"), 1.5)
    assert r.measured == pytest.approx(2.0) and r.bound == pytest.approx(2**1.5)
    with pytest.raises(BadExponent):
        check_interpolated(named_example("f4"), 2.5)


def test_transitive_examples():
    r = check_transitive(named_example("majority3"), 2.0)[0]
    assert r.measured == pytest.approx(1.5)
    assert r.bound == pytest.approx(3**4 * math.exp(6) / 3)
    assert check_transitive(character(7, 3), 1.0)[0].status == "pass"
    assert check_transitive(from_univariate(chebyshev(3), 12).to_cube(), 1.5)[0].status == "pass"
    skipped = check_transitive(named_example("f4") * 0.5 + character(1, 4) * 0.5, 1.0)
    assert skipped[0].status == "skipped"


@pytest.mark.parametrize("alpha", [1.0, 0.5, 0.2])
def test_noise_dictator_is_tight(alpha):
    r = check_noise_contraction(character(1, 3), alpha)
    assert r.measured == pytest.approx(1 / alpha)
    assert r.bound == pytest.approx(1 / alpha)
    assert r.status == "pass"


def test_noise_alpha_range():
    with pytest.raises(BadParam):
        check_noise_contraction(character(1, 3), 0.0)


def test_first_level():
    r = check_first_level(named_example("majority3"))
    assert r.measured == pytest.approx(1.5) and r.bound == 3.0


def test_homogeneous_boolean_and_chain():
    reports = {r.name: r for r in check_homogeneous(named_example("f4"))}
    assert reports["homogeneous_boolean_exact"].measured == pytest.approx(0.0, abs=1e-12)
    assert reports["homogeneous_2k"].bound == pytest.approx(2 * (1 + math.sqrt(2)))
    assert all(r.status == "pass" for r in reports.values())
    assert reports["homogeneous_d32"].context["h_prime_at_0"] == pytest.approx(2.0)


def test_homogeneous_counterexample_line_derivative():
    f = named_example("homogeneous_counterexample", block=4)
    reports = {r.name: r for r in check_homogeneous(f)}
    ctx = reports["homogeneous_2k"].context
    assert abs(ctx["h_prime_at_0"]) == pytest.approx(ctx["delta_at_one"])
    assert ctx["delta_at_one"] == pytest.approx(3.0)


def test_homogeneous_skips_mixed_degree():
    assert check_homogeneous(named_example("majority3"))[0].status == "skipped"


def test_symmetric_dispatch():
    assert check_symmetric(named_example("majority3")).status == "pass"
    assert check_symmetric(named_example("f4")).status == "skipped"


@pytest.mark.parametrize(
    "f, measured, status",
    [
        (named_example("majority3"), 1.5, "consistent"),
        (character(1, 2), 1.0, "consistent"),
        (character(3, 2), 0.0, "consistent"),
        (from_callable(2, lambda a, b: (a + b) / 1.0), 2.0, "counterexample-candidate"),
    ],
)
def test_gopalan_servedio(f, measured, status):
    r = gopalan_servedio_report(f)
    assert r.measured == pytest.approx(measured)
    assert r.status == status


def test_run_checks_all_on_quad_t():
    reports = run_checks(named_example("quad_t"))
    names = {r.name for r in reports}
    assert {"inf_le_max_sensitivity", "interpolated", "noise_contraction", "homogeneous_2k"} <= names
    assert all(r.status in ("pass", "skipped", "consistent") for r in reports)


def test_run_checks_rejects_unknown():
    with pytest.raises(BadParam):
        run_checks(named_example("f4"), ("sideways",))
    assert len(CHECKS) == 8


def test_unbounded_input_is_skipped_not_failed():
    reports = run_checks(from_truth_table(1, [3.0, 1.0]))
    assert {r.status for r in reports if r.name != "noise_contraction" and r.name != "gopalan_servedio"} == {"skipped"}


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.integers(0, 2**32 - 1))
def test_proved_bounds_hold_on_random_functions(nd, seed):
    n, d = nd
    f = random_bounded(n, d, seed)
    reports = check_general(f) + [check_interpolated(f, p) for p in (1.0, 1.25, 1.5, 2.0)]
    reports += [check_first_level(f), check_noise_contraction(f, 0.5)]
    assert all(r.status == "pass" for r in reports), [r.to_dict() for r in reports if r.status != "pass"]


def test_estimate_C_cases():
    assert estimate_C(0, 0.5, 4) == 1.0
    assert estimate_C(1, 0.5, 4, trials=50) == pytest.approx(2.0, abs=1e-9)
    v = estimate_C(2, 0.9, 8, trials=10**4)
    assert 1.0 <= v <= 0.9**-4


def test_estimate_C_deterministic():
    assert estimate_C(2, 0.8, 6, trials=200, seed=3) == estimate_C(2, 0.8, 6, trials=200, seed=3)


def test_sweep_corpus_small(tmp_path):
    res = sweep_corpus(count=30, seed=1, dump_dir=str(tmp_path))
    assert res.rows and not res.candidates
    assert not list(tmp_path.iterdir())
    header = res.to_csv().splitlines()[0]
    assert "status" in header


def test_corpus_function_is_stable():
    assert corpus_function(17).values.tobytes() == corpus_function(17).values.tobytes()
