import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cubeinf.constructs import character, chebyshev_symmetric, mask_of, named_example
from cubeinf.cube import from_callable, from_truth_table
from cubeinf.errors import DegreeTooHigh, RegimeError, SizeError
from cubeinf.influence import first_level_sum, total_influence
from cubeinf.orthopoly import UniPoly, chebyshev
from cubeinf.symmetric import (
    LevelProfile,
    binomial_weights,
    from_univariate,
    level_profile,
    symmetric_bound_report,
    symmetric_delta_at_one,
    symmetric_total_influence,
    to_univariate,
)


def test_binomial_weights_sum_to_one():
    for n in (1, 10, 500, 10**5):
        w = binomial_weights(n)
        assert w.sum() == pytest.approx(1.0, rel=1e-10)
        assert w.size == n + 1


@pytest.mark.parametrize(
    "p, n, levels",
    [
        (UniPoly([1.0]), 3, [1, 1, 1, 1]),
        (UniPoly([0.0, 1.0]), 2, [1, 0, -1]),
        (chebyshev(3), 4, [1, -1, 0, 1, -1]),
    ],
)
def test_from_univariate(p, n, levels):
    np.testing.assert_allclose(from_univariate(p, n).levels, levels, atol=1e-14)


def test_from_univariate_degree_check():
    with pytest.raises(DegreeTooHigh):
        from_univariate(chebyshev(5), 4)


def test_level_profile_shape_check():
    with pytest.raises(SizeError):
        LevelProfile(3, np.zeros(3))


@pytest.mark.parametrize("n", [10, 50, 200])
@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_univariate_round_trip(n, d):
    p = chebyshev(d) + UniPoly([0.1])
    q = to_univariate(from_univariate(p, n))
    assert q.degree == d
    np.testing.assert_allclose(q.coeffs, p.coeffs, atol=1e-9)


def test_to_univariate_examples():
    assert to_univariate(LevelProfile(4, np.full(5, 0.7))).degree == 0
    lin = level_profile(from_callable(6, lambda *xs: sum(xs) / 6))
    np.testing.assert_allclose(to_univariate(lin).coeffs, [0.0, 1.0], atol=1e-12)


def test_level_profile_matches_oracle(rng):
    vals = rng.normal(size=32)
    np.testing.assert_allclose(level_profile(from_truth_table(5, vals)).levels, oracles.level_means(vals, 5))


@pytest.mark.parametrize(
    "lp, expected",
    [
        (level_profile(character(mask_of(1, 2, 3), 3)), 3.0),
        (level_profile(named_example("majority3")), 1.5),
        (from_univariate(UniPoly([0.0, 1.0]), 100), 1.0),
        (LevelProfile(5, np.full(6, 0.3)), 0.0),
    ],
)
def test_symmetric_total_influence_examples(lp, expected):
    assert symmetric_total_influence(lp) == pytest.approx(expected, rel=1e-12, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10).flatmap(lambda n: st.lists(st.floats(-1, 1), min_size=n + 1, max_size=n + 1)))
def test_level_space_influence_equals_cube(levels):
    lp = LevelProfile(len(levels) - 1, np.array(levels))
    f = lp.to_cube()
    assert symmetric_total_influence(lp) == pytest.approx(total_influence(f), rel=1e-9, abs=1e-12)
    assert lp.first_level_sum() == pytest.approx(first_level_sum(f), rel=1e-9, abs=1e-12)


def test_chebyshev_influence_below_degree():
    inf = symmetric_total_influence(chebyshev_symmetric(3, 10**4))
    assert 2.99 < inf < 3.0


@pytest.mark.parametrize(
    "p, n, expected",
    [(chebyshev(2), 10, 3.6), (UniPoly([0.0, 1.0]), 7, 1.0), (UniPoly([0.0, 1.0]), 1000, 1.0)],
)
def test_delta_at_one(p, n, expected):
    assert symmetric_delta_at_one(p, n) == pytest.approx(expected)


def test_delta_at_one_matches_cube():
    p = chebyshev(3)
    f = from_univariate(p, 12).to_cube()
    ref = oracles.sensitivity(f.values, 12)[0]
    assert symmetric_delta_at_one(p, 12) == pytest.approx(ref)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_delta_at_one_approaches_markov(d):
    assert symmetric_delta_at_one(chebyshev(d), 10**6) == pytest.approx(d * d, abs=1e-3 * d * d)


def test_bound_report_cases():
    r = symmetric_bound_report(chebyshev_symmetric(3, 10**4))
    assert r.status == "pass"
    assert r.measured < 3.0
    assert r.context["norm_lemma_applicable"]
    r = symmetric_bound_report(LevelProfile(6, np.full(7, 0.25)))
    assert r.status == "pass" and r.measured == 0.0
    r = symmetric_bound_report(from_univariate(UniPoly([0.0, 1.0]), 100))
    assert r.measured == pytest.approx(1.0) and r.status == "pass"


def test_bound_report_outside_norm_regime():
    lp = from_univariate(chebyshev(3), 8)
    assert symmetric_bound_report(lp).context["norm_lemma_applicable"] is False
    with pytest.raises(RegimeError):
        symmetric_bound_report(lp, strict=True)
