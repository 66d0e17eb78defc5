import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cubeinf.bounds import random_bounded
from cubeinf.constructs import character, mask_of, named_example
from cubeinf.cube import from_callable, from_truth_table
from cubeinf.errors import BadM, BadParam
from cubeinf.influence import discrete_derivative, first_level_sum
from cubeinf.operators import (
    BiPoly,
    collapse_partition,
    diag_line,
    noise,
    sign_partition_at_one,
    symmetrize,
    symmetrize_m,
)
from cubeinf.symmetric import to_univariate


def test_noise_endpoints(rng):
    f = from_truth_table(4, rng.normal(size=16))
    np.testing.assert_allclose(noise(f, 1.0).values, f.values, atol=1e-12)
    np.testing.assert_allclose(noise(f, 0.0).values, f.mean(), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.integers(0, 2**31))
def test_noise_semigroup(a, b, seed):
    f = random_bounded(5, 3, seed)
    np.testing.assert_allclose(noise(noise(f, a), b).values, noise(f, a * b).values, atol=1e-12)


def test_noise_is_averaging():
    """T_rho f(x) = E f(y), y_i = x_i w.p. (1+rho)/2, computed by summing over all y."""
    f = named_example("quad_t")
    rho = 0.3
    pts = oracles.points(4)
    ref = []
    for x in pts:
        acc = 0.0
        for j, y in enumerate(pts):
            agree = sum(a == b for a, b in zip(x, y))
            acc += f.values[j] * ((1 + rho) / 2) ** agree * ((1 - rho) / 2) ** (4 - agree)
        ref.append(acc)
    np.testing.assert_allclose(noise(f, rho).values, ref, atol=1e-12)


def test_symmetrize_parity_pair():
    f = character(mask_of(1, 2), 3)
    np.testing.assert_allclose(symmetrize(f).levels, oracles.level_means(f.values, 3))


def test_symmetrize_fixed_point():
    f = named_example("majority3")
    np.testing.assert_allclose(symmetrize(f).to_cube().values, f.values)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_symmetrize_m_dictator(m):
    lp = symmetrize_m(from_callable(1, lambda x: x), m)
    np.testing.assert_allclose(lp.levels, 1 - 2 * np.arange(m + 1) / m, atol=1e-14)


@pytest.mark.parametrize("n, m", [(2, 4), (3, 5), (3, 6)])
def test_symmetrize_m_matches_permutation_average(n, m, rng):
    vals = rng.normal(size=1 << n)
    ref = oracles.symmetrize_by_permutation(vals, n, m)
    np.testing.assert_allclose(symmetrize_m(from_truth_table(n, vals), m).to_cube().values, ref, atol=1e-12)


def test_symmetrize_m_identity_and_constants(rng):
    f = from_truth_table(5, rng.normal(size=32))
    np.testing.assert_array_equal(symmetrize_m(f, 5).levels, symmetrize(f).levels)
    np.testing.assert_allclose(symmetrize_m(from_truth_table(2, [0.4] * 4), 2000).levels, 0.4)


def test_symmetrize_m_large_m_uses_log_weights(rng):
    f = random_bounded(4, 2, 3)
    small = symmetrize_m(f, 1000).first_level_sum()
    large = symmetrize_m(f, 5000).first_level_sum()
    assert small == pytest.approx(first_level_sum(f), abs=1e-10)
    assert large == pytest.approx(first_level_sum(f), abs=1e-10)


def test_symmetrize_m_degree_does_not_grow():
    f = random_bounded(4, 2, 11)
    assert to_univariate(symmetrize_m(f, 40)).degree <= 2


def test_symmetrize_m_bounds():
    f = character(1, 3)
    with pytest.raises(BadM):
        symmetrize_m(f, 2)


@pytest.mark.parametrize(
    "f, S, expected",
    [
        (character(mask_of(1, 2), 2), mask_of(1), {(1, 1): 1.0}),
        (named_example("f4"), mask_of(1, 2), {(1, 1): 1.0}),
        (from_truth_table(2, [0.5] * 4), 0b01, {(0, 0): 0.5}),
    ],
)
def test_collapse_partition(f, S, expected):
    g = collapse_partition(f, S)
    for (j, k), c in expected.items():
        assert g.coeffs[j, k] == pytest.approx(c)
    assert np.abs(g.coeffs).sum() == pytest.approx(sum(abs(c) for c in expected.values()))


def test_collapse_evaluates_substitution(rng):
    f = from_truth_table(4, rng.normal(size=16))
    g = collapse_partition(f, mask_of(1, 3))
    for x in (1, -1):
        for y in (1, -1):
            j = sum(1 << k for k in range(4) if ((x if k in (0, 2) else y) == -1))
            assert g(x, y) == pytest.approx(f.values[j])


@pytest.mark.parametrize(
    "mode, expected", [("plus_minus", [1.0, 0.0, -1.0]), ("x_line", [0.0, 1.0]), ("y_line", [0.0, 1.0])]
)
def test_diag_line_xy(mode, expected):
    g = BiPoly(np.array([[0.0, 0.0], [0.0, 1.0]]))
    np.testing.assert_allclose(diag_line(g, mode).trim().coeffs, expected)


def test_diag_line_bad_mode():
    with pytest.raises(BadParam):
        diag_line(BiPoly(np.ones((1, 1))), "diagonal")


@pytest.mark.parametrize("name", ["f4", "quad_s", "quad_t"])
def test_collapse_derivative_identity(name):
    f = named_example(name)
    S = sign_partition_at_one(f)
    h = diag_line(collapse_partition(f, S))
    fi = np.array([discrete_derivative(f, i).values[0] for i in range(1, f.n + 1)])
    inside = np.array([(S >> i) & 1 for i in range(f.n)], dtype=bool)
    assert h.deriv()(0.0) == pytest.approx(fi[inside].sum() - fi[~inside].sum(), abs=1e-9)
    assert abs(h.deriv()(0.0)) == pytest.approx(np.abs(fi).sum(), abs=1e-9)


def test_f4_line_derivative_is_two():
    f = named_example("f4")
    h = diag_line(collapse_partition(f, sign_partition_at_one(f)))
    assert abs(h.deriv()(0.0)) == pytest.approx(2.0)
