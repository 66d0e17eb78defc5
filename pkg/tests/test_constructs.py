import math
import warnings

import numpy as np
import pytest

import oracles
from cubeinf.constructs import (
    best_extremal,
    character,
    chebyshev_symmetric,
    counterexample_point,
    klurman_monotone_extremal,
    majority,
    mask_of,
    named_example,
)
from cubeinf.cube import classify
from cubeinf.errors import BadDegreeWarning, BadParam, SizeError, UnknownName
from cubeinf.influence import sensitivity_at, sensitivity_field, total_influence
from cubeinf.orthopoly import klurman_bound, min_on, sup_norm
from cubeinf.symmetric import symmetric_total_influence


def test_character_tables():
    np.testing.assert_array_equal(character(0, 3).values, np.ones(8))
    np.testing.assert_array_equal(character(mask_of(1, 2), 2).values, [1, -1, -1, 1])


def test_character_matches_oracle():
    S = mask_of(2, 4, 5)
    ref = [oracles.chi(S, x) for x in oracles.points(5)]
    np.testing.assert_array_equal(character(S, 5).values, ref)


def test_character_mask_range():
    with pytest.raises(BadParam):
        character(8, 3)


def test_f4_is_boolean_degree_two():
    f = named_example("f4")
    flags = classify(f)
    assert flags.boolean_valued and flags.homogeneous and flags.degree == 2
    assert total_influence(f) == pytest.approx(2.0)


@pytest.mark.parametrize("name", ["quad_s", "quad_t"])
def test_quadratics_have_constant_sensitivity_two(name):
    f = named_example(name)
    assert f.sup_norm() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(oracles.sensitivity(f.values, 4), 2.0, atol=1e-12)
    flags = classify(f)
    assert flags.homogeneous and flags.degree == 2


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_f4_times_character(d):
    f = named_example("f4_times_character", d=d)
    flags = classify(f)
    assert flags.boolean_valued and flags.homogeneous and flags.degree == d
    np.testing.assert_allclose(sensitivity_field(f).delta_values, d, atol=1e-12)


@pytest.mark.parametrize("block, expected", [(1, 0.0), (2, 2.0), (3, 4 * (1 - 1 / 3)), (5, 4 * (1 - 1 / 5))])
def test_counterexample_table(block, expected):
    f = named_example("homogeneous_counterexample", block=block)
    assert sensitivity_field(f).at(0) == pytest.approx(expected, abs=1e-12)
    # a block of odd size can never average to zero
    assert f.sup_norm() == pytest.approx(1.0 if block % 2 == 0 else 1.0 - 1.0 / block**2)


@pytest.mark.parametrize("block", [2, 4, 6])
def test_counterexample_pointwise_agrees_with_table(block):
    f = named_example("homogeneous_counterexample", block=block)
    g = counterexample_point(block)
    for j, x in enumerate(oracles.points(2 * block)[:: max(1, (1 << 2 * block) // 64)]):
        idx = oracles.points(2 * block).index(x)
        assert g(np.array(x)) == pytest.approx(f.values[idx])


def test_counterexample_block_fifty():
    g = counterexample_point(50)
    assert sensitivity_at(g, np.ones(100)) == pytest.approx(3.92, abs=1e-10)


@pytest.mark.parametrize(
    "kwargs, exc",
    [
        ({"name": "nope"}, UnknownName),
        ({"name": "f4_times_character", "d": 1}, BadParam),
        ({"name": "f4_times_character", "d": 30}, SizeError),
        ({"name": "homogeneous_counterexample"}, BadParam),
        ({"name": "homogeneous_counterexample", "block": 13}, SizeError),
    ],
)
def test_named_example_errors(kwargs, exc):
    with pytest.raises(exc):
        named_example(**kwargs)


def test_majority_needs_odd():
    with pytest.raises(BadParam):
        majority(4)


@pytest.mark.parametrize("d, n, lo, hi", [(1, 50, 1.0 - 1e-12, 1.0 + 1e-12), (3, 10**4, 2.9, 3.0), (5, 10**5, 4.9, 5.0)])
def test_chebyshev_symmetric_influence(d, n, lo, hi):
    assert lo <= symmetric_total_influence(chebyshev_symmetric(d, n)) < hi or d == 1


def test_chebyshev_symmetric_regime_and_parity():
    with pytest.raises(BadParam):
        chebyshev_symmetric(3, 8)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        chebyshev_symmetric(2, 10)
    assert any(issubclass(w.category, BadDegreeWarning) for w in caught)


@pytest.mark.parametrize("d", range(1, 13))
def test_klurman_extremal_is_monotone_and_normalized(d):
    for kind, p in klurman_monotone_extremal(d).items():
        assert p.degree <= d
        assert sup_norm(p) == pytest.approx(1.0, abs=1e-10)
        assert min_on(p.deriv())[0] >= -1e-10


@pytest.mark.parametrize("d", range(1, 13))
def test_kernel_construction_meets_bound(d):
    _, _, slope = best_extremal(d)
    assert slope == pytest.approx(klurman_bound(d), rel=1e-9)


def test_klurman_degree_one_is_identity():
    p = klurman_monotone_extremal(1)["F"]
    np.testing.assert_allclose(p.trim(1e-14).coeffs, [0.0, 1.0], atol=1e-14)


@pytest.mark.parametrize("d", [2, 3, 6, 9])
def test_literal_branch_is_feasible_but_not_better(d):
    _, p, slope = best_extremal(d, literal=True)
    assert min_on(p.deriv())[0] >= -1e-10
    assert slope <= best_extremal(d)[2] + 1e-12


def test_branches_by_parity():
    assert set(klurman_monotone_extremal(4)) == {"S"}
    assert set(klurman_monotone_extremal(5)) == {"F", "H"}
    assert set(klurman_monotone_extremal(1)) == {"F"}
    with pytest.raises(BadParam):
        klurman_monotone_extremal(0)
