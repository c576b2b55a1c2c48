import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import REFERENCE
from trigspline.fourier import (FourierCoefficients, SampleError, SampleSet,
                                compute_coefficients, eval_trig_polynomial)
from trigspline.grid import GridError, GridSpec, all_nodes


def test_reference_mean_coefficient():
    c = compute_coefficients(SampleSet.from_values(REFERENCE))
    assert c.a0 == pytest.approx(40 / 9, abs=1e-14)
    assert c.n == 4


def test_coefficients_against_direct_sum():
    s = SampleSet.from_values(REFERENCE)
    c = compute_coefficients(s)
    t = all_nodes(s.grid)
    f = np.array(REFERENCE)
    for k in range(1, 5):
        assert c.a[k - 1] == pytest.approx(2 / 9 * math.fsum(f * np.cos(k * t)), abs=1e-14)
        assert c.b[k - 1] == pytest.approx(2 / 9 * math.fsum(f * np.sin(k * t)), abs=1e-14)


def test_constant_data():
    c = compute_coefficients(SampleSet.from_values([5.0] * 9))
    assert c.a0 == pytest.approx(10.0)
    assert max(map(abs, c.a + c.b)) < 1e-14


@pytest.mark.parametrize("indicator", [0, 1])
def test_single_harmonic_is_recovered(indicator):
    g = GridSpec(4, indicator)
    c = compute_coefficients(SampleSet.from_function(lambda t: np.cos(2 * t), g))
    np.testing.assert_allclose(c.a, [0, 1, 0, 0], atol=1e-14)
    np.testing.assert_allclose(c.b, 0, atol=1e-14)
    assert abs(c.a0) < 1e-14


@pytest.mark.parametrize("indicator", [0, 1])
def test_trig_polynomial_interpolates_reference(indicator):
    s = SampleSet.from_values(REFERENCE, indicator)
    c = compute_coefficients(s)
    np.testing.assert_allclose(eval_trig_polynomial(c, s.nodes), REFERENCE, atol=1e-10)


def test_scalar_evaluation_returns_float():
    c = compute_coefficients(SampleSet.from_values(REFERENCE))
    v = eval_trig_polynomial(c, 0.0)
    assert isinstance(v, float)
    assert v == pytest.approx(2.0, abs=1e-12)


def test_sample_validation():
    with pytest.raises(GridError):
        SampleSet.from_values([1, 2, 3, 4])
    with pytest.raises(SampleError):
        SampleSet.from_values([1, float("nan"), 3])
    with pytest.raises(ValueError):
        FourierCoefficients(1.0, (1.0,), (1.0, 2.0))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 15).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.floats(-1e3, 1e3), min_size=2 * n + 1, max_size=2 * n + 1),
    st.lists(st.floats(-1e3, 1e3), min_size=2 * n + 1, max_size=2 * n + 1))))
def test_interpolation_and_linearity(case):
    n, f, g = case
    sf, sg = SampleSet.from_values(f), SampleSet.from_values(g)
    cf, cg = compute_coefficients(sf), compute_coefficients(sg)
    scale = 1 + max(map(abs, f + g))
    np.testing.assert_allclose(eval_trig_polynomial(cf, sf.nodes), f, atol=1e-11 * scale * n)
    csum = compute_coefficients(SampleSet.from_values([x + 2 * y for x, y in zip(f, g)]))
    np.testing.assert_allclose(csum.a, np.add(cf.a, 2 * np.array(cg.a)), atol=1e-12 * scale)
    np.testing.assert_allclose(csum.b, np.add(cf.b, 2 * np.array(cg.b)), atol=1e-12 * scale)
