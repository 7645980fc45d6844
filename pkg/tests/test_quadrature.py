import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcline.errors import QuadratureFailure
from qcline.quadrature import gauss_legendre, integrate, integrate_many


def test_polynomial_exact():
    assert integrate(lambda x: x**2, 0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert integrate(lambda x: x**3 - x, -1.0, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_batch_uses_interval_index():
    # integrand depends on which interval the abscissa belongs to
    out = integrate_many(lambda x, idx: (idx + 1.0) * np.ones_like(x), [0.0, 0.0], [1.0, 2.0])
    assert out[0] == pytest.approx(1.0, abs=1e-12)
    assert out[1] == pytest.approx(4.0, abs=1e-12)


def test_zero_width_interval():
    out = integrate_many(lambda x, idx: np.ones_like(x), [1.0], [1.0])
    assert out[0] == 0.0


def test_endpoint_order_checked():
    with pytest.raises(ValueError):
        integrate_many(lambda x, idx: x, [1.0], [0.0])


def test_log_singularity_nudged():
    # integral of -log(x) over (0,1] is 1; the pole at 0 sits on a node
    val = integrate(lambda x: -np.log(np.abs(x)), 0.0, 1.0, tol=1e-10)
    assert val == pytest.approx(1.0, abs=1e-8)


def test_divergent_integrand_raises():
    with pytest.raises(QuadratureFailure):
        integrate(lambda x: 1.0 / np.abs(x), 0.0, 1.0)


def test_divergence_cap_inf_forces_value():
    val = integrate(lambda x: 1.0 / np.abs(x), 0.0, 1.0, divergence_cap=np.inf, max_depth=12)
    assert np.isfinite(val)


def test_per_interval_tolerances():
    out = integrate_many(
        lambda x, idx: np.sin(x),
        [0.0, 0.0],
        [np.pi, np.pi],
        tol=[1e-4, 1e-12],
    )
    assert out[0] == pytest.approx(2.0, abs=1e-3)
    assert out[1] == pytest.approx(2.0, abs=1e-10)


def test_bitwise_reproducible():
    f = lambda x, idx: np.exp(-x * x) * np.cos(3 * x)
    a = np.linspace(-2, 1, 7)
    b = a + 1.5
    r1 = integrate_many(f, a, b)
    r2 = integrate_many(f, a, b)
    assert np.array_equal(r1, r2)


def test_gauss_legendre_degree():
    x, w = gauss_legendre(16)
    assert x.shape == (16,) and w.shape == (16,)
    assert float(w @ np.ones(16)) == pytest.approx(2.0, abs=1e-14)
    # exact through degree 31
    assert float(w @ x**30) == pytest.approx(2.0 / 31.0, abs=1e-14)
    assert float(w @ x**31) == pytest.approx(0.0, abs=1e-14)


@settings(max_examples=25, deadline=None)
@given(
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=0.1, max_value=4.0),
)
def test_linear_exact_property(c0, c1, a, width):
    b = a + width
    val = integrate(lambda x: c0 + c1 * x, a, b)
    exact = c0 * (b - a) + 0.5 * c1 * (b * b - a * a)
    assert val == pytest.approx(exact, abs=1e-10 * (1 + abs(exact)))
