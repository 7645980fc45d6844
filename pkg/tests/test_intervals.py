import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcline.intervals import Interval


def test_basic_fields():
    iv = Interval(-1.0, 3.0)
    assert iv.length == 4.0
    assert iv.mid == 1.0


def test_degenerate_rejected():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(2.0, -2.0)
    with pytest.raises(ValueError):
        Interval(0.0, np.inf)


def test_dilate_keeps_center():
    iv = Interval(2.0, 6.0)
    d = iv.dilate(2.0)
    assert d.mid == iv.mid
    assert d.length == 2.0 * iv.length
    with pytest.raises(ValueError):
        iv.dilate(0.0)


def test_contains_and_covers():
    iv = Interval(0.0, 1.0)
    assert iv.contains(0.5)
    assert iv.contains([0.0, 1.0])
    assert not iv.contains(1.0 + 1e-9)
    assert iv.contains(1.0 + 1e-9, slack=1e-8)
    assert Interval(-1.0, 2.0).covers(iv)
    assert not iv.covers(Interval(-1.0, 2.0))


def test_intersect():
    assert Interval(0.0, 2.0).intersect(Interval(1.0, 3.0)) == Interval(1.0, 2.0)
    assert Interval(0.0, 1.0).intersect(Interval(2.0, 3.0)) is None
    # touching endpoints give an empty interior
    assert Interval(0.0, 1.0).intersect(Interval(1.0, 2.0)) is None


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


@given(finite, finite)
def test_ordering_invariant(a, b):
    if a < b:
        iv = Interval(a, b)
        assert iv.a < iv.b
        assert iv.length > 0
        assert iv.contains(iv.mid)
    else:
        with pytest.raises(ValueError):
            Interval(a, b)


@given(finite, st.floats(min_value=1e-3, max_value=1e3))
def test_dilate_unit_is_identity(c, half):
    iv = Interval(c - half, c + half)
    d = iv.dilate(1.0)
    assert d.a == pytest.approx(iv.a, abs=1e-9 * (1 + abs(c)))
    assert d.b == pytest.approx(iv.b, abs=1e-9 * (1 + abs(c)))
