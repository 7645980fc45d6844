import numpy as np
import pytest
from scipy import integrate

from qcline.carleson import (
    BOX_CSV_HEADER,
    BoxDensity,
    DiskDensity,
    box_mass,
    box_report_csv,
    carleson_norm,
    disk_box_mass,
    disk_vanishing_profile,
    embedding_check,
    pullback_cayley,
    region_mass,
    vanishing_profile,
)
from qcline.errors import (
    BadParams,
    PoleProximity,
    QuadratureFailure,
    TailDivergence,
    WindowExceeded,
)
from qcline.extension import GridSpec, ba_extend, complex_dilatation
from qcline.homeo import make_catalog
from qcline.intervals import Interval

LN2 = np.log(2.0)


def _const(c):
    return BoxDensity(fn=lambda x, y: np.broadcast_to(c, np.broadcast_arrays(x, y)[0].shape), y_floor=2**-12)


def _strip():
    """1/y on the band 1 < y <= 2 and zero elsewhere."""

    def fn(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.where((y > 1.0) & (y <= 2.0), 1.0 / np.maximum(y, 1e-300), 0.0)

    return BoxDensity(fn=fn, label="strip")


def _dy():
    def fn(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return y + 0.0 * x

    return BoxDensity(fn=fn, y_floor=2**-12)


def test_zero_density():
    m = box_mass(_const(0.0), Interval(-1, 3))
    assert m.value == 0.0 and m.tail == 0.0 and not m.diverging
    prof = vanishing_profile(_const(0.0), Interval(-2, 2), [1.0, 0.5, 0.25])
    assert np.all(prof.values == 0.0)
    assert prof.meta["vanishing"] is True


def test_strip_box_mass_exact():
    m = box_mass(_strip(), Interval(0.0, 4.0))
    assert m.value == pytest.approx(4.0 * LN2, abs=1e-8)
    assert not m.diverging


def test_constant_mu_flags_divergence():
    """|mu| = const is the non-Carleson case: truncated mass plus the flag."""
    d = BoxDensity(
        fn=lambda x, y: np.broadcast_arrays(x, y)[0] * 0.0 + (1.0 / 9.0) / np.broadcast_arrays(x, y)[1],
        y_floor=2.0**-10,
    )
    m = box_mass(d, Interval(0.0, 1.0))
    assert m.diverging
    assert m.value == pytest.approx((10.0 / 9.0) * LN2, abs=1e-8)
    with pytest.raises(TailDivergence):
        m.raise_if_diverging()
    ok = box_mass(_dy(), Interval(0.0, 0.5))
    assert ok.raise_if_diverging() is ok


def test_linear_density_exact_tail():
    # bands of d = y decay geometrically at ratio 1/4, so the tail is exact
    m = box_mass(_dy(), Interval(0.0, 0.5))
    assert m.value == pytest.approx(0.5**3 / 2.0, rel=1e-10)
    assert m.tail > 0 and not m.diverging


def test_vanishing_profile_linear_density():
    prof = vanishing_profile(_dy(), Interval(-2, 2), [1.0, 0.5, 0.25, 0.125])
    assert np.allclose(prof.values, prof.scales**2 / 2.0, rtol=1e-9)
    assert prof.meta["vanishing"] is True
    assert prof.meta["diverging_any"] is False
    with pytest.raises(BadParams):
        vanishing_profile(_dy(), Interval(-2, 2), [0.5, 1.0])


def test_box_monotonicity_and_additivity():
    def fn(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return y * np.exp(-x * x)

    d = BoxDensity(fn=fn, y_floor=2**-10)
    inner = box_mass(d, Interval(-0.5, 0.5)).value
    outer = box_mass(d, Interval(-1.0, 1.0)).value
    assert inner <= outer + 1e-8
    whole = region_mass(d, Interval(-1.0, 1.0), 0.01, 1.0)
    halves = region_mass(d, Interval(-1.0, 0.0), 0.01, 1.0) + region_mass(
        d, Interval(0.0, 1.0), 0.01, 1.0
    )
    assert whole == pytest.approx(halves, abs=1e-8)


def test_window_guard():
    d = BoxDensity(fn=lambda x, y: np.broadcast_arrays(x, y)[1], window=Interval(-1, 1))
    with pytest.raises(WindowExceeded):
        box_mass(d, Interval(0, 2))


def test_carleson_norm_strip():
    ns = carleson_norm(_strip(), Interval(-8, 8), [8.0, 4.0, 2.0])
    # every scanned box of length >= 2 captures a full vertical ln 2 column
    assert ns.value == pytest.approx(LN2, abs=1e-9)
    assert float(ns) == ns.value
    assert not ns.diverging_any


def test_box_report_csv():
    text = box_report_csv(_dy(), [Interval(0, 1), Interval(1, 2)])
    lines = text.strip().split("\n")
    assert lines[0] == BOX_CSV_HEADER
    assert len(lines) == 3
    left, right, mass, ratio, flag = lines[1].split(",")
    assert float(right) - float(left) == 1.0
    assert float(mass) == pytest.approx(0.5, rel=1e-9)
    assert flag == "ok"


def test_node_budget_refusal():
    # a jump in x never stabilizes under panel doubling; the budget refuses
    def fn(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.where(x < 0.3, 1.0, 0.0) / y

    d = BoxDensity(fn=fn, y_floor=0.25)
    with pytest.raises(QuadratureFailure):
        box_mass(d, Interval(0.0, 1.0), tol=1e-12)


# --- disk variant ---------------------------------------------------------


def _radial_oracle(r):
    phi = lambda rho: np.arccos(np.clip((rho * rho + 1 - r * r) / (2 * rho), -1, 1))
    f = lambda rho: (1.0 - rho) * 2.0 * phi(rho) * rho
    val, _ = integrate.quad(f, max(0.0, 1.0 - r), 1.0, limit=200)
    return val / r


@pytest.mark.parametrize("r", [0.25, 0.7, 1.3])
def test_disk_box_mass_radial_oracle(r):
    d = DiskDensity(fn=lambda w: 1.0 - np.abs(w))
    bm = disk_box_mass(d, 1.0 + 0j, r)
    assert bm.value == pytest.approx(_radial_oracle(r), rel=1e-6)
    assert not bm.diverging


def test_disk_box_mass_validation():
    d = DiskDensity(fn=lambda w: np.ones(np.asarray(w).shape))
    with pytest.raises(BadParams):
        disk_box_mass(d, 1.0 + 0j, 2.5)
    with pytest.raises(BadParams):
        disk_box_mass(d, 0.5 + 0j, 0.5)  # center off the unit circle
    z = disk_box_mass(DiskDensity(fn=lambda w: np.zeros(np.asarray(w).shape)), 1j, 0.5)
    assert z.value == 0.0


def test_disk_center_rotation_invariance():
    d = DiskDensity(fn=lambda w: 1.0 - np.abs(w))
    a = disk_box_mass(d, 1.0 + 0j, 0.5).value
    b = disk_box_mass(d, np.exp(0.7j), 0.5).value
    assert a == pytest.approx(b, rel=1e-9)


def test_disk_vanishing_profile_decaying_density():
    d = DiskDensity(fn=lambda w: (1.0 - np.abs(w)) ** 2)
    prof = disk_vanishing_profile(d, [0.5, 0.25, 0.125], n_centers=4, threshold=0.05)
    assert np.all(np.diff(prof.values) < 0)
    assert prof.meta["vanishing"] is True


def test_disk_band_budget_refusal():
    d = DiskDensity(fn=lambda w: np.where(np.real(w) > 0.93, 1.0, 0.0) / (1.0 - np.abs(w)))
    with pytest.raises(QuadratureFailure):
        disk_box_mass(d, 1.0 + 0j, 0.3, tol=1e-12)


# --- Cayley pull-back ------------------------------------------------------


def _bump(c, eps, ang=None):
    def fn(w):
        w = np.asarray(w, dtype=complex)
        base = np.maximum(eps * eps - np.abs(w - c) ** 2, 0.0) ** 3
        return base * ang(w) if ang is not None else base

    return DiskDensity(fn=fn, label="bump")


def _pullback_mass(lam, c, eps):
    """Mass of the pulled-back density over a box covering the support."""
    p = pullback_cayley(lam)
    th = np.linspace(0, 2 * np.pi, 1024, endpoint=False)
    ring = c + eps * np.exp(1j * th)
    z = 1j * (1.0 + ring) / (1.0 - ring)
    iv = Interval(z.real.min() - 0.05, z.real.max() + 0.05)
    edges = np.linspace(0.8 * z.imag.min(), 1.2 * z.imag.max(), 9)
    return sum(region_mass(p, iv, a, b, tol=1e-9) for a, b in zip(edges[:-1], edges[1:]))


def _disk_mass_oracle(c, eps, ang=None):
    def f(theta, rho):
        w = c + rho * np.exp(1j * theta)
        v = (eps * eps - rho * rho) ** 3
        if ang is not None:
            v = v * ang(w)
        return v * 2.0 / abs(1.0 - w) ** 2 * rho

    val, _ = integrate.dblquad(f, 0, eps, 0, 2 * np.pi, epsabs=1e-12, epsrel=1e-10)
    return val


@pytest.mark.parametrize(
    "c,eps,ang",
    [
        (0.0 + 0.0j, 0.25, None),
        (0.0 + 0.0j, 0.40, None),
        (0.0 + 0.0j, 0.40, lambda w: 1.0 + 0.5 * np.real(w) / 0.40),
        (0.2 + 0.1j, 0.25, None),
        (-0.3j, 0.30, None),
    ],
)
def test_pullback_mass_consistency(c, eps, ang):
    """Half-plane mass equals the 2/|1-w|^2-weighted disk mass."""
    lam = _bump(c, eps, ang)
    lhs = _pullback_mass(lam, c, eps)
    rhs = _disk_mass_oracle(c, eps, ang)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_pullback_zero_and_pole():
    p = pullback_cayley(DiskDensity(fn=lambda w: np.zeros(np.asarray(w).shape)))
    assert region_mass(p, Interval(-1, 1), 0.5, 2.0) == 0.0
    with pytest.raises(PoleProximity):
        pullback_cayley(DiskDensity(fn=lambda w: np.ones(np.asarray(w).shape))).eval(1e10, 1.0)


# --- embedding -------------------------------------------------------------


def test_embedding_exact_strip_cases():
    window = Interval(-8, 8)
    scales = [8.0, 4.0, 2.0]
    one = lambda z: np.ones_like(np.asarray(z, complex).real)
    rep = embedding_check(_strip(), one, window, scales)
    assert rep.lhs == pytest.approx(16.0 * LN2, abs=1e-8)
    assert rep.rhs_integral == pytest.approx(16.0, abs=1e-10)
    assert rep.ratio == pytest.approx(1.0, abs=1e-8)

    height = lambda z: np.asarray(z, complex).imag
    rep2 = embedding_check(_strip(), height, window, scales)
    assert rep2.lhs == pytest.approx(16.0, abs=1e-8)
    assert rep2.rhs_integral == pytest.approx(128.0, abs=1e-8)
    assert rep2.ratio == pytest.approx(1.0 / (8.0 * LN2), abs=1e-8)

    zero = lambda z: np.zeros_like(np.asarray(z, complex).real)
    rep0 = embedding_check(_strip(), zero, window, scales)
    assert rep0.lhs == 0.0 and rep0.ratio == np.inf


def test_embedding_ratio_bounded_across_suite():
    window = Interval(-8, 8)
    scales = [8.0, 4.0, 2.0]
    fs = [
        lambda z: np.ones_like(np.asarray(z, complex).real),
        lambda z: np.asarray(z, complex).imag,
        lambda z: 1.0 / (1.0 + np.abs(np.asarray(z, complex)) ** 2),
    ]
    ratios = [embedding_check(_strip(), f, window, scales).ratio for f in fs]
    assert max(ratios) < 10.0  # single recorded ceiling for the suite


# --- field-backed densities ------------------------------------------------


def test_from_field_floor_is_deepest_level():
    grid = GridSpec(Interval(-2, 2), top=1.0, depth=4, stride=0.5)
    fld = complex_dilatation(ba_extend(make_catalog("ss_uc_smooth")), grid)
    d = BoxDensity.from_field(fld)
    assert d.y_floor == pytest.approx(grid.level_heights()[-1])
    assert d.window == grid.window
    m = box_mass(d, Interval(-0.5, 0.5), tol=1e-6)
    assert np.isfinite(m.value) and m.value > 0
