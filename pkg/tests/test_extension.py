import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcline.errors import (
    BadParams,
    DegeneratePair,
    GridMismatch,
    PoleInput,
    SchemaMismatch,
)
from qcline.extension import (
    BAMap,
    DEMap,
    DilatationField,
    DiskDEMap,
    GridSpec,
    IdentityMap,
    asymptotic_profile,
    ba_extend,
    bilipschitz_estimate,
    box_image_check,
    cayley,
    cayley_deriv,
    cayley_inv,
    chain_dilatation_mag,
    complex_dilatation,
    de_barycenter,
    de_extend_line,
    hyperbolic_distance,
    im_ratio_check,
    mobius_disk,
)
from qcline.homeo import make_catalog
from qcline.intervals import Interval


def test_cayley_basics():
    assert cayley(1j) == pytest.approx(0.0, abs=1e-15)
    assert abs(cayley_deriv(1j)) == pytest.approx(0.5, abs=1e-15)
    xs = np.linspace(-20, 20, 41)
    assert np.allclose(np.abs(cayley(xs + 0j)), 1.0, atol=1e-12)
    with pytest.raises(PoleInput):
        cayley(-1j)
    with pytest.raises(PoleInput):
        cayley_inv(1.0 + 0j)


def test_cayley_round_trip():
    rng = np.random.default_rng(3)
    z = rng.uniform(-10, 10, 64) + 1j * rng.uniform(1e-3, 10, 64)
    back = cayley_inv(cayley(z))
    assert np.max(np.abs(back - z)) < 1e-12 * np.max(1 + np.abs(z))


def test_hyperbolic_distance_values():
    assert hyperbolic_distance(1j, 2j) == pytest.approx(np.log(2.0), abs=1e-12)
    assert hyperbolic_distance(1j, 1j) == 0.0
    # Mobius invariance under z -> 2z + 3
    d1 = hyperbolic_distance(0.5 + 1j, -1 + 3j)
    d2 = hyperbolic_distance(2 * (0.5 + 1j) + 3, 2 * (-1 + 3j) + 3)
    assert d1 == pytest.approx(d2, abs=1e-12)
    with pytest.raises(BadParams):
        hyperbolic_distance(1j, 1.0 - 1j)


def test_ba_identity_dilatation_exact():
    """The one-sided-average extension of x has |mu| = 1/3."""
    F = ba_extend(make_catalog("identity"))
    z = np.asarray([0.3 + 0.7j, -2 + 0.05j, 5 + 3j])
    fz, fzb = F.wirtinger(z)
    mu = fzb / fz
    assert np.max(np.abs(np.abs(mu) - 1.0 / 3.0)) < 1e-10
    assert np.allclose(F.eval(z), z.real + 0.5j * z.imag, atol=1e-10)


def test_ba_affine_dilatation_exact():
    F = ba_extend(make_catalog("affine", a=3.0, b=-2.0))
    z = np.asarray([0.1 + 0.4j, 1 + 2j])
    fz, fzb = F.wirtinger(z)
    assert np.max(np.abs(np.abs(fzb / fz) - 1.0 / 3.0)) < 1e-10


def test_ba_maps_into_upper_half_plane():
    F = ba_extend(make_catalog("ss_uc_smooth"))
    z = np.asarray([0.5 + 0.25j, -1 + 1j, 2 + 0.125j])
    w = F.eval(z)
    assert np.all(w.imag > 0)
    with pytest.raises(BadParams):
        F.eval(np.asarray([1.0 - 1j]))


def test_de_identity_and_affine_exact():
    E = de_extend_line(make_catalog("identity"), n_nodes=512)
    z = np.asarray([1j, 0.5 + 0.5j, -3 + 2j])
    assert np.max(np.abs(E.eval(z) - z)) < 1e-8
    A = de_extend_line(make_catalog("affine", a=2.0, b=-1.0), n_nodes=512)
    assert np.max(np.abs(A.eval(z) - (2.0 * z - 1.0))) < 1e-8


def test_de_affine_is_conformal():
    grid = GridSpec(Interval(-1, 1), top=1.0, depth=3, stride=1.0)
    fld = complex_dilatation(de_extend_line(make_catalog("affine"), n_nodes=256), grid)
    assert fld.sup_norm < 1e-8


def test_disk_de_naturality():
    """Barycenter commutes with post-composition by disk Mobius maps."""
    phi = make_catalog("circle_from_lift", amp=0.25, wave=2)
    base = de_barycenter(phi, n_start=512)
    rng = np.random.default_rng(7)
    for _ in range(3):
        a = (rng.uniform(-0.6, 0.6) + 1j * rng.uniform(-0.6, 0.6))
        t = rng.uniform(0, 2 * np.pi)

        def gamma_phi(theta, a=a, t=t):
            return np.exp(1j * t) * mobius_disk(phi.unit_values(theta), a)

        moved = de_barycenter(gamma_phi, n_start=512)
        expect = np.exp(1j * t) * mobius_disk(np.asarray([base], dtype=complex), a)[0]
        assert abs(moved - expect) < 1e-6


def test_disk_de_rotation_exact():
    E = DiskDEMap(make_catalog("circle_rotation", angle=0.8), n_nodes=256)
    w = np.asarray([0.0 + 0.0j, 0.3 + 0.1j, -0.5j])
    assert np.max(np.abs(E.eval(w) - np.exp(0.8j) * w)) < 1e-8
    assert np.max(np.abs(E.dilatation(np.asarray([0.2 + 0.2j])))) < 1e-6


def test_grid_spec_validation():
    with pytest.raises(BadParams):
        GridSpec(Interval(-1, 1), top=1.0, depth=25)
    with pytest.raises(BadParams):
        GridSpec(Interval(-1, 1), top=-1.0, depth=3)
    g = GridSpec(Interval(-2, 2), top=4.0, depth=5, stride=0.5)
    hs = g.level_heights()
    assert hs[0] == 4.0 and hs[-1] == 4.0 * 2.0**-5
    xs = g.level_xs(3)
    assert xs[0] > -2 and xs[-1] < 2
    assert np.allclose(np.diff(xs), xs[1] - xs[0])


def test_field_csv_round_trip(tmp_path):
    grid = GridSpec(Interval(-1, 1), top=1.0, depth=2, stride=1.0)
    fld = complex_dilatation(ba_extend(make_catalog("ss_uc_smooth")), grid)
    p = tmp_path / "f.csv"
    fld.to_csv(p)
    fld2 = DilatationField.from_csv(p)
    assert fld2.grid.depth == fld.grid.depth
    for r1, r2 in zip(fld.rows, fld2.rows):
        assert np.array_equal(r1, r2)  # 17-digit floats survive the trip
    assert fld2.sup_norm == fld.sup_norm
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y,who,im_mu,abs_mu\n", encoding="utf-8")
    with pytest.raises(SchemaMismatch):
        DilatationField.from_csv(bad)


def test_ba_identity_field_constant():
    grid = GridSpec(Interval(-2, 2), top=2.0, depth=4, stride=0.5)
    fld = complex_dilatation(ba_extend(make_catalog("identity")), grid)
    for row in fld.rows:
        assert np.max(np.abs(np.abs(row) - 1.0 / 3.0)) < 1e-10
    prof = asymptotic_profile(fld)
    assert prof.meta["asymptotically_conformal"] is False
    assert np.allclose(prof.values, 1.0 / 3.0, atol=1e-10)


def test_abs_interp_level_exactness():
    grid = GridSpec(Interval(-2, 2), top=1.0, depth=3, stride=0.5)
    fld = complex_dilatation(ba_extend(make_catalog("ss_uc_smooth")), grid)
    k = 2
    y = grid.level_heights()[k]
    xs = grid.level_xs(k)
    vals = fld.abs_interp(xs, np.full(xs.shape, y))
    assert np.max(np.abs(vals - np.abs(fld.rows[k]))) < 1e-12


def test_chain_dilatation_swap_and_zero():
    grid = GridSpec(Interval(-2, 2), top=1.0, depth=3, stride=0.5)
    mu = complex_dilatation(ba_extend(make_catalog("ss_uc_smooth")), grid)
    nu = complex_dilatation(ba_extend(make_catalog("h_parabolic")), grid)
    ab = chain_dilatation_mag(mu, nu)
    ba = chain_dilatation_mag(nu, mu)
    for r1, r2 in zip(ab.rows, ba.rows):
        assert np.array_equal(r1, r2)  # |a-b|/|1-conj(b)a| is swap-symmetric bitwise
    self_chain = chain_dilatation_mag(mu, mu)
    assert self_chain.sup_norm == 0.0
    other = complex_dilatation(ba_extend(make_catalog("identity")), GridSpec(Interval(-1, 1), top=1.0, depth=3, stride=0.5))
    with pytest.raises(GridMismatch):
        chain_dilatation_mag(mu, other)


def test_im_ratio_and_box_image():
    F = ba_extend(make_catalog("identity"))
    pts = np.asarray([0.0 + 1j, 1 + 0.5j, -2 + 0.25j])
    vals, lo, hi = im_ratio_check(F, pts)
    assert np.allclose(vals, 0.5, atol=1e-10)  # Im F = y/2 for the identity
    assert lo == pytest.approx(0.5, abs=1e-10)
    assert hi == pytest.approx(0.5, abs=1e-10)
    A = ba_extend(make_catalog("affine", a=2.0, b=0.0))
    assert box_image_check(A, Interval(0, 1)) == pytest.approx(1.0, abs=1e-9)


def test_bilipschitz_identity():
    worst, ratios = bilipschitz_estimate(IdentityMap(), [(1j, 2j), (0.5 + 1j, -1 + 0.5j)])
    assert worst == 1.0
    assert np.allclose(ratios, 1.0)
    with pytest.raises(DegeneratePair):
        bilipschitz_estimate(IdentityMap(), [(1j, 1j)])


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=1e-2, max_value=50),
)
def test_cayley_round_trip_property(x, y):
    z = complex(x, y)
    assert abs(cayley_inv(cayley(z)) - z) < 1e-12 * (1 + abs(z))
    assert abs(cayley(z)) < 1.0  # upper half-plane lands inside the disk
