"""End-to-end gate: the headline behaviors at their stated tolerances.

Each criterion prints one [PASS]/[FAIL] line so a run reads as a checklist.
The extension scenarios dominate the runtime; everything else is seconds.
"""

import time

import numpy as np
import pytest

from qcline import (
    BoxDensity,
    GridSpec,
    Interval,
    RealFunction,
    ba_extend,
    box_mass,
    complex_dilatation,
    doubling_constant,
    log_deriv,
    make_catalog,
    maximal_function,
    mean_oscillation,
    qs_constant,
    symmetric_profile,
    vmo_profile,
)
from qcline.experiments import (
    run_cayley_comparison,
    run_chain_rule,
    run_composition_failure,
    run_de_vanishing,
    run_symmetric_closure,
    run_uc_closure,
)
from qcline.extension import cayley, cayley_inv, de_barycenter, hyperbolic_distance, mobius_disk
from qcline.homeo import anchored_starts, qs_quotient

LN2 = float(np.log(2.0))


def _timed(runner):
    t0 = time.perf_counter()
    rep = runner()
    return rep, time.perf_counter() - t0


@pytest.fixture(scope="module")
def composition_run():
    return _timed(run_composition_failure)


@pytest.fixture(scope="module")
def uc_run():
    return _timed(run_uc_closure)


@pytest.fixture(scope="module")
def symmetric_run():
    return _timed(run_symmetric_closure)


@pytest.fixture(scope="module")
def de_run():
    return _timed(run_de_vanishing)


@pytest.fixture(scope="module")
def chain_run():
    return _timed(run_chain_rule)


@pytest.fixture(scope="module")
def cayley_run():
    return _timed(run_cayley_comparison)


def _announce(capsys, label, ok, detail):
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] {label} ({detail})")


def test_criterion_1_composition_counterexample(composition_run, capsys):
    rep, dt = composition_run
    checks = {
        "factors_vmo": rep.findings["h_final"] < 0.05 and rep.findings["g_final"] < 0.05,
        "plateau": rep.findings["plateau_min"] >= 0.1,
        "control": rep.verdicts["identity_control"] == "pass",
        "verdicts": rep.passed,
        "time": dt < 60.0,
    }
    ok = all(checks.values())
    _announce(capsys, "1 composition counterexample: VMO factors, plateauing composite", ok, f"{dt:.1f}s")
    assert ok, {k: v for k, v in checks.items() if not v}


def test_criterion_2_uc_composition_closure(uc_run, capsys):
    rep, dt = uc_run
    ok = rep.passed and dt < 60.0
    _announce(capsys, "2 closure under composition and inversion in the uc class", ok, f"{dt:.1f}s")
    assert ok, rep.verdicts


def test_criterion_3_symmetric_closure(symmetric_run, capsys):
    rep, dt = symmetric_run
    checks = {
        "finest_scale": rep.config["scales"][-1] == 2.0**-8,
        "composite_rho": rep.findings["composite_final"] < 0.02,
        "affine_exact_zero": rep.findings["affine_max"] == 0.0,
        "verdicts": rep.passed,
        "time": dt < 30.0,
    }
    ok = all(checks.values())
    _announce(capsys, "3 symmetric-map closure with exact affine control", ok, f"{dt:.1f}s")
    assert ok, {k: v for k, v in checks.items() if not v}


def test_criterion_4_extension_box_vanishing(de_run, capsys):
    rep, dt = de_run
    checks = {
        "grid": rep.config["top"] == 8.0 and rep.config["depth"] == 10,
        "tail_nonincreasing": rep.verdicts["tail_nonincreasing"] == "pass",
        "small_box_drop": rep.findings["final"] < 0.5 * rep.findings["max"],
        "doubling": rep.findings["doubling_rel_change"] < 0.10,
        "verdicts": rep.passed,
        "time": dt < 600.0,
    }
    ok = all(checks.values())
    _announce(capsys, "4 extension dilatation mass vanishes into small boxes", ok, f"{dt:.1f}s")
    assert ok, {k: v for k, v in checks.items() if not v}


def test_criterion_5_chain_rule_field(chain_run, capsys):
    rep, dt = chain_run
    checks = {
        "tail_decreasing": rep.verdicts["chain_tail_decreasing"] == "pass",
        "self_chain_exact_zero": rep.findings["self_chain_sup"] == 0.0,
        "verdicts": rep.passed,
        "time": dt < 120.0,
    }
    ok = all(checks.values())
    _announce(capsys, "5 chain-rule field decays; identical pair cancels exactly", ok, f"{dt:.1f}s")
    assert ok, {k: v for k, v in checks.items() if not v}


def test_criterion_6_geometry_checks(chain_run, capsys):
    rep, dt = chain_run
    checks = {
        "im_ratio_recorded": rep.findings["im_ratio_min"] > 0.0
        and np.isfinite(rep.findings["im_ratio_max"]),
        "three_box_lengths": rep.config["box_lengths"] == [1.0, 0.5, 0.25],
        "alpha_stable": rep.findings["alpha_ratio"] < 2.0,
        "time": dt < 60.0,
    }
    ok = all(checks.values())
    _announce(capsys, "6 image geometry: height ratio recorded, box exponent stable", ok, f"{dt:.1f}s")
    assert ok, {k: v for k, v in checks.items() if not v}


def test_criterion_7_exact_values(capsys):
    t0 = time.perf_counter()
    results = {}

    fld = complex_dilatation(
        ba_extend(make_catalog("affine", a=1.0, b=0.0)),
        GridSpec(Interval(-1.0, 1.0), top=1.0, depth=2, stride=1.0),
    )
    worst_third = max(float(np.max(np.abs(np.abs(row) - 1.0 / 3.0))) for row in fld.rows if row.size)
    results["triangle_third"] = worst_third < 1e-10

    results["hyperbolic_log2"] = abs(hyperbolic_distance(1j, 2j) - LN2) < 1e-12

    def strip_fn(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.where((y > 1.0) & (y <= 2.0), 1.0 / np.maximum(y, 1e-300), 0.0)

    m = box_mass(BoxDensity(fn=strip_fn, label="strip"), Interval(0.0, 4.0))
    results["strip_mass"] = abs(m.value - 4.0 * LN2) < 1e-8 and not m.diverging

    phi = RealFunction(fn=lambda x: np.ones_like(x), window=Interval(0, 1), name="box")
    got = maximal_function(phi, [2.0, 0.5, -1.0], n_cells=3072)
    results["maximal_examples"] = bool(np.max(np.abs(got - [0.5, 1.0, 0.5])) < 1e-12)

    rng = np.random.default_rng(3)
    z = rng.uniform(-50, 50, 64) + 1j * np.exp(rng.uniform(np.log(1e-3), np.log(50), 64))
    results["cayley_round_trip"] = float(np.max(np.abs(cayley_inv(cayley(z)) - z))) < 1e-12

    lift = make_catalog("circle_from_lift", amp=0.25, wave=2)
    base = de_barycenter(lift, n_start=512)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(3):
        a = rng.uniform(-0.6, 0.6) + 1j * rng.uniform(-0.6, 0.6)
        t = rng.uniform(0, 2 * np.pi)

        def gamma_phi(theta, a=a, t=t):
            return np.exp(1j * t) * mobius_disk(lift.unit_values(theta), a)

        moved = de_barycenter(gamma_phi, n_start=512)
        expect = np.exp(1j * t) * mobius_disk(np.asarray([base], dtype=complex), a)[0]
        worst = max(worst, abs(moved - expect))
    results["barycenter_naturality"] = worst < 1e-6

    g = make_catalog("g_tiled")
    xs = np.linspace(-40.0, 40.0, 1000)
    results["tile_period"] = float(np.max(np.abs(g.eval(xs + 22.0) - g.eval(xs) - 143.0 / 12.0))) < 1e-9

    dt = time.perf_counter() - t0
    bad = [k for k, v in results.items() if not v]
    _announce(capsys, f"7 exact-value suite ({len(results) - len(bad)}/{len(results)})", not bad, f"{dt:.1f}s")
    assert not bad, bad


def test_criterion_8_bruteforce_equivalence(capsys):
    t0 = time.perf_counter()
    diffs = {}

    # maximal function: step resample plus all-pairs interval averages
    phi = RealFunction(fn=lambda x: np.exp(-x * x), window=Interval(-2, 2), name="gauss")
    pts = np.linspace(-1.5, 1.5, 9)
    n = 512
    fast = maximal_function(phi, pts, n_cells=n)
    edges = np.linspace(-2.0, 2.0, n + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    V = np.concatenate([[0.0], np.cumsum(np.abs(phi.fn(mids)))])
    i = np.arange(n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        slopes = (V[None, :] - V[:, None]) / (i[None, :] - i[:, None])
    slow = np.empty_like(pts)
    for k, p in enumerate(pts):
        c = min(int(np.searchsorted(edges, p, side="right")) - 1, n - 1)
        slow[k] = np.nanmax(slopes[: c + 1, c + 1 :])
    diffs["maximal_function"] = float(np.max(np.abs(fast - slow)))

    h = make_catalog("ss_uc_smooth", amp=0.25, freq=1.7, decay=12.0, phase=0.7)
    win = Interval(-3.0, 3.0)
    scales = [1.0, 0.5, 0.25]

    best = 0.0
    rho_slow = []
    for t in scales:
        xs = anchored_starts(win.a + t, win.b - t, 0.0, 0.25 * t)
        assert xs.size <= 512
        m = 0.0
        for x in xs:
            q = qs_quotient(h, float(x), t)
            m = max(m, q, 1.0 / q)
        best = max(best, m)
        rho_slow.append(m - 1.0)
    diffs["qs_constant"] = abs(qs_constant(h, win, scales) - best)
    prof = symmetric_profile(h, win, scales)
    diffs["symmetric_profile"] = float(np.max(np.abs(prof.values - rho_slow)))

    best = 0.0
    for s in scales:
        xs = anchored_starts(win.a, win.b, 0.0, 0.25 * s)
        for x in xs:
            num = h.eval(x + s) - h.eval(x - s)
            den = h.eval(x + 0.5 * s) - h.eval(x - 0.5 * s)
            best = max(best, num / den)
    diffs["doubling_constant"] = abs(doubling_constant(h, win, scales) - best)

    u = log_deriv(h)
    prof = vmo_profile(u, win, scales)
    omega_slow = []
    for d in scales:
        starts = anchored_starts(win.a, win.b, d, 0.25 * d)
        assert starts.size <= 512
        omega_slow.append(max(mean_oscillation(u, Interval(s, s + d)) for s in starts))
    diffs["vmo_profile"] = float(np.max(np.abs(prof.values - omega_slow)))

    dt = time.perf_counter() - t0
    bad = {k: v for k, v in diffs.items() if not v < 1e-6}
    _announce(
        capsys,
        "8 scanned diagnostics equal their brute-force definitions",
        not bad,
        f"max diff {max(diffs.values()):.2e}, {dt:.1f}s",
    )
    assert not bad, bad


def test_criterion_9_cayley_transfer(cayley_run, capsys):
    rep, dt = cayley_run
    checks = {
        "arc_plateau": rep.findings["arc_min"] >= 0.3,
        "line_window": rep.config["line_window"] == [-100.0, 100.0],
        "line_scale": rep.config["line_scales"][-1] == 2.0**-6,
        "line_decay": rep.findings["line_final"] < 0.05,
        "verdicts": rep.passed,
        "time": dt < 60.0,
    }
    ok = all(checks.values())
    _announce(capsys, "9 singularity visible on the arc, invisible on the line", ok, f"{dt:.1f}s")
    assert ok, {k: v for k, v in checks.items() if not v}
