"""Configured scenario runs with pass/fail verdicts and file artifacts.

Each runner returns a :class:`ScenarioReport`; nothing touches the
filesystem until ``write`` is called.  Configs are echoed verbatim into the
report so a run can be reproduced from its own output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .carleson import BoxDensity, DiskDensity, disk_vanishing_profile, pullback_cayley, vanishing_profile
from .errors import BadParams, UnknownName
from .extension import (
    DiskDEMap,
    GridSpec,
    asymptotic_profile,
    ba_extend,
    bilipschitz_estimate,
    box_image_check,
    chain_dilatation_mag,
    complex_dilatation,
    de_extend_line,
    im_ratio_check,
)
from .funcs import RealFunction
from .homeo import compose, invert, log_deriv, make_catalog, modulus_of_continuity, symmetric_profile
from .intervals import Interval
from .oscillation import mean_oscillation, vmo_profile
from .profiles import Profile

PASS = "pass"
FAIL = "fail"
INFO = "informational"


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _merge(defaults: dict, overrides: dict | None) -> dict:
    """Defaults updated by overrides; unknown keys are rejected loudly."""
    out = {k: (dict(v) if isinstance(v, dict) else v) for k, v in defaults.items()}
    for k, v in (overrides or {}).items():
        if k not in out:
            raise BadParams(f"unknown config key {k!r}")
        if isinstance(out[k], dict):
            if not isinstance(v, dict):
                raise BadParams(f"config key {k!r} takes a section, got {v!r}")
            for kk, vv in v.items():
                if kk not in out[k]:
                    raise BadParams(f"unknown config key {k}.{kk}")
                out[k][kk] = vv
        elif isinstance(out[k], list) and not isinstance(v, (list, tuple)):
            out[k] = [v]
        else:
            out[k] = v
    return out


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Interval):
        return [v.a, v.b]
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    return v


@dataclass
class ScenarioReport:
    """Outcome of one scenario: findings, verdicts, and profile artifacts."""

    scenario: str
    config: dict
    findings: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    profiles: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v != FAIL for v in self.verdicts.values())

    def write(self, outdir) -> Path:
        """Write report.json plus one CSV per profile under outdir/<scenario>/."""
        base = Path(outdir) / self.scenario
        base.mkdir(parents=True, exist_ok=True)
        for name in sorted(self.profiles):
            fname = f"{name}.csv"
            self.profiles[name].to_csv(base / fname)
            self.artifacts[name] = fname
        payload = {
            "scenario": self.scenario,
            "config": _jsonable(self.config),
            "findings": _jsonable(self.findings),
            "verdicts": dict(sorted(self.verdicts.items())),
            "artifacts": dict(sorted(self.artifacts.items())),
        }
        path = base / "report.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path


# ---------------------------------------------------------------------------
# composition failure: two VMO-log-derivative factors whose composite plateaus

_COMPOSITION_DEFAULTS = {
    "h_window": [1.0, 100.0],
    "g_window": [0.0, 110.0],
    "factor_scales": [2.0 ** -k for k in range(0, 7)],
    "plateau_levels": [6, 7, 8, 9, 10, 11, 12],
    "plateau_length": 11.0,
    "trusted_halfwidth": 1e8,
    "thresholds": {"factor_vmo": 0.05, "plateau_floor": 0.1, "control_ceiling": 0.01},
}


def run_composition_failure(config: dict | None = None) -> ScenarioReport:
    cfg = _merge(_COMPOSITION_DEFAULTS, config)
    thr = cfg["thresholds"]
    W = float(cfg["trusted_halfwidth"])
    h = make_catalog("h_parabolic", window=(-W, W))
    g = make_catalog("g_tiled", window=(-W, W))

    prof_h = vmo_profile(log_deriv(h), Interval(*cfg["h_window"]), cfg["factor_scales"], threshold=thr["factor_vmo"])
    prof_g = vmo_profile(log_deriv(g), Interval(*cfg["g_window"]), cfg["factor_scales"], threshold=thr["factor_vmo"])

    comp = log_deriv(compose(g, h))
    ctrl = log_deriv(h)
    scales, vals, args, ctrl_vals = [], [], [], []
    for n in cfg["plateau_levels"]:
        xn = float(2 ** int(n))
        ln = float(cfg["plateau_length"]) / xn
        box = Interval(xn, xn + ln)
        scales.append(ln)
        vals.append(mean_oscillation(comp, box))
        ctrl_vals.append(mean_oscillation(ctrl, box))
        args.append(box.mid)
    plateau = Profile(
        scales=np.asarray(scales),
        values=np.asarray(vals),
        argmax=np.asarray(args),
        meta={"quantity": "mean_oscillation", "boxes": "dyadic anchors, length 11/x"},
    )

    rep = ScenarioReport("composition_failure", cfg)
    rep.profiles = {"h_log_deriv": prof_h, "g_log_deriv": prof_g, "composite_plateau": plateau}
    rep.findings = {
        "h_final": prof_h.final_value,
        "g_final": prof_g.final_value,
        "plateau_min": float(np.min(vals)),
        "plateau_max": float(np.max(vals)),
        "control_max": float(np.max(ctrl_vals)),
    }
    rep.verdicts = {
        "h_factor_vmo": _verdict(prof_h.final_value < thr["factor_vmo"]),
        "g_factor_vmo": _verdict(prof_g.final_value < thr["factor_vmo"]),
        "composite_plateau": _verdict(float(np.min(vals)) >= thr["plateau_floor"]),
        "identity_control": _verdict(float(np.max(ctrl_vals)) < thr["control_ceiling"]),
    }
    return rep


# ---------------------------------------------------------------------------
# closure under composition with inverses, within the uniformly continuous class

_UC_DEFAULTS = {
    "g": "ss_uc_smooth",
    "h": "ss_uc_smooth",
    "g_params": {"amp": 0.3, "freq": 1.0, "decay": 16.0, "phase": 0.0},
    "h_params": {"amp": 0.25, "freq": 1.7, "decay": 12.0, "phase": 0.7},
    "window": [-6.0, 6.0],
    "inversion_window": [-5.5, 5.5],
    "scales": [2.0 ** -k for k in range(0, 9)],
    "mod_scales": [2.0 ** -k for k in range(0, 9)],
    "noncompact_window": [704.0, 715.0],
    "noncompact_scales": [2.0 ** -k for k in range(0, 7)],
    "noncompact_tol": 1e-8,
    "trusted_halfwidth": 1e8,
    "thresholds": {
        "vmo_final": 0.05,
        "control_zero": 1e-12,
        "uc_omega": 1.0,
        "monotone_slack": 0.0,
    },
}


def run_uc_closure(config: dict | None = None) -> ScenarioReport:
    cfg = _merge(_UC_DEFAULTS, config)
    thr = cfg["thresholds"]
    g = make_catalog(cfg["g"], **cfg["g_params"])
    h = make_catalog(cfg["h"], **cfg["h_params"])
    hinv = invert(h)
    win = Interval(*cfg["window"])

    mod_h = modulus_of_continuity(h, win, cfg["mod_scales"], uc_threshold=thr["uc_omega"])
    mod_hinv = modulus_of_continuity(hinv, win, cfg["mod_scales"], uc_threshold=thr["uc_omega"])

    comp = compose(g, hinv)
    prof = vmo_profile(log_deriv(comp), win, cfg["scales"], threshold=thr["vmo_final"])
    prof_inv = vmo_profile(
        log_deriv(hinv), Interval(*cfg["inversion_window"]), cfg["scales"], threshold=thr["vmo_final"]
    )

    # h o h^{-1} multiplies h'(x_hat) by its own reciprocal at the same
    # numeric preimage, so the control oscillation is zero to the bit
    ident = compose(h, hinv)
    ctrl = vmo_profile(log_deriv(ident), win, cfg["scales"], threshold=thr["vmo_final"])

    W = float(cfg["trusted_halfwidth"])
    rough = compose(make_catalog("g_tiled", window=(-W, W)), make_catalog("h_parabolic", window=(-W, W)))
    rough_prof = vmo_profile(
        log_deriv(rough),
        Interval(*cfg["noncompact_window"]),
        cfg["noncompact_scales"],
        threshold=thr["vmo_final"],
        tol=float(cfg["noncompact_tol"]),
    )

    rep = ScenarioReport("uc_closure", cfg)
    rep.profiles = {
        "composite_vmo": prof,
        "inverse_vmo": prof_inv,
        "identity_control": ctrl,
        "modulus_h": mod_h,
        "modulus_h_inverse": mod_hinv,
        "noncompact_composite": rough_prof,
    }
    rep.findings = {
        "composite_final": prof.final_value,
        "inverse_final": prof_inv.final_value,
        "control_final": ctrl.final_value,
        "h_uniformly_continuous": bool(mod_h.meta["uniformly_continuous"]),
        "h_inverse_uniformly_continuous": bool(mod_hinv.meta["uniformly_continuous"]),
        "noncompact_final": rough_prof.final_value,
        "noncompact_min": float(np.min(rough_prof.values)),
    }
    rep.verdicts = {
        "composite_vmo_decay": _verdict(prof.final_value < thr["vmo_final"]),
        "composite_vmo_monotone": _verdict(prof.nonincreasing_tail(3, rel_slack=thr["monotone_slack"])),
        "inverse_vmo_decay": _verdict(prof_inv.final_value < thr["vmo_final"]),
        "h_uniformly_continuous": _verdict(bool(mod_h.meta["uniformly_continuous"])),
        "h_inverse_uniformly_continuous": _verdict(bool(mod_hinv.meta["uniformly_continuous"])),
        "identity_control_zero": _verdict(ctrl.final_value <= thr["control_zero"]),
        "noncompact_composite": INFO,
    }
    return rep


# ---------------------------------------------------------------------------
# symmetry quotient decay for the same pair, plus an affine exactness control

_SYMMETRIC_DEFAULTS = {
    "g": "ss_uc_smooth",
    "h": "ss_uc_smooth",
    "g_params": {"amp": 0.3, "freq": 1.0, "decay": 16.0, "phase": 0.0},
    "h_params": {"amp": 0.25, "freq": 1.7, "decay": 12.0, "phase": 0.7},
    "window": [-6.0, 6.0],
    "scales": [2.0 ** -k for k in range(0, 9)],
    "affine": {"a": 2.0, "b": -1.0},
    "affine_window": [-4.0, 4.0],
    "noncompact_window": [704.0, 1408.0],
    "noncompact_scales": [2.0 ** -k for k in range(0, 9)],
    "trusted_halfwidth": 1e8,
    "thresholds": {"rho_final": 0.02, "affine_zero": 0.0},
}


def run_symmetric_closure(config: dict | None = None) -> ScenarioReport:
    cfg = _merge(_SYMMETRIC_DEFAULTS, config)
    thr = cfg["thresholds"]
    g = make_catalog(cfg["g"], **cfg["g_params"])
    h = make_catalog(cfg["h"], **cfg["h_params"])
    win = Interval(*cfg["window"])

    prof_g = symmetric_profile(g, win, cfg["scales"], threshold=thr["rho_final"])
    prof_h = symmetric_profile(h, win, cfg["scales"], threshold=thr["rho_final"])
    prof_c = symmetric_profile(compose(g, invert(h)), win, cfg["scales"], threshold=thr["rho_final"])

    aff = make_catalog("affine", **cfg["affine"])
    prof_a = symmetric_profile(aff, Interval(*cfg["affine_window"]), cfg["scales"], threshold=thr["rho_final"])

    W = float(cfg["trusted_halfwidth"])
    rough = compose(make_catalog("g_tiled", window=(-W, W)), make_catalog("h_parabolic", window=(-W, W)))
    prof_r = symmetric_profile(
        rough, Interval(*cfg["noncompact_window"]), cfg["noncompact_scales"], threshold=thr["rho_final"]
    )

    rep = ScenarioReport("symmetric_closure", cfg)
    rep.profiles = {
        "rho_g": prof_g,
        "rho_h": prof_h,
        "rho_composite": prof_c,
        "rho_affine": prof_a,
        "rho_noncompact": prof_r,
    }
    rep.findings = {
        "g_final": prof_g.final_value,
        "h_final": prof_h.final_value,
        "composite_final": prof_c.final_value,
        "affine_max": float(np.max(prof_a.values)),
        "noncompact_final": prof_r.final_value,
    }
    rep.verdicts = {
        "g_symmetric": _verdict(prof_g.final_value < thr["rho_final"]),
        "h_symmetric": _verdict(prof_h.final_value < thr["rho_final"]),
        "composite_symmetric": _verdict(prof_c.final_value < thr["rho_final"]),
        "affine_exact_zero": _verdict(float(np.max(prof_a.values)) <= thr["affine_zero"]),
        "noncompact_profile": INFO,
    }
    return rep


# ---------------------------------------------------------------------------
# vanishing Carleson boxes for the barycentric extension of a smooth uc map

_DE_DEFAULTS = {
    "h": "ss_uc_smooth",
    "h_params": {"amp": 0.3, "freq": 1.0, "decay": 16.0, "phase": 0.0},
    "window": [-8.0, 8.0],
    "top": 8.0,
    "depth": 10,
    "stride": 0.5,
    "n_nodes": 2048,
    "chunk": 256,
    "fd_eps": 1e-4,
    "scan_window": [-6.0, 6.0],
    "scales": [8.0 * 2.0 ** -k for k in range(1, 10)],
    "companion_depth": 6,
    "thresholds": {
        "profile_threshold": 0.05,
        "final_fraction": 0.5,
        "doubling_rel": 0.10,
        "control_sup": 1e-8,
        "monotone_slack": 0.0,
    },
}


def _de_profile(boundary, cfg, stride):
    E = de_extend_line(boundary, n_nodes=int(cfg["n_nodes"]), chunk=int(cfg["chunk"]))
    grid = GridSpec(Interval(*cfg["window"]), top=float(cfg["top"]), depth=int(cfg["depth"]), stride=stride)
    fld = complex_dilatation(E, grid, fd_eps=float(cfg["fd_eps"]))
    dens = BoxDensity.from_field(fld)
    prof = vanishing_profile(
        dens, Interval(*cfg["scan_window"]), cfg["scales"], threshold=cfg["thresholds"]["profile_threshold"]
    )
    return fld, prof


def run_de_vanishing(config: dict | None = None) -> ScenarioReport:
    cfg = _merge(_DE_DEFAULTS, config)
    thr = cfg["thresholds"]
    boundary = make_catalog(cfg["h"], **cfg["h_params"])

    fld, prof = _de_profile(boundary, cfg, float(cfg["stride"]))
    asym = asymptotic_profile(fld, threshold=thr["profile_threshold"])

    # the halved-stride rerun certifies the grid resolves the field
    _, prof2 = _de_profile(boundary, cfg, 0.5 * float(cfg["stride"]))
    denom = np.maximum(np.abs(prof.values), 1e-12 * max(1.0, float(np.max(prof.values))))
    doubling_rel = float(np.max(np.abs(prof2.values - prof.values) / denom))

    aff = make_catalog("affine", a=2.0, b=-1.0)
    E_aff = de_extend_line(aff, n_nodes=int(cfg["n_nodes"]), chunk=int(cfg["chunk"]))
    aff_grid = GridSpec(Interval(-2.0, 2.0), top=2.0, depth=4, stride=float(cfg["stride"]))
    aff_sup = complex_dilatation(E_aff, aff_grid, fd_eps=float(cfg["fd_eps"])).sup_norm

    comp_cfg = dict(cfg)
    comp_cfg["depth"] = int(cfg["companion_depth"])
    comp_cfg["scales"] = [s for s in cfg["scales"] if s > cfg["top"] * 2.0 ** -int(cfg["companion_depth"])]
    comp_fld, comp_prof = _de_profile(make_catalog("h_parabolic"), comp_cfg, float(cfg["stride"]))

    rep = ScenarioReport("de_vanishing", cfg)
    rep.profiles = {
        "box_profile": prof,
        "box_profile_doubled": prof2,
        "asymptotic": asym,
        "companion_parabolic": comp_prof,
    }
    rep.findings = {
        "sup_mu": fld.sup_norm,
        "final": prof.final_value,
        "max": float(np.max(prof.values)),
        "doubling_rel_change": doubling_rel,
        "asymptotically_conformal": bool(asym.meta["asymptotically_conformal"]),
        "affine_control_sup": float(aff_sup),
        "companion_sup": comp_fld.sup_norm,
        "companion_final": comp_prof.final_value,
    }
    rep.verdicts = {
        "tail_nonincreasing": _verdict(prof.nonincreasing_tail(3, rel_slack=thr["monotone_slack"])),
        "small_box_drop": _verdict(prof.final_value < thr["final_fraction"] * float(np.max(prof.values))),
        "grid_doubling_stable": _verdict(doubling_rel < thr["doubling_rel"]),
        "affine_control_conformal": _verdict(float(aff_sup) < thr["control_sup"]),
        "companion_profile": INFO,
    }
    return rep


# ---------------------------------------------------------------------------
# chain-rule magnitude for a pair of triangle extensions on a shared grid

_CHAIN_DEFAULTS = {
    "g": "ss_uc_smooth",
    "h": "ss_uc_smooth",
    "g_params": {"amp": 0.3, "freq": 1.0, "decay": 16.0, "phase": 0.0},
    "h_params": {"amp": 0.25, "freq": 1.7, "decay": 12.0, "phase": 0.7},
    "window": [-6.0, 6.0],
    "top": 4.0,
    "depth": 8,
    "stride": 0.5,
    "scan_window": [-5.0, 5.0],
    "scales": [4.0 * 2.0 ** -k for k in range(1, 8)],
    "im_ratio_heights": [2.0 ** -j for j in range(0, 9)],
    "im_ratio_columns": 23,
    "im_ratio_margin": 0.5,
    "box_lengths": [1.0, 0.5, 0.25],
    "box_anchor": 0.3,
    "pair_seed": 7,
    "n_pairs": 12,
    "thresholds": {
        "alpha_ratio": 2.0,
        "profile_threshold": 0.05,
        "self_zero": 0.0,
        "ratio_floor": 0.0,
        "decrease_margin": 0.0,
    },
}


def run_chain_rule(config: dict | None = None) -> ScenarioReport:
    cfg = _merge(_CHAIN_DEFAULTS, config)
    thr = cfg["thresholds"]
    G = ba_extend(make_catalog(cfg["g"], **cfg["g_params"]))
    H = ba_extend(make_catalog(cfg["h"], **cfg["h_params"]))
    grid = GridSpec(Interval(*cfg["window"]), top=float(cfg["top"]), depth=int(cfg["depth"]), stride=float(cfg["stride"]))
    mu_g = complex_dilatation(G, grid)
    mu_h = complex_dilatation(H, grid)

    chain = chain_dilatation_mag(mu_g, mu_h)
    prof = vanishing_profile(
        BoxDensity.from_field(chain),
        Interval(*cfg["scan_window"]),
        cfg["scales"],
        threshold=thr["profile_threshold"],
    )
    self_sup = chain_dilatation_mag(mu_h, mu_h).sup_norm

    win = Interval(*cfg["window"])
    m = float(cfg["im_ratio_margin"])
    cols = np.linspace(win.a + m, win.b - m, int(cfg["im_ratio_columns"]))
    pts = np.concatenate([cols + 1j * float(y) for y in cfg["im_ratio_heights"]])
    _, r_lo, r_hi = im_ratio_check(H, pts)

    a0 = float(cfg["box_anchor"])
    alphas = [box_image_check(H, Interval(a0, a0 + float(L))) for L in cfg["box_lengths"]]
    alpha_ratio = max(alphas) / min(alphas)

    rng = np.random.default_rng(int(cfg["pair_seed"]))
    n = int(cfg["n_pairs"])
    zs = rng.uniform(win.a + m, win.b - m, n) + 1j * np.exp(rng.uniform(np.log(0.02), np.log(2.0), n))
    ws = zs + (rng.uniform(-1, 1, n) + 1j * rng.uniform(0.2, 1.0, n)) * zs.imag
    worst, _ = bilipschitz_estimate(H, list(zip(zs, ws)))

    rep = ScenarioReport("chain_rule", cfg)
    rep.profiles = {"chain_profile": prof}
    rep.findings = {
        "sup_mu_g": mu_g.sup_norm,
        "sup_mu_h": mu_h.sup_norm,
        "chain_sup": chain.sup_norm,
        "self_chain_sup": float(self_sup),
        "im_ratio_min": r_lo,
        "im_ratio_max": r_hi,
        "box_alphas": [float(a) for a in alphas],
        "alpha_ratio": float(alpha_ratio),
        "bilipschitz_worst": float(worst),
    }
    rep.verdicts = {
        "chain_tail_decreasing": _verdict(prof.strictly_decreasing_tail(3, margin=thr["decrease_margin"])),
        "self_chain_zero": _verdict(float(self_sup) <= thr["self_zero"]),
        "im_ratio_positive": _verdict(r_lo > thr["ratio_floor"]),
        "alpha_stable": _verdict(alpha_ratio < thr["alpha_ratio"]),
        "bilipschitz_bound": INFO,
    }
    return rep


# ---------------------------------------------------------------------------
# circle/line comparison through the Cayley transform

_CAYLEY_DEFAULTS = {
    "circle": "circle_from_lift",
    "circle_params": {"amp": 0.25, "wave": 2, "phase": 0.0},
    "disk_nodes": 512,
    "field_depth": 5,
    "top_gap": 0.5,
    "angular_stride": 0.5,
    "disk_scales": [0.5 * 2.0 ** -k for k in range(0, 5)],
    "n_centers": 8,
    "pullback_window": [-2.0, 2.0],
    "pullback_scales": [2.0 ** -k for k in range(0, 4)],
    "quad_tol": 1e-6,
    "arc_window": [-0.5, 0.5],
    "arc_scales": [2.0 ** -k for k in range(2, 7)],
    "line_window": [-100.0, 100.0],
    "line_scales": [2.0 ** -k for k in range(0, 7)],
    "thresholds": {"plateau_floor": 0.3, "vmo_final": 0.05, "control_sup": 1e-3},
}


class _PolarAbsField:
    """|mu| samples on circles 1 - u_k, interpolated in (angle, log2 u)."""

    def __init__(self, extension, depth: int, top_gap: float, stride: float):
        self.us = np.asarray([top_gap * 2.0 ** -k for k in range(depth + 1)])
        self.thetas = []
        self.rows = []
        for u in self.us:
            m = max(8, int(round(2.0 * np.pi * (1.0 - u) / (stride * u))))
            th = (np.arange(m) + 0.5) * (2.0 * np.pi / m)
            mu = extension.dilatation((1.0 - u) * np.exp(1j * th))
            self.thetas.append(th)
            self.rows.append(np.abs(mu))

    @property
    def sup_norm(self) -> float:
        return float(max(np.max(r) for r in self.rows))

    def abs_interp(self, theta, u):
        theta = np.mod(np.asarray(theta, dtype=float), 2.0 * np.pi)
        u = np.clip(np.asarray(u, dtype=float), self.us[-1], self.us[0])
        K = self.us.size - 1
        lus = np.log2(self.us)
        kf = np.interp(np.log2(u), lus[::-1], np.arange(K, -1.0, -1.0))
        k0 = np.clip(np.floor(kf).astype(int), 0, K)
        k1 = np.clip(k0 + 1, 0, K)
        t = np.clip(kf - k0, 0.0, 1.0)
        out = np.zeros(theta.shape)
        for k in np.unique(np.concatenate([k0, k1])):
            th = self.thetas[int(k)]
            vals = self.rows[int(k)]
            # periodic padding so boxes straddling angle 0 interpolate cleanly
            thw = np.concatenate([th - 2.0 * np.pi, th, th + 2.0 * np.pi])
            vw = np.concatenate([vals, vals, vals])
            sel = k0 == k
            if np.any(sel):
                out[sel] += (1.0 - t[sel]) * np.interp(theta[sel], thw, vw)
            sel = k1 == k
            if np.any(sel):
                out[sel] += t[sel] * np.interp(theta[sel], thw, vw)
        return out

    def density(self) -> DiskDensity:
        def fn(w):
            u = np.maximum(1.0 - np.abs(w), 1e-300)
            return self.abs_interp(np.angle(w), u) ** 2 / u

        return DiskDensity(fn=fn, u_floor=float(self.us[-1]), label="disk |mu|^2/(1-|w|)")


def run_cayley_comparison(config: dict | None = None) -> ScenarioReport:
    cfg = _merge(_CAYLEY_DEFAULTS, config)
    thr = cfg["thresholds"]
    tol = float(cfg["quad_tol"])

    phi = make_catalog(cfg["circle"], **cfg["circle_params"])
    E = DiskDEMap(phi, n_nodes=int(cfg["disk_nodes"]))
    fld = _PolarAbsField(E, int(cfg["field_depth"]), float(cfg["top_gap"]), float(cfg["angular_stride"]))
    dens = fld.density()
    disk_prof = disk_vanishing_profile(
        dens, cfg["disk_scales"], threshold=thr["vmo_final"], n_centers=int(cfg["n_centers"]), tol=tol
    )

    pb = pullback_cayley(dens)
    pbd = BoxDensity(fn=pb.fn, y_floor=2.0 * float(fld.us[-1]), label=pb.label)
    pull_prof = vanishing_profile(
        pbd, Interval(*cfg["pullback_window"]), cfg["pullback_scales"], threshold=thr["vmo_final"], tol=tol
    )

    ident = make_catalog(cfg["circle"], amp=0.0, wave=int(cfg["circle_params"]["wave"]))
    ctrl = _PolarAbsField(
        DiskDEMap(ident, n_nodes=int(cfg["disk_nodes"])),
        max(2, int(cfg["field_depth"]) - 2),
        float(cfg["top_gap"]),
        float(cfg["angular_stride"]),
    )

    # boundary singularity seen from both sides of the transform
    v = RealFunction(fn=lambda t: np.log(2.0 * np.abs(np.sin(0.5 * t))), window=Interval(-np.pi, np.pi), name="v")
    arc_prof = vmo_profile(v, Interval(*cfg["arc_window"]), cfg["arc_scales"], threshold=thr["vmo_final"])
    u_fn = RealFunction(
        fn=lambda x: np.log(2.0) - 0.5 * np.log(x * x + 1.0), window=Interval(-1e12, 1e12), name="u"
    )
    line_prof = vmo_profile(u_fn, Interval(*cfg["line_window"]), cfg["line_scales"], threshold=thr["vmo_final"])

    rep = ScenarioReport("cayley_comparison", cfg)
    rep.profiles = {
        "disk_boxes": disk_prof,
        "pullback_boxes": pull_prof,
        "arc_oscillation": arc_prof,
        "line_oscillation": line_prof,
    }
    rep.findings = {
        "disk_sup_mu": fld.sup_norm,
        "disk_final": disk_prof.final_value,
        "pullback_final": pull_prof.final_value,
        "identity_control_sup": ctrl.sup_norm,
        "arc_min": float(np.min(arc_prof.values)),
        "line_final": line_prof.final_value,
    }
    rep.verdicts = {
        "disk_vanishing": _verdict(bool(disk_prof.meta["vanishing"])),
        "pullback_vanishing": _verdict(pull_prof.final_value < thr["vmo_final"]),
        "identity_control_conformal": _verdict(ctrl.sup_norm < thr["control_sup"]),
        "arc_plateau": _verdict(float(np.min(arc_prof.values)) >= thr["plateau_floor"]),
        "line_decay": _verdict(line_prof.final_value < thr["vmo_final"]),
    }
    return rep


# ---------------------------------------------------------------------------

SCENARIOS = {
    "composition_failure": (run_composition_failure, "small-oscillation factors, plateauing composite"),
    "uc_closure": (run_uc_closure, "composition with inverses inside the uniformly continuous class"),
    "symmetric_closure": (run_symmetric_closure, "symmetry quotient decay, with an affine exactness control"),
    "de_vanishing": (run_de_vanishing, "vanishing Carleson boxes for a barycentric extension"),
    "chain_rule": (run_chain_rule, "chain-rule magnitude for a pair of triangle extensions"),
    "cayley_comparison": (run_cayley_comparison, "circle/line comparison through the Cayley transform"),
}


def run_scenario(name: str, config: dict | None = None) -> ScenarioReport:
    """Dispatch by scenario name; unknown names list the catalog."""
    if name not in SCENARIOS:
        raise UnknownName(f"unknown scenario {name!r}; choose from {', '.join(sorted(SCENARIOS))}")
    return SCENARIOS[name][0](config)
