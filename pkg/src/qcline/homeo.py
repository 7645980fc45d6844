"""Increasing homeomorphisms of the line and their quasisymmetry diagnostics.

The central object is :class:`Homeo1D`, a strictly increasing map with an
optional derivative, a trusted window, and a kind tag.  Closed-form kinds
evaluate everywhere; sampled kinds refuse to extrapolate.  All scan-type
diagnostics (quasisymmetry constant, symmetric profile, doubling constant,
modulus of continuity) share one gridding convention: interval centers sit on
a lattice anchored at the origin with stride ``scale/4``, so enlarging the
window never changes which intervals are scanned inside the old one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    BadParams,
    DegenerateStep,
    EmptyWindow,
    MissingDerivative,
    NoConvergence,
    NonpositiveDerivative,
    OutOfRange,
    OutOfWindow,
    SchemaMismatch,
    UnknownName,
)
from .funcs import RealFunction
from .intervals import Interval
from .profiles import Profile, format_float

HOMEO_CSV_HEADER = "x,h_x"

# default trusted window for closed-form catalog maps; scans beyond this are
# almost surely a configuration mistake
_BIG = 1.0e6


def anchored_starts(a: float, b: float, length: float, stride: float) -> np.ndarray:
    """Left endpoints k*stride with [s, s+length] inside [a, b].

    Falls back to the single start ``a`` when no lattice point fits, so a
    valid window always yields at least one interval.
    """
    if length > b - a:
        return np.empty(0)
    tiny = 1e-12 * (1.0 + abs(a) + abs(b))
    k0 = math.ceil((a - tiny) / stride)
    k1 = math.floor((b - length + tiny) / stride)
    if k1 < k0:
        return np.asarray([a])
    return stride * np.arange(k0, k1 + 1)


@dataclass(frozen=True)
class Homeo1D:
    """Strictly increasing map of the real line.

    Parameters
    ----------
    fn : callable
        Vectorized evaluation.
    window : Interval
        Trusted window for scans; hard domain boundary when ``bounded``.
    deriv : callable, optional
        Vectorized derivative.
    kind : str
        One of ``closed-form``, ``composed``, ``sampled-monotone-interpolant``.
    inverse_fn : callable, optional
        Exact inverse when available in closed form.
    bounded : bool
        True when evaluation outside ``window`` must raise
        :class:`OutOfWindow` (sampled data, windowed catalog entries).
    """

    fn: Callable
    window: Interval
    deriv: Optional[Callable] = None
    kind: str = "closed-form"
    name: str = "h"
    inverse_fn: Optional[Callable] = None
    bounded: bool = False
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("closed-form", "composed", "sampled-monotone-interpolant"):
            raise BadParams(f"unknown kind {self.kind!r}")

    def _check_window(self, x: np.ndarray) -> None:
        if not self.bounded:
            return
        slack = 1e-9 * (1.0 + abs(self.window.a) + abs(self.window.b))
        if np.any(x < self.window.a - slack) or np.any(x > self.window.b + slack):
            raise OutOfWindow(f"{self.name}: evaluation outside window {self.window}")

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        self._check_window(x)
        return self.fn(x)

    def __call__(self, x):
        out = self.eval(x)
        if np.ndim(x) == 0:
            return float(out)
        return out

    def deriv_eval(self, x):
        if self.deriv is None:
            raise MissingDerivative(f"{self.name} carries no derivative")
        x = np.asarray(x, dtype=float)
        self._check_window(x)
        return self.deriv(x)

    @property
    def has_deriv(self) -> bool:
        return self.deriv is not None


@dataclass(frozen=True)
class CircleHomeo:
    """Circle homeomorphism given by an increasing lift with lift(t+2pi) = lift(t)+2pi."""

    lift_fn: Callable
    lift_deriv: Optional[Callable] = None
    name: str = "phi"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        theta = np.linspace(0.0, 2.0 * np.pi, 257)
        per = self.lift_fn(theta + 2.0 * np.pi) - self.lift_fn(theta) - 2.0 * np.pi
        if np.max(np.abs(per)) > 1e-9:
            raise BadParams(f"{self.name}: lift is not 2pi-equivariant")
        vals = self.lift_fn(theta)
        if np.any(np.diff(vals) <= 0):
            raise NonpositiveDerivative(f"{self.name}: lift is not strictly increasing")

    def lift(self, theta):
        return self.lift_fn(np.asarray(theta, dtype=float))

    def unit_values(self, theta):
        """Values of the induced map on the unit circle at e^{i theta}."""
        return np.exp(1j * self.lift(theta))


# ---------------------------------------------------------------------------
# evaluation-level operations


def inverse_eval(h: Homeo1D, y, max_iter: int = 200):
    """Solve h(x) = y by bracketing bisection with a Newton polish.

    Residual target is 1e-12 * (1 + |y|) per component.  Raises
    :class:`OutOfRange` when no bracket exists and :class:`NoConvergence`
    when the budget runs out (the best iterate rides on the exception).
    """
    y_in = np.asarray(y, dtype=float)
    y1 = np.atleast_1d(y_in).astype(float)
    lo = np.full(y1.shape, h.window.a)
    hi = np.full(y1.shape, h.window.b)
    flo = h.eval(lo)
    fhi = h.eval(hi)
    if h.bounded:
        slack = 1e-9 * (1.0 + np.abs(y1))
        if np.any(y1 < flo - slack) or np.any(y1 > fhi + slack):
            raise OutOfRange(f"{h.name}: target outside attainable range")
        y1 = np.clip(y1, flo, fhi)
    else:
        # geometric bracket expansion for globally defined maps
        step = np.maximum(hi - lo, 1.0)
        for _ in range(80):
            need = fhi < y1
            if not np.any(need):
                break
            hi = np.where(need, hi + step, hi)
            step = np.where(need, 2.0 * step, step)
            fhi = np.where(need, h.eval(hi), fhi)
        else:
            raise OutOfRange(f"{h.name}: could not bracket target from above")
        step = np.maximum(hi - lo, 1.0)
        for _ in range(80):
            need = flo > y1
            if not np.any(need):
                break
            lo = np.where(need, lo - step, lo)
            step = np.where(need, 2.0 * step, step)
            flo = np.where(need, h.eval(lo), flo)
        else:
            raise OutOfRange(f"{h.name}: could not bracket target from below")

    tol = 1e-12 * (1.0 + np.abs(y1))
    x = 0.5 * (lo + hi)
    used = 0
    for used in range(1, 49):
        fx = h.eval(x)
        upper = fx >= y1
        hi = np.where(upper, x, hi)
        lo = np.where(upper, lo, x)
        x = 0.5 * (lo + hi)
    fx = h.eval(x)
    if h.has_deriv:
        for _ in range(12):
            used += 1
            res = fx - y1
            if np.all(np.abs(res) <= tol):
                break
            d = h.deriv_eval(x)
            with np.errstate(divide="ignore", invalid="ignore"):
                xn = x - res / d
            bad = ~np.isfinite(xn) | (xn <= lo) | (xn >= hi)
            xn = np.where(bad, 0.5 * (lo + hi), xn)
            x = xn
            fx = h.eval(x)
            upper = fx >= y1
            hi = np.where(upper & (x < hi), x, hi)
            lo = np.where(~upper & (x > lo), x, lo)
    while np.any(np.abs(fx - y1) > tol):
        if used >= max_iter:
            raise NoConvergence(
                f"{h.name}: inverse residual {float(np.max(np.abs(fx - y1))):.3e} after {max_iter} iterations",
                best=x if y_in.ndim else float(x[0]),
            )
        used += 1
        upper = fx >= y1
        hi = np.where(upper, x, hi)
        lo = np.where(upper, lo, x)
        x = 0.5 * (lo + hi)
        fx = h.eval(x)
    if y_in.ndim == 0:
        return float(x[0])
    return x


def invert(h: Homeo1D) -> Homeo1D:
    """Inverse as a first-class map; exact when ``h`` carries a closed form."""
    ra, rb = float(h.eval(np.asarray(h.window.a))), float(h.eval(np.asarray(h.window.b)))
    window = Interval(ra, rb)
    if h.inverse_fn is not None:
        inv = h.inverse_fn
    else:
        inv = lambda y: inverse_eval(h, y)
    dfn = None
    if h.has_deriv:
        hd = h.deriv
        dfn = lambda y: 1.0 / hd(np.asarray(inv(y), dtype=float))
    return Homeo1D(
        fn=lambda y: np.asarray(inv(y), dtype=float),
        window=window,
        deriv=dfn,
        kind="composed",
        name=f"inv_{h.name}",
        inverse_fn=h.fn,
        bounded=h.bounded,
    )


def compose(g: Homeo1D, h: Homeo1D) -> Homeo1D:
    """g after h, with window {x in h.window : h(x) in g.window}."""
    ra = float(h.eval(np.asarray(h.window.a)))
    rb = float(h.eval(np.asarray(h.window.b)))
    lo_y = max(ra, g.window.a)
    hi_y = min(rb, g.window.b)
    if not lo_y < hi_y:
        raise EmptyWindow(f"compose({g.name}, {h.name}): image misses g's window")
    lo_x = h.window.a if lo_y <= ra else float(inverse_eval(h, lo_y))
    hi_x = h.window.b if hi_y >= rb else float(inverse_eval(h, hi_y))
    if not lo_x < hi_x:
        raise EmptyWindow(f"compose({g.name}, {h.name}): empty parameter window")
    window = Interval(lo_x, hi_x)
    gfn, hfn = g.fn, h.fn
    dfn = None
    if g.has_deriv and h.has_deriv:
        gd, hd = g.deriv, h.deriv
        dfn = lambda x: gd(hfn(x)) * hd(x)
        probe = np.linspace(window.a, window.b, 65)
        if np.any(dfn(probe) <= 0):
            raise NonpositiveDerivative(f"compose({g.name}, {h.name}): derivative <= 0 on probe grid")
    inv = None
    if g.inverse_fn is not None and h.inverse_fn is not None:
        gi, hi_ = g.inverse_fn, h.inverse_fn
        inv = lambda y: hi_(gi(y))
    return Homeo1D(
        fn=lambda x: gfn(hfn(x)),
        window=window,
        deriv=dfn,
        kind="composed",
        name=f"{g.name}_o_{h.name}",
        inverse_fn=inv,
        bounded=g.bounded or h.bounded,
    )


def qs_quotient(h: Homeo1D, x, t):
    """(h(x+t) - h(x)) / (h(x) - h(x-t)) for t > 0."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise DegenerateStep("quasisymmetry step must be positive")
    x_arr = np.asarray(x, dtype=float)
    num = h.eval(x_arr + t_arr) - h.eval(x_arr)
    den = h.eval(x_arr) - h.eval(x_arr - t_arr)
    if np.any(np.abs(den) < 1e-300) or np.any(~np.isfinite(den)):
        raise DegenerateStep("vanishing denominator in quasisymmetry quotient")
    out = num / den
    if np.ndim(x) == 0 and np.ndim(t) == 0:
        return float(out)
    return out


def _sym_scan(h: Homeo1D, window: Interval, scales, stride_frac: float):
    """Per-scale (max of max(q, 1/q), argmax center)."""
    scales = np.asarray(sorted(set(float(s) for s in scales), reverse=True))
    if scales.size == 0 or np.any(scales <= 0):
        raise BadParams("scales must be positive")
    if 2.0 * scales[0] >= window.length:
        raise BadParams(f"largest scale {scales[0]:g} does not fit window {window} with margin")
    vals = np.empty(scales.size)
    arg = np.empty(scales.size)
    for i, t in enumerate(scales):
        xs = anchored_starts(window.a + t, window.b - t, 0.0, stride_frac * t)
        q = qs_quotient(h, xs, t)
        m = np.maximum(q, 1.0 / q)
        j = int(np.argmax(m))
        vals[i] = float(m[j])
        arg[i] = float(xs[j])
    return scales, vals, arg


def qs_constant(h: Homeo1D, window: Interval, scales, stride_frac: float = 0.25) -> float:
    """Scanned quasisymmetry constant max(q, 1/q) over the grid family."""
    _, vals, _ = _sym_scan(h, window, scales, stride_frac)
    return float(np.max(vals))


def symmetric_profile(
    h: Homeo1D, window: Interval, scales, stride_frac: float = 0.25, threshold: float = 0.02
) -> Profile:
    """rho(t) = sup_x max(q, 1/q) - 1 along descending scales.

    ``meta['symmetric']`` records whether the finest scale dipped below the
    threshold, the operational signature of a symmetric map.
    """
    sc, vals, arg = _sym_scan(h, window, scales, stride_frac)
    rho = vals - 1.0
    meta = {
        "window": (window.a, window.b),
        "stride_frac": stride_frac,
        "threshold": threshold,
        "symmetric": bool(rho[-1] < threshold),
        "map": h.name,
    }
    return Profile(sc, rho, arg, meta)


def doubling_constant(h: Homeo1D, window: Interval, scales, stride_frac: float = 0.25) -> float:
    """sup over scanned I of m_h(2I)/m_h(I); centers range over the window.

    Intervals may protrude past the scan window when the map itself is
    globally defined; only bounded maps restrict the centers.
    """
    scales = np.asarray(sorted(set(float(s) for s in scales), reverse=True))
    if np.any(scales <= 0):
        raise BadParams("scales must be positive")
    best = -np.inf
    for s in scales:
        a, b = window.a, window.b
        if h.bounded:
            a = max(a, h.window.a + s)
            b = min(b, h.window.b - s)
            if a > b:
                continue
        xs = anchored_starts(a, b, 0.0, stride_frac * s)
        half = 0.5 * s
        num = h.eval(xs + s) - h.eval(xs - s)
        den = h.eval(xs + half) - h.eval(xs - half)
        if np.any(den <= 0):
            raise DegenerateStep("doubling scan hit a nonpositive interval mass")
        best = max(best, float(np.max(num / den)))
    if not np.isfinite(best):
        raise BadParams("no scale fits the window")
    return best


def modulus_of_continuity(
    h: Homeo1D, window: Interval, scales, stride_frac: float = 0.25, uc_threshold: float = 1.0
) -> Profile:
    """omega(delta) = sup_x (h(x+delta) - h(x)) over the scan window."""
    scales = np.asarray(sorted(set(float(s) for s in scales), reverse=True))
    if np.any(scales <= 0):
        raise BadParams("scales must be positive")
    if scales[0] >= window.length:
        raise BadParams("largest scale exceeds the window")
    vals = np.empty(scales.size)
    arg = np.empty(scales.size)
    for i, d in enumerate(scales):
        xs = anchored_starts(window.a, window.b, d, stride_frac * d)
        inc = h.eval(xs + d) - h.eval(xs)
        j = int(np.argmax(inc))
        vals[i] = float(inc[j])
        arg[i] = float(xs[j] + 0.5 * d)
    meta = {
        "window": (window.a, window.b),
        "stride_frac": stride_frac,
        "uc_threshold": uc_threshold,
        "uniformly_continuous": bool(vals[-1] < uc_threshold),
        "map": h.name,
    }
    return Profile(scales, vals, arg, meta)


def log_deriv(h: Homeo1D) -> RealFunction:
    """u = log h' as a RealFunction on h's window."""
    if not h.has_deriv:
        raise MissingDerivative(f"{h.name} carries no derivative")
    hd = h.deriv

    def fn(x):
        d = hd(np.asarray(x, dtype=float))
        if np.any(d <= 0):
            raise NonpositiveDerivative(f"log h' undefined: h' <= 0 for {h.name}")
        return np.log(d)

    return RealFunction(fn=fn, window=h.window, prefix=None, name=f"log_d{h.name}")


# ---------------------------------------------------------------------------
# catalog

_TILE_P = 22.0
_TILE_H = 143.0 / 12.0


def _tile_base(r):
    """One increasing tile on [0, 22]: rotated parabola arc then the original."""
    r = np.asarray(r, dtype=float)
    left = 6.0 - (12.0 - r) ** 2 / 24.0
    right = 71.0 / 12.0 + (r - 10.0) ** 2 / 24.0
    return np.where(r <= 11.0, left, right)


def _tile_base_d(r):
    r = np.asarray(r, dtype=float)
    return np.where(r <= 11.0, (12.0 - r) / 12.0, (r - 10.0) / 12.0)


def _tile_base_inv(s):
    s = np.asarray(s, dtype=float)
    left = 12.0 - np.sqrt(np.maximum(24.0 * (6.0 - s), 0.0))
    right = 10.0 + np.sqrt(np.maximum(24.0 * (s - 71.0 / 12.0), 0.0))
    return np.where(s <= 143.0 / 24.0, left, right)


def _g_tiled(x):
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    n = np.floor(ax / _TILE_P)
    r = ax - _TILE_P * n
    val = n * _TILE_H + _tile_base(r)
    return np.sign(x) * val


def _g_tiled_d(x):
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    r = ax - _TILE_P * np.floor(ax / _TILE_P)
    return _tile_base_d(r)


def _g_tiled_inv(y):
    y = np.asarray(y, dtype=float)
    ay = np.abs(y)
    m = np.floor(ay / _TILE_H)
    s = ay - _TILE_H * m
    return np.sign(y) * (m * _TILE_P + _tile_base_inv(s))


def _h_parabolic(x):
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, (x + 1.0) ** 2 - 1.0, 1.0 - (x - 1.0) ** 2)


def _h_parabolic_d(x):
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, 2.0 * (x + 1.0), 2.0 * (1.0 - x))


def _h_parabolic_inv(y):
    y = np.asarray(y, dtype=float)
    up = np.sqrt(np.maximum(y, 0.0) + 1.0) - 1.0
    dn = 1.0 - np.sqrt(1.0 - np.minimum(y, 0.0))
    return np.where(y >= 0, up, dn)


def _build_identity(window=(-_BIG, _BIG)):
    return Homeo1D(
        fn=lambda x: np.asarray(x, dtype=float) + 0.0,
        window=Interval(*window),
        deriv=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        name="identity",
        inverse_fn=lambda y: np.asarray(y, dtype=float) + 0.0,
    )


def _build_affine(a=2.0, b=1.0, window=(-_BIG, _BIG)):
    a = float(a)
    b = float(b)
    if a <= 0:
        raise BadParams("affine slope must be positive")
    return Homeo1D(
        fn=lambda x: a * np.asarray(x, dtype=float) + b,
        window=Interval(*window),
        deriv=lambda x: np.full_like(np.asarray(x, dtype=float), a),
        name="affine",
        inverse_fn=lambda y: (np.asarray(y, dtype=float) - b) / a,
        params={"a": a, "b": b},
    )


def _build_h_parabolic(window=(-_BIG, _BIG)):
    return Homeo1D(
        fn=_h_parabolic,
        window=Interval(*window),
        deriv=_h_parabolic_d,
        name="h_parabolic",
        inverse_fn=_h_parabolic_inv,
    )


def _build_g_tiled(window=(-_BIG, _BIG)):
    return Homeo1D(
        fn=_g_tiled,
        window=Interval(*window),
        deriv=_g_tiled_d,
        name="g_tiled",
        inverse_fn=_g_tiled_inv,
    )


def _build_h_exp_window(window=(-5.0, 5.0)):
    return Homeo1D(
        fn=lambda x: np.expm1(np.asarray(x, dtype=float)),
        window=Interval(*window),
        deriv=lambda x: np.exp(np.asarray(x, dtype=float)),
        name="h_exp_window",
        inverse_fn=lambda y: np.log1p(np.asarray(y, dtype=float)),
        bounded=True,
        params={"window": tuple(window)},
    )


def _build_ss_uc_smooth(amp=0.3, freq=1.0, decay=16.0, phase=0.0, window=(-_BIG, _BIG)):
    amp = float(amp)
    freq = float(freq)
    decay = float(decay)
    phase = float(phase)
    if amp < 0 or freq <= 0 or decay <= 0:
        raise BadParams("need amp >= 0, freq > 0, decay > 0")
    # |h' - 1| <= amp*(freq + 0.858/decay); keep a real margin below 1
    margin = amp * (freq + 0.858 / decay)
    if margin >= 0.95:
        raise BadParams(f"perturbation too strong: derivative margin {margin:.3f} >= 0.95")

    def fn(x):
        x = np.asarray(x, dtype=float)
        return x + amp * np.sin(freq * x + phase) * np.exp(-((x / decay) ** 2))

    def dfn(x):
        x = np.asarray(x, dtype=float)
        damp = np.exp(-((x / decay) ** 2))
        return 1.0 + amp * damp * (
            freq * np.cos(freq * x + phase) - (2.0 * x / decay**2) * np.sin(freq * x + phase)
        )

    return Homeo1D(
        fn=fn,
        window=Interval(*window),
        deriv=dfn,
        name="ss_uc_smooth",
        params={"amp": amp, "freq": freq, "decay": decay, "phase": phase},
    )


def _build_circle_rotation(angle=0.5):
    angle = float(angle)
    return CircleHomeo(
        lift_fn=lambda t: np.asarray(t, dtype=float) + angle,
        lift_deriv=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        name="circle_rotation",
        params={"angle": angle},
    )


def _build_circle_from_lift(amp=0.25, wave=2, phase=0.0):
    amp = float(amp)
    wave = int(wave)
    phase = float(phase)
    if wave < 1:
        raise BadParams("wave number must be a positive integer")
    if amp * wave >= 1.0:
        raise BadParams("need amp*wave < 1 for an increasing lift")
    return CircleHomeo(
        lift_fn=lambda t: np.asarray(t, dtype=float) + amp * np.sin(wave * np.asarray(t, dtype=float) + phase),
        lift_deriv=lambda t: 1.0 + amp * wave * np.cos(wave * np.asarray(t, dtype=float) + phase),
        name="circle_from_lift",
        params={"amp": amp, "wave": wave, "phase": phase},
    )


_CATALOG = {
    "identity": _build_identity,
    "affine": _build_affine,
    "h_parabolic": _build_h_parabolic,
    "g_tiled": _build_g_tiled,
    "h_exp_window": _build_h_exp_window,
    "ss_uc_smooth": _build_ss_uc_smooth,
    "circle_rotation": _build_circle_rotation,
    "circle_from_lift": _build_circle_from_lift,
}


def catalog_names():
    return sorted(_CATALOG)


def make_catalog(name: str, **params):
    """Construct a named catalog map; raises UnknownName / BadParams."""
    if name not in _CATALOG:
        raise UnknownName(f"no catalog entry {name!r}; known: {', '.join(catalog_names())}")
    try:
        return _CATALOG[name](**params)
    except TypeError as exc:
        raise BadParams(f"{name}: {exc}") from exc


# ---------------------------------------------------------------------------
# CSV round trip


def dump_csv(h: Homeo1D, path, n: int = 512, window: Interval | None = None) -> None:
    """Sample table `x,h_x` with 17 significant digits, LF line endings."""
    if n < 4:
        raise BadParams("need at least 4 sample points")
    w = window or h.window
    xs = np.linspace(w.a, w.b, int(n))
    ys = h.eval(xs)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(HOMEO_CSV_HEADER + "\n")
        for x, y in zip(xs, ys):
            fh.write(f"{format_float(x)},{format_float(y)}\n")


def load_csv(path) -> Homeo1D:
    """Rebuild a map from `x,h_x` samples as a monotone cubic interpolant."""
    from scipy.interpolate import PchipInterpolator

    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines or lines[0].strip() != HOMEO_CSV_HEADER:
        raise SchemaMismatch(f"expected header '{HOMEO_CSV_HEADER}'")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 2:
            raise SchemaMismatch(f"malformed row: {ln!r}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise SchemaMismatch(f"non-numeric row: {ln!r}") from exc
    if len(rows) < 4:
        raise SchemaMismatch("need at least 4 sample rows")
    arr = np.asarray(rows, dtype=float)
    xs, ys = arr[:, 0], arr[:, 1]
    if np.any(np.diff(xs) <= 0):
        raise SchemaMismatch("sample abscissae must be strictly increasing")
    if np.any(np.diff(ys) <= 0):
        raise NonpositiveDerivative("sampled values are not strictly increasing")
    interp = PchipInterpolator(xs, ys, extrapolate=False)
    dinterp = interp.derivative()
    return Homeo1D(
        fn=lambda x: np.asarray(interp(np.asarray(x, dtype=float)), dtype=float),
        window=Interval(xs[0], xs[-1]),
        deriv=lambda x: np.asarray(dinterp(np.asarray(x, dtype=float)), dtype=float),
        kind="sampled-monotone-interpolant",
        name="sampled",
        bounded=True,
    )
