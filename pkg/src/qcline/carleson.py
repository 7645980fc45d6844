"""Carleson-box masses, norms, and vanishing profiles on the half-plane.

A box over an interval I is Q_I = I x (0, |I|].  Masses are integrated per
dyadic band (y/2, y] with Gauss-Legendre nodes in y and a composite
Gauss-Legendre rule in x whose panel width tracks the band height, so the
resolution scales with the measure.  The part below the truncation floor is
reported as a geometric tail extrapolated from the last three band masses;
when band masses stop decaying the mass is returned truncated with a
``diverging`` flag instead of a fabricated tail (constant-|mu| densities are
exactly that case).

Sup scans over box positions precompute column integrals on a shared fine
x-grid, locate the best start by prefix sums, then re-integrate the winning
box with the full banded rule.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.ndimage import maximum_filter1d

from .errors import (
    BadParams,
    PoleProximity,
    QuadratureFailure,
    TailDivergence,
    WindowExceeded,
    ZeroMass,
)
from .extension import DilatationField
from .homeo import anchored_starts
from .intervals import Interval
from .profiles import Profile, format_float
from .quadrature import gauss_legendre

BOX_CSV_HEADER = "interval_left,interval_right,mass,mass_over_length,tail_flag"

# dyadic truncation depth: y_floor = |I| * 2**-FLOOR_LEVELS unless overridden
FLOOR_LEVELS = 12


@dataclass(frozen=True)
class BoxDensity:
    """Nonnegative density on the upper half-plane.

    ``fn(x, y)`` must accept broadcast arrays.  ``y_floor`` fixes the
    truncation height; when None each box uses |I| * 2**-12.  ``window``
    restricts admissible boxes when the density is only populated there.
    """

    fn: Callable
    y_floor: Optional[float] = None
    window: Optional[Interval] = None
    label: str = "density"

    def eval(self, x, y):
        return np.asarray(self.fn(np.asarray(x, dtype=float), np.asarray(y, dtype=float)))

    @classmethod
    def from_field(cls, fld: DilatationField, y_floor: Optional[float] = None) -> "BoxDensity":
        """|mu|^2/y against the field's interpolated magnitude.

        The truncation floor defaults to the deepest grid level: below it the
        interpolant would merely clamp, and a clamped |mu| against 1/y
        fabricates a log divergence the data cannot support.
        """
        if y_floor is None:
            y_floor = float(fld.grid.level_heights()[-1])

        def fn(x, y):
            x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
            m = fld.abs_interp(x.ravel(), y.ravel()).reshape(x.shape)
            return m * m / y

        return cls(fn=fn, y_floor=y_floor, window=fld.grid.window, label=f"|mu|^2/y[{fld.source}]")


@dataclass(frozen=True)
class BoxMass:
    """Banded box mass: truncated sum, tail estimate, divergence flag."""

    mass: float
    tail: float
    diverging: bool
    n_bands: int

    @property
    def value(self) -> float:
        return self.mass if self.diverging else self.mass + self.tail

    def __float__(self) -> float:
        return self.value

    def raise_if_diverging(self) -> "BoxMass":
        """Escalate the flag for callers that cannot use a truncated mass."""
        if self.diverging:
            raise TailDivergence(
                f"band masses do not decay (last bands ratio above {_TAIL_RATIO_MAX}); "
                f"truncated mass {self.mass:.6g} has no credible tail"
            )
        return self


def _composite_gl(fn_xy, a: float, b: float, ys: np.ndarray, wy: np.ndarray, panels: int):
    """Composite GL-16 in x (given panel count) against fixed y nodes."""
    xn, xw = gauss_legendre(16)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    X = (mid[:, None] + half[:, None] * xn[None, :]).ravel()
    W = (half[:, None] * xw[None, :]).ravel()
    F = np.broadcast_to(np.asarray(fn_xy(X[:, None], ys[None, :]), dtype=float), (X.size, ys.size))
    return float(W @ F @ wy)


_MAX_QUAD_NODES = 1 << 20  # per-band budget; refusal beats an allocation spiral


def _band_mass(fn_xy, a: float, b: float, y_lo: float, y_hi: float, tol: float, abs_floor: float) -> float:
    """Mass over [a,b] x (y_lo, y_hi] with x panels refined until stable."""
    yn, yw = gauss_legendre(16)
    ys = 0.5 * (y_hi + y_lo) + 0.5 * (y_hi - y_lo) * yn
    wy = 0.5 * (y_hi - y_lo) * yw
    panels = max(1, int(round((b - a) / y_hi)))
    prev = _composite_gl(fn_xy, a, b, ys, wy, panels)
    for _ in range(18):
        panels *= 2
        if panels * 16 > _MAX_QUAD_NODES:
            raise QuadratureFailure(
                f"band (y in ({y_lo:g}, {y_hi:g}]) still unstable at the "
                f"{_MAX_QUAD_NODES}-node budget; loosen tol for rough densities"
            )
        cur = _composite_gl(fn_xy, a, b, ys, wy, panels)
        if abs(cur - prev) <= tol * abs(cur) + abs_floor:
            return cur
        prev = cur
    raise QuadratureFailure(
        f"band (y in ({y_lo:g}, {y_hi:g}]) did not stabilize at {panels} panels"
    )


def _dyadic_bands(top: float, floor: float):
    """(lo, hi, full) bands halving from top until the floor, last one clipped."""
    bands = []
    hi = top
    while hi > floor * (1.0 + 1e-12):
        lo = 0.5 * hi
        if lo < floor:
            bands.append((floor, hi, False))
            break
        bands.append((lo, hi, True))
        hi = lo
    return bands


# band ratios above this are not credibly geometric: the r/(1-r) factor
# would amplify the last band by 9x or more, so the flag wins instead
_TAIL_RATIO_MAX = 0.9


def _tail_from_bands(masses: np.ndarray):
    """(tail, diverging) by geometric extrapolation of the last full bands."""
    tiny = 1e-300
    if masses.size < 3:
        return 0.0, False
    m1, m2, m3 = masses[-3], masses[-2], masses[-1]
    scale = float(np.max(masses))
    if scale <= tiny or m3 <= 1e-14 * scale:
        return 0.0, False
    if m3 >= m2 * _TAIL_RATIO_MAX or m2 >= m1 * _TAIL_RATIO_MAX:
        return 0.0, True
    r = m3 / m2
    return float(m3 * r / (1.0 - r)), False


def _resolve_floor(d: BoxDensity, height: float) -> float:
    floor = d.y_floor if d.y_floor is not None else height * 2.0**-FLOOR_LEVELS
    if floor <= 0 or floor >= height:
        raise BadParams(f"truncation floor {floor:g} must lie in (0, {height:g})")
    return floor


def _check_box_window(d: BoxDensity, iv: Interval):
    if d.window is not None and not d.window.covers(iv):
        raise WindowExceeded(f"box {iv} leaves the density window {d.window}")


def box_mass(d: BoxDensity, iv: Interval, tol: float = 1e-9) -> BoxMass:
    """Mass of the density over Q_I = I x (y_floor, |I|] plus tail report."""
    _check_box_window(d, iv)
    floor = _resolve_floor(d, iv.length)
    bands = _dyadic_bands(iv.length, floor)
    masses = []
    full = []
    running = 0.0
    for lo, hi, is_full in bands:
        m = _band_mass(d.eval, iv.a, iv.b, lo, hi, tol, 1e-14 * max(running, 1e-300))
        if m < -1e-12 * max(running, 1.0):
            raise ZeroMass(f"negative band mass {m:g} in ({lo:g}, {hi:g}]")
        masses.append(m)
        if is_full:
            full.append(m)
        running += m
    tail, diverging = _tail_from_bands(np.asarray(full))
    return BoxMass(mass=running, tail=tail, diverging=diverging, n_bands=len(masses))


def region_mass(d: BoxDensity, iv: Interval, y_lo: float, y_hi: float, tol: float = 1e-9) -> float:
    """Mass over I x (y_lo, y_hi] with no tail bookkeeping."""
    if not (0 < y_lo < y_hi):
        raise BadParams("need 0 < y_lo < y_hi")
    total = 0.0
    for lo, hi, _ in _dyadic_bands(y_hi, y_lo):
        total += _band_mass(d.eval, iv.a, iv.b, lo, hi, tol, 1e-14 * max(total, 1e-300))
    return total


# ---------------------------------------------------------------------------
# sup scans

_CELLS_PER_BOX = 64
_STRIDE_CELLS = 16  # box start lattice at |I|/4, the sliding-window policy
_MAX_CELLS = 1 << 21


def _column_profile(d: BoxDensity, window: Interval, delta: float, floor: float):
    """Per-cell column integrals of the density over (floor, delta].

    Returns (cell edges count n, dx, column masses) on cells of width
    ~ delta/64 tiling the window.
    """
    n_boxes = window.length / delta
    n = int(round(n_boxes * _CELLS_PER_BOX))
    if n > _MAX_CELLS:
        raise BadParams(f"scan needs {n} columns; shrink the window or raise the scale")
    dx = window.length / n
    xs = window.a + (np.arange(n) + 0.5) * dx
    yn, yw = gauss_legendre(16)
    cols = np.zeros(n)
    for lo, hi, _ in _dyadic_bands(delta, floor):
        ys = 0.5 * (hi + lo) + 0.5 * (hi - lo) * yn
        wy = 0.5 * (hi - lo) * yw
        vals = d.eval(xs[:, None], ys[None, :])
        cols += vals @ wy
    return n, dx, cols * dx


def _sup_scan(d: BoxDensity, window: Interval, delta: float, tol: float):
    """Best box of length delta in the window: refined mass at the argmax."""
    if delta > window.length:
        raise BadParams(f"scale {delta:g} exceeds the scan window")
    floor = _resolve_floor(d, delta)
    n, dx, cols = _column_profile(d, window, delta, floor)
    csum = np.concatenate([[0.0], np.cumsum(cols)])
    width = _CELLS_PER_BOX
    starts = np.arange(0, n - width + 1, _STRIDE_CELLS)
    if starts.size == 0:
        starts = np.asarray([0])
    approx = csum[starts + width] - csum[starts]
    best = int(starts[int(np.argmax(approx))])
    iv = Interval(window.a + best * dx, window.a + best * dx + width * dx)
    return box_mass(d, iv, tol=tol), iv


@dataclass(frozen=True)
class NormScan:
    """Sup of box_mass/|I| over a scanned box family (a lower bound)."""

    value: float
    argmax: Interval
    scales: tuple
    diverging_any: bool

    def __float__(self) -> float:
        return self.value


def carleson_norm(d: BoxDensity, window: Interval, scales: Sequence[float], tol: float = 1e-9) -> NormScan:
    """sup over scanned I of box_mass(I)/|I|; scan family is a lower bound."""
    scales = [float(s) for s in scales]
    if not scales:
        raise BadParams("need at least one scale")
    best_val = -1.0
    best_iv = None
    div = False
    for s in scales:
        bm, iv = _sup_scan(d, window, s, tol)
        div = div or bm.diverging
        v = bm.value / iv.length
        if v > best_val:
            best_val, best_iv = v, iv
    return NormScan(value=best_val, argmax=best_iv, scales=tuple(scales), diverging_any=div)


def vanishing_profile(
    d: BoxDensity,
    window: Interval,
    scales: Sequence[float],
    threshold: float = 0.05,
    tol: float = 1e-9,
) -> Profile:
    """c(delta) = sup over scanned |I| = delta of box_mass/|I|, plus verdict.

    Vanishing verdict: c at the smallest scale is below the threshold and c
    is non-increasing over the last three scales.
    """
    scales = np.asarray([float(s) for s in scales])
    if np.any(np.diff(scales) >= 0):
        raise BadParams("scales must be strictly decreasing")
    vals = np.empty(scales.size)
    args = np.empty(scales.size)
    div = False
    for i, s in enumerate(scales):
        bm, iv = _sup_scan(d, window, float(s), tol)
        div = div or bm.diverging
        vals[i] = bm.value / iv.length
        args[i] = iv.mid
    tail_ok = True
    if scales.size >= 3:
        t = vals[-3:]
        tail_ok = bool(np.all(np.diff(t) <= 1e-12 * np.maximum(t[:-1], 1.0)))
    meta = {
        "threshold": float(threshold),
        "vanishing": bool(tail_ok and vals[-1] < threshold and not div),
        "diverging_any": bool(div),
        "window": [window.a, window.b],
        "quantity": "carleson_box_ratio",
    }
    return Profile(scales, vals, args, meta)


def box_report_csv(d: BoxDensity, intervals: Sequence[Interval], tol: float = 1e-9) -> str:
    buf = io.StringIO()
    buf.write(BOX_CSV_HEADER + "\n")
    for iv in intervals:
        bm = box_mass(d, iv, tol=tol)
        flag = "diverging" if bm.diverging else "ok"
        buf.write(
            f"{format_float(iv.a)},{format_float(iv.b)},{format_float(bm.value)},"
            f"{format_float(bm.value / iv.length)},{flag}\n"
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# disk variant


@dataclass(frozen=True)
class DiskDensity:
    """Nonnegative density on the unit disk, fed complex points."""

    fn: Callable
    u_floor: Optional[float] = None  # truncation in u = 1 - |w|
    label: str = "disk-density"

    def eval(self, w):
        return np.asarray(self.fn(np.asarray(w, dtype=complex)))


def _lens_halfwidth(s: np.ndarray, r: float) -> np.ndarray:
    """Angular half-width of {|w - xi| <= r} along |w| = s, xi unit."""
    s = np.maximum(s, 1e-300)
    c = (s * s + 1.0 - r * r) / (2.0 * s)
    return np.arccos(np.clip(c, -1.0, 1.0))


def _composite_gl_nodes(a: float, b: float, panels: int):
    xn, xw = gauss_legendre(16)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + half[:, None] * xn).ravel(), (half[:, None] * xw).ravel()


def disk_box_mass(d: DiskDensity, xi: complex, r: float, tol: float = 1e-9) -> BoxMass:
    """Mass of the density over the lens Delta(xi, r) cut to the disk, over r.

    Bands run dyadically in the boundary gap u = 1 - |w|; the tail and the
    divergence flag mirror the half-plane rule.  The returned value is
    already divided by r.  The angular half-width has square-root behavior
    where the cap rim crosses a circle |w| = s, so bands touching such a
    point substitute u = u_sing - tau^2 before applying Gauss nodes.
    """
    if not (0.0 < r < 2.0):
        raise BadParams("cap radius must lie in (0, 2)")
    xi = complex(xi)
    if abs(abs(xi) - 1.0) > 1e-9:
        raise BadParams("cap center must lie on the unit circle")
    alpha = np.angle(xi)
    floor = d.u_floor if d.u_floor is not None else r * 2.0**-FLOOR_LEVELS
    if not (0 < floor < r):
        raise BadParams(f"truncation floor {floor:g} must lie in (0, {r:g})")
    tn, tw = gauss_legendre(16)

    def band(lo, hi, sub_hi, abs_floor):
        pu = 1
        pth = 1
        prev = None
        for _ in range(16):
            if pu * pth * 256 > _MAX_QUAD_NODES:
                raise QuadratureFailure(
                    f"lens band (u in ({lo:g}, {hi:g}]) still unstable at the "
                    f"{_MAX_QUAD_NODES}-node budget; loosen tol for rough densities"
                )
            if sub_hi:
                # u = hi - tau^2 flattens the sqrt edge of the half-width
                taus, wt = _composite_gl_nodes(0.0, np.sqrt(hi - lo), pu)
                us = hi - taus * taus
                wu = 2.0 * taus * wt
            else:
                us, wu = _composite_gl_nodes(lo, hi, pu)
            ss = 1.0 - us
            phi = _lens_halfwidth(ss, r)
            edges = np.linspace(-phi, phi, pth + 1).T  # (nu, pth+1)
            half = 0.5 * (edges[:, 1:] - edges[:, :-1])
            mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
            TH = mid[:, :, None] + half[:, :, None] * tn
            WTH = half[:, :, None] * tw
            W = ss[:, None, None] * np.exp(1j * (alpha + TH))
            slab = np.sum(d.eval(W) * WTH, axis=(1, 2)) * ss
            cur = float(slab @ wu)
            if prev is not None and abs(cur - prev) <= tol * abs(cur) + abs_floor:
                return cur
            prev = cur
            pu *= 2
            pth *= 2
        raise QuadratureFailure(f"lens band (u in ({lo:g}, {hi:g}]) did not stabilize")

    top = min(r, 1.0)
    u_sing = 2.0 - r if r > 1.0 else r  # circle tangent interior to the rim
    masses = []
    full = []
    running = 0.0
    for lo, hi, is_full in _dyadic_bands(r, floor):
        hi_c = min(hi, top)
        if hi_c <= lo:
            masses.append(0.0)
            if is_full:
                full.append(0.0)
            continue
        abs_floor = 1e-14 * max(running, 1e-300)
        if lo < u_sing < hi_c:
            m = band(lo, u_sing, True, abs_floor) + band(u_sing, hi_c, False, abs_floor)
        else:
            m = band(lo, hi_c, hi_c == u_sing, abs_floor)
        masses.append(m)
        if is_full and hi_c == hi:
            full.append(m)
        running += m
    tail, diverging = _tail_from_bands(np.asarray(full))
    return BoxMass(mass=running / r, tail=tail / r, diverging=diverging, n_bands=len(masses))


def disk_vanishing_profile(
    d: DiskDensity,
    scales: Sequence[float],
    threshold: float = 0.05,
    n_centers: int = 16,
    tol: float = 1e-9,
) -> Profile:
    """c(r) = sup over centers xi of disk_box_mass(d, xi, r), with verdict."""
    scales = np.asarray([float(s) for s in scales])
    if np.any(np.diff(scales) >= 0):
        raise BadParams("scales must be strictly decreasing")
    angles = (np.arange(n_centers) + 0.5) * (2.0 * np.pi / n_centers)
    vals = np.empty(scales.size)
    args = np.empty(scales.size)
    div = False
    for i, r in enumerate(scales):
        best, barg = -1.0, 0.0
        for a in angles:
            bm = disk_box_mass(d, np.exp(1j * a), float(r), tol=tol)
            div = div or bm.diverging
            if bm.value > best:
                best, barg = bm.value, a
        vals[i] = best
        args[i] = barg
    tail_ok = True
    if scales.size >= 3:
        t = vals[-3:]
        tail_ok = bool(np.all(np.diff(t) <= 1e-12 * np.maximum(t[:-1], 1.0)))
    meta = {
        "threshold": float(threshold),
        "vanishing": bool(tail_ok and vals[-1] < threshold and not div),
        "diverging_any": bool(div),
        "quantity": "disk_cap_ratio",
    }
    return Profile(scales, vals, args, meta)


# ---------------------------------------------------------------------------
# Cayley pull-back


def pullback_cayley(lam: DiskDensity, pole_eps: float = 1e-9) -> BoxDensity:
    """Pull a disk density back to the half-plane through T(z) = (z-i)/(z+i).

    The returned area density is lam(T(z)) * |T'(z)|, which makes the mass
    over a region R equal the |T' o T^{-1}|^{-1}-weighted mass of lam over
    T(R).  Points mapping too close to w = 1 (the image of infinity) raise
    PoleProximity.
    """

    def fn(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        z = x + 1j * y
        w = (z - 1j) / (z + 1j)
        if np.any(np.abs(1.0 - w) < pole_eps):
            raise PoleProximity("pull-back sampled within pole_eps of w = 1")
        tp = 2.0 / np.abs(z + 1j) ** 2
        return np.asarray(lam.eval(w), dtype=float) * tp

    return BoxDensity(fn=fn, label=f"cayley*[{lam.label}]")


# ---------------------------------------------------------------------------
# Carleson embedding check


@dataclass(frozen=True)
class EmbeddingReport:
    """lhs = truncated integral of F against the density, rhs from F*."""

    lhs: float
    rhs_integral: float
    ratio: float
    norm: float

    def __iter__(self):
        return iter((self.lhs, self.rhs_integral, self.ratio))


def nontangential_max(F, window: Interval, top: float, levels: int = 12):
    """F*(t) = sup of F over the cone |x - t| <= y within the scan region.

    Grid scan: dyadic heights top * 2**-k, rows resampled to a shared fine
    t-grid, each swept by a running maximum of half-width y_k.
    """
    n = int(round(window.length / (top * 2.0**-levels * 0.5)))
    n = min(max(n, 256), 1 << 21)
    ts = np.linspace(window.a, window.b, n)
    dt = ts[1] - ts[0]
    fstar = np.full(n, -np.inf)
    for k in range(levels + 1):
        y = top * 2.0**-k
        m = max(2, int(round(window.length / (0.5 * y))) + 1)
        xs = np.linspace(window.a, window.b, m)
        row = np.asarray(F(xs + 1j * y), dtype=float)
        fine = np.interp(ts, xs, row)
        size = 2 * int(round(y / dt)) + 1
        swept = maximum_filter1d(fine, size=size, mode="constant", cval=-np.inf)
        fstar = np.maximum(fstar, swept)
    return ts, fstar


def embedding_check(
    d: BoxDensity,
    F,
    window: Interval,
    scales: Sequence[float],
    top: Optional[float] = None,
    levels: int = 12,
    tol: float = 1e-9,
) -> EmbeddingReport:
    """Truncated test of integral(F d-lambda) <= A * norm * integral(F*).

    ``F`` maps complex points to nonnegative reals.  Returns the measured
    ratio lhs / (norm * rhs); the theory predicts a universal ceiling, so the
    artifact records the ratio rather than asserting a constant.
    """
    top = float(top) if top is not None else 0.5 * window.length
    floor = top * 2.0**-levels

    prod = BoxDensity(
        fn=lambda x, y: np.asarray(F(x + 1j * y), dtype=float) * d.eval(x, y),
        label="F*density",
    )
    lhs = region_mass(prod, window, floor, top, tol=tol)
    ts, fstar = nontangential_max(F, window, top, levels=levels)
    rhs = float(np.trapezoid(fstar, ts))
    norm = carleson_norm(d, window, scales, tol=tol)
    denom = norm.value * rhs
    ratio = lhs / denom if denom > 0 else np.inf
    return EmbeddingReport(lhs=lhs, rhs_integral=rhs, ratio=ratio, norm=norm.value)
