"""Quasiconformal extensions of line and circle homeomorphisms.

Two extension operators are provided.  The Beurling-Ahlfors map averages the
boundary values over [x, x+y] and [x-y, x] and carries exact first partials,
so its complex dilatation needs no finite differencing.  The Douady-Earle
(barycentric) extension is evaluated pointwise: each upper half-plane point
is sent through the Cayley transform, the conjugated circle map is averaged
against the Mobius group, and the unique zero of the averaged field is the
extension value.  Evaluation normalizes each point by a real affine map
first, which keeps every barycenter solve near the disk center; conformal
naturality guarantees the result is the same extension.

Dilatation fields live on dyadic grids: levels y_k = Y * 2^-k with
cell-centered abscissae at spacing ~ y_k/2.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    BadParams,
    BoundaryBlowup,
    DegenerateJacobian,
    DegeneratePair,
    GridMismatch,
    NoConvergence,
    NotQuasiconformal,
    OutOfWindow,
    PoleInput,
    QuadratureFailure,
    SchemaMismatch,
)
from .homeo import CircleHomeo, Homeo1D, make_catalog
from .intervals import Interval
from .profiles import Profile, format_float
from .quadrature import integrate_many

FIELD_CSV_HEADER = "x,y,re_mu,im_mu,abs_mu"


# ---------------------------------------------------------------------------
# Mobius machinery


def cayley(z):
    """T(z) = (z - i)/(z + i), upper half-plane to unit disk."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z + 1j) < 1e-300):
        raise PoleInput("Cayley transform evaluated at -i")
    out = (z - 1j) / (z + 1j)
    return complex(out) if out.ndim == 0 else out


def cayley_inv(w):
    """T^{-1}(w) = i(1 + w)/(1 - w)."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(1.0 - w) < 1e-300):
        raise PoleInput("inverse Cayley transform evaluated at 1")
    out = 1j * (1.0 + w) / (1.0 - w)
    return complex(out) if out.ndim == 0 else out


def cayley_deriv(z):
    """T'(z) = 2i/(z + i)^2."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z + 1j) < 1e-300):
        raise PoleInput("Cayley derivative evaluated at -i")
    out = 2j / (z + 1j) ** 2
    return complex(out) if out.ndim == 0 else out


def mobius_disk(w, a):
    """gamma_a(w) = (w - a)/(1 - conj(a) w), disk automorphism sending a to 0."""
    w = np.asarray(w, dtype=complex)
    return (w - a) / (1.0 - np.conj(a) * w)


def mobius_disk_inv(v, a):
    v = np.asarray(v, dtype=complex)
    return (v + a) / (1.0 + np.conj(a) * v)


def hyperbolic_distance(z, w) -> float:
    """Poincare distance on the upper half plane."""
    z = complex(z)
    w = complex(w)
    if z.imag <= 0 or w.imag <= 0:
        raise BadParams("hyperbolic distance needs points with positive imaginary part")
    return 2.0 * np.arcsinh(abs(z - w) / (2.0 * np.sqrt(z.imag * w.imag)))


def bilipschitz_estimate(F, pairs):
    """Largest hyperbolic distortion max(r, 1/r) of F over sample pairs."""
    worst = 1.0
    ratios = []
    for z, w in pairs:
        d0 = hyperbolic_distance(z, w)
        if d0 < 1e-9:
            raise DegeneratePair(f"pair {z}, {w} closer than 1e-9 in hyperbolic metric")
        fz = F.eval(np.asarray([z], dtype=complex))[0]
        fw = F.eval(np.asarray([w], dtype=complex))[0]
        r = hyperbolic_distance(fz, fw) / d0
        ratios.append(r)
        worst = max(worst, r, 1.0 / r)
    return float(worst), np.asarray(ratios)


# ---------------------------------------------------------------------------
# Douady-Earle averages and barycenters


def circle_values(phi, theta):
    """Unit-circle values of a circle map at angles theta."""
    if isinstance(phi, CircleHomeo):
        return phi.unit_values(theta)
    if callable(phi):
        return np.asarray(phi(theta), dtype=complex)
    raise BadParams("phi must be a CircleHomeo or a callable of angles")


def de_average(phi, w, n_start: int = 2048, tol: float = 1e-10, max_n: int = 1 << 19) -> complex:
    """xi_phi(w): mean of gamma_w(phi(zeta)) over the circle.

    Half-offset trapezoid nodes (no node at angle 0), doubled until two
    successive estimates agree to ``tol``.
    """
    w = complex(w)
    if abs(w) >= 1.0:
        raise BadParams("averaging point must lie inside the unit disk")
    prev = None
    n = int(n_start)
    while n <= max_n:
        theta = (np.arange(n) + 0.5) * (2.0 * np.pi / n)
        vals = circle_values(phi, theta)
        cur = complex(np.mean(mobius_disk(vals, w)))
        if prev is not None and abs(cur - prev) < tol:
            return cur
        prev = cur
        n *= 2
    raise QuadratureFailure(f"circle average did not stabilize to {tol:g} by n={max_n}")


def _barycenter_batch(
    PHI: np.ndarray,
    seeds: np.ndarray,
    tol: float = 1e-10,
    max_iter: int = 100,
    restarts: int = 64,
    boundary_eps: float = 1e-9,
    rng_seed: int = 2025,
):
    """Zeros of v -> mean(gamma_v(PHI_row)) for each row of PHI.

    Damped Newton with a central-difference Jacobian; iterates are kept
    inside |v| <= 1 - boundary_eps.  Rows that stall are re-seeded from a
    fixed-seed RNG.  Raises NoConvergence with the best iterates attached.
    """
    P, _ = PHI.shape
    w = np.asarray(seeds, dtype=complex).copy()
    r = np.abs(w)
    shrink = r > 1.0 - 1e-6
    if np.any(shrink):
        w[shrink] *= (1.0 - 1e-6) / r[shrink]

    def xi(v):
        vc = v[:, None]
        return np.mean((PHI - vc) / (1.0 - np.conj(vc) * PHI), axis=1)

    res = xi(w)
    rng = np.random.default_rng(rng_seed)
    used_restarts = np.zeros(P, dtype=int)
    fd = 1e-6
    for _ in range(max_iter):
        an = np.abs(res)
        if np.all(an <= tol):
            break
        # Jacobian of (Re xi, Im xi) in (Re v, Im v) by central differences
        xp = xi(w + fd)
        xm = xi(w - fd)
        yp = xi(w + 1j * fd)
        ym = xi(w - 1j * fd)
        a = (xp.real - xm.real) / (2 * fd)
        b = (yp.real - ym.real) / (2 * fd)
        c = (xp.imag - xm.imag) / (2 * fd)
        d = (yp.imag - ym.imag) / (2 * fd)
        det = a * d - b * c
        sing = np.abs(det) < 1e-14
        det = np.where(sing, 1.0, det)
        px = (b * res.imag - d * res.real) / det
        py = (c * res.real - a * res.imag) / det
        step = px + 1j * py
        # singular rows take a small gradient-ish kick toward lower residual
        step = np.where(sing, -0.1 * res, step)

        lam = np.ones(P)
        done = an <= tol
        accepted = done.copy()
        w_next = w.copy()
        res_next = res.copy()
        for _ in range(30):
            if np.all(accepted):
                break
            trial = w + lam * step
            over = np.abs(trial) > 1.0 - boundary_eps
            resn = xi(np.where(over, w, trial))
            ok = (~accepted) & (~over) & (
                (np.abs(resn) < an * (1.0 - 0.25 * lam)) | (np.abs(resn) <= tol)
            )
            w_next = np.where(ok, trial, w_next)
            res_next = np.where(ok, resn, res_next)
            accepted |= ok
            lam = np.where(accepted, lam, 0.5 * lam)
        stalled = ~accepted
        if np.any(stalled):
            # fresh interior seeds for rows the damped step cannot improve
            can = stalled & (used_restarts < restarts)
            if np.any(can):
                k = int(np.count_nonzero(can))
                rad = 0.9 * np.sqrt(rng.random(k))
                ang = 2.0 * np.pi * rng.random(k)
                w_next[can] = rad * np.exp(1j * ang)
                res_next[can] = xi(w_next)[can]
                used_restarts[can] += 1
            hard = stalled & (used_restarts >= restarts)
            if np.any(hard) and np.all(np.abs(res_next[hard]) > tol):
                pass  # fall through; loop may still shrink the residual
        w = w_next
        res = res_next
    else:
        bad = np.abs(res) > tol
        if np.any(bad):
            raise NoConvergence(
                f"{int(np.count_nonzero(bad))} barycenter rows above tol "
                f"(worst residual {float(np.max(np.abs(res))):.3e})",
                best=w,
            )
    return w


def de_barycenter(
    phi,
    seed: Optional[complex] = None,
    n_start: int = 2048,
    tol: float = 1e-10,
    max_iter: int = 100,
    restarts: int = 64,
) -> complex:
    """Barycenter of a circle map: the unique w with xi_phi(w) = 0.

    Node count is chosen by doubling until the seed average stabilizes, then
    held fixed for the Newton solve.
    """
    n = int(n_start)
    prev = None
    while True:
        theta = (np.arange(n) + 0.5) * (2.0 * np.pi / n)
        vals = circle_values(phi, theta)
        m = complex(np.mean(vals))
        if prev is not None and abs(m - prev) < 0.1 * tol:
            break
        if n >= (1 << 19):
            raise QuadratureFailure("node doubling did not stabilize the seed average")
        prev = m
        n *= 2
    PHI = vals[None, :]
    s = m if seed is None else complex(seed)
    w = _barycenter_batch(PHI, np.asarray([s], dtype=complex), tol=tol, max_iter=max_iter, restarts=restarts)
    return complex(w[0])


# ---------------------------------------------------------------------------
# extension maps


def _require_upper(z: np.ndarray):
    if np.any(z.imag <= 0):
        raise BadParams("extension evaluated off the open upper half-plane")


class IdentityMap:
    """The identity extension; useful as a control."""

    kind = "identity"

    def __init__(self):
        self.boundary = make_catalog("identity")

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        _require_upper(z)
        return z + 0.0

    def wirtinger(self, z):
        z = np.asarray(z, dtype=complex)
        _require_upper(z)
        return np.ones(z.shape, dtype=complex), np.zeros(z.shape, dtype=complex)


class BAMap:
    """Beurling-Ahlfors extension F = ((alpha+beta) + i(alpha-beta))/2."""

    kind = "BA"

    def __init__(self, boundary: Homeo1D, tol_factor: float = 1e-10):
        self.boundary = boundary
        self.tol_factor = tol_factor

    def _averages(self, x, y):
        h = self.boundary
        if h.bounded:
            lo = float(np.min(x - y))
            hi = float(np.max(x + y))
            if lo < h.window.a or hi > h.window.b:
                raise OutOfWindow(f"BA needs boundary values on [{lo:g}, {hi:g}]")
        P = x.size
        span = h.eval(x + y) - h.eval(x - y)
        tol = self.tol_factor * y * np.maximum(span, 1e-30)
        zero = np.zeros(P)

        def f(t, idx):
            up = idx < P
            out = np.empty(t.shape)
            if np.any(up):
                out[up] = h.eval(x[idx[up]] + t[up])
            dn = ~up
            if np.any(dn):
                out[dn] = h.eval(x[idx[dn] - P] - t[dn])
            return out

        vals = integrate_many(
            f,
            np.concatenate([zero, zero]),
            np.concatenate([y, y]),
            tol=np.concatenate([tol, tol]),
        )
        alpha = vals[:P] / y
        beta = vals[P:] / y
        return alpha, beta

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        _require_upper(z)
        flat = z.ravel()
        alpha, beta = self._averages(flat.real, flat.imag)
        out = 0.5 * ((alpha + beta) + 1j * (alpha - beta))
        return out.reshape(z.shape)

    def wirtinger(self, z):
        """Exact F_z, F_zbar from the closed-form partials of the averages."""
        z = np.asarray(z, dtype=complex)
        _require_upper(z)
        flat = z.ravel()
        x, y = flat.real, flat.imag
        alpha, beta = self._averages(x, y)
        h = self.boundary
        hxy = h.eval(x + y)
        hx = h.eval(x)
        hmy = h.eval(x - y)
        ax = (hxy - hx) / y
        bx = (hx - hmy) / y
        ay = (hxy - alpha) / y
        by = (hmy - beta) / y
        Fx = 0.5 * ((ax + bx) + 1j * (ax - bx))
        Fy = 0.5 * ((ay + by) + 1j * (ay - by))
        Fz = 0.5 * (Fx - 1j * Fy)
        Fzb = 0.5 * (Fx + 1j * Fy)
        return Fz.reshape(z.shape), Fzb.reshape(z.shape)


class DEMap:
    """Douady-Earle extension of a line homeomorphism, evaluated pointwise.

    Each evaluation at z = x + iy solves one barycenter problem for the
    renormalized boundary map t -> (h(x + y t) - h(x)) / s conjugated to the
    circle; the solve node count is fixed at construction.
    """

    kind = "DE"

    def __init__(
        self,
        boundary: Homeo1D,
        n_nodes: int = 2048,
        tol: float = 1e-10,
        max_iter: int = 100,
        restarts: int = 64,
        boundary_eps: float = 1e-9,
        chunk: int = 256,
    ):
        self.boundary = boundary
        self.n_nodes = int(n_nodes)
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        self.restarts = int(restarts)
        self.boundary_eps = float(boundary_eps)
        self.chunk = int(chunk)
        theta = (np.arange(self.n_nodes) + 0.5) * (2.0 * np.pi / self.n_nodes)
        self._tau = -1.0 / np.tan(0.5 * theta)

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        _require_upper(z)
        tz = (z - 1j) / (z + 1j)
        if np.any(np.abs(tz) > 1.0 - self.boundary_eps):
            raise BoundaryBlowup("evaluation point too close to the boundary circle")
        flat = z.ravel()
        out = np.empty(flat.shape, dtype=complex)
        h = self.boundary
        for lo in range(0, flat.size, self.chunk):
            sl = slice(lo, min(lo + self.chunk, flat.size))
            x = flat[sl].real
            y = flat[sl].imag
            hx = h.eval(x)
            s = 0.5 * (h.eval(x + y) - h.eval(x - y))
            # boundary samples of the recentered map, conjugated to the circle
            psi = (h.eval(x[:, None] + y[:, None] * self._tau[None, :]) - hx[:, None]) / s[:, None]
            PHI = (psi - 1j) / (psi + 1j)
            seeds = np.mean(PHI, axis=1)
            w0 = _barycenter_batch(
                PHI,
                seeds,
                tol=self.tol,
                max_iter=self.max_iter,
                restarts=self.restarts,
                boundary_eps=self.boundary_eps,
            )
            zeta = 1j * (1.0 + w0) / (1.0 - w0)
            out[sl] = hx + s * zeta
        return out.reshape(z.shape)


def ba_extend(h: Homeo1D) -> BAMap:
    """Beurling-Ahlfors extension of an increasing line map."""
    return BAMap(h)


def de_extend_line(h: Homeo1D, n_nodes: int = 2048, tol: float = 1e-10, **kw) -> DEMap:
    """Douady-Earle extension of an increasing line map."""
    return DEMap(h, n_nodes=n_nodes, tol=tol, **kw)


class DiskDEMap:
    """Douady-Earle extension of a circle homeomorphism, disk to disk."""

    kind = "DE-disk"

    def __init__(
        self,
        phi: CircleHomeo,
        n_nodes: int = 512,
        tol: float = 1e-10,
        max_iter: int = 100,
        restarts: int = 64,
        boundary_eps: float = 1e-9,
        chunk: int = 512,
    ):
        self.phi = phi
        self.n_nodes = int(n_nodes)
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        self.restarts = int(restarts)
        self.boundary_eps = float(boundary_eps)
        self.chunk = int(chunk)
        self._theta = (np.arange(self.n_nodes) + 0.5) * (2.0 * np.pi / self.n_nodes)
        self._nodes = np.exp(1j * self._theta)

    def eval(self, w):
        w = np.asarray(w, dtype=complex)
        if np.any(np.abs(w) > 1.0 - self.boundary_eps):
            raise BoundaryBlowup("evaluation point too close to the unit circle")
        flat = w.ravel()
        out = np.empty(flat.shape, dtype=complex)
        for lo in range(0, flat.size, self.chunk):
            sl = slice(lo, min(lo + self.chunk, flat.size))
            ws = flat[sl]
            # boundary values of phi o gamma_w^{-1} at the fixed nodes
            pre = mobius_disk_inv(self._nodes[None, :], ws[:, None])
            ang = np.angle(pre)
            PHI = self.phi.unit_values(ang)
            seeds = np.mean(PHI, axis=1)
            out[sl] = _barycenter_batch(
                PHI,
                seeds,
                tol=self.tol,
                max_iter=self.max_iter,
                restarts=self.restarts,
                boundary_eps=self.boundary_eps,
            )
        return out.reshape(w.shape)

    def dilatation(self, w, fd_eps: float = 1e-4):
        """mu by central differences at step fd_eps*(1-|w|)."""
        w = np.asarray(w, dtype=complex)
        s = fd_eps * (1.0 - np.abs(w))
        Ex = (self.eval(w + s) - self.eval(w - s)) / (2.0 * s)
        Ey = (self.eval(w + 1j * s) - self.eval(w - 1j * s)) / (2.0 * s)
        Ez = 0.5 * (Ex - 1j * Ey)
        Ezb = 0.5 * (Ex + 1j * Ey)
        if np.any(np.abs(Ez) < 1e-12):
            raise DegenerateJacobian("|E_z| below 1e-12 on the disk grid")
        return Ezb / Ez


# ---------------------------------------------------------------------------
# dilatation fields on dyadic grids


@dataclass(frozen=True)
class GridSpec:
    """Dyadic sampling grid: levels y_k = top * 2^-k, cell-centered abscissae.

    The x spacing at level k is ``stride * y_k`` snapped so cells tile the
    window exactly.
    """

    window: Interval
    top: float
    depth: int
    stride: float = 0.5

    def __post_init__(self):
        if self.top <= 0:
            raise BadParams("grid top must be positive")
        if self.depth < 0 or self.depth > 24:
            raise BadParams("grid depth must lie in [0, 24]")
        if self.stride <= 0:
            raise BadParams("grid stride must be positive")

    def level_heights(self) -> np.ndarray:
        return self.top * 2.0 ** -np.arange(self.depth + 1)

    def level_xs(self, k: int) -> np.ndarray:
        y = self.top * 2.0**-k
        m = max(1, int(round(self.window.length / (self.stride * y))))
        dx = self.window.length / m
        return self.window.a + (np.arange(m) + 0.5) * dx

    def points(self):
        for k, y in enumerate(self.level_heights()):
            yield k, y, self.level_xs(k)


@dataclass
class DilatationField:
    """Complex dilatation samples mu(x_j + i y_k) on a GridSpec."""

    grid: GridSpec
    rows: list = field(default_factory=list)
    source: str = ""

    def __post_init__(self):
        if len(self.rows) != self.grid.depth + 1:
            raise BadParams("row count must equal depth + 1")

    @property
    def sup_norm(self) -> float:
        worst = 0.0
        for row in self.rows:
            if row.size:
                worst = max(worst, float(np.max(np.abs(row))))
        return worst

    def abs_interp(self, x, y):
        """|mu| interpolated bilinearly in (x, log2 y), clamped at grid edges."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        heights = self.grid.level_heights()
        ly = np.log2(np.clip(y, heights[-1], heights[0]))
        lh = np.log2(heights)
        # fractional level index; lh is decreasing
        kf = np.interp(ly, lh[::-1], np.arange(self.grid.depth, -1.0, -1.0))
        k0 = np.clip(np.floor(kf).astype(int), 0, self.grid.depth)
        k1 = np.clip(k0 + 1, 0, self.grid.depth)
        t = np.clip(kf - k0, 0.0, 1.0)
        out = np.zeros(x.shape)
        for k in np.unique(np.concatenate([k0, k1])):
            xs = self.grid.level_xs(int(k))
            vals = np.abs(self.rows[int(k)])
            sel0 = k0 == k
            if np.any(sel0):
                out[sel0] += (1.0 - t[sel0]) * np.interp(x[sel0], xs, vals)
            sel1 = k1 == k
            if np.any(sel1):
                out[sel1] += t[sel1] * np.interp(x[sel1], xs, vals)
        return out

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.dumps_csv())

    def dumps_csv(self) -> str:
        buf = io.StringIO()
        buf.write(FIELD_CSV_HEADER + "\n")
        for k, y, xs in self.grid.points():
            row = self.rows[k]
            for x, m in zip(xs, row):
                buf.write(
                    f"{format_float(x)},{format_float(y)},{format_float(m.real)},"
                    f"{format_float(m.imag)},{format_float(abs(m))}\n"
                )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, path) -> "DilatationField":
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        if not lines or lines[0].strip() != FIELD_CSV_HEADER:
            raise SchemaMismatch(f"expected header '{FIELD_CSV_HEADER}'")
        data = []
        for ln in lines[1:]:
            parts = ln.split(",")
            if len(parts) != 5:
                raise SchemaMismatch(f"malformed field row: {ln!r}")
            try:
                data.append(tuple(float(p) for p in parts))
            except ValueError as exc:
                raise SchemaMismatch(f"non-numeric field row: {ln!r}") from exc
        if not data:
            raise SchemaMismatch("field CSV has no rows")
        arr = np.asarray(data)
        ys = arr[:, 1]
        levels = np.unique(ys)[::-1]
        top = float(levels[0])
        depth = levels.size - 1
        rows = []
        first_xs = None
        for k, y in enumerate(levels):
            sel = ys == y
            xs = arr[sel, 0]
            if np.any(np.diff(xs) <= 0):
                raise SchemaMismatch("field rows must be sorted by x within a level")
            rows.append(arr[sel, 2] + 1j * arr[sel, 3])
            if k == 0:
                first_xs = xs
        dx0 = first_xs[1] - first_xs[0] if first_xs.size > 1 else top * 0.5
        window = Interval(float(first_xs[0] - 0.5 * dx0), float(first_xs[-1] + 0.5 * dx0))
        grid = GridSpec(window=window, top=top, depth=depth, stride=dx0 / top)
        return cls(grid=grid, rows=rows, source="csv")


def complex_dilatation(F, grid: GridSpec, fd_eps: float = 1e-4) -> DilatationField:
    """Sample mu_F = F_zbar / F_z on the dyadic grid.

    Maps exposing exact Wirtinger derivatives (BA, identity) use them;
    anything else is differenced centrally at step fd_eps * y.
    """
    exact = hasattr(F, "wirtinger")
    rows = []
    for k, y, xs in grid.points():
        z = xs + 1j * y
        if exact:
            Fz, Fzb = F.wirtinger(z)
        else:
            s = fd_eps * y
            Fx = (F.eval(z + s) - F.eval(z - s)) / (2.0 * s)
            Fy = (F.eval(z + 1j * s) - F.eval(z - 1j * s)) / (2.0 * s)
            Fz = 0.5 * (Fx - 1j * Fy)
            Fzb = 0.5 * (Fx + 1j * Fy)
        if np.any(np.abs(Fz) < 1e-12):
            raise DegenerateJacobian(f"|F_z| < 1e-12 at level {k}")
        mu = Fzb / Fz
        if np.any(np.abs(mu) >= 1.0 - 1e-9):
            raise NotQuasiconformal(f"|mu| reached 1 - 1e-9 at level {k}")
        rows.append(mu)
    return DilatationField(grid=grid, rows=rows, source=getattr(F, "kind", "unknown"))


def chain_dilatation_mag(mu: DilatationField, nu: DilatationField) -> DilatationField:
    """|mu_{G o H^{-1}}| at H(z): |(mu - nu) / (1 - conj(nu) mu)| on the shared grid."""
    if (
        mu.grid.window != nu.grid.window
        or mu.grid.top != nu.grid.top
        or mu.grid.depth != nu.grid.depth
        or mu.grid.stride != nu.grid.stride
    ):
        raise GridMismatch("dilatation fields live on different grids")
    rows = []
    for a, b in zip(mu.rows, nu.rows):
        if a.shape != b.shape:
            raise GridMismatch("row lengths differ")
        # separate magnitudes keep the result exactly symmetric under swap
        mag = np.abs(a - b) / np.abs(1.0 - np.conj(b) * a)
        rows.append(mag.astype(complex))
    return DilatationField(grid=mu.grid, rows=rows, source="chain")


def asymptotic_profile(mu_field: DilatationField, threshold: float = 0.05) -> Profile:
    """a(t) = sup of |mu| over grid levels at height <= t, t on the dyadic ladder."""
    heights = mu_field.grid.level_heights()
    sups = np.asarray([float(np.max(np.abs(r))) if r.size else 0.0 for r in mu_field.rows])
    tail = np.maximum.accumulate(sups[::-1])[::-1]
    arg = np.asarray([heights[k:][int(np.argmax(sups[k:]))] for k in range(sups.size)])
    meta = {
        "threshold": threshold,
        "asymptotically_conformal": bool(tail[-1] < threshold),
        "source": mu_field.source,
    }
    return Profile(heights, tail, arg, meta)


# ---------------------------------------------------------------------------
# geometric comparison checks


def im_ratio_check(F, points):
    """R(z) = (Im F(z) / Im z) / (|h(I_z)| / |I_z|) with I_z = [x - y, x + y].

    Returns (values, min, max) over the sample points.
    """
    z = np.asarray(points, dtype=complex)
    _require_upper(z)
    h = F.boundary
    x, y = z.real, z.imag
    im_f = F.eval(z).imag
    span = (h.eval(x + y) - h.eval(x - y)) / (2.0 * y)
    vals = (im_f / y) / span
    return vals, float(np.min(vals)), float(np.max(vals))


def box_image_check(F, iv: Interval, n_side: int = 64) -> float:
    """Smallest alpha with F(boundary of Q_I) inside Q_{alpha f(I)}."""
    h = F.boundary
    fa = float(h.eval(np.asarray(iv.a)))
    fb = float(h.eval(np.asarray(iv.b)))
    width = fb - fa
    center = 0.5 * (fa + fb)
    L = iv.length
    ys = (np.arange(1, n_side + 1)) * (L / n_side)
    xs = np.linspace(iv.a, iv.b, n_side)
    samples = np.concatenate(
        [iv.a + 1j * ys, iv.b + 1j * ys, xs + 1j * L]
    )
    w = F.eval(samples)
    alpha_x = 2.0 * np.abs(w.real - center) / width
    alpha_y = w.imag / width
    return float(max(1.0, np.max(alpha_x), np.max(alpha_y)))
