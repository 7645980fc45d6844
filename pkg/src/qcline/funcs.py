"""Scalar functions on a window: the raw material of oscillation diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import EmptyWindow, ZeroMass
from .intervals import Interval
from .quadrature import integrate_many


@dataclass(frozen=True)
class RealFunction:
    """Locally integrable function with a trusted window.

    ``prefix`` is an optional closed-form antiderivative; when present,
    interval means are computed exactly from endpoint differences instead of
    by quadrature.
    """

    fn: Callable
    window: Interval
    prefix: Optional[Callable] = None
    name: str = "u"

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def mean(self, iv: Interval, tol: float = 1e-10) -> float:
        """Integral mean over ``iv``."""
        if self.prefix is not None:
            return float(self.prefix(iv.b) - self.prefix(iv.a)) / iv.length
        val = integrate_many(lambda x, idx: self.fn(x), [iv.a], [iv.b], tol=tol)
        return float(val[0]) / iv.length

    def shifted(self, c: float) -> "RealFunction":
        """u + c; oscillation-neutral."""
        fn = self.fn
        pre = self.prefix
        return RealFunction(
            fn=lambda x: fn(x) + c,
            window=self.window,
            prefix=None if pre is None else (lambda x: pre(x) + c * x),
            name=f"{self.name}+{c:g}",
        )

    def scaled(self, a: float) -> "RealFunction":
        fn = self.fn
        pre = self.prefix
        return RealFunction(
            fn=lambda x: a * fn(x),
            window=self.window,
            prefix=None if pre is None else (lambda x: a * pre(x)),
            name=f"{a:g}*{self.name}",
        )


def add(u: RealFunction, v: RealFunction) -> RealFunction:
    """Pointwise sum on the intersection of the windows."""
    w = u.window.intersect(v.window)
    if w is None:
        raise EmptyWindow("summands live on disjoint windows")
    ufn, vfn = u.fn, v.fn
    pre = None
    if u.prefix is not None and v.prefix is not None:
        up, vp = u.prefix, v.prefix
        pre = lambda x: up(x) + vp(x)
    return RealFunction(
        fn=lambda x: ufn(x) + vfn(x), window=w, prefix=pre, name=f"{u.name}+{v.name}"
    )


@dataclass(frozen=True)
class Weight:
    """Nonnegative locally integrable density."""

    fn: Callable
    window: Interval
    prefix: Optional[Callable] = None
    name: str = "w"

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def as_function(self) -> RealFunction:
        return RealFunction(self.fn, self.window, self.prefix, self.name)

    def masses(self, a, b, tol: float = 1e-10, divergence_cap: float = 1e-3):
        """Vector of integrals over intervals [a_i, b_i]; ZeroMass if none is positive."""
        a = np.atleast_1d(np.asarray(a, dtype=float))
        b = np.atleast_1d(np.asarray(b, dtype=float))
        if self.prefix is not None:
            out = self.prefix(b) - self.prefix(a)
        else:
            out = integrate_many(
                lambda x, idx: self.fn(x), a, b, tol=tol, divergence_cap=divergence_cap
            )
        if np.any(out < 0):
            raise ZeroMass("weight integrated to a negative value; not a weight")
        return out
