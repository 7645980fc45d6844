"""Closed bounded intervals of the real line."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Interval:
    """Nondegenerate interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        a = float(self.a)
        b = float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ValueError("interval endpoints must be finite")
        if not a < b:
            raise ValueError(f"degenerate interval [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def mid(self) -> float:
        return 0.5 * (self.a + self.b)

    def dilate(self, factor: float) -> "Interval":
        """Interval with the same center and length scaled by ``factor``."""
        if factor <= 0:
            raise ValueError("dilation factor must be positive")
        half = 0.5 * factor * self.length
        return Interval(self.mid - half, self.mid + half)

    def contains(self, x, slack: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all((x >= self.a - slack) & (x <= self.b + slack)))

    def covers(self, other: "Interval", slack: float = 0.0) -> bool:
        return other.a >= self.a - slack and other.b <= self.b + slack

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = max(self.a, other.a)
        hi = min(self.b, other.b)
        if lo < hi:
            return Interval(lo, hi)
        return None

    def __str__(self):
        return f"[{self.a:g}, {self.b:g}]"
