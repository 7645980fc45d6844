"""Scale-indexed sup profiles and their CSV form."""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaMismatch

CSV_HEADER = "scale,value,argmax_center"


def format_float(v: float) -> str:
    """17 significant digits, round-trip safe."""
    return format(float(v), ".17g")


@dataclass
class Profile:
    """Values of a supremum diagnostic along a descending ladder of scales.

    ``argmax`` records, per scale, the center of the first maximizing
    interval on the scan grid so runs can be compared and replayed.
    ``meta`` carries the scan window, stride policy and any verdict
    thresholds the producer applied.
    """

    scales: np.ndarray
    values: np.ndarray
    argmax: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.scales = np.asarray(self.scales, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.argmax = np.asarray(self.argmax, dtype=float)
        if self.scales.ndim != 1 or self.scales.size == 0:
            raise ValueError("profile needs at least one scale")
        if np.any(np.diff(self.scales) >= 0):
            raise ValueError("scales must be strictly decreasing")
        if np.any(self.scales <= 0):
            raise ValueError("scales must be positive")
        if self.values.shape != self.scales.shape or self.argmax.shape != self.scales.shape:
            raise ValueError("values/argmax must match scales in shape")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("profile values must be finite")

    @property
    def final_value(self) -> float:
        return float(self.values[-1])

    def nonincreasing_tail(self, count: int = 3, rel_slack: float = 0.0) -> bool:
        """True when the last ``count`` values do not increase (within slack)."""
        tail = self.values[-count:]
        if tail.size < 2:
            return True
        allow = rel_slack * np.maximum(np.abs(tail[:-1]), 1e-300)
        return bool(np.all(np.diff(tail) <= allow))

    def strictly_decreasing_tail(self, count: int = 3, margin: float = 0.0) -> bool:
        tail = self.values[-count:]
        return bool(np.all(np.diff(tail) < -margin))

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.dumps_csv())

    def dumps_csv(self) -> str:
        buf = io.StringIO()
        buf.write(CSV_HEADER + "\n")
        for s, v, c in zip(self.scales, self.values, self.argmax):
            buf.write(f"{format_float(s)},{format_float(v)},{format_float(c)}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, path, meta=None) -> "Profile":
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        return cls.loads_csv(text, meta=meta)

    @classmethod
    def loads_csv(cls, text: str, meta=None) -> "Profile":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].strip() != CSV_HEADER:
            raise SchemaMismatch(f"expected header '{CSV_HEADER}'")
        rows = []
        for ln in lines[1:]:
            parts = ln.split(",")
            if len(parts) != 3:
                raise SchemaMismatch(f"malformed profile row: {ln!r}")
            try:
                rows.append(tuple(float(p) for p in parts))
            except ValueError as exc:
                raise SchemaMismatch(f"non-numeric profile row: {ln!r}") from exc
        if not rows:
            raise SchemaMismatch("profile CSV has no data rows")
        arr = np.asarray(rows, dtype=float)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2], meta=dict(meta or {}))
