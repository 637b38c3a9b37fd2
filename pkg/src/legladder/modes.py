"""Mode indexing on the (l, m) weight lattice, truncation windows, and
sparse coefficient vectors over the lattice."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass


def is_admissible(l: int, m: int) -> bool:
    """True iff l >= 0 and |m| <= l, the cone of modes that exist."""
    return l >= 0 and abs(m) <= l


@dataclass(frozen=True, order=True)
class ModeIndex:
    """A lattice point (l, m) with l >= |m|."""

    l: int
    m: int

    def __post_init__(self):
        if not is_admissible(self.l, self.m):
            raise ValueError(f"inadmissible mode (l={self.l}, m={self.m})")


@dataclass(frozen=True)
class Truncation:
    """Finite window l <= l_max over the otherwise infinite lattice."""

    l_max: int

    def __post_init__(self):
        if self.l_max < 0:
            raise ValueError("l_max must be non-negative")

    def __contains__(self, mode: ModeIndex) -> bool:
        return mode.l <= self.l_max

    @property
    def size(self) -> int:
        return (self.l_max + 1) ** 2


def lattice(trunc: Truncation) -> list[ModeIndex]:
    """All modes with l <= l_max in canonical order (l, then m, ascending).

    The list has (l_max + 1)**2 entries; the fixed order keeps serialized
    coefficient files byte-stable.
    """
    return [ModeIndex(l, m) for l in range(trunc.l_max + 1) for m in range(-l, l + 1)]


class CoeffVector:
    """Sparse map ModeIndex -> amplitude within a truncation window.

    Amplitudes may be real or complex. Instances are value-like: no method
    mutates an existing vector, so they can be shared freely. Exact zeros
    are pruned on construction, which makes equality "equality up to
    pruning". The overflow flag marks that an operator pushed amplitude
    outside the window and had to drop it.
    """

    __slots__ = ("entries", "trunc", "overflow")

    def __init__(self, entries: dict, trunc: Truncation, overflow: bool = False):
        clean = {}
        for mode, val in entries.items():
            if not isinstance(mode, ModeIndex):
                mode = ModeIndex(*mode)
            if mode not in trunc:
                raise ValueError(f"mode {mode} outside truncation l_max={trunc.l_max}")
            if val != 0:
                clean[mode] = val
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "overflow", bool(overflow))

    def __setattr__(self, name, value):
        raise AttributeError("CoeffVector is immutable")

    @classmethod
    def zero(cls, trunc: Truncation) -> "CoeffVector":
        return cls({}, trunc)

    @classmethod
    def unit(cls, l: int, m: int, trunc: Truncation) -> "CoeffVector":
        return cls({ModeIndex(l, m): 1.0}, trunc)

    def get(self, mode: ModeIndex):
        return self.entries.get(mode, 0.0)

    def items(self):
        return self.entries.items()

    def max_abs(self) -> float:
        return max((abs(v) for v in self.entries.values()), default=0.0)

    def norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self.entries.values()))

    def scaled(self, factor) -> "CoeffVector":
        return CoeffVector({k: factor * v for k, v in self.entries.items()},
                           self.trunc, overflow=self.overflow)

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def __add__(self, other: "CoeffVector") -> "CoeffVector":
        self._check_compatible(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0.0) + v
        return CoeffVector(out, self.trunc, overflow=self.overflow or other.overflow)

    def __sub__(self, other: "CoeffVector") -> "CoeffVector":
        return self + other.scaled(-1.0)

    def dot(self, other: "CoeffVector"):
        """Representation inner product; conjugates self, so unit modes
        are orthonormal for complex amplitudes as well."""
        self._check_compatible(other)
        total = 0.0
        for k, v in other.entries.items():
            u = self.entries.get(k)
            if u is not None:
                total += u.conjugate() * v
        return total

    def _check_compatible(self, other: "CoeffVector"):
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch between coefficient vectors")

    @property
    def is_real(self) -> bool:
        return all(getattr(v, "imag", 0.0) == 0.0 for v in self.entries.values())

    def __eq__(self, other):
        if not isinstance(other, CoeffVector):
            return NotImplemented
        return self.trunc == other.trunc and self.entries == other.entries

    def allclose(self, other: "CoeffVector", tol: float = 1e-12) -> bool:
        self._check_compatible(other)
        keys = set(self.entries) | set(other.entries)
        return all(abs(self.get(k) - other.get(k)) <= tol for k in keys)

    def __repr__(self):
        flag = ", overflow" if self.overflow else ""
        return f"CoeffVector({len(self.entries)} modes, l_max={self.trunc.l_max}{flag})"

    def to_json_dict(self) -> dict:
        real = self.is_real
        rows = []
        for mode in sorted(self.entries):
            v = self.entries[mode]
            row = {"l": mode.l, "m": mode.m, "re": float(getattr(v, "real", v))}
            if not real:
                row["im"] = float(getattr(v, "imag", 0.0))
            rows.append(row)
        return {"l_max": self.trunc.l_max, "entries": rows}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoeffVector":
        trunc = Truncation(int(data["l_max"]))
        entries = {}
        for row in data["entries"]:
            val = float(row["re"])
            if "im" in row:
                val = complex(val, float(row["im"]))
            entries[ModeIndex(int(row["l"]), int(row["m"]))] = val
        return cls(entries, trunc)

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "CoeffVector":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))
