"""Sylvester and Fourier matrix constructions.

Matrices are stored as an unnormalized core plus an integer ``norm`` such that
the physical unitary is ``core / sqrt(norm)``.  For Sylvester matrices the core
is exact (entries are Python ints in {-1, +1}), so probabilities derived from
it can be computed as exact fractions.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

MAX_SYLVESTER_EXPONENT = 8
MAX_FOURIER_MODES = 256


class CapacityError(ValueError):
    """Raised when a requested size exceeds a configured cap."""


@dataclass(frozen=True)
class UnitaryMatrix:
    """An m x m transformation ``core / sqrt(norm)``.

    Attributes:
        entries: row-major core entries as a tuple of tuples.
        norm: positive integer such that the unitary is ``entries / sqrt(norm)``.
        exact: True when the entries are integers and probabilities can be
            computed with rational arithmetic.
    """

    entries: tuple[tuple, ...]
    norm: int = 1
    exact: bool = False

    @property
    def m(self) -> int:
        return len(self.entries)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def to_numpy(self, scaled: bool = True) -> np.ndarray:
        dtype = np.int64 if self.exact else np.complex128
        arr = np.array(self.entries, dtype=dtype)
        if scaled:
            return arr / math.sqrt(self.norm)
        return arr

    @classmethod
    def from_array(cls, array) -> "UnitaryMatrix":
        """Wrap an arbitrary (already normalized) complex matrix."""
        arr = np.asarray(array, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        return cls(tuple(tuple(complex(x) for x in row) for row in arr), 1, False)

    def scale_label(self) -> str:
        return "1" if self.norm == 1 else f"{self.norm}^-1/2"

    def to_csv(self) -> str:
        """CSV with a comment header recording ``m`` and the scale factor."""
        buf = io.StringIO()
        buf.write(f"# m={self.m} scale={self.scale_label()}\n")
        writer = csv.writer(buf, lineterminator="\n")
        for row in self.entries:
            writer.writerow([_format_entry(x) for x in row])
        return buf.getvalue()

    def to_json(self) -> str:
        if self.exact:
            rows = [list(row) for row in self.entries]
        else:
            rows = [[[_clean(x.real), _clean(x.imag)] for x in row] for row in self.entries]
        payload = {
            "m": self.m,
            "scale": self.scale_label(),
            "entries": rows,
        }
        if not self.exact:
            payload["encoding"] = "[real, imag]"
        return json.dumps(payload)


@dataclass(frozen=True)
class SylvesterMatrix(UnitaryMatrix):
    p: int = 0


@dataclass(frozen=True)
class FourierMatrix(UnitaryMatrix):
    pass


def _clean(x: float) -> float:
    # snap floating noise so exported files are stable
    return 0.0 if abs(x) < 1e-15 else float(x)


def _format_entry(x) -> str:
    if isinstance(x, int):
        return str(x)
    re, im = _clean(x.real), _clean(x.imag)
    return f"{re:.15g}{im:+.15g}j"


def sylvester_element(p: int, i: int, j: int) -> int:
    """Entry (i, j) of H(2**p), 0-based: (-1) ** popcount(i & j)."""
    m = 1 << p
    if not (0 <= i < m and 0 <= j < m):
        raise IndexError(f"index ({i}, {j}) out of range for H({m})")
    return -1 if bin(i & j).count("1") & 1 else 1


def _sylvester_recursive(p: int) -> list[list[int]]:
    h = [[1]]
    for _ in range(p):
        h = [row + row for row in h] + [row + [-x for x in row] for row in h]
    return h


def build_sylvester(p: int, max_exponent: int = MAX_SYLVESTER_EXPONENT) -> SylvesterMatrix:
    """Build H(2**p) by recursive doubling and check it against the closed form.

    Raises:
        CapacityError: if ``p`` exceeds ``max_exponent``.
    """
    if p < 0:
        raise ValueError("exponent must be non-negative")
    if p > max_exponent:
        raise CapacityError(f"Sylvester exponent {p} exceeds cap {max_exponent}")
    rows = _sylvester_recursive(p)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x != sylvester_element(p, i, j):
                raise AssertionError(f"recursive and closed-form entries differ at ({i}, {j})")
    return SylvesterMatrix(tuple(tuple(r) for r in rows), 1 << p, True, p)


def build_fourier(m: int, max_modes: int = MAX_FOURIER_MODES) -> FourierMatrix:
    """Fourier matrix F[j][k] = exp(2*pi*i*j*k/m) with 0-based j, k."""
    if m < 1:
        raise ValueError("mode count must be positive")
    if m > max_modes:
        raise CapacityError(f"Fourier size {m} exceeds cap {max_modes}")
    roots = []
    for t in range(m):
        z = cmath.exp(2j * math.pi * t / m)
        roots.append(complex(_clean(z.real), _clean(z.imag)))
    entries = tuple(tuple(roots[(j * k) % m] for k in range(m)) for j in range(m))
    return FourierMatrix(entries, m, False)


def is_power_of_two(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def log2_exact(x: int) -> int:
    if not is_power_of_two(x):
        raise ValueError(f"{x} is not a power of two")
    return x.bit_length() - 1


def is_real_hadamard(rows: Sequence[Sequence[int]]) -> bool:
    """True if ``rows`` is a +-1 matrix with H H^T = m I in integer arithmetic."""
    m = len(rows)
    if any(len(r) != m for r in rows):
        return False
    if any(x not in (1, -1) for r in rows for x in r):
        return False
    for a in range(m):
        for b in range(m):
            dot = sum(x * y for x, y in zip(rows[a], rows[b]))
            if dot != (m if a == b else 0):
                return False
    return True
