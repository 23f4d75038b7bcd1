"""Fock states, output enumeration and scattering matrices.

Mode indices are 1-based everywhere in this module's public API.

Output states are enumerated in colexicographic order of the strictly
increasing sequence ``c_i = t_i + i - 1`` (0-based ``i``), i.e. the standard
stars-and-bars bijection between multisets of size n over m modes and
n-subsets of ``{0, ..., m + n - 2}``.  The colex rank of that subset is
``sum(comb(c_i, i + 1))``, which gives O(n) ranking and unranking and so
cheap random access into the stream for partitioned consumption.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .hadamard import UnitaryMatrix, is_power_of_two


@dataclass(frozen=True)
class FockState:
    """An n-particle state on m modes given as sorted 1-based mode indices."""

    modes: tuple[int, ...]
    m: int

    def __post_init__(self):
        modes = tuple(sorted(int(t) for t in self.modes))
        if not modes:
            raise ValueError("a Fock state needs at least one particle")
        if modes[0] < 1 or modes[-1] > self.m:
            raise ValueError(f"mode indices {modes} outside 1..{self.m}")
        object.__setattr__(self, "modes", modes)

    @property
    def n(self) -> int:
        return len(self.modes)

    @cached_property
    def multiplicities(self) -> tuple[int, ...]:
        occ = [0] * self.m
        for t in self.modes:
            occ[t - 1] += 1
        return tuple(occ)

    @property
    def occupied(self) -> int:
        return len(set(self.modes))

    def factorial_product(self) -> int:
        return math.prod(math.factorial(k) for k in self.multiplicities if k > 1)

    def to_json(self) -> str:
        return json.dumps(list(self.modes))

    @classmethod
    def from_json(cls, text: str, m: int) -> "FockState":
        return cls(tuple(json.loads(text)), m)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.modes)) + ")"


@dataclass(frozen=True)
class ScatteringMatrix:
    """The n x n matrix ``S[i][j] = U[h_i][g_j]`` (rows: output, cols: input).

    ``entries`` hold the unnormalized core; the physical matrix is
    ``entries / sqrt(norm)``, so its permanent or determinant carries a factor
    ``norm ** (-n/2)``.
    """

    entries: tuple[tuple, ...]
    norm: int
    input: FockState
    output: FockState
    exact: bool = field(default=False)

    @property
    def n(self) -> int:
        return len(self.entries)


def count_states(n: int, m: int) -> int:
    """Number of n-particle output states on m modes, C(m + n - 1, n)."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    return math.comb(m + n - 1, n)


def rank(modes: Sequence[int]) -> int:
    """Colex rank of a sorted 1-based mode tuple."""
    return sum(math.comb(t - 1 + i, i + 1) for i, t in enumerate(modes))


def unrank(r: int, n: int, m: int) -> tuple[int, ...]:
    """Inverse of :func:`rank`."""
    total = count_states(n, m)
    if not 0 <= r < total:
        raise IndexError(f"rank {r} outside [0, {total})")
    out = [0] * n
    top = m + n - 2
    for i in range(n - 1, -1, -1):
        # largest c with comb(c, i + 1) <= r
        c = top
        while math.comb(c, i + 1) > r:
            c -= 1
        r -= math.comb(c, i + 1)
        out[i] = c - i + 1
        top = c - 1
    return tuple(out)


def iter_modes(n: int, m: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield sorted 1-based mode tuples with colex rank in ``[start, stop)``."""
    total = count_states(n, m)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    t = list(unrank(start, n, m))
    for _ in range(stop - start):
        yield tuple(t)
        # colex successor: bump the first entry that can grow, reset the ones below it
        i = 0
        while i < n - 1 and t[i] == t[i + 1]:
            i += 1
        if i == n - 1 and t[i] == m:
            return
        t[i] += 1
        for k in range(i):
            t[k] = 1


def enumerate_outputs(n: int, m: int, start: int = 0, stop: int | None = None) -> Iterator[FockState]:
    """Stream every n-particle output state on m modes in colex order."""
    for modes in iter_modes(n, m, start, stop):
        yield FockState(modes, m)


def partition_ranges(total: int, k: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into ``k`` contiguous, nearly equal ranges."""
    if k < 1:
        raise ValueError("need at least one partition")
    k = min(k, max(total, 1))
    base, extra = divmod(total, k)
    ranges = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        ranges.append((start, start + size))
        start += size
    return ranges


def scattering_matrix(U: UnitaryMatrix, input: FockState, output: FockState) -> ScatteringMatrix:
    if input.n != output.n:
        raise ValueError(f"particle number mismatch: {input.n} in, {output.n} out")
    if input.m != U.m or output.m != U.m:
        raise ValueError(f"states on {input.m}/{output.m} modes do not fit a {U.m}-mode unitary")
    rows = U.entries
    entries = tuple(tuple(rows[h - 1][g - 1] for g in input.modes) for h in output.modes)
    return ScatteringMatrix(entries, U.norm, input, output, U.exact)


def standard_input(n: int, c: int, m: int) -> FockState:
    """One particle in each of modes ``1 + n*c, ..., n + n*c``."""
    if not (is_power_of_two(n) and is_power_of_two(m)):
        raise ValueError("n and m must be powers of two")
    if n > m:
        raise ValueError(f"n={n} exceeds m={m}")
    if not 0 <= c <= m // n - 1:
        raise ValueError(f"block offset c={c} outside [0, {m // n - 1}]")
    return FockState(tuple(range(1 + n * c, n + n * c + 1)), m)
