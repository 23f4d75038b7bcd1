"""Occupied-mode statistics and bunching probabilities."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .fock import FockState, iter_modes, standard_input
from .hadamard import SylvesterMatrix, UnitaryMatrix, build_sylvester, log2_exact
from .interference import Statistics, distribution, format_decimal, format_fraction
from .permcore import determinant_exact, permanent_cached

Probability = Union[Fraction, float]


@dataclass
class OccupancyProfile:
    n: int
    m: int
    statistics: Statistics
    histogram: dict[int, Probability]

    @property
    def mean(self) -> Probability:
        zero = Fraction(0) if all(isinstance(p, Fraction) for p in self.histogram.values()) else 0.0
        return sum((k * p for k, p in self.histogram.items()), zero)

    @property
    def total(self) -> Probability:
        return sum(self.histogram.values())

    def to_csv(self, label: str | None = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["series", "occupied_modes", "probability", "decimal"])
        name = label or self.statistics.value
        for k in sorted(self.histogram):
            p = self.histogram[k]
            writer.writerow([name, k, format_fraction(p), format_decimal(p)])
        return buf.getvalue()


def _empty_histogram(n: int, m: int, exact: bool) -> dict[int, Probability]:
    zero = Fraction(0) if exact else 0.0
    return {k: zero for k in range(1, min(n, m) + 1)}


def _stirling2(k: int, j: int) -> int:
    return sum((-1) ** i * math.comb(j, i) * (j - i) ** k for i in range(j + 1)) // math.factorial(j)


def _class_polynomial(k: int, size: int) -> list[Fraction]:
    """Coefficients in x of sum over occupations of ``size`` modes by ``k``
    particles of ``x**(occupied) / prod(nu!)``.
    """
    coeffs = [Fraction(0)] * (min(k, size) + 1)
    for j in range(min(k, size) + 1):
        coeffs[j] = Fraction(math.comb(size, j) * math.factorial(j) * _stirling2(k, j), math.factorial(k))
    return coeffs


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _reduced_profile(U: SylvesterMatrix, input: FockState, statistics: Statistics) -> OccupancyProfile:
    # With a standard block input, the scattering-matrix row for output mode g
    # is +-(row (g-1) mod n of H(n)), so |amplitude core| depends only on how
    # many particles land in each residue class.  Within a class of m/n modes
    # the occupation pattern only enters through 1/prod(nu!) and the
    # occupied-mode count, which _class_polynomial sums in closed form.
    n, m = input.n, U.m
    check_standard = standard_input(n, (input.modes[0] - 1) // n, m)
    if check_standard != input:
        raise ValueError(f"reduced occupancy needs a standard block input, got {input}")
    small = build_sylvester(log2_exact(n)).entries
    per_class = m // n
    polys: dict[int, list[Fraction]] = {}
    hist = [Fraction(0)] * (n + 1)
    for residues in iter_modes(n, n):
        if statistics is Statistics.DISTINGUISHABLE:
            weight = math.factorial(n)
        else:
            rows = tuple(small[r - 1] for r in residues)
            core = permanent_cached(rows) if statistics is Statistics.BOSON else determinant_exact(rows)
            weight = core * core
        if weight == 0:
            continue
        counts = [0] * n
        for r in residues:
            counts[r - 1] += 1
        poly = [Fraction(1)]
        for k in counts:
            if k not in polys:
                polys[k] = _class_polynomial(k, per_class)
            poly = _poly_mul(poly, polys[k])
        for occ, coeff in enumerate(poly):
            if coeff:
                hist[occ] += Fraction(weight, m**n) * coeff
    histogram = _empty_histogram(n, m, True)
    for occ in range(1, n + 1):
        if hist[occ]:
            histogram[occ] = hist[occ]
    return OccupancyProfile(n, m, statistics, histogram)


def occupancy_profile(
    U: UnitaryMatrix,
    input: FockState,
    statistics: Statistics | str,
    method: str = "enumerate",
    budget: int | None = None,
    threads: int = 1,
) -> OccupancyProfile:
    """Probability of observing each number of occupied output modes.

    ``method="enumerate"`` aggregates the full output distribution.
    ``method="reduced"`` is exact and enumerates only the residue-class
    occupations; it needs a Sylvester matrix and a standard block input.
    """
    statistics = Statistics(statistics)
    if method == "reduced":
        if not isinstance(U, SylvesterMatrix):
            raise ValueError("reduced occupancy is only available for Sylvester matrices")
        return _reduced_profile(U, input, statistics)
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    table = distribution(U, input, statistics, budget, threads)
    histogram = _empty_histogram(input.n, U.m, table.exact)
    for state, p in table.rows:
        histogram[state.occupied] += p
    return OccupancyProfile(input.n, U.m, statistics, histogram)


def distinguishable_mean(n: int, m: int) -> Fraction:
    """Expected occupied modes for n particles spread uniformly over m modes."""
    return m * (1 - Fraction(m - 1, m) ** n)


def occupancy_ratio_curve(n: int, m_values: Sequence[int], method: str = "reduced") -> list[tuple[int, Fraction]]:
    """Boson/distinguishable ratio of mean occupied modes, input on the first n modes."""
    curve = []
    for m in m_values:
        if m < n:
            raise ValueError(f"m={m} is smaller than n={n}")
        U = build_sylvester(log2_exact(m))
        profile = occupancy_profile(U, standard_input(n, 0, m), Statistics.BOSON, method)
        curve.append((m, profile.mean / distinguishable_mean(n, m)))
    return curve


def full_bunching_probability(n: int, m: int) -> Fraction:
    """Probability that all n bosons leave through one given output mode.

    Holds for any interferometer whose entries all have modulus 1/sqrt(m) and
    one particle per input mode; ``n = m`` gives ``n!/m**m``.
    """
    if n < 1 or m < 1 or n > m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    return Fraction(math.factorial(n), m**n)


def ratio_curve_csv(curves: dict[int, list[tuple[int, Fraction]]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "m", "ratio", "decimal"])
    for n in sorted(curves):
        for m, ratio in curves[n]:
            writer.writerow([n, m, format_fraction(ratio), format_decimal(ratio)])
    return buf.getvalue()
