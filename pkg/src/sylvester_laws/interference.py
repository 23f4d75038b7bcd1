"""Output amplitudes and distributions for bosons, fermions and distinguishable particles."""

from __future__ import annotations

import csv
import enum
import io
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Union

from .fock import FockState, count_states, iter_modes, scattering_matrix
from .hadamard import UnitaryMatrix
from .parallel import map_ranges
from .permcore import determinant, determinant_exact, permanent_cached, permanent_ryser

DEFAULT_BUDGET = int(os.environ.get("SYLVESTER_LAWS_BUDGET", 10**7))

Probability = Union[Fraction, float]


class Statistics(str, enum.Enum):
    BOSON = "boson"
    FERMION = "fermion"
    DISTINGUISHABLE = "distinguishable"

    def __str__(self) -> str:
        return self.value


class BudgetError(RuntimeError):
    """Raised when an enumeration would exceed the configured state budget."""


def check_budget(n: int, m: int, budget: int | None) -> int:
    total = count_states(n, m)
    budget = DEFAULT_BUDGET if budget is None else budget
    if total > budget:
        raise BudgetError(
            f"{total} output states for n={n}, m={m} exceed the budget of {budget}; "
            "use the counting operations (count_suppressed with method='dp') instead"
        )
    return total


@dataclass(frozen=True)
class AmplitudeResult:
    """Amplitude of one input/output transition.

    ``probability == |amplitude_core|**2 / (scale * normalization)`` where
    ``scale = norm**n`` comes from the unitary's 1/sqrt(norm) factor and
    ``normalization`` is the product of input and output occupation factorials.
    """

    amplitude_core: Union[int, complex]
    normalization: int
    scale: int
    probability: Probability

    @property
    def suppressed(self) -> bool:
        return self.amplitude_core == 0


def _probability(core, normalization: int, scale: int, exact: bool) -> Probability:
    if exact:
        return Fraction(core * core, scale * normalization)
    return abs(core) ** 2 / (scale * normalization)


def amplitude(U: UnitaryMatrix, input: FockState, output: FockState, statistics: Statistics | str) -> AmplitudeResult:
    statistics = Statistics(statistics)
    S = scattering_matrix(U, input, output)
    if statistics is Statistics.BOSON:
        core = permanent_cached(S.entries) if U.exact else permanent_ryser(S.entries)
    elif statistics is Statistics.FERMION:
        core = determinant_exact(S.entries) if U.exact else determinant(S.entries)
    else:
        raise ValueError("amplitudes are defined for bosons and fermions only")
    normalization = input.factorial_product() * output.factorial_product()
    scale = U.norm ** input.n
    return AmplitudeResult(core, normalization, scale, _probability(core, normalization, scale, U.exact))


def distinguishable_probability(U: UnitaryMatrix, input: FockState, output: FockState) -> Probability:
    """perm(|S|^2) / prod(nu_i!) with ``|S|^2`` taken entrywise."""
    S = scattering_matrix(U, input, output)
    if U.exact:
        sq = tuple(tuple(x * x for x in row) for row in S.entries)
        return Fraction(permanent_cached(sq), U.norm**input.n * output.factorial_product())
    sq = tuple(tuple(abs(x) ** 2 / U.norm for x in row) for row in S.entries)
    return permanent_ryser(sq) / output.factorial_product()


@dataclass
class DistributionTable:
    input: FockState
    statistics: Statistics
    rows: list[tuple[FockState, Probability]]

    @property
    def total(self) -> Probability:
        return sum((p for _, p in self.rows), Fraction(0) if self.exact else 0.0)

    @property
    def exact(self) -> bool:
        return all(isinstance(p, Fraction) for _, p in self.rows)

    def as_dict(self) -> dict[tuple[int, ...], Probability]:
        return {state.modes: p for state, p in self.rows}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["state", "probability", "decimal"])
        for state, p in self.rows:
            writer.writerow([";".join(map(str, state.modes)), format_fraction(p), format_decimal(p)])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "input": list(self.input.modes),
            "m": self.input.m,
            "statistics": self.statistics.value,
            "total": format_fraction(self.total),
            "rows": [
                {"state": list(s.modes), "probability": format_fraction(p), "decimal": format_decimal(p)}
                for s, p in self.rows
            ],
        }
        return json.dumps(payload, indent=1)


def format_fraction(p: Probability) -> str:
    if isinstance(p, Fraction):
        return f"{p.numerator}/{p.denominator}"
    return format_decimal(p)


def format_decimal(p: Probability) -> str:
    x = float(p)
    if abs(x) < 1e-15:
        x = 0.0
    return f"{x:.15g}"


def _distribution_chunk(U: UnitaryMatrix, input: FockState, statistics: Statistics, start: int, stop: int):
    out = []
    for modes in iter_modes(input.n, U.m, start, stop):
        state = FockState(modes, U.m)
        if statistics is Statistics.DISTINGUISHABLE:
            p = distinguishable_probability(U, input, state)
        else:
            p = amplitude(U, input, state, statistics).probability
        out.append((state, p))
    return out


def distribution(
    U: UnitaryMatrix,
    input: FockState,
    statistics: Statistics | str,
    budget: int | None = None,
    threads: int = 1,
) -> DistributionTable:
    """Probability of every output state, in colex rank order.

    Raises:
        BudgetError: if the number of output states exceeds ``budget``.
    """
    statistics = Statistics(statistics)
    if input.m != U.m:
        raise ValueError(f"input on {input.m} modes does not fit a {U.m}-mode unitary")
    total = check_budget(input.n, U.m, budget)
    chunks = map_ranges(partial(_distribution_chunk, U, input, statistics), total, threads)
    rows = [row for chunk in chunks for row in chunk]
    return DistributionTable(input, statistics, rows)


def distinguishable_distribution(
    U: UnitaryMatrix, input: FockState, budget: int | None = None, threads: int = 1
) -> DistributionTable:
    return distribution(U, input, Statistics.DISTINGUISHABLE, budget, threads)
