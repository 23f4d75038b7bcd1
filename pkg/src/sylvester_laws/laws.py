"""Suppression-law predicates, suppressed-state counting and the brute-force verifier.

The multi-particle laws apply to ``n = 2**q`` particles entering a ``2**p``-mode
Sylvester interferometer one per mode in a contiguous block
``(1 + n*c, ..., n + n*c)``.  Other inputs are rejected by the predicates; brute
force through :mod:`sylvester_laws.interference` still handles them.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Sequence, Union

from .fock import FockState, count_states, iter_modes, standard_input
from .hadamard import build_sylvester, is_power_of_two, log2_exact, sylvester_element
from .interference import Statistics, amplitude, check_budget, format_decimal
from .parallel import map_ranges

LAWS = (
    "two-boson-first-pair",
    "two-fermion-first-pair",
    "two-boson-any-pair",
    "boson-xor",
    "fermion-mod",
)

Modes = Union[FockState, Sequence[int]]


def _modes(output: Modes) -> tuple[int, ...]:
    if isinstance(output, FockState):
        return output.modes
    return tuple(sorted(output))


def _check_sizes(n: int, m: int) -> int:
    """Validate ``n = 2**q <= m = 2**p`` and return ``q``."""
    if not (is_power_of_two(n) and is_power_of_two(m)):
        raise ValueError(f"n={n} and m={m} must both be powers of two")
    if n > m:
        raise ValueError(f"n={n} exceeds m={m}")
    return log2_exact(n)


def _check_output(modes: tuple[int, ...], n: int, m: int) -> None:
    if len(modes) != n:
        raise ValueError(f"output {modes} does not hold {n} particles")
    if modes[0] < 1 or modes[-1] > m:
        raise ValueError(f"output {modes} has modes outside 1..{m}")


def check_law_input(input: FockState, n: int, m: int) -> int:
    """Return the block offset ``c`` of a standard input, or raise."""
    _check_sizes(n, m)
    first = input.modes[0] - 1
    if input.m != m or first % n or input != standard_input(n, first // n, m):
        raise ValueError(f"input {input} is not a contiguous block of {n} modes starting at 1 + {n}c")
    return first // n


def boson_xor_suppressed(output: Modes, n: int, m: int) -> bool:
    """XOR of the low ``q`` bits of ``g_i - 1`` is nonzero."""
    _check_sizes(n, m)
    modes = _modes(output)
    _check_output(modes, n, m)
    acc = 0
    for g in modes:
        acc ^= g - 1
    # n - 1 masks the q low bits
    return acc & (n - 1) != 0


def fermion_mod_suppressed(output: Modes, n: int, m: int) -> bool:
    """Allowed iff the residues ``g_i mod n`` are all distinct.

    Equivalently, the particles can be labelled so that ``g_i mod n == i mod n``
    for every ``i``.  Doubly occupied outputs always share a residue and so are
    suppressed.
    """
    _check_sizes(n, m)
    modes = _modes(output)
    _check_output(modes, n, m)
    return len({g % n for g in modes}) != n


def two_boson_first_pair_suppressed(output: Modes, m: int) -> bool:
    i, j = _modes(output)
    _check_output((i, j), 2, m)
    return i % 2 != j % 2


def two_fermion_first_pair_suppressed(output: Modes, m: int) -> bool:
    i, j = _modes(output)
    _check_output((i, j), 2, m)
    return i % 2 == j % 2


def _column_pair_type(p: int, row: int, a: int, b: int) -> int:
    # +1 when the row has equal signs in input columns a, b; -1 otherwise
    return sylvester_element(p, row - 1, a - 1) * sylvester_element(p, row - 1, b - 1)


def two_boson_any_pair_suppressed(output: Modes, input: Modes, m: int) -> bool:
    """Two bosons entering distinct modes (a, b) are suppressed at an output
    iff its two rows fall in different sign classes of the input column pair.
    """
    p = log2_exact(m)
    a, b = _modes(input)
    if a == b:
        raise ValueError("input modes must differ")
    i, j = _modes(output)
    _check_output((i, j), 2, m)
    return _column_pair_type(p, i, a, b) != _column_pair_type(p, j, a, b)


def two_particle_amplitude_law(i: int, j: int, p: int, statistics: Statistics | str) -> Fraction:
    """Squared amplitude modulus for two particles entering modes (1, 2) of U_{2**p}.

    Bosons: ``1/2**(p-1)`` in modulus for distinct same-parity outputs,
    ``1/2**(p-1/2)`` for ``i == j`` and zero otherwise.  Fermions:
    ``1/2**(p-1)`` for opposite parity and zero otherwise.  The modulus is the
    square root of the returned value.
    """
    statistics = Statistics(statistics)
    m = 1 << p
    if p < 1 or not (1 <= i <= j <= m):
        raise ValueError(f"need 1 <= i <= j <= {m}, got ({i}, {j})")
    same_parity = i % 2 == j % 2
    if statistics is Statistics.BOSON:
        if i == j:
            return Fraction(1, 2 ** (2 * p - 1))
        return Fraction(1, 4 ** (p - 1)) if same_parity else Fraction(0)
    if statistics is Statistics.FERMION:
        return Fraction(0) if same_parity else Fraction(1, 4 ** (p - 1))
    raise ValueError("two-particle law is defined for bosons and fermions only")


def two_particle_any_input_count(
    i: int, j: int, m: int, statistics: Statistics | str, method: str = "brute"
) -> int:
    """Number of suppressed two-particle outputs for an input on modes (i, j).

    ``method="brute"`` evaluates every output amplitude exactly.
    ``method="reorder"`` classifies the rows of the two input columns by their
    relative sign: a row pair from different classes has a vanishing permanent,
    a pair from the same class (including a repeated row) a vanishing
    determinant.
    """
    statistics = Statistics(statistics)
    if statistics is Statistics.DISTINGUISHABLE:
        raise ValueError("counts are defined for bosons and fermions only")
    p = log2_exact(m)
    if i == j:
        raise ValueError("input modes must differ")
    if not (1 <= i <= m and 1 <= j <= m):
        raise ValueError(f"input modes must lie in 1..{m}")
    if method == "brute":
        U = build_sylvester(p)
        inp = FockState((i, j), m)
        return sum(
            1 for modes in iter_modes(2, m) if amplitude(U, inp, FockState(modes, m), statistics).suppressed
        )
    if method == "reorder":
        same = sum(1 for r in range(1, m + 1) if _column_pair_type(p, r, i, j) == 1)
        diff = m - same
        if statistics is Statistics.BOSON:
            return same * diff
        return math.comb(same + 1, 2) + math.comb(diff + 1, 2)
    raise ValueError(f"unknown method {method!r}")


def mode_reduction(output: Modes, n: int, m: int) -> FockState:
    """Map each output mode g to ``((g - 1) mod n) + 1``.

    The map is applied entrywise, so outputs with any particle count are
    accepted; the suppression equivalence holds for n-particle outputs.
    """
    _check_sizes(n, m)
    modes = _modes(output)
    _check_output(modes, len(modes), m)
    return FockState(tuple((g - 1) % n + 1 for g in modes), n)


def predicate(statistics: Statistics | str):
    statistics = Statistics(statistics)
    if statistics is Statistics.BOSON:
        return boson_xor_suppressed
    if statistics is Statistics.FERMION:
        return fermion_mod_suppressed
    raise ValueError("suppression laws are defined for bosons and fermions only")


@dataclass(frozen=True)
class LawVerdict:
    output: FockState
    predicted_suppressed: bool
    law: str


def law_verdict(output: FockState, input: FockState, statistics: Statistics | str) -> LawVerdict:
    """Apply the most specific law available for this input."""
    statistics = Statistics(statistics)
    n, m = input.n, input.m
    if n == 2 and input.modes == (1, 2):
        if statistics is Statistics.BOSON:
            return LawVerdict(output, two_boson_first_pair_suppressed(output, m), "two-boson-first-pair")
        if statistics is Statistics.FERMION:
            return LawVerdict(output, two_fermion_first_pair_suppressed(output, m), "two-fermion-first-pair")
    if n == 2 and statistics is Statistics.BOSON and len(set(input.modes)) == 2:
        try:
            check_law_input(input, n, m)
        except ValueError:
            return LawVerdict(output, two_boson_any_pair_suppressed(output, input, m), "two-boson-any-pair")
    check_law_input(input, n, m)
    law = "boson-xor" if statistics is Statistics.BOSON else "fermion-mod"
    return LawVerdict(output, predicate(statistics)(output, n, m), law)


@dataclass(frozen=True)
class SuppressionCounts:
    n: int
    m: int
    statistics: Statistics
    suppressed: int
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.suppressed, self.total)

    @property
    def allowed(self) -> int:
        return self.total - self.suppressed

    def cell(self) -> str:
        return f"{self.suppressed}/{self.total}"


def _count_chunk(n: int, m: int, statistics: Statistics, start: int, stop: int) -> int:
    test = predicate(statistics)
    return sum(1 for modes in iter_modes(n, m, start, stop) if test(modes, n, m))


def _boson_allowed_dp(n: int, m: int) -> int:
    # residue classes of g - 1 mod n each hold m/n modes; a class contributes
    # its residue to the XOR when it holds an odd number of particles
    per_class = m // n
    ways = {(0, 0): 1}
    for residue in range(n):
        nxt: dict[tuple[int, int], int] = {}
        for (used, acc), w in ways.items():
            for k in range(n - used + 1):
                key = (used + k, acc ^ residue if k & 1 else acc)
                nxt[key] = nxt.get(key, 0) + w * math.comb(per_class + k - 1, k)
        ways = nxt
    return ways.get((n, 0), 0)


def count_suppressed(
    n: int,
    m: int,
    statistics: Statistics | str,
    method: str = "dp",
    budget: int | None = None,
    threads: int = 1,
) -> SuppressionCounts:
    """Exact number of outputs suppressed by the law, out of C(m + n - 1, n).

    ``method="enumerate"`` applies the predicate to every output state.
    ``method="dp"`` counts without enumeration: a dynamic program over residue
    classes for bosons, ``(m/n)**n`` allowed states for fermions.
    """
    statistics = Statistics(statistics)
    _check_sizes(n, m)
    total = count_states(n, m)
    if method == "enumerate":
        check_budget(n, m, budget)
        parts = map_ranges(partial(_count_chunk, n, m, statistics), total, threads)
        suppressed = sum(parts)
    elif method == "dp":
        if statistics is Statistics.BOSON:
            suppressed = total - _boson_allowed_dp(n, m)
        elif statistics is Statistics.FERMION:
            suppressed = total - (m // n) ** n
        else:
            raise ValueError("suppression laws are defined for bosons and fermions only")
    else:
        raise ValueError(f"unknown method {method!r}")
    return SuppressionCounts(n, m, statistics, suppressed, total)


@dataclass
class SuppressionReport:
    """Law predicate versus exact brute force over every output state.

    ``pauli_forbidden`` counts outputs with a doubly occupied mode; for
    fermions these are included in ``suppressed`` and reported separately so
    either counting convention can be read off.
    """

    n: int
    m: int
    c: int
    statistics: Statistics
    input: FockState
    suppressed: int
    total: int
    pauli_forbidden: int
    probability_sum: Fraction
    mismatches: list[FockState] = field(default_factory=list)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.suppressed, self.total)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.probability_sum == 1

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "c": self.c,
            "statistics": self.statistics.value,
            "input": list(self.input.modes),
            "suppressed": self.suppressed,
            "total": self.total,
            "fraction": f"{self.suppressed}/{self.total}",
            "decimal": format_decimal(self.fraction),
            "pauli_forbidden": self.pauli_forbidden,
            "probability_sum": f"{self.probability_sum.numerator}/{self.probability_sum.denominator}",
            "mismatches": [list(s.modes) for s in self.mismatches],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _verify_chunk(n: int, m: int, c: int, statistics: Statistics, start: int, stop: int):
    U = build_sylvester(log2_exact(m))
    inp = standard_input(n, c, m)
    test = predicate(statistics)
    suppressed = pauli = 0
    prob = Fraction(0)
    mismatches = []
    for modes in iter_modes(n, m, start, stop):
        state = FockState(modes, m)
        predicted = test(modes, n, m)
        result = amplitude(U, inp, state, statistics)
        if predicted != result.suppressed:
            mismatches.append(state)
        suppressed += predicted
        pauli += len(set(modes)) < n
        prob += result.probability
    return suppressed, pauli, prob, mismatches


def verify_law(
    n: int,
    m: int,
    c: int,
    statistics: Statistics | str,
    budget: int | None = None,
    threads: int = 1,
) -> SuppressionReport:
    """Compare the law with exact amplitudes for every output of ``standard_input(n, c, m)``."""
    statistics = Statistics(statistics)
    _check_sizes(n, m)
    inp = standard_input(n, c, m)
    total = check_budget(n, m, budget)
    parts = map_ranges(partial(_verify_chunk, n, m, c, statistics), total, threads)
    suppressed = sum(p[0] for p in parts)
    pauli = sum(p[1] for p in parts)
    prob = sum((p[2] for p in parts), Fraction(0))
    mismatches = [s for p in parts for s in p[3]]
    return SuppressionReport(n, m, c, statistics, inp, suppressed, total, pauli, prob, mismatches)


def asymptotic_fraction(n: int, statistics: Statistics | str) -> Fraction:
    """Large-m suppressed fraction: (n-1)/n for bosons, 1 - n!/n**n for fermions."""
    statistics = Statistics(statistics)
    if statistics is Statistics.BOSON:
        return Fraction(n - 1, n)
    if statistics is Statistics.FERMION:
        return 1 - Fraction(math.factorial(n), n**n)
    raise ValueError("suppression laws are defined for bosons and fermions only")


TABLE_NS = (2, 4, 8)
TABLE_MS = (2, 4, 8, 16, 32, 64)


def suppression_table(
    statistics: Statistics | str, ns: Sequence[int] = TABLE_NS, ms: Sequence[int] = TABLE_MS
) -> dict[tuple[int, int], SuppressionCounts]:
    return {(n, m): count_suppressed(n, m, statistics, "dp") for n in ns for m in ms if m >= n}


def table_to_csv(table: dict[tuple[int, int], SuppressionCounts], statistics: Statistics | str) -> str:
    """Rows n, columns m; each cell ``suppressed/total`` followed by its decimal."""
    statistics = Statistics(statistics)
    ns = sorted({n for n, _ in table})
    ms = sorted({m for _, m in table})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["n"]
    for m in ms:
        header += [f"m={m}", f"m={m} decimal"]
    writer.writerow(header + ["asymptotic"])
    for n in ns:
        row = [str(n)]
        for m in ms:
            cell = table.get((n, m))
            row += [cell.cell(), format_decimal(cell.fraction)] if cell else ["", ""]
        writer.writerow(row + [format_decimal(asymptotic_fraction(n, statistics))])
    return buf.getvalue()
