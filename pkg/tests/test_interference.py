import csv
import io
import itertools
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from sylvester_laws.fock import FockState, count_states, iter_modes, standard_input
from sylvester_laws.hadamard import UnitaryMatrix, build_fourier
from sylvester_laws.interference import (
    BudgetError,
    Statistics,
    amplitude,
    distinguishable_distribution,
    distribution,
)
from sylvester_laws.permcore import permanent_naive
from sylvester_laws.stats import distinguishable_mean


def test_hom_amplitudes(sylvester):
    H2 = sylvester(1)
    inp = FockState((1, 2), 2)
    assert amplitude(H2, inp, FockState((1, 2), 2), "boson").probability == 0
    res = amplitude(H2, inp, FockState((1, 1), 2), "boson")
    # naive oracle on the row-selected core [[1, 1], [1, 1]]
    assert res.amplitude_core == permanent_naive([[1, 1], [1, 1]]) == 2
    assert res.normalization == 2 and res.scale == 4
    assert res.probability == Fraction(1, 2)


def test_two_bosons_in_h8(sylvester):
    H8 = sylvester(3)
    inp = FockState((1, 2), 8)
    for i, j in itertools.combinations_with_replacement(range(1, 9), 2):
        p = amplitude(H8, inp, FockState((i, j), 8), "boson").probability
        if i == j:
            assert p == Fraction(1, 32)  # |amp| = 1/(4 sqrt 2)
        elif i % 2 == j % 2:
            assert p == Fraction(1, 16)  # |amp| = 1/4
        else:
            assert p == 0


def test_amplitude_rejects_bad_input(sylvester):
    with pytest.raises(ValueError):
        amplitude(sylvester(1), FockState((1, 2), 2), FockState((1, 2), 2), "distinguishable")
    with pytest.raises(ValueError):
        amplitude(sylvester(1), FockState((1, 2), 2), FockState((1,), 2), "boson")


def test_small_distributions(sylvester):
    H2 = sylvester(1)
    inp = FockState((1, 2), 2)
    boson = distribution(H2, inp, "boson").as_dict()
    assert boson == {(1, 1): Fraction(1, 2), (1, 2): 0, (2, 2): Fraction(1, 2)}
    fermion = distribution(H2, inp, "fermion").as_dict()
    assert fermion == {(1, 1): 0, (1, 2): 1, (2, 2): 0}


@pytest.mark.parametrize("p", [1, 2, 3])
def test_single_particle_uniform(sylvester, p):
    m = 1 << p
    for mode in range(1, m + 1):
        table = distribution(sylvester(p), FockState((mode,), m), "boson")
        assert all(prob == Fraction(1, m) for _, prob in table.rows)


def test_single_particle_general_unitary():
    rng = np.random.default_rng(3)
    Z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    Q, _ = np.linalg.qr(Z)
    U = UnitaryMatrix.from_array(Q)
    table = distribution(U, FockState((3,), 4), "boson")
    for state, prob in table.rows:
        assert abs(prob - abs(Q[state.modes[0] - 1, 2]) ** 2) < 1e-12


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exact_normalization_all_inputs(sylvester, n, p):
    U = sylvester(p)
    m = U.m
    for modes in iter_modes(n, m):
        inp = FockState(modes, m)
        assert distribution(U, inp, "boson").total == 1
        if len(set(modes)) == n:
            table = distribution(U, inp, "fermion")
            assert table.total == 1
            for state, prob in table.rows:
                if state.occupied < n:
                    assert prob == 0


def test_normalization_n8_m8(sylvester):
    inp = standard_input(8, 0, 8)
    assert distribution(sylvester(3), inp, "boson").total == 1
    assert distribution(sylvester(3), inp, "fermion").total == 1


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_fourier_normalization(m):
    F = build_fourier(m)
    n = min(m, 3)
    inp = FockState(tuple(range(1, n + 1)), m)
    for stat in ("boson", "fermion", "distinguishable"):
        assert abs(distribution(F, inp, stat).total - 1) < 1e-9


@pytest.mark.parametrize("n", [2, 4])
def test_full_bunching_from_distribution(sylvester, n):
    table = distribution(sylvester(n.bit_length() - 1), standard_input(n, 0, n), "boson").as_dict()
    for mode in range(1, n + 1):
        assert table[(mode,) * n] == Fraction(math.factorial(n), n**n)


def test_distinguishable_examples(sylvester):
    H2 = sylvester(1)
    assert distinguishable_distribution(H2, FockState((1,), 2)).as_dict() == {(1,): Fraction(1, 2), (2,): Fraction(1, 2)}
    table = distinguishable_distribution(H2, FockState((1, 2), 2)).as_dict()
    assert table == {(1, 1): Fraction(1, 4), (1, 2): Fraction(1, 2), (2, 2): Fraction(1, 4)}
    table = distinguishable_distribution(sylvester(3), standard_input(8, 0, 8))
    assert table.total == 1
    d = table.as_dict()
    for mode in range(1, 9):
        assert d[(mode,) * 8] == Fraction(1, 8**8)


@pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (3, 3), (4, 3)])
def test_distinguishable_mean_closed_form(sylvester, n, p):
    U = sylvester(p)
    m = U.m
    table = distinguishable_distribution(U, FockState(tuple(range(1, n + 1)), m))
    mean = sum(prob * s.occupied for s, prob in table.rows)
    assert abs(float(mean) - float(distinguishable_mean(n, m))) < 1e-9
    assert mean == distinguishable_mean(n, m)


def test_fourier_distinguishable_matches_uniform():
    F = build_fourier(4)
    table = distinguishable_distribution(F, FockState((1, 2, 3), 4))
    for state, prob in table.rows:
        expected = math.factorial(3) / (4**3 * state.factorial_product())
        assert abs(prob - expected) < 1e-12


def test_output_relabelling_permutes_distribution(sylvester):
    H = sylvester(2)
    perm = [2, 0, 3, 1]  # new row i is old row perm[i]
    relabelled = UnitaryMatrix(tuple(H.entries[r] for r in perm), H.norm, True)
    inp = FockState((1, 2), 4)
    old = distribution(H, inp, "boson").as_dict()
    new = distribution(relabelled, inp, "boson").as_dict()
    for modes, prob in new.items():
        mapped = tuple(sorted(perm[g - 1] + 1 for g in modes))
        assert old[mapped] == prob


def test_budget(sylvester):
    with pytest.raises(BudgetError):
        distribution(sylvester(4), standard_input(8, 0, 16), "boson", budget=1000)


def test_parallel_matches_serial(sylvester):
    inp = standard_input(4, 1, 16)
    serial = distribution(sylvester(4), inp, "boson", threads=1)
    parallel = distribution(sylvester(4), inp, "boson", threads=3)
    assert serial.rows == parallel.rows
    assert len(serial.rows) == count_states(4, 16)


def test_exports(sylvester):
    table = distribution(sylvester(1), FockState((1, 2), 2), "boson")
    rows = list(csv.reader(io.StringIO(table.to_csv())))
    assert rows[0] == ["state", "probability", "decimal"]
    assert rows[1:] == [["1;1", "1/2", "0.5"], ["1;2", "0/1", "0"], ["2;2", "1/2", "0.5"]]
    payload = json.loads(table.to_json())
    assert payload["total"] == "1/1"
    assert payload["rows"][1] == {"state": [1, 2], "probability": "0/1", "decimal": "0"}
    assert Statistics("fermion") is Statistics.FERMION
