import math
from fractions import Fraction

import pytest

from sylvester_laws.fock import FockState, standard_input
from sylvester_laws.hadamard import build_fourier
from sylvester_laws.interference import distinguishable_distribution, distribution
from sylvester_laws.stats import (
    distinguishable_mean,
    full_bunching_probability,
    occupancy_profile,
    occupancy_ratio_curve,
    ratio_curve_csv,
)


def test_hom_occupancy(sylvester):
    prof = occupancy_profile(sylvester(1), FockState((1, 2), 2), "boson")
    assert prof.histogram == {1: 1, 2: 0}
    assert prof.mean == 1


def test_ratio_n2_m2():
    assert occupancy_ratio_curve(2, [2]) == [(2, Fraction(2, 3))]
    assert distinguishable_mean(2, 2) == Fraction(3, 2)


@pytest.mark.parametrize("n,m,c", [(2, 4, 1), (2, 8, 3), (4, 8, 0), (4, 8, 1), (4, 16, 2), (8, 8, 0)])
@pytest.mark.parametrize("stat", ["boson", "fermion", "distinguishable"])
def test_reduced_matches_enumeration(sylvester, n, m, c, stat):
    U = sylvester(m.bit_length() - 1)
    inp = standard_input(n, c, m)
    full = occupancy_profile(U, inp, stat, "enumerate")
    reduced = occupancy_profile(U, inp, stat, "reduced")
    assert full.histogram == reduced.histogram
    assert full.total == 1


def test_reduced_needs_standard_input(sylvester):
    with pytest.raises(ValueError):
        occupancy_profile(sylvester(2), FockState((2, 3), 4), "boson", "reduced")
    with pytest.raises(ValueError):
        occupancy_profile(build_fourier(4), FockState((1, 2), 4), "boson", "reduced")


def test_mean_is_weighted_histogram(sylvester):
    prof = occupancy_profile(sylvester(3), standard_input(4, 0, 8), "boson")
    assert prof.mean == sum(k * p for k, p in prof.histogram.items())
    assert 1 <= prof.mean <= 4


@pytest.mark.parametrize("n,m", [(1, 4), (2, 8), (3, 4), (4, 16), (8, 32)])
def test_distinguishable_closed_form(n, m):
    # independent oracle: linearity of expectation over modes
    oracle = m * (1 - ((m - 1) / m) ** n)
    assert abs(float(distinguishable_mean(n, m)) - oracle) < 1e-9


def test_fig2b_means(sylvester):
    inp = standard_input(8, 0, 8)
    syl = occupancy_profile(sylvester(3), inp, "boson")
    four = occupancy_profile(build_fourier(8), inp, "boson")
    dist = occupancy_profile(sylvester(3), inp, "distinguishable")
    assert abs(float(syl.mean) - 4.1) < 0.05
    assert abs(four.mean - 4.1) < 0.05
    assert abs(float(dist.mean) - 5.3) < 0.05
    assert dist.mean == distinguishable_mean(8, 8)


def test_ratio_curves_monotone():
    for n in (2, 4, 8):
        curve = occupancy_ratio_curve(n, [m for m in (2, 4, 8, 16, 32) if m >= n])
        ratios = [r for _, r in curve]
        assert all(r < 1 for r in ratios)
        assert ratios == sorted(ratios)
    text = ratio_curve_csv({2: occupancy_ratio_curve(2, [2, 4])})
    assert text.splitlines()[1] == "2,2,2/3,0.666666666666667"


def test_full_bunching_examples(sylvester):
    assert full_bunching_probability(2, 2) == Fraction(1, 2)
    assert full_bunching_probability(4, 4) == Fraction(24, 256)
    table = distribution(sylvester(2), standard_input(4, 0, 4), "boson").as_dict()
    assert table[(1, 1, 1, 1)] == full_bunching_probability(4, 4)
    with pytest.raises(ValueError):
        full_bunching_probability(4, 2)


@pytest.mark.parametrize("n", [2, 4])
def test_bunching_enhancement(sylvester, n):
    U = sylvester(n.bit_length() - 1)
    classical = distinguishable_distribution(U, standard_input(n, 0, n)).as_dict()[(1,) * n]
    assert full_bunching_probability(n, n) == math.factorial(n) * classical


def test_full_bunching_general_m(sylvester):
    table = distribution(sylvester(3), standard_input(2, 0, 8), "boson").as_dict()
    for g in range(1, 9):
        assert table[(g, g)] == full_bunching_probability(2, 8)
