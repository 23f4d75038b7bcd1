"""Exact multi-particle interference in Sylvester and Fourier interferometers."""

from .fock import FockState, count_states, enumerate_outputs, scattering_matrix, standard_input
from .hadamard import build_fourier, build_sylvester, sylvester_element
from .interference import Statistics, amplitude, distinguishable_distribution, distribution
from .laws import (
    boson_xor_suppressed,
    count_suppressed,
    fermion_mod_suppressed,
    mode_reduction,
    two_particle_amplitude_law,
    two_particle_any_input_count,
    verify_law,
)
from .permcore import determinant_exact, permanent_naive, permanent_ryser, xor_vanishing_test
from .stats import full_bunching_probability, occupancy_profile, occupancy_ratio_curve

__all__ = [
    "FockState",
    "Statistics",
    "amplitude",
    "boson_xor_suppressed",
    "build_fourier",
    "build_sylvester",
    "count_states",
    "count_suppressed",
    "determinant_exact",
    "distinguishable_distribution",
    "distribution",
    "enumerate_outputs",
    "fermion_mod_suppressed",
    "full_bunching_probability",
    "mode_reduction",
    "occupancy_profile",
    "occupancy_ratio_curve",
    "permanent_naive",
    "permanent_ryser",
    "scattering_matrix",
    "standard_input",
    "sylvester_element",
    "two_particle_amplitude_law",
    "two_particle_any_input_count",
    "verify_law",
    "xor_vanishing_test",
]
