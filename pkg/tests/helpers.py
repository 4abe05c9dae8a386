"""Shared sampling and multiset-comparison utilities for the test suite."""

from itertools import permutations

import numpy as np

import cavmag as cm


def draw_family(rng, eta_range=(1.0, 3.0), gamma_range=(0.5, 3.0), ep3_ratio=False):
    """Random pseudo-Hermitian family; k is either arbitrary or EP3-compatible."""
    eta = float(rng.uniform(*eta_range))
    gamma_2 = float(rng.uniform(*gamma_range))
    if ep3_ratio:
        k = cm.k_from_eta(eta)
    else:
        k = float(rng.uniform(0.2, 2.0))
    return cm.PseudoHermitianFamily(eta=eta, k=k, gamma_2=gamma_2)


def draw_realization(rng, g_span=(1.0, 4.0), **family_kwargs):
    """Random family plus a coupling g_1 in [span_lo, span_hi] * g_min."""
    family = draw_family(rng, **family_kwargs)
    g_floor = cm.g_min(family)
    g_1 = float(rng.uniform(g_span[0], g_span[1])) * g_floor
    return family, g_1, cm.realize_family(family, g_1)


def matched_max_error(actual, expected):
    """Smallest (over pairings) maximum elementwise distance of two multisets."""
    actual = [complex(v) for v in actual]
    expected = [complex(v) for v in expected]
    return min(
        max(abs(a - e) for a, e in zip(perm, expected))
        for perm in permutations(actual)
    )


def companion_roots(c2, c1, c0):
    """Independent cubic oracle: companion-matrix eigenvalues via np.roots."""
    return np.roots([1.0, c2, c1, c0])
