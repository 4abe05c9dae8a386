"""Spectral solvers: the secular cubic, eigenvalue classification, closed-form
special cases, and location of the second- and third-order exceptional points.

Two independent root-finding routes coexist on purpose.  The generic path
diagonalizes the 3x3 matrix with LAPACK (companion-style QR iteration);
:func:`solve_cubic` is a branch-careful closed-form (Cardano) solver.  Near
an EP3 the roots respond to coefficient noise as epsilon^(1/3), so the two
routes cross-validate each other in the test suite.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import asdict, dataclass
from enum import Enum
from itertools import permutations

import numpy as np

from .errors import BracketFailure, CouplingBelowMinimum, NoPhysicalSolution
from .model import (
    EffectiveHamiltonian,
    PseudoHermitianFamily,
    cubic_coefficients,
    g_min,
    realize_family,
)

__all__ = [
    "SpectrumClass",
    "EigenTriple",
    "Ep3Report",
    "solve_cubic",
    "eigenvalues",
    "symmetric_spectrum",
    "two_mode_spectrum",
    "k_from_eta",
    "eq33_residual",
    "ep3_critical",
    "ep2_locate",
    "cubic_discriminant",
    "track_branches",
]

# |Im| below REAL_RTOL * scale counts as real; clusters tighter than
# COALESCENCE_RTOL * scale count as coalesced.  The coalescence tolerance is
# deliberately looser: a numerically exact EP3 splits its triple root by
# roughly (machine eps)^(1/3) ~ 1e-5 of the spectral scale.
REAL_RTOL = 1e-7
COALESCENCE_RTOL = 1e-4

_CUBE_ROOT_OF_UNITY = complex(-0.5, 0.5 * math.sqrt(3.0))


class SpectrumClass(Enum):
    ALL_REAL = "all_real"
    ONE_REAL_PLUS_CONJUGATE_PAIR = "one_real_plus_conjugate_pair"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class EigenTriple:
    """Three eigenfrequencies (MHz), canonically sorted by (Re, Im)."""

    values: tuple[complex, complex, complex]
    classification: SpectrumClass
    coalescence_order: int


def _sorted_values(values) -> tuple[complex, complex, complex]:
    vals = sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))
    return tuple(vals)


def _classify(values, scale_hint: float, rtol: float, coalescence_rtol: float):
    vals = _sorted_values(values)
    spread = max(abs(a - b) for a in vals for b in vals)
    scale = max(spread, scale_hint, 1e-300)

    real_tol = rtol * scale
    is_real = [abs(v.imag) <= real_tol for v in vals]
    n_real = sum(is_real)
    if n_real == 3:
        cls = SpectrumClass.ALL_REAL
    elif n_real == 1:
        pair = [v for v, r in zip(vals, is_real) if not r]
        closed = abs(pair[0] - pair[1].conjugate()) <= 2.0 * real_tol
        cls = (
            SpectrumClass.ONE_REAL_PLUS_CONJUGATE_PAIR
            if closed
            else SpectrumClass.UNCONSTRAINED
        )
    else:
        cls = SpectrumClass.UNCONSTRAINED

    ctol = coalescence_rtol * scale
    order = max(
        sum(1 for b in vals if abs(a - b) <= ctol) for a in vals
    )
    return EigenTriple(values=vals, classification=cls, coalescence_order=order)


def solve_cubic(c2: complex, c1: complex, c0: complex):
    """Roots of x^3 + c2 x^2 + c1 x + c0 (complex coefficients), closed form.

    Depressed-cubic Cardano with the cube-root branch chosen to avoid
    cancellation.  Returns the roots sorted by (Re, Im).
    """
    c2, c1, c0 = complex(c2), complex(c1), complex(c0)
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2**3 / 27.0 - c2 * c1 / 3.0 + c0

    if p == 0 and q == 0:
        shift = -c2 / 3.0
        return (shift, shift, shift)

    s = cmath.sqrt(0.25 * q * q + p**3 / 27.0)
    u3 = -0.5 * q + s
    alt = -0.5 * q - s
    if abs(alt) > abs(u3):
        u3 = alt
    u = u3 ** (1.0 / 3.0)

    roots = []
    for _ in range(3):
        roots.append(u - p / (3.0 * u) - c2 / 3.0)
        u *= _CUBE_ROOT_OF_UNITY
    return _sorted_values(roots)


def eigenvalues(
    h: EffectiveHamiltonian,
    rtol: float = REAL_RTOL,
    coalescence_rtol: float = COALESCENCE_RTOL,
) -> EigenTriple:
    """Eigenvalues of the 3x3 effective Hamiltonian, classified.

    The reality/coalescence scale is max(spectral spread, largest |Im| of
    the diagonal), so the damping rates set the floor when the spectrum
    collapses.
    """
    vals = np.linalg.eigvals(h.entries)
    scale_hint = float(np.max(np.abs(np.diag(h.entries).imag)))
    return _classify(vals, scale_hint, rtol, coalescence_rtol)


def symmetric_spectrum(
    g_1: float, gamma_2: float, omega_c: float = 0.0
) -> EigenTriple:
    """Closed-form spectrum for the eta = k = 1 family.

    Omega_0 = omega_c and Omega_pm = omega_c +/- sqrt(3 g_1^2 - 4 gamma_2^2),
    an imaginary pair when the radicand is negative.  Valid for
    g_1 >= gamma_2 (= g_min of the symmetric family).
    """
    if gamma_2 <= 0:
        raise ValueError("gamma_2 must be positive")
    if g_1 < gamma_2:
        raise CouplingBelowMinimum(
            f"g_1 = {g_1:g} MHz below symmetric-family g_min = {gamma_2:g} MHz"
        )
    root = cmath.sqrt(complex(3.0 * g_1 * g_1 - 4.0 * gamma_2 * gamma_2, 0.0))
    vals = (omega_c - root, complex(omega_c), omega_c + root)
    return _classify(vals, gamma_2, REAL_RTOL, COALESCENCE_RTOL)


def two_mode_spectrum(
    g_1: float, gamma_1: float, omega_c: float = 0.0
) -> tuple[complex, complex]:
    """Eigenvalues of the PT-symmetric two-mode reduction (no second magnon).

    omega_pm = omega_c +/- sqrt(g_1^2 - gamma_1^2); the EP2 sits at
    g_1 = gamma_1.  The PT conditions omega_1 = omega_c, kappa_g = gamma_1
    are encoded by the signature.
    """
    root = cmath.sqrt(complex(g_1 * g_1 - gamma_1 * gamma_1, 0.0))
    return (omega_c - root, omega_c + root)


def _eq33_sides(eta: float, k2: float) -> tuple[float, float]:
    p_term = (1.0 + eta * k2) / ((1.0 + eta) * eta)
    lhs = 0.25 * (p_term + 3.0 * (1.0 + k2) / (1.0 + eta + eta * eta))
    m = eta - 1.0
    d = 1.0 + 27.0 * (1.0 + eta) ** 2 / (m * m)
    rhs = (p_term - 27.0 * (k2 - eta) / m**3) / d
    return lhs, rhs


def eq33_residual(eta: float, k: float) -> float:
    """LHS - RHS of the EP3 coupling-ratio equation (diagnostic; eta > 1)."""
    if eta <= 1:
        raise ValueError("the coupling-ratio equation requires eta > 1")
    lhs, rhs = _eq33_sides(eta, k * k)
    return lhs - rhs


def k_from_eta(eta: float) -> float:
    """Coupling ratio k = g_2/g_1 at which the family supports an EP3.

    The defining equation is linear in k^2, so the solve is algebraic and
    admits no spurious branch; the eta = 1 value k = 1 is returned as the
    documented limit.  Raises NoPhysicalSolution if the linear solve yields
    k^2 <= 0.
    """
    if eta < 1:
        raise ValueError("eta must be >= 1")
    if eta == 1:
        return 1.0
    lhs0, rhs0 = _eq33_sides(eta, 0.0)
    lhs1, rhs1 = _eq33_sides(eta, 1.0)
    # residual(k2) = a*k2 + b with a, b from the two samples
    b = lhs0 - rhs0
    a = (lhs1 - rhs1) - b
    if a == 0.0:
        raise NoPhysicalSolution(f"coupling-ratio equation degenerate at eta = {eta:g}")
    k2 = -b / a
    if k2 <= 0.0:
        raise NoPhysicalSolution(
            f"coupling-ratio equation gives k^2 = {k2:g} <= 0 at eta = {eta:g}"
        )
    return math.sqrt(k2)


@dataclass(frozen=True)
class Ep3Report:
    """Critical parameters of the third-order exceptional point (MHz)."""

    eta: float
    k: float
    g_ep3: float
    delta_ep3: float
    omega_ep3: float
    g_min: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def ep3_critical(
    eta: float, gamma_2: float, omega_c: float = 0.0
) -> Ep3Report:
    """Locate the EP3 of the family with damping ratio eta.

    eta = 1 uses the closed form g_EP3 = 2 gamma_2/sqrt(3),
    Delta_EP3 = gamma_2/sqrt(3); eta > 1 first solves for k, then evaluates
    the critical-coupling expressions.  The returned point is verified to
    give a numerically triple root of the secular cubic.
    """
    if gamma_2 <= 0:
        raise ValueError("gamma_2 must be positive")
    if eta < 1:
        raise ValueError("eta must be >= 1")
    if eta == 1:
        k = 1.0
        g_ep3 = 2.0 * gamma_2 / math.sqrt(3.0)
        delta_ep3 = gamma_2 / math.sqrt(3.0)
    else:
        k = k_from_eta(eta)
        p_term = (1.0 + eta * k * k) / ((1.0 + eta) * eta)
        q_term = 3.0 * (1.0 + k * k) / (1.0 + eta + eta * eta)
        g_ep3 = 2.0 * gamma_2 / math.sqrt(p_term + q_term)
        delta_ep3 = math.sqrt(p_term * g_ep3**2 - gamma_2**2)
    omega_ep3 = omega_c + (1.0 - eta) * delta_ep3 / 3.0

    family = PseudoHermitianFamily(eta=eta, k=k, gamma_2=gamma_2, omega_c=omega_c)
    report = Ep3Report(
        eta=eta,
        k=k,
        g_ep3=g_ep3,
        delta_ep3=delta_ep3,
        omega_ep3=omega_ep3,
        g_min=g_min(family),
    )

    # triple-root verification; root splitting degrades as residual^(1/3)
    roots = solve_cubic(*cubic_coefficients(realize_family(family, g_ep3)))
    spread = max(abs(r - (omega_ep3 - omega_c)) for r in roots)
    if spread > 1e-4 * gamma_2:
        raise RuntimeError(
            f"EP3 verification failed: root spread {spread:g} MHz at eta = {eta:g}"
        )
    return report


def cubic_discriminant(c2: float, c1: float, c0: float) -> float:
    """Discriminant of x^3 + c2 x^2 + c1 x + c0 with real coefficients.

    Positive: three distinct real roots; negative: one real root and a
    complex-conjugate pair; zero: a repeated root.
    """
    return (
        18.0 * c2 * c1 * c0
        - 4.0 * c2**3 * c0
        + c2**2 * c1**2
        - 4.0 * c1**3
        - 27.0 * c0**2
    )


def ep2_locate(
    eta: float,
    gamma_2: float,
    omega_c: float = 0.0,
    g_upper: float | None = None,
) -> float:
    """Coupling g_EP2 > g_EP3 where the Omega_pm pair re-coalesces (eta > 1).

    Found by bracketed bisection on the discriminant of the secular cubic
    along the family, refined to 1e-9 MHz.  For eta = 1 the pair coalesces
    only at the EP3 itself, so g_EP3 is returned directly.  Raises
    BracketFailure when the discriminant does not change sign in
    (g_EP3, g_upper].
    """
    report = ep3_critical(eta, gamma_2, omega_c)
    if eta == 1:
        return report.g_ep3
    if g_upper is None:
        g_upper = 2.0 * report.g_ep3
    if g_upper <= report.g_ep3:
        raise ValueError("g_upper must exceed g_EP3")

    family = PseudoHermitianFamily(
        eta=eta, k=report.k, gamma_2=gamma_2, omega_c=omega_c
    )

    def disc(g: float) -> float:
        return cubic_discriminant(*cubic_coefficients(realize_family(family, g)))

    grid = np.linspace(report.g_ep3, g_upper, 513)
    lo = hi = None
    f_prev = disc(grid[1])
    for i in range(2, len(grid)):
        f_next = disc(grid[i])
        if f_prev < 0.0 <= f_next:
            lo, hi = grid[i - 1], grid[i]
            break
        f_prev = f_next
    if lo is None:
        raise BracketFailure(
            f"discriminant does not change sign in ({report.g_ep3:g}, {g_upper:g}]"
        )

    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if disc(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def track_branches(previous, candidates):
    """Reorder candidates to continue the branches in `previous`.

    Picks the permutation of the three candidate eigenvalues minimizing the
    total complex distance to the previous triple, keeping sweep curves
    continuous through near-crossings.
    """
    prev = tuple(complex(v) for v in previous)
    cand = tuple(complex(v) for v in candidates)
    return min(
        permutations(cand),
        key=lambda perm: sum(abs(p - q) for p, q in zip(perm, prev)),
    )
