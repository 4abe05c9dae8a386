"""Parameter types and effective-Hamiltonian machinery for the three-mode
cavity-magnonics model: one driven microwave cavity mode coupled to two
lossy Kittel modes.

Unit convention: every frequency and rate is nu = omega/2pi in MHz.  All
formulas in this package are homogeneous in frequency, so they hold
verbatim in these units; the single place a 2*pi enters is time-domain
propagation (see :mod:`cavmag.dynamics`).  The cavity frequency omega_c is
carried only as a display offset -- everything physical depends on the
detunings omega_j - omega_c.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import CouplingBelowMinimum

__all__ = [
    "CavityParams",
    "MagnonParams",
    "SystemParams",
    "PseudoHermitianFamily",
    "EffectiveHamiltonian",
    "effective_gain",
    "build_effective_hamiltonian",
    "check_pseudo_hermitian",
    "realize_family",
    "g_min",
    "cubic_coefficients",
]


def effective_gain(kappa_1: float, kappa_2: float, kappa_int: float) -> float:
    """Effective cavity gain kappa_g = kappa_1 + kappa_2 - kappa_int (MHz).

    Two-port coherent driving converts the port decay rates into an
    apparent gain of the cavity mode while the intrinsic loss still counts
    against it.  The result may be negative; callers decide whether the
    gain regime applies.
    """
    if kappa_1 < 0 or kappa_2 < 0 or kappa_int < 0:
        raise ValueError("decay rates must be non-negative")
    return kappa_1 + kappa_2 - kappa_int


@dataclass(frozen=True)
class CavityParams:
    """Cavity mode: frequency and the three decay channels (MHz)."""

    omega_c: float
    kappa_1: float
    kappa_2: float
    kappa_int: float

    def __post_init__(self):
        if self.kappa_1 < 0 or self.kappa_2 < 0 or self.kappa_int < 0:
            raise ValueError("cavity decay rates must be non-negative")

    @property
    def kappa_gain(self) -> float:
        """Derived effective gain; never stored independently."""
        return effective_gain(self.kappa_1, self.kappa_2, self.kappa_int)

    @property
    def kappa_total(self) -> float:
        """Total linewidth kappa_1 + kappa_2 + kappa_int of the undriven cavity."""
        return self.kappa_1 + self.kappa_2 + self.kappa_int


@dataclass(frozen=True)
class MagnonParams:
    """One Kittel mode: frequency, damping rate, and cavity coupling (MHz).

    gamma = 0 is admitted so the Hermitian limit stays constructible; the
    physical Kittel mode is lossy (gamma > 0).
    """

    omega: float
    gamma: float
    g: float

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("magnon damping must be non-negative")
        if self.g < 0:
            raise ValueError("coupling strength must be non-negative")


@dataclass(frozen=True)
class SystemParams:
    """Full parameter set of the cavity + two Kittel modes."""

    cavity: CavityParams
    magnon_1: MagnonParams
    magnon_2: MagnonParams

    @property
    def delta_1(self) -> float:
        """Detuning omega_1 - omega_c of Kittel mode 1."""
        return self.magnon_1.omega - self.cavity.omega_c

    @property
    def delta_2(self) -> float:
        """Detuning omega_2 - omega_c of Kittel mode 2."""
        return self.magnon_2.omega - self.cavity.omega_c

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SystemParams":
        return cls(
            cavity=CavityParams(**data["cavity"]),
            magnon_1=MagnonParams(**data["magnon_1"]),
            magnon_2=MagnonParams(**data["magnon_2"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "SystemParams":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class PseudoHermitianFamily:
    """Constraint-resolving parameterization of the pseudo-Hermitian manifold.

    eta = gamma_1/gamma_2 (>= 1 by convention), k = g_2/g_1 (> 0).  For a
    given g_1 the remaining parameters follow from the three
    pseudo-Hermiticity constraints; delta_1_sign selects the branch of
    Delta_1 = +/- sqrt(Delta_1^2).
    """

    eta: float
    k: float
    gamma_2: float
    omega_c: float = 0.0
    delta_1_sign: int = +1

    def __post_init__(self):
        if self.eta < 1:
            raise ValueError("eta = gamma_1/gamma_2 must be >= 1")
        if self.k <= 0:
            raise ValueError("k = g_2/g_1 must be positive")
        if self.gamma_2 <= 0:
            raise ValueError("gamma_2 must be positive")
        if self.delta_1_sign not in (+1, -1):
            raise ValueError("delta_1_sign must be +1 or -1")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "PseudoHermitianFamily":
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PseudoHermitianFamily":
        return cls.from_dict(json.loads(text))


def g_min(family: PseudoHermitianFamily) -> float:
    """Smallest g_1 admitting a real Delta_1 (MHz)."""
    eta, k = family.eta, family.k
    return math.sqrt((1.0 + eta) * eta / (1.0 + eta * k * k)) * family.gamma_2


def realize_family(
    family: PseudoHermitianFamily,
    g_1: float,
    kappa_int: float | None = None,
) -> SystemParams:
    """Construct the SystemParams the family assigns to coupling g_1.

    The constraints fix only kappa_g = kappa_1 + kappa_2 - kappa_int; the
    split defaults to kappa_1 = kappa_2 = (kappa_g + kappa_int)/2 with
    kappa_int = gamma_2 unless supplied, matching the figure captions.

    Raises CouplingBelowMinimum when g_1 < g_min (no real detuning exists).
    """
    if g_1 < 0:
        raise ValueError("g_1 must be non-negative")
    eta, k, gamma_2 = family.eta, family.k, family.gamma_2
    if kappa_int is None:
        kappa_int = gamma_2
    if kappa_int < 0:
        raise ValueError("kappa_int must be non-negative")

    radicand = (1.0 + eta * k * k) / ((1.0 + eta) * eta) * g_1 * g_1 - gamma_2**2
    if radicand < 0.0:
        # absorb rounding at the g_1 = g_min boundary
        if radicand > -64.0 * np.finfo(float).eps * gamma_2**2:
            radicand = 0.0
        else:
            raise CouplingBelowMinimum(
                f"g_1 = {g_1:g} MHz is below g_min = {g_min(family):g} MHz"
            )
    delta_1 = family.delta_1_sign * math.sqrt(radicand)
    delta_2 = -eta * delta_1

    kappa_g = (1.0 + eta) * gamma_2
    kappa_port = 0.5 * (kappa_g + kappa_int)
    return SystemParams(
        cavity=CavityParams(
            omega_c=family.omega_c,
            kappa_1=kappa_port,
            kappa_2=kappa_port,
            kappa_int=kappa_int,
        ),
        magnon_1=MagnonParams(
            omega=family.omega_c + delta_1, gamma=eta * gamma_2, g=g_1
        ),
        magnon_2=MagnonParams(
            omega=family.omega_c + delta_2, gamma=gamma_2, g=k * g_1
        ),
    )


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """3x3 complex matrix in the fixed (cavity, magnon 1, magnon 2) basis, MHz."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.shape != (3, 3):
            raise ValueError("effective Hamiltonian must be 3x3")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def build_effective_hamiltonian(params: SystemParams) -> EffectiveHamiltonian:
    """Effective non-Hermitian Hamiltonian of the CPA-locked hybrid system.

    Diagonal: (omega_c + i*kappa_g, omega_1 - i*gamma_1, omega_2 - i*gamma_2);
    off-diagonal couplings g_1, g_2; no direct magnon-magnon coupling.
    """
    c, m1, m2 = params.cavity, params.magnon_1, params.magnon_2
    h = np.array(
        [
            [c.omega_c + 1j * c.kappa_gain, m1.g, m2.g],
            [m1.g, m1.omega - 1j * m1.gamma, 0.0],
            [m2.g, 0.0, m2.omega - 1j * m2.gamma],
        ],
        dtype=complex,
    )
    return EffectiveHamiltonian(h)


def check_pseudo_hermitian(
    params: SystemParams, tol: float = 1e-10
) -> tuple[bool, tuple[float, float, float]]:
    """Evaluate the three pseudo-Hermiticity constraint residuals.

    Returns (ok, (r1, r2, r3)) with

        r1 = kappa_g - gamma_1 - gamma_2
        r2 = Delta_1*gamma_1 + Delta_2*gamma_2
        r3 = (Delta_1*Delta_2 - gamma_1*gamma_2)*kappa_g
             + g_1^2*gamma_2 + g_2^2*gamma_1

    ok is True iff every |r_i| <= tol * scale_i, where scale_i is the
    largest absolute value among the terms summed into r_i (makes the
    check invariant under a global rescaling of all rates).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    kappa_g = params.cavity.kappa_gain
    gamma_1, gamma_2 = params.magnon_1.gamma, params.magnon_2.gamma
    g_1, g_2 = params.magnon_1.g, params.magnon_2.g
    d1, d2 = params.delta_1, params.delta_2

    r1 = kappa_g - gamma_1 - gamma_2
    r2 = d1 * gamma_1 + d2 * gamma_2
    r3 = (d1 * d2 - gamma_1 * gamma_2) * kappa_g + g_1**2 * gamma_2 + g_2**2 * gamma_1

    s1 = max(abs(kappa_g), gamma_1, gamma_2)
    s2 = max(abs(d1 * gamma_1), abs(d2 * gamma_2))
    s3 = max(
        abs(d1 * d2 * kappa_g),
        gamma_1 * gamma_2 * abs(kappa_g),
        g_1**2 * gamma_2,
        g_2**2 * gamma_1,
    )
    ok = (
        abs(r1) <= tol * s1
        and abs(r2) <= tol * s2
        and abs(r3) <= tol * s3
    )
    return ok, (r1, r2, r3)


def cubic_coefficients(params: SystemParams) -> tuple[float, float, float]:
    """Coefficients (c2, c1, c0) of the reduced secular cubic.

    The characteristic polynomial in the detuning variable x = Omega - omega_c
    reads x^3 + c2*x^2 + c1*x + c0 with

        c0 = g_1^2*Delta_2 + g_2^2*Delta_1 - kappa_g*(gamma_1*Delta_2 + gamma_2*Delta_1)
        c1 = kappa_g^2 + Delta_1*Delta_2 - gamma_1*gamma_2 - g_1^2 - g_2^2
        c2 = -(Delta_1 + Delta_2)

    These real coefficients are exact when the pseudo-Hermiticity
    constraints hold; the imaginary parts they drop are precisely the
    constraint residuals of :func:`check_pseudo_hermitian`.
    """
    kappa_g = params.cavity.kappa_gain
    gamma_1, gamma_2 = params.magnon_1.gamma, params.magnon_2.gamma
    g_1, g_2 = params.magnon_1.g, params.magnon_2.g
    d1, d2 = params.delta_1, params.delta_2

    c0 = g_1**2 * d2 + g_2**2 * d1 - kappa_g * (gamma_1 * d2 + gamma_2 * d1)
    c1 = kappa_g**2 + d1 * d2 - gamma_1 * gamma_2 - g_1**2 - g_2**2
    c2 = -(d1 + d2)
    return c2, c1, c0
