"""Frequency-domain input-output response of the driven cavity: magnon
self-energy, intracavity amplitude, two-port output coefficients, and the
coherent-perfect-absorption (CPA) condition machinery.

A real drive frequency omega is a CPA frequency when both port outputs
vanish for the matched two-tone drive a_2 = sqrt(kappa_2/kappa_1) a_1; this
is equivalent to S_1(omega) = 0, and for pseudo-Hermitian parameters the
real zeros coincide exactly with the real eigenvalues of the effective
Hamiltonian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import PoleAtRealFrequency, SingularDenominator
from .model import MagnonParams, SystemParams

__all__ = [
    "DriveSpec",
    "ScatteringResult",
    "cpa_drive",
    "self_energy",
    "intracavity_amplitude",
    "scattering_outputs",
    "s_coefficients",
    "s1_values",
    "cpa_residuals",
    "find_cpa_frequencies",
]


@dataclass(frozen=True)
class DriveSpec:
    """Monochromatic two-port drive: frequency (MHz) and input amplitudes."""

    omega: float
    a1_in: complex = 1.0 + 0.0j
    a2_in: complex = 0.0 + 0.0j


def cpa_drive(omega: float, params: SystemParams, a1_in: complex = 1.0 + 0.0j) -> DriveSpec:
    """Drive satisfying the CPA input constraint a_2 = sqrt(kappa_2/kappa_1) a_1."""
    kappa_1, kappa_2 = params.cavity.kappa_1, params.cavity.kappa_2
    if kappa_1 <= 0:
        raise ValueError("CPA input ratio requires kappa_1 > 0")
    return DriveSpec(omega=omega, a1_in=a1_in, a2_in=math.sqrt(kappa_2 / kappa_1) * a1_in)


@dataclass(frozen=True)
class ScatteringResult:
    """Output coefficients at the matched drive; s2 equals s1 identically."""

    s1: complex
    s2: complex
    s_tot_sq: float
    intracavity: complex


def self_energy(omega: float, magnon_1: MagnonParams, magnon_2: MagnonParams) -> complex:
    """Magnon-induced self-energy Sigma(omega) = sum_j g_j^2/(gamma_j + i(omega_j - omega))."""
    total = 0.0 + 0.0j
    for m in (magnon_1, magnon_2):
        den = m.gamma + 1j * (m.omega - omega)
        if den == 0:
            raise PoleAtRealFrequency(
                f"undamped magnon resonance at omega = {m.omega:g} MHz"
            )
        total += m.g**2 / den
    return total


def _response_denominator(omega: float, params: SystemParams) -> complex:
    c = params.cavity
    sigma = self_energy(omega, params.magnon_1, params.magnon_2)
    den = c.kappa_total + 1j * (c.omega_c - omega) + sigma
    scale = max(c.kappa_total, abs(c.omega_c - omega), abs(sigma), 1e-300)
    if abs(den) < 1e-12 * scale:
        raise SingularDenominator(
            f"cavity response singular at omega = {omega:g} MHz"
        )
    return den


def intracavity_amplitude(drive: DriveSpec, params: SystemParams) -> complex:
    """Steady intracavity field for the given two-port drive."""
    c = params.cavity
    den = _response_denominator(drive.omega, params)
    num = math.sqrt(2.0 * c.kappa_1) * drive.a1_in + math.sqrt(2.0 * c.kappa_2) * drive.a2_in
    return num / den


def scattering_outputs(drive: DriveSpec, params: SystemParams) -> tuple[complex, complex]:
    """Output field amplitudes (a1_out, a2_out) at the two ports.

    Equivalent to the port relation a_i_out = sqrt(2 kappa_i) a - a_i_in
    with a the intracavity amplitude.
    """
    c = params.cavity
    den = _response_denominator(drive.omega, params)
    cross = 2.0 * math.sqrt(c.kappa_1 * c.kappa_2)
    a1_out = (2.0 * c.kappa_1 * drive.a1_in + cross * drive.a2_in) / den - drive.a1_in
    a2_out = (cross * drive.a1_in + 2.0 * c.kappa_2 * drive.a2_in) / den - drive.a2_in
    return a1_out, a2_out


def s_coefficients(omega: float, params: SystemParams) -> ScatteringResult:
    """Port output coefficients for the matched CPA drive ratio.

    S_1(omega) = 2(kappa_1 + kappa_2)/D(omega) - 1 with D the cavity
    response denominator; S_2 = S_1, and the total output spectrum is
    |S_1|^2 + |S_2|^2.
    """
    c = params.cavity
    den = _response_denominator(omega, params)
    s1 = 2.0 * (c.kappa_1 + c.kappa_2) / den - 1.0
    a = intracavity_amplitude(cpa_drive(omega, params), params)
    return ScatteringResult(s1=s1, s2=s1, s_tot_sq=2.0 * abs(s1) ** 2, intracavity=a)


def s1_values(omegas, params: SystemParams) -> np.ndarray:
    """Vectorized S_1 over an array of drive frequencies (MHz).

    Assumes damped magnons (gamma_j > 0) so the self-energy has no pole on
    the real axis.
    """
    w = np.asarray(omegas, dtype=float)
    c = params.cavity
    sigma = np.zeros_like(w, dtype=complex)
    for m in (params.magnon_1, params.magnon_2):
        sigma += m.g**2 / (m.gamma + 1j * (m.omega - w))
    den = c.kappa_total + 1j * (c.omega_c - w) + sigma
    return 2.0 * (c.kappa_1 + c.kappa_2) / den - 1.0


def cpa_residuals(omega: float, params: SystemParams) -> tuple[float, float]:
    """Residuals of the two CPA parameter constraints at drive frequency omega.

    Returns (gain_residual, detuning_residual):

        gain_residual     = kappa_g - sum_j g_j^2 gamma_j / ((omega_j-omega)^2 + gamma_j^2)
        detuning_residual = (omega_c - omega)
                            - sum_j g_j^2 (omega_j-omega) / ((omega_j-omega)^2 + gamma_j^2)

    Both vanish iff omega is a CPA frequency; they are the real and (negated)
    imaginary parts of the S_1 = 0 condition.
    """
    c = params.cavity
    gain = c.kappa_gain
    detuning = c.omega_c - omega
    for m in (params.magnon_1, params.magnon_2):
        d = m.omega - omega
        lorentz = m.g**2 / (d * d + m.gamma**2)
        gain -= lorentz * m.gamma
        detuning -= lorentz * d
    return gain, detuning


def _zero_condition(omega: float, params: SystemParams) -> tuple[complex, complex]:
    """S_1 = 0 condition F(omega) and its omega-derivative.

    F = kappa_total + i(omega_c - omega) + Sigma(omega) - 2(kappa_1 + kappa_2)
    vanishes exactly where S_1 does.
    """
    c = params.cavity
    f = complex(c.kappa_int - c.kappa_1 - c.kappa_2, c.omega_c - omega)
    df = -1j
    for m in (params.magnon_1, params.magnon_2):
        den = m.gamma + 1j * (m.omega - omega)
        f += m.g**2 / den
        df += 1j * m.g**2 / den**2
    return f, df


def _newton_polish(omega: float, params: SystemParams, lo: float, hi: float) -> float:
    # the zero of F is simple and real here, so a few complex Newton steps
    # from a nearby real point converge far past the 1e-9 MHz target
    w = complex(omega)
    best, best_mag = omega, abs(_zero_condition(omega, params)[0])
    for _ in range(12):
        f, df = _zero_condition(w.real, params)
        if df == 0:
            break
        w = w.real - f / df
        if not lo <= w.real <= hi:
            break
        mag = abs(_zero_condition(w.real, params)[0])
        if mag < best_mag:
            best, best_mag = w.real, mag
        if mag < 1e-14:
            break
    return best


def find_cpa_frequencies(
    params: SystemParams,
    scan_range: tuple[float, float],
    grid_step: float | None = None,
    accept_tol: float = 1e-6,
) -> list[float]:
    """All real CPA frequencies inside scan_range (MHz), polished to <= 1e-9.

    Dense |S_1| scan (default step gamma_2/200), bounded local minimization
    of |S_1|^2 around each candidate dip, then Newton refinement of the
    zero condition; a polished minimum counts as a CPA root when
    |S_1| < accept_tol.  Returns a sorted list; empty when no real zero
    lies in range (complex eigenvalues produce no root).
    """
    lo, hi = float(scan_range[0]), float(scan_range[1])
    if not lo < hi:
        raise ValueError("scan_range must satisfy lo < hi")
    if grid_step is None:
        grid_step = params.magnon_2.gamma / 200.0
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")

    n = max(int(math.ceil((hi - lo) / grid_step)) + 1, 16)
    grid = np.linspace(lo, hi, n)
    mag = np.abs(s1_values(grid, params))

    def s1_sq(w: float) -> float:
        return float(np.abs(s1_values(w, params)) ** 2)

    roots: list[float] = []
    interior = np.flatnonzero(
        (mag[1:-1] <= mag[:-2]) & (mag[1:-1] <= mag[2:]) & (mag[1:-1] < 0.5)
    ) + 1
    for i in interior:
        res = minimize_scalar(
            s1_sq,
            bounds=(grid[i - 1], grid[i + 1]),
            method="bounded",
            options={"xatol": 1e-11},
        )
        candidate = _newton_polish(float(res.x), params, grid[i - 1], grid[i + 1])
        if math.sqrt(s1_sq(candidate)) < accept_tol:
            roots.append(candidate)

    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if deduped and abs(r - deduped[-1]) < 1e-6:
            if s1_sq(r) < s1_sq(deduped[-1]):
                deduped[-1] = r
        else:
            deduped.append(r)
    return deduped
