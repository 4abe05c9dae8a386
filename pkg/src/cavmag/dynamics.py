"""Time-domain integration of the linear Langevin dynamics, used as an
independent validation oracle for the spectral and scattering modules.

Time unit convention: frequencies/rates are nu = omega/2pi in MHz and time
is in microseconds, so every propagation phase is exp(-i * 2*pi * nu * t).
This is the one place the 2*pi conversion appears; the generator of the
free dynamics is A = -i * 2*pi * H with H in MHz.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, DivergenceDetected, StepTooLarge
from .model import EffectiveHamiltonian, SystemParams
from .scattering import DriveSpec

__all__ = ["TWO_PI", "Trajectory", "evolve_free", "evolve_driven", "modal_rates"]

TWO_PI = 2.0 * math.pi

# dt * (2*pi * spectral radius in MHz) must stay below this for the stepper
_STABILITY_BOUND = 0.05
_DIVERGENCE_FACTOR = 1e12
_PROPAGATOR_COND_LIMIT = 1e8


@dataclass(frozen=True)
class Trajectory:
    """Sampled complex amplitudes (cavity, magnon 1, magnon 2) vs time (us)."""

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        s = np.asarray(self.states, dtype=complex)
        if t.ndim != 1 or s.shape != (t.size, 3):
            raise ValueError("states must be (len(times), 3)")
        if t.size >= 2 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        t.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", s)

    def to_csv(self, stream) -> None:
        """Write time,re_a,im_a,re_b1,im_b1,re_b2,im_b2 rows (LF endings)."""
        stream.write("time,re_a,im_a,re_b1,im_b1,re_b2,im_b2\n")
        for t, row in zip(self.times, self.states):
            cells = [f"{t:.11e}"]
            for z in row:
                cells.append(f"{z.real:.11e}")
                cells.append(f"{z.imag:.11e}")
            stream.write(",".join(cells) + "\n")


def _check_step(dt: float, radius_rad: float) -> None:
    if dt <= 0:
        raise ValueError("dt must be positive")
    if dt * radius_rad > _STABILITY_BOUND * (1.0 + 1e-12):
        raise StepTooLarge(
            f"dt = {dt:g} us exceeds {_STABILITY_BOUND:g}/spectral-radius "
            f"= {_STABILITY_BOUND / radius_rad:g} us"
        )


def _rk4_step_matrix(a: np.ndarray, dt: float) -> np.ndarray:
    # for an autonomous linear system the classical RK4 update is exactly
    # the degree-4 Taylor truncation of expm(A*dt)
    adt = a * dt
    term = np.eye(3, dtype=complex)
    step = np.eye(3, dtype=complex)
    for k in range(1, 5):
        term = term @ adt / k
        step = step + term
    return step


def evolve_free(
    h: EffectiveHamiltonian,
    v0,
    t_final: float,
    dt: float,
    method: str = "auto",
) -> Trajectory:
    """Integrate V' = -i * 2*pi * H V from V(0) = v0, sampling every dt.

    method:
        "auto"       -- exact eigendecomposition propagator when the
                        eigenvector matrix is well conditioned (< 1e8),
                        otherwise the RK4 stepper (near EPs only the
                        stepper is trustworthy);
        "propagator" -- force the eigendecomposition path;
        "rk4"        -- force the fixed-step 4th-order stepper.
    """
    if method not in ("auto", "propagator", "rk4"):
        raise ValueError(f"unknown method {method!r}")
    v0 = np.asarray(v0, dtype=complex)
    if v0.shape != (3,):
        raise ValueError("v0 must be a complex 3-vector")
    if t_final <= 0:
        raise ValueError("t_final must be positive")

    lam, vecs = np.linalg.eig(h.entries)
    radius_rad = TWO_PI * float(np.max(np.abs(lam)))
    _check_step(dt, radius_rad)

    n_steps = max(int(round(t_final / dt)), 1)
    times = np.arange(n_steps + 1) * dt

    if method == "auto":
        cond = np.linalg.cond(vecs)
        method = "propagator" if cond < _PROPAGATOR_COND_LIMIT else "rk4"

    if method == "propagator":
        coeff = np.linalg.solve(vecs, v0)
        phases = np.exp(-1j * TWO_PI * np.outer(times, lam))
        states = (phases * coeff) @ vecs.T
        states[0] = v0
    else:
        step = _rk4_step_matrix(-1j * TWO_PI * h.entries, dt)
        states = np.empty((n_steps + 1, 3), dtype=complex)
        states[0] = v0
        v = v0
        guard = _DIVERGENCE_FACTOR * max(1.0, float(np.max(np.abs(v0))))
        for i in range(1, n_steps + 1):
            v = step @ v
            states[i] = v
            if i % 64 == 0 and float(np.max(np.abs(v))) > guard:
                raise DivergenceDetected(
                    f"gain mode exceeded {_DIVERGENCE_FACTOR:g} x initial norm "
                    f"at t = {times[i]:g} us"
                )
    return Trajectory(times=times, states=states)


def _lossy_matrix(params: SystemParams) -> np.ndarray:
    c, m1, m2 = params.cavity, params.magnon_1, params.magnon_2
    return np.array(
        [
            [c.omega_c - 1j * c.kappa_total, m1.g, m2.g],
            [m1.g, m1.omega - 1j * m1.gamma, 0.0],
            [m2.g, 0.0, m2.omega - 1j * m2.gamma],
        ],
        dtype=complex,
    )


def evolve_driven(
    params: SystemParams,
    drive: DriveSpec,
    t_final: float,
    dt: float,
    v0=None,
) -> Trajectory:
    """Integrate the physically driven (lossy-cavity) Langevin equations.

    The monochromatic inputs a_i_in * exp(-i*2*pi*omega*t) enter the cavity
    row through sqrt(2 kappa_i); after transients the cavity envelope
    matches the frequency-domain amplitude.  Raises DivergenceDetected if
    the state norm exceeds 1e12 x its reference scale.
    """
    v = np.zeros(3, dtype=complex) if v0 is None else np.asarray(v0, dtype=complex)
    if v.shape != (3,):
        raise ValueError("v0 must be a complex 3-vector")
    if t_final <= 0:
        raise ValueError("t_final must be positive")

    m = _lossy_matrix(params)
    a = -1j * TWO_PI * m
    lam = np.linalg.eigvals(m)
    radius_rad = TWO_PI * max(float(np.max(np.abs(lam))), abs(drive.omega))
    _check_step(dt, radius_rad)

    c = params.cavity
    force = np.array(
        [
            TWO_PI
            * (
                math.sqrt(2.0 * c.kappa_1) * drive.a1_in
                + math.sqrt(2.0 * c.kappa_2) * drive.a2_in
            ),
            0.0,
            0.0,
        ],
        dtype=complex,
    )
    phase_rate = -1j * TWO_PI * drive.omega

    n_steps = max(int(round(t_final / dt)), 1)
    times = np.arange(n_steps + 1) * dt
    states = np.empty((n_steps + 1, 3), dtype=complex)
    states[0] = v

    guard = _DIVERGENCE_FACTOR * max(
        1.0, float(np.max(np.abs(v))), float(np.max(np.abs(force)))
    )
    for i in range(1, n_steps + 1):
        t = times[i - 1]
        f0 = force * cmath.exp(phase_rate * t)
        f_half = force * cmath.exp(phase_rate * (t + 0.5 * dt))
        f1 = force * cmath.exp(phase_rate * (t + dt))
        k1 = a @ v + f0
        k2 = a @ (v + 0.5 * dt * k1) + f_half
        k3 = a @ (v + 0.5 * dt * k2) + f_half
        k4 = a @ (v + dt * k3) + f1
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states[i] = v
        if i % 64 == 0 and float(np.max(np.abs(v))) > guard:
            raise DivergenceDetected(
                f"state norm exceeded {_DIVERGENCE_FACTOR:g} x reference at t = {times[i]:g} us"
            )
    return Trajectory(times=times, states=states)


def modal_rates(
    h: EffectiveHamiltonian,
    v0,
    t_final: float,
    dt: float,
) -> tuple[complex, complex, complex]:
    """Recover the three complex eigenfrequencies (MHz) from a trajectory.

    Integrates the free dynamics with the RK4 stepper (independent of any
    eigendecomposition), then fits the one-step linear map G of the sampled
    states; eigenvalues mu of G give the modal rates via
    lambda = i ln(mu) / (2*pi*dt).  The principal log restricts recoverable
    real parts to |Re lambda| < 1/(2 dt).

    Raises DegenerateSpectrum when the snapshot matrix is rank-deficient or
    the recovered modes are closer than 10x the fitting resolution
    1/(2*pi*t_final).
    """
    traj = evolve_free(h, v0, t_final, dt, method="rk4")
    if traj.states.shape[0] < 4:
        raise ValueError("need at least 4 samples to fit three modes")
    x = traj.states[:-1].T
    y = traj.states[1:].T

    # column normalization keeps growing modes from hiding the early samples
    norms = np.maximum(np.linalg.norm(x, axis=0), 1e-300)
    xs = x / norms
    ys = y / norms

    svals = np.linalg.svd(xs, compute_uv=False)
    if svals[-1] < 1e-10 * svals[0]:
        raise DegenerateSpectrum(
            "trajectory does not excite three independent modes"
        )

    g_map, *_ = np.linalg.lstsq(xs.T, ys.T, rcond=None)
    mu = np.linalg.eigvals(g_map.T)
    lam = 1j * np.log(mu) / (TWO_PI * dt)

    resolution = 1.0 / (TWO_PI * t_final)
    gaps = [abs(a - b) for i, a in enumerate(lam) for b in lam[i + 1:]]
    if min(gaps) < 10.0 * resolution:
        raise DegenerateSpectrum(
            f"modes separated by {min(gaps):g} MHz < 10x resolution {resolution:g} MHz"
        )
    return tuple(sorted((complex(v) for v in lam), key=lambda z: (z.real, z.imag)))
