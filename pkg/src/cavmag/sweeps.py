"""Parameter sweeps reproducing the coupling-ratio curve, the eigenvalue
branches versus g_1, and the 2D total-output-spectrum map, plus the CSV/JSON
emission used for golden-file outputs.

Numeric payloads are written in fixed scientific notation with 12
significant digits on deterministic linspace grids, so repeated runs are
byte-identical.  Rows with g_1 < g_min carry an explicit pseudo_hermitian=0
flag (the shaded no-pseudo-Hermiticity band) instead of silently dropping
out; their value columns are NaN.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .model import PseudoHermitianFamily, build_effective_hamiltonian, g_min, realize_family
from .scattering import s1_values
from .spectrum import SpectrumClass, eigenvalues, k_from_eta, track_branches

__all__ = [
    "SweepConfig",
    "SweepGrid",
    "sweep_k_vs_eta",
    "sweep_eigenvalues",
    "sweep_spectrum",
    "symmetric_figure_family",
    "asymmetric_figure_family",
    "FIGURE_KAPPA_INT",
    "fig2_grid",
    "fig3_config",
    "fig3_grid",
    "fig4_config",
    "fig4_grid",
]

# caption values shared by the canned figure datasets:
# gamma_2/2pi = kappa_int/2pi = 1.5 MHz
FIGURE_GAMMA_2 = 1.5
FIGURE_KAPPA_INT = 1.5

_FLOAT_FMT = "%.11e"


@dataclass(frozen=True)
class SweepConfig:
    """Grid specification for the g_1 (and optional frequency) sweeps.

    `out` (None = stdout) and `format` describe the emission target; the
    JSON config files accepted by the CLI mirror these fields.
    """

    family: PseudoHermitianFamily
    g1_range: tuple[float, float, int]
    omega_range: tuple[float, float, int] | None = None
    kappa_int: float | None = None
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        for name, rng in (("g1_range", self.g1_range), ("omega_range", self.omega_range)):
            if rng is None:
                continue
            start, stop, steps = rng
            if steps < 2:
                raise ValueError(f"{name} needs at least 2 steps")
            if not start < stop:
                raise ValueError(f"{name} must satisfy start < stop")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def g1_grid(self) -> np.ndarray:
        start, stop, steps = self.g1_range
        return np.linspace(start, stop, int(steps))

    def omega_grid(self) -> np.ndarray:
        if self.omega_range is None:
            raise ValueError("config has no omega_range")
        start, stop, steps = self.omega_range
        return np.linspace(start, stop, int(steps))


@dataclass
class SweepGrid:
    """Tabulated sweep results: named axes plus a row-major numeric table."""

    columns: list[str]
    rows: np.ndarray
    axes: dict[str, np.ndarray] = field(default_factory=dict)
    int_columns: frozenset = frozenset()

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float)
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.columns):
            raise ValueError("rows must be (n, len(columns))")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def to_csv(self, stream) -> None:
        fmt = [
            "%d" if name in self.int_columns else _FLOAT_FMT for name in self.columns
        ]
        np.savetxt(
            stream,
            self.rows,
            fmt=fmt,
            delimiter=",",
            newline="\n",
            header=",".join(self.columns),
            comments="",
        )

    def to_json_obj(self) -> dict:
        def cell(name, x):
            if name in self.int_columns:
                return int(x)
            return None if math.isnan(x) else float(x)

        return {
            "columns": list(self.columns),
            "rows": [
                [cell(n, x) for n, x in zip(self.columns, row)] for row in self.rows
            ],
        }

    def write(self, path: str | None = None, fmt: str = "csv") -> None:
        """Emit csv or json to a file path, or to stdout when path is None."""
        if fmt not in ("csv", "json"):
            raise ValueError(f"unknown format {fmt!r}")
        if path is None:
            self._emit(sys.stdout, fmt)
        else:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                self._emit(fh, fmt)

    def _emit(self, stream, fmt: str) -> None:
        if fmt == "csv":
            self.to_csv(stream)
        else:
            json.dump(self.to_json_obj(), stream, indent=2)
            stream.write("\n")


def sweep_k_vs_eta(eta_range: tuple[float, float, int] = (1.0, 3.0, 201)) -> SweepGrid:
    """EP3-compatible coupling ratio k versus the damping ratio eta.

    eta = 1 grid points use the documented k = 1 limit.
    """
    start, stop, steps = eta_range
    if steps < 2 or not start < stop:
        raise ValueError("eta_range must be (start < stop, steps >= 2)")
    if start < 1.0:
        raise ValueError("eta values must be >= 1")
    etas = np.linspace(start, stop, int(steps))
    rows = np.column_stack([etas, [k_from_eta(e) for e in etas]])
    return SweepGrid(columns=["eta", "k"], rows=rows, axes={"eta": etas})


_EIG_COLUMNS = [
    "g1",
    "pseudo_hermitian",
    "re_omega_0",
    "im_omega_0",
    "re_omega_plus",
    "im_omega_plus",
    "re_omega_minus",
    "im_omega_minus",
]


def _structural_labels(values) -> tuple[complex, complex, complex]:
    """One-real-plus-pair labels: Omega_0 real, Omega_plus in the upper plane."""
    by_im = sorted(values, key=lambda z: abs(z.imag))
    center = by_im[0]
    rest = sorted(by_im[1:], key=lambda z: -z.imag)
    return center, rest[0], rest[1]


def _initial_branches(values) -> tuple[complex, complex, complex]:
    vals = [complex(v) for v in values]
    scale = max(1.0, max(abs(v) for v in vals))
    if all(abs(v.imag) <= 1e-9 * scale for v in vals):
        lo, mid, hi = sorted(vals, key=lambda z: z.real)
        return mid, hi, lo
    return _structural_labels(vals)


def sweep_eigenvalues(config: SweepConfig) -> SweepGrid:
    """Branch-tracked eigenvalue detunings versus g_1 (the fig-3 dataset).

    Columns: g1, pseudo_hermitian flag, Re/Im of Omega_0, Omega_plus and
    Omega_minus relative to omega_c.  Where the spectrum is one real value
    plus a conjugate pair the labels are structural (Omega_0 is the real
    branch); inside all-real regions they continue by nearest-neighbor
    matching, which keeps the curves continuous through the EPs where a
    pure nearest-neighbor rule would scramble the coalescing branches.
    """
    fam = config.family
    g_grid = config.g1_grid()
    g_floor = g_min(fam)
    omega_c = fam.omega_c

    rows = np.full((g_grid.size, len(_EIG_COLUMNS)), np.nan)
    rows[:, 0] = g_grid
    rows[:, 1] = 0.0
    branches = None
    for i, g1 in enumerate(g_grid):
        if g1 < g_floor:
            continue
        params = realize_family(fam, float(g1), config.kappa_int)
        triple = eigenvalues(build_effective_hamiltonian(params))
        detunings = tuple(v - omega_c for v in triple.values)
        if triple.classification is SpectrumClass.ONE_REAL_PLUS_CONJUGATE_PAIR:
            branches = _structural_labels(detunings)
        elif branches is None:
            branches = _initial_branches(detunings)
        else:
            branches = track_branches(branches, detunings)
        rows[i, 1] = 1.0
        rows[i, 2:8] = [
            branches[0].real,
            branches[0].imag,
            branches[1].real,
            branches[1].imag,
            branches[2].real,
            branches[2].imag,
        ]
    return SweepGrid(
        columns=_EIG_COLUMNS,
        rows=rows,
        axes={"g1": g_grid},
        int_columns=frozenset({"pseudo_hermitian"}),
    )


def sweep_spectrum(config: SweepConfig) -> SweepGrid:
    """Total output spectrum |S_tot|^2 on the (g_1, omega - omega_c) grid.

    Long-format rows (g-major): g1, detuning, pseudo_hermitian flag,
    s_tot_sq.  The minima loci trace the real eigenvalue branches.
    """
    fam = config.family
    g_grid = config.g1_grid()
    d_grid = config.omega_grid()
    g_floor = g_min(fam)
    omega_c = fam.omega_c

    n_g, n_d = g_grid.size, d_grid.size
    rows = np.empty((n_g * n_d, 4))
    values = np.full((n_g, n_d), np.nan)
    for i, g1 in enumerate(g_grid):
        block = slice(i * n_d, (i + 1) * n_d)
        rows[block, 0] = g1
        rows[block, 1] = d_grid
        if g1 < g_floor:
            rows[block, 2] = 0.0
            rows[block, 3] = np.nan
            continue
        params = realize_family(fam, float(g1), config.kappa_int)
        s1 = s1_values(omega_c + d_grid, params)
        stot = 2.0 * np.abs(s1) ** 2
        rows[block, 2] = 1.0
        rows[block, 3] = stot
        values[i] = stot
    return SweepGrid(
        columns=["g1", "detuning", "pseudo_hermitian", "s_tot_sq"],
        rows=rows,
        axes={"g1": g_grid, "detuning": d_grid, "s_tot_sq": values},
        int_columns=frozenset({"pseudo_hermitian"}),
    )


def symmetric_figure_family(omega_c: float = 0.0) -> PseudoHermitianFamily:
    """eta = k = 1, gamma_2/2pi = 1.5 MHz (figure caption parameters)."""
    return PseudoHermitianFamily(eta=1.0, k=1.0, gamma_2=FIGURE_GAMMA_2, omega_c=omega_c)


def asymmetric_figure_family(omega_c: float = 0.0) -> PseudoHermitianFamily:
    """eta = 2 with the EP3-compatible k, gamma_2/2pi = 1.5 MHz."""
    return PseudoHermitianFamily(
        eta=2.0, k=k_from_eta(2.0), gamma_2=FIGURE_GAMMA_2, omega_c=omega_c
    )


def _figure_family(case: str) -> PseudoHermitianFamily:
    if case == "symmetric":
        return symmetric_figure_family()
    if case == "asymmetric":
        return asymmetric_figure_family()
    raise ValueError(f"unknown case {case!r} (expected symmetric|asymmetric)")


def fig2_grid(steps: int = 201) -> SweepGrid:
    return sweep_k_vs_eta((1.0, 3.0, steps))


def fig3_config(case: str, steps: int = 501) -> SweepConfig:
    """g_1 from 0.8 g_min to 2.5 g_min; caption kappa_int."""
    fam = _figure_family(case)
    floor = g_min(fam)
    return SweepConfig(
        family=fam,
        g1_range=(0.8 * floor, 2.5 * floor, steps),
        kappa_int=FIGURE_KAPPA_INT,
    )


def fig3_grid(case: str, steps: int = 501) -> SweepGrid:
    return sweep_eigenvalues(fig3_config(case, steps))


def fig4_config(case: str, g_steps: int = 501, omega_steps: int = 601) -> SweepConfig:
    """fig3 coupling grid plus detunings spanning +/- 6 gamma_2."""
    base = fig3_config(case, g_steps)
    span = 6.0 * base.family.gamma_2
    return SweepConfig(
        family=base.family,
        g1_range=base.g1_range,
        omega_range=(-span, span, omega_steps),
        kappa_int=base.kappa_int,
    )


def fig4_grid(case: str, g_steps: int = 501, omega_steps: int = 601) -> SweepGrid:
    return sweep_spectrum(fig4_config(case, g_steps, omega_steps))
