"""Acceptance gate: every shipped criterion, each at its stated tolerance,
printing one PASS/FAIL line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines inline.
"""

import json
import math
from contextlib import contextmanager

import numpy as np
import pytest

import cavmag as cm
from cavmag.dynamics import TWO_PI
from helpers import companion_roots, draw_realization, matched_max_error


@contextmanager
def criterion(num, label):
    try:
        yield
    except Exception:
        print(f"FAIL  criterion {num:2d}: {label}")
        raise
    print(f"PASS  criterion {num:2d}: {label}")


def test_c01_symmetric_ep3(tmp_path):
    with criterion(1, "symmetric EP3 critical parameters (CLI)"):
        out = tmp_path / "ep3.json"
        code = cm.run_cli(
            ["ep3", "--eta", "1", "--gamma2", "1.5", "--format", "json",
             "--out", str(out)]
        )
        assert code == 0
        data = json.loads(out.read_text())
        assert data["g_ep3"] == pytest.approx(2.0 * 1.5 / math.sqrt(3.0), rel=1e-6)
        assert data["delta_ep3"] == pytest.approx(1.5 / math.sqrt(3.0), rel=1e-6)
        assert round(data["g_ep3"], 4) == 1.7321
        assert round(data["delta_ep3"], 4) == 0.8660
        assert abs(data["g_ep3"] - 1.732) < 5e-4


def test_c02_asymmetric_critical_set():
    with criterion(2, "asymmetric critical set k, g_EP3, g_EP2 (eta = 2)"):
        k = cm.k_from_eta(2.0)
        assert abs(k - 0.494) <= 1e-3
        report = cm.ep3_critical(2.0, 1.5)
        assert abs(report.g_ep3 - 3.394) <= 1e-3
        g_ep2 = cm.ep2_locate(2.0, 1.5)
        assert abs(g_ep2 - 3.600) <= 2e-3


def test_c03_gep3_gmin_identity():
    with criterion(3, "g_EP3/g_min identity over 50 eta values"):
        for eta in np.linspace(1.04, 3.0, 50):
            report = cm.ep3_critical(float(eta), 1.5)
            identity = math.sqrt(
                1.0 + 27.0 * eta**2 / ((2.0 + eta) ** 2 * (1.0 + 2.0 * eta) ** 2)
            )
            assert report.g_ep3 / report.g_min == pytest.approx(identity, rel=1e-8)


def test_c04_fig2_reproduction():
    with criterion(4, "k(eta) curve: monotone 1 -> 0.30 +/- 0.02, residual < 1e-10"):
        grid = cm.fig2_grid()
        etas = grid.column("eta")
        k = grid.column("k")
        assert k[0] == 1.0
        assert abs(k[-1] - 0.30) <= 0.02
        assert np.all(np.diff(k) <= 1e-12)
        for eta, kv in zip(etas[1:], k[1:]):
            assert abs(cm.eq33_residual(float(eta), float(kv))) < 1e-10


def test_c05_pseudo_hermiticity_property_suite():
    with criterion(5, "1000 random family realizations: constraints/spectra/Vieta/trace"):
        rng = np.random.default_rng(5150)
        for _ in range(1000):
            family, _, params = draw_realization(
                rng, g_span=(1.0, 4.0), eta_range=(1.0, 3.0), gamma_range=(0.5, 3.0)
            )
            ok, residuals = cm.check_pseudo_hermitian(params, tol=1e-10)
            assert ok, residuals

            h = cm.build_effective_hamiltonian(params)
            triple = cm.eigenvalues(h)
            vals = triple.values
            spread = max(abs(a - b) for a in vals for b in vals)
            scale = max(family.gamma_2, spread)
            conj = [v.conjugate() for v in vals]
            assert matched_max_error(vals, conj) < 1e-9 * scale

            c2, c1, c0 = cm.cubic_coefficients(params)
            xs = [v - family.omega_c for v in vals]
            s = max(1.0, sum(abs(x) for x in xs))
            assert abs(sum(xs) + c2) < 1e-10 * max(1.0, abs(c2), s)
            pair = xs[0] * xs[1] + xs[0] * xs[2] + xs[1] * xs[2]
            assert abs(pair - c1) < 1e-10 * max(1.0, abs(c1), s**2)
            assert abs(xs[0] * xs[1] * xs[2] + c0) < 1e-10 * max(1.0, abs(c0), s**3)

            diag_scale = float(np.sum(np.abs(np.diag(np.asarray(h.entries)))))
            assert abs(h.trace.imag) < 1e-12 * max(1.0, diag_scale)


def test_c06_closed_form_vs_generic_solver():
    with criterion(6, "closed forms vs generic solvers (500-pt grid; 1000 cubics)"):
        family = cm.symmetric_figure_family()
        for g_1 in np.linspace(1.5, 4.5, 500):
            params = cm.realize_family(family, float(g_1))
            generic = cm.eigenvalues(cm.build_effective_hamiltonian(params)).values
            closed = cm.symmetric_spectrum(float(g_1), 1.5).values
            scale = max(1.5, max(abs(v) for v in closed))
            assert matched_max_error(generic, closed) < 1e-10 * scale

        rng = np.random.default_rng(606)
        for _ in range(1000):
            c = rng.standard_normal(3) * 2 + 1j * rng.standard_normal(3) * 2
            mine = cm.solve_cubic(*c)
            oracle = companion_roots(*c)
            scale = max(1.0, max(abs(r) for r in oracle))
            assert matched_max_error(mine, oracle) < 1e-9 * scale


def _real_eigenvalues(params, scale):
    triple = cm.eigenvalues(cm.build_effective_hamiltonian(params))
    return sorted(v.real for v in triple.values if abs(v.imag) <= 1e-7 * scale)


def test_c07_cpa_spectrum_coincidence():
    with criterion(7, "CPA frequencies = real eigenvalues on both figure grids"):
        g_ep3_sym = cm.ep3_critical(1.0, 1.5).g_ep3
        for case in ("symmetric", "asymmetric"):
            config = cm.fig3_config(case)
            family = config.family
            g_floor = cm.g_min(family)
            scan = (family.omega_c - 9.0, family.omega_c + 9.0)
            for g_1 in config.g1_grid():
                if g_1 < g_floor:
                    continue
                params = cm.realize_family(family, float(g_1), config.kappa_int)
                roots = cm.find_cpa_frequencies(params, scan)
                spread_scale = max(family.gamma_2, abs(float(g_1)))
                reals = _real_eigenvalues(params, spread_scale)
                assert len(roots) == len(reals)
                for root, eig in zip(roots, reals):
                    assert abs(root - eig) < 1e-7
                for root in roots:
                    assert cm.s_coefficients(root, params).s_tot_sq < 1e-10
                if case == "symmetric":
                    expected = 1 if g_1 < g_ep3_sym else 3
                    assert len(roots) == expected


def test_c08_dynamics_oracle():
    with criterion(8, "time-domain oracle: modal rates and driven steady states"):
        rng = np.random.default_rng(808)
        checked = 0
        while checked < 20:
            family, _, params = draw_realization(
                rng, g_span=(1.05, 2.0), eta_range=(1.0, 2.5), gamma_range=(0.5, 1.2)
            )
            h = cm.build_effective_hamiltonian(params)
            triple = cm.eigenvalues(h)
            gaps = [
                abs(a - b)
                for i, a in enumerate(triple.values)
                for b in triple.values[i + 1:]
            ]
            if (
                min(gaps) < 1.0
                or max(abs(v.imag) for v in triple.values) > 2.0
                or max(abs(v) for v in triple.values) > 3.5
            ):
                continue

            v0 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            rates = cm.modal_rates(h, v0, t_final=2.0, dt=0.002)
            assert matched_max_error(rates, triple.values) < 1e-5

            drive = cm.DriveSpec(
                omega=family.omega_c + float(rng.uniform(-2, 2)) * family.gamma_2,
                a1_in=1.0,
                a2_in=complex(*rng.standard_normal(2)),
            )
            c, m1, m2 = params.cavity, params.magnon_1, params.magnon_2
            lossy = np.array(
                [
                    [c.omega_c - 1j * c.kappa_total, m1.g, m2.g],
                    [m1.g, m1.omega - 1j * m1.gamma, 0.0],
                    [m2.g, 0.0, m2.omega - 1j * m2.gamma],
                ]
            )
            lam = np.linalg.eigvals(lossy)
            rate_min = float(np.min(-lam.imag))
            rate_max = float(np.max(np.abs(lam))) + abs(drive.omega)
            t_final = 3.0 / rate_min
            dt = 0.02 / (TWO_PI * rate_max)
            traj = cm.evolve_driven(params, drive, t_final, dt)
            steady = traj.states[-1, 0] * np.exp(
                1j * TWO_PI * drive.omega * traj.times[-1]
            )
            expected = cm.intracavity_amplitude(drive, params)
            assert abs(steady - expected) < 1e-5 * abs(expected)
            checked += 1


def test_c09_two_mode_regression():
    with criterion(9, "PT-symmetric two-mode spectrum and its EP2"):
        for g_1, gamma_1 in ((0.5, 1.3), (1.3, 1.3), (2.6, 1.3), (4.0, 0.7)):
            lo, hi = cm.two_mode_spectrum(g_1, gamma_1, omega_c=2.0)
            root = complex(g_1**2 - gamma_1**2) ** 0.5
            assert abs(lo - (2.0 - root)) < 1e-12
            assert abs(hi - (2.0 + root)) < 1e-12
        lo, hi = cm.two_mode_spectrum(1.3, 1.3, omega_c=2.0)
        assert abs(lo - 2.0) < 1e-12 and abs(hi - 2.0) < 1e-12


def test_c10_golden_files(tmp_path):
    with criterion(10, "fig2/fig3/fig4 datasets byte-identical across runs"):
        jobs = [
            ("fig2", ["fig2"]),
            ("fig3_sym", ["fig3", "--case", "symmetric"]),
            ("fig3_asym", ["fig3", "--case", "asymmetric"]),
            ("fig4_sym", ["fig4", "--case", "symmetric"]),
            ("fig4_asym", ["fig4", "--case", "asymmetric"]),
        ]
        for name, args in jobs:
            first = tmp_path / f"{name}_a.csv"
            second = tmp_path / f"{name}_b.csv"
            assert cm.run_cli([*args, "--out", str(first)]) == 0
            assert cm.run_cli([*args, "--out", str(second)]) == 0
            assert first.read_bytes() == second.read_bytes(), name
