"""Command-line front end: single-point spectra, EP location, CPA roots, 1D
spectra, trajectories, and the canned figure datasets.

Exit codes: 0 success, 1 numeric/model failure (the error class name goes to
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .dynamics import evolve_driven, evolve_free
from .errors import CavmagError
from .model import (
    PseudoHermitianFamily,
    build_effective_hamiltonian,
    g_min,
    realize_family,
)
from .scattering import DriveSpec, find_cpa_frequencies, s1_values
from .spectrum import ep2_locate, ep3_critical, eigenvalues, k_from_eta
from .sweeps import (
    SweepConfig,
    SweepGrid,
    fig2_grid,
    fig3_config,
    fig4_config,
    sweep_eigenvalues,
    sweep_spectrum,
)

_FAMILY_KEYS = ("eta", "k", "gamma_2", "omega_c", "delta_1_sign", "kappa_int", "g1")


def _add_family_options(parser: argparse.ArgumentParser, with_g1: bool = False) -> None:
    parser.add_argument("--eta", type=float, default=None, help="gamma_1/gamma_2 (>= 1)")
    parser.add_argument(
        "--k", type=float, default=None, help="g_2/g_1; default: EP3-compatible value"
    )
    parser.add_argument("--gamma2", type=float, default=None, help="gamma_2 in MHz")
    parser.add_argument("--omega-c", type=float, default=None, help="cavity frequency offset, MHz")
    parser.add_argument("--kappa-int", type=float, default=None, help="intrinsic cavity decay, MHz")
    parser.add_argument(
        "--delta1-sign", type=int, choices=(1, -1), default=None, help="branch of Delta_1"
    )
    parser.add_argument("--config", default=None, help="JSON file with parameter defaults")
    if with_g1:
        parser.add_argument("--g1", type=float, default=None, help="coupling g_1 in MHz")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    unknown = set(data) - set(_FAMILY_KEYS) - {"g1_range", "omega_range", "out", "format"}
    if unknown:
        raise CavmagError(f"unknown config keys: {sorted(unknown)}")
    return data


def _pick(cli_value, cfg: dict, key: str, fallback):
    if cli_value is not None:
        return cli_value
    if key in cfg:
        return cfg[key]
    return fallback


def _family_from_args(args) -> tuple[PseudoHermitianFamily, float | None, dict]:
    cfg = _load_config(getattr(args, "config", None))
    eta = float(_pick(args.eta, cfg, "eta", 1.0))
    gamma_2 = float(_pick(args.gamma2, cfg, "gamma_2", 1.5))
    omega_c = float(_pick(args.omega_c, cfg, "omega_c", 0.0))
    sign = int(_pick(args.delta1_sign, cfg, "delta_1_sign", +1))
    k = _pick(args.k, cfg, "k", None)
    if k is None:
        k = k_from_eta(eta)
    kappa_int = _pick(args.kappa_int, cfg, "kappa_int", None)
    if kappa_int is not None:
        kappa_int = float(kappa_int)
    family = PseudoHermitianFamily(
        eta=eta, k=float(k), gamma_2=gamma_2, omega_c=omega_c, delta_1_sign=sign
    )
    return family, kappa_int, cfg


def _require_g1(args, cfg: dict) -> float:
    g1 = _pick(getattr(args, "g1", None), cfg, "g1", None)
    if g1 is None:
        raise CavmagError("--g1 is required for this subcommand")
    return float(g1)


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_mapping(data: dict, args) -> None:
    if args.format == "json":
        _write_text(json.dumps(data, indent=2) + "\n", args.out)
    else:
        lines = [f"{key} = {value:.10g}" if isinstance(value, float) else f"{key} = {value}"
                 for key, value in data.items()]
        _write_text("\n".join(lines) + "\n", args.out)


def _cmd_eigs(args) -> int:
    family, kappa_int, cfg = _family_from_args(args)
    g1 = _require_g1(args, cfg)
    params = realize_family(family, g1, kappa_int)
    kwargs = {}
    if args.tol is not None:
        kwargs["rtol"] = args.tol
    triple = eigenvalues(build_effective_hamiltonian(params), **kwargs)
    data = {
        "g1": g1,
        "g_min": g_min(family),
        "classification": triple.classification.value,
        "coalescence_order": triple.coalescence_order,
        "eigenvalues": [[v.real, v.imag] for v in triple.values],
    }
    if args.format == "json":
        _write_text(json.dumps(data, indent=2) + "\n", args.out)
    else:
        lines = [
            f"g1 = {g1:.10g}",
            f"g_min = {data['g_min']:.10g}",
            f"classification = {data['classification']}",
            f"coalescence_order = {data['coalescence_order']}",
        ]
        for i, v in enumerate(triple.values):
            lines.append(f"omega_{i} = {v.real:.10g} {v.imag:+.10g}i")
        _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_ep3(args) -> int:
    family, _, _ = _family_from_args(args)
    report = ep3_critical(family.eta, family.gamma_2, family.omega_c)
    _emit_mapping(report.to_dict(), args)
    return 0


def _cmd_ep2(args) -> int:
    family, _, _ = _family_from_args(args)
    g_ep2 = ep2_locate(family.eta, family.gamma_2, family.omega_c, args.g_upper)
    report = ep3_critical(family.eta, family.gamma_2, family.omega_c)
    _emit_mapping(
        {"eta": family.eta, "g_ep3": report.g_ep3, "g_ep2": g_ep2}, args
    )
    return 0


def _cmd_cpa(args) -> int:
    family, kappa_int, cfg = _family_from_args(args)
    g1 = _require_g1(args, cfg)
    params = realize_family(family, g1, kappa_int)
    if args.scan is not None:
        lo, hi = args.scan
    else:
        span = 6.0 * family.gamma_2
        lo, hi = -span, span
    kwargs = {}
    if args.tol is not None:
        kwargs["accept_tol"] = args.tol
    roots = find_cpa_frequencies(
        params, (family.omega_c + lo, family.omega_c + hi), **kwargs
    )
    data = {
        "g1": g1,
        "count": len(roots),
        "frequencies": roots,
        "detunings": [r - family.omega_c for r in roots],
    }
    if args.format == "json":
        _write_text(json.dumps(data, indent=2) + "\n", args.out)
    else:
        lines = [f"g1 = {g1:.10g}", f"count = {len(roots)}"]
        lines += [f"omega_cpa = {r:.10g}" for r in roots]
        _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_spectrum(args) -> int:
    family, kappa_int, cfg = _family_from_args(args)
    g1 = _require_g1(args, cfg)
    params = realize_family(family, g1, kappa_int)
    if args.omega_range is not None:
        lo, hi = args.omega_range
    elif "omega_range" in cfg:
        lo, hi = cfg["omega_range"][0], cfg["omega_range"][1]
    else:
        span = 6.0 * family.gamma_2
        lo, hi = -span, span
    detunings = np.linspace(lo, hi, args.grid)
    s1 = s1_values(family.omega_c + detunings, params)
    rows = np.column_stack([detunings, s1.real, s1.imag, 2.0 * np.abs(s1) ** 2])
    grid = SweepGrid(
        columns=["detuning", "re_s1", "im_s1", "s_tot_sq"],
        rows=rows,
        axes={"detuning": detunings},
    )
    grid.write(args.out, args.format)
    return 0


def _parse_v0(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise CavmagError("--v0 expects three comma-separated complex numbers")
    try:
        return np.array([complex(p.strip()) for p in parts])
    except ValueError as exc:
        raise CavmagError(f"cannot parse --v0: {exc}") from exc


def _cmd_dynamics(args) -> int:
    family, kappa_int, cfg = _family_from_args(args)
    g1 = _require_g1(args, cfg)
    params = realize_family(family, g1, kappa_int)
    v0 = _parse_v0(args.v0)
    if args.drive_omega is not None:
        drive = DriveSpec(
            omega=family.omega_c + args.drive_omega,
            a1_in=complex(args.drive_a1),
            a2_in=complex(args.drive_a2),
        )
        traj = evolve_driven(params, drive, args.t_final, args.dt, v0=v0)
    else:
        h = build_effective_hamiltonian(params)
        traj = evolve_free(h, v0, args.t_final, args.dt)
    if args.out is None:
        traj.to_csv(sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            traj.to_csv(fh)
    return 0


def _figure_steps(args) -> dict:
    kwargs = {}
    if args.grid is not None:
        kwargs["steps"] = args.grid
    return kwargs


def _cmd_fig2(args) -> int:
    grid = fig2_grid(args.grid) if args.grid else fig2_grid()
    grid.write(args.out, args.format)
    if args.plot:
        from .plotting import plot_k_curve

        plot_k_curve(grid, args.plot)
    return 0


def _sweep_overrides(args, base: SweepConfig) -> SweepConfig:
    # explicit CLI flags win over the config file, which wins over defaults
    cfg = _load_config(getattr(args, "config", None))
    g1_range = tuple(cfg.get("g1_range", base.g1_range))
    omega_range = cfg.get("omega_range", base.omega_range)
    if omega_range is not None:
        omega_range = tuple(omega_range)
    return SweepConfig(
        family=base.family,
        g1_range=g1_range,
        omega_range=omega_range,
        kappa_int=base.kappa_int,
        out=args.out if args.out is not None else cfg.get("out"),
        format=args.format if args.format is not None else cfg.get("format", "csv"),
    )


def _cmd_fig3(args) -> int:
    config = fig3_config(args.case, **_figure_steps(args))
    config = _sweep_overrides(args, config)
    grid = sweep_eigenvalues(config)
    grid.write(config.out, config.format)
    if args.plot:
        from .plotting import plot_eigen_branches

        plot_eigen_branches(grid, args.plot)
    return 0


def _cmd_fig4(args) -> int:
    kwargs = {}
    if args.grid is not None:
        kwargs["g_steps"] = args.grid
    if args.omega_grid is not None:
        kwargs["omega_steps"] = args.omega_grid
    config = fig4_config(args.case, **kwargs)
    config = _sweep_overrides(args, config)
    grid = sweep_spectrum(config)
    grid.write(config.out, config.format)
    if args.plot:
        from .plotting import plot_spectrum_map

        plot_spectrum_map(grid, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavmag",
        description="Pseudo-Hermitian cavity-magnonics spectra, exceptional points, and CPA sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, default_format="text", choices=("text", "json")):
        p.add_argument("--format", choices=choices, default=default_format)
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("eigs", help="eigenvalues of the family at one g_1")
    _add_family_options(p, with_g1=True)
    p.add_argument("--tol", type=float, default=None, help="reality classification rtol")
    add_output(p)
    p.set_defaults(func=_cmd_eigs)

    p = sub.add_parser("ep3", help="third-order exceptional point")
    _add_family_options(p)
    add_output(p)
    p.set_defaults(func=_cmd_ep3)

    p = sub.add_parser("ep2", help="second-order exceptional point (eta > 1)")
    _add_family_options(p)
    p.add_argument("--g-upper", type=float, default=None, help="search upper bound, MHz")
    add_output(p)
    p.set_defaults(func=_cmd_ep2)

    p = sub.add_parser("cpa", help="real CPA frequencies at one g_1")
    _add_family_options(p, with_g1=True)
    p.add_argument("--scan", type=float, nargs=2, metavar=("LO", "HI"),
                   help="detuning scan range, MHz (default +/- 6 gamma_2)")
    p.add_argument("--tol", type=float, default=None, help="|S_1| acceptance tolerance")
    add_output(p)
    p.set_defaults(func=_cmd_cpa)

    p = sub.add_parser("spectrum", help="1D output spectrum at one g_1")
    _add_family_options(p, with_g1=True)
    p.add_argument("--omega-range", type=float, nargs=2, metavar=("LO", "HI"),
                   help="detuning range, MHz (default +/- 6 gamma_2)")
    p.add_argument("--grid", type=int, default=601, help="number of frequency points")
    add_output(p, default_format="csv", choices=("csv", "json"))
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("dynamics", help="time-domain trajectory (CSV)")
    _add_family_options(p, with_g1=True)
    p.add_argument("--v0", default="1,0,0", help="initial amplitudes, e.g. '1,0,0' or '1+1j,0,0'")
    p.add_argument("--t-final", type=float, default=2.0, help="duration, us")
    p.add_argument("--dt", type=float, default=1e-3, help="step, us")
    p.add_argument("--drive-omega", type=float, default=None,
                   help="drive detuning, MHz; enables the driven (lossy) model")
    p.add_argument("--drive-a1", default="1", help="port-1 input amplitude")
    p.add_argument("--drive-a2", default="0", help="port-2 input amplitude")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=_cmd_dynamics)

    p = sub.add_parser("fig2", help="coupling-ratio curve dataset")
    p.add_argument("--grid", type=int, default=None, help="number of eta points")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None, help="also render a PNG to this path")
    p.set_defaults(func=_cmd_fig2)

    p = sub.add_parser("fig3", help="eigenvalue-branch dataset")
    p.add_argument("--case", choices=("symmetric", "asymmetric"), default="symmetric")
    p.add_argument("--grid", type=int, default=None, help="number of g_1 points")
    p.add_argument("--config", default=None,
                   help="JSON overrides (g1_range, out, format)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None, help="also render a PNG to this path")
    p.set_defaults(func=_cmd_fig3)

    p = sub.add_parser("fig4", help="total output spectrum map dataset")
    p.add_argument("--case", choices=("symmetric", "asymmetric"), default="symmetric")
    p.add_argument("--grid", type=int, default=None, help="number of g_1 points")
    p.add_argument("--omega-grid", type=int, default=None, help="number of detuning points")
    p.add_argument("--config", default=None,
                   help="JSON overrides (g1_range, omega_range, out, format)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--plot", default=None, help="also render a PNG to this path")
    p.set_defaults(func=_cmd_fig4)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except CavmagError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(run_cli())


main = run_cli
