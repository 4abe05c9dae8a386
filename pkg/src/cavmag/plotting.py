"""Render the sweep datasets to figure files (headless Agg backend).

These are convenience views of the CSV payloads; the delimited output stays
the canonical artifact.
"""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sweeps import SweepGrid  # noqa: E402

__all__ = ["plot_k_curve", "plot_eigen_branches", "plot_spectrum_map"]


def plot_k_curve(grid: SweepGrid, path: str) -> str:
    fig, ax = plt.subplots(figsize=(5, 3.6))
    ax.plot(grid.column("eta"), grid.column("k"), color="tab:blue")
    ax.set_xlabel(r"$\eta=\gamma_1/\gamma_2$")
    ax.set_ylabel(r"$k=g_2/g_1$")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_eigen_branches(grid: SweepGrid, path: str) -> str:
    g1 = grid.column("g1")
    valid = grid.column("pseudo_hermitian") > 0.5
    fig, (ax_re, ax_im) = plt.subplots(2, 1, figsize=(5.5, 6), sharex=True)
    styles = {
        "omega_0": dict(color="black", ls="-", label=r"$\Omega_0$"),
        "omega_plus": dict(color="tab:red", ls="--", label=r"$\Omega_+$"),
        "omega_minus": dict(color="tab:blue", ls=":", label=r"$\Omega_-$"),
    }
    for name, style in styles.items():
        ax_re.plot(g1[valid], grid.column(f"re_{name}")[valid], **style)
        ax_im.plot(g1[valid], grid.column(f"im_{name}")[valid], **style)
    if np.any(~valid):
        edge = g1[~valid].max()
        for ax in (ax_re, ax_im):
            ax.axvspan(g1.min(), edge, color="palegreen", alpha=0.4)
    ax_re.set_ylabel(r"Re$(\Omega-\omega_c)$ (MHz)")
    ax_im.set_ylabel(r"Im$(\Omega-\omega_c)$ (MHz)")
    ax_im.set_xlabel(r"$g_1$ (MHz)")
    ax_re.legend(loc="best", fontsize=8)
    for ax in (ax_re, ax_im):
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_spectrum_map(grid: SweepGrid, path: str) -> str:
    g1 = grid.axes["g1"]
    detuning = grid.axes["detuning"]
    values = grid.axes["s_tot_sq"]
    fig, ax = plt.subplots(figsize=(5.5, 4.2))
    mesh = ax.pcolormesh(
        g1, detuning, values.T, shading="nearest", cmap="viridis", rasterized=True
    )
    fig.colorbar(mesh, ax=ax, label=r"$|S_{\rm tot}|^2$")
    ax.set_xlabel(r"$g_1$ (MHz)")
    ax.set_ylabel(r"$\omega-\omega_c$ (MHz)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
