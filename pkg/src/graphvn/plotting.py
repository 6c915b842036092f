"""Figures for classify and cross-validate reports (written to files, Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_masses(report, path) -> None:
    """Per-vertex state mass, split into the atomic part and the rest."""
    td = report.tracial
    vertices = list(td.state)
    scale = report.state_total if report.normalized else 1
    state = np.array([float(td.state[v] / scale) for v in vertices])
    atom = np.array([float(a.mass) if (a := report.atom_at(v)) else 0.0 for v in vertices])
    x = np.arange(len(vertices))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(vertices) + 2), 3.5))
    ax.bar(x, state - atom, color="tab:blue", label="diffuse part")
    ax.bar(x, atom, bottom=state - atom, color="tab:orange", label="atom")
    ax.set_xticks(x, vertices)
    ax.set_xlabel("vertex")
    ax.set_ylabel("state mass")
    gens = ", ".join(str(g) for g in report.group.generators()) or "trivial"
    ax.set_title(f"H = <{gens}>, diffuse weight {float(report.diffuse.weight):.4g}")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_cross_validation(report, path) -> None:
    """Exact moment against simulated moment, and the deviation per word."""
    exact = np.array([r.exact_float for r in report.rows])
    fock = np.array([r.fock for r in report.rows])
    dev = np.array([r.deviation for r in report.rows])
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.5))
    ax1.scatter(exact, fock, s=8)
    if len(exact):
        lo, hi = min(exact.min(), fock.min()), max(exact.max(), fock.max())
        ax1.plot([lo, hi], [lo, hi], color="grey", lw=0.8)
    ax1.set_xlabel("exact")
    ax1.set_ylabel("Fock simulation")
    ax2.semilogy(np.arange(len(dev)), np.maximum(dev, 1e-18), ".", ms=3)
    ax2.axhline(report.tol, color="red", lw=0.8, label=f"tol {report.tol:g}")
    ax2.set_xlabel("word")
    ax2.set_ylabel("|deviation|")
    ax2.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
