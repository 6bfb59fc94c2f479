"""Matplotlib figures written straight to files (Agg backend, no display)."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["zero_scatter_svg", "outside_count_svg", "scaled_ratio_svg"]

_RC = {
    "svg.hashsalt": "binomcheb",
    "svg.fonttype": "path",
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _render(fig) -> str:
    buf = io.StringIO()
    # Dropping the date keeps repeated runs byte-identical
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def zero_scatter_svg(report) -> str:
    """Zeros in the complex plane with the real segment [-1, 1] drawn on the axis."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.axhline(0.0, color="0.75", lw=0.8, zorder=0)
        ax.plot([-1, 1], [0, 0], color="k", lw=2.0, solid_capstyle="butt",
                label="[-1, 1]", zorder=1)
        zs = np.array(report.all_zeros(), dtype=complex)
        inside = np.zeros(len(zs), dtype=bool)
        inside[:report.inside_count] = True
        if inside.any():
            ax.scatter(zs[inside].real, zs[inside].imag, s=14, color="tab:blue",
                       label=f"in (-1, 1): {report.inside_count}", zorder=2)
        if (~inside).any():
            ax.scatter(zs[~inside].real, zs[~inside].imag, s=14, color="tab:red",
                       marker="x", label=f"outside: {report.outside_count}", zorder=2)
        p = report.params
        ax.set_title(f"Zeros of $P_{{{p.m}}}(z)$ for $\\alpha={p.alpha:g}$")
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
        ax.legend(loc="upper right", frameon=False, fontsize=8)
        fig.tight_layout()
        return _render(fig)


def outside_count_svg(sweeps) -> str:
    """Outside-zero count against m, one line per alpha.

    ``sweeps`` maps alpha to a list of (m, count) pairs.
    """
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        for alpha, counts in sweeps.items():
            pts = [(m, c) for m, c in counts if c is not None]
            if pts:
                ms, cs = zip(*pts)
                ax.plot(ms, cs, marker="o", ms=3, label=f"alpha={alpha:g}")
        ax.set_xlabel("m")
        ax.set_ylabel("zeros outside (-1, 1)")
        ax.legend(frameon=False, fontsize=8)
        fig.tight_layout()
        return _render(fig)


def scaled_ratio_svg(report) -> str:
    """(m theta)^(1-alpha) * lhs/rhs against m theta, coloured by m."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        m = np.array([g[0] for g in report.grid], dtype=float)
        th = np.array([g[1] for g in report.grid])
        sc = ax.scatter(m * th, report.scaled_ratio, c=m, s=6, cmap="viridis")
        if report.K_emp is not None:
            ax.axvline(report.K_emp, color="k", ls="--", lw=0.8, label=f"K = {report.K_emp:g}")
            ax.legend(frameon=False, fontsize=8)
        ax.set_xscale("log")
        ax.set_xlabel("m theta")
        ax.set_ylabel("scaled ratio")
        ax.set_title(f"alpha = {report.alpha:g}")
        fig.colorbar(sc, ax=ax, label="m")
        fig.tight_layout()
        return _render(fig)
