"""Figure rendering for sampled field tables.

A fixed-time slice (nt = 1) renders one line plot per requested part with a
curve per component; a full space-time grid renders one pcolormesh panel per
component.  Files land next to the delimited output.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .gridio import FieldTable, _normalize_parts, _part_value  # noqa: E402

import numpy as np  # noqa: E402


def _part_array(table: FieldTable, part: str) -> np.ndarray:
    z = table.values
    if part == "modulus":
        return np.abs(z)
    if part == "real":
        return z.real
    return z.imag


def render_figures(table: FieldTable, parts, base_path) -> list[Path]:
    """Write one PNG per part; returns the created paths."""
    chosen = _normalize_parts(parts)
    base = Path(base_path)
    xs = table.grid.x_axis()
    ts = table.grid.t_axis()
    ncomp = table.values.shape[2]
    out_paths = []
    for part in chosen:
        data = _part_array(table, part)  # (nx, nt, N)
        if table.grid.nt == 1:
            fig, ax = plt.subplots(figsize=(6, 4))
            for j in range(ncomp):
                ax.plot(xs, data[:, 0, j], label=f"|q{j + 1}|" if part == "modulus" else f"q{j + 1}")
            ax.set_xlabel("x")
            ax.set_ylabel(part)
            ax.set_title(f"{part} at t = {ts[0]:g}")
            ax.legend()
        else:
            fig, axes = plt.subplots(1, ncomp, figsize=(4 * ncomp, 3.5), squeeze=False)
            for j in range(ncomp):
                ax = axes[0][j]
                mesh = ax.pcolormesh(xs, ts, data[:, :, j].T, shading="auto")
                fig.colorbar(mesh, ax=ax)
                ax.set_xlabel("x")
                ax.set_ylabel("t")
                ax.set_title(f"q{j + 1} {part}")
        fig.tight_layout()
        path = base.with_name(f"{base.stem}_{part}.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        out_paths.append(path)
    return out_paths
