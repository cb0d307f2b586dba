"""Grid sampling and stable delimited output.

Fields are sampled x-major over a rectangular space-time grid and emitted as
long-format CSV (one value per row) or an equivalent JSON document.  Floats
are printed with 17 significant digits so a parse/emit round trip is
byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import engine
from .errors import SingularKernel
from .spectral import SpectralConfig, config_digest

PARTS = ("modulus", "real", "imag")

CSV_HEADER = "x,t,component,part,value"


def _fmt(v: float) -> str:
    return format(v, ".17g")


@dataclass(frozen=True)
class GridSpec:
    """Uniform rectangular sampling grid; nt = 1 gives a fixed-time slice."""

    x_min: float
    x_max: float
    t_min: float
    t_max: float
    nx: int
    nt: int

    def __post_init__(self):
        if self.x_min >= self.x_max:
            raise ValueError("x_min must be < x_max")
        if self.t_min > self.t_max:
            raise ValueError("t_min must be <= t_max")
        if self.nx < 1 or self.nt < 1:
            raise ValueError("grid counts must be positive")
        if self.nt == 1 and self.t_min != self.t_max:
            raise ValueError("nt = 1 requires t_min == t_max")

    def x_axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def t_axis(self) -> np.ndarray:
        if self.nt == 1:
            return np.array([self.t_min])
        return np.linspace(self.t_min, self.t_max, self.nt)


@dataclass
class FieldTable:
    """Sampled field values with provenance metadata.

    values has shape (nx, nt, N); nodes where the kernel matrix degenerated
    hold NaN and are listed in ``failures`` as (i, k, message).
    """

    grid: GridSpec
    values: np.ndarray
    metadata: dict
    failures: list = field(default_factory=list)


def sample_grid(config: SpectralConfig, grid: GridSpec) -> FieldTable:
    """Evaluate the field on every grid node; singular nodes are recorded, not fatal."""
    xs = grid.x_axis()
    ts = grid.t_axis()
    values = np.empty((grid.nx, grid.nt, config.n_fields), dtype=complex)
    failures = []
    for i, x in enumerate(xs):
        for k, t in enumerate(ts):
            try:
                values[i, k] = engine.evaluate_field(config, float(x), float(t)).q
            except SingularKernel as exc:
                values[i, k] = np.nan
                failures.append((i, k, str(exc)))
    meta = {
        "config_digest": config_digest(config),
        "engine_version": engine_version(),
    }
    return FieldTable(grid=grid, values=values, metadata=meta, failures=failures)


def engine_version() -> str:
    from . import __version__

    return __version__


def _normalize_parts(parts) -> tuple[str, ...]:
    chosen = tuple(p for p in PARTS if p in set(parts))
    if not chosen:
        raise ValueError(f"parts must be a nonempty subset of {PARTS}")
    if set(parts) - set(PARTS):
        raise ValueError(f"unknown parts {set(parts) - set(PARTS)}")
    return chosen


def _part_value(z: complex, part: str) -> float:
    if part == "modulus":
        return abs(z)
    if part == "real":
        return z.real
    return z.imag


def emit_csv(table: FieldTable, parts=PARTS) -> str:
    """Long-format CSV: x-major, then t, component, part; 17-digit floats."""
    chosen = _normalize_parts(parts)
    xs = table.grid.x_axis()
    ts = table.grid.t_axis()
    lines = [CSV_HEADER]
    for i, x in enumerate(xs):
        for k, t in enumerate(ts):
            for j in range(table.values.shape[2]):
                z = table.values[i, k, j]
                for part in chosen:
                    lines.append(
                        f"{_fmt(x)},{_fmt(t)},{j + 1},{part},{_fmt(_part_value(z, part))}"
                    )
    return "\n".join(lines) + "\n"


class CsvRow(NamedTuple):
    x: float
    t: float
    component: int
    part: str
    value: float


def parse_csv(text: str) -> list[CsvRow]:
    """Parse emitted CSV back into rows (floats round-trip exactly)."""
    lines = text.strip().split("\n")
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected header '{CSV_HEADER}'")
    rows = []
    for ln in lines[1:]:
        xs, ts, comp, part, val = ln.split(",")
        if part not in PARTS:
            raise ValueError(f"unknown part '{part}'")
        rows.append(CsvRow(float(xs), float(ts), int(comp), part, float(val)))
    return rows


def emit_rows(rows) -> str:
    """Re-emit parsed rows; byte-identical to the original document."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{_fmt(r.x)},{_fmt(r.t)},{r.component},{r.part},{_fmt(r.value)}")
    return "\n".join(lines) + "\n"


def emit_json(table: FieldTable, parts=PARTS) -> str:
    """JSON mirror of the CSV content plus grid and metadata."""
    import json

    chosen = _normalize_parts(parts)
    xs = table.grid.x_axis()
    ts = table.grid.t_axis()
    values = []
    for i, x in enumerate(xs):
        for k, t in enumerate(ts):
            for j in range(table.values.shape[2]):
                z = table.values[i, k, j]
                for part in chosen:
                    values.append(
                        {
                            "x": float(x),
                            "t": float(t),
                            "component": j + 1,
                            "part": part,
                            "value": _part_value(z, part),
                        }
                    )
    doc = {
        "grid": {
            "x_min": table.grid.x_min,
            "x_max": table.grid.x_max,
            "t_min": table.grid.t_min,
            "t_max": table.grid.t_max,
            "nx": table.grid.nx,
            "nt": table.grid.nt,
        },
        "metadata": table.metadata,
        "failures": [list(f) for f in table.failures],
        "values": values,
    }
    return json.dumps(doc, indent=2)
