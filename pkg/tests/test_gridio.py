import json

import numpy as np
import pytest

from hirota_solitons import SpectralConfig
from hirota_solitons.engine import evaluate_field
from hirota_solitons.gridio import (
    GridSpec,
    emit_csv,
    emit_json,
    emit_rows,
    parse_csv,
    sample_grid,
)


def vacuum_config(n_fields=2):
    return SpectralConfig(n_fields, 1.0, ())


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 0, 0, 0, 5, 1)
    with pytest.raises(ValueError):
        GridSpec(0, 1, 1, 0, 5, 1)
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 1, 5, 1)  # nt=1 needs t_min == t_max
    spec = GridSpec(-1, 1, 0, 0, 3, 1)
    assert list(spec.t_axis()) == [0.0]


def test_sample_vacuum_all_zero():
    table = sample_grid(vacuum_config(), GridSpec(-5, 5, -1, 1, 7, 3))
    assert np.all(table.values == 0)
    assert table.failures == []
    assert table.values.shape == (7, 3, 2)
    assert "config_digest" in table.metadata
    assert "engine_version" in table.metadata


def test_sample_single_node_matches_direct_eval(fig1_config):
    table = sample_grid(fig1_config, GridSpec(0, 1, 0, 0, 1, 1))
    # nx=1 puts the single node at x_min
    direct = evaluate_field(fig1_config, 0.0, 0.0).q
    assert np.allclose(table.values[0, 0], direct, rtol=0, atol=0)


def test_sample_fixed_time_slice_peak(fig1_config):
    table = sample_grid(fig1_config, GridSpec(-10, 10, 0, 0, 401, 1))
    peak = float(np.max(np.abs(table.values[:, 0, 0])))
    assert peak == pytest.approx(0.5, abs=1e-4)


def test_emit_csv_vacuum_single_node():
    table = sample_grid(vacuum_config(1), GridSpec(0, 1, 0, 0, 1, 1))
    text = emit_csv(table, parts=("modulus",))
    lines = text.strip().split("\n")
    assert lines[0] == "x,t,component,part,value"
    assert len(lines) == 2
    assert lines[1] == "0,0,1,modulus,0"


def test_emit_csv_modulus_nonnegative(fig1_config):
    table = sample_grid(fig1_config, GridSpec(-3, 3, 0, 0, 11, 1))
    for row in parse_csv(emit_csv(table)):
        if row.part == "modulus":
            assert row.value >= 0.0


def test_csv_roundtrip_byte_identical(fig1_config):
    table = sample_grid(fig1_config, GridSpec(-2, 2, -0.5, 0.5, 5, 3))
    text = emit_csv(table)
    rows = parse_csv(text)
    assert emit_rows(rows) == text


def test_csv_modulus_consistent_with_real_imag(fig1_config):
    table = sample_grid(fig1_config, GridSpec(-2, 2, 0, 0, 9, 1))
    rows = parse_csv(emit_csv(table))
    by_key = {}
    for r in rows:
        by_key[(r.x, r.component, r.part)] = r.value
    for (x, comp, part), v in by_key.items():
        if part == "modulus":
            re = by_key[(x, comp, "real")]
            im = by_key[(x, comp, "imag")]
            assert abs(v - abs(complex(re, im))) <= 1e-15 * max(1.0, v)


def test_part_selection_and_order(fig1_config):
    table = sample_grid(fig1_config, GridSpec(0, 1, 0, 0, 1, 1))
    rows = parse_csv(emit_csv(table, parts=("imag", "real")))
    # canonical part order is real before imag regardless of request order
    assert [r.part for r in rows[:2]] == ["real", "imag"]
    with pytest.raises(ValueError):
        emit_csv(table, parts=())
    with pytest.raises(ValueError):
        emit_csv(table, parts=("modulus", "phase"))


def test_emit_json_mirrors_csv(fig1_config):
    table = sample_grid(fig1_config, GridSpec(-1, 1, 0, 0, 3, 1))
    doc = json.loads(emit_json(table))
    assert doc["grid"]["nx"] == 3
    rows = parse_csv(emit_csv(table))
    assert len(doc["values"]) == len(rows)
    for jrow, crow in zip(doc["values"], rows):
        assert jrow["x"] == crow.x
        assert jrow["component"] == crow.component
        assert jrow["part"] == crow.part
        assert jrow["value"] == crow.value


def test_float_formatting_roundtrip():
    # 17 significant digits survive a parse/emit cycle bit-exactly
    vals = [1 / 3, 0.1, 2**-52, 1e300, -1.2345678901234567e-7]
    from hirota_solitons.gridio import _fmt

    for v in vals:
        assert float(_fmt(v)) == v


def test_render_figures(tmp_path, fig1_config):
    from hirota_solitons.plotting import render_figures

    slice_table = sample_grid(fig1_config, GridSpec(-5, 5, 0, 0, 41, 1))
    paths = render_figures(slice_table, ("modulus", "real"), tmp_path / "slice.csv")
    assert [p.name for p in paths] == ["slice_modulus.png", "slice_real.png"]
    assert all(p.exists() and p.stat().st_size > 0 for p in paths)
    surface = sample_grid(fig1_config, GridSpec(-4, 4, -1, 1, 9, 5))
    paths = render_figures(surface, ("modulus",), tmp_path / "surf.csv")
    assert paths[0].name == "surf_modulus.png"
    assert paths[0].exists()
