import json
import math

import numpy as np
import pytest

from hirota_solitons import (
    ConfigDomainError,
    ConfigSchemaError,
    ConfigSyntaxError,
    SpectralConfig,
    SpectralPoint,
    emit_config,
    gauge_normalize,
    parse_config,
    validate,
)
from hirota_solitons.engine import evaluate_field


def make_doc(points):
    return json.dumps({"n_fields": 3, "epsilon": 1.0, "points": points})


def point_obj(lam, nu0):
    return {
        "lambda": {"re": lam.real, "im": lam.imag},
        "nu0": [{"re": c.real, "im": c.imag} for c in nu0],
    }


FIG1_POINT = point_obj(0.5 + 0.5j, [1.0, 0.5, 0.2, math.sqrt(0.71)])


def test_parse_reference_document():
    cfg = parse_config(make_doc([FIG1_POINT]))
    assert cfg.n_fields == 3
    assert cfg.epsilon == 1.0
    assert cfg.n_solitons == 1
    assert cfg.points[0].lam == 0.5 + 0.5j
    assert cfg.points[0].nu0[1] == 0.5 + 0j


def test_parse_vacuum():
    cfg = parse_config(make_doc([]))
    assert cfg.n_solitons == 0
    assert validate(cfg) == []


def test_parse_rejects_lower_half_plane():
    bad = point_obj(0.5 - 0.5j, [1.0, 0.5, 0.2, 0.1])
    with pytest.raises(ConfigDomainError) as exc:
        parse_config(make_doc([bad]))
    assert any(v.code == "EigenvalueNotUpperHalfPlane" for v in exc.value.violations)
    assert exc.value.violations[0].point_indices == (0,)


def test_parse_syntax_error():
    with pytest.raises(ConfigSyntaxError):
        parse_config("{not json")


def test_parse_schema_errors():
    with pytest.raises(ConfigSchemaError):
        parse_config(json.dumps({"epsilon": 1.0, "points": []}))
    # wrong seed arity
    bad = point_obj(0.5 + 0.5j, [1.0, 0.5])
    with pytest.raises(ConfigSchemaError) as exc:
        parse_config(make_doc([bad]))
    assert exc.value.point_index == 0
    # string complex forms are rejected
    doc = json.loads(make_doc([FIG1_POINT]))
    doc["points"][0]["lambda"] = "0.5+0.5j"
    with pytest.raises(ConfigSchemaError):
        parse_config(json.dumps(doc))


def test_validate_duplicates_and_zero_seed():
    cfg = SpectralConfig(
        n_fields=1,
        epsilon=0.0,
        points=(
            SpectralPoint(0.5 + 0.5j, (1 + 0j, 0.5 + 0j)),
            SpectralPoint(0.5 + 0.5j, (0j, 0j)),
        ),
    )
    codes = {v.code for v in validate(cfg)}
    assert "DuplicateEigenvalue" in codes
    assert "ZeroSeedVector" in codes


def test_validate_clean(fig1_config):
    assert validate(fig1_config) == []


def test_roundtrip_through_file_format(two_soliton_config):
    text = emit_config(two_soliton_config)
    cfg = parse_config(text)
    assert validate(cfg) == []
    assert cfg == two_soliton_config


def test_gauge_normalize_basics():
    cfg = SpectralConfig(
        n_fields=3,
        epsilon=0.0,
        points=(
            SpectralPoint(1j, (2 + 0j, 0j, 0j, 0j)),
            SpectralPoint(2j, (2j, 0j, 0j, 0j)),
            SpectralPoint(3j, (1 + 0j, 1 + 0j, 1 + 0j, 1 + 0j)),
        ),
    )
    out = gauge_normalize(cfg)
    assert out.points[0].nu0 == (1 + 0j, 0j, 0j, 0j)
    assert out.points[1].nu0 == (1 + 0j, 0j, 0j, 0j)
    assert np.allclose(out.points[2].nu0, (0.5, 0.5, 0.5, 0.5))


def test_gauge_normalize_idempotent(two_soliton_config):
    once = gauge_normalize(two_soliton_config)
    twice = gauge_normalize(once)
    for a, b in zip(once.points, twice.points):
        assert np.allclose(a.nu0, b.nu0, rtol=0, atol=1e-15)


def test_gauge_normalize_leaves_field_unchanged(two_soliton_config):
    normed = gauge_normalize(two_soliton_config)
    for x, t in [(0.0, 0.0), (1.3, -0.7), (-4.0, 2.0)]:
        a = evaluate_field(two_soliton_config, x, t).q
        b = evaluate_field(normed, x, t).q
        assert np.max(np.abs(a - b)) <= 1e-10 * max(1.0, float(np.max(np.abs(a))))
