import math
import os
from pathlib import Path

import numpy as np
import pytest

import dck

FIXTURES = Path(os.environ.get("DCK_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))
DATA = Path(__file__).resolve().parents[1] / "cli" / "data"


def test_edge_length_examples():
    assert dck.edge_length("euclidean", 1, 1, 1, 0, 0) == pytest.approx(2.0, rel=1e-15)
    assert dck.edge_length("hyperbolic", 0, 0, 1, 0, 0) == pytest.approx(math.acosh(2.0), rel=1e-15)
    assert dck.edge_length("spherical", 0, 0, 0.5, 0, 0) == pytest.approx(math.pi / 3, rel=1e-15)


def test_u_f_round_trip():
    for bg in ("hyperbolic", "spherical"):
        for f in (-0.7, -0.2, 0.1):
            u = dck.u_from_f(bg, 0.4, f)
            assert dck.f_from_u(bg, 0.4, u) == pytest.approx(f, abs=1e-12)


def test_bad_background_raises():
    with pytest.raises(dck.DckError):
        dck.edge_length("flat", 1, 1, 1, 0, 0)


def test_tetrahedron_curvatures():
    k = dck.curvatures(str(FIXTURES / "tetrahedron.json"))
    assert np.allclose(k, math.pi, atol=1e-12)


def test_jacobian_symmetric_with_constant_kernel():
    j = dck.curvature_jacobian(str(FIXTURES / "torus7.json"))
    assert np.abs(j - j.T).max() < 1e-12
    assert np.abs(j @ np.ones(j.shape[0])).max() < 1e-12


def test_validate_and_errors():
    assert dck.validate(FIXTURES / "genus2.json").ok
    bad = dck.validate(DATA / "missing_vertex.json")
    assert bad.exit_code == 2
    assert bad.body["error"]["kind"] == "ParseError"


def test_check_derivatives():
    res = dck.check_derivatives(FIXTURES / "genus2.json", seed=3)
    assert res.ok and res.body["pass"]


def test_uniformize_genus2():
    res = dck.uniformize(FIXTURES / "genus2.json", target="zero")
    assert res.ok
    assert res.body["status"] == "converged"
    assert res.surface is not None and len(res.surface["vertices"]) == 10
    assert dck.uniformize(FIXTURES / "tetrahedron.json").exit_code == 6
