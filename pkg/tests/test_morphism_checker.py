import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qhs.fusion_data import build_solution
from qhs.graph_model import catalog, make_graph
from qhs.morphism_checker import (
    EXAMPLE_NAMES, MorphismData, dimension_prune, example_embedding, podles_into_suq2, rp2_into_podles0,
    verify_psi,
)


def identity_morphism(name, **params):
    g, w, dp = catalog(name, **params)
    s = build_solution(g, w, dp)
    F = {(v, v): 1 for v in g.vertices}
    m = MorphismData(s, s, F, {}, g.boundary, g.boundary, "identity")
    for t, r in m.unitary_pairs():
        m.psi[(t, r)] = np.eye(m.block_shape(t, r)[1], dtype=complex)
    return m, dp


def scaled(m, key, factor):
    psi = dict(m.psi)
    psi[key] = psi[key] * factor
    return MorphismData(m.x, m.y, m.F, psi, m.x_boundary, m.y_boundary, m.name)


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_examples_verify(name):
    m = example_embedding(name)
    rep = verify_psi(m)
    assert rep.passed, rep.reasons
    assert rep.residual < 1e-10 and rep.unitarity_residual < 1e-10


@pytest.mark.parametrize("q", [0.5, -0.5, 0.3, -0.7])
@pytest.mark.parametrize("x", [0.0, 0.25, 0.5, math.inf])
@pytest.mark.parametrize("lam", [1.0, 1j, cmath.exp(0.7j)])
def test_podles_family(q, x, lam):
    assert verify_psi(podles_into_suq2(q=q, x=x, lam=lam)).passed


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 2 * math.pi), st.lists(st.floats(0.0, 2 * math.pi), min_size=9, max_size=9),
       st.sampled_from([0.5, -0.5]))
def test_podles_family_gauge(theta, angles, q):
    # the vertex phases alpha(m) act by a gauge transformation and never break the diagram
    m = podles_into_suq2(q=q, lam=cmath.exp(1j * theta), alpha=lambda k: cmath.exp(1j * angles[k + 4]))
    assert verify_psi(m).passed


@pytest.mark.parametrize("beta", [1.0, 1j, cmath.exp(0.3j)])
@pytest.mark.parametrize("family", [1, 2])
def test_d3prime_families(beta, family):
    assert verify_psi(example_embedding(f"d3prime_family{family}", beta=beta)).passed


def test_rp2_fixed_block():
    m = rp2_into_podles0()
    P = m.psi[("0", "1")]
    assert P.shape == (2, 2)
    assert np.allclose(np.abs(P), 1 / math.sqrt(2))
    assert np.isclose(abs(np.linalg.det(P)), 1.0)


@pytest.mark.parametrize("q", [0.5, 0.3, -0.5])
def test_rp2_other_q(q):
    assert verify_psi(rp2_into_podles0(q=q)).passed


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_scaled_block_fails(name):
    m = example_embedding(name)
    key = max(m.psi, key=lambda k: m.psi[k].size)
    rep = verify_psi(scaled(m, key, 1.01))
    assert not rep.passed
    assert any(r.startswith("unitarity") for r in rep.reasons)


def test_phase_error_breaks_diagram():
    m = rp2_into_podles0()
    rep = verify_psi(scaled(m, ("1", "2"), cmath.exp(0.4j)))
    assert not rep.passed
    assert any(r.startswith("diagram") for r in rep.reasons)
    assert rep.unitarity_residual < 1e-10


@pytest.mark.parametrize("name,params", [
    ("E6_affine", {"q": 1.0}), ("A_cycle", {"n": 2, "q": -0.5}), ("point_loops", {"loops": 3}),
    ("A_inf_inf", {"q": 0.5, "x": 0.25, "window": 3}), ("D_inf_star", {"q": 0.5, "window": 3}),
])
def test_identity_morphism(name, params):
    m, dp = identity_morphism(name, **params)
    assert verify_psi(m, dp).passed


def test_wrong_shape_rejected():
    m = rp2_into_podles0()
    psi = dict(m.psi)
    psi[("0", "1")] = np.eye(3)
    with pytest.raises(ValueError):
        verify_psi(MorphismData(m.x, m.y, m.F, psi, m.x_boundary, m.y_boundary))


def test_non_unit_phase_rejected():
    with pytest.raises(ValueError):
        podles_into_suq2(lam=1.5)
    with pytest.raises(ValueError):
        example_embedding("d3prime_family1", beta=2.0)
    with pytest.raises(ValueError):
        example_embedding("nope")


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_json_roundtrip(name):
    m = example_embedding(name)
    m2 = MorphismData.from_dict(json.loads(json.dumps(m.to_dict())))
    assert m2.F == {k: d for k, d in m.F.items() if d}
    for k, P in m.psi.items():
        assert np.array_equal(P, m2.psi[k])
    assert verify_psi(m2).passed


def test_report_dict():
    d = verify_psi(example_embedding("d3prime_family1")).to_dict()
    assert d["verdict"] == "pass" and d["reasons"] == []


# ---------------------------------------------------------------- gradings


def point_graph(q):
    a = abs(q)
    return make_graph(["p"], [("p", "p", 1 / a), ("p", "p", a)])


def test_podles_to_point_grading():
    gX, wX, _ = catalog("A_inf_inf", q=0.5, x=0.0, window=3)
    gY, wY = point_graph(0.5)
    r = dimension_prune(gX, gY, 2, wX, wY)
    assert r.gradings == [{("p", v): 1 for v in gX.vertices}]


def test_d3prime_grading():
    gX, wX = make_graph(["*", "+", "-"], [("*", "*", 1.0), ("*", "+", 0.5), ("+", "*", 2.0),
                                          ("*", "-", 0.5), ("-", "*", 2.0)])
    gY, wY = point_graph(1.0)
    r = dimension_prune(gX, gY, 2, wX, wY)
    assert r.gradings == [{("p", "*"): 2, ("p", "+"): 1, ("p", "-"): 1}]


@pytest.mark.parametrize("name,params", [("E6_affine", {"q": 1.0}), ("A_cycle", {"n": 2, "q": -1.0})])
def test_identity_grading_found(name, params):
    g, w, _ = catalog(name, **params)
    r = dimension_prune(g, g, 1, w, w)
    assert {(v, v): 1 for v in g.vertices} in r.gradings


@pytest.mark.parametrize("q", [0.5, -0.5, 0.3, -0.7])
def test_rp2_grading_only_at_x0(q):
    gX, wX, _ = catalog("D_inf_star", q=q, window=3)
    found = {}
    for x in (0.0, 0.25, 0.5, math.inf):
        gY, wY, _ = catalog("A_inf_inf", q=q, x=x, window=5)
        found[x] = dimension_prune(gX, gY, 2, wX, wY).gradings
    assert len(found[0.0]) == 1
    m = rp2_into_podles0(q=q if q > 0 else 0.5)
    assert found[0.0][0] == {k: d for k, d in m.F.items() if d}
    assert not found[0.25] and not found[0.5] and not found[math.inf]


def test_grading_report_dict():
    gX, wX = make_graph(["*", "+", "-"], [("*", "*", 1.0), ("*", "+", 0.5), ("+", "*", 2.0),
                                          ("*", "-", 0.5), ("-", "*", 2.0)])
    gY, wY = point_graph(1.0)
    d = dimension_prune(gX, gY, 2, wX, wY).to_dict()
    assert d["feasible"] and d["count"] == 1 and not d["truncated"]
