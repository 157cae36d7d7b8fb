import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import adjacency_oracle, b_operator, norm_oracle
from qhs.cost_engine import (
    adjacency, classify_ade, find_involution, graph_norm, is_coideal_type, perron_cost, random_walk,
    solve_cost, source_cost, spectral_gap_flag, verify_fair_balanced,
)
from qhs.graph_model import DeformationParameter, catalog, catalog_entries, make_graph

Q1 = DeformationParameter(1.0)


def pair_graph(w1=None, w2=None):
    arrows = [("a", "b", w1), ("b", "a", w2)] if w1 is not None else [("a", "b"), ("b", "a")]
    return make_graph(["a", "b"], arrows)


def test_source_cost():
    g, w, _ = catalog("point_loops", loops=2, q=1.0)
    assert source_cost(g, w, "0") == 2.0
    g, w, _ = catalog("E6_affine", q=1.0)
    assert source_cost(g, w, "a1.2") == 2.0
    g, w, _ = catalog("A_cycle", n=1, q=-0.5)
    assert source_cost(g, w, "0") == pytest.approx(2.5)
    with pytest.raises(ValueError):
        source_cost(g, w, "zz")


def test_find_involution_examples():
    g, w, _ = catalog("point_loops", loops=2, q=1.0)
    inv = find_involution(g, w, require_loop_free=True)
    a, b = (e.id for e in g.edges)
    assert inv == {a: b, b: a}
    g3, w3 = make_graph(["p"], [("p", "p", 1.0)] * 3)
    assert find_involution(g3, w3, require_loop_free=True) is None
    assert find_involution(g3, w3, require_loop_free=False) is not None
    g, w, _ = catalog("A_cycle", n=1, q=-0.5)
    inv = find_involution(g, w, require_loop_free=False)
    for a, b in inv.items():
        assert w[a] * w[b] == pytest.approx(1.0)
        ea, eb = g.edge_map[a], g.edge_map[b]
        assert (ea.src, ea.dst) == (eb.dst, eb.src)


def test_verify_examples():
    g, w, dp = catalog("E6_affine", q=1.0)
    assert verify_fair_balanced(g, w, dp).passed
    g, w = pair_graph(2.0, 0.5)
    rep = verify_fair_balanced(g, w, Q1)
    assert not rep.passed
    assert "source_cost:b" in rep.reasons and rep.source_costs["b"] == 0.5
    g, w, dp = catalog("point_loops", loops=2, q=1.0)
    assert verify_fair_balanced(g, w, dp).passed


def test_verify_report_json():
    g, w, dp = catalog("point_loops", loops=2, q=1.0)
    d = verify_fair_balanced(g, w, dp).to_dict()
    assert set(d) == {"verdict", "reasons", "source_costs", "involution"}
    assert d["verdict"] == "pass"


def test_connectedness_flag():
    g, w = make_graph(["a", "b"], [("a", "a", 1.0), ("a", "a", 1.0), ("b", "b", 1.0), ("b", "b", 1.0)])
    assert verify_fair_balanced(g, w, Q1).passed
    rep = verify_fair_balanced(g, w, Q1, require_connected=True)
    assert rep.reasons == ["disconnected"]


def test_loop_parity():
    g, w = make_graph(["p"], [("p", "p", 1.0)] * 3)
    rep = verify_fair_balanced(g, w, DeformationParameter.from_T(3.0))
    assert not rep.passed and "loop_parity:p" in rep.reasons
    assert verify_fair_balanced(g, w, DeformationParameter.from_T(-3.0)).passed


def test_adjacency():
    assert adjacency(catalog("point_loops", loops=5)[0]).tolist() == [[5]]
    assert adjacency(catalog("A_cycle", n=1, q=0.5)[0]).tolist() == [[0, 2], [2, 0]]
    assert adjacency(pair_graph()[0]).tolist() == [[0, 1], [1, 0]]


def test_graph_norm_examples():
    assert graph_norm(catalog("point_loops", loops=4)[0]) == pytest.approx(4)
    assert graph_norm(catalog("E6_affine", q=1.0)[0]) == pytest.approx(2.0, abs=1e-9)
    assert graph_norm(pair_graph()[0]) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        graph_norm(make_graph(["a", "b"], [("a", "b")])[0])


@pytest.mark.parametrize("name,params", catalog_entries())
def test_graph_norm_matches_eigvalsh(name, params):
    g = catalog(name, **params)[0]
    assert graph_norm(g) == pytest.approx(norm_oracle(g), abs=1e-8)
    assert (adjacency(g) == adjacency_oracle(g)).all()


def test_perron_cost_examples():
    g, w, _ = catalog("E6_affine", q=1.0)
    pc = perron_cost(g, -2.0)
    assert all(abs(pc[k] - w[k]) < 1e-8 for k in w)
    g = catalog("A_cycle", n=2, q=1.0)[0]
    assert all(abs(x - 1) < 1e-12 for x in perron_cost(g, -2.0).values())
    g = pair_graph()[0]
    assert perron_cost(g, -1.0) == {e.id: pytest.approx(1.0) for e in g.edges}
    assert perron_cost(catalog("E6_affine", q=1.0)[0], -2.5) is None
    with pytest.raises(ValueError):
        perron_cost(make_graph(["a", "b"], [])[0], 2.0)


@pytest.mark.parametrize("name,params", [(n, p) for n, p in catalog_entries() if not catalog(n, **p)[0].boundary])
def test_perron_cost_is_fair(name, params):
    g = catalog(name, **params)[0]
    nrm = graph_norm(g)
    if nrm < 2:
        pytest.skip("norm below 2 has no deformation parameter")
    pc = perron_cost(g, -nrm)
    assert verify_fair_balanced(g, pc, DeformationParameter.from_T(-nrm), tol=1e-8).passed
    if all(len(g.loops(v)) % 2 == 0 for v in g.vertices):
        assert verify_fair_balanced(g, pc, DeformationParameter.from_T(nrm), tol=1e-8).passed


@pytest.mark.parametrize("name,params", catalog_entries())
def test_b_operator_identities(name, params):
    g, w, dp = catalog(name, **params)
    if g.boundary:
        pytest.skip("B*B = |T| needs every vertex to be interior")
    rep = verify_fair_balanced(g, w, dp)
    B, U = b_operator(g, w, rep.involution)
    assert np.abs(B.T @ B - dp.abs_T * np.eye(len(g.vertices))).max() <= 1e-10
    assert np.abs(B.T @ U @ B - adjacency(g)).max() <= 1e-10


def test_random_walk():
    g, w, dp = catalog("point_loops", loops=2, q=1.0)
    assert set(random_walk(g, w, dp).values()) == {0.5}
    g, w, dp = catalog("A_cycle", n=1, q=-0.5)
    assert sorted(random_walk(g, w, dp).values()) == pytest.approx([0.2, 0.2, 0.8, 0.8])
    g, w, dp = catalog("E6_affine", q=1.0)
    P = random_walk(g, w, dp)
    assert P["a1.2→a1.1#0"] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        random_walk(*pair_graph(2.0, 0.5), Q1)


@pytest.mark.parametrize("name,params", catalog_entries())
def test_random_walk_is_stochastic(name, params):
    g, w, dp = catalog(name, **params)
    P = random_walk(g, w, dp)
    inv = verify_fair_balanced(g, w, dp).involution
    for v in g.interior:
        assert sum(P[e.id] for e in g.out_edges(v)) == pytest.approx(1, abs=1e-10)
    for a, b in inv.items():
        assert P[a] * P[b] == pytest.approx(dp.T ** -2, abs=1e-10)


def test_solve_cost_podles_family():
    g, w, dp = catalog("A_inf_inf", q=0.5, x=0.0, window=3)
    res = solve_cost(g, dp)
    assert res.feasible and res.family
    for cost, _ in res.solutions:
        assert verify_fair_balanced(g, cost, dp, tol=1e-6).passed
        a = cost["0→1#0"]
        assert 0.5 - 1e-9 <= a <= 2 + 1e-9


def test_rigid_double_root_not_a_family():
    # at |T| = 2 the two loops are forced to weight 1 and the Jacobian is singular there
    g = make_graph(["p"], [("p", "p")] * 2)[0]
    res = solve_cost(g, DeformationParameter(1.0))
    assert res.feasible and not res.family
    assert all(abs(v - 1) < 1e-7 for cost, _ in res.solutions for v in cost.values())


def test_solve_cost_cycle_isolated():
    # two mirror-image costs, both rigid
    g = catalog("A_cycle", n=3, q=0.5)[0]
    res = solve_cost(g, DeformationParameter(0.5))
    assert res.feasible and not res.family and len(res.solutions) == 2
    for cost, _ in res.solutions:
        ccw = {round(cost[f"{k}→{(k + 1) % 4}#0"], 9) for k in range(4)}
        assert ccw in ({0.5}, {2.0})


@pytest.mark.parametrize("q", [0.3, -0.3, 0.7, -0.7, 1.0, -1.0])
def test_solve_cost_pair_infeasible(q):
    assert solve_cost(pair_graph()[0], DeformationParameter(q)).status == "infeasible"


def test_solve_cost_odd_loops():
    g = make_graph(["p"], [("p", "p")] * 3)[0]
    assert not solve_cost(g, DeformationParameter(0.5)).feasible
    assert solve_cost(g, DeformationParameter.from_T(-3.0)).feasible


@pytest.mark.parametrize("a", [0.5, 0.9])
@pytest.mark.parametrize("s", [1, -1])
def test_solve_cost_e6_only_at_one(a, s):
    g = catalog("E6_affine", q=1.0)[0]
    assert not solve_cost(g, DeformationParameter(s * a)).feasible
    assert solve_cost(g, DeformationParameter(float(s))).feasible


@pytest.mark.parametrize("name,params", catalog_entries())
def test_solver_soundness(name, params):
    g, w, dp = catalog(name, **params)
    res = solve_cost(g, dp, max_solutions=2)
    assert res.feasible
    for cost, _ in res.solutions:
        assert verify_fair_balanced(g, cost, dp, tol=1e-6).passed


@st.composite
def feasible_instances(draw):
    """A random connected symmetric graph together with a |T| at or above its norm."""
    n = draw(st.integers(1, 4))
    verts = [str(i) for i in range(n)]
    arrows = []
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        arrows += [(verts[i], verts[j]), (verts[j], verts[i])]
    for _ in range(draw(st.integers(0, 2))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            arrows += [(verts[i], verts[j]), (verts[j], verts[i])]
    for v in verts:
        arrows += [(v, v)] * draw(st.integers(0, 2))
    g = make_graph(verts, arrows)[0]
    nrm = norm_oracle(g)
    slack = draw(st.sampled_from([0.0, 0.0, 0.3, 1.0]))
    T = -max(nrm + slack, 2.0)
    return g, DeformationParameter.from_T(T)


@settings(max_examples=60, deadline=None)
@given(feasible_instances())
def test_norm_bound_and_rigidity(inst):
    g, dp = inst
    res = solve_cost(g, dp, max_solutions=2)
    if not res.feasible:
        return
    nrm = graph_norm(g)
    for cost, _ in res.solutions:
        assert nrm <= dp.abs_T + 1e-8
        if abs(nrm - dp.abs_T) <= 1e-8:
            for es in g.parallel_classes().values():
                assert max(cost[e.id] for e in es) - min(cost[e.id] for e in es) <= 1e-6
            pc = perron_cost(g, dp.T, tol=1e-8)
            assert all(abs(pc[k] - cost[k]) <= 1e-6 for k in cost)


def test_classify_examples():
    assert classify_ade(catalog("E6_affine", q=1.0)[0]) == "E6_affine"
    assert classify_ade(catalog("point_loops", loops=2)[0]) == "point_double_loop"
    assert classify_ade(pair_graph()[0]) == "none"


EXPECTED_TAGS = {
    "A_inf_inf": "A_inf_inf", "D_inf_star": "D_inf_star", "A_cycle": "A_cycle", "E6_affine": "E6_affine",
    "E7_affine": "E7_affine", "E8_affine": "E8_affine", "D_affine": "D_affine", "A_prime": "A_prime",
    "D_prime": "D_prime", "A_inf_prime": "A_inf_prime",
}


@pytest.mark.parametrize("name,params", catalog_entries())
def test_classify_catalog(name, params):
    g = catalog(name, **params)[0]
    if name == "point_loops":
        expected = "point_double_loop" if params["loops"] == 2 else "none"
    else:
        expected = EXPECTED_TAGS[name]
    assert classify_ade(g) == expected


def test_classify_rejects_near_misses():
    # E6 with one arm lengthened is E7-like but not affine E7
    g = make_graph(["c", "x1", "x2", "y1", "y2", "z1", "z2", "z3"],
                   [p for a, b in [("c", "x1"), ("x1", "x2"), ("c", "y1"), ("y1", "y2"), ("c", "z1"),
                                   ("z1", "z2"), ("z2", "z3")] for p in ((a, b), (b, a))])[0]
    assert classify_ade(g) == "none"
    assert graph_norm(g) > 2


def test_coideal_examples():
    assert is_coideal_type(catalog("E6_affine", q=1.0)[0])
    assert not is_coideal_type(catalog("point_loops", loops=3)[0])
    assert is_coideal_type(catalog("A_inf_inf", q=0.5, window=4)[0])
    with pytest.raises(ValueError):
        is_coideal_type(make_graph(["a", "b"], [])[0])


def test_coideal_window_undecidable():
    # a window of a graph that is not one of the named families, with norm below 2
    g = make_graph(["0", "1", "2", "3"], [p for a, b in [("0", "1"), ("1", "2"), ("1", "3")]
                                          for p in ((a, b), (b, a))], boundary=["0", "2"])[0]
    with pytest.raises(ValueError):
        is_coideal_type(g)


def test_spectral_gap_flag():
    g = catalog("point_loops", loops=3)[0]
    assert spectral_gap_flag(g, 3.5)
    assert not spectral_gap_flag(g, 2.5)
    assert not spectral_gap_flag(catalog("E6_affine", q=1.0)[0], 3.0)


@given(st.floats(min_value=2.0, max_value=6.0))
def test_point_double_loop_any_T(T):
    # two loops x and 1/x with x + 1/x = |T|
    x = (T + math.sqrt(T * T - 4)) / 2
    g, w = make_graph(["p"], [("p", "p", x), ("p", "p", 1 / x)])
    assert verify_fair_balanced(g, w, DeformationParameter.from_T(T), tol=1e-9).passed
    assert not verify_fair_balanced(g, {k: v * 1.01 for k, v in w.items()}, DeformationParameter.from_T(T)).passed
