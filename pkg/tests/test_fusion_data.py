import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qhs.fusion_data import (
    FundamentalSolution, block_spectrum, build_solution, loop_normal_form, solution_to_graph,
    solutions_equivalent, verify_solution,
)
from qhs.graph_model import DeformationParameter, catalog, catalog_entries, find_isomorphism

SMALL = [(n, p) for n, p in catalog_entries() if len(catalog(n, **p)[0].vertices) <= 8]


def random_unitary(rng, n):
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def transform(s, rng, perm=True):
    """An equivalent solution: relabel vertices and conjugate every block by random unitaries."""
    names = list(s.vertices)
    new = list(names)
    if perm:
        rng.shuffle(new)
    phi = dict(zip(names, new))
    U = {k: random_unitary(rng, d) for k, d in s.dims.items() if d}
    jm = {}
    for (v, w), M in s.jmaps.items():
        jm[(phi[v], phi[w])] = U[(w, v)].conj().T @ M @ np.conj(U[(v, w)])
    return FundamentalSolution(tuple(new), {(phi[v], phi[w]): d for (v, w), d in s.dims.items()}, jm, s.sign)


def test_point_loops_solution():
    g, w, dp = catalog("point_loops", loops=2, q=1.0)
    s = build_solution(g, w, dp)
    M = s.jmaps[("0", "0")]
    assert np.allclose(M, [[0, -1], [1, 0]])
    assert np.allclose(M @ np.conj(M), -np.eye(2))


def test_cycle_solution():
    g, w, dp = catalog("A_cycle", n=1, q=-0.5)
    s = build_solution(g, w, dp)
    a = s.jmaps[("0", "1")]
    b = s.jmaps[("1", "0")]
    assert sorted(np.abs(a).ravel()[np.abs(a).ravel() > 0]) == pytest.approx([math.sqrt(0.5), math.sqrt(2)])
    assert np.allclose(b @ np.conj(a), np.eye(2))
    assert (a.real >= 0).all() and (b.real >= 0).all()


def test_podles_solution_blocks():
    g, w, dp = catalog("A_inf_inf", q=0.5, x=0.0, window=3)
    s = build_solution(g, w, dp)
    for m in range(-3, 3):
        M = s.jmaps[(str(m), str(m + 1))]
        assert M.shape == (1, 1)
        assert abs(M[0, 0]) ** 2 == pytest.approx(w[f"{m}→{m + 1}#0"])


def test_build_rejects_unfair():
    g, w, dp = catalog("A_cycle", n=1, q=-0.5)
    with pytest.raises(ValueError):
        build_solution(g, {k: 1.0 for k in w}, dp)


@pytest.mark.parametrize("name,params", catalog_entries())
def test_build_verifies(name, params):
    g, w, dp = catalog(name, **params)
    s = build_solution(g, w, dp)
    rep = verify_solution(s, dp, boundary=g.boundary)
    assert rep.passed and rep.residual < 1e-10
    for (v, u), M in s.jmaps.items():
        assert s.dim(v, u) == s.dim(u, v)
        a = np.sort(block_spectrum(M))
        b = np.sort(1 / block_spectrum(s.jmaps[(u, v)]))
        assert np.allclose(a, b, atol=1e-8)
        if v == u and dp.q > 0:
            assert np.sum(np.abs(block_spectrum(M) - 1) < 1e-8) % 2 == 0


def test_verify_detects_perturbation():
    g, w, dp = catalog("A_cycle", n=2, q=0.5)
    w2 = dict(w)
    w2["0→1#0"] = 1.1 * w2["0→1#0"]
    s = build_solution(g, w, dp)
    jm = dict(s.jmaps)
    jm[("0", "1")] = jm[("0", "1")] * math.sqrt(1.1)
    rep = verify_solution(FundamentalSolution(s.vertices, s.dims, jm, s.sign), dp)
    assert not rep.passed and "trace:0" in rep.reasons


def test_verify_detects_sign_mismatch():
    # M conj(M) = +I is the q < 0 identity
    s = FundamentalSolution(("p",), {("p", "p"): 2}, {("p", "p"): np.eye(2, dtype=complex)}, 1)
    rep = verify_solution(s, DeformationParameter(1.0))
    assert not rep.passed and "composition:p,p" in rep.reasons
    assert verify_solution(FundamentalSolution(("p",), {("p", "p"): 2}, {("p", "p"): np.eye(2, dtype=complex)}, -1),
                           DeformationParameter(-1.0)).passed


def test_solution_to_graph_small():
    s = FundamentalSolution(("p",), {("p", "p"): 1}, {("p", "p"): np.array([[math.sqrt(2)]], dtype=complex)}, -1)
    g, w = solution_to_graph(s)
    assert len(g.edges) == 1 and list(w.values()) == pytest.approx([2.0])
    g0, w0, dp = catalog("point_loops", loops=2, q=1.0)
    g, w = solution_to_graph(build_solution(g0, w0, dp), dp)
    assert sorted(w.values()) == pytest.approx([1.0, 1.0])


@pytest.mark.parametrize("name,params", SMALL)
def test_roundtrip(name, params):
    g, w, dp = catalog(name, **params)
    g2, w2 = solution_to_graph(build_solution(g, w, dp), dp, boundary=g.boundary)
    assert find_isomorphism(g, w, g2, w2, tol=1e-8) is not None


def test_json_roundtrip():
    g, w, dp = catalog("A_cycle", n=1, q=-0.5)
    s = build_solution(g, w, dp)
    s2 = FundamentalSolution.from_dict(s.to_dict())
    assert s2.vertices == s.vertices
    for k in s.jmaps:
        assert np.array_equal(s.jmaps[k], s2.jmaps[k])


def test_equivalent_to_itself():
    g, w, dp = catalog("E6_affine", q=1.0)
    s = build_solution(g, w, dp)
    res = solutions_equivalent(s, s)
    assert res.status == "equivalent" and res.residual < 1e-8


def test_point_loops_rho_choices():
    g, w, dp = catalog("point_loops", loops=2, q=1.0)
    a, b = (e.id for e in g.edges)
    s1 = build_solution(g, w, dp)
    s2 = build_solution(g, w, dp, rho={a: -1, b: 1})
    assert not np.allclose(s1.jmaps[("0", "0")], s2.jmaps[("0", "0")])
    assert solutions_equivalent(s1, s2).status == "equivalent"


def test_podles_parameters_inequivalent():
    dp = DeformationParameter(0.5)
    s = [build_solution(*catalog("A_inf_inf", q=0.5, x=x, window=3)[:2], dp) for x in (0.0, 0.3)]
    assert solutions_equivalent(s[0], s[1]).status == "inequivalent"


def test_undecided_cap():
    g, w, dp = catalog("point_loops", loops=5)
    s = build_solution(g, w, dp)
    assert solutions_equivalent(s, s).status == "undecided"


@pytest.mark.parametrize("name,params", SMALL)
def test_equivalence_matches_graph_isomorphism(name, params):
    g, w, dp = catalog(name, **params)
    if max(len(es) for es in g.parallel_classes().values()) > 4:
        pytest.skip("blocks above the equivalence cap")
    s = build_solution(g, w, dp)
    rng = np.random.default_rng(len(g.edges))
    res = solutions_equivalent(s, transform(s, rng))
    assert res.status == "equivalent"
    # a solution with different edge costs must not be matched
    if len(g.vertices) > 1:
        jm = {k: (M * 1.5 if k == min(s.jmaps) else M / 1.5 if k == min(s.jmaps)[::-1] else M)
              for k, M in s.jmaps.items()}
        other = FundamentalSolution(s.vertices, s.dims, jm, s.sign)
        assert solutions_equivalent(s, other).status == "inequivalent"


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([1, -1]), st.integers(1, 4))
def test_loop_normal_form(seed, eps, n):
    if eps == -1 and n % 2:
        n += 1
    rng = np.random.default_rng(seed)
    # an antiunitary-type block: M = V C V^T with random V and canonical C
    lam = rng.uniform(1.0, 4.0)
    if eps == 1:
        C = np.eye(n, dtype=complex)
    else:
        C = np.kron(np.eye(n // 2), np.array([[0, -1], [1, 0]]))
    if n >= 2 and eps == 1 and n % 2 == 0:
        C = np.kron(np.eye(n // 2), np.array([[0, 1 / math.sqrt(lam)], [math.sqrt(lam), 0]]))
    V = random_unitary(rng, n)
    M = V @ C @ V.T
    assert np.allclose(M @ np.conj(M), eps * np.eye(n))
    V2, C2 = loop_normal_form(M, eps)
    assert np.allclose(V2 @ V2.conj().T, np.eye(n), atol=1e-8)
    assert np.allclose(V2 @ C2 @ V2.T, M, atol=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.05, max_value=1.0), st.sampled_from([1, -1]), st.integers(1, 4))
def test_cycle_solutions_verify(a, sgn, n):
    g, w, dp = catalog("A_cycle", n=n, q=sgn * a)
    rep = verify_solution(build_solution(g, w, dp), dp)
    assert rep.passed and rep.residual < 1e-10
