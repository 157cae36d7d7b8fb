import pytest

from oracles import grid_feasible
from small_graphs import small_graphs
from qhs.cost_engine import solve_cost, verify_fair_balanced
from qhs.graph_model import DeformationParameter

GRAPHS = small_graphs()
QS = [0.5, -0.5, 1.0, -1.0, 0.3, -0.7]


def label(g):
    return ",".join(f"{e.src}{e.dst}" for e in g.edges) or "empty"


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("g", GRAPHS, ids=label)
def test_solver_matches_grid(g, q):
    dp = DeformationParameter(q)
    res = solve_cost(g, dp)
    assert res.feasible == grid_feasible(g, dp.abs_T, dp.T > 0)
    for w, _ in res.solutions:
        assert verify_fair_balanced(g, w, dp).passed


def test_corpus_is_mixed():
    feasible = sum(solve_cost(g, DeformationParameter(q)).feasible for g in GRAPHS for q in QS)
    assert 0 < feasible < len(GRAPHS) * len(QS)
