"""Every connected symmetric multigraph with at most six arrows (up to vertex order),
used by the solver-versus-grid comparisons.

Four vertices already need six arrows for a spanning tree, so only the path and the
star appear there; five or more vertices need at least eight."""
import itertools

from qhs.graph_model import is_connected, make_graph


def small_graphs(max_edges=6):
    out = [make_graph(["a"], [("a", "a")] * n)[0] for n in range(max_edges + 1)]
    for k in range(1, max_edges // 2 + 1):
        for l0 in range(max_edges - 2 * k + 1):
            for l1 in range(l0, max_edges - 2 * k - l0 + 1):
                arrows = [("a", "b")] * k + [("b", "a")] * k + [("a", "a")] * l0 + [("b", "b")] * l1
                out.append(make_graph(["a", "b"], arrows)[0])
    V = ["a", "b", "c"]
    for mult in itertools.product(range(3), repeat=3):
        if 2 * sum(mult) > max_edges:
            continue
        for loops in itertools.product(range(3), repeat=3):
            if 2 * sum(mult) + sum(loops) > max_edges:
                continue
            arrows = []
            for (x, y), m in zip([("a", "b"), ("b", "c"), ("a", "c")], mult):
                arrows += [(x, y), (y, x)] * m
            for v, n in zip(V, loops):
                arrows += [(v, v)] * n
            g = make_graph(V, arrows)[0]
            if is_connected(g):
                out.append(g)
    for tree in ([("a", "b"), ("b", "c"), ("c", "d")], [("a", "b"), ("a", "c"), ("a", "d")]):
        out.append(make_graph(["a", "b", "c", "d"], [p for x, y in tree for p in ((x, y), (y, x))])[0])
    return out
