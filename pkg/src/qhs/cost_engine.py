"""Fair and balanced T-costs: verification, the involution search, spectral norm,
Perron costs, a feasibility solver and shape predicates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx
import numpy as np

from .graph_model import Cost, DeformationParameter, Edge, OrientedGraph, is_connected

Involution = Dict[str, str]

DEFAULT_TOL = 1e-9
SOLVER_TOL = 1e-7


def source_cost(g: OrientedGraph, w: Mapping[str, float], v: str) -> float:
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    return math.fsum(w[e.id] for e in g.out_edges(v))


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


def find_involution(g: OrientedGraph, w: Mapping[str, float], require_loop_free: bool,
                    tol: float = DEFAULT_TOL) -> Optional[Involution]:
    """Pair every edge v->w with an edge w->v so that W(e) W(e') = 1 within tol.

    Loops may be fixed points only when require_loop_free is false, and then only
    when their weight is 1.
    """
    classes = g.parallel_classes()
    pairing: Involution = {}
    done = set()
    for (v, u), es in sorted(classes.items()):
        if (v, u) in done:
            continue
        done.add((v, u))
        if v == u:
            part = _match_loops(es, w, require_loop_free, tol)
        else:
            done.add((u, v))
            part = _match_opposite(es, classes.get((u, v), []), w, tol)
        if part is None:
            return None
        pairing.update(part)
    return pairing


def _match_opposite(a: List[Edge], b: List[Edge], w, tol) -> Optional[Involution]:
    if len(a) != len(b):
        return None
    G = nx.Graph()
    left = [("L", e.id) for e in a]
    right = [("R", f.id) for f in b]
    G.add_nodes_from(left, bipartite=0)
    G.add_nodes_from(right, bipartite=1)
    for e in a:
        for f in b:
            if _close(w[e.id] * w[f.id], 1.0, tol):
                G.add_edge(("L", e.id), ("R", f.id))
    match = nx.bipartite.hopcroft_karp_matching(G, top_nodes=left)
    out = {}
    for node in left:
        if node not in match:
            return None
        out[node[1]] = match[node][1]
        out[match[node][1]] = node[1]
    return out


def _match_loops(loops: List[Edge], w, loop_free: bool, tol) -> Optional[Involution]:
    G = nx.Graph()
    ids = [e.id for e in loops]
    G.add_nodes_from(ids)
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if _close(w[a] * w[b], 1.0, tol):
                G.add_edge(a, b)
        if not loop_free and _close(w[a] * w[a], 1.0, tol):
            G.add_edge(a, ("fix", a))
    # prefer genuine pairs over fixed points
    for a, b in G.edges:
        G[a][b]["weight"] = 1 if isinstance(b, tuple) or isinstance(a, tuple) else 2
    match = nx.max_weight_matching(G, maxcardinality=True)
    out = {}
    for a, b in match:
        if isinstance(a, tuple):
            a, b = b, a
        if isinstance(b, tuple):
            out[a] = a
        else:
            out[a] = b
            out[b] = a
    if set(out) != set(ids):
        return None
    return out


@dataclass
class FairnessReport:
    verdict: str
    reasons: List[str]
    source_costs: Dict[str, float]
    involution: Optional[Involution] = None
    loop_parity_ok: bool = True
    residual: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "reasons": list(self.reasons), "source_costs": dict(self.source_costs)}
        if self.involution is not None:
            d["involution"] = dict(self.involution)
        return d


def verify_fair_balanced(g: OrientedGraph, w: Mapping[str, float], dp: DeformationParameter,
                         tol: float = DEFAULT_TOL, require_connected: bool = False) -> FairnessReport:
    reasons = []
    costs = {v: source_cost(g, w, v) for v in g.vertices}
    residual = 0.0
    for v in g.interior:
        r = abs(costs[v] - dp.abs_T)
        residual = max(residual, r)
        if r > tol:
            reasons.append(f"source_cost:{v}")
    parity = True
    if dp.T > 0:
        for v in g.interior:
            if len(g.loops(v)) % 2:
                parity = False
                reasons.append(f"loop_parity:{v}")
    inv = find_involution(g, w, require_loop_free=dp.T > 0, tol=tol)
    if inv is None:
        reasons.append("no_involution")
    if require_connected and not is_connected(g):
        reasons.append("disconnected")
    return FairnessReport("fail" if reasons else "pass", reasons, costs, inv, parity, residual)


def adjacency(g: OrientedGraph) -> np.ndarray:
    idx = {v: i for i, v in enumerate(g.vertices)}
    A = np.zeros((len(g.vertices), len(g.vertices)), dtype=np.int64)
    for e in g.edges:
        A[idx[e.src], idx[e.dst]] += 1
    return A


def is_symmetric(g: OrientedGraph) -> bool:
    A = adjacency(g)
    return bool((A == A.T).all())


def _power_iteration(A: np.ndarray, tol: float, max_iter: int = 100_000) -> Tuple[float, np.ndarray]:
    """Perron root and vector of a symmetric nonnegative matrix.

    Iterates A + I from the all-ones vector (the shift separates the Perron root
    from -rho on bipartite graphs).  Stops once the eigen-residual of the
    Rayleigh quotient is below tol, which bounds the eigenvalue error by tol.
    """
    n = A.shape[0]
    if n == 0:
        return 0.0, np.zeros(0)
    B = A.astype(float) + np.eye(n)
    x = np.ones(n) / math.sqrt(n)
    lam = 0.0
    for _ in range(max_iter):
        y = B @ x
        y /= np.linalg.norm(y)
        lam = float(y @ (A @ y))
        res = np.linalg.norm(A @ y - lam * y)
        x = y
        if res <= tol:
            break
    return lam, x


def graph_norm(g: OrientedGraph, tol: float = DEFAULT_TOL) -> float:
    A = adjacency(g)
    if not (A == A.T).all():
        raise ValueError("graph_norm needs a symmetric graph")
    lam, _ = _power_iteration(A, tol)
    return lam


def perron_cost(g: OrientedGraph, T: float, tol: float = DEFAULT_TOL) -> Optional[Cost]:
    """W(e) = c_t(e) / c_s(e) from the Perron vector, when |T| is the graph norm."""
    if not is_connected(g):
        raise ValueError("perron_cost needs a connected graph")
    A = adjacency(g)
    if not (A == A.T).all():
        raise ValueError("perron_cost needs a symmetric graph")
    lam, c = _power_iteration(A, min(tol, 1e-13) * 1e-1)
    if abs(abs(T) - lam) > tol:
        return None
    c = np.abs(c)
    c = c / c.min()
    idx = {v: i for i, v in enumerate(g.vertices)}
    return {e.id: float(c[idx[e.dst]] / c[idx[e.src]]) for e in g.edges}


def random_walk(g: OrientedGraph, w: Mapping[str, float], dp: DeformationParameter,
                tol: float = DEFAULT_TOL) -> Dict[str, float]:
    rep = verify_fair_balanced(g, w, dp, tol)
    if not rep.passed:
        raise ValueError(f"cost is not fair and balanced: {rep.reasons}")
    return {e.id: w[e.id] / dp.abs_T for e in g.edges}


# ---------------------------------------------------------------- solver


@dataclass
class SolveResult:
    feasible: bool
    solutions: List[Tuple[Cost, Involution]] = field(default_factory=list)
    family: bool = False
    reason: str = ""

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "family": self.family,
            "reason": self.reason,
            "solutions": [{"cost": dict(c), "involution": dict(i)} for c, i in self.solutions],
        }


def involution_structures(g: OrientedGraph, positive_T: bool):
    """Admissible involutions up to relabelling of parallel edges.

    Opposite parallel classes are paired in edge-id order; loops at a vertex are
    paired consecutively, keeping the last f loops fixed.  Only the fixed count f
    per vertex matters for the weights, so the enumeration runs over those counts
    in lexicographic order.  Yields nothing if no involution exists.
    """
    classes = g.parallel_classes()
    base: Involution = {}
    for (v, u), es in classes.items():
        if v == u:
            continue
        back = classes.get((u, v), [])
        if len(back) != len(es):
            return
        for e, f in zip(es, back):
            base[e.id] = f.id
    loop_sets = [(v, [e.id for e in g.loops(v)]) for v in g.vertices]
    loop_sets = [(v, ids) for v, ids in loop_sets if ids]
    options = []
    for v, ids in loop_sets:
        n = len(ids)
        if positive_T:
            if n % 2:
                return
            options.append([0])
        else:
            options.append(list(range(n % 2, n + 1, 2)))
    for fixed in product(*options):
        inv = dict(base)
        for (v, ids), f in zip(loop_sets, fixed):
            paired = ids[: len(ids) - f]
            for a, b in zip(paired[0::2], paired[1::2]):
                inv[a] = b
                inv[b] = a
            for a in ids[len(ids) - f:]:
                inv[a] = a
        yield inv


def _branch_system(g: OrientedGraph, inv: Involution):
    """Free variables (one per non-trivial pair) and the signed incidence of each
    interior vertex equation on them."""
    reps = sorted({min(a, b) for a, b in inv.items() if a != b})
    var = {r: i for i, r in enumerate(reps)}
    sign: Dict[str, Tuple[int, int]] = {}
    for a, b in inv.items():
        if a == b:
            sign[a] = (-1, 0)
        elif a == min(a, b):
            sign[a] = (var[a], 1)
        else:
            sign[a] = (var[b], -1)
    rows = []
    for v in g.interior:
        rows.append([sign[e.id] for e in g.out_edges(v)])
    return reps, sign, rows


def _newton(rows, nvar, target, y0, tol, max_iter=200, polish_iter=2000):
    """Damped Gauss-Newton in log coordinates.

    The iterate and the residual are kept in extended precision: at a double root
    the weights are only sqrt(residual) accurate, so the residual floor matters.
    Steps are computed in double precision.
    """
    ext = np.longdouble
    tgt = ext(target)

    def residual(y):
        up, down = np.exp(y), np.exp(-y)
        r = np.empty(len(rows), dtype=ext)
        for k, terms in enumerate(rows):
            s = -tgt
            for i, sg in terms:
                s += 1 if i < 0 else (up[i] if sg > 0 else down[i])
            r[k] = s
        return r

    def jac(y):
        up, down = np.exp(y.astype(float)), np.exp(-y.astype(float))
        J = np.zeros((len(rows), nvar))
        for k, terms in enumerate(rows):
            for i, sg in terms:
                if i >= 0:
                    J[k, i] += up[i] if sg > 0 else -down[i]
        return J

    polish = min(tol, 64 * float(np.finfo(ext).eps) * max(1.0, target))
    # convergence is only linear at a double root, so a point within tol gets extra iterations
    y = np.array(y0, dtype=ext)
    r = residual(y)
    it = 0
    while it < max_iter or (it < max_iter + polish_iter and np.abs(r).max(initial=0.0) <= tol):
        it += 1
        if np.abs(r).max(initial=0.0) <= polish:
            break
        if nvar == 0:
            break
        J = jac(y)
        step = np.linalg.lstsq(J, -r.astype(float), rcond=None)[0]
        f0 = r @ r
        t = 1.0
        while t > 1e-10:
            y1 = y + ext(t) * step.astype(ext)
            if np.abs(y1).max() < 60:
                r1 = residual(y1)
                if r1 @ r1 < f0:
                    break
            t *= 0.5
        else:
            break
        y, r = y1, r1
    return y.astype(float), r.astype(float), (jac(y) if nvar else np.zeros((len(rows), 0)))


def solve_cost(g: OrientedGraph, dp: DeformationParameter, max_solutions: int = 4,
               tol: float = SOLVER_TOL, n_starts: int = 12) -> SolveResult:
    """Search fair and balanced costs branch by branch over admissible involutions.

    Each branch substitutes W(e') = 1/W(e) and solves the interior source-cost
    equations by damped Gauss-Newton in log coordinates from deterministic starts.
    """
    positive = dp.T > 0
    structures = list(involution_structures(g, positive))
    if not structures:
        return SolveResult(False, reason="no admissible involution")
    rng = np.random.default_rng(0)
    span = math.log(dp.abs_T)
    found: List[Tuple[Cost, Involution]] = []
    vectors: List[np.ndarray] = []
    deficient = False
    ids = [e.id for e in g.edges]
    for inv in structures:
        reps, sign, rows = _branch_system(g, inv)
        nvar = len(reps)
        starts = [np.zeros(nvar)] + [rng.uniform(-span, span, nvar) for _ in range(n_starts - 1)]
        for y0 in starts:
            y, r, J = _newton(rows, nvar, dp.abs_T, y0, tol)
            if np.abs(r).max(initial=0.0) > tol:
                continue
            if nvar and np.linalg.matrix_rank(J, tol=1e-8 * max(1.0, np.abs(J).max())) < nvar:
                deficient = True
            cost = {}
            for eid in ids:
                i, sg = sign[eid]
                cost[eid] = 1.0 if i < 0 else math.exp(sg * y[i])
            vec = np.array([cost[e] for e in ids])
            if any(np.abs(vec - u).max() <= 10 * tol for u in vectors):
                continue
            vectors.append(vec)
            found.append((cost, dict(inv)))
            if len(found) >= max_solutions:
                break
        if len(found) >= max_solutions:
            break
    if not found:
        return SolveResult(False, reason="no branch converged")
    # a singular Jacobian alone also occurs at the rigid point |T| = norm, so a
    # family needs a second distinct solution as well
    family = deficient and len(found) >= 2
    return SolveResult(True, found, family)


# ---------------------------------------------------------------- shape predicates

ADE_TAGS = (
    "A_cycle", "D_affine", "E6_affine", "E7_affine", "E8_affine", "A_inf_inf", "D_inf_star",
    "A_inf", "A_prime", "D_prime", "A_inf_prime", "point_double_loop", "none",
)

INFINITE_NORM_TWO = ("A_inf_inf", "D_inf_star", "A_inf", "A_inf_prime")


def _undirected(g: OrientedGraph):
    """Loop counts and simple-neighbour multiplicities of a symmetric graph."""
    A = adjacency(g)
    idx = {v: i for i, v in enumerate(g.vertices)}
    loops = {v: int(A[idx[v], idx[v]]) for v in g.vertices}
    nb = {v: {u: int(A[idx[v], idx[u]]) for u in g.vertices if u != v and A[idx[v], idx[u]]} for v in g.vertices}
    return loops, nb


def _is_tree(nb) -> bool:
    n = len(nb)
    m = sum(len(x) for x in nb.values()) // 2
    return m == n - 1 and all(c == 1 for x in nb.values() for c in x.values())


def _arm_lengths(nb, center) -> List[int]:
    """Lengths of the paths hanging off a branch vertex in a tree."""
    arms = []
    for start in nb[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [u for u in nb[cur] if u != prev]
            if len(nxt) != 1:
                if nxt:
                    return []
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def classify_ade(g: OrientedGraph) -> str:
    """Match the symmetric graph against the named norm-2 shapes.

    Windows match when their flagged boundary vertices sit where the infinite
    graph continues.
    """
    if not is_symmetric(g) or not g.vertices or not is_connected(g):
        return "none"
    loops, nb = _undirected(g)
    n = len(g.vertices)
    if n == 1:
        return "point_double_loop" if loops[g.vertices[0]] == 2 and not g.boundary else "none"
    if any(c > 1 for x in nb.values() for c in x.values()):
        # only the two-vertex cycle has a doubled edge
        if n == 2 and not g.boundary and all(loops[v] == 0 for v in g.vertices):
            u, v = g.vertices
            return "A_cycle" if nb[u].get(v) == 2 else "none"
        return "none"
    deg = {v: len(nb[v]) for v in g.vertices}
    loop_vs = [v for v in g.vertices if loops[v]]
    if any(loops[v] > 1 for v in loop_vs):
        return "none"
    tree = _is_tree(nb)
    b = g.boundary
    if not b:
        if not loop_vs and all(d == 2 for d in deg.values()) and n >= 3:
            return "A_cycle"
        if not tree:
            return "none"
        if not loop_vs:
            branch = [v for v in g.vertices if deg[v] >= 3]
            if len(branch) == 1 and deg[branch[0]] == 4 and n == 5:
                return "D_affine"
            if len(branch) == 1 and deg[branch[0]] == 3:
                arms = _arm_lengths(nb, branch[0])
                return {(2, 2, 2): "E6_affine", (1, 3, 3): "E7_affine", (1, 2, 5): "E8_affine"}.get(tuple(arms), "none")
            if len(branch) == 2 and all(deg[v] == 3 for v in branch):
                if all(sum(1 for u in nb[v] if deg[u] == 1) == 2 for v in branch):
                    return "D_affine"
            return "none"
        ends = [v for v in g.vertices if deg[v] <= 1]
        if len(loop_vs) == 2 and all(d <= 2 for d in deg.values()) and set(loop_vs) == set(ends):
            return "A_prime"
        if len(loop_vs) == 1:
            lv = loop_vs[0]
            branch = [v for v in g.vertices if deg[v] >= 3]
            if n == 3 and deg[lv] == 2:
                return "D_prime"
            if len(branch) == 1 and deg[branch[0]] == 3 and deg[lv] == 1:
                arms = _arm_lengths(nb, branch[0])
                if arms[:2] == [1, 1] and lv not in nb[branch[0]] or arms == [1, 1, 1]:
                    return "D_prime"
        return "none"
    # windows of infinite graphs: boundary vertices are path ends
    if not tree or any(deg[v] != 1 for v in b):
        return "none"
    branch = [v for v in g.vertices if deg[v] >= 3]
    ends = [v for v in g.vertices if deg[v] == 1]
    free_ends = [v for v in ends if v not in b]
    if not branch:
        if len(b) == 2 and not loop_vs:
            return "A_inf_inf"
        if len(b) == 1 and len(free_ends) == 1:
            if not loop_vs:
                return "A_inf"
            if loop_vs == free_ends:
                return "A_inf_prime"
        return "none"
    if len(branch) == 1 and deg[branch[0]] == 3 and len(b) == 1 and not loop_vs:
        leaves = [u for u in nb[branch[0]] if deg[u] == 1 and u not in b]
        if len(leaves) == 2:
            return "D_inf_star"
    return "none"


def is_coideal_type(g: OrientedGraph, tol: float = DEFAULT_TOL) -> bool:
    """True iff the graph norm equals 2.

    For a window the norm is that of the infinite graph; it is known for the named
    infinite families and otherwise decided only when the window already exceeds 2.
    """
    if not is_connected(g):
        raise ValueError("is_coideal_type needs a connected graph")
    if not is_symmetric(g):
        raise ValueError("is_coideal_type needs a symmetric graph")
    if not g.boundary:
        return abs(graph_norm(g, tol) - 2) <= tol
    if classify_ade(g) in INFINITE_NORM_TWO:
        return True
    if graph_norm(g, tol) > 2 + tol:
        return False
    raise ValueError("the norm of the infinite graph cannot be decided from this window")


def spectral_gap_flag(g: OrientedGraph, t0: float, tol: float = DEFAULT_TOL) -> bool:
    """Whether the graph norm lies in the open gap (2, t0).

    The gap constant is not known numerically; callers supply their own t0.
    """
    nrm = graph_norm(g, tol)
    return 2 + tol < nrm < t0
