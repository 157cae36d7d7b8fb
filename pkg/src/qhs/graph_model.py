"""Oriented weighted multigraphs, the named example catalog, n-step graphs and I/O.

Infinite families are represented by finite windows.  Vertices on the edge of a
window are flagged as boundary and every local check skips them.
"""
from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

Cost = Dict[str, float]


def edge_id(src: str, dst: str, k: int) -> str:
    return f"{src}→{dst}#{k}"


class Edge(NamedTuple):
    id: str
    src: str
    dst: str

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class DeformationParameter:
    """The deformation parameter q with 0 < |q| <= 1."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not math.isfinite(q) or q == 0 or abs(q) > 1 + 1e-15:
            raise ValueError(f"q must satisfy 0 < |q| <= 1, got {self.q!r}")
        object.__setattr__(self, "q", q)

    @classmethod
    def from_T(cls, T: float, tol: float = 1e-12) -> "DeformationParameter":
        """Recover q from T = q + 1/q (|T| >= 2)."""
        a = abs(T)
        if a < 2 - tol:
            raise ValueError(f"|T| must be at least 2, got {T!r}")
        a = max(a, 2.0)
        r = (a - math.sqrt(a * a - 4)) / 2
        return cls(math.copysign(r, T))

    @property
    def sign(self) -> int:
        return 1 if self.q > 0 else -1

    @property
    def abs_q(self) -> float:
        return abs(self.q)

    @property
    def T(self) -> float:
        return self.q + 1 / self.q

    @property
    def abs_T(self) -> float:
        return abs(self.q) + 1 / abs(self.q)

    def qint(self, n: int) -> float:
        """[n]_q = (q^-n - q^n) / (q^-1 - q), with the limit n q^(n-1) at |q| = 1."""
        q = self.q
        if abs(abs(q) - 1) < 1e-15:
            return n * q ** (n - 1)
        return (q ** -n - q ** n) / (q ** -1 - q)

    def aqint(self, n: int) -> float:
        return abs(self.qint(n))


@dataclass(frozen=True)
class OrientedGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    boundary: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        edges = tuple(Edge(str(e[0]), str(e[1]), str(e[2])) for e in self.edges)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "boundary", frozenset(str(b) for b in self.boundary))
        vset = set(verts)
        if len(vset) != len(verts):
            raise ValueError("duplicate vertex id")
        seen = set()
        for e in edges:
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            if e.src not in vset:
                raise ValueError(f"edge {e.id!r}: src {e.src!r} is not a vertex")
            if e.dst not in vset:
                raise ValueError(f"edge {e.id!r}: dst {e.dst!r} is not a vertex")
        for b in self.boundary:
            if b not in vset:
                raise ValueError(f"boundary vertex {b!r} is not a vertex")

    @property
    def edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @property
    def interior(self) -> List[str]:
        return [v for v in self.vertices if v not in self.boundary]

    def out_edges(self, v: str) -> List[Edge]:
        return [e for e in self.edges if e.src == v]

    def edges_between(self, v: str, w: str) -> List[Edge]:
        return sorted((e for e in self.edges if e.src == v and e.dst == w), key=lambda e: e.id)

    def parallel_classes(self) -> Dict[Tuple[str, str], List[Edge]]:
        out: Dict[Tuple[str, str], List[Edge]] = defaultdict(list)
        for e in sorted(self.edges, key=lambda e: e.id):
            out[(e.src, e.dst)].append(e)
        return dict(out)

    def neighbors(self, v: str) -> List[str]:
        nb = {e.dst for e in self.edges if e.src == v} | {e.src for e in self.edges if e.dst == v}
        nb.discard(v)
        return sorted(nb, key=self.vertices.index)

    def loops(self, v: str) -> List[Edge]:
        return self.edges_between(v, v)


def make_graph(vertices: Iterable, arrows: Iterable[Tuple], boundary: Iterable = ()) -> Tuple[OrientedGraph, Optional[Cost]]:
    """Build a graph from (src, dst[, weight]) triples, numbering parallel edges.

    Returns the graph and, when every arrow carries a weight, the cost.
    """
    counts: Dict[Tuple[str, str], int] = defaultdict(int)
    edges = []
    cost: Cost = {}
    weighted = True
    for a in arrows:
        s, d = str(a[0]), str(a[1])
        eid = edge_id(s, d, counts[(s, d)])
        counts[(s, d)] += 1
        edges.append(Edge(eid, s, d))
        if len(a) > 2 and a[2] is not None:
            cost[eid] = float(a[2])
        else:
            weighted = False
    g = OrientedGraph(tuple(str(v) for v in vertices), tuple(edges), frozenset(str(b) for b in boundary))
    return g, (check_cost(g, cost) if weighted else None)


def check_cost(g: OrientedGraph, w: Mapping[str, float]) -> Cost:
    ids = {e.id for e in g.edges}
    if set(w) != ids:
        missing = sorted(ids - set(w))
        extra = sorted(set(w) - ids)
        raise ValueError(f"cost keys do not match edges (missing {missing}, unknown {extra})")
    out = {}
    for k, x in w.items():
        x = float(x)
        if not (math.isfinite(x) and x > 0):
            raise ValueError(f"weight of {k!r} must be positive and finite, got {x!r}")
        out[k] = x
    return out


# ---------------------------------------------------------------- I/O


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(f"schema violation: {msg}")


def load_document(text: str) -> dict:
    """Parse a graph document; returns dict with graph, cost, q and T."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"parse error: {exc}") from exc
    _require(isinstance(doc, dict), "top level must be an object")
    _require(isinstance(doc.get("vertices"), list), "'vertices' must be a list")
    _require(isinstance(doc.get("edges"), list), "'edges' must be a list")
    for v in doc["vertices"]:
        _require(isinstance(v, str), f"'vertices' entries must be strings, got {v!r}")
    edges = []
    weights = {}
    for i, e in enumerate(doc["edges"]):
        _require(isinstance(e, dict), f"'edges[{i}]' must be an object")
        for key in ("id", "src", "dst"):
            _require(isinstance(e.get(key), str), f"'edges[{i}].{key}' must be a string")
        edges.append(Edge(e["id"], e["src"], e["dst"]))
        if "weight" in e:
            wt = e["weight"]
            _require(isinstance(wt, (int, float)) and not isinstance(wt, bool), f"'edges[{i}].weight' must be a number")
            weights[e["id"]] = wt
    boundary = doc.get("boundary", [])
    _require(isinstance(boundary, list), "'boundary' must be a list")
    for key in ("q", "T"):
        if key in doc and doc[key] is not None:
            _require(isinstance(doc[key], (int, float)), f"'{key}' must be a number")
    try:
        g = OrientedGraph(tuple(doc["vertices"]), tuple(edges), frozenset(boundary))
    except ValueError as exc:
        raise ValueError(f"schema violation: {exc}") from exc
    cost = None
    if weights:
        _require(len(weights) == len(edges), "either every edge or no edge carries a weight")
        try:
            cost = check_cost(g, weights)
        except ValueError as exc:
            raise ValueError(f"schema violation: 'weight': {exc}") from exc
    return {"graph": g, "cost": cost, "q": doc.get("q"), "T": doc.get("T")}


def load_graph(text: str) -> Tuple[OrientedGraph, Optional[Cost]]:
    doc = load_document(text)
    return doc["graph"], doc["cost"]


def graph_to_dict(g: OrientedGraph, w: Optional[Mapping[str, float]] = None,
                  q: Optional[float] = None, T: Optional[float] = None) -> dict:
    edges = []
    for e in g.edges:
        item = {"id": e.id, "src": e.src, "dst": e.dst}
        if w is not None:
            item["weight"] = float(w[e.id])
        edges.append(item)
    doc = {"vertices": list(g.vertices), "edges": edges}
    if g.boundary:
        doc["boundary"] = [v for v in g.vertices if v in g.boundary]
    if q is not None:
        doc["q"] = q
    if T is not None:
        doc["T"] = T
    return doc


def save_graph(g: OrientedGraph, w: Optional[Mapping[str, float]] = None,
               q: Optional[float] = None, T: Optional[float] = None) -> str:
    # repr-precision floats so that the roundtrip is exact
    return json.dumps(graph_to_dict(g, w, q, T), ensure_ascii=False, sort_keys=True)


def to_dot(g: OrientedGraph, w: Optional[Mapping[str, float]] = None) -> str:
    if not g.vertices:
        return "digraph { }\n"
    lines = ["digraph {"]
    for v in g.vertices:
        attr = ' [style="dashed"]' if v in g.boundary else ""
        lines.append(f'  "{_dot_escape(v)}"{attr};')
    for e in g.edges:
        label = f' [label="{float(w[e.id]):.6g}"]' if w is not None else ""
        lines.append(f'  "{_dot_escape(e.src)}" -> "{_dot_escape(e.dst)}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


# ---------------------------------------------------------------- structure


def is_connected(g: OrientedGraph) -> bool:
    if not g.vertices:
        return True
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    adj = defaultdict(set)
    for e in g.edges:
        adj[e.src].add(e.dst)
        adj[e.dst].add(e.src)
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(g.vertices)


def degree_bound_check(g: OrientedGraph, T: float) -> Tuple[int, bool]:
    deg = max((len(g.out_edges(v)) for v in g.vertices), default=0)
    return deg, deg <= T * T


def distance_to(g: OrientedGraph, targets: Iterable[str]) -> Dict[str, float]:
    """Undirected graph distance from every vertex to the target set."""
    adj = defaultdict(set)
    for e in g.edges:
        adj[e.src].add(e.dst)
        adj[e.dst].add(e.src)
    dist = {v: math.inf for v in g.vertices}
    frontier = [t for t in targets]
    for t in frontier:
        dist[t] = 0
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if dist[u] == math.inf:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return dist


def n_step(g: OrientedGraph, w: Mapping[str, float], n: int, T: float) -> Tuple[OrientedGraph, Cost, float]:
    """The graph of length-n paths with multiplied weights, and T' = (-1)^(n+1) T^n.

    A vertex within distance n-1 of the old boundary has truncated path sets, so it
    joins the new boundary.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return g, dict(w), T
    out = defaultdict(list)
    for e in sorted(g.edges, key=lambda e: e.id):
        out[e.src].append(e)
    paths: List[Tuple[Edge, ...]] = []
    for v in g.vertices:
        layer = [(e,) for e in out[v]]
        for _ in range(n - 1):
            layer = [p + (e,) for p in layer for e in out[p[-1].dst]]
        paths.extend(layer)
    arrows = []
    for p in sorted(paths, key=lambda p: (g.vertices.index(p[0].src), tuple(e.id for e in p))):
        weight = 1.0
        for e in p:
            weight *= w[e.id]
        arrows.append((p[0].src, p[-1].dst, weight))
    dist = distance_to(g, g.boundary)
    boundary = {v for v in g.vertices if dist[v] <= n - 1}
    g2, w2 = make_graph(g.vertices, arrows, boundary)
    return g2, (w2 or {}), (-1) ** (n + 1) * T ** n


# ---------------------------------------------------------------- isomorphism


def _to_nx(g: OrientedGraph, w: Mapping[str, float]) -> nx.MultiDiGraph:
    G = nx.MultiDiGraph()
    for v in g.vertices:
        G.add_node(v, boundary=v in g.boundary)
    for e in g.edges:
        G.add_edge(e.src, e.dst, key=e.id, weight=float(w[e.id]))
    return G


def find_isomorphism(g1: OrientedGraph, w1: Mapping[str, float], g2: OrientedGraph,
                     w2: Mapping[str, float], tol: float = 1e-9) -> Optional[Dict[str, str]]:
    """A vertex bijection carrying (g1, w1) to (g2, w2), weights compared within tol."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    a = sorted(w1.values())
    b = sorted(w2.values())
    if any(abs(x - y) > tol * max(1.0, abs(x)) for x, y in zip(a, b)):
        return None

    def edge_match(d1, d2):
        x = sorted(d["weight"] for d in d1.values())
        y = sorted(d["weight"] for d in d2.values())
        return len(x) == len(y) and all(abs(s - t) <= tol * max(1.0, abs(s)) for s, t in zip(x, y))

    def node_match(n1, n2):
        return n1["boundary"] == n2["boundary"]

    gm = isomorphism.MultiDiGraphMatcher(_to_nx(g1, w1), _to_nx(g2, w2), node_match=node_match, edge_match=edge_match)
    for mapping in gm.isomorphisms_iter():
        return dict(mapping)
    return None


def relabel(g: OrientedGraph, w: Optional[Mapping[str, float]], mapping: Mapping[str, str]):
    """Rename vertices; edge ids are regenerated in the new names."""
    arrows = []
    for e in g.edges:
        arrows.append((mapping.get(e.src, e.src), mapping.get(e.dst, e.dst), None if w is None else w[e.id]))
    verts = [mapping.get(v, v) for v in g.vertices]
    return make_graph(verts, arrows, [mapping.get(b, b) for b in g.boundary])


# ---------------------------------------------------------------- catalog

CATALOG_NAMES = (
    "A_inf_inf", "D_inf_star", "A_cycle", "E6_affine", "E7_affine", "E8_affine",
    "D_affine", "A_prime", "D_prime", "A_inf_prime", "point_loops",
)

INFINITE_FAMILIES = ("A_inf_inf", "D_inf_star", "A_inf_prime")

# null-root coefficients of the affine E diagrams: arms listed from the center outwards
_E_ARMS = {
    "E6_affine": (3, ((2, 1), (2, 1), (2, 1))),
    "E7_affine": (4, ((3, 2, 1), (3, 2, 1), (2,))),
    "E8_affine": (6, ((5, 4, 3, 2, 1), (4, 2), (3,))),
}


def podles_weight_up(q: float, x: float, m: int) -> float:
    """W_{q,x}(m -> m+1); the reverse edge carries the reciprocal.

    Powers are taken of |q|: for integer exponents |q|^k = |q^k|, and for real x
    with q < 0 it keeps the cost real and fair.
    """
    a = abs(q)
    if x == math.inf:
        return 1 / a
    if x == -math.inf:
        return a
    if a == 1:
        return 1.0
    c = lambda k: a ** (x + k) + a ** (-(x + k))
    return c(m + 1) / c(m)


def t_bracket(n: int, q: float) -> float:
    """|[n]_t| at t = i |q|^(1/2), evaluated in complex arithmetic."""
    t = 1j * math.sqrt(abs(q))
    return abs((t ** -n - t ** n) / (t ** -1 - t))


def _shape_and_weights(name: str, p: dict, dp: Optional[DeformationParameter]):
    """Return (vertices, arrows with weight or None, boundary)."""
    need_q = dp is not None
    if name == "A_inf_inf":
        M = _int_param(p, "window", 3, lo=1)
        x = p.get("x", 0.0)
        verts = [str(m) for m in range(-M, M + 1)]
        arrows = []
        for m in range(-M, M):
            up = podles_weight_up(dp.q, x, m) if need_q else None
            arrows.append((m, m + 1, up))
            arrows.append((m + 1, m, None if up is None else 1 / up))
        return verts, arrows, [str(-M), str(M)]
    if name == "D_inf_star":
        M = _int_param(p, "window", 3, lo=2)
        verts = ["*", "*~"] + [str(m) for m in range(1, M + 1)]
        a2 = dp.aqint(2) if need_q else None
        arrows = []
        for end in ("*", "*~"):
            arrows.append((end, 1, a2))
            arrows.append((1, end, None if a2 is None else 1 / a2))
        for m in range(1, M):
            up = podles_weight_up(dp.q, 0.0, m) if need_q else None
            arrows.append((m, m + 1, up))
            arrows.append((m + 1, m, None if up is None else 1 / up))
        return verts, arrows, [str(M)]
    if name == "A_cycle":
        n = _int_param(p, "n", 1, lo=1)
        a = dp.abs_q if need_q else None
        verts = [str(k) for k in range(n + 1)]
        arrows = []
        for k in range(n + 1):
            nxt = (k + 1) % (n + 1)
            arrows.append((k, nxt, a))
            arrows.append((nxt, k, None if a is None else 1 / a))
        return verts, arrows, []
    if name in _E_ARMS:
        if need_q and abs(dp.abs_q - 1) > 1e-12:
            raise ValueError(f"{name} carries a fair and balanced cost only at |q| = 1")
        center, arms = _E_ARMS[name]
        verts = ["c"]
        mark = {"c": center}
        arrows = []
        for i, arm in enumerate(arms, 1):
            prev = "c"
            for j, coeff in enumerate(arm, 1):
                v = f"a{i}.{j}"
                verts.append(v)
                mark[v] = coeff
                arrows.append((prev, v, Fraction(coeff, mark[prev]) if need_q else None))
                arrows.append((v, prev, Fraction(mark[prev], coeff) if need_q else None))
                prev = v
        return verts, [(s, d, None if x is None else float(x)) for s, d, x in arrows], []
    if name == "D_affine":
        n = _int_param(p, "n", 4, lo=4)
        if need_q and abs(dp.abs_q - 1) > 1e-12:
            raise ValueError("D_affine carries a fair and balanced cost only at |q| = 1")
        # n + 1 vertices: leaves l1, l2 on the spine start, r1, r2 on the spine end
        spine = [f"s{k}" for k in range(1, n - 2)]
        verts = ["l1", "l2"] + spine + ["r1", "r2"]
        mark = {v: 2 for v in spine}
        mark.update({"l1": 1, "l2": 1, "r1": 1, "r2": 1})
        pairs = [("l1", spine[0]), ("l2", spine[0])]
        pairs += [(spine[k], spine[k + 1]) for k in range(len(spine) - 1)]
        pairs += [(spine[-1], "r1"), (spine[-1], "r2")]
        arrows = []
        for s, d in pairs:
            arrows.append((s, d, mark[d] / mark[s] if need_q else None))
            arrows.append((d, s, mark[s] / mark[d] if need_q else None))
        return verts, arrows, []
    if name == "A_prime":
        m = _int_param(p, "n", 2, lo=2)
        _require_q_minus_one(name, dp)
        verts = [str(k) for k in range(m)]
        one = 1.0 if need_q else None
        arrows = [(0, 0, one)]
        for k in range(m - 1):
            arrows.append((k, k + 1, one))
            arrows.append((k + 1, k, one))
        arrows.append((m - 1, m - 1, one))
        return verts, arrows, []
    if name == "D_prime":
        m = _int_param(p, "n", 3, lo=3)
        _require_q_minus_one(name, dp)
        path = [str(k) for k in range(1, m - 1)]
        verts = ["+", "-"] + path
        one = 1.0 if need_q else None
        arrows = []
        for end in ("+", "-"):
            arrows.append((end, path[0], 2.0 if need_q else None))
            arrows.append((path[0], end, 0.5 if need_q else None))
        for k in range(len(path) - 1):
            arrows.append((path[k], path[k + 1], one))
            arrows.append((path[k + 1], path[k], one))
        arrows.append((path[-1], path[-1], one))
        return verts, arrows, []
    if name == "A_inf_prime":
        M = _int_param(p, "window", 3, lo=1)
        if need_q and dp.q > 0:
            raise ValueError("A_inf_prime needs q < 0")
        verts = [str(m) for m in range(M + 1)]
        arrows = [(0, 0, 1.0 if need_q else None)]
        for m in range(M):
            up = t_bracket(2 * m + 3, dp.q) / t_bracket(2 * m + 1, dp.q) if need_q else None
            arrows.append((m, m + 1, up))
            arrows.append((m + 1, m, None if up is None else 1 / up))
        return verts, arrows, [str(M)]
    if name == "point_loops":
        n = _int_param(p, "loops", 2, lo=0)
        if need_q:
            if abs(dp.abs_T - n) > 1e-9:
                raise ValueError(f"point_loops({n}) with unit weights needs |T| = {n}, got {dp.abs_T}")
            if dp.q > 0 and n % 2:
                raise ValueError("an odd number of loops needs q < 0")
        return ["0"], [(0, 0, 1.0 if need_q else None) for _ in range(n)], []
    raise ValueError(f"unknown catalog name {name!r}")


def _int_param(p: dict, key: str, default: int, lo: int) -> int:
    val = p.get(key, default)
    if val is None:
        val = default
    if isinstance(val, bool) or int(val) != val:
        raise ValueError(f"parameter {key} must be an integer")
    val = int(val)
    if val < lo:
        raise ValueError(f"parameter {key} must be >= {lo}, got {val}")
    return val


def _require_q_minus_one(name: str, dp: Optional[DeformationParameter]):
    if dp is not None and abs(dp.q + 1) > 1e-12:
        raise ValueError(f"{name} carries its catalog cost only at q = -1")


def default_q(name: str, params: Optional[dict] = None) -> float:
    params = params or {}
    if name in ("A_prime", "D_prime"):
        return -1.0
    if name == "A_inf_prime":
        return -1.0
    if name == "point_loops":
        n = _int_param(params, "loops", 2, lo=2)
        r = (n - math.sqrt(n * n - 4)) / 2
        return r if n % 2 == 0 else -r
    return 1.0


def catalog_shape(name: str, **params) -> OrientedGraph:
    """The bare graph of a catalog entry, without weights."""
    verts, arrows, boundary = _shape_and_weights(name, params, None)
    g, _ = make_graph(verts, [(s, d) for s, d, _ in arrows], boundary)
    return g


def catalog(name: str, **params) -> Tuple[OrientedGraph, Cost, DeformationParameter]:
    """A named example graph with its standard cost.

    params: q (defaults per family), n (size), x (Podles parameter, may be inf),
    window (truncation M), loops (point_loops).
    """
    if name not in CATALOG_NAMES:
        raise ValueError(f"unknown catalog name {name!r}")
    q = params.get("q")
    dp = DeformationParameter(default_q(name, params) if q is None else q)
    verts, arrows, boundary = _shape_and_weights(name, params, dp)
    g, w = make_graph(verts, arrows, boundary)
    return g, w, dp


def catalog_entries(window: int = 4) -> List[Tuple[str, dict]]:
    """A representative list of (name, params) covering every catalog family."""
    return [
        ("A_inf_inf", {"q": 0.5, "x": 0.0, "window": window}),
        ("A_inf_inf", {"q": -0.7, "x": 0.25, "window": window}),
        ("A_inf_inf", {"q": 0.3, "x": math.inf, "window": window}),
        ("A_inf_inf", {"q": -1.0, "window": window}),
        ("D_inf_star", {"q": 0.5, "window": window}),
        ("D_inf_star", {"q": -1.0, "window": window}),
        ("A_cycle", {"n": 1, "q": -0.5}),
        ("A_cycle", {"n": 3, "q": 0.5}),
        ("A_cycle", {"n": 2, "q": -1.0}),
        ("E6_affine", {"q": 1.0}),
        ("E6_affine", {"q": -1.0}),
        ("E7_affine", {"q": 1.0}),
        ("E8_affine", {"q": -1.0}),
        ("D_affine", {"n": 4, "q": 1.0}),
        ("D_affine", {"n": 6, "q": -1.0}),
        ("A_prime", {"n": 2}),
        ("A_prime", {"n": 5}),
        ("D_prime", {"n": 3}),
        ("D_prime", {"n": 5}),
        ("A_inf_prime", {"q": -0.5, "window": window}),
        ("A_inf_prime", {"q": -1.0, "window": window}),
        ("point_loops", {"loops": 2, "q": 1.0}),
        ("point_loops", {"loops": 3}),
        ("point_loops", {"loops": 4}),
    ]
