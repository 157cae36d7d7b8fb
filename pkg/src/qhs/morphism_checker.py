"""Equivariant morphism data between two fundamental solutions.

Notation: X is the solution whose vertices r, s index the columns of the grading
F, and Y the solution whose vertices t, u index its rows ("X into Y").  A block

    psi[t, r]: (+)_s F_ts (x) H^X_sr  ->  (+)_u H^Y_tu (x) F_ur

is a matrix whose columns follow s in X vertex order (F index major) and whose rows
follow u in Y vertex order (H index major).  The compatibility condition at (t, r)
says that for every f in F_tr

    sum_s (psi[u, r] on F_us (x) H_sr)(psi[t, s] on f (x) R^X_rs)  =  R^Y_tu (x) f

landing in H^Y_tu (x) H^Y_us' (x) F_s'r, with zero on every s' != t.
"""
from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .fusion_data import FundamentalSolution, build_solution
from .graph_model import (
    Cost, DeformationParameter, OrientedGraph, catalog, make_graph,
)
from .presentation import f_matrix

Pair = Tuple[str, str]


@dataclass
class MorphismData:
    x: FundamentalSolution
    y: FundamentalSolution
    F: Dict[Pair, int]
    psi: Dict[Pair, np.ndarray]
    x_boundary: frozenset = frozenset()
    y_boundary: frozenset = frozenset()
    name: str = ""

    def f(self, t: str, r: str) -> int:
        return self.F.get((t, r), 0)

    def dom_blocks(self, t: str, r: str) -> List[Tuple[str, int, int, int]]:
        """(s, offset, dim F_ts, dim H^X_sr) for the nonzero domain summands."""
        out, o = [], 0
        for s in self.x.vertices:
            a, b = self.f(t, s), self.x.dim(s, r)
            if a and b:
                out.append((s, o, a, b))
                o += a * b
        return out

    def cod_blocks(self, t: str, r: str) -> List[Tuple[str, int, int, int]]:
        """(u, offset, dim H^Y_tu, dim F_ur) for the nonzero codomain summands."""
        out, o = [], 0
        for u in self.y.vertices:
            a, b = self.y.dim(t, u), self.f(u, r)
            if a and b:
                out.append((u, o, a, b))
                o += a * b
        return out

    def block_shape(self, t: str, r: str) -> Tuple[int, int]:
        cod = sum(a * b for _, _, a, b in self.cod_blocks(t, r))
        dom = sum(a * b for _, _, a, b in self.dom_blocks(t, r))
        return cod, dom

    def check_pairs(self) -> List[Pair]:
        """Pairs whose diagram lies inside both windows."""
        ny = {t: {u for (a, u) in self.y.dims if a == t} for t in self.y.vertices}
        out = []
        for t in self.y.vertices:
            if t in self.y_boundary or ny[t] & self.y_boundary:
                continue
            for r in self.x.vertices:
                if r not in self.x_boundary and self.f(t, r):
                    out.append((t, r))
        return out

    def unitary_pairs(self) -> List[Pair]:
        return [(t, r) for t in self.y.vertices for r in self.x.vertices
                if t not in self.y_boundary and r not in self.x_boundary and any(self.block_shape(t, r))]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "x": self.x.to_dict(),
            "y": self.y.to_dict(),
            "x_boundary": sorted(self.x_boundary),
            "y_boundary": sorted(self.y_boundary),
            "F": [{"t": t, "r": r, "dim": d} for (t, r), d in sorted(self.F.items()) if d],
            "psi": [{"t": t, "r": r, "matrix": [[[complex(z).real, complex(z).imag] for z in row] for row in P]}
                    for (t, r), P in sorted(self.psi.items())],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MorphismData":
        F = {(str(e["t"]), str(e["r"])): int(e["dim"]) for e in d["F"]}
        psi = {}
        for e in d["psi"]:
            psi[(str(e["t"]), str(e["r"]))] = np.array(
                [[complex(a, b) for a, b in row] for row in e["matrix"]], dtype=complex).reshape(
                len(e["matrix"]), -1)
        return cls(FundamentalSolution.from_dict(d["x"]), FundamentalSolution.from_dict(d["y"]), F, psi,
                   frozenset(d.get("x_boundary", ())), frozenset(d.get("y_boundary", ())), d.get("name", ""))


def _validate_shapes(m: MorphismData):
    for (t, r), P in m.psi.items():
        if P.shape != m.block_shape(t, r):
            raise ValueError(f"psi[{t},{r}] has shape {P.shape}, expected {m.block_shape(t, r)}")


# A term is coef * psi[A][ia, ja] * psi[B][ib, jb] contributing to output entry `key`.
Term = Tuple[complex, Pair, int, int, Pair, int, int]


def diagram_terms(m: MorphismData, t: str, r: str, i: int):
    """Terms and target values of the compatibility diagram at (t, r) for f = basis vector i.

    Returns (terms by output entry, target by output entry); entries are keyed by
    (u, s', alpha, gamma, delta) with alpha in H^Y_tu, gamma in H^Y_us', delta in F_s'r.
    """
    terms: Dict[tuple, List[Term]] = defaultdict(list)
    for s in m.x.vertices:
        h_rs = m.x.dim(r, s)
        if not h_rs:
            continue
        R = m.x.tensor(r, s)  # H_rs x H_sr
        dom_ts = {blk[0]: blk for blk in m.dom_blocks(t, s)}
        if r not in dom_ts:
            continue
        _, off1, _, _ = dom_ts[r]
        for u, offu, h_tu, f_us in m.cod_blocks(t, s):
            dom_ur = {blk[0]: blk for blk in m.dom_blocks(u, r)}
            if s not in dom_ur:
                continue
            _, off2, _, h_sr = dom_ur[s]
            cod_ur = m.cod_blocks(u, r)
            for a in range(h_rs):
                col1 = off1 + i * h_rs + a
                for b in range(h_sr):
                    c = R[a, b]
                    if c == 0:
                        continue
                    for al in range(h_tu):
                        for be in range(f_us):
                            row1 = offu + al * f_us + be
                            col2 = off2 + be * h_sr + b
                            for s2, off3, h_us2, f_s2r in cod_ur:
                                for ga in range(h_us2):
                                    for de in range(f_s2r):
                                        row2 = off3 + ga * f_s2r + de
                                        terms[(u, s2, al, ga, de)].append(
                                            (c, (t, s), row1, col1, (u, r), row2, col2))
    target: Dict[tuple, complex] = {}
    for u in m.y.vertices:
        if m.y.dim(t, u):
            RY = m.y.tensor(t, u)
            for al in range(RY.shape[0]):
                for ga in range(RY.shape[1]):
                    if RY[al, ga] != 0:
                        target[(u, t, al, ga, i)] = RY[al, ga]
    return terms, target


def _block_entry(psi, key, row, col):
    P = psi.get(key)
    if P is None:
        raise ValueError(f"missing block psi[{key[0]},{key[1]}]")
    return P[row, col]


@dataclass
class MorphismReport:
    passed: bool
    residual: float
    worst_pair: Optional[Pair]
    unitarity_residual: float
    per_pair: Dict[Pair, float] = field(default_factory=dict)
    reasons: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "residual": self.residual,
            "unitarity_residual": self.unitarity_residual,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "reasons": list(self.reasons),
        }


def verify_psi(m: MorphismData, dp: Optional[DeformationParameter] = None, tol: float = 1e-9) -> MorphismReport:
    """Check block unitarity and the compatibility diagram on the window."""
    _validate_shapes(m)
    reasons = []
    unit = 0.0
    for t, r in m.unitary_pairs():
        cod, dom = m.block_shape(t, r)
        if cod != dom:
            reasons.append(f"not_square:{t},{r}")
            unit = math.inf
            continue
        P = m.psi.get((t, r))
        if P is None:
            raise ValueError(f"missing block psi[{t},{r}]")
        e = float(np.linalg.norm(P.conj().T @ P - np.eye(dom), 2))
        unit = max(unit, e)
        if e > tol:
            reasons.append(f"unitarity:{t},{r}")
    per_pair = {}
    worst, worst_pair = 0.0, None
    for t, r in m.check_pairs():
        cols = []
        for i in range(m.f(t, r)):
            terms, target = diagram_terms(m, t, r, i)
            keys = sorted(set(terms) | set(target))
            diff = []
            for k in keys:
                val = sum(c * _block_entry(m.psi, A, ia, ja) * _block_entry(m.psi, B, ib, jb)
                          for c, A, ia, ja, B, ib, jb in terms.get(k, ()))
                diff.append((k, val - target.get(k, 0)))
            cols.append(dict(diff))
        allkeys = sorted(set().union(*cols)) if cols else []
        D = np.array([[col.get(k, 0) for col in cols] for k in allkeys], dtype=complex)
        e = float(np.linalg.norm(D, 2)) if D.size else 0.0
        per_pair[(t, r)] = e
        if e > worst:
            worst, worst_pair = e, (t, r)
        if e > tol:
            reasons.append(f"diagram:{t},{r}")
    return MorphismReport(not reasons, worst, worst_pair, unit, per_pair, reasons)


# ---------------------------------------------------------------- phase propagation


def solve_phases(m: MorphismData, max_rounds: int = 1000) -> MorphismData:
    """Fill every missing 1-dimensional block of m by phase propagation.

    Each diagram entry is a sum of products of two block entries.  An entry in which
    a single unknown block occurs is solved for it (linearly, or by a square root
    when the block enters twice); when no entry is solvable, one unknown is set to 1,
    which is a gauge choice.  The result still has to pass verify_psi.
    """
    _validate_shapes(m)
    psi = dict(m.psi)
    needed = set()
    for t in m.y.vertices:
        for r in m.x.vertices:
            shape = m.block_shape(t, r)
            if shape == (1, 1) and (t, r) not in psi:
                needed.add((t, r))
            elif (t, r) not in psi and any(shape) and (t, r) in m.unitary_pairs():
                raise ValueError(f"block psi[{t},{r}] of shape {shape} must be supplied")
    equations = []
    for t, r in m.check_pairs():
        for i in range(m.f(t, r)):
            terms, target = diagram_terms(m, t, r, i)
            for k in set(terms) | set(target):
                equations.append((terms.get(k, []), target.get(k, 0)))
    unknown = set(needed)
    for _ in range(max_rounds):
        if not unknown:
            break
        progress = False
        for terms, rhs in equations:
            blocks = {A for _, A, *_ in terms if A in unknown} | {B for *_, B, _, _ in terms if B in unknown}
            if len(blocks) != 1:
                continue
            (K,) = blocks
            lin, quad, const = 0j, 0j, 0j
            for c, A, ia, ja, B, ib, jb in terms:
                a = None if A == K else psi[A][ia, ja] if A in psi else None
                b = None if B == K else psi[B][ib, jb] if B in psi else None
                if A == K and B == K:
                    quad += c
                elif A == K:
                    lin += c * b
                elif B == K:
                    lin += c * a
                else:
                    const += c * a * b
            if abs(quad) < 1e-14 and abs(lin) > 1e-12:
                z = (rhs - const) / lin
            elif abs(lin) < 1e-14 and abs(quad) > 1e-12:
                z = cmath.sqrt((rhs - const) / quad)
            else:
                continue
            psi[K] = np.array([[z]], dtype=complex)
            unknown.discard(K)
            progress = True
        if not progress and unknown:
            K = min(unknown)
            psi[K] = np.ones((1, 1), dtype=complex)
            unknown.discard(K)
    return MorphismData(m.x, m.y, dict(m.F), psi, m.x_boundary, m.y_boundary, m.name)


# ---------------------------------------------------------------- grading search


@dataclass
class GradingReport:
    feasible: bool
    gradings: List[Dict[Pair, int]]
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "count": len(self.gradings),
            "truncated": self.truncated,
            "gradings": [[{"t": t, "r": r, "dim": d} for (t, r), d in sorted(G.items()) if d] for G in self.gradings],
        }


def _adj(g: OrientedGraph) -> Dict[Pair, int]:
    out: Dict[Pair, int] = defaultdict(int)
    for e in g.edges:
        out[(e.src, e.dst)] += 1
    return out


class _GradingProblem:
    """Square-block conditions over nonnegative integer gradings.

    Rows of Y boundary vertices are zero.  Interior pairs give equalities
    dom = cod.  At an X boundary column r the domain is missing the summands beyond
    the window, so for rows t whose Y neighbours are all inside the window only
    dom <= cod survives.
    """

    def __init__(self, gx, gy, max_dim, wx=None, wy=None, tol=1e-9):
        self.gx, self.gy, self.max_dim = gx, gy, max_dim
        self.wx, self.wy, self.tol = wx, wy, tol
        ax, ay = _adj(gx), _adj(gy)
        self.ax, self.ay = ax, ay
        self.closed = {t for t in gy.interior
                       if not any(ay.get((t, u)) and u in gy.boundary for u in gy.vertices)}
        rows = [t for t in gy.vertices if t not in gy.boundary]
        self.vars = [(t, r) for t in rows for r in gx.vertices]
        self.index = {v: k for k, v in enumerate(self.vars)}
        cons, is_eq = [], []
        for t in gy.interior:
            for r in gx.vertices:
                if r in gx.boundary and t not in self.closed:
                    continue
                coeff: Dict[int, int] = defaultdict(int)
                for s in gx.vertices:
                    if ax.get((s, r)) and (t, s) in self.index:
                        coeff[self.index[(t, s)]] += ax[(s, r)]
                for u in gy.vertices:
                    if ay.get((t, u)) and (u, r) in self.index:
                        coeff[self.index[(u, r)]] -= ay[(t, u)]
                coeff = {k: c for k, c in coeff.items() if c}
                if coeff:
                    cons.append(coeff)
                    is_eq.append(r not in gx.boundary)
        self.cons = cons
        self.is_eq = is_eq
        self.cons_of = defaultdict(list)
        for k, c in enumerate(cons):
            for v in c:
                self.cons_of[v].append(k)
        self.order = self._order()

    def _order(self) -> List[int]:
        # breadth-first over shared constraints so equalities close early
        seen, order = set(), []
        for start in range(len(self.vars)):
            if start in seen:
                continue
            queue = [start]
            seen.add(start)
            while queue:
                v = queue.pop(0)
                order.append(v)
                for k in self.cons_of[v]:
                    for w in sorted(self.cons[k]):
                        if w not in seen:
                            seen.add(w)
                            queue.append(w)
        return order

    def consistent(self, val: List[Optional[int]], touched: int) -> bool:
        for k in self.cons_of[touched]:
            lo = hi = 0
            for v, c in self.cons[k].items():
                x = val[v]
                if x is None:
                    if c > 0:
                        hi += c * self.max_dim
                    else:
                        lo += c * self.max_dim
                else:
                    lo += c * x
                    hi += c * x
            if lo > 0 or (self.is_eq[k] and hi < 0):
                return False
        return True

    def columns_ok(self, G: Dict[Pair, int]) -> bool:
        return all(any(G.get((t, r), 0) for t in self.gy.vertices) for r in self.gx.vertices)

    def weights_ok(self, G: Dict[Pair, int]) -> bool:
        if self.wx is None or self.wy is None:
            return True
        return _weight_test(self, G)

    def search(self, limit: int) -> Tuple[List[Dict[Pair, int]], bool]:
        n = len(self.vars)
        val: List[Optional[int]] = [None] * n
        out: List[Dict[Pair, int]] = []

        def rec(pos: int) -> bool:
            if pos == n:
                G = {self.vars[k]: x for k, x in enumerate(val) if x}
                if self.columns_ok(G) and self.weights_ok(G):
                    out.append(G)
                    if len(out) >= limit:
                        return True
                return False
            v = self.order[pos]
            for x in range(self.max_dim + 1):
                val[v] = x
                if self.consistent(val, v) and rec(pos + 1):
                    return True
            val[v] = None
            return False

        truncated = rec(0)
        return out, truncated


def _weight_test(p: _GradingProblem, G: Dict[Pair, int]) -> bool:
    """Rule out gradings whose diagram entries cannot reach R^Y.

    The entry of the diagram at (t, r) on H^Y_tu (x) H^Y_ut (x) f is a sum over the
    X neighbours s of r with F_us != 0 of R^X_rs contracted against entries, rows
    and columns of unitary blocks, so its modulus is at most
    sum_s sum_{e: r->s} sqrt(W^X(e)); it has to reach the largest sqrt(W^Y(t->u)).
    When the entry receives a single path through 1-dimensional spaces and blocks,
    its modulus is exactly sqrt(W^X(r->s)); it must then equal sqrt(W^Y(t->u)) if
    the path returns to t and vanish otherwise.
    """
    gx, gy = p.gx, p.gy
    f = lambda t, r: G.get((t, r), 0)
    rx: Dict[Pair, float] = defaultdict(float)
    for e in gx.edges:
        rx[(e.src, e.dst)] += math.sqrt(p.wx[e.id])
    ry: Dict[Pair, float] = defaultdict(float)
    for e in gy.edges:
        ry[(e.src, e.dst)] = max(ry[(e.src, e.dst)], math.sqrt(p.wy[e.id]))

    def shape(t, r):
        dom = sum(f(t, s) * p.ax.get((s, r), 0) for s in gx.vertices)
        cod = sum(p.ay.get((t, u), 0) * f(u, r) for u in gy.vertices)
        return cod, dom

    for t in p.closed:
        for r in gx.interior:
            if not f(t, r):
                continue
            for u in gy.vertices:
                if not p.ay.get((t, u)):
                    continue
                bound = sum(rx[(r, s)] for s in gx.vertices if p.ax.get((r, s)) and f(u, s))
                if bound < ry[(t, u)] * (1 - 1e-9):
                    return False
            if f(t, r) != 1:
                continue
            paths = defaultdict(list)
            for s in gx.vertices:
                if not p.ax.get((r, s)):
                    continue
                for u in gy.vertices:
                    if not (p.ay.get((t, u)) and f(u, s)):
                        continue
                    for s2 in gy.vertices:
                        if p.ay.get((u, s2)) and f(s2, r):
                            paths[(u, s2)].append(s)
            for (u, s2), ss in paths.items():
                if len(ss) != 1:
                    continue
                s = ss[0]
                simple = (p.ax[(r, s)] == 1 and p.ax.get((s, r)) == 1 and p.ay[(t, u)] == 1
                          and p.ay[(u, s2)] == 1 and f(u, s) == 1 and f(s2, r) == 1
                          and shape(t, s) == (1, 1) and shape(u, r) == (1, 1))
                if not simple:
                    continue
                if s2 != t:
                    return False
                if abs(rx[(r, s)] - ry[(t, u)]) > 1e-6:
                    return False
    return True


def _decomposable(p: _GradingProblem, G: Dict[Pair, int], pool: List[Dict[Pair, int]]) -> bool:
    for H in pool:
        if H == G or any(H.get(k, 0) > G.get(k, 0) for k in H):
            continue
        rest = {k: G.get(k, 0) - H.get(k, 0) for k in G}
        rest = {k: v for k, v in rest.items() if v}
        if rest and rest in pool:
            return True
    return False


def dimension_prune(gx: OrientedGraph, gy: OrientedGraph, max_dim: int = 2,
                    wx: Optional[Cost] = None, wy: Optional[Cost] = None,
                    indecomposable: bool = True, limit: int = 10_000) -> GradingReport:
    """Integer gradings F (dims <= max_dim) with square psi blocks on interior pairs.

    Every X column must be nonzero.  With costs given, gradings contradicting
    a single-path modulus are dropped.  With indecomposable set, gradings that split
    as a sum of two combinatorially feasible gradings are dropped first, so that a
    sum of two excluded gradings cannot slip through the weight test.
    """
    p = _GradingProblem(gx, gy, max_dim)
    sols, truncated = p.search(limit)
    if indecomposable:
        sols = [G for G in sols if not _decomposable(p, G, sols)]
    if wx is not None and wy is not None:
        p.wx, p.wy = wx, wy
        sols = [G for G in sols if _weight_test(p, G)]
    return GradingReport(bool(sols), sols, truncated)


# ---------------------------------------------------------------- examples


EXAMPLE_NAMES = ("podles_into_suq2", "rp2_into_podles0", "ainf_prime_coideal", "d3prime_family1", "d3prime_family2")


def point_solution(dp: DeformationParameter, name: str = "p") -> FundamentalSolution:
    """The fundamental representation itself: one vertex, M = F, loops of weight 1/|q| and |q|."""
    M = f_matrix(dp).astype(complex)
    return FundamentalSolution((name,), {(name, name): 2}, {(name, name): M}, dp.sign)


def _podles_solution(dp: DeformationParameter, x: float, window: int, up_sign: int, down_sign: int):
    g, w, _ = catalog("A_inf_inf", q=dp.q, x=x, window=window)
    rho = {}
    for e in g.edges:
        rho[e.id] = up_sign if int(e.dst) > int(e.src) else down_sign
    return g, w, build_solution(g, w, dp, rho=rho)


def _assemble(m: MorphismData, t: str, r: str, columns: Mapping[str, Sequence[np.ndarray]]) -> np.ndarray:
    """Stack per-domain-summand columns into psi[t, r] in X vertex order."""
    cols = []
    for s, _, a, b in m.dom_blocks(t, r):
        given = columns[s]
        if len(given) != a * b:
            raise ValueError(f"psi[{t},{r}] summand {s}: {len(given)} columns, expected {a * b}")
        cols.extend(given)
    return np.column_stack(cols).astype(complex)


def _phase(z: complex, what: str) -> complex:
    z = complex(z)
    if abs(abs(z) - 1) > 1e-12:
        raise ValueError(f"{what} must lie on the unit circle, got {z!r}")
    return z


def podles_into_suq2(q: float = 0.5, x: float = 0.0, lam: complex = 1.0,
                     alpha: Optional[Callable[[int], complex]] = None, window: int = 3) -> MorphismData:
    """A Podles sphere window mapped into SU_q(2) itself (all F_m one-dimensional).

    R^X carries +sqrt(W) on upward edges and -sgn(q) sqrt(W) on downward ones.  The
    images depend on lam in U(1) and carry an overall lam^(-1/2); x = inf uses the
    limits of the finite-x coefficients.
    """
    dp = DeformationParameter(q)
    if dp.abs_q == 1:
        raise ValueError("podles_into_suq2 needs |q| < 1")
    lam = _phase(lam, "lam")
    al = alpha or (lambda m: 1.0)
    a, s = dp.abs_q, dp.sign
    gX, wX, X = _podles_solution(dp, x, window, 1, -s)
    Y = point_solution(dp)
    F = {("p", v): 1 for v in gX.vertices}
    m = MorphismData(X, Y, F, {}, gX.boundary, frozenset(), "podles_into_suq2")
    c = lambda k: a ** (x + k) + a ** (-(x + k))
    root = cmath.sqrt(lam)

    def img(src: int, k: int) -> np.ndarray:
        # image of F_{p,src} (x) H_{src,k} under psi[p, k]
        ph = _phase(al(k), "alpha") * np.conj(_phase(al(src), "alpha"))
        if x == math.inf:
            A, B = 1.0, 0.0
        else:
            A = math.sqrt(a ** (-(x + k)) / c(k))
            B = math.sqrt(a ** (x + k) / c(k))
        if src == k + 1:
            v = (-1) ** k * np.array([B, lam * A]) if s > 0 else np.array([B, (-1) ** k * lam * A])
        else:
            v = (-1) ** k * np.array([A, -lam * B]) if s > 0 else np.array([-(-1) ** k * A, lam * B])
        return ph * v / root

    for v in gX.vertices:
        k = int(v)
        cols = {str(n): [img(n, k)] for n in (k - 1, k + 1) if str(n) in gX.vertices}
        if m.block_shape("p", v)[1]:
            m.psi[("p", v)] = _assemble(m, "p", v, cols)
    return m


def _d3prime(beta: complex, family: int) -> MorphismData:
    dp = DeformationParameter(-1.0)
    g, w = make_graph(["*", "+", "-"], [("*", "*", 1.0), ("*", "+", 0.5), ("+", "*", 2.0),
                                        ("*", "-", 0.5), ("-", "*", 2.0)])
    X = build_solution(g, w, dp)
    Y = point_solution(dp)
    F = {("p", "*"): 2, ("p", "+"): 1, ("p", "-"): 1}
    m = MorphismData(X, Y, F, {}, frozenset(), frozenset(), f"d3prime_family{family}")
    b = _phase(beta, "beta")
    bc = np.conj(b)
    e1, e2 = np.array([1, 0]), np.array([0, 1])
    x1, x2, one = np.array([1, 0]), np.array([0, 1]), np.array([1])
    k = np.kron
    r2 = math.sqrt(2)
    m.psi[("p", "+")] = _assemble(m, "p", "+", {"*": [k(e1, one), k(e2, one)]})
    if family == 1:
        m.psi[("p", "-")] = _assemble(m, "p", "-", {"*": [k(e1, one), -k(e2, one)]})
        cols = {
            "*": [b * k(e2, x2), bc * k(e1, x1)],
            "+": [(k(e2, x1) + k(e1, x2)) / r2],
            "-": [(k(e2, x1) - k(e1, x2)) / r2],
        }
    else:
        m.psi[("p", "-")] = _assemble(m, "p", "-", {"*": [-bc ** 4 * k(e2, one), k(e1, one)]})
        c1 = 0.5 * (b * k(e1, x1) + bc * k(e2, x1) - bc * k(e1, x2) + bc ** 3 * k(e2, x2))
        c2 = 0.5 * (b ** 3 * k(e1, x1) - b * k(e2, x1) + b * k(e1, x2) + bc * k(e2, x2))
        cols = {
            "*": [c1, c2],
            "+": [(k(e2, x1) + k(e1, x2)) / r2],
            "-": [(-b ** 4 * k(e1, x1) + k(e2, x2)) / r2],
        }
    m.psi[("p", "*")] = _assemble(m, "p", "*", cols)
    return m


def rp2_into_podles0(q: float = 0.5, window: int = 3) -> MorphismData:
    """The D_inf* window mapped into the Podles window at x = 0.

    Both endpoints of D_inf* go to vertex 0, and m >= 1 goes to +-m.  The one
    2-dimensional block is fixed; the 1-dimensional ones are found by phase
    propagation.
    """
    dp = DeformationParameter(q)
    gX, wX, _ = catalog("D_inf_star", q=q, window=window)
    X = build_solution(gX, wX, dp)
    gY, wY, _ = catalog("A_inf_inf", q=q, x=0.0, window=window + 2)
    Y = build_solution(gY, wY, dp)
    F = {("0", "*"): 1, ("0", "*~"): 1}
    for k in range(1, window + 1):
        F[(str(k), str(k))] = 1
        F[(str(-k), str(k))] = 1
    m = MorphismData(X, Y, F, {}, gX.boundary, gY.boundary, "rp2_into_podles0")
    # the fixed block in rows (H_01 F_11, H_0-1 F_-11), columns (F_0* H_*1, F_0*~ H_*~1)
    fixed = np.array([[1, 1], [-1, 1]], dtype=complex) / math.sqrt(2)
    rows = {u: k for k, (u, *_) in enumerate(m.cod_blocks("0", "1"))}
    cols = {s: k for k, (s, *_) in enumerate(m.dom_blocks("0", "1"))}
    P = np.zeros((2, 2), dtype=complex)
    for i, u in enumerate(("1", "-1")):
        for j, s in enumerate(("*", "*~")):
            P[rows[u], cols[s]] = fixed[i, j]
    m.psi[("0", "1")] = P
    return _solve_or_flip(m, dp)


def _solve_or_flip(m: MorphismData, dp: DeformationParameter) -> MorphismData:
    out = solve_phases(m)
    if verify_psi(out, dp).passed:
        return out
    raise RuntimeError(f"{m.name}: phase propagation did not close the diagram")


def ainf_prime_coideal(q: float = -0.5, window: int = 3) -> MorphismData:
    """The A_inf' window (q < 0) mapped into the Podles window at x = 1/2.

    F_tr = 1 exactly when r = t (t >= 0) or r = -t - 1 (t < 0); every block is
    1-dimensional and found by phase propagation.
    """
    dp = DeformationParameter(q)
    if dp.q > 0:
        raise ValueError("ainf_prime_coideal needs q < 0")
    gX, wX, _ = catalog("A_inf_prime", q=q, window=window)
    X = build_solution(gX, wX, dp)
    gY, wY, _ = catalog("A_inf_inf", q=q, x=0.5, window=window + 2)
    Y = build_solution(gY, wY, dp)
    F = {}
    for t in gY.vertices:
        k = int(t)
        r = k if k >= 0 else -k - 1
        if str(r) in gX.vertices:
            F[(t, str(r))] = 1
    m = MorphismData(X, Y, F, {}, gX.boundary, gY.boundary, "ainf_prime_coideal")
    return _solve_or_flip(m, dp)


def example_embedding(name: str, **params) -> MorphismData:
    if name == "podles_into_suq2":
        return podles_into_suq2(**params)
    if name == "rp2_into_podles0":
        return rp2_into_podles0(**params)
    if name == "ainf_prime_coideal":
        return ainf_prime_coideal(**params)
    if name == "d3prime_family1":
        return _d3prime(params.get("beta", 1.0), 1)
    if name == "d3prime_family2":
        return _d3prime(params.get("beta", 1.0), 2)
    raise ValueError(f"unknown example {name!r}; expected one of {', '.join(EXAMPLE_NAMES)}")
