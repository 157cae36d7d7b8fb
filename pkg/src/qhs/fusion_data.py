"""Fundamental solutions: the anti-linear maps J_vw built from a fair and balanced
cost, their defining identities, and the way back to a weighted graph.

An anti-linear map J: H_vw -> H_wv is stored as the matrix M with J(x) = M conj(x).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .cost_engine import DEFAULT_TOL, verify_fair_balanced
from .graph_model import Cost, DeformationParameter, OrientedGraph, find_isomorphism, make_graph

Pair = Tuple[str, str]

MAX_EQUIV_VERTICES = 12
MAX_EQUIV_DIM = 4


@dataclass
class FundamentalSolution:
    vertices: Tuple[str, ...]
    dims: Dict[Pair, int]
    jmaps: Dict[Pair, np.ndarray]
    sign: int
    bases: Dict[Pair, List[str]] = field(default_factory=dict)

    def __post_init__(self):
        for (v, w), d in self.dims.items():
            if self.dims.get((w, v), 0) != d:
                raise ValueError(f"dim H_{v}{w} != dim H_{w}{v}")
        for (v, w), M in self.jmaps.items():
            if M.shape != (self.dims[(w, v)], self.dims[(v, w)]):
                raise ValueError(f"block ({v},{w}) has shape {M.shape}")

    def dim(self, v: str, w: str) -> int:
        return self.dims.get((v, w), 0)

    def tensor(self, v: str, w: str) -> np.ndarray:
        """R_vw in H_vw (x) H_wv, i.e. sum_e rho(e) sqrt(W(e)) e (x) ebar."""
        return self.jmaps[(v, w)].T

    def to_dict(self) -> dict:
        blocks = []
        for (v, w), M in sorted(self.jmaps.items()):
            blocks.append({
                "src": v, "dst": w,
                "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=complex)],
            })
        return {"vertices": list(self.vertices), "sign": self.sign, "blocks": blocks}

    @classmethod
    def from_dict(cls, d: dict) -> "FundamentalSolution":
        dims: Dict[Pair, int] = {}
        jmaps: Dict[Pair, np.ndarray] = {}
        for b in d["blocks"]:
            rows = b["matrix"]
            M = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
            if M.size == 0:
                continue
            v, w = str(b["src"]), str(b["dst"])
            jmaps[(v, w)] = M
            dims[(v, w)] = M.shape[1]
            dims[(w, v)] = M.shape[0]
        return cls(tuple(str(v) for v in d["vertices"]), dims, jmaps, int(d["sign"]))


def rho_signs(g: OrientedGraph, involution: Mapping[str, str], sign: int) -> Dict[str, int]:
    """rho(e) rho(ebar) = -sgn(q): all +1 for q < 0; +1 then -1 across each pair for q > 0."""
    rho = {}
    for e in sorted(involution):
        if e in rho:
            continue
        f = involution[e]
        rho[e] = 1
        if f != e:
            rho[f] = 1 if sign < 0 else -1
    return rho


def build_solution(g: OrientedGraph, w: Mapping[str, float], dp: DeformationParameter,
                   tol: float = DEFAULT_TOL, rho: Optional[Mapping[str, int]] = None) -> FundamentalSolution:
    rep = verify_fair_balanced(g, w, dp, tol)
    if not rep.passed:
        raise ValueError(f"cost is not fair and balanced: {rep.reasons}")
    inv = rep.involution
    if rho is None:
        rho = rho_signs(g, inv, dp.sign)
    classes = g.parallel_classes()
    bases = {k: [e.id for e in es] for k, es in classes.items()}
    dims = {k: len(v) for k, v in bases.items()}
    jmaps = {}
    for (v, u), ids in bases.items():
        back = {eid: i for i, eid in enumerate(bases[(u, v)])}
        M = np.zeros((len(back), len(ids)), dtype=complex)
        for j, eid in enumerate(ids):
            M[back[inv[eid]], j] = rho[eid] * math.sqrt(w[eid])
        jmaps[(v, u)] = M
    return FundamentalSolution(g.vertices, dims, jmaps, dp.sign, bases)


@dataclass
class SolutionReport:
    passed: bool
    composition_residual: Dict[Pair, float]
    trace_residual: Dict[str, float]
    reasons: List[str]

    @property
    def residual(self) -> float:
        vals = list(self.composition_residual.values()) + list(self.trace_residual.values())
        return max(vals, default=0.0)

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "reasons": list(self.reasons),
            "residual": self.residual,
            "trace_residual": dict(self.trace_residual),
        }


def verify_solution(s: FundamentalSolution, dp: DeformationParameter, tol: float = DEFAULT_TOL,
                    boundary: frozenset = frozenset()) -> SolutionReport:
    """Check J_wv J_vw = -sgn(q) and sum_w Tr(J_vw* J_vw) = |q| + 1/|q|.

    Vertices in `boundary` are exempt from the trace condition (window edges).
    """
    reasons = []
    comp = {}
    for (v, w), M in sorted(s.jmaps.items()):
        P = s.jmaps[(w, v)] @ np.conj(M)
        r = float(np.abs(P + dp.sign * np.eye(P.shape[0])).max(initial=0.0))
        comp[(v, w)] = r
        if r > tol:
            reasons.append(f"composition:{v},{w}")
    traces = {}
    for v in s.vertices:
        if v in boundary:
            continue
        t = sum(float(np.sum(np.abs(M) ** 2)) for (a, _), M in s.jmaps.items() if a == v)
        traces[v] = abs(t - dp.abs_T)
        if traces[v] > tol:
            reasons.append(f"trace:{v}")
    return SolutionReport(not reasons, comp, traces, reasons)


def block_spectrum(M: np.ndarray) -> np.ndarray:
    """Eigenvalues of M* M, descending."""
    return np.sort(np.linalg.eigvalsh(M.conj().T @ M))[::-1]


def solution_to_graph(s: FundamentalSolution, dp: Optional[DeformationParameter] = None,
                      tol: float = DEFAULT_TOL, boundary=()) -> Tuple[OrientedGraph, Cost]:
    if dp is not None:
        rep = verify_solution(s, dp, tol, frozenset(boundary))
        if not rep.passed:
            raise ValueError(f"solution does not verify: {rep.reasons}")
    arrows = []
    for (v, w), M in sorted(s.jmaps.items()):
        for lam in block_spectrum(M):
            arrows.append((v, w, float(lam)))
    return make_graph(s.vertices, arrows, boundary)


# ---------------------------------------------------------------- equivalence


@dataclass
class EquivalenceResult:
    status: str  # "equivalent", "inequivalent" or "undecided"
    vertex_map: Optional[Dict[str, str]] = None
    unitaries: Optional[Dict[Pair, np.ndarray]] = None
    residual: float = math.nan

    @property
    def witness(self):
        if self.status != "equivalent":
            return None
        return self.vertex_map, self.unitaries

    def to_dict(self) -> dict:
        d = {"status": self.status}
        if self.vertex_map is not None:
            d["vertex_map"] = dict(self.vertex_map)
            d["residual"] = self.residual
        return d


def loop_normal_form(M: np.ndarray, eps: int, tol: float = 1e-8) -> Tuple[np.ndarray, np.ndarray]:
    """Unitary V and canonical C with M = V C V^T, for M conj(M) = eps I.

    Eigenvalues lam > 1 of M*M come paired with 1/lam: on {f, Jf/sqrt(lam)} the block
    is [[0, eps/sqrt(lam)], [sqrt(lam), 0]].  On the lam = 1 part J is antiunitary
    with J^2 = eps, giving fixed vectors (block 1) or pairs (block [[0,-1],[1,0]]).
    """
    n = M.shape[0]
    J = lambda x: M @ np.conj(x)
    P = M.T @ np.conj(M)  # matrix of J*J
    lam, vec = np.linalg.eigh(P)
    cols: List[np.ndarray] = []
    blocks: List[np.ndarray] = []
    big = [i for i in np.argsort(-lam) if lam[i] > 1 + tol]
    # group the eigenvalues above 1 and orthonormalize within each cluster
    while big:
        head = lam[big[0]]
        cluster = [i for i in big if abs(lam[i] - head) <= tol * max(1.0, head)]
        big = [i for i in big if i not in cluster]
        F = vec[:, cluster]
        for k in range(F.shape[1]):
            f = F[:, k]
            l = float(np.real(np.vdot(f, P @ f)))
            g = J(f) / math.sqrt(l)
            cols += [f, g]
            blocks.append(np.array([[0, eps / math.sqrt(l)], [math.sqrt(l), 0]], dtype=complex))
    ones = vec[:, np.abs(lam - 1) <= tol]
    # the unit eigenspace
    E = ones
    for _ in range(n):
        if not E.shape[1]:
            break
        f = E[:, 0]
        if eps > 0:
            h = f + J(f)
            if np.linalg.norm(h) < 1e-6:
                h = 1j * (f - J(f))
            h = h / np.linalg.norm(h)
            new = [h]
            blocks.append(np.ones((1, 1), dtype=complex))
        else:
            h = f / np.linalg.norm(f)
            new = [h, J(h)]
            blocks.append(np.array([[0, -1], [1, 0]], dtype=complex))
        cols += new
        N = np.array(new).T
        E = E - N @ (N.conj().T @ E)
        u, sv, _ = np.linalg.svd(E, full_matrices=False)
        E = u[:, sv > 1e-6]
    if len(cols) != n:
        raise ValueError("J does not preserve the unit eigenspace")
    V = np.array(cols).T
    C = np.zeros((n, n), dtype=complex)
    o = 0
    for b in blocks:
        k = b.shape[0]
        C[o:o + k, o:o + k] = b
        o += k
    return V, C


def _block_unitaries(s1: FundamentalSolution, s2: FundamentalSolution, phi: Mapping[str, str],
                     tol: float) -> Optional[Dict[Pair, np.ndarray]]:
    """Unitaries U with M1_vw = U_wv M2_{phi v, phi w} U_vw^T for every block."""
    eps = -s1.sign
    U: Dict[Pair, np.ndarray] = {}
    for (v, w), M in sorted(s1.jmaps.items()):
        if (v, w) in U:
            continue
        M2 = s2.jmaps.get((phi[v], phi[w]))
        if M2 is None or M2.shape != M.shape:
            return None
        if v == w:
            V1, C1 = loop_normal_form(M, eps)
            V2, C2 = loop_normal_form(M2, eps)
            if np.abs(C1 - C2).max(initial=0.0) > math.sqrt(tol):
                return None
            U[(v, v)] = V1 @ V2.conj().T
        else:
            A, S, Bh = np.linalg.svd(M)
            A2, S2, Bh2 = np.linalg.svd(M2)
            if np.abs(S - S2).max(initial=0.0) > math.sqrt(tol):
                return None
            U[(w, v)] = A @ A2.conj().T
            U[(v, w)] = (Bh2.conj().T @ Bh).T
    return U


def _equiv_residual(s1, s2, phi, U) -> float:
    r = 0.0
    for (v, w), M in s1.jmaps.items():
        R = U[(w, v)] @ s2.jmaps[(phi[v], phi[w])] @ U[(v, w)].T - M
        r = max(r, float(np.abs(R).max(initial=0.0)))
    return r


def solutions_equivalent(s1: FundamentalSolution, s2: FundamentalSolution,
                         tol: float = 1e-8) -> EquivalenceResult:
    """Search a vertex bijection and block unitaries carrying s2 onto s1.

    Candidate bijections come from the weighted-graph isomorphism of the two
    edge-cost graphs; the blocks are then matched by SVD (v != w) and by the
    loop normal form (v = w).
    """
    if s1.sign != s2.sign:
        return EquivalenceResult("inequivalent")
    if len(s1.vertices) != len(s2.vertices):
        return EquivalenceResult("inequivalent")
    if len(s1.vertices) > MAX_EQUIV_VERTICES or max(list(s1.dims.values()) + [0]) > MAX_EQUIV_DIM:
        return EquivalenceResult("undecided")
    g1, w1 = solution_to_graph(s1)
    g2, w2 = solution_to_graph(s2)
    phi = find_isomorphism(g1, w1, g2, w2, tol=math.sqrt(tol))
    if phi is None:
        return EquivalenceResult("inequivalent")
    U = _block_unitaries(s1, s2, phi, tol)
    if U is None:
        return EquivalenceResult("undecided", phi)
    r = _equiv_residual(s1, s2, phi, U)
    if r > math.sqrt(tol):
        return EquivalenceResult("undecided", phi, U, r)
    return EquivalenceResult("equivalent", phi, U, r)
