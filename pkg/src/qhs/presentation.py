"""Generators and relations of the linking algebra attached to a fundamental solution.

Generators are projections delta_v (one per vertex) and z_ij for each edge i and
column j in {1, 2}.  Relations come in four families:

    Eq1   delta_v z_ij delta_w = [v = s(i)][w = t(i)] z_ij
    Eq2   sum_{t(i) = w} z_ij^* z_ik = [j = k] delta_w
    Eq2p  z_i1 z_k1^* + z_i2 z_k2^* = [i = k] delta_s(i)        (s(i) = s(k))
    Eq3   z_ij^* = sum_{k: w -> v} E^(wv)_ik (F_1j z_k1 + F_2j z_k2)   (i: v -> w)

Bases of each H_vw are the edges v -> w in edge-id order, so a presentation depends
on that choice up to the usual unitary equivalence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .fusion_data import FundamentalSolution, verify_solution
from .graph_model import DeformationParameter, podles_weight_up

Pair = Tuple[str, str]

PODLES_CHANGE_OF_VARIABLES = {
    "X": "(|q|^-x + |q|^x) z2^* z1",
    "Y": "(|q|^-x + |q|^x) z1^* z2",
    "Z": "(|q|^(1-x) + |q|^(x+1)) (z1^* z1 - |q|^x / (|q|^-x + |q|^x))",
}


def f_matrix(dp: DeformationParameter) -> np.ndarray:
    a = dp.abs_q
    return np.array([[0.0, math.sqrt(a)], [-dp.sign / math.sqrt(a), 0.0]])


def e_matrices(s: FundamentalSolution, dp: Optional[DeformationParameter] = None,
               tol: float = 1e-9, boundary=frozenset()) -> Dict[Pair, np.ndarray]:
    """E^(vw) = -sgn(q) M_vw: rows indexed by H_wv, columns by H_vw."""
    if dp is not None:
        rep = verify_solution(s, dp, tol, frozenset(boundary))
        if not rep.passed:
            raise ValueError(f"solution does not verify: {rep.reasons}")
    return {k: -s.sign * M for k, M in s.jmaps.items()}


def _c(z: complex) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class Relation:
    kind: str
    indices: dict
    terms: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "indices": self.indices}
        if self.terms:
            d["terms"] = [{k: v for k, v in t.items() if k != "coeff"} for t in self.terms]
            d["coeffs"] = [_c(t["coeff"]) for t in self.terms]
        return d


@dataclass
class Presentation:
    projections: List[str]
    generators: List[Tuple[str, int]]
    relations: List[Relation]
    F: np.ndarray
    E: Dict[Pair, np.ndarray]
    edges: Dict[str, Pair]

    def count(self, kind: str) -> int:
        return sum(1 for r in self.relations if r.kind == kind)

    def identity_residual(self, sign: int) -> float:
        """max |conj(E^(vw)) E^(wv) + sgn(q) I| over all blocks."""
        r = 0.0
        for (v, w), E in self.E.items():
            P = np.conj(E) @ self.E[(w, v)]
            r = max(r, float(np.abs(P + sign * np.eye(P.shape[0])).max(initial=0.0)))
        return r

    def to_dict(self) -> dict:
        return {
            "projections": list(self.projections),
            "generators": [{"edge": e, "col": j} for e, j in self.generators],
            "relations": [r.to_dict() for r in self.relations],
            "F": self.F.tolist(),
            "E": {f"{v},{w}": [[_c(z) for z in row] for row in E] for (v, w), E in sorted(self.E.items())},
        }


def _edges_from_solution(s: FundamentalSolution) -> Dict[Pair, List[str]]:
    if s.bases:
        return {k: list(v) for k, v in s.bases.items()}
    out = {}
    for (v, w), d in s.dims.items():
        out[(v, w)] = [f"{v}→{w}#{k}" for k in range(d)]
    return out


def emit_presentation(s: FundamentalSolution, dp: DeformationParameter, tol: float = 1e-9,
                      boundary=frozenset(), check_tol: float = 1e-10) -> Presentation:
    E = e_matrices(s, dp, tol, boundary)
    F = f_matrix(dp)
    bases = _edges_from_solution(s)
    edges = {i: k for k, ids in sorted(bases.items()) for i in ids}
    order = sorted(edges)
    verts = list(s.vertices)
    gens = [(i, j) for i in order for j in (1, 2)]
    rels: List[Relation] = []
    for i in order:
        src, dst = edges[i]
        for v in verts:
            for w in verts:
                rels.append(Relation("Eq1", {"v": v, "edge": i, "w": w, "nonzero": v == src and w == dst}))
    for w in verts:
        incoming = [i for i in order if edges[i][1] == w]
        for j in (1, 2):
            for k in (1, 2):
                terms = [{"left": [i, j], "right": [i, k], "coeff": 1.0} for i in incoming]
                rels.append(Relation("Eq2", {"w": w, "j": j, "k": k, "rhs": j == k}, terms))
    for i in order:
        for k in order:
            if edges[i][0] != edges[k][0]:
                continue
            terms = [{"left": [i, c], "right": [k, c], "coeff": 1.0} for c in (1, 2)]
            rels.append(Relation("Eq2p", {"i": i, "k": k, "v": edges[i][0], "rhs": i == k}, terms))
    for i in order:
        v, w = edges[i]
        row = bases[(v, w)].index(i)
        back = bases[(w, v)]
        Ewv = E[(w, v)]
        for j in (1, 2):
            terms = []
            for col, k in enumerate(back):
                for l in (1, 2):
                    coeff = Ewv[row, col] * F[l - 1, j - 1]
                    if coeff != 0:
                        terms.append({"edge": k, "col": l, "coeff": complex(coeff)})
            rels.append(Relation("Eq3", {"edge": i, "col": j}, terms))
    pres = Presentation(verts, gens, rels, F, E, edges)
    r = pres.identity_residual(dp.sign)
    if r > check_tol:
        raise ValueError(f"conj(E)E = -sgn(q) I fails with residual {r:.3g}")
    sv = np.sort(np.linalg.eigvalsh(F.T @ F))
    if abs(sv[0] - dp.abs_q) > check_tol or abs(sv[1] - 1 / dp.abs_q) > check_tol:
        raise ValueError("F*F does not have eigenvalues |q|, 1/|q|")
    return pres


def eq3_residual(pres: Presentation, values: Mapping[Tuple[str, int], complex]) -> float:
    """Largest |z_ij^* - rhs| over the Eq3 relations when z is replaced by scalars.

    Only relations whose generators all have values are evaluated.
    """
    worst = 0.0
    for rel in pres.relations:
        if rel.kind != "Eq3":
            continue
        key = (rel.indices["edge"], rel.indices["col"])
        if key not in values or any((t["edge"], t["col"]) not in values for t in rel.terms):
            continue
        rhs = sum(t["coeff"] * values[(t["edge"], t["col"])] for t in rel.terms)
        worst = max(worst, abs(np.conj(values[key]) - rhs))
    return worst


def simplified_pair_relations(pres: Presentation, v: str, w: str) -> Dict[str, float]:
    """Reduce the relations on a pair of 1-dimensional blocks H_vw, H_wv.

    Eq2p at the edge v -> w reads z1 z1^* + z2 z2^* = 1 (z = z^(vw)).  Eq2p at the
    edge w -> v, rewritten through Eq3 and divided by |E^(vw)|^2, becomes
    a1 z1^* z1 + a2 z2^* z2 = rhs.  Returns a1, a2 and rhs.
    """
    if pres.E[(v, w)].shape != (1, 1):
        raise ValueError("both blocks must be 1-dimensional")
    e_vw = complex(pres.E[(v, w)][0, 0])
    back = [i for i, k in pres.edges.items() if k == (w, v)][0]
    coeff = {1: 0.0, 2: 0.0}
    for rel in pres.relations:
        if rel.kind == "Eq3" and rel.indices["edge"] == back:
            # z_{back,j} = sum conj(c) z_{k,l}^*, so z_{back,j} z_{back,j}^* contributes |c|^2 z_l^* z_l
            for t in rel.terms:
                coeff[t["col"]] += abs(t["coeff"]) ** 2
    scale = abs(e_vw) ** 2
    return {"a1": coeff[1] / scale, "a2": coeff[2] / scale, "rhs": 1.0 / scale}


def podles_parameters(dp: DeformationParameter, x: float, window: int = 3) -> dict:
    """c(x), a = W(0 -> 1) and the weights W(m -> m +- 1) for |m| <= window."""
    if abs(dp.abs_q - 1) < 1e-15:
        raise ValueError("podles_parameters needs |q| < 1")
    a_q = dp.abs_q
    if x == math.inf:
        c = 0.0
    else:
        c = (a_q ** (x + 1) - a_q ** (-x - 1)) ** -2
    weights = {}
    for m in range(-window, window):
        up = podles_weight_up(dp.q, x, m)
        weights[f"{m}→{m + 1}"] = up
        weights[f"{m + 1}→{m}"] = 1 / up
    return {"c": c, "a": podles_weight_up(dp.q, x, 0), "weights": weights}
