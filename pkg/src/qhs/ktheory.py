"""K-groups of a finite quantum homogeneous space from its graph.

Everything here works on lists of Python ints, so there is no overflow and the
identity U M V = S is checked exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .cost_engine import is_symmetric
from .graph_model import OrientedGraph, is_connected

IntMatrix = List[List[int]]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/t1 + ... + Z/tk with t1 | t2 | ... | tk and every ti >= 2."""

    rank: int = 0
    torsion: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(x < 2 for x in t):
            raise ValueError("torsion entries must be >= 2")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError("torsion entries must divide each other in order")

    @classmethod
    def from_diagonal(cls, diag: Sequence[int], n_generators: int) -> "AbelianGroup":
        """Cokernel of a map Z^m -> Z^n whose Smith diagonal is diag."""
        zeros = n_generators - sum(1 for d in diag if d != 0)
        return cls(zeros, tuple(abs(d) for d in diag if abs(d) >= 2))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def _check_matrix(M: Sequence[Sequence[int]]) -> IntMatrix:
    rows = [list(r) for r in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged integer matrix")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise ValueError(f"non-integer entry {x!r}")
    return [[int(x) for x in r] for r in rows]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, c)) for c in cols] for row in A]


def gamma_matrix(g: OrientedGraph) -> IntMatrix:
    """Vertex-indexed count of edges v -> w; the action of the spin-1/2 class on K0."""
    if g.boundary:
        raise ValueError("K-theory needs the full graph, not a window with boundary vertices")
    if not is_symmetric(g):
        raise ValueError("graph is not symmetric")
    idx = {v: k for k, v in enumerate(g.vertices)}
    n = len(g.vertices)
    A = [[0] * n for _ in range(n)]
    for e in g.edges:
        A[idx[e.src]][idx[e.dst]] += 1
    return A


def phi_matrix(gamma: Sequence[Sequence[int]]) -> IntMatrix:
    """The block matrix [[-I, -I], [I, gamma - I]]."""
    G = _check_matrix(gamma)
    k = len(G)
    if any(len(r) != k for r in G):
        raise ValueError("gamma must be square")
    out = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        out[i][i] = -1
        out[i][k + i] = -1
        out[k + i][i] = 1
        for j in range(k):
            out[k + i][k + j] = G[i][j] - (i == j)
    return out


def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (S, U, V) with U M V = S diagonal, nonnegative, each entry dividing the next.

    The pivot at each step is the nonzero entry of least absolute value in the
    remaining block, which keeps intermediate entries small.
    """
    S = _check_matrix(M)
    m = len(S)
    n = len(S[0]) if m else 0
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (S, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        for R in (S, U):
            R[dst] = [a + c * b for a, b in zip(R[dst], R[src])]

    def add_col(src, dst, c):
        for R in (S, V):
            for row in R:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // p))
                    clean &= S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // p))
                    clean &= S[t][j] == 0
            if not clean:
                continue
            # the pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < m and t < n and S[t][t] < 0:
            U[t] = [-x for x in U[t]]
            S[t] = [-x for x in S[t]]
    return S, U, V


def smith_diagonal(M: Sequence[Sequence[int]]) -> List[int]:
    S, _, _ = smith_normal_form(M)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def k_groups(g: OrientedGraph) -> Tuple[AbelianGroup, AbelianGroup]:
    """(K0, K1) as the cokernel and kernel of phi acting on Z^2k."""
    if not is_connected(g):
        raise ValueError("graph must be connected")
    phi = phi_matrix(gamma_matrix(g))
    diag = smith_diagonal(phi)
    size = len(phi)
    k0 = AbelianGroup.from_diagonal(diag, size)
    k1 = AbelianGroup(size - sum(1 for d in diag if d != 0))
    return k0, k1


def format_k_groups(k0: AbelianGroup, k1: AbelianGroup) -> str:
    return f"K0 = {k0}, K1 = {k1}"
