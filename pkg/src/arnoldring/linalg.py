"""Exact integer linear algebra on dense row-major ``list[list[int]]`` matrices.

Everything uses the row-vector convention: a matrix M with a rows and b
columns is the map Z^a -> Z^b, x -> x M.  Coefficients are Python ints, so
nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]
Vector = List[int]


def _axpy(q: int, src: Sequence[int], dst: List[int]) -> None:
    """dst -= q * src, in place."""
    for i, s in enumerate(src):
        if s:
            dst[i] -= q * s


def echelon(rows: Sequence[Sequence[int]], ncols: int, nkeep: Optional[int] = None
            ) -> Tuple[Matrix, Matrix]:
    """Integer row echelon form by unimodular row operations.

    Only the first ``nkeep`` columns (default: all) are eliminated.  Returns
    ``(basis, rest)``: ``basis`` is an echelon lattice basis of the row space
    restricted to those columns (pivots positive, strictly increasing pivot
    columns), and ``rest`` holds the remaining rows, which vanish on the
    eliminated columns.  Augmenting with an identity block and reading
    ``rest`` gives an integer kernel basis.
    """
    if nkeep is None:
        nkeep = ncols
    pending = [list(r) for r in rows if any(r)]
    basis: Matrix = []
    for col in range(nkeep):
        cand = [r for r in pending if r[col]]
        if not cand:
            continue
        others = [r for r in pending if not r[col]]
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[col]))
            p = cand[0]
            nxt = [p]
            for r in cand[1:]:
                _axpy(r[col] // p[col], p, r)
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    others.append(r)
            cand = nxt
        p = cand[0]
        if p[col] < 0:
            p[:] = [-x for x in p]
        basis.append(p)
        pending = others
    return basis, [r for r in pending if any(r)]


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(echelon(rows, ncols)[0])


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def left_kernel(m: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """A lattice basis of {y : y m = 0}."""
    a = len(m)
    aug = [list(r) + e for r, e in zip(m, identity(a))]
    basis, rest = echelon(aug, ncols + a, nkeep=ncols)
    return [r[ncols:] for r in rest]


def in_row_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice spanned by an ``echelon`` basis."""
    v = list(v)
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        if v[col] % row[col]:
            return False
        if v[col]:
            _axpy(v[col] // row[col], row, v)
    return not any(v)


def solve_left(m: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> Optional[Vector]:
    """An integer y with y m = b, or None."""
    a = len(m)
    aug = [list(r) + e for r, e in zip(m, identity(a))]
    basis, _ = echelon(aug, ncols + a, nkeep=ncols)
    v = list(b) + [0] * a
    for row in basis:
        col = next(i for i, x in enumerate(row[:ncols]) if x)
        if v[col] % row[col]:
            return None
        if v[col]:
            _axpy(v[col] // row[col], row, v)
    if any(v[:ncols]):
        return None
    return [-x for x in v[ncols:]]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], ncols: int) -> Matrix:
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], ncols: int) -> Vector:
    return matmul([v], m, ncols)[0]


@dataclass
class SmithForm:
    """D = U A V with V, Vinv tracked (U is not needed by callers)."""

    invariant_factors: List[int]
    V: Matrix
    Vinv: Matrix

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> SmithForm:
    """Smith normal form of an integer matrix, tracking column transforms.

    Rows are first reduced to an echelon lattice basis (the row lattice, and
    hence the invariant factors, are unchanged), then diagonalised with
    gcd-style pivoting on the smallest magnitude entry.
    """
    A, _ = echelon(rows, ncols)
    m, n = len(A), ncols
    V = identity(n)
    Vinv = identity(n)

    def col_op(src, dst, q):
        # column dst -= q * column src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        for row in V:
            if row[src]:
                row[dst] -= q * row[src]
        # inverse: row src += q * row dst
        s, d = Vinv[src], Vinv[dst]
        for j in range(n):
            if d[j]:
                s[j] += q * d[j]

    def col_swap(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_negate(i):
        for row in A:
            row[i] = -row[i]
        for row in V:
            row[i] = -row[i]
        Vinv[i] = [-x for x in Vinv[i]]

    factors: List[int] = []
    t = 0
    while t < m and t < n:
        # smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        col_swap(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    _axpy(q, A[t], A[i])
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(t, j, A[t][j] // p)
                    if A[t][j]:
                        done = False
            if not done:
                # move a smaller remainder into the pivot position
                i_best = min((i for i in range(t, m) if A[i][t]), key=lambda i: abs(A[i][t]))
                j_best = min((j for j in range(t, n) if A[t][j]), key=lambda j: abs(A[t][j]))
                if abs(A[i_best][t]) <= abs(A[t][j_best]):
                    A[t], A[i_best] = A[i_best], A[t]
                else:
                    col_swap(t, j_best)
                continue
            if abs(p) == 1:
                break
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            for j in range(t, n):
                A[t][j] += A[bad][j]
        if A[t][t] < 0:
            col_negate(t)
        factors.append(A[t][t])
        t += 1
    return SmithForm(factors, V, Vinv)


@dataclass
class Quotient:
    """The abelian group Z^dim / (row lattice of ``relations``)."""

    dim: int
    relations: Matrix
    snf: SmithForm = field(repr=False)

    @classmethod
    def of(cls, relations: Sequence[Sequence[int]], dim: int) -> "Quotient":
        basis, _ = echelon(relations, dim)
        return cls(dim, basis, smith_normal_form(basis, dim))

    @property
    def relation_rank(self) -> int:
        return self.snf.rank

    @property
    def free_rank(self) -> int:
        return self.dim - self.snf.rank

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.snf.invariant_factors if d > 1]

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def project(self, x: Sequence[int]) -> Vector:
        """Coordinates of the class of ``x`` in the free part."""
        r = self.snf.rank
        V = self.snf.V
        out = [0] * (self.dim - r)
        for i, xi in enumerate(x):
            if xi:
                row = V[i]
                for j in range(r, self.dim):
                    if row[j]:
                        out[j - r] += xi * row[j]
        return out

    def lift(self, j: int) -> Vector:
        """A representative in Z^dim of the j-th free basis class."""
        return list(self.snf.Vinv[self.snf.rank + j])

    def contains(self, x: Sequence[int]) -> bool:
        return in_row_lattice(self.relations, x)


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    if any(len(r) != n for r in m):
        return False
    f = smith_normal_form(m, n)
    return f.rank == n and all(d == 1 for d in f.invariant_factors)


def solve_rational(m: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[List[Fraction]]:
    """Solve y m = b over Q for square invertible m; None if singular."""
    n = len(m)
    # transpose: m^T y^T = b^T
    aug = [[Fraction(m[j][i]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] for i in range(n)]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
