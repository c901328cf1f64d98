"""Poincare polynomials of R^r(G) by deletion-contraction.

The short exact sequences 0 -> R(G\\a)_k -> R(G)_k -> R(G/a)_{k-1} -> 0 give
P_G(q) = P_{G\\a}(q) + q P_{G/a}(q), where q stands for one step of r - 1 in
degree.  Loops kill the ring, parallel edges can be merged, and results are
memoised on canonical forms.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from arnoldring.graph import Multigraph, canonical_form, contract_edge, delete_edge, simplify_parallel
from arnoldring.ideal import InternalInconsistency

EdgeChooser = Callable[[Multigraph], int]


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer coefficients c_0, c_1, ... of a polynomial in q."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs) or [0]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def zero(cls) -> "PoincarePolynomial":
        return cls((0,))

    @classmethod
    def one(cls) -> "PoincarePolynomial":
        return cls((1,))

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PoincarePolynomial(tuple(x + y for x, y in zip(a, b)))

    def times_q(self) -> "PoincarePolynomial":
        if self.is_zero():
            return self
        return PoincarePolynomial((0,) + self.coeffs)

    def __call__(self, q):
        return sum(c * q**i for i, c in enumerate(self.coeffs))

    def to_json_dict(self) -> dict:
        return {"coeffs": list(self.coeffs), "variable": "q", "degree_step": "r-1"}

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            parts.append(coef + mono)
        return " + ".join(parts)


class PoincareMemo:
    """Canonical form -> polynomial.  Re-inserting a different value is fatal."""

    def __init__(self):
        self._table: Dict[bytes, PoincarePolynomial] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: bytes) -> Optional[PoincarePolynomial]:
        with self._lock:
            val = self._table.get(key)
            if val is None:
                self.misses += 1
            else:
                self.hits += 1
            return val

    def put(self, key: bytes, value: PoincarePolynomial) -> None:
        with self._lock:
            old = self._table.setdefault(key, value)
        if old != value:
            raise InternalInconsistency(
                f"memo divergence for {key.hex()}: {old.coeffs} vs {value.coeffs}"
            )

    def __len__(self):
        return len(self._table)


_SHARED_MEMO = PoincareMemo()


def max_degree_edge(g: Multigraph) -> int:
    """An edge at a vertex of maximum degree (least vertex id, then least edge id)."""
    v = max(g.vertices, key=lambda u: (g.degree(u), -u))
    return min(e.id for e in g.edges if v in (e.tail, e.head))


@dataclass
class TreeNode:
    graph: str
    edges: int
    kind: str
    edge: Optional[int] = None
    children: List["TreeNode"] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        d = {"graph": self.graph, "edges": self.edges, "kind": self.kind}
        if self.edge is not None:
            d["edge"] = self.edge
        if self.children:
            d["children"] = [c.to_json_dict() for c in self.children]
        return d


def poincare(g: Multigraph, choose: Optional[EdgeChooser] = None,
             memo: Optional[PoincareMemo] = _SHARED_MEMO, use_memo: bool = True,
             tree: Optional[TreeNode] = None) -> PoincarePolynomial:
    """Poincare polynomial of R^r(g) in q = t^{r-1}; identical for both parities.

    ``choose`` picks the deletion-contraction edge (default: max_degree_edge).
    Pass ``use_memo=False`` to disable memoisation, or a fresh ``PoincareMemo``
    to isolate statistics.  When ``tree`` is given, the recursion tree is
    recorded under it.
    """
    choose = choose or max_degree_edge
    return _poincare(g, choose, memo if use_memo else None, tree)


def _poincare(g, choose, memo, parent):
    g = g.without_isolated_vertices()
    node = None
    if parent is not None:
        node = TreeNode(canonical_form(g).hex(), g.num_edges, "")
        parent.children.append(node)
    if g.has_loop():
        if node:
            node.kind = "loop"
        return PoincarePolynomial.zero()
    if g.num_edges == 0:
        if node:
            node.kind = "empty"
        return PoincarePolynomial.one()
    if g.has_multi_edge():
        if node:
            node.kind = "simplify"
        return _poincare(simplify_parallel(g)[0], choose, memo, node)
    key = canonical_form(g) if memo is not None else None
    if memo is not None:
        hit = memo.get(key)
        if hit is not None:
            if node:
                node.kind = "memo"
            return hit
    a = choose(g)
    if node:
        node.kind = "split"
        node.edge = a
    deleted = _poincare(delete_edge(g, a), choose, memo, node)
    contracted = _poincare(contract_edge(g, a)[0], choose, memo, node)
    result = deleted + contracted.times_q()
    if memo is not None:
        memo.put(key, result)
    return result


def delcon_tree(g: Multigraph, choose: Optional[EdgeChooser] = None) -> Tuple[PoincarePolynomial, TreeNode, PoincareMemo]:
    memo = PoincareMemo()
    root = TreeNode("", g.num_edges, "root")
    p = poincare(g, choose=choose, memo=memo, tree=root)
    return p, root.children[0], memo


# -- chromatic polynomial cross-check (external identity) -------------------


def count_colorings(g: Multigraph, k: int) -> int:
    """Number of proper k-colourings, by backtracking."""
    adj = {v: set() for v in g.vertices}
    for e in g.edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    order = sorted(g.vertices, key=lambda v: -len(adj[v]))
    color: Dict[int, int] = {}

    def go(i):
        if i == len(order):
            return 1
        v = order[i]
        used = {color[u] for u in adj[v] if u in color}
        total = 0
        for c in range(k):
            if c not in used:
                color[v] = c
                total += go(i + 1)
                del color[v]
        return total

    return go(0)


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> List[Fraction]:
    """Coefficients (low degree first) of the Lagrange interpolant."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(n):
            coeffs[t] += ys[i] * basis[t] / denom
    return coeffs


def chromatic_polynomial(g: Multigraph) -> List[int]:
    n = g.num_vertices
    pts = list(range(n + 1))
    c = interpolate(pts, [count_colorings(g, k) for k in pts])
    if any(x.denominator != 1 for x in c):
        raise InternalInconsistency("chromatic interpolation is not integral")
    return [int(x) for x in c]


def chromatic_crosscheck(g: Multigraph, poly: Optional[PoincarePolynomial] = None) -> dict:
    """Compare P_g(q) with (-q)^|V| chi_g(-1/q), chi_g from brute-force colouring counts.

    This identity is an external cross-check (standard for Orlik-Solomon
    type algebras), not a statement about R^r(G) proved here.
    """
    if not g.is_simple():
        raise ValueError("chromatic cross-check needs a simple graph")
    n = g.num_vertices
    chi = chromatic_polynomial(g)
    # (-q)^n sum_j a_j (-1/q)^j = sum_j (-1)^(n+j) a_j q^(n-j)
    predicted = [0] * (n + 1)
    for j, a in enumerate(chi):
        predicted[n - j] += (-1) ** (n + j) * a
    predicted_poly = PoincarePolynomial(tuple(predicted))
    actual = poly if poly is not None else poincare(g)
    return {
        "check": "chromatic",
        "external": True,
        "chromatic": chi,
        "predicted": list(predicted_poly.coeffs),
        "poincare": list(actual.coeffs),
        "pass": predicted_poly == actual,
    }
