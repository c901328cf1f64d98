"""Ring maps between R(G\\a), R(G), R(G/a) and R(G/a) (x) Lambda[e_a], and exact checks on them.

Edge ids survive deletion and contraction, so on monomials the inclusion
i_a and the composite p_a i_a are the identity, iota_a is x -> x (x) 1, and
psi_a splits a monomial on whether it contains a.  g_a is the e_a
coefficient of psi_a.

Every check works one weight k at a time on integer matrices.  R-level maps
are written in the free bases read off the Smith forms of the presentations,
so each check first demands that the groups involved are free.  A failed
check carries an integer witness vector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from arnoldring.algebra import Element, Monomial, Parity, TensorElement, multiply
from arnoldring.graph import Multigraph, canonical_form, contract_edge, delete_edge, enumerate_circuits
from arnoldring.ideal import arnold_class, graded_presentation, ideal_spanning_set, monomials
from arnoldring.linalg import Matrix, echelon, in_row_lattice, left_kernel, matmul

CHECKS = ("middle", "ses", "pullback", "gsurj", "square", "arnold", "delcon-commute")


# -- maps on elements -------------------------------------------------------


def map_include(x: Element, g: Multigraph, a: int) -> Element:
    """i_a: Lambda(G\\a) -> Lambda(G); the identity on surviving edge ids."""
    g.edge(a)
    if a in x.support:
        raise ValueError(f"edge {a} is not an edge of the deleted graph")
    return x


def map_p(x: Element, g: Multigraph, a: int) -> Element:
    """p_a i_a: Lambda(G\\a) -> Lambda(G/a), an isomorphism (identity on ids)."""
    return map_include(x, g, a)


def map_iota(x: Element) -> TensorElement:
    return TensorElement(x, Element())


def map_psi(x: Element, g: Multigraph, a: int, parity: Parity) -> TensorElement:
    """psi_a: e_b -> e_[b] (x) 1 for b != a, e_a -> 1 (x) e_a.

    A monomial containing a is rewritten with e_a moved to the far right,
    which costs (-1)^(number of its edges after a) when r is even.
    """
    if g.edge(a).is_loop:
        raise ValueError(f"cannot contract loop {a}")
    _, relabel = contract_edge(g, a)
    xs: Dict[Monomial, int] = {}
    ys: Dict[Monomial, int] = {}
    for m, c in x.items():
        if a not in m:
            key = tuple(sorted(relabel[b] for b in m))
            xs[key] = xs.get(key, 0) + c
        else:
            pos = m.index(a)
            sign = -1 if (parity is Parity.EVEN and (len(m) - pos - 1) % 2) else 1
            key = tuple(sorted(relabel[b] for b in m if b != a))
            ys[key] = ys.get(key, 0) + sign * c
    return TensorElement(Element(xs), Element(ys))


def map_g(x: Element, g: Multigraph, a: int, parity: Parity) -> Element:
    """g_a = pi o psi_a: the coefficient of (x) e_a, one weight lower."""
    return map_psi(x, g, a, parity).y


# -- matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class RingMapMatrix:
    """Matrix of a map at one weight; row i is the image of source basis vector i."""

    name: str
    weight: int
    parity: Parity
    rows: Tuple[Tuple[int, ...], ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def as_lists(self) -> Matrix:
        return [list(r) for r in self.rows]


def _lambda_coords(monos: Sequence[Monomial], x: Element) -> List[int]:
    idx = {m: i for i, m in enumerate(monos)}
    v = [0] * len(monos)
    for m, c in x.items():
        v[idx[m]] += c
    return v


class Square:
    """The graphs and weight-k presentations around one edge a of G."""

    def __init__(self, g: Multigraph, a: int, parity: Parity, k: int):
        if g.edge(a).is_loop:
            raise ValueError(f"edge {a} is a loop")
        self.g, self.a, self.parity, self.k = g, a, parity, k
        self.deleted = delete_edge(g, a)
        self.contracted = contract_edge(g, a)[0]
        self.P_del = graded_presentation(self.deleted, parity, k)
        self.P_g = graded_presentation(g, parity, k)
        self.P_con = graded_presentation(self.contracted, parity, k)
        self.P_con1 = graded_presentation(self.contracted, parity, k - 1)

    # Lambda level -----------------------------------------------------------

    def lambda_include(self) -> RingMapMatrix:
        rows = [
            tuple(_lambda_coords(self.P_g.spanning_monomials, map_include(Element.monomial(m), self.g, self.a)))
            for m in self.P_del.spanning_monomials
        ]
        return RingMapMatrix("i", self.k, self.parity, tuple(rows), len(self.P_g.spanning_monomials))

    def lambda_g(self) -> RingMapMatrix:
        rows = [
            tuple(_lambda_coords(self.P_con1.spanning_monomials,
                                 map_g(Element.monomial(m), self.g, self.a, self.parity)))
            for m in self.P_g.spanning_monomials
        ]
        return RingMapMatrix("g", self.k, self.parity, tuple(rows), len(self.P_con1.spanning_monomials))

    def _tensor_coords(self, t: TensorElement) -> List[int]:
        return (_lambda_coords(self.P_con.spanning_monomials, t.x)
                + _lambda_coords(self.P_con1.spanning_monomials, t.y))

    def lambda_psi(self) -> RingMapMatrix:
        rows = [
            tuple(self._tensor_coords(map_psi(Element.monomial(m), self.g, self.a, self.parity)))
            for m in self.P_g.spanning_monomials
        ]
        return RingMapMatrix("psi", self.k, self.parity, tuple(rows), self._tensor_dim())

    def lambda_iota(self) -> RingMapMatrix:
        rows = [tuple(self._tensor_coords(map_iota(Element.monomial(m)))) for m in self.P_con.spanning_monomials]
        return RingMapMatrix("iota", self.k, self.parity, tuple(rows), self._tensor_dim())

    def lambda_p(self) -> RingMapMatrix:
        rows = [
            tuple(_lambda_coords(self.P_con.spanning_monomials, map_p(Element.monomial(m), self.g, self.a)))
            for m in self.P_del.spanning_monomials
        ]
        return RingMapMatrix("p", self.k, self.parity, tuple(rows), len(self.P_con.spanning_monomials))

    def _tensor_dim(self) -> int:
        return len(self.P_con.spanning_monomials) + len(self.P_con1.spanning_monomials)

    # R level ------------------------------------------------------------------

    def tensor_relations(self) -> Matrix:
        n0 = len(self.P_con.spanning_monomials)
        n1 = len(self.P_con1.spanning_monomials)
        rows = [list(r) + [0] * n1 for r in self.P_con.quotient.relations]
        rows += [[0] * n0 + list(r) for r in self.P_con1.quotient.relations]
        return rows

    def tensor_project(self, v: Sequence[int]) -> List[int]:
        n0 = len(self.P_con.spanning_monomials)
        return self.P_con.quotient.project(v[:n0]) + self.P_con1.quotient.project(v[n0:])

    def tensor_free_rank(self) -> int:
        return self.P_con.rank + self.P_con1.rank


def _reduce(lam: RingMapMatrix, source, project: Callable[[Sequence[int]], List[int]], ncols: int) -> RingMapMatrix:
    """R-level matrix: lift each free basis class of the source, map, project."""
    rows = []
    for j in range(source.free_rank):
        lifted = matmul([source.lift(j)], lam.as_lists(), lam.ncols)[0]
        rows.append(tuple(project(lifted)))
    return RingMapMatrix(lam.name + "^R", lam.weight, lam.parity, tuple(rows), ncols)


# -- witnesses on free modules ----------------------------------------------


def injective_witness(m: Matrix, ncols: int) -> Optional[List[int]]:
    ker = left_kernel(m, ncols)
    return ker[0] if ker else None


def surjective_witness(m: Matrix, ncols: int) -> Optional[List[int]]:
    basis, _ = echelon(m, ncols)
    for j in range(ncols):
        e = [int(i == j) for i in range(ncols)]
        if not in_row_lattice(basis, e):
            return e
    return None


def composite_witness(m1: Matrix, m2: Matrix, ncols2: int) -> Optional[List[int]]:
    """A row index vector x with x m1 m2 != 0."""
    prod = matmul(m1, m2, ncols2)
    for i, row in enumerate(prod):
        if any(row):
            return [int(t == i) for t in range(len(m1))]
    return None


def exactness_witness(m1: Matrix, ncols1: int, m2: Matrix, ncols2: int) -> Optional[List[int]]:
    """A vector of ker(m2) outside im(m1), assuming m1 m2 = 0."""
    basis, _ = echelon(m1, ncols1)
    for v in left_kernel(m2, ncols2):
        if not in_row_lattice(basis, v):
            return v
    return None


def ideal_preserving_witness(relations: Matrix, lam: RingMapMatrix, target_relations: Matrix) -> Optional[List[int]]:
    """A relation of the source mapped outside the target relation lattice."""
    basis, _ = echelon(target_relations, lam.ncols)
    for r in relations:
        img = matmul([r], lam.as_lists(), lam.ncols)[0]
        if not in_row_lattice(basis, img):
            return list(r)
    return None


# -- reports ----------------------------------------------------------------


def _report(name: str, sq_or_g, a, k, parity, failures: List[Tuple[str, List[int]]], extra=None) -> dict:
    g = sq_or_g.g if isinstance(sq_or_g, Square) else sq_or_g
    rep = {
        "check": name,
        "graph": canonical_form(g).hex(),
        "edge": a,
        "weight": k,
        "parity": parity.value,
        "pass": not failures,
    }
    if failures:
        rep["detail"] = failures[0][0]
        rep["witness"] = failures[0][1]
    if extra:
        rep.update(extra)
    return rep


def _torsion_failures(*pres) -> List[Tuple[str, List[int]]]:
    out = []
    for p in pres:
        if p.torsion:
            out.append((f"R_{p.weight} has torsion", list(p.torsion)))
    return out


def check_middle_column(g: Multigraph, a: int, parity: Parity, k: int) -> dict:
    """0 -> Lambda(G\\a)_k -> Lambda(G)_k -> Lambda(G/a)_{k-1} -> 0 is exact."""
    sq = Square(g, a, parity, k)
    I, G = sq.lambda_include(), sq.lambda_g()
    fails = []
    w = injective_witness(I.as_lists(), I.ncols)
    if w is not None:
        fails.append(("i is not injective", w))
    w = composite_witness(I.as_lists(), G.as_lists(), G.ncols)
    if w is not None:
        fails.append(("g o i != 0", w))
    w = exactness_witness(I.as_lists(), I.ncols, G.as_lists(), G.ncols)
    if w is not None:
        fails.append(("ker g is not im i", w))
    w = surjective_witness(G.as_lists(), G.ncols)
    if w is not None:
        fails.append(("g is not surjective", w))
    return _report("middle", sq, a, k, parity, fails)


def r_level_maps(sq: Square) -> Dict[str, RingMapMatrix]:
    """i^R, g^R, psi^R, iota^R and (p i)^R in free bases."""
    return {
        "i": _reduce(sq.lambda_include(), sq.P_del.quotient, sq.P_g.quotient.project, sq.P_g.rank),
        "g": _reduce(sq.lambda_g(), sq.P_g.quotient, sq.P_con1.quotient.project, sq.P_con1.rank),
        "psi": _reduce(sq.lambda_psi(), sq.P_g.quotient, sq.tensor_project, sq.tensor_free_rank()),
        "iota": _reduce(sq.lambda_iota(), sq.P_con.quotient, sq.tensor_project, sq.tensor_free_rank()),
        "p": _reduce(sq.lambda_p(), sq.P_del.quotient, sq.P_con.quotient.project, sq.P_con.rank),
    }


def check_ses_R(g: Multigraph, a: int, parity: Parity, k: int) -> dict:
    """0 -> R(G\\a)_k -> R(G)_k -> R(G/a)_{k-1} -> 0 is exact, over Z."""
    sq = Square(g, a, parity, k)
    ranks = [sq.P_del.rank, sq.P_g.rank, sq.P_con1.rank]
    fails = _torsion_failures(sq.P_del, sq.P_g, sq.P_con1)
    if ranks[0] + ranks[2] != ranks[1]:
        fails.append(("rank additivity fails", ranks))
    for lam, src, dst in (
        (sq.lambda_include(), sq.P_del, sq.P_g),
        (sq.lambda_g(), sq.P_g, sq.P_con1),
    ):
        w = ideal_preserving_witness(src.quotient.relations, lam, dst.quotient.relations)
        if w is not None:
            fails.append((f"{lam.name} does not preserve the Arnold ideal", w))
    if not fails:
        maps = r_level_maps(sq)
        I, G = maps["i"], maps["g"]
        w = injective_witness(I.as_lists(), I.ncols)
        if w is not None:
            fails.append(("i^R is not injective", w))
        w = composite_witness(I.as_lists(), G.as_lists(), G.ncols)
        if w is not None:
            fails.append(("g^R o i^R != 0", w))
        w = exactness_witness(I.as_lists(), I.ncols, G.as_lists(), G.ncols)
        if w is not None:
            fails.append(("ker g^R is not im i^R", w))
        w = surjective_witness(G.as_lists(), G.ncols)
        if w is not None:
            fails.append(("g^R is not surjective", w))
    return _report("ses", sq, a, k, parity, fails, {"ranks": ranks})


def check_pullback(g: Multigraph, a: int, parity: Parity, k: int) -> dict:
    """R(G\\a)_k is the fibre product of psi^R and iota^R over R(G/a) (x) Lambda[e_a].

    Checks: psi^R i^R = iota^R (p i)^R; z -> (i z, p i z) is injective with
    image exactly {(x, y) : psi^R x = iota^R y}; i^R injective; psi^R onto.
    """
    sq = Square(g, a, parity, k)
    fails = _torsion_failures(sq.P_del, sq.P_g, sq.P_con, sq.P_con1)
    w = ideal_preserving_witness(sq.P_g.quotient.relations, sq.lambda_psi(), sq.tensor_relations())
    if w is not None:
        fails.append(("psi does not preserve the Arnold ideal", w))
    if not fails:
        maps = r_level_maps(sq)
        I, P, Psi, Iota = (maps[n].as_lists() for n in ("i", "p", "psi", "iota"))
        t = sq.tensor_free_rank()
        lhs = matmul(I, Psi, t)
        rhs = matmul(P, Iota, t)
        for j, (x, y) in enumerate(zip(lhs, rhs)):
            if x != y:
                fails.append(("square does not commute", [int(i == j) for i in range(len(I))]))
                break
        b, c = sq.P_g.rank, sq.P_con.rank
        phi = [ri + rp for ri, rp in zip(I, P)]
        diff = Psi + [[-v for v in row] for row in Iota]
        w = injective_witness(phi, b + c)
        if w is not None:
            fails.append(("z -> (i z, p z) is not injective", w))
        w = exactness_witness(phi, b + c, diff, t)
        if w is not None:
            fails.append(("fibre product element not hit", w))
        w = injective_witness(I, b)
        if w is not None:
            fails.append(("i^R is not injective", w))
        w = surjective_witness(Psi, t)
        if w is not None:
            fails.append(("psi^R is not surjective", w))
    return _report("pullback", sq, a, k, parity, fails)


def check_g_ideal_surjective(g: Multigraph, a: int, parity: Parity, k: int) -> dict:
    """g maps I(G)_k onto I(G/a)_{k-1} (x) e_a: every generator has a preimage."""
    sq = Square(g, a, parity, k)
    G = sq.lambda_g()
    image = matmul([list(r) for r in sq.P_g.relation_matrix], G.as_lists(), G.ncols) if sq.P_g.relation_matrix else []
    basis, _ = echelon(image, G.ncols)
    fails = []
    target = echelon(list(sq.P_con1.relation_matrix), G.ncols)[0]
    for row in basis:
        if not in_row_lattice(target, row):
            fails.append(("g(I(G)) is not inside I(G/a)", row))
            break
    for row in sq.P_con1.relation_matrix:
        if not in_row_lattice(basis, row):
            fails.append(("generator of I(G/a) (x) e_a has no preimage", list(row)))
            break
    return _report("gsurj", sq, a, k, parity, fails)


def check_arnold_preserved(g: Multigraph, a: int, parity: Parity) -> dict:
    """psi_a(A(w)) lies in the ideal generated by the A(u) (x) 1, for every circuit w of G."""
    con = contract_edge(g, a)[0]
    fails = []
    for w in enumerate_circuits(g):
        t = map_psi(arnold_class(w, parity).element, g, a, parity)
        for slot, el in (("x", t.x), ("y", t.y)):
            wt = el.weight
            if wt is None:
                continue
            pres = graded_presentation(con, parity, wt)
            if not pres.in_ideal(el):
                fails.append((f"psi(A(w)) {slot}-slot outside the ideal for circuit {list(w.edge_ids)}",
                              pres.coords(el)))
                break
    return _report("arnold", g, a, None, parity, fails)


def random_element(edges: Sequence[int], rng: random.Random, max_terms: int = 4) -> Element:
    terms: Dict[Monomial, int] = {}
    for _ in range(rng.randint(0, max_terms)):
        k = rng.randint(0, len(edges))
        m = tuple(sorted(rng.sample(list(edges), k)))
        terms[m] = terms.get(m, 0) + rng.randint(-9, 9)
    return Element(terms)


def check_square_random(g: Multigraph, a: int, parity: Parity, rng: random.Random, trials: int = 200) -> dict:
    """psi_a i_a == iota_a p_a i_a on random elements of Lambda(G\\a)."""
    deleted = delete_edge(g, a)
    fails = []
    for _ in range(trials):
        x = random_element(deleted.edge_ids, rng)
        lhs = map_psi(map_include(x, g, a), g, a, parity)
        rhs = map_iota(map_p(x, g, a))
        if lhs != rhs:
            fails.append((f"square fails on {x.to_text()}", []))
            break
    return _report("square", g, a, None, parity, fails)


def check_delcon_commute(g: Multigraph, a: int, b: int, parity: Parity, rng: random.Random,
                         trials: int = 50) -> dict:
    """g_b i_a == (i_a (x) id) g_b on Lambda(G\\a), with (G\\a)/b identified with (G/b)\\a."""
    fails = []
    left_graph = contract_edge(delete_edge(g, a), b)[0]
    right_graph = delete_edge(contract_edge(g, b)[0], a)
    if left_graph != right_graph:
        fails.append(("(G\\a)/b differs from (G/b)\\a", []))
    else:
        deleted = delete_edge(g, a)
        for _ in range(trials):
            x = random_element(deleted.edge_ids, rng)
            lhs = map_g(map_include(x, g, a), g, b, parity)
            rhs = map_include(map_g(x, deleted, b, parity), contract_edge(g, b)[0], a)
            if lhs != rhs:
                fails.append((f"diagram fails on {x.to_text()}", []))
                break
    return _report("delcon-commute", g, a, None, parity, fails, {"other_edge": b})


def run_checks(g: Multigraph, parity: Parity, checks: Sequence[str], weights: Optional[Sequence[int]] = None,
               seed: int = 0) -> List[dict]:
    """Every requested check over all non-loop edges (and weights), in a fixed order."""
    rng = random.Random(seed)
    if weights is None:
        weights = range(g.num_edges + 1)
    per_weight = {
        "middle": check_middle_column,
        "ses": check_ses_R,
        "pullback": check_pullback,
        "gsurj": check_g_ideal_surjective,
    }
    out = []
    edges = [e.id for e in sorted(g.edges, key=lambda e: e.id) if not e.is_loop]
    for name in checks:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}")
        for a in edges:
            if name in per_weight:
                for k in weights:
                    out.append(per_weight[name](g, a, parity, k))
            elif name == "square":
                out.append(check_square_random(g, a, parity, rng))
            elif name == "arnold":
                out.append(check_arnold_preserved(g, a, parity))
            else:
                for b in edges:
                    if b != a:
                        out.append(check_delcon_commute(g, a, b, parity, rng))
    return out
