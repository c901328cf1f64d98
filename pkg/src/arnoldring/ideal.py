"""Arnold classes, the ideal they generate, and the graded groups of R^r(G).

Each weight k piece R_k = Lambda_k / I_k is presented as Z^{monomials} modulo
the row lattice of the weight-k ideal spanning set, and its structure is read
off a Smith normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from arnoldring.algebra import Element, Monomial, Parity, merge_sign
from arnoldring.graph import Circuit, Multigraph, canonical_form, enumerate_circuits
from arnoldring.linalg import Quotient, is_unimodular, rank, solve_rational


class NbcValidationError(RuntimeError):
    """The no-broken-circuit candidate is not a basis of the quotient."""


class InternalInconsistency(RuntimeError):
    """Two routes that must agree did not."""


@dataclass(frozen=True)
class ArnoldClass:
    circuit: Circuit
    element: Element


def arnold_class(w: Circuit, parity: Parity) -> ArnoldClass:
    """A(w): alternating (r even) or orientation-signed (r odd) sum of e_w with one edge removed."""
    if len(w.signs) != w.length or len(w.vertex_ids) != w.length:
        raise ValueError("malformed circuit")
    if w.length == 1:
        return ArnoldClass(w, Element.one())
    total = Element()
    for i in range(w.length):
        word = w.edge_ids[:i] + w.edge_ids[i + 1:]
        coeff = (-1 if i % 2 == 0 else 1) if parity is Parity.EVEN else w.signs[i]
        total = total + Element.from_word(word, parity, coeff)
    return ArnoldClass(w, total)


@lru_cache(maxsize=None)
def circuits_of(g: Multigraph) -> Tuple[Circuit, ...]:
    return tuple(enumerate_circuits(g))


@lru_cache(maxsize=None)
def monomials(edge_ids: Tuple[int, ...], k: int) -> Tuple[Monomial, ...]:
    if k < 0:
        return ()
    return tuple(itertools.combinations(sorted(edge_ids), k))


def _times_monomial(m: Monomial, x: Element, parity: Parity) -> Dict[Monomial, int]:
    out: Dict[Monomial, int] = {}
    for b, c in x.items():
        s = merge_sign(m, b, parity)
        if s:
            key = tuple(sorted(m + b))
            out[key] = out.get(key, 0) + s * c
    return out


def ideal_spanning_set(g: Multigraph, parity: Parity, k: int,
                       extra: Sequence[Element] = ()) -> List[Element]:
    """All m * A(w) of weight k, normalised up to sign and deduplicated.

    ``extra`` adds further homogeneous generators (used to test that they do
    not enlarge the ideal).
    """
    return [Element(dict(t)) for t in _spanning_terms(g, parity, k, tuple(extra))]


def _spanning_terms(g: Multigraph, parity: Parity, k: int, extra: Tuple[Element, ...]):
    """The spanning set as sorted term tuples, leading coefficient positive."""
    if k < 0:
        raise ValueError("weight must be non-negative")
    if g.has_loop():
        return [((m, 1),) for m in monomials(g.edge_ids, k)]
    gens = [arnold_class(w, parity).element for w in circuits_of(g)] + list(extra)
    seen = set()
    out = []
    for a in gens:
        wt = a.weight
        if wt is None or wt > k:
            continue
        for m in monomials(g.edge_ids, k - wt):
            terms = sorted((mono, c) for mono, c in _times_monomial(m, a, parity).items() if c)
            if not terms:
                continue
            if terms[0][1] < 0:
                terms = [(mono, -c) for mono, c in terms]
            key = tuple(terms)
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


@dataclass(frozen=True)
class GradedPresentation:
    weight: int
    spanning_monomials: Tuple[Monomial, ...]
    relation_matrix: Tuple[Tuple[int, ...], ...]
    quotient: Quotient

    @property
    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.spanning_monomials)}

    @property
    def rank(self) -> int:
        """Free rank of R_k."""
        return self.quotient.free_rank

    @property
    def invariant_factors(self) -> List[int]:
        return list(self.quotient.snf.invariant_factors)

    @property
    def torsion(self) -> List[int]:
        return self.quotient.torsion

    def coords(self, x: Element) -> List[int]:
        idx = self.index
        v = [0] * len(self.spanning_monomials)
        for m, c in x.items():
            if len(m) != self.weight:
                raise ValueError(f"element is not of weight {self.weight}")
            v[idx[m]] += c
        return v

    def element(self, v: Sequence[int]) -> Element:
        return Element({m: c for m, c in zip(self.spanning_monomials, v) if c})

    def in_ideal(self, x: Element) -> bool:
        return self.quotient.contains(self.coords(x))

    def project(self, x: Element) -> List[int]:
        return self.quotient.project(self.coords(x))


def _build_presentation(g: Multigraph, parity: Parity, k: int,
                        extra: Sequence[Element] = ()) -> GradedPresentation:
    monos = monomials(g.edge_ids, k)
    idx = {m: i for i, m in enumerate(monos)}
    rows = []
    for terms in (_spanning_terms(g, parity, k, tuple(extra)) if k >= 0 else []):
        v = [0] * len(monos)
        for m, c in terms:
            v[idx[m]] = c
        rows.append(tuple(v))
    return GradedPresentation(k, monos, tuple(rows), Quotient.of(rows, len(monos)))


@lru_cache(maxsize=200_000)
def graded_presentation(g: Multigraph, parity: Parity, k: int) -> GradedPresentation:
    return _build_presentation(g, parity, k)


@dataclass(frozen=True)
class BettiTable:
    """Per weight k: free rank of R_k and its invariant factors > 1."""

    entries: Tuple[Tuple[int, int, Tuple[int, ...]], ...]

    @property
    def ranks(self) -> List[int]:
        return [r for _, r, _ in self.entries]

    @property
    def torsion(self) -> List[List[int]]:
        return [list(t) for _, _, t in self.entries]

    @property
    def is_free(self) -> bool:
        return all(not t for _, _, t in self.entries)

    def to_json_dict(self, g: Multigraph, parity: Parity) -> dict:
        return {
            "graph": canonical_form(g).hex(),
            "parity": parity.value,
            "ranks": self.ranks,
            "torsion": self.torsion,
        }


def betti_table(g: Multigraph, parity: Parity) -> BettiTable:
    """Ranks and torsion of R_k for k = 0..#edges, trailing zero groups trimmed."""
    entries = []
    for k in range(g.num_edges + 1):
        pres = graded_presentation(g, parity, k)
        entries.append((k, pres.rank, tuple(pres.torsion)))
    while len(entries) > 1 and entries[-1][1] == 0 and not entries[-1][2]:
        entries.pop()
    return BettiTable(tuple(entries))


def broken_circuits(g: Multigraph, order: Sequence[int]) -> List[frozenset]:
    pos = {e: i for i, e in enumerate(order)}
    if sorted(pos) != list(g.edge_ids):
        raise ValueError("edge order must list every edge exactly once")
    out = []
    for w in circuits_of(g):
        least = min(w.edge_ids, key=pos.__getitem__)
        out.append(frozenset(w.edge_ids) - {least})
    return out


def nbc_monomials(g: Multigraph, order: Sequence[int], k: int) -> List[Monomial]:
    """Weight-k monomials containing no broken circuit (unvalidated)."""
    if g.has_loop():
        raise ValueError("NBC monomials need a loop-free graph")
    bcs = broken_circuits(g, order)
    return [m for m in monomials(g.edge_ids, k) if not any(bc <= set(m) for bc in bcs)]


def _basis_matrix(g: Multigraph, parity: Parity, basis: Sequence[Monomial], k: int):
    pres = graded_presentation(g, parity, k)
    return pres, [pres.project(Element.monomial(m)) for m in basis]


def nbc_candidate_basis(g: Multigraph, order: Optional[Sequence[int]], k: int,
                        parity: Parity = Parity.EVEN) -> List[Monomial]:
    """NBC monomials of weight k, checked to be a Z-basis of R_k.

    Raises NbcValidationError when the count differs from the rank of R_k,
    when the images are dependent, or when they only span a finite-index
    subgroup.
    """
    if order is None:
        order = g.edge_ids
    basis = nbc_monomials(g, order, k)
    pres, q = _basis_matrix(g, parity, basis, k)
    if not pres.quotient.is_free:
        raise NbcValidationError(f"R_{k} has torsion {pres.torsion}; no Z-basis exists")
    if len(basis) != pres.rank:
        raise NbcValidationError(f"{len(basis)} NBC monomials but rank R_{k} = {pres.rank}")
    if rank(q, pres.rank) != len(basis):
        raise NbcValidationError(f"NBC monomials are dependent in R_{k}")
    if basis and not is_unimodular(q):
        raise NbcValidationError(f"NBC monomials span a proper finite-index subgroup of R_{k}")
    return basis


def normal_form(x: Element, g: Multigraph, parity: Parity,
                order: Optional[Sequence[int]] = None, weight: Optional[int] = None) -> List[int]:
    """Coordinates of x modulo the ideal in the validated NBC basis of its weight."""
    k = x.weight if weight is None else weight
    if k is None:
        if not x.is_zero():
            raise ValueError("normal_form needs a homogeneous element")
        k = 0
    basis = nbc_candidate_basis(g, order, k, parity)
    pres, q = _basis_matrix(g, parity, basis, k)
    if not basis:
        return []
    sol = solve_rational(q, pres.project(x))
    if sol is None or any(c.denominator != 1 for c in sol):
        raise InternalInconsistency("validated NBC basis gave a non-integral normal form")
    coeffs = [int(c) for c in sol]
    residue = x - Element({m: c for m, c in zip(basis, coeffs) if c})
    if not pres.in_ideal(residue):
        raise InternalInconsistency("normal form residue is not in the Arnold ideal")
    return coeffs


def arnold_classes_json(g: Multigraph, parity: Parity) -> List[dict]:
    return [
        {
            "edges": list(w.edge_ids),
            "vertices": list(w.vertex_ids),
            "signs": list(w.signs),
            "class": arnold_class(w, parity).element.to_text(),
        }
        for w in circuits_of(g)
    ]
