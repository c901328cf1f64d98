import random

import networkx as nx
import pytest
import sympy

from arnoldring.algebra import Parity
from arnoldring.graph import Multigraph, canonical_form, iter_multigraphs
from arnoldring.ideal import InternalInconsistency, betti_table
from arnoldring.poincare import (
    PoincareMemo,
    PoincarePolynomial,
    chromatic_crosscheck,
    chromatic_polynomial,
    count_colorings,
    delcon_tree,
    interpolate,
    poincare,
)
from conftest import BOWTIE, K4, PARALLEL_TRIANGLE, TRIANGLE, complete, cycle, path, random_multigraph


def test_polynomial_basics():
    assert PoincarePolynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert PoincarePolynomial(()).is_zero()
    assert PoincarePolynomial((1, 1)) + PoincarePolynomial((0, 1, 1)) == PoincarePolynomial((1, 2, 1))
    assert PoincarePolynomial((1, 3, 2)).times_q().coeffs == (0, 1, 3, 2)
    assert PoincarePolynomial.zero().times_q().is_zero()
    assert PoincarePolynomial((1, 3, 2))(1) == 6
    assert str(PoincarePolynomial((1, 3, 2))) == "1 + 3q + 2q^2"
    assert PoincarePolynomial((1, 3, 2)).to_json_dict() == {"coeffs": [1, 3, 2], "variable": "q", "degree_step": "r-1"}


def test_base_cases():
    assert poincare(Multigraph.from_edges(4, [])).coeffs == (1,)
    assert poincare(Multigraph.from_edges(2, [(0, 1), (1, 1)])).is_zero()
    assert poincare(path(2)).coeffs == (1, 1)
    assert poincare(TRIANGLE).coeffs == (1, 3, 2)
    assert poincare(K4).coeffs == (1, 6, 11, 6)
    assert poincare(complete(5)).coeffs == (1, 10, 35, 50, 24)
    assert poincare(PARALLEL_TRIANGLE) == poincare(TRIANGLE)


def test_forests_and_cycles():
    # forest with m edges: (1+q)^m
    for m in range(1, 6):
        assert list(poincare(path(m + 1)).coeffs) == [int(x) for x in _binomials(m)]
    # n-cycles via the chromatic identity
    for n in range(3, 8):
        assert chromatic_crosscheck(cycle(n))["pass"]


def _binomials(m):
    row = [1]
    for _ in range(m):
        row = [a + b for a, b in zip(row + [0], [0] + row)]
    return row


def test_matches_snf_ranks_on_small_family():
    for n in range(1, 5):
        for g in iter_multigraphs(n, 5, loops=True):
            assert betti_table(g, Parity.EVEN).ranks == list(poincare(g).coeffs)


def test_independent_of_edge_choice():
    rng = random.Random(21)
    for _ in range(30):
        g = random_multigraph(rng, rng.randint(2, 6), rng.randint(1, 9))
        ref = poincare(g, use_memo=False)

        def pick(h):
            return rng.choice(h.edge_ids)

        assert poincare(g, choose=pick, memo=PoincareMemo()) == ref
        assert poincare(g, choose=lambda h: max(h.edge_ids), use_memo=False) == ref


def test_memo_on_and_off_agree():
    memo = PoincareMemo()
    for g in list(iter_multigraphs(5, 6))[::4]:
        assert poincare(g, memo=memo) == poincare(g, use_memo=False)
    assert memo.hits > 0 and len(memo) > 0


def test_memo_divergence_is_fatal():
    memo = PoincareMemo()
    key = canonical_form(TRIANGLE)
    memo.put(key, PoincarePolynomial((1, 3, 2)))
    memo.put(key, PoincarePolynomial((1, 3, 2)))
    with pytest.raises(InternalInconsistency):
        memo.put(key, PoincarePolynomial((1, 3, 3)))


def test_delcon_tree_shape():
    poly, tree, memo = delcon_tree(K4)
    assert poly.coeffs == (1, 6, 11, 6)
    assert tree.kind == "split" and tree.edges == 6 and len(tree.children) == 2
    kinds = set()

    def walk(node):
        kinds.add(node.kind)
        if node.kind == "split":
            assert len(node.children) == 2 and node.edge is not None
        for c in node.children:
            walk(c)

    walk(tree)
    assert "empty" in kinds and "simplify" in kinds
    d = tree.to_json_dict()
    assert d["kind"] == "split" and "children" in d


def test_colorings_and_interpolation():
    assert count_colorings(TRIANGLE, 3) == 6
    assert count_colorings(K4, 3) == 0
    assert count_colorings(path(3), 2) == 2
    assert interpolate([0, 1, 2], [1, 3, 7]) == [1, 1, 1]
    # chi(K_n) = k(k-1)...(k-n+1)
    assert chromatic_polynomial(TRIANGLE) == [0, 2, -3, 1]


@pytest.mark.parametrize("seed", range(20))
def test_chromatic_matches_networkx(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    h = nx.gnp_random_graph(n, rng.random(), seed=seed)
    g = Multigraph.from_edges(n, sorted(h.edges()))
    expected = nx.chromatic_polynomial(h)
    coeffs = sympy.Poly(expected, *expected.free_symbols).all_coeffs()[::-1] if expected.free_symbols else [expected]
    coeffs = [int(c) for c in coeffs]
    mine = chromatic_polynomial(g)
    assert mine[: len(coeffs)] == coeffs and not any(mine[len(coeffs):])
    assert chromatic_crosscheck(g)["pass"]


def test_chromatic_crosscheck_report():
    rep = chromatic_crosscheck(BOWTIE)
    assert rep["check"] == "chromatic" and rep["external"] is True and rep["pass"]
    rep = chromatic_crosscheck(TRIANGLE, PoincarePolynomial((1, 3, 1)))
    assert not rep["pass"]
    with pytest.raises(ValueError):
        chromatic_crosscheck(PARALLEL_TRIANGLE)
