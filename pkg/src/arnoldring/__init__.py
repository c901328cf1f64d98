"""Graded rings R^r(G) of graph-indexed configuration spaces in R^r.

R^r(G) is the exterior (r even) or square-zero commutative (r odd) algebra on
one generator per edge of G, modulo the ideal generated by the generalised
Arnold classes of the circuits of G.  It is isomorphic to the integral
cohomology ring H*(Conf_r(G)) of the space of n-tuples of points in R^r that
are pairwise distinct along the edges of G.
"""

from arnoldring.graph import (
    Circuit,
    Edge,
    GraphFormatError,
    Multigraph,
    canonical_form,
    contract_edge,
    delete_edge,
    enumerate_circuits,
    simplify_parallel,
)
from arnoldring.algebra import Element, Parity, TensorElement, multiply, normalize_word
from arnoldring.ideal import (
    arnold_class,
    betti_table,
    graded_presentation,
    ideal_spanning_set,
    nbc_candidate_basis,
    normal_form,
)
from arnoldring.poincare import PoincarePolynomial, chromatic_crosscheck, poincare

__all__ = [
    "Circuit",
    "Edge",
    "Element",
    "GraphFormatError",
    "Multigraph",
    "Parity",
    "PoincarePolynomial",
    "TensorElement",
    "arnold_class",
    "betti_table",
    "canonical_form",
    "chromatic_crosscheck",
    "contract_edge",
    "delete_edge",
    "enumerate_circuits",
    "graded_presentation",
    "ideal_spanning_set",
    "multiply",
    "nbc_candidate_basis",
    "normal_form",
    "normalize_word",
    "poincare",
    "simplify_parallel",
]
