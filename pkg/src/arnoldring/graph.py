"""Oriented multigraphs, deletion/contraction, circuits and canonical forms.

Edges carry stable integer ids.  Deleting or contracting an edge never
renumbers the surviving edges, so an edge id names "the same" edge in G, G\\a
and G/a, which is how the ring maps between the three graphs are written.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

EdgeRelabeling = Dict[int, int]


class GraphFormatError(ValueError):
    """Raised on malformed graph text."""


class Edge(NamedTuple):
    id: int
    tail: int
    head: int

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def ends(self) -> frozenset:
        return frozenset((self.tail, self.head))


@dataclass(frozen=True)
class Multigraph:
    """A finite multigraph with oriented, uniquely numbered edges.

    Loops and parallel edges are allowed.  Orientation is data: it only
    matters for the odd-r Arnold classes.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        es = tuple(Edge(*e) for e in self.edges)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex ids")
        vset = set(vs)
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge ids")
        for e in es:
            if e.tail not in vset or e.head not in vset:
                raise ValueError(f"edge {e.id} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Multigraph":
        """Graph on vertices 0..n-1 with edges numbered 0, 1, ... in order."""
        return cls(tuple(range(n)), tuple(Edge(i, t, h) for i, (t, h) in enumerate(pairs)))

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(f"unknown edge id {eid}")

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(e.id for e in self.edges))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def loops(self) -> List[int]:
        return [e.id for e in self.edges if e.is_loop]

    def has_loop(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def has_multi_edge(self) -> bool:
        seen = set()
        for e in self.edges:
            if e.is_loop:
                continue
            key = e.ends()
            if key in seen:
                return True
            seen.add(key)
        return False

    def is_simple(self) -> bool:
        return not self.has_loop() and not self.has_multi_edge()

    def degree(self, v: int) -> int:
        return sum((e.tail == v) + (e.head == v) for e in self.edges)

    def relabel_edges(self, mapping: Dict[int, int]) -> "Multigraph":
        """Rename edge ids through ``mapping`` (must be a bijection on ids)."""
        if sorted(mapping) != sorted(self.edge_ids) or len(set(mapping.values())) != len(mapping):
            raise ValueError("edge relabeling must be a bijection on the edge ids")
        return Multigraph(self.vertices, tuple(Edge(mapping[e.id], e.tail, e.head) for e in self.edges))

    def permute_vertices(self, sigma: Dict[int, int]) -> "Multigraph":
        return Multigraph(
            tuple(sigma[v] for v in self.vertices),
            tuple(Edge(e.id, sigma[e.tail], sigma[e.head]) for e in self.edges),
        )

    def reorient(self, flip: Iterable[int]) -> "Multigraph":
        flip = set(flip)
        return Multigraph(
            self.vertices,
            tuple(Edge(e.id, e.head, e.tail) if e.id in flip else e for e in self.edges),
        )

    def without_isolated_vertices(self) -> "Multigraph":
        used = {v for e in self.edges for v in (e.tail, e.head)}
        return Multigraph(tuple(v for v in self.vertices if v in used), self.edges)

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"vertices: {self.num_vertices}"]
        lines += [f"{e.id}: {e.tail} {e.head}" for e in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        n = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                m = re.fullmatch(r"vertices:\s*(\d+)", line)
                if not m:
                    raise GraphFormatError(f"line {lineno}: expected 'vertices: n' header")
                n = int(m.group(1))
                continue
            m = re.fullmatch(r"e?(\d+)\s*:\s*(-?\d+)\s+(-?\d+)", line)
            if not m:
                raise GraphFormatError(f"line {lineno}: expected 'edgeid: tail head'")
            eid, t, h = map(int, m.groups())
            if not (0 <= t < n and 0 <= h < n):
                raise GraphFormatError(f"line {lineno}: vertex id out of range [0, {n})")
            edges.append(Edge(eid, t, h))
        if n is None:
            raise GraphFormatError("missing 'vertices: n' header")
        try:
            return cls(tuple(range(n)), tuple(edges))
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from None


def delete_edge(g: Multigraph, a: int) -> Multigraph:
    g.edge(a)
    return Multigraph(g.vertices, tuple(e for e in g.edges if e.id != a))


def contract_edge(g: Multigraph, a: int) -> Tuple[Multigraph, EdgeRelabeling]:
    """Contract edge ``a``, merging its head into its tail.

    Every other edge keeps its id and orientation.  An edge parallel to ``a``
    becomes a loop (which kills the ring downstream).
    """
    e = g.edge(a)
    if e.is_loop:
        raise ValueError(f"cannot contract loop {a}")
    keep, gone = e.tail, e.head

    def f(v):
        return keep if v == gone else v

    edges = tuple(Edge(x.id, f(x.tail), f(x.head)) for x in g.edges if x.id != a)
    verts = tuple(v for v in g.vertices if v != gone)
    return Multigraph(verts, edges), {x.id: x.id for x in edges}


def simplify_parallel(g: Multigraph) -> Tuple[Multigraph, EdgeRelabeling]:
    """Keep the least-id edge of each parallel class.

    The relabeling sends every edge (kept or deleted) to its surviving
    representative.  Loops are left alone.
    """
    rep: Dict[frozenset, int] = {}
    relabel: EdgeRelabeling = {}
    for e in sorted(g.edges, key=lambda x: x.id):
        if e.is_loop:
            relabel[e.id] = e.id
            continue
        key = e.ends()
        rep.setdefault(key, e.id)
        relabel[e.id] = rep[key]
    survivors = set(relabel.values())
    return Multigraph(g.vertices, tuple(e for e in g.edges if e.id in survivors)), relabel


# -- circuits ---------------------------------------------------------------


@dataclass(frozen=True)
class Circuit:
    """A simple closed walk w_1..w_l through vertices v_1..v_l (v_{l+1} = v_1).

    ``signs[i]`` is +1 when edge w_i is stored as v_i -> v_{i+1}, else -1.
    """

    edge_ids: Tuple[int, ...]
    vertex_ids: Tuple[int, ...]
    signs: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @classmethod
    def from_walk(cls, g: Multigraph, start: int, edge_ids: Sequence[int]) -> "Circuit":
        """Build a circuit by walking ``edge_ids`` from vertex ``start``.

        Raises ValueError if the edges do not form a closed walk from ``start``.
        """
        verts, signs = [], []
        v = start
        for eid in edge_ids:
            e = g.edge(eid)
            verts.append(v)
            if e.tail == v:
                signs.append(1)
                v = e.head
            elif e.head == v:
                signs.append(-1)
                v = e.tail
            else:
                raise ValueError(f"edge {eid} is not incident to vertex {v}")
        if v != start:
            raise ValueError("walk does not close up")
        return cls(tuple(edge_ids), tuple(verts), tuple(signs))


def _incidence(g: Multigraph) -> Dict[int, List[Tuple[int, int]]]:
    inc: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for e in g.edges:
        if e.is_loop:
            continue
        inc[e.tail].append((e.id, e.head))
        inc[e.head].append((e.id, e.tail))
    return inc


def _normalized_circuit(g: Multigraph, edge_set: Iterable[int]) -> Circuit:
    """The representative of a simple cycle: start with its least edge, tail first."""
    edge_set = sorted(edge_set)
    first = g.edge(edge_set[0])
    if first.is_loop:
        return Circuit((first.id,), (first.tail,), (1,))
    remaining = set(edge_set[1:])
    order = [first.id]
    v = first.head
    while remaining:
        for eid in sorted(remaining):
            e = g.edge(eid)
            if v in (e.tail, e.head):
                order.append(eid)
                remaining.discard(eid)
                v = e.head if e.tail == v else e.tail
                break
        else:  # pragma: no cover - callers only pass cycles
            raise ValueError("edge set is not a cycle")
    return Circuit.from_walk(g, first.tail, order)


def enumerate_circuits(g: Multigraph) -> List[Circuit]:
    """All simple cycles of ``g``, one representative each, sorted by edge set.

    Loops give length-1 circuits and parallel pairs length-2 circuits.
    """
    found = set()
    for e in g.edges:
        if e.is_loop:
            found.add((e.id,))
    inc = _incidence(g)
    order = sorted(g.vertices)
    for s in order:
        # cycles whose least vertex is s
        stack: List[Tuple[int, List[int], set]] = [(s, [], {s})]
        while stack:
            v, path, seen = stack.pop()
            for eid, w in inc[v]:
                if path and eid == path[-1]:
                    continue
                if w == s and path:
                    if eid not in path:
                        found.add(tuple(sorted(path + [eid])))
                    continue
                if w > s and w not in seen:
                    stack.append((w, path + [eid], seen | {w}))
    return [_normalized_circuit(g, es) for es in sorted(found, key=lambda t: (len(t), t))]


# -- canonical form -----------------------------------------------------------


def _multiplicities(g: Multigraph):
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(idx)
    mult = [[0] * n for _ in range(n)]
    loops = [0] * n
    for e in g.edges:
        a, b = idx[e.tail], idx[e.head]
        if a == b:
            loops[a] += 1
        else:
            mult[a][b] += 1
            mult[b][a] += 1
    return n, mult, loops


def _refine(cells: List[List[int]], mult, loops) -> List[List[int]]:
    """Equitable refinement of an ordered partition, label independent."""
    while True:
        color = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                color[v] = ci
        new_cells: List[List[int]] = []
        for ci, cell in enumerate(cells):
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {}
            for v in cell:
                cnt = Counter()
                for u, m in enumerate(mult[v]):
                    if m:
                        cnt[(color[u], m)] += 1
                sig[v] = (loops[v], tuple(sorted(cnt.items())))
            for key in sorted(set(sig.values())):
                new_cells.append([v for v in cell if sig[v] == key])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _encode(perm: Sequence[int], mult, loops) -> bytes:
    n = len(perm)
    out = [n]
    out += [loops[v] for v in perm]
    for i in range(n):
        for j in range(i + 1, n):
            out.append(mult[perm[i]][perm[j]])
    if max(out) > 255:
        raise ValueError("multiplicity too large for canonical encoding")
    return bytes(out)


def canonical_form(g: Multigraph) -> bytes:
    """Byte string equal for two multigraphs iff they are isomorphic.

    Orientation and ids are ignored.  Individualisation-refinement search,
    taking the minimal encoding over all leaves; twin vertices in a cell are
    only individualised once.
    """
    n, mult, loops = _multiplicities(g)
    if n == 0:
        return bytes([0])
    start = _refine([list(range(n))], mult, loops)
    best: Optional[bytes] = None

    def twins(u, v):
        if loops[u] != loops[v]:
            return False
        return all(mult[u][x] == mult[v][x] for x in range(n) if x != u and x != v)

    def search(cells):
        nonlocal best
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code = _encode([c[0] for c in cells], mult, loops)
            if best is None or code < best:
                best = code
            return
        tried: List[int] = []
        for v in cells[target]:
            if any(twins(v, t) for t in tried):
                continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(split, mult, loops))

    search(start)
    return best


def iter_multigraphs(n: int, max_edges: int, loops: bool = False) -> Iterator[Multigraph]:
    """Every multigraph on n vertices with at most ``max_edges`` edges, up to isomorphism.

    Edges are numbered in lexicographic order of their (tail, head) pairs with
    tail <= head.
    """
    slots = [(i, j) for i in range(n) for j in range(i if loops else i + 1, n)]
    seen = set()
    for m in range(max_edges + 1):
        for combo in itertools.combinations_with_replacement(slots, m):
            g = Multigraph.from_edges(n, combo)
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                yield g
