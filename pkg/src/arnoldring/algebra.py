"""Exact arithmetic in the algebra Lambda^r(G) on one generator per edge.

Only the parity of r matters.  For r even the generators have odd degree
r - 1 and anticommute (exterior algebra); for r odd they have even degree,
commute, and square to zero.  Degrees are stored in units of r - 1, so a
monomial's weight is its number of edges.

Monomials are strictly increasing tuples of edge ids; an Element is an
integer combination of monomials.
"""

from __future__ import annotations

import enum
import re
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, r: int) -> "Parity":
        if r < 2:
            raise ValueError("r must be at least 2")
        return cls.EVEN if r % 2 == 0 else cls.ODD

    @property
    def anticommuting(self) -> bool:
        return self is Parity.EVEN


def normalize_word(word: Sequence[int], parity: Parity) -> Tuple[Monomial, int]:
    """Sort a product of generators into a monomial.

    Returns ``(monomial, sign)``; sign is 0 when a generator repeats.
    """
    mono = tuple(sorted(word))
    if any(a == b for a, b in zip(mono, mono[1:])):
        return mono, 0
    if parity is Parity.ODD:
        return mono, 1
    inversions = 0
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] > word[j]:
                inversions += 1
    return mono, -1 if inversions & 1 else 1


def merge_sign(a: Monomial, b: Monomial, parity: Parity) -> int:
    """Sign of a*b relative to sorted(a + b); 0 if they share an edge."""
    if set(a) & set(b):
        return 0
    if parity is Parity.ODD:
        return 1
    # inversions between two sorted runs: pairs (x in a, y in b) with x > y
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return -1 if inv & 1 else 1


class Element:
    """An immutable integer combination of square-free monomials."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        clean: Dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if any(a >= b for a, b in zip(m, m[1:])):
                raise ValueError(f"monomial {m} is not strictly increasing")
            if c:
                clean[m] = clean.get(m, 0) + int(c)
                if not clean[m]:
                    del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, edges: Iterable[int], coeff: int = 1) -> "Element":
        return cls({tuple(sorted(edges)): coeff})

    @classmethod
    def one(cls) -> "Element":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def from_word(cls, word: Sequence[int], parity: Parity, coeff: int = 1) -> "Element":
        m, s = normalize_word(word, parity)
        return cls({m: s * coeff}) if s else cls()

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    @property
    def support(self) -> frozenset:
        return frozenset(e for m in self._terms for e in m)

    @property
    def weight(self) -> Optional[int]:
        """Common weight of all terms, or None if inhomogeneous or zero."""
        ws = {len(m) for m in self._terms}
        return ws.pop() if len(ws) == 1 else None

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, k: int) -> "Element":
        return Element({m: k * c for m, c in self._terms.items()})

    def __rmul__(self, k: int) -> "Element":
        if isinstance(k, int):
            return self.scale(k)
        return NotImplemented

    def map_edges(self, f: Mapping[int, int], parity: Parity) -> "Element":
        """Apply an edge substitution e_a -> e_f(a) and renormalise."""
        out: Dict[Monomial, int] = {}
        for m, c in self._terms.items():
            mm, s = normalize_word([f[a] for a in m], parity)
            if s:
                out[mm] = out.get(mm, 0) + s * c
        return Element(out)

    # -- text ----------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items()):
            mono = "".join(f"e{a}" for a in m) if m else "1"
            parts.append(f"{c:+d}·{mono}")
        return " ".join(parts)

    _TERM = re.compile(r"([+-]?\d+)[·*]((?:e\d+)+|1)")

    @classmethod
    def from_text(cls, text: str, parity: Optional[Parity] = None) -> "Element":
        """Parse the ``to_text`` format.

        Unsorted words are accepted when ``parity`` is given and are
        normalised with the appropriate sign.
        """
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        for tok in text.split():
            m = cls._TERM.fullmatch(tok)
            if not m:
                raise ValueError(f"bad term {tok!r}")
            coeff = int(m.group(1))
            word = [] if m.group(2) == "1" else [int(x) for x in re.findall(r"e(\d+)", m.group(2))]
            if parity is None:
                if any(a >= b for a, b in zip(word, word[1:])):
                    raise ValueError(f"term {tok!r} is not in normal order; pass a parity")
                out = out + cls({tuple(word): coeff})
            else:
                out = out + cls.from_word(word, parity, coeff)
        return out

    def __repr__(self):
        return f"Element({self.to_text()!r})"


def multiply(x: Element, y: Element, parity: Parity) -> Element:
    out: Dict[Monomial, int] = {}
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            s = merge_sign(a, b, parity)
            if s:
                m = tuple(sorted(a + b))
                out[m] = out.get(m, 0) + s * ca * cb
    return Element(out)


def product(factors: Iterable[Element], parity: Parity) -> Element:
    out = Element.one()
    for f in factors:
        out = multiply(out, f, parity)
    return out


class TensorElement(NamedTuple):
    """``x (x) 1 + y (x) e`` in Lambda(G/a) (x) Lambda[e], e of weight 1 and e*e = 0."""

    x: Element
    y: Element

    @classmethod
    def zero(cls) -> "TensorElement":
        return cls(Element(), Element())

    def __add__(self, other):  # type: ignore[override]
        return TensorElement(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return TensorElement(self.x - other.x, self.y - other.y)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()


def _koszul_twist(c: Element, parity: Parity) -> Element:
    """(1 (x) e) * (c (x) 1) = twist(c) (x) e."""
    if parity is Parity.ODD:
        return c
    return Element({m: (-k if len(m) & 1 else k) for m, k in c.items()})


def tensor_multiply(u: TensorElement, v: TensorElement, parity: Parity) -> TensorElement:
    """(a(x)1 + b(x)e)(c(x)1 + d(x)e) = ac(x)1 + (ad + b*twist(c))(x)e."""
    a, b = u
    c, d = v
    return TensorElement(
        multiply(a, c, parity),
        multiply(a, d, parity) + multiply(b, _koszul_twist(c, parity), parity),
    )
