"""Quivers, paths and path-algebra elements.

Composition is written left to right: ``compose(p, q)`` is "first p, then
q" and is defined exactly when ``p.target == q.source``.  This is the
convention under which a relation like alpha*epsilon - delta*alpha makes
sense for alpha: 1 -> 2 with loops delta at 1 and epsilon at 2.  The
opposite convention is equally common in the literature; everything in
this package consistently uses left-to-right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fields import Field, FieldSpec


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int  # vertex index
    target: int


class Quiver:
    """Finite quiver with named vertices and arrows in a fixed order.

    The declared order of vertices and arrows is significant: it seeds
    the admissible path order used by the Groebner engine.
    """

    def __init__(self, vertices: list[str], arrows: list[tuple[str, str, str]]):
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex names")
        self.vertices = list(vertices)
        self.vertex_index = {v: i for i, v in enumerate(vertices)}
        names = [a[0] for a in arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        if set(names) & set(vertices):
            raise ValueError("arrow names must differ from vertex names")
        self.arrows: list[Arrow] = []
        for name, src, tgt in arrows:
            if src not in self.vertex_index:
                raise ValueError(f"unknown vertex {src!r} in arrow {name!r}")
            if tgt not in self.vertex_index:
                raise ValueError(f"unknown vertex {tgt!r} in arrow {name!r}")
            self.arrows.append(Arrow(name, self.vertex_index[src], self.vertex_index[tgt]))
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def trivial_path(self, vertex: int | str) -> "Path":
        v = self.vertex_index[vertex] if isinstance(vertex, str) else vertex
        return Path(self, (), v, v)

    def arrow_path(self, arrow: int | str) -> "Path":
        i = self.arrow_index[arrow] if isinstance(arrow, str) else arrow
        a = self.arrows[i]
        return Path(self, (i,), a.source, a.target)

    def path(self, arrow_names: list[str]) -> "Path":
        p = None
        for name in arrow_names:
            step = self.arrow_path(name)
            p = step if p is None else compose(p, step)
            if p is None:
                raise ValueError(f"non-composable arrow sequence {arrow_names}")
        if p is None:
            raise ValueError("empty arrow sequence has no unique vertex")
        return p

    def arrow_names(self, names: set[str] | list[str]) -> frozenset[int]:
        """Resolve arrow names to indices, rejecting unknown ones."""
        out = set()
        for n in names:
            if n not in self.arrow_index:
                raise ValueError(f"unknown arrow {n!r}")
            out.add(self.arrow_index[n])
        return frozenset(out)

    def same_shape(self, other: "Quiver") -> bool:
        return self.vertices == other.vertices and [
            (a.name, a.source, a.target) for a in self.arrows
        ] == [(a.name, a.source, a.target) for a in other.arrows]


@dataclass(frozen=True)
class Path:
    """A path: trivial at a vertex, or a composable arrow-index sequence."""

    quiver: Quiver = field(compare=False, repr=False)
    arrows: tuple[int, ...]
    source: int
    target: int

    @property
    def length(self) -> int:
        return len(self.arrows)

    def order_key(self) -> tuple:
        # Length first, then left-lex on arrow indices; trivial paths are
        # ordered among themselves by vertex index.  This order is total,
        # multiplicative, and has the trivial paths at the bottom.
        if self.arrows:
            return (len(self.arrows), self.arrows)
        return (0, (self.source,))

    def passes_through(self, arrow_set: frozenset[int]) -> bool:
        return any(i in arrow_set for i in self.arrows)

    def subpaths(self) -> set[tuple[int, ...]]:
        n = len(self.arrows)
        return {self.arrows[i:j] for i in range(n) for j in range(i + 1, n + 1)}

    def __str__(self):
        if not self.arrows:
            return f"e_{self.quiver.vertices[self.source]}"
        return "*".join(self.quiver.arrows[i].name for i in self.arrows)


def compose(p: Path, q: Path) -> Path | None:
    """First p, then q; undefined (None) unless target(p) = source(q)."""
    if p.target != q.source:
        return None
    return Path(p.quiver, p.arrows + q.arrows, p.source, q.target)


class Element:
    """Finite k-linear combination of paths with nonzero coefficients."""

    __slots__ = ("quiver", "field", "coeffs")

    def __init__(self, quiver: Quiver, fld: Field, coeffs: dict[Path, object] | None = None):
        self.quiver = quiver
        self.field = fld
        self.coeffs: dict[Path, object] = {}
        if coeffs:
            for p, c in coeffs.items():
                if c:
                    self.coeffs[p] = c

    def is_zero(self) -> bool:
        return not self.coeffs

    def copy(self) -> "Element":
        out = Element(self.quiver, self.field)
        out.coeffs = dict(self.coeffs)
        return out

    def add_term(self, p: Path, c) -> None:
        if not c:
            return
        cur = self.coeffs.get(p)
        if cur is None:
            self.coeffs[p] = c
        else:
            s = self.field.add(cur, c)
            if s:
                self.coeffs[p] = s
            else:
                del self.coeffs[p]

    def add(self, other: "Element") -> "Element":
        out = self.copy()
        for p, c in other.coeffs.items():
            out.add_term(p, c)
        return out

    def scale(self, c) -> "Element":
        if c == self.field.zero:
            return Element(self.quiver, self.field)
        out = Element(self.quiver, self.field)
        out.coeffs = {p: self.field.mul(c, v) for p, v in self.coeffs.items()}
        return out

    def sub(self, other: "Element") -> "Element":
        return self.add(other.scale(self.field.neg(self.field.one)))

    def mul(self, other: "Element") -> "Element":
        out = Element(self.quiver, self.field)
        for p, c in self.coeffs.items():
            for q, d in other.coeffs.items():
                pq = compose(p, q)
                if pq is not None:
                    out.add_term(pq, self.field.mul(c, d))
        return out

    def support(self) -> list[Path]:
        return sorted(self.coeffs, key=Path.order_key)

    def tip(self) -> Path:
        if not self.coeffs:
            raise ValueError("zero element has no tip")
        return max(self.coeffs, key=Path.order_key)

    def is_parallel(self) -> bool:
        ends = {(p.source, p.target) for p in self.coeffs}
        return len(ends) <= 1

    def min_length(self) -> int:
        return min(p.length for p in self.coeffs) if self.coeffs else 0

    def __eq__(self, other):
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for p in sorted(self.coeffs, key=Path.order_key, reverse=True):
            c = self.coeffs[p]
            parts.append(f"({c})*{p}")
        return " + ".join(parts)


def split_by_arrows(z: Element, arrow_set: frozenset[int]) -> tuple[Element, Element]:
    """Split z = z_A + z_notA by whether paths pass through arrows in A."""
    hit = Element(z.quiver, z.field)
    miss = Element(z.quiver, z.field)
    for p, c in z.coeffs.items():
        (hit if p.passes_through(arrow_set) else miss).coeffs[p] = c
    return hit, miss


@dataclass(frozen=True)
class AlgebraSpec:
    """A parsed presentation kQ/I: field choice, quiver and relations."""

    field_spec: FieldSpec
    quiver: Quiver
    relations: tuple[Element, ...]

    def validate(self) -> None:
        for idx, rel in enumerate(self.relations):
            if rel.is_zero():
                raise ValueError(f"relation {idx + 1} is zero")
            if not rel.is_parallel():
                raise ValueError(f"relation {idx + 1} mixes non-parallel paths")
            if rel.min_length() < 2:
                raise ValueError(f"relation {idx + 1} contains a path of length < 2")

    def scalar_field(self) -> Field:
        return self.field_spec.field()


def make_scalar(fld: Field, numer: int, denom: int = 1):
    return fld.from_fraction(Fraction(numer, denom))
