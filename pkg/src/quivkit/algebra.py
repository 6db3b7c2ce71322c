"""The bound quiver algebra as a computable object.

A BoundQuiverAlgebra wraps a Groebner basis: its k-basis is the nontip
list, multiplication of basis paths is the normal form of their
composition, and the Jacobson radical is the span of the nontips of
positive length.  Right-module questions elsewhere in the package are
handled as left modules over ``opposite_algebra``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import GroebnerBasis, compute_groebner, normal_form
from .linalg import SpanBuilder
from .quiver import AlgebraSpec, Element, Path, Quiver, split_by_arrows

DEFAULT_DEGREE_CAP = 64


class BoundQuiverAlgebra:
    def __init__(self, spec: AlgebraSpec, gb: GroebnerBasis):
        self.spec = spec
        self.gb = gb
        self.field = gb.field
        self.quiver = spec.quiver
        self.basis: list[Path] = gb.nontips
        self.basis_index = gb.nontip_index
        self.idempotent_indices = [
            self.basis_index[self.quiver.trivial_path(v)] for v in range(self.quiver.n_vertices)
        ]
        self._mult_cache: dict[tuple[int, int], dict[int, object]] = {}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coords(self, z: Element) -> list:
        """Coordinates of the class of z over the nontip basis."""
        nf = normal_form(z, self.gb)
        vec = [self.field.zero] * self.dimension
        for p, c in nf.coeffs.items():
            vec[self.basis_index[p]] = c
        return vec

    def element(self, vec: list) -> Element:
        out = Element(self.quiver, self.field)
        for i, c in enumerate(vec):
            out.add_term(self.basis[i], c)
        return out

    def basis_product(self, i: int, j: int) -> dict[int, object]:
        """Sparse coordinates of (i-th nontip) * (j-th nontip)."""
        cached = self._mult_cache.get((i, j))
        if cached is not None:
            return cached
        p, q = self.basis[i], self.basis[j]
        out: dict[int, object] = {}
        if p.target == q.source:
            prod = Path(self.quiver, p.arrows + q.arrows, p.source, q.target)
            nf = normal_form(
                Element(self.quiver, self.field, {prod: self.field.one}), self.gb
            )
            out = {self.basis_index[r]: c for r, c in nf.coeffs.items()}
        self._mult_cache[(i, j)] = out
        return out

    def unit(self) -> list:
        vec = [self.field.zero] * self.dimension
        for i in self.idempotent_indices:
            vec[i] = self.field.one
        return vec

    def vertex_of_basis(self, i: int) -> tuple[int, int]:
        p = self.basis[i]
        return p.source, p.target

    def radical_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.length >= 1]


def build_algebra(spec: AlgebraSpec, degree_cap: int = DEFAULT_DEGREE_CAP) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(spec, compute_groebner(spec, degree_cap))


def multiply(algebra: BoundQuiverAlgebra, a: list, b: list) -> list:
    """Bilinear product of coordinate vectors."""
    n = algebra.dimension
    if len(a) != n or len(b) != n:
        raise ValueError(f"coordinate length mismatch (dimension {n})")
    fld = algebra.field
    zero = fld.zero
    out = [zero] * n
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if not cb:
                continue
            for k, ck in algebra.basis_product(i, j).items():
                out[k] = fld.add(out[k], fld.mul(fld.mul(ca, cb), ck))
    return out


def left_multiply_basis(algebra: BoundQuiverAlgebra, i: int, vec: list) -> list:
    fld = algebra.field
    zero = fld.zero
    out = [zero] * algebra.dimension
    for j, cb in enumerate(vec):
        if not cb:
            continue
        for k, ck in algebra.basis_product(i, j).items():
            out[k] = fld.add(out[k], fld.mul(cb, ck))
    return out


def right_multiply_basis(algebra: BoundQuiverAlgebra, vec: list, j: int) -> list:
    fld = algebra.field
    zero = fld.zero
    out = [zero] * algebra.dimension
    for i, ca in enumerate(vec):
        if not ca:
            continue
        for k, ck in algebra.basis_product(i, j).items():
            out[k] = fld.add(out[k], fld.mul(ca, ck))
    return out


def loewy_length(algebra: BoundQuiverAlgebra) -> int:
    """Least n with J^n = 0, by iterated span growth of arrow multiples."""
    fld = algebra.field
    n = algebra.dimension
    arrow_idx = [algebra.basis_index[algebra.quiver.arrow_path(a)] for a in range(algebra.quiver.n_arrows)]
    current = SpanBuilder(fld, n)
    for i in algebra.radical_indices():
        vec = [fld.zero] * n
        vec[i] = fld.one
        current.insert(vec)
    power = 1
    while current.dim > 0:
        nxt = SpanBuilder(fld, n)
        for row in current.rows:
            for ai in arrow_idx:
                nxt.insert(left_multiply_basis(algebra, ai, row))
        current = nxt
        power += 1
        if power > n + 1:
            raise AssertionError("radical failed to vanish; admissibility broken")
    return power


def radical_layer_dimensions(algebra: BoundQuiverAlgebra) -> list[int]:
    """Dimensions of J^m for m = 0, 1, ... down to zero."""
    fld = algebra.field
    n = algebra.dimension
    arrow_idx = [algebra.basis_index[algebra.quiver.arrow_path(a)] for a in range(algebra.quiver.n_arrows)]
    dims = [n]
    current = SpanBuilder(fld, n)
    for i in algebra.radical_indices():
        vec = [fld.zero] * n
        vec[i] = fld.one
        current.insert(vec)
    while current.dim > 0:
        dims.append(current.dim)
        nxt = SpanBuilder(fld, n)
        for row in current.rows:
            for ai in arrow_idx:
                nxt.insert(left_multiply_basis(algebra, ai, row))
        current = nxt
    dims.append(0)
    return dims


def corner_dimension(algebra: BoundQuiverAlgebra, i: int | str, j: int | str) -> int:
    """dim e_i * Lambda * e_j = number of nontip paths from i to j."""
    qv = algebra.quiver
    vi = qv.vertex_index[i] if isinstance(i, str) else i
    vj = qv.vertex_index[j] if isinstance(j, str) else j
    return sum(1 for p in algebra.basis if p.source == vi and p.target == vj)


def strongly_connected(quiver: Quiver) -> bool:
    """Every ordered vertex pair joined by a path (trivial paths count)."""
    n = quiver.n_vertices
    if n == 0:
        return True
    fwd = {v: set() for v in range(n)}
    bwd = {v: set() for v in range(n)}
    for a in quiver.arrows:
        fwd[a.source].add(a.target)
        bwd[a.target].add(a.source)

    def reach(start, adj):
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    return len(reach(0, fwd)) == n and len(reach(0, bwd)) == n


def split_witness(algebra: BoundQuiverAlgebra, arrow_set: frozenset[int]) -> Element | None:
    """A reduced basis element g with g_A not in I, or None when the ideal
    splits along the arrow set (Groebner form of pre-removability)."""
    for g in algebra.gb.elements:
        hit, _miss = split_by_arrows(g, arrow_set)
        if not normal_form(hit, algebra.gb).is_zero():
            return g
    return None


class NotPreRemovable(ValueError):
    def __init__(self, arrow_names: list[str], witness: Element):
        self.witness = witness
        super().__init__(
            f"arrow set {{{', '.join(arrow_names)}}} is not pre-removable; "
            f"witness basis element: {witness}"
        )


@dataclass
class SectionMap:
    """Canonical algebra section Gamma -> Lambda of an arrow-set quotient.

    Sends the class of a path avoiding the removed arrows to the class of
    the same path; stored as a (dim Gamma) x (dim Lambda) coordinate matrix.
    """

    source: "BoundQuiverAlgebra"  # Gamma
    target: "BoundQuiverAlgebra"  # Lambda
    removed: frozenset[int]  # arrow indices of Lambda's quiver
    matrix: list

    def apply(self, gamma_vec: list) -> list:
        fld = self.target.field
        zero = fld.zero
        out = [zero] * self.target.dimension
        for i, c in enumerate(gamma_vec):
            if not c:
                continue
            for j, m in enumerate(self.matrix[i]):
                if m:
                    out[j] = fld.add(out[j], fld.mul(c, m))
        return out


def canonical_quotient(
    algebra: BoundQuiverAlgebra,
    arrow_names: set[str] | list[str],
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> tuple[BoundQuiverAlgebra, SectionMap]:
    """Canonical representation k(Q \\ A)/I' of Lambda/<A+I> with its section.

    Requires A pre-removable; the quotient ideal is generated by the
    A-avoiding parts of the reduced Groebner basis.
    """
    qv = algebra.quiver
    arrow_set = qv.arrow_names(arrow_names)
    witness = split_witness(algebra, arrow_set)
    if witness is not None:
        raise NotPreRemovable(sorted(qv.arrows[i].name for i in arrow_set), witness)

    kept = [i for i in range(qv.n_arrows) if i not in arrow_set]
    sub_quiver = Quiver(
        list(qv.vertices),
        [(qv.arrows[i].name, qv.vertices[qv.arrows[i].source], qv.vertices[qv.arrows[i].target]) for i in kept],
    )
    fld = algebra.field
    relations = []
    for g in algebra.gb.elements:
        _hit, miss = split_by_arrows(g, arrow_set)
        if miss.is_zero():
            continue
        moved = Element(sub_quiver, fld)
        for p, c in miss.coeffs.items():
            names = [qv.arrows[a].name for a in p.arrows]
            moved.add_term(sub_quiver.path(names), c)
        relations.append(moved)

    sub_spec = AlgebraSpec(algebra.spec.field_spec, sub_quiver, tuple(relations))
    gamma = build_algebra(sub_spec, degree_cap)

    matrix = []
    for p in gamma.basis:
        if p.arrows:
            names = [sub_quiver.arrows[a].name for a in p.arrows]
            lifted = qv.path(names)
        else:
            lifted = qv.trivial_path(p.source)
        matrix.append(algebra.coords(Element(qv, fld, {lifted: fld.one})))
    return gamma, SectionMap(gamma, algebra, arrow_set, matrix)


def opposite_algebra(algebra: BoundQuiverAlgebra, degree_cap: int = DEFAULT_DEGREE_CAP) -> BoundQuiverAlgebra:
    """Same vertices and arrow names with every arrow and path reversed."""
    qv = algebra.quiver
    op_quiver = Quiver(
        list(qv.vertices),
        [(a.name, qv.vertices[a.target], qv.vertices[a.source]) for a in qv.arrows],
    )
    fld = algebra.field
    relations = []
    for rel in algebra.spec.relations:
        rev = Element(op_quiver, fld)
        for p, c in rel.coeffs.items():
            rev.add_term(
                Path(op_quiver, tuple(reversed(p.arrows)), p.target, p.source), c
            )
        relations.append(rev)
    op_spec = AlgebraSpec(algebra.spec.field_spec, op_quiver, tuple(relations))
    return build_algebra(op_spec, degree_cap)


def ideal_span(algebra: BoundQuiverAlgebra, arrow_names: set[str] | list[str]) -> SpanBuilder:
    """The two-sided ideal <A + I> as a subspace of the algebra, closed
    under left and right multiplication by all arrows."""
    qv = algebra.quiver
    arrow_set = qv.arrow_names(arrow_names)
    fld = algebra.field
    n = algebra.dimension
    span = SpanBuilder(fld, n)
    frontier = []
    for ai in sorted(arrow_set):
        vec = algebra.coords(Element(qv, fld, {qv.arrow_path(ai): fld.one}))
        if span.insert(vec):
            frontier.append(vec)
    arrow_idx = [algebra.basis_index[qv.arrow_path(a)] for a in range(qv.n_arrows)]
    while frontier:
        nxt = []
        for vec in frontier:
            for ai in arrow_idx:
                for product in (
                    left_multiply_basis(algebra, ai, vec),
                    right_multiply_basis(algebra, vec, ai),
                ):
                    if span.insert(product):
                        nxt.append(product)
        frontier = nxt
    return span
