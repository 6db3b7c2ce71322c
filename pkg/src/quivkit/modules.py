"""Finite-dimensional one-sided modules and bimodules.

A left module is stored as one vector space per vertex plus one matrix
per arrow.  With composition written left to right, the action matrix of
an arrow a maps the target-vertex component into the source-vertex
component: for a path p = a1*...*ak the operator is
act[a1] @ ... @ act[ak].

Right modules are left modules over the opposite algebra throughout the
package; the vertex grading then coincides with the right grading
M_i = M e_i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import (
    BoundQuiverAlgebra,
    SectionMap,
    ideal_span,
    left_multiply_basis,
    opposite_algebra,
    right_multiply_basis,
)
from .linalg import SpanBuilder, invert, mat_mul, mat_vec, nullspace, zeros
from .quiver import Element


def op_cache(algebra: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """Opposite algebra, built once per algebra instance."""
    cached = getattr(algebra, "_op_algebra", None)
    if cached is None:
        cached = opposite_algebra(algebra)
        algebra._op_algebra = cached
        cached._op_algebra = algebra
    return cached


@dataclass
class FdModule:
    algebra: BoundQuiverAlgebra
    dims: tuple[int, ...]
    action: dict[int, list]  # arrow index -> matrix M_[t(a)] -> M_[s(a)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def offsets(self) -> list[int]:
        out = [0]
        for d in self.dims:
            out.append(out[-1] + d)
        return out

    def path_action(self, arrows: tuple[int, ...], source: int, target: int) -> list:
        """Matrix of the path's action, M_[target] -> M_[source]."""
        fld = self.algebra.field
        if not arrows:
            n = self.dims[source]
            return [[fld.one if i == j else fld.zero for j in range(n)] for i in range(n)]
        mat = self.action[arrows[0]]
        for a in arrows[1:]:
            mat = mat_mul(fld, mat, self.action[a])
        rows, cols = self.dims[source], self.dims[target]
        # A zero-dimensional intermediate space collapses the product's
        # shape; the composite map is zero in that case.
        if len(mat) != rows or (rows and cols and len(mat[0]) != cols):
            return zeros(fld, rows, cols)
        return mat

    def validate(self) -> None:
        """Arrow matrices have the right shapes and every Groebner-basis
        relation acts as the zero map."""
        qv = self.algebra.quiver
        for ai, a in enumerate(qv.arrows):
            mat = self.action[ai]
            rows = len(mat)
            cols = len(mat[0]) if mat else 0
            if rows != self.dims[a.source] or (rows and cols != self.dims[a.target]):
                raise ValueError(f"arrow {a.name}: matrix shape mismatch")
        fld = self.algebra.field
        zero = fld.zero
        for g in self.algebra.gb.elements:
            some = next(iter(g.coeffs))
            acc = None
            for p, c in g.coeffs.items():
                mat = self.path_action(p.arrows, p.source, p.target)
                scaled = [[fld.mul(c, x) for x in row] for row in mat]
                if acc is None:
                    acc = scaled
                else:
                    acc = [
                        [fld.add(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(acc, scaled)
                    ]
            if acc and any(x != zero for row in acc for x in row):
                raise ValueError(f"relation {g} does not act as zero (source {some.source})")


def zero_module(algebra: BoundQuiverAlgebra) -> FdModule:
    n = algebra.quiver.n_vertices
    return FdModule(algebra, tuple(0 for _ in range(n)), {ai: [] for ai in range(algebra.quiver.n_arrows)})


def simple_module(algebra: BoundQuiverAlgebra, vertex: int | str) -> FdModule:
    qv = algebra.quiver
    v = qv.vertex_index[vertex] if isinstance(vertex, str) else vertex
    dims = tuple(1 if i == v else 0 for i in range(qv.n_vertices))
    action = {}
    for ai, a in enumerate(qv.arrows):
        action[ai] = zeros(algebra.field, dims[a.source], dims[a.target])
    return FdModule(algebra, dims, action)


@dataclass
class ProjectiveSum:
    """P = (+)_t Lambda e_[g_t] with explicit basis bookkeeping.

    Basis elements are pairs (slot, nontip index with target g_slot),
    listed slot-major; per-vertex coordinates group them by path source.
    """

    module: FdModule
    slots: list[int]  # vertex of each summand
    basis_by_vertex: list[list[tuple[int, int]]]  # per vertex: (slot, algebra basis idx)

    def flat_basis(self) -> list[tuple[int, int]]:
        out = []
        for per in self.basis_by_vertex:
            out.extend(per)
        return out


def projective_sum(algebra: BoundQuiverAlgebra, slots: list[int]) -> ProjectiveSum:
    qv = algebra.quiver
    fld = algebra.field
    basis_by_vertex: list[list[tuple[int, int]]] = [[] for _ in range(qv.n_vertices)]
    for slot, g in enumerate(slots):
        for bi, p in enumerate(algebra.basis):
            if p.target == g:
                basis_by_vertex[p.source].append((slot, bi))
    for per in basis_by_vertex:
        per.sort()
    index = {}
    for v, per in enumerate(basis_by_vertex):
        for k, key in enumerate(per):
            index[key] = (v, k)
    dims = tuple(len(per) for per in basis_by_vertex)
    action = {}
    for ai, a in enumerate(qv.arrows):
        arrow_basis = algebra.basis_index[qv.arrow_path(ai)]
        mat = zeros(fld, dims[a.source], dims[a.target])
        for col, (slot, bi) in enumerate(basis_by_vertex[a.target]):
            for k, c in algebra.basis_product(arrow_basis, bi).items():
                _, row = index[(slot, k)]
                mat[row][col] = c
        action[ai] = mat
    return ProjectiveSum(FdModule(algebra, dims, action), list(slots), basis_by_vertex)


@dataclass
class Submodule:
    """A submodule presented by echelon basis vectors inside a parent."""

    module: FdModule
    spans: list[SpanBuilder]  # per vertex, rows are parent-coordinates

    def inclusion_vectors(self, vertex: int) -> list:
        return self.spans[vertex].rows


def submodule_from_vectors(parent: FdModule, vectors_by_vertex: list[list]) -> Submodule:
    """Close nothing: callers supply vectors already spanning a submodule."""
    fld = parent.algebra.field
    spans = []
    for v in range(len(parent.dims)):
        sb = SpanBuilder(fld, parent.dims[v])
        for vec in vectors_by_vertex[v]:
            sb.insert(vec)
        spans.append(sb)
    dims = tuple(sb.dim for sb in spans)
    action = {}
    for ai, a in enumerate(parent.algebra.quiver.arrows):
        src, tgt = a.source, a.target
        mat = zeros(fld, dims[src], dims[tgt])
        for col, vec in enumerate(spans[tgt].rows):
            image = mat_vec(fld, parent.action[ai], vec)
            coords = spans[src].coordinates(image)
            if coords is None:
                raise AssertionError("vectors do not span a submodule")
            for row, c in enumerate(coords):
                mat[row][col] = c
        action[ai] = mat
    return Submodule(FdModule(parent.algebra, dims, action), spans)


def ideal_module(
    algebra: BoundQuiverAlgebra, arrow_names: set[str] | list[str], side: str
) -> FdModule:
    """The ideal <A + I> with its left or right module structure.

    For the right side the module is constructed over the opposite
    algebra, so its vertex grading is M e_i.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    base = algebra if side == "left" else op_cache(algebra)
    span = ideal_span(base, arrow_names)
    return module_from_span_rows(base, span.rows)


def regular_module(algebra: BoundQuiverAlgebra, side: str = "left") -> FdModule:
    base = algebra if side == "left" else op_cache(algebra)
    slots = list(range(base.quiver.n_vertices))
    return projective_sum(base, slots).module


def restrict_along_section(module: FdModule, section: SectionMap) -> FdModule:
    """Pull a module over Lambda back to the canonical quotient Gamma.

    The canonical section sends every surviving arrow class to the class
    of the same arrow, so restriction keeps the vertex spaces and drops
    the matrices of the removed arrows.
    """
    gamma = section.source
    if module.algebra.quiver.vertices != gamma.quiver.vertices:
        raise ValueError("section and module disagree on vertices")
    return restrict_to_algebra(module, gamma)


def restrict_to_algebra(module: FdModule, smaller: BoundQuiverAlgebra) -> FdModule:
    """Restriction by arrow-name matching (used for both sides)."""
    name_to_idx = {a.name: i for i, a in enumerate(module.algebra.quiver.arrows)}
    action = {}
    for gi, ga in enumerate(smaller.quiver.arrows):
        action[gi] = [row[:] for row in module.action[name_to_idx[ga.name]]]
    return FdModule(smaller, module.dims, action)


@dataclass
class IsoResult:
    kind: str  # "yes" | "no" | "inconclusive"
    witness: list | None = None  # per-vertex invertible blocks
    reason: str = ""
    seed: int = 0
    tries: int = 0

    @property
    def certified_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def certified_no(self) -> bool:
        return self.kind == "no"


def hom_space(m: FdModule, n: FdModule) -> list[list]:
    """Basis of Hom(M, N): per-vertex blocks flattened into one vector."""
    fld = m.algebra.field
    qv = m.algebra.quiver
    dims_m, dims_n = m.dims, n.dims
    block_offsets = [0]
    for v in range(qv.n_vertices):
        block_offsets.append(block_offsets[-1] + dims_n[v] * dims_m[v])
    total = block_offsets[-1]
    if total == 0:
        return []

    def tpos(v, r, c):
        return block_offsets[v] + r * dims_m[v] + c

    rows = []
    zero = fld.zero
    for ai, a in enumerate(qv.arrows):
        s, t = a.source, a.target
        am, an = m.action[ai], n.action[ai]
        # T_s @ am - an @ T_t = 0, entry (r, c) in N_s x M_t
        for r in range(dims_n[s]):
            for c in range(dims_m[t]):
                row = [zero] * total
                for k in range(dims_m[s]):
                    if am[k][c]:
                        row[tpos(s, r, k)] = fld.add(row[tpos(s, r, k)], am[k][c])
                for l in range(dims_n[t]):
                    if an[r][l]:
                        row[tpos(t, l, c)] = fld.sub(row[tpos(t, l, c)], an[r][l])
                if any(row):
                    rows.append(row)
    if not rows:
        basis = []
        for i in range(total):
            vec = [zero] * total
            vec[i] = fld.one
            basis.append(vec)
        return basis
    return nullspace(fld, rows, total)


def _unflatten(m: FdModule, n: FdModule, vec: list) -> list[list]:
    fld = m.algebra.field
    blocks = []
    pos = 0
    for v in range(len(m.dims)):
        block = zeros(fld, n.dims[v], m.dims[v])
        for r in range(n.dims[v]):
            for c in range(m.dims[v]):
                block[r][c] = vec[pos]
                pos += 1
        blocks.append(block)
    return blocks


def _blocks_invertible(fld, blocks: list[list]) -> bool:
    for block in blocks:
        if len(block) != (len(block[0]) if block else 0) and block:
            return False
        if block and invert(fld, block) is None:
            return False
    return True


def _shaped(fld, mat: list, rows: int, cols: int) -> list:
    """Restore explicit (rows x cols) shape lost by empty-matrix products."""
    if len(mat) == rows and (rows == 0 or cols == 0 or (mat and len(mat[0]) == cols)):
        if rows and cols:
            return mat
    return zeros(fld, rows, cols)


def verify_intertwiner(m: FdModule, n: FdModule, blocks: list[list]) -> bool:
    """Independent check that blocks form an invertible module map."""
    fld = m.algebra.field
    if m.dims != n.dims:
        return False
    if not _blocks_invertible(fld, blocks):
        return False
    for ai, a in enumerate(m.algebra.quiver.arrows):
        s, t = a.source, a.target
        rows, cols = n.dims[s], m.dims[t]
        left = _shaped(fld, mat_mul(fld, blocks[s], m.action[ai]), rows, cols)
        right = _shaped(fld, mat_mul(fld, n.action[ai], blocks[t]), rows, cols)
        if left != right:
            return False
    return True


def module_iso(m: FdModule, n: FdModule, seed: int = 0, tries: int = 200) -> IsoResult:
    """Isomorphism search: certified yes via an explicit intertwiner,
    certified no via structural obstructions, else inconclusive."""
    fld = m.algebra.field
    if m.dims != n.dims:
        return IsoResult("no", reason="different dimension vectors", seed=seed)
    if m.total_dim == 0:
        return IsoResult("yes", witness=[[] for _ in m.dims], seed=seed)
    if m.action == n.action:
        from .linalg import identity

        return IsoResult("yes", witness=[identity(fld, d) for d in m.dims], seed=seed)
    homs = hom_space(m, n)
    if not homs:
        return IsoResult("no", reason="Hom(M, N) = 0", seed=seed)
    back = hom_space(n, m)
    if len(homs) != len(back):
        return IsoResult("no", reason="Hom dimensions are asymmetric", seed=seed)
    endo_m = hom_space(m, m)
    endo_n = hom_space(n, n)
    if len(endo_m) != len(endo_n):
        return IsoResult("no", reason="endomorphism dimensions differ", seed=seed)

    for vec in homs:
        blocks = _unflatten(m, n, vec)
        if _blocks_invertible(fld, blocks):
            return IsoResult("yes", witness=blocks, seed=seed)

    zero = fld.zero
    width = len(homs[0])

    def combine(coeffs) -> list:
        out = [zero] * width
        for c, basis_vec in zip(coeffs, homs):
            if not c:
                continue
            for i, x in enumerate(basis_vec):
                if x:
                    out[i] = fld.add(out[i], fld.mul(c, x))
        return out

    attempts = 0
    if fld.char > 0 and len(homs) <= 4:
        # Full enumeration: |Hom| = p^dim <= p^4 elements.
        def rec(idx, coeffs):
            nonlocal attempts
            if idx == len(homs):
                attempts += 1
                blocks = _unflatten(m, n, combine(coeffs))
                if _blocks_invertible(fld, blocks):
                    return blocks
                return None
            for c in range(fld.char):
                got = rec(idx + 1, coeffs + [c])
                if got is not None:
                    return got
            return None

        found = rec(0, [])
        if found is not None:
            return IsoResult("yes", witness=found, seed=seed, tries=attempts)
        return IsoResult("no", reason="exhausted the Hom space", seed=seed, tries=attempts)

    rng = random.Random(seed)
    for _ in range(tries):
        attempts += 1
        if fld.char == 0:
            coeffs = [fld.from_int(rng.randint(-3, 3)) for _ in homs]
        else:
            coeffs = [fld.from_int(rng.randrange(fld.char)) for _ in homs]
        blocks = _unflatten(m, n, combine(coeffs))
        if _blocks_invertible(fld, blocks):
            return IsoResult("yes", witness=blocks, seed=seed, tries=attempts)
    return IsoResult(
        "inconclusive",
        reason=f"no invertible intertwiner after {attempts} samples",
        seed=seed,
        tries=attempts,
    )


@dataclass
class FdBimodule:
    """A space with commuting left and right structures over one algebra.

    The right structure is recorded as matrices for the same arrow names
    (acting on the right); views expose genuine FdModules, the right one
    over the opposite algebra.
    """

    algebra: BoundQuiverAlgebra
    tags: list[tuple[int, int]]  # per basis element: (left vertex, right vertex)
    left_action: dict[int, list]  # arrow -> total_dim x total_dim matrix
    right_action: dict[int, list]

    @property
    def total_dim(self) -> int:
        return len(self.tags)

    def left_support(self) -> set[int]:
        return {i for i, _ in self.tags}

    def right_support(self) -> set[int]:
        return {j for _, j in self.tags}

    def _view(self, which: str, base: BoundQuiverAlgebra) -> FdModule:
        qv = base.quiver
        fld = base.field
        pick = (lambda tag: tag[0]) if which == "left" else (lambda tag: tag[1])
        per_vertex = [[] for _ in range(qv.n_vertices)]
        for idx, tag in enumerate(self.tags):
            per_vertex[pick(tag)].append(idx)
        dims = tuple(len(per) for per in per_vertex)
        actions = self.left_action if which == "left" else self.right_action
        name_to_local = {a.name: i for i, a in enumerate(qv.arrows)}
        own_names = {a.name: i for i, a in enumerate(self.algebra.quiver.arrows)}
        act = {}
        for name, li in name_to_local.items():
            full = actions[own_names[name]]
            a = qv.arrows[li]
            rows_idx = per_vertex[a.source]
            cols_idx = per_vertex[a.target]
            act[li] = [[full[r][c] for c in cols_idx] for r in rows_idx]
        return FdModule(base, dims, act)

    def left_module(self) -> FdModule:
        return self._view("left", self.algebra)

    def right_module(self) -> FdModule:
        return self._view("right", op_cache(self.algebra))

    def validate(self) -> None:
        fld = self.algebra.field
        for ai in self.left_action:
            for bj in self.right_action:
                lhs = mat_mul(fld, self.left_action[ai], self.right_action[bj])
                rhs = mat_mul(fld, self.right_action[bj], self.left_action[ai])
                if lhs != rhs:
                    raise ValueError("left and right actions do not commute")
        self.left_module().validate()
        self.right_module().validate()


def ideal_bimodule(algebra: BoundQuiverAlgebra, arrow_names: set[str] | list[str]) -> FdBimodule:
    """<A + I> with both structures, inside the regular bimodule."""
    span = ideal_span(algebra, arrow_names)
    fld = algebra.field
    tags = []
    for row in span.rows:
        support = next(i for i, c in enumerate(row) if c != fld.zero)
        p = algebra.basis[support]
        tags.append((p.source, p.target))
    qv = algebra.quiver
    left_action, right_action = {}, {}
    for ai in range(qv.n_arrows):
        arrow_basis = algebra.basis_index[qv.arrow_path(ai)]
        lmat = zeros(fld, span.dim, span.dim)
        rmat = zeros(fld, span.dim, span.dim)
        for col, vec in enumerate(span.rows):
            for mat, image in (
                (lmat, left_multiply_basis(algebra, arrow_basis, vec)),
                (rmat, right_multiply_basis(algebra, vec, arrow_basis)),
            ):
                coords = span.coordinates(image)
                if coords is None:
                    raise AssertionError("ideal span not closed")
                for r, c in enumerate(coords):
                    mat[r][col] = c
        left_action[ai] = lmat
        right_action[ai] = rmat
    return FdBimodule(algebra, tags, left_action, right_action)


def restrict_bimodule(bim: FdBimodule, smaller: BoundQuiverAlgebra) -> FdBimodule:
    """Restrict both structures along the canonical section (name match)."""
    own_names = {a.name: i for i, a in enumerate(bim.algebra.quiver.arrows)}
    left, right = {}, {}
    for gi, ga in enumerate(smaller.quiver.arrows):
        left[gi] = [row[:] for row in bim.left_action[own_names[ga.name]]]
        right[gi] = [row[:] for row in bim.right_action[own_names[ga.name]]]
    return FdBimodule(smaller, list(bim.tags), left, right)


class QuotientSpace:
    """F / R with canonical coordinates on the non-pivot positions."""

    def __init__(self, fld, width: int, relations: list[list]):
        self.field = fld
        self.width = width
        self.span = SpanBuilder(fld, width)
        for rel in relations:
            self.span.insert(rel)
        pivots = set(self.span.pivots)
        self.free = [c for c in range(width) if c not in pivots]
        self.free_pos = {c: i for i, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, vec: list) -> list:
        reduced = self.span._reduce(vec)
        return [reduced[c] for c in self.free]


def bimodule_tensor(p: FdBimodule, q: FdBimodule) -> FdBimodule:
    """P (x)_Gamma Q with the left structure of P and right structure of Q."""
    if p.algebra is not q.algebra and p.algebra.quiver is not q.algebra.quiver:
        raise ValueError("tensor factors live over different algebras")
    alg = p.algebra
    fld = alg.field
    pairs = [
        (i, j)
        for i in range(p.total_dim)
        for j in range(q.total_dim)
        if p.tags[i][1] == q.tags[j][0]
    ]
    pos = {pair: k for k, pair in enumerate(pairs)}
    width = len(pairs)
    zero = fld.zero

    relations = []
    for ai, a in enumerate(alg.quiver.arrows):
        ra = p.right_action[ai]
        la = q.left_action[ai]
        for i in range(p.total_dim):
            if p.tags[i][1] != a.source:
                continue
            for j in range(q.total_dim):
                if q.tags[j][0] != a.target:
                    continue
                vec = [zero] * width
                for r in range(p.total_dim):
                    c = ra[r][i]
                    if c != zero and (r, j) in pos:
                        vec[pos[(r, j)]] = fld.add(vec[pos[(r, j)]], c)
                for s in range(q.total_dim):
                    c = la[s][j]
                    if c != zero and (i, s) in pos:
                        vec[pos[(i, s)]] = fld.sub(vec[pos[(i, s)]], c)
                if any(x != zero for x in vec):
                    relations.append(vec)
    quo = QuotientSpace(fld, width, relations)
    tags = [(p.tags[pairs[k][0]][0], q.tags[pairs[k][1]][1]) for k in quo.free]

    def act_matrix(action_on, side) -> dict[int, list]:
        out = {}
        for ai in range(alg.quiver.n_arrows):
            mat = zeros(fld, quo.dim, quo.dim)
            for col, k in enumerate(quo.free):
                i, j = pairs[k]
                vec = [zero] * width
                if side == "left":
                    la = p.left_action[ai]
                    for r in range(p.total_dim):
                        c = la[r][i]
                        if c != zero and (r, j) in pos:
                            vec[pos[(r, j)]] = fld.add(vec[pos[(r, j)]], c)
                else:
                    ra = q.right_action[ai]
                    for s in range(q.total_dim):
                        c = ra[s][j]
                        if c != zero and (i, s) in pos:
                            vec[pos[(i, s)]] = fld.add(vec[pos[(i, s)]], c)
                for row, c in enumerate(quo.project(vec)):
                    mat[row][col] = c
            out[ai] = mat
        return out

    return FdBimodule(alg, tags, act_matrix(p.left_action, "left"), act_matrix(q.right_action, "right"))


def module_from_span_rows(base: BoundQuiverAlgebra, rows: list[list]) -> FdModule:
    """Left-module structure on a subspace of the algebra given by echelon
    rows in algebra coordinates, each supported on a single source vertex."""
    fld = base.field
    nverts = base.quiver.n_vertices
    per_vertex_spans = []
    by_vertex: list[list] = [[] for _ in range(nverts)]
    for row in rows:
        support = next(i for i, c in enumerate(row) if c != fld.zero)
        by_vertex[base.basis[support].source].append(row)
    for v in range(nverts):
        sb = SpanBuilder(fld, base.dimension)
        for row in by_vertex[v]:
            sb.insert(row)
        per_vertex_spans.append(sb)
    dims = tuple(sb.dim for sb in per_vertex_spans)
    action = {}
    for ai, a in enumerate(base.quiver.arrows):
        arrow_basis = base.basis_index[base.quiver.arrow_path(ai)]
        mat = zeros(fld, dims[a.source], dims[a.target])
        for col, vec in enumerate(per_vertex_spans[a.target].rows):
            image = left_multiply_basis(base, arrow_basis, vec)
            coords = per_vertex_spans[a.source].coordinates(image)
            if coords is None:
                raise AssertionError("span is not closed under the action")
            for row_i, c in enumerate(coords):
                mat[row_i][col] = c
        action[ai] = mat
    return FdModule(base, dims, action)


def cyclic_module(
    algebra: BoundQuiverAlgebra, elements: list[Element], side: str = "left"
) -> FdModule:
    """Submodule of the regular module generated by the given elements."""
    base = algebra if side == "left" else op_cache(algebra)
    fld = base.field
    span = SpanBuilder(fld, base.dimension)
    frontier = []
    for el in elements:
        vec = base.coords(el)
        if span.insert(vec):
            frontier.append(vec)
    while frontier:
        nxt = []
        for vec in frontier:
            for ai in range(base.quiver.n_arrows):
                arrow_basis = base.basis_index[base.quiver.arrow_path(ai)]
                image = left_multiply_basis(base, arrow_basis, vec)
                if span.insert(image):
                    nxt.append(image)
        frontier = nxt
    return module_from_span_rows(base, span.rows)
