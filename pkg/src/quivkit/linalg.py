"""Dense exact row reduction over a Field.

Matrices are lists of row lists.  Everything here is deterministic:
pivots are always the first nonzero entry scanning columns left to right,
so bases produced from the same input are reproducible.  Zero tests use
truthiness (both scalar representations are falsy exactly at zero),
which keeps the inner loops off the slow rich-comparison path.
"""

from __future__ import annotations

from .fields import Field

Matrix = list  # list of rows; row = list of scalars


def zeros(field: Field, rows: int, cols: int) -> Matrix:
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(field: Field, n: int) -> Matrix:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_mul(field: Field, a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
    add, mul = field.add, field.mul
    out = zeros(field, rows, cols)
    for i in range(rows):
        ai, oi = a[i], out[i]
        for k in range(inner):
            v = ai[k]
            if not v:
                continue
            bk = b[k]
            for j in range(cols):
                w = bk[j]
                if w:
                    oi[j] = add(oi[j], mul(v, w))
    return out


def mat_vec(field: Field, a: Matrix, v: list) -> list:
    add, mul = field.add, field.mul
    out = [field.zero] * len(a)
    for i, row in enumerate(a):
        acc = field.zero
        for x, y in zip(row, v):
            if x and y:
                acc = add(acc, mul(x, y))
        out[i] = acc
    return out


def rref(field: Field, mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [row[:] for row in mat]
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    add, sub, mul = field.add, field.sub, field.mul
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        if inv != field.one:
            m[r] = [mul(inv, x) if x else x for x in m[r]]
        mr = m[r]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                mi = m[i]
                for j in range(c, cols):
                    if mr[j]:
                        mi[j] = sub(mi[j], mul(f, mr[j]))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def rank(field: Field, mat: Matrix) -> int:
    return len(rref(field, mat)[0])


def nullspace(field: Field, mat: Matrix, cols: int | None = None) -> Matrix:
    """Basis of the right kernel {v : mat @ v = 0}, one vector per row."""
    if cols is None:
        cols = len(mat[0]) if mat else 0
    red, pivots = rref(field, mat)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    zero, one = field.zero, field.one
    basis = []
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            x = red[r][fc]
            if x:
                v[pc] = field.neg(x)
        basis.append(v)
    return basis


def solve(field: Field, mat: Matrix, rhs: list) -> list | None:
    """One solution of mat @ x = rhs, or None when inconsistent."""
    cols = len(mat[0]) if mat else 0
    aug = [row + [rhs[i]] for i, row in enumerate(mat)]
    red, pivots = rref(field, aug)
    zero = field.zero
    x = [zero] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = red[r][cols]
    return x


def invert(field: Field, mat: Matrix) -> Matrix | None:
    n = len(mat)
    if n == 0:
        return []
    if any(len(row) != n for row in mat):
        raise ValueError("inverse of non-square matrix")
    eye = identity(field, n)
    aug = [mat[i][:] + eye[i] for i in range(n)]
    red, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [red[i][n:] for i in range(n)]


class SpanBuilder:
    """Incremental row space: insert vectors, query membership and basis.

    Rows are kept in reduced echelon form, so coordinates of a member
    vector with respect to the inserted basis are recoverable and the
    resulting basis only depends on insertion order.
    """

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: Matrix = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: list) -> list:
        field = self.field
        sub, mul = field.sub, field.mul
        v = vec[:]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.width):
                    if row[j]:
                        v[j] = sub(v[j], mul(c, row[j]))
        return v

    def contains(self, vec: list) -> bool:
        return not any(self._reduce(vec))

    def insert(self, vec: list) -> bool:
        """Add vec to the span; True when the dimension grew."""
        field = self.field
        sub, mul = field.sub, field.mul
        v = self._reduce(vec)
        pivot = next((j for j, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = field.inv(v[pivot])
        if inv != field.one:
            v = [mul(inv, x) if x else x for x in v]
        for row in self.rows:
            c = row[pivot]
            if c:
                for j in range(self.width):
                    if v[j]:
                        row[j] = sub(row[j], mul(c, v[j]))
        at = 0
        while at < len(self.pivots) and self.pivots[at] < pivot:
            at += 1
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    def coordinates(self, vec: list) -> list | None:
        """Coefficients over the current echelon basis, or None."""
        field = self.field
        sub, mul = field.sub, field.mul
        v = vec[:]
        coords = [field.zero] * len(self.rows)
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = v[p]
            if c:
                coords[i] = c
                for j in range(p, self.width):
                    if row[j]:
                        v[j] = sub(v[j], mul(c, row[j]))
        if any(v):
            return None
        return coords
