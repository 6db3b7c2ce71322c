"""Noncommutative Groebner bases for admissible ideals of path algebras.

The admissible order compares paths by length first, then left-to-right
lexicographically by declared arrow index; trivial paths sit below all
arrows and are ordered by vertex index.  The completion procedure is the
overlap (diamond-lemma) calculus: S-elements of overlapping tips are
reduced and surviving remainders join the basis, smallest overlap words
first, with full inter-reduction after every insertion.

Termination: once every path of some length L is divisible by a tip, the
remaining overlaps all have words of length < 2L and the reduced basis is
complete.  Ideals that are not admissible below the degree cap raise
NotAdmissibleUpTo instead of silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .quiver import AlgebraSpec, Element, Path, Quiver


class NotAdmissibleUpTo(ValueError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(
            f"ideal is not admissible up to degree {cap}: some path of that length "
            "has no tip divisor (raise the degree cap if the algebra is finite dimensional)"
        )


@dataclass
class GroebnerBasis:
    """Reduced tip-monic basis plus the nontip basis of the quotient."""

    spec: AlgebraSpec
    field: Field
    elements: list[Element]
    tip_map: dict[tuple[int, ...], Element]
    nontips: list[Path]
    nontip_index: dict[Path, int]
    max_nontip_length: int
    certified_degree: int

    @property
    def quiver(self) -> Quiver:
        return self.spec.quiver

    @property
    def dimension(self) -> int:
        return len(self.nontips)


def _tip_and_monic(z: Element) -> Element:
    tip = z.tip()
    lead = z.coeffs[tip]
    return z if lead == z.field.one else z.scale(z.field.inv(lead))


def _find_divisor(arrows: tuple[int, ...], tip_map, max_tip_len: int):
    """Leftmost-shortest tip subword of a path; None when irreducible."""
    n = len(arrows)
    for i in range(n - 1):
        for l in range(2, min(max_tip_len, n - i) + 1):
            g = tip_map.get(arrows[i : i + l])
            if g is not None:
                return i, l, g
    return None


def _splice(quiver: Quiver, p: Path, i: int, l: int, g: Element) -> Element:
    """u * g * v where p = u * tip(g) * v, u = p[:i], v = p[i+l:]."""
    out = Element(g.quiver, g.field)
    pre, post = p.arrows[:i], p.arrows[i + l :]
    for q, c in g.coeffs.items():
        arrows = pre + q.arrows + post
        src = p.source if i > 0 else q.source
        tgt = p.target if post else q.target
        out.add_term(Path(quiver, arrows, src, tgt), c)
    return out


def reduce_element(z: Element, tip_map, max_tip_len: int) -> Element:
    """Fully reduce z: no path in the result is divisible by any tip."""
    if not tip_map:
        return z.copy()
    quiver = z.quiver
    fld = z.field
    work = z.copy()
    while True:
        best = None
        for p in work.coeffs:
            if p.length < 2:
                continue
            hit = _find_divisor(p.arrows, tip_map, max_tip_len)
            if hit is not None and (best is None or p.order_key() > best[0].order_key()):
                best = (p, hit)
        if best is None:
            return work
        p, (i, l, g) = best
        coeff = work.coeffs[p]
        work = work.sub(_splice(quiver, p, i, l, g).scale(coeff))


class _Basis:
    """Mutable reduced basis with tip lookup."""

    def __init__(self, fld: Field):
        self.field = fld
        self.elements: list[Element] = []

    @property
    def tip_map(self) -> dict[tuple[int, ...], Element]:
        return {g.tip().arrows: g for g in self.elements}

    @property
    def max_tip_len(self) -> int:
        return max((g.tip().length for g in self.elements), default=0)

    def interreduce(self) -> None:
        changed = True
        while changed:
            changed = False
            self.elements.sort(key=lambda g: g.tip().order_key())
            for idx in range(len(self.elements)):
                g = self.elements[idx]
                rest = self.elements[:idx] + self.elements[idx + 1 :]
                tip_map = {h.tip().arrows: h for h in rest}
                max_len = max((h.tip().length for h in rest), default=0)
                r = reduce_element(g, tip_map, max_len)
                if r.is_zero():
                    del self.elements[idx]
                    changed = True
                    break
                r = _tip_and_monic(r)
                if r != g:
                    self.elements[idx] = r
                    changed = True
                    break


def _overlaps(basis: list[Element]):
    """All overlap ambiguities (degree, i, j, c_len) of the reduced basis."""
    out = []
    for i, g1 in enumerate(basis):
        t1 = g1.tip().arrows
        for j, g2 in enumerate(basis):
            t2 = g2.tip().arrows
            for c in range(1, min(len(t1), len(t2))):
                if t1[len(t1) - c :] == t2[:c]:
                    degree = len(t1) + len(t2) - c
                    out.append((degree, i, j, c))
    out.sort()
    return out


def _s_element(quiver: Quiver, g1: Element, g2: Element, c: int) -> Element:
    """g1 * v - u * g2 for the overlap word u c v (both tips monic)."""
    t1, t2 = g1.tip(), g2.tip()
    v_arrows = t2.arrows[c:]
    u_arrows = t1.arrows[: len(t1.arrows) - c]
    left = Element(quiver, g1.field)
    for q, coeff in g1.coeffs.items():
        left.add_term(
            Path(quiver, q.arrows + v_arrows, q.source, t2.target if v_arrows else q.target),
            coeff,
        )
    right = Element(quiver, g1.field)
    for q, coeff in g2.coeffs.items():
        right.add_term(
            Path(quiver, u_arrows + q.arrows, t1.source if u_arrows else q.source, q.target),
            coeff,
        )
    return left.sub(right)


def _enumerate_nontips(quiver: Quiver, tip_map, max_tip_len: int, cap: int):
    """Breadth-first nontip enumeration; returns (nontips, L) where every
    path of length L has a tip divisor."""
    level: list[Path] = [quiver.trivial_path(v) for v in range(quiver.n_vertices)]
    nontips: list[Path] = list(level)
    by_source: dict[int, list[int]] = {v: [] for v in range(quiver.n_vertices)}
    for idx, a in enumerate(quiver.arrows):
        by_source[a.source].append(idx)
    for length in range(1, cap + 2):
        nxt = []
        for p in level:
            for ai in by_source[p.target]:
                arrows = p.arrows + (ai,)
                lo = max(2, 0)
                bad = False
                for l in range(lo, min(max_tip_len, len(arrows)) + 1):
                    if arrows[len(arrows) - l :] in tip_map:
                        bad = True
                        break
                if not bad:
                    nxt.append(Path(quiver, arrows, p.source, quiver.arrows[ai].target))
        if not nxt:
            return nontips, length
        nxt.sort(key=Path.order_key)
        nontips.extend(nxt)
        level = nxt
    raise NotAdmissibleUpTo(cap)


def compute_groebner(spec: AlgebraSpec, degree_cap: int = 64) -> GroebnerBasis:
    """Reduced Groebner basis of the admissible ideal of the presentation."""
    if degree_cap < 2:
        raise ValueError("degree cap must be at least 2")
    spec.validate()
    fld = spec.scalar_field()
    quiver = spec.quiver

    basis = _Basis(fld)
    basis.elements = [_tip_and_monic(rel.copy()) for rel in spec.relations if not rel.is_zero()]
    basis.interreduce()

    while True:
        tip_map = basis.tip_map
        max_len = basis.max_tip_len
        added = False
        for degree, i, j, c in _overlaps(basis.elements):
            if degree > degree_cap:
                continue
            s = _s_element(quiver, basis.elements[i], basis.elements[j], c)
            r = reduce_element(s, tip_map, max_len)
            if not r.is_zero():
                basis.elements.append(_tip_and_monic(r))
                basis.interreduce()
                added = True
                break
        if not added:
            break

    # Any overlap the cap forced us to skip leaves the basis uncertified.
    if any(degree > degree_cap for degree, *_ in _overlaps(basis.elements)):
        raise NotAdmissibleUpTo(degree_cap)

    tip_map = basis.tip_map
    max_len = basis.max_tip_len
    nontips, admissible_len = _enumerate_nontips(quiver, tip_map, max_len, degree_cap)
    return GroebnerBasis(
        spec=spec,
        field=fld,
        elements=list(basis.elements),
        tip_map=tip_map,
        nontips=nontips,
        nontip_index={p: i for i, p in enumerate(nontips)},
        max_nontip_length=admissible_len - 1,
        certified_degree=min(2 * admissible_len + 2, degree_cap),
    )


def normal_form(z: Element, gb: GroebnerBasis) -> Element:
    """The unique representative of z + I supported on nontips."""
    max_len = max((len(t) for t in gb.tip_map), default=0)
    return reduce_element(z, gb.tip_map, max_len)


def is_monomial_ideal(gb: GroebnerBasis) -> bool:
    """True when the ideal is spanned by the paths it contains."""
    for g in gb.elements:
        for p in g.coeffs:
            single = Element(gb.quiver, gb.field, {p: gb.field.one})
            if not normal_form(single, gb).is_zero():
                return False
    return True
