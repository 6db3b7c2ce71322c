"""The reduction calculus: pre-removability, removability classification,
redundancy, the combinatorial exclusion criteria, and the arrow reduced /
arrow irredundant versions.

Classification verdicts:

  TwoSided                pre-removable, both projective dimensions finite
  OnlyLeftCertified       square-zero ideal, right pd finite, left pd
                          certified infinite
  RemovableLeftUndecided  square-zero ideal, right pd finite, left pd
                          undecided at the cap -- still removable, since a
                          square-zero ideal with finite right pd suffices
  NotRemovable            a definite obstruction was certified
  Undecided               anything the caps left open

Removal traces record every intermediate presentation so the fixpoint
runs are auditable; by uniqueness of the maximal eventually removable
arrow set, the declared removal order only affects the trace, never the
final algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import (
    BoundQuiverAlgebra,
    canonical_quotient,
    ideal_span,
    loewy_length,
    multiply,
    split_witness,
    strongly_connected,
)
from .groebner import is_monomial_ideal, normal_form
from .homology import (
    DEFAULT_RESOLUTION_CAP,
    PdVerdict,
    minimal_resolution,
    pd_verdict,
    embeds_simple_right,
)
from .modules import ideal_module, op_cache, simple_module
from .parser import format_element, serialize
from .quiver import Element


@dataclass(frozen=True)
class Caps:
    """Bundled computation limits; every report records the caps it used.

    dim_guard bounds the total dimension of any syzygy a resolution is
    allowed to produce before reporting UnknownBeyond; None means the
    adaptive default of 8x the algebra dimension (at least 64).  Ideals
    whose syzygies grow without periodicity would otherwise stall every
    fixpoint search.
    """

    degree_cap: int = 64
    resolution_cap: int = DEFAULT_RESOLUTION_CAP
    subset_cap: int | None = None  # None: min(#candidates, 6)
    seed: int = 0
    dim_guard: int | None = None

    def guard_for(self, algebra: BoundQuiverAlgebra) -> int:
        if self.dim_guard is not None:
            return self.dim_guard
        return max(64, 8 * algebra.dimension)

    def json(self) -> dict:
        return {
            "degree_cap": self.degree_cap,
            "resolution_cap": self.resolution_cap,
            "subset_cap": self.subset_cap,
            "seed": self.seed,
            "dim_guard": self.dim_guard,
        }


@dataclass
class RemovabilityReport:
    arrows: list[str]
    pre_removable: bool
    witness: Element | None
    square_zero: bool | None
    pd_right: PdVerdict | None
    pd_left: PdVerdict | None
    betti_right: list[dict[str, int]] | None
    betti_left: list[dict[str, int]] | None
    verdict: str

    def json(self) -> dict:
        out = {
            "arrows": self.arrows,
            "preRemovable": self.pre_removable,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = format_element(self.witness)
        if self.square_zero is not None:
            out["squareZero"] = self.square_zero
        if self.pd_right is not None:
            out["pdRight"] = self.pd_right.json()
            out["bettiRight"] = self.betti_right
        if self.pd_left is not None:
            out["pdLeft"] = self.pd_left.json()
            out["bettiLeft"] = self.betti_left
        return out


def preremovable_check(algebra: BoundQuiverAlgebra, arrow_names) -> tuple[bool, Element | None]:
    """Split every reduced Groebner-basis element along the arrow set and
    test both parts for ideal membership; sound and complete."""
    arrow_set = algebra.quiver.arrow_names(arrow_names)
    witness = split_witness(algebra, arrow_set)
    return witness is None, witness


def ideal_square_is_zero(algebra: BoundQuiverAlgebra, arrow_names) -> bool:
    span = ideal_span(algebra, arrow_names)
    rows = span.rows
    fld = algebra.field
    zero = fld.zero
    for a in rows:
        for b in rows:
            if any(multiply(algebra, a, b)):
                return False
    return True


def removable_classify(
    algebra: BoundQuiverAlgebra, arrow_names, caps: Caps = Caps()
) -> RemovabilityReport:
    algebra.quiver.arrow_names(arrow_names)
    names = sorted(arrow_names, key=algebra.quiver.arrow_index.get)
    if not names:
        raise ValueError("arrow set must be nonempty")
    ok, witness = preremovable_check(algebra, names)
    if not ok:
        return RemovabilityReport(names, False, witness, None, None, None, None, None, "NotRemovable")

    guard = caps.guard_for(algebra)
    square_zero = ideal_square_is_zero(algebra, names)
    right = minimal_resolution(
        ideal_module(algebra, names, "right"), caps.resolution_cap, caps.seed, guard
    )
    pd_right = right.verdict

    # The left resolution cannot change the verdict when the right side is
    # certified infinite (already NotRemovable) or undecided over a
    # square-zero ideal (Undecided either way); skip it then.
    left = None
    if not (pd_right.is_infinite or (pd_right.is_unknown and square_zero)):
        left = minimal_resolution(
            ideal_module(algebra, names, "left"), caps.resolution_cap, caps.seed, guard
        )
    pd_left = left.verdict if left is not None else None

    if pd_right.is_finite and pd_left is not None and pd_left.is_finite:
        verdict = "TwoSided"
    elif square_zero and pd_right.is_finite and pd_left is not None and pd_left.is_infinite:
        verdict = "OnlyLeftCertified"
    elif square_zero and pd_right.is_finite and pd_left is not None and pd_left.is_unknown:
        verdict = "RemovableLeftUndecided"
    elif pd_right.is_infinite or (
        not square_zero and pd_left is not None and pd_left.is_infinite
    ):
        verdict = "NotRemovable"
    else:
        verdict = "Undecided"
    return RemovabilityReport(
        names,
        True,
        None,
        square_zero,
        pd_right,
        pd_left,
        right.betti_sequence(),
        left.betti_sequence() if left is not None else None,
        verdict,
    )


REMOVABLE_VERDICTS = {"TwoSided", "OnlyLeftCertified", "RemovableLeftUndecided"}


def redundant_arrows(algebra: BoundQuiverAlgebra) -> list[str]:
    """Arrows avoidable by some generating set of the ideal.

    By the bimodule-projectivity characterization this is: the singleton
    is pre-removable and the ideal it generates has the full projective
    dimension count dim(Lambda e_i) * dim(e_j Lambda).
    """
    out = []
    qv = algebra.quiver
    for a in qv.arrows:
        ok, _ = preremovable_check(algebra, [a.name])
        if not ok:
            continue
        dim_left = sum(1 for p in algebra.basis if p.target == a.source)
        dim_right = sum(1 for p in algebra.basis if p.source == a.target)
        if ideal_span(algebra, [a.name]).dim == dim_left * dim_right:
            out.append(a.name)
    return out


def _squared_zero_loops(algebra: BoundQuiverAlgebra) -> list[int]:
    qv = algebra.quiver
    fld = algebra.field
    out = []
    for ai, a in enumerate(qv.arrows):
        if a.source != a.target:
            continue
        sq = Element(qv, fld, {qv.path([a.name, a.name]): fld.one})
        if normal_form(sq, algebra.gb).is_zero():
            out.append(ai)
    return out


def loop_exclusions(algebra: BoundQuiverAlgebra) -> list[str]:
    """Arrows that can never be eventually removable: squared-zero loops,
    and arrows into a squared-zero loop's vertex killed by the loop."""
    qv = algebra.quiver
    fld = algebra.field
    excluded = set()
    for li in _squared_zero_loops(algebra):
        loop = qv.arrows[li]
        excluded.add(loop.name)
        for a in qv.arrows:
            if a.target != loop.source or a.name == loop.name:
                continue
            prod = Element(qv, fld, {qv.path([a.name, loop.name]): fld.one})
            if normal_form(prod, algebra.gb).is_zero():
                excluded.add(a.name)
    return sorted(excluded, key=qv.arrow_index.get)


def gorenstein_exclusion(algebra: BoundQuiverAlgebra) -> list[dict]:
    """Witness pairs (loop, arrow) certifying the algebra is not
    Iwanaga-Gorenstein: a squared-zero loop at i together with another
    arrow into i killed by every arrow, or the dual source-side shape."""
    qv = algebra.quiver
    fld = algebra.field
    witnesses = []
    for li in _squared_zero_loops(algebra):
        loop = qv.arrows[li]
        v = loop.source
        for a in qv.arrows:
            if a.name == loop.name:
                continue
            if a.target == v:
                kills = True
                for b in qv.arrows:
                    if b.source != v:
                        continue
                    prod = Element(qv, fld, {qv.path([a.name, b.name]): fld.one})
                    if not normal_form(prod, algebra.gb).is_zero():
                        kills = False
                        break
                if kills:
                    witnesses.append({"loop": loop.name, "arrow": a.name, "side": "target"})
            if a.source == v:
                kills = True
                for b in qv.arrows:
                    if b.target != v:
                        continue
                    prod = Element(qv, fld, {qv.path([b.name, a.name]): fld.one})
                    if not normal_form(prod, algebra.gb).is_zero():
                        kills = False
                        break
                if kills:
                    witnesses.append({"loop": loop.name, "arrow": a.name, "side": "source"})
    return witnesses


@dataclass
class TraceStep:
    removed: list[str]
    verdict: str
    algebra_digest: str
    examined: list[dict]  # per candidate subset of this round: names + verdict


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    final_examined: list[dict] = field(default_factory=list)
    certified: bool = True

    def json(self) -> dict:
        return {
            "steps": [
                {
                    "removed": s.removed,
                    "verdict": s.verdict,
                    "algebraDigest": s.algebra_digest,
                    "examined": s.examined,
                }
                for s in self.steps
            ],
            "finalExamined": self.final_examined,
            "certified": self.certified,
        }


def _digest(algebra: BoundQuiverAlgebra) -> str:
    import hashlib

    return hashlib.sha256(serialize(algebra.spec).encode()).hexdigest()[:16]


def arrow_reduced_version(
    algebra: BoundQuiverAlgebra, caps: Caps = Caps()
) -> tuple[BoundQuiverAlgebra, list[str], ReductionTrace]:
    """Fixpoint of removable-set quotients: the arrow reduced version.

    Candidates are the arrows surviving the loop exclusions; nonempty
    candidate subsets are scanned by (size, declared order) up to the
    subset cap and the first removable one is quotiented out.  The trace
    is certified when the terminating round decided every candidate
    subset within the cap as NotRemovable and the cap covered all sizes.
    """
    current = algebra
    removed_total: list[str] = []
    trace = ReductionTrace()
    while True:
        exclusions = set(loop_exclusions(current))
        qv = current.quiver
        candidates = [a.name for a in qv.arrows if a.name not in exclusions]
        cap = caps.subset_cap if caps.subset_cap is not None else min(len(candidates), 6)
        examined: list[dict] = []
        found: tuple[list[str], RemovabilityReport] | None = None
        for size in range(1, min(cap, len(candidates)) + 1):
            for subset in combinations(candidates, size):
                report = removable_classify(current, list(subset), caps)
                examined.append({"arrows": list(subset), "verdict": report.verdict})
                if report.verdict in REMOVABLE_VERDICTS:
                    found = (list(subset), report)
                    break
            if found:
                break
        if found is None:
            trace.final_examined = examined
            all_not_removable = all(e["verdict"] == "NotRemovable" for e in examined)
            covered = cap >= len(candidates)
            trace.certified = all_not_removable and covered
            return current, removed_total, trace
        subset, report = found
        current, _section = canonical_quotient(current, subset, caps.degree_cap)
        removed_total.extend(subset)
        trace.steps.append(TraceStep(subset, report.verdict, _digest(current), examined))


def arrow_irredundant_version(
    algebra: BoundQuiverAlgebra, caps: Caps = Caps()
) -> tuple[BoundQuiverAlgebra, list[str], ReductionTrace]:
    """Remove redundant arrows one at a time until none remain."""
    current = algebra
    removed_total: list[str] = []
    trace = ReductionTrace()
    while True:
        red = redundant_arrows(current)
        if not red:
            trace.final_examined = [{"arrows": [a.name for a in current.quiver.arrows], "verdict": "none redundant"}]
            trace.certified = True
            return current, removed_total, trace
        pick = red[0]
        current, _section = canonical_quotient(current, [pick], caps.degree_cap)
        removed_total.append(pick)
        trace.steps.append(TraceStep([pick], "Redundant", _digest(current), [{"arrows": red, "verdict": "Redundant"}]))


def _simple_pd_small(algebra: BoundQuiverAlgebra, vertex: int) -> int | None:
    """pd of the left simple at the vertex when it is 0 or 1, else None;
    decidable in two cover steps."""
    res = minimal_resolution(simple_module(algebra, vertex), cap=2)
    if res.verdict.is_finite and res.verdict.n in (0, 1):
        return res.verdict.n
    return None


def irreducibility_report(algebra: BoundQuiverAlgebra, caps: Caps = Caps()) -> dict:
    """The seven non-triviality conditions; each entry is
    Holds | Fails (with witness) | Undecided."""
    qv = algebra.quiver
    out: dict[str, dict] = {}

    embeds = [v for v in qv.vertices if embeds_simple_right(algebra, v)]
    if len(embeds) < len(qv.vertices):
        missing = [v for v in qv.vertices if v not in embeds]
        out["nonzero_finitistic_dimension"] = {
            "status": "Holds",
            "detail": f"no right ideal is isomorphic to the simple at {missing[0]}",
        }
    else:
        out["nonzero_finitistic_dimension"] = {
            "status": "Fails",
            "witness": "every simple right module embeds into the algebra",
        }

    monomial = is_monomial_ideal(algebra.gb)
    out["not_monomial"] = (
        {"status": "Holds"} if not monomial else {"status": "Fails", "witness": "ideal is monomial"}
    )

    ll = loewy_length(algebra)
    out["loewy_length_above_three"] = (
        {"status": "Holds", "detail": f"Loewy length {ll}"}
        if ll > 3
        else {"status": "Fails", "witness": f"Loewy length {ll}"}
    )

    red = redundant_arrows(algebra)
    out["no_redundant_arrows"] = (
        {"status": "Holds"} if not red else {"status": "Fails", "witness": red}
    )

    out["triangular_reduced"] = (
        {"status": "Holds"}
        if strongly_connected(qv)
        else {"status": "Fails", "witness": "quiver is not strongly connected"}
    )

    small = [(v, _simple_pd_small(algebra, i)) for i, v in enumerate(qv.vertices)]
    bad = [(v, n) for v, n in small if n is not None]
    out["simples_have_pd_above_one"] = (
        {"status": "Holds"}
        if not bad
        else {"status": "Fails", "witness": f"left simple at {bad[0][0]} has pd {bad[0][1]}"}
    )

    # Injective dimension of the left simple at v equals the projective
    # dimension of the right simple at v, computed over the opposite algebra.
    op = op_cache(algebra)
    statuses = []
    for i, v in enumerate(qv.vertices):
        verdict = pd_verdict(simple_module(op, i), caps.resolution_cap, caps.seed)
        statuses.append((v, verdict))
    finite = [(v, k) for v, k in statuses if k.is_finite]
    unknown = [(v, k) for v, k in statuses if k.is_unknown]
    if finite:
        out["simples_have_infinite_injective_dimension"] = {
            "status": "Fails",
            "witness": f"left simple at {finite[0][0]} has injective dimension {finite[0][1].n}",
        }
    elif unknown:
        out["simples_have_infinite_injective_dimension"] = {
            "status": "Undecided",
            "detail": f"right-simple resolution at {unknown[0][0]} undecided at cap",
        }
    else:
        out["simples_have_infinite_injective_dimension"] = {"status": "Holds"}

    statuses_all = [entry["status"] for entry in out.values()]
    if any(s == "Fails" for s in statuses_all):
        summary = "Fails"
    elif any(s == "Undecided" for s in statuses_all):
        summary = "Undecided"
    else:
        summary = "Holds"
    out["irreducible"] = {"status": summary}
    return out
