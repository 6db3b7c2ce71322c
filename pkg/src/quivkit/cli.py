"""Command-line front end.

Exit codes: 0 success with every certification flag true; 2 input or
parse error; 3 result emitted but undecided beyond the given caps
(certification flag false); 1 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import build_algebra
from .extensions import ExtensionRequest, extension_verify, one_arrow_extension
from .groebner import NotAdmissibleUpTo
from .homology import minimal_resolution
from .modules import ideal_module
from .parser import QvError, parse_file, serialize, _RelationParser, _tokenize
from .quiver import Element
from .removal import (
    Caps,
    arrow_irredundant_version,
    arrow_reduced_version,
    gorenstein_exclusion,
    irreducibility_report,
    loop_exclusions,
    redundant_arrows,
    removable_classify,
)
from . import reporting

COMMANDS = (
    "check",
    "gb",
    "info",
    "removable",
    "redundant",
    "arv",
    "aiv",
    "extend",
    "irreducible",
    "pd",
    "report",
)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", help="input .qv algebra file")
    p.add_argument("--degree-cap", type=int, default=64, help="Groebner completion degree cap")
    p.add_argument("--cap", type=int, default=64, help="resolution step cap")
    p.add_argument("--subset-cap", type=int, default=None, help="ARV subset-size cap")
    p.add_argument("--seed", type=int, default=0, help="seed for isomorphism sampling")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("-o", "--output", default=None, help="write the report to a file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quivkit",
        description="exact arrow-removal calculus for bound quiver algebras",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "check": "parse the file and certify admissibility",
        "gb": "print the reduced Groebner basis",
        "info": "dimension, Loewy length, corner matrix, monomiality, connectivity",
        "removable": "classify an arrow set (needs --arrows)",
        "redundant": "list redundant arrows",
        "arv": "compute the arrow reduced version",
        "aiv": "compute the arrow irredundant version",
        "extend": "build a trivial one-arrow extension",
        "irreducible": "run the seven-part irreducibility report",
        "pd": "projective dimension of an arrow-set ideal (needs --ideal)",
        "report": "full report; optionally render figures",
    }
    parsers = {}
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        _add_common(p)
        parsers[name] = p
    parsers["removable"].add_argument("--arrows", required=True, help="comma-separated arrow names")
    parsers["pd"].add_argument("--ideal", required=True, help="comma-separated arrow names")
    parsers["pd"].add_argument("--side", choices=["left", "right"], default="right")
    parsers["extend"].add_argument("--from", dest="source", required=True, help="source vertex")
    parsers["extend"].add_argument("--to", dest="target", required=True, help="target vertex")
    parsers["extend"].add_argument("--gens", required=True, help="comma-separated generators of V")
    parsers["extend"].add_argument("--name", default="eta", help="name of the new arrow")
    parsers["report"].add_argument("--figures-dir", default=None, help="render figures and CSV here")
    return ap


def _caps(args) -> Caps:
    return Caps(
        degree_cap=args.degree_cap,
        resolution_cap=args.cap,
        subset_cap=args.subset_cap,
        seed=args.seed,
    )


def _emit(args, report: dict, text: str | None) -> None:
    if args.json or text is None:
        out = reporting.to_json(report)
    else:
        out = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _final_algebra_payload(algebra) -> dict:
    return {
        "arrows": [a.name for a in algebra.quiver.arrows],
        "dimension": algebra.dimension,
        "qv": serialize(algebra.spec),
    }


def _parse_gens(algebra, text: str) -> list[Element]:
    gens = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        tokens = _tokenize(piece, 0)
        gens.append(_RelationParser(algebra.quiver, algebra.field, tokens, 0).parse())
    return gens


def _thread_bound() -> int:
    """Worker bound from QUIVKIT_THREADS; the engine currently runs all
    stages sequentially, so any bound >= 1 is honored trivially."""
    import os

    raw = os.environ.get("QUIVKIT_THREADS")
    if raw is None:
        return 1
    try:
        bound = int(raw)
    except ValueError:
        raise QvError(f"QUIVKIT_THREADS must be a positive integer, got {raw!r}") from None
    if bound < 1:
        raise QvError(f"QUIVKIT_THREADS must be a positive integer, got {raw!r}")
    return bound


def run(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)
    caps = _caps(args)
    try:
        _thread_bound()
    except QvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        spec = parse_file(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QvError as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return 2

    try:
        try:
            algebra = build_algebra(spec, caps.degree_cap)
        except NotAdmissibleUpTo as exc:
            print(f"error: {args.file}: {exc}", file=sys.stderr)
            return 2

        certified = True
        text = None

        if args.command == "check":
            payload = {
                "valid": True,
                "vertices": len(spec.quiver.vertices),
                "arrows": len(spec.quiver.arrows),
                "relations": len(spec.relations),
                "dimension": algebra.dimension,
                "admissibleUpTo": algebra.gb.certified_degree,
            }
            text = (
                f"ok: {payload['vertices']} vertices, {payload['arrows']} arrows, "
                f"{payload['relations']} relations; dimension {payload['dimension']}\n"
            )
        elif args.command == "gb":
            payload = reporting.gb_payload(algebra)
            text = "\n".join(payload["basis"]) + "\n"
        elif args.command == "info":
            payload = reporting.info_payload(algebra)
            text = reporting.render_info_text(payload)
        elif args.command == "removable":
            names = [n.strip() for n in args.arrows.split(",") if n.strip()]
            rep = removable_classify(algebra, names, caps)
            payload = rep.json()
            certified = rep.verdict not in ("Undecided", "RemovableLeftUndecided")
            text = f"{{{', '.join(rep.arrows)}}}: {rep.verdict}\n"
        elif args.command == "redundant":
            payload = {"redundant": redundant_arrows(algebra)}
            text = (", ".join(payload["redundant"]) or "(none)") + "\n"
        elif args.command == "arv":
            final, removed, trace = arrow_reduced_version(algebra, caps)
            payload = {
                "eventuallyRemovable": removed,
                "loopExclusions": loop_exclusions(algebra),
                "trace": trace.json(),
                "final": _final_algebra_payload(final),
            }
            certified = trace.certified
            text = (
                f"eventually removable: {', '.join(removed) or '(none)'}\n"
                f"ARV dimension {final.dimension}, arrows: "
                f"{', '.join(a.name for a in final.quiver.arrows) or '(none)'}\n"
            )
        elif args.command == "aiv":
            final, removed, trace = arrow_irredundant_version(algebra, caps)
            payload = {
                "removed": removed,
                "trace": trace.json(),
                "final": _final_algebra_payload(final),
            }
            certified = trace.certified
            text = (
                f"redundant arrows removed: {', '.join(removed) or '(none)'}\n"
                f"AIV dimension {final.dimension}\n"
            )
        elif args.command == "irreducible":
            payload = irreducibility_report(algebra, caps)
            certified = all(entry["status"] != "Undecided" for entry in payload.values())
            lines = [f"{key}: {entry['status']}" for key, entry in payload.items()]
            text = "\n".join(lines) + "\n"
        elif args.command == "pd":
            names = [n.strip() for n in args.ideal.split(",") if n.strip()]
            if not names:
                raise QvError("--ideal needs at least one arrow name")
            module = ideal_module(algebra, names, args.side)
            res = minimal_resolution(module, caps.resolution_cap, caps.seed)
            payload = {
                "side": args.side,
                "arrows": names,
                "verdict": res.verdict.json(),
                "betti": res.betti_sequence(),
                "steps": len(res.steps),
            }
            if res.verdict.is_infinite:
                payload["witness"] = {
                    "periodicity": list(res.verdict.period),
                    "seed": res.verdict.witness.seed,
                    "blocks": [
                        [[str(x) for x in row] for row in block]
                        for block in res.verdict.witness.witness
                    ],
                }
            certified = not res.verdict.is_unknown
            text = f"pd {args.side} of <{', '.join(names)}>: {res.verdict.json()}\n"
        elif args.command == "extend":
            gens = _parse_gens(algebra, args.gens)
            request = ExtensionRequest(algebra, args.source, args.target, gens, args.name)
            new_spec = one_arrow_extension(request)
            extension = build_algebra(new_spec, caps.degree_cap)
            verify = extension_verify(algebra, extension, args.name, caps)
            payload = {
                "qv": serialize(new_spec),
                "verification": verify.json(),
            }
            certified = verify.all_pass
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(serialize(new_spec))
                args.output = None  # report goes to stdout
            text = serialize(new_spec) + "\n" + "\n".join(
                f"{k}: {'pass' if v['pass'] else 'FAIL'}" for k, v in verify.checks.items()
            ) + "\n"
        elif args.command == "report":
            payload = {
                "info": reporting.info_payload(algebra),
                "groebner": reporting.gb_payload(algebra),
                "redundantArrows": redundant_arrows(algebra),
                "loopExclusions": loop_exclusions(algebra),
                "gorensteinExclusion": gorenstein_exclusion(algebra),
            }
            if args.figures_dir:
                payload["figures"] = reporting.write_figures(algebra, payload["info"], args.figures_dir)
            text = None  # report is always JSON
        else:  # pragma: no cover
            raise AssertionError(args.command)

        report = reporting.assemble(args.command, args.file, caps.json(), payload, certified)
        _emit(args, report, text)
        return 0 if certified else 3
    except (QvError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
