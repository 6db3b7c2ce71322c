"""Parser and serializer for the line-oriented ``.qv`` algebra format.

A file has three sections::

    field rationals            # or: field prime 5

    quiver
      vertices 1 2 3
      arrow alpha 1 -> 2
      arrow delta 1 -> 1

    relations                  # one expression per line; may be empty
      alpha*epsilon - delta*alpha
      delta^2
      1/2*alpha*beta + 2*gamma*delta   # scalar prefixes

``#`` starts a comment, ``*`` composes left to right (first factor acts
first), ``^n`` repeats a loop.  ``serialize`` emits a canonical form that
reparses to the same spec up to scalar normalization.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import FieldSpec
from .quiver import AlgebraSpec, Element, Path, Quiver, compose

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$|[0-9]+$")
TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|[0-9]+|\^|\*|\+|-|/)")


class QvError(ValueError):
    """Parse or validation failure with a source position."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


def _tokenize(text: str, line_no: int) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = TOKEN_RE.match(text, pos)
        if not m:
            raise QvError(f"unexpected character {text[pos]!r}", line_no)
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _RelationParser:
    """Recursive-descent parser for one relation expression."""

    def __init__(self, quiver: Quiver, fld, tokens: list[str], line_no: int):
        self.quiver = quiver
        self.field = fld
        self.tokens = tokens
        self.pos = 0
        self.line = line_no

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise QvError("unexpected end of expression", self.line)
        self.pos += 1
        return tok

    def parse(self) -> Element:
        out = Element(self.quiver, self.field)
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        self._term(out, sign)
        while self.peek() is not None:
            op = self.take()
            if op not in ("+", "-"):
                raise QvError(f"expected + or - before {op!r}", self.line)
            self._term(out, -1 if op == "-" else 1)
        return out

    def _term(self, out: Element, sign: int) -> None:
        coef = Fraction(sign)
        tok = self.peek()
        if tok is not None and tok.isdigit() and not self._is_arrow(tok):
            coef *= self._scalar()
            if self.peek() == "*":
                self.take()
        path = self._path()
        out.add_term(path, self.field.from_fraction(coef))

    def _scalar(self) -> Fraction:
        num = int(self.take())
        if self.peek() == "/":
            self.take()
            den_tok = self.take()
            if not den_tok.isdigit():
                raise QvError(f"expected integer denominator, got {den_tok!r}", self.line)
            den = int(den_tok)
            if den == 0:
                raise QvError("zero denominator", self.line)
            return Fraction(num, den)
        return Fraction(num)

    def _is_arrow(self, tok: str) -> bool:
        return tok in self.quiver.arrow_index

    def _path(self) -> Path:
        path = self._factor()
        while self.peek() == "*":
            self.take()
            nxt = self._factor()
            composed = compose(path, nxt)
            if composed is None:
                raise QvError(
                    f"non-composable product: target of {path} is "
                    f"{self.quiver.vertices[path.target]} but source of {nxt} is "
                    f"{self.quiver.vertices[nxt.source]}",
                    self.line,
                )
            path = composed
        return path

    def _factor(self) -> Path:
        tok = self.take()
        if tok not in self.quiver.arrow_index:
            if tok in self.quiver.vertex_index:
                raise QvError(f"trivial path {tok!r} not allowed in a relation", self.line)
            raise QvError(f"unknown arrow {tok!r}", self.line)
        path = self.quiver.arrow_path(tok)
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            if not exp_tok.isdigit() or int(exp_tok) < 1:
                raise QvError(f"invalid exponent {exp_tok!r}", self.line)
            base = path
            for _ in range(int(exp_tok) - 1):
                nxt = compose(path, base)
                if nxt is None:
                    raise QvError(f"{tok}^n needs a loop", self.line)
                path = nxt
        return path


def parse_spec(text: str) -> AlgebraSpec:
    """Parse a ``.qv`` document into an AlgebraSpec.

    Raises QvError with a line number on any malformed input.
    """
    field_spec: FieldSpec | None = None
    vertices: list[str] = []
    arrow_decls: list[tuple[str, str, str]] = []
    relation_lines: list[tuple[int, str]] = []
    section = None
    seen = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "field":
            parts = line.split()
            if field_spec is not None:
                raise QvError("duplicate field declaration", line_no)
            if parts[1:] == ["rationals"]:
                field_spec = FieldSpec("rationals", 0)
            elif len(parts) == 3 and parts[1] == "prime" and parts[2].isdigit():
                try:
                    field_spec = FieldSpec("prime-field", int(parts[2]))
                except ValueError as exc:
                    raise QvError(str(exc), line_no) from None
            else:
                raise QvError(f"bad field declaration {line!r}", line_no)
            section = None
        elif line == "quiver":
            section = "quiver"
            seen.add("quiver")
        elif line == "relations":
            section = "relations"
            seen.add("relations")
        elif section == "quiver" and head == "vertices":
            for v in line.split()[1:]:
                if not NAME_RE.match(v):
                    raise QvError(f"bad vertex name {v!r}", line_no)
                vertices.append(v)
        elif section == "quiver" and head == "arrow":
            m = re.match(r"arrow\s+(\S+)\s+(\S+)\s*->\s*(\S+)$", line)
            if not m:
                raise QvError(f"bad arrow declaration {line!r}", line_no)
            arrow_decls.append((m.group(1), m.group(2), m.group(3)))
        elif section == "relations":
            relation_lines.append((line_no, line))
        else:
            raise QvError(f"unexpected line {line!r}", line_no)

    if field_spec is None:
        raise QvError("missing field declaration")
    if "quiver" not in seen:
        raise QvError("missing quiver section")
    try:
        quiver = Quiver(vertices, arrow_decls)
    except ValueError as exc:
        raise QvError(str(exc)) from None

    fld = field_spec.field()
    relations = []
    for line_no, expr in relation_lines:
        tokens = _tokenize(expr, line_no)
        rel = _RelationParser(quiver, fld, tokens, line_no).parse()
        if rel.is_zero():
            raise QvError("relation is zero", line_no)
        if not rel.is_parallel():
            raise QvError("relation mixes paths with different endpoints", line_no)
        if rel.min_length() < 2:
            raise QvError("relation contains a path of length < 2", line_no)
        relations.append(rel)

    spec = AlgebraSpec(field_spec, quiver, tuple(relations))
    spec.validate()
    return spec


def parse_file(path: str) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def format_scalar(fld, value) -> str:
    if fld.char == 0:
        frac = Fraction(value)
        return str(frac)
    return str(value % fld.char)


def format_element(element: Element) -> str:
    """Render an element with paths in admissible order, descending."""
    fld = element.field
    parts = []
    for i, p in enumerate(sorted(element.coeffs, key=Path.order_key, reverse=True)):
        c = element.coeffs[p]
        if fld.char == 0:
            neg = c < 0
            mag = -c if neg else c
        else:
            neg = False
            mag = c % fld.char
        body = _format_path(p)
        if mag != fld.one:
            body = f"{format_scalar(fld, mag)}*{body}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _format_path(p: Path) -> str:
    names = [p.quiver.arrows[i].name for i in p.arrows]
    out = []
    i = 0
    while i < len(names):
        j = i
        while j < len(names) and names[j] == names[i]:
            j += 1
        out.append(names[i] if j - i == 1 else f"{names[i]}^{j - i}")
        i = j
    return "*".join(out)


def normalize_relation(rel: Element) -> Element:
    """Scale so the tip coefficient is one (the serializer's normal form)."""
    return rel.scale(rel.field.inv(rel.coeffs[rel.tip()]))


def serialize(spec: AlgebraSpec) -> str:
    """Emit canonical ``.qv`` text for a spec."""
    lines = []
    fs = spec.field_spec
    lines.append("field rationals" if fs.kind == "rationals" else f"field prime {fs.characteristic}")
    lines.append("")
    lines.append("quiver")
    lines.append("  vertices " + " ".join(spec.quiver.vertices))
    for a in spec.quiver.arrows:
        lines.append(
            f"  arrow {a.name} {spec.quiver.vertices[a.source]} -> {spec.quiver.vertices[a.target]}"
        )
    lines.append("")
    lines.append("relations")
    for rel in spec.relations:
        lines.append("  " + format_element(normalize_relation(rel)))
    return "\n".join(lines) + "\n"
