"""Plain-text definition language for type presentations, plus exporters.

Surface syntax::

    type dend {
      generators: lt, gt;
      star: lt + gt;
      aux: st = lt + gt;
      relations:
        (lt.lt | lt.lt + lt.gt)
        (gt.lt | gt.lt)
        (lt.gt + gt.gt | gt.gt)
    }

A relation ``(B1 | B2)`` pairs the left-association side with the
right-association side: ``a.b`` on the left of ``|`` means (x a y) b z,
on the right it means x a (y b z).  Auxiliary names are expanded to
primitive generators before validation.  Generator names are plain
identifiers; product generator names like ``(lt|gt)`` are written in
double quotes.

Parsing is ASCII-only and every error carries a source span.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import ExactAlgebraError, Matrix, format_scalar
from .typecore import (
    GeneratorSpace,
    InvalidPresentation,
    RelationElement,
    TypePresentation,
    validate,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    start: int
    end: int

    def __str__(self):
        return f"line {self.line}, column {self.column}"


class DslError(ExactAlgebraError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} ({span})")
        self.span = span


class DslValidationError(InvalidPresentation):
    """Parsed fine, but the presentation does not validate."""

    def __init__(self, report):
        super().__init__("parsed type failed validation:\n" + report.describe(), report)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<quoted>"[^"\n]*")
  | (?P<int>[0-9]+)
  | (?P<punct>[{}();:,|.+\-*/=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # id | int | punct | end
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            span = SourceSpan(line, pos - line_start + 1, pos, pos + 1)
            raise DslError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        raw = m.group()
        span = SourceSpan(line, pos - line_start + 1, pos, m.end())
        if kind in ("ws", "comment"):
            nl = raw.count("\n")
            if nl:
                line += nl
                line_start = pos + raw.rindex("\n") + 1
        elif kind == "quoted":
            tokens.append(_Token("id", raw[1:-1], span))
        else:
            tokens.append(_Token(kind, raw, span))
        pos = m.end()
    tokens.append(_Token("end", "", SourceSpan(line, pos - line_start + 1, pos, pos)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise DslError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.span)
        return tok

    def expect_id(self, what="identifier") -> _Token:
        tok = self.next()
        if tok.kind != "id":
            raise DslError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.span)
        return tok

    # -- numbers and linear combinations ------------------------------------

    def rational(self) -> Fraction:
        tok = self.next()
        if tok.kind != "int":
            raise DslError("expected a number", tok.span)
        value = Fraction(int(tok.text))
        if self.peek().text == "/":
            self.next()
            den = self.next()
            if den.kind != "int" or int(den.text) == 0:
                raise DslError("expected a nonzero denominator", den.span)
            value /= int(den.text)
        return value

    def _zero_term(self) -> bool:
        # a bare "0" denotes the zero side / zero combination
        tok = self.peek()
        if tok.kind == "int" and tok.text == "0":
            nxt = self.tokens[self.i + 1].text
            if nxt not in ("*", "/"):
                self.next()
                return True
        return False

    def lincomb(self, names: dict[str, tuple[Fraction, ...]], m: int) -> tuple[Fraction, ...]:
        vec = [Fraction(0)] * m
        first = True
        while True:
            sign = Fraction(1)
            tok = self.peek()
            if tok.text in ("+", "-"):
                self.next()
                sign = Fraction(-1) if tok.text == "-" else Fraction(1)
            elif not first:
                break
            if self._zero_term():
                first = False
                if self.peek().text not in ("+", "-"):
                    break
                continue
            coeff = Fraction(1)
            if self.peek().kind == "int":
                coeff = self.rational()
                self.expect("*")
            name = self.expect_id("generator name")
            if name.text not in names:
                raise DslError(f"unknown identifier {name.text!r}", name.span)
            for k, c in enumerate(names[name.text]):
                vec[k] += sign * coeff * c
            first = False
            if self.peek().text not in ("+", "-"):
                break
        return tuple(vec)

    def bilin(self, names, m) -> Matrix:
        mat = [[Fraction(0)] * m for _ in range(m)]
        first = True
        while True:
            sign = Fraction(1)
            tok = self.peek()
            if tok.text in ("+", "-"):
                self.next()
                sign = Fraction(-1) if tok.text == "-" else Fraction(1)
            elif not first:
                break
            if self._zero_term():
                first = False
                if self.peek().text not in ("+", "-"):
                    break
                continue
            coeff = Fraction(1)
            if self.peek().kind == "int":
                coeff = self.rational()
                self.expect("*")
            u = self.factor(names, m)
            self.expect(".")
            v = self.factor(names, m)
            for a in range(m):
                if not u[a]:
                    continue
                for b in range(m):
                    if v[b]:
                        mat[a][b] += sign * coeff * u[a] * v[b]
            first = False
            if self.peek().text not in ("+", "-"):
                break
        return Matrix(mat, ncols=m)

    def factor(self, names, m) -> tuple[Fraction, ...]:
        tok = self.peek()
        if tok.text == "(":
            self.next()
            vec = self.lincomb(names, m)
            self.expect(")")
            return vec
        name = self.expect_id("generator name")
        if name.text not in names:
            raise DslError(f"unknown identifier {name.text!r}", name.span)
        return names[name.text]


def parse_type_report(text: str):
    """Parse without enforcing validity; returns (presentation, report)."""
    p = _Parser(text)
    p.expect("type")
    name = p.expect_id("type name")
    p.expect("{")

    p.expect("generators")
    p.expect(":")
    labels = [p.expect_id("generator name")]
    while p.peek().text == ",":
        p.next()
        labels.append(p.expect_id("generator name"))
    seen = set()
    for tok in labels:
        if tok.text in seen:
            raise DslError(f"duplicate generator {tok.text!r}", tok.span)
        seen.add(tok.text)
    labels_t = tuple(tok.text for tok in labels)
    m = len(labels_t)
    names = {
        lbl: tuple(Fraction(int(i == j)) for j in range(m)) for i, lbl in enumerate(labels_t)
    }
    p.expect(";")

    p.expect("star")
    p.expect(":")
    star = p.lincomb(names, m)
    p.expect(";")

    aux: dict[str, tuple[Fraction, ...]] = {}
    if p.peek().text == "aux":
        p.next()
        p.expect(":")
        while p.peek().kind == "id" and p.tokens[p.i + 1].text == "=":
            name_tok = p.expect_id("auxiliary name")
            if name_tok.text in names:
                raise DslError(f"duplicate name {name_tok.text!r}", name_tok.span)
            p.expect("=")
            vec = p.lincomb(names, m)
            names[name_tok.text] = vec
            aux[name_tok.text] = vec
            if p.peek().text == ",":
                p.next()
        p.expect(";")

    p.expect("relations")
    p.expect(":")
    relations = []
    while p.peek().text == "(":
        p.next()
        left = p.bilin(names, m)
        p.expect("|")
        right = p.bilin(names, m)
        p.expect(")")
        relations.append(RelationElement(left, right))
    if not relations:
        raise DslError("a type needs at least one relation", p.peek().span)
    p.expect("}")
    tail = p.peek()
    if tail.kind != "end":
        raise DslError(f"trailing input {tail.text!r}", tail.span)

    t = TypePresentation(GeneratorSpace(name.text, labels_t), star, relations, aux=aux)
    return t, validate(t)


def parse_type(text: str) -> TypePresentation:
    """Parse and validate; invalid presentations raise with the report attached."""
    t, report = parse_type_report(text)
    if not report.valid:
        raise DslValidationError(report)
    return t


# ---------------------------------------------------------------------------
# serialization


def serialize(t: TypePresentation, format: str = "dsl") -> str:
    if format == "dsl":
        return _to_dsl(t)
    if format == "json":
        return _to_json(t)
    if format == "latex":
        return _to_latex(t)
    raise ValueError(f"unknown format {format!r}")


def _name_out(label: str) -> str:
    return label if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", label) else f'"{label}"'


def _lincomb_str(vec, labels) -> str:
    parts = []
    for c, lbl in zip(vec, labels):
        if not c:
            continue
        body = _name_out(lbl) if abs(c) == 1 else f"{format_scalar(abs(c))}*{_name_out(lbl)}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, first = parts[0]
    text = ("-" if sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _bilin_str(mat: Matrix, labels) -> str:
    parts = []
    for i, row in enumerate(mat.rows):
        for j, c in enumerate(row):
            if not c:
                continue
            term = f"{_name_out(labels[i])}.{_name_out(labels[j])}"
            if abs(c) != 1:
                term = f"{format_scalar(abs(c))}*{term}"
            parts.append(("-" if c < 0 else "+", term))
    if not parts:
        return "0"
    sign, first = parts[0]
    text = ("-" if sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _to_dsl(t: TypePresentation) -> str:
    labels = t.generators.labels
    lines = [f"type {_name_out(t.name)} {{"]
    lines.append("  generators: " + ", ".join(_name_out(l) for l in labels) + ";")
    star = t.star if t.star is not None else (Fraction(0),) * t.dim
    lines.append("  star: " + _lincomb_str(star, labels) + ";")
    if t.aux:
        defs = ", ".join(
            f"{_name_out(k)} = {_lincomb_str(v, labels)}" for k, v in t.aux.items()
        )
        lines.append(f"  aux: {defs};")
    lines.append("  relations:")
    for rel in t.relations:
        lines.append(f"    ({_bilin_str(rel.left, labels)} | {_bilin_str(rel.right, labels)})")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_json(t: TypePresentation) -> str:
    obj = {
        "name": t.name,
        "generators": list(t.generators.labels),
        "star": [format_scalar(x) for x in t.star] if t.star is not None else None,
        "aux": {k: [format_scalar(x) for x in v] for k, v in t.aux.items()},
        "relations": [
            {
                "L": [[format_scalar(x) for x in row] for row in rel.left.rows],
                "R": [[format_scalar(x) for x in row] for row in rel.right.rows],
            }
            for rel in t.relations
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def parse_type_json(text: str) -> TypePresentation:
    obj = json.loads(text)
    gens = GeneratorSpace(obj["name"], tuple(obj["generators"]))
    star = [Fraction(x) for x in obj["star"]] if obj.get("star") is not None else None
    relations = [
        RelationElement(
            Matrix([[Fraction(x) for x in row] for row in rel["L"]]),
            Matrix([[Fraction(x) for x in row] for row in rel["R"]]),
        )
        for rel in obj["relations"]
    ]
    aux = {k: [Fraction(x) for x in v] for k, v in obj.get("aux", {}).items()}
    return TypePresentation(
        gens, star, relations, aux=aux, star_unresolved=star is None
    )


def _to_latex(t: TypePresentation) -> str:
    from .catalog import latex_symbol

    labels = [latex_symbol(l) for l in t.generators.labels]

    def side(mat: Matrix, shape: str) -> str:
        parts = []
        for i, row in enumerate(mat.rows):
            for j, c in enumerate(row):
                if not c:
                    continue
                if shape == "left":
                    term = f"(x {labels[i]} y) {labels[j]} z"
                else:
                    term = f"x {labels[i]} (y {labels[j]} z)"
                if abs(c) != 1:
                    term = f"{format_scalar(abs(c))}\\,{term}"
                parts.append(("-" if c < 0 else "+", term))
        if not parts:
            return "0"
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    rows = [
        f"{side(rel.left, 'left')} &= {side(rel.right, 'right')} \\\\"
        for rel in t.relations
    ]
    return "\\begin{array}{rcl}\n" + "\n".join(rows) + "\n\\end{array}\n"
