"""Textual group specifications.

Grammar (all constructors by name, arguments comma-separated):

    spec     := cyclic(n) | sym(n) | alt(n) | dihedral(n)
              | perm(degree, permlit, ...)
              | direct(spec, spec)
              | wreath(spec, m, spec)
              | affine(p, d, matrix, ...)
              | sylow_of(spec, p)
              | quotient(spec, spec)
    permlit  := one or more parenthesised cycles, e.g. (1 2 3)(4 5)
    matrix   := [[int, ...], ...]

parse -> print -> parse round-trips; errors carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .caps import DEFAULT_CAPS, Caps
from .group import (
    PermGroup,
    affine_semidirect,
    direct_product,
    quotient_action,
    sylow,
    wreath_imprimitive,
)
from .perm import MalformedPermutation, Permutation


class SpecError(ValueError):
    """Syntax or semantic error in a group specification."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class GroupSpec:
    """AST node: a constructor name with integer / spec / literal arguments."""

    constructor: str
    args: tuple = ()

    def __str__(self):
        return _print_spec(self)


def _print_arg(a):
    if isinstance(a, GroupSpec):
        return _print_spec(a)
    if isinstance(a, Permutation):
        return str(a)
    if isinstance(a, tuple):  # matrix
        return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in a) + "]"
    return str(a)


def _print_spec(s: GroupSpec) -> str:
    return f"{s.constructor}(" + ", ".join(_print_arg(a) for a in s.args) + ")"


_CONSTRUCTORS = {
    "cyclic", "sym", "alt", "dihedral", "perm",
    "direct", "wreath", "affine", "sylow_of", "quotient",
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- position and diagnostics -------------------------------------------

    def _line_col(self, pos=None):
        pos = self.pos if pos is None else pos
        consumed = self.text[:pos]
        line = consumed.count("\n") + 1
        column = pos - (consumed.rfind("\n") + 1) + 1
        return line, column

    def error(self, message):
        line, col = self._line_col()
        raise SpecError(message, line, col)

    # -- lexing helpers ------------------------------------------------------

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            got = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            self.error(f"expected '{ch}', got {got!r}")
        self.pos += 1

    def integer(self):
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def name(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            self.error("expected a constructor name")
        return self.text[start : self.pos]

    # -- grammar -------------------------------------------------------------

    def spec(self) -> GroupSpec:
        start = self.pos
        ctor = self.name()
        if ctor not in _CONSTRUCTORS:
            self.pos = start
            self.error(f"unknown constructor {ctor!r} (expected one of {sorted(_CONSTRUCTORS)})")
        self.expect("(")
        args = getattr(self, "_args_" + ctor)()
        self.expect(")")
        return GroupSpec(ctor, tuple(args))

    def _args_cyclic(self):
        return [self.integer()]

    _args_sym = _args_alt = _args_dihedral = _args_cyclic

    def _args_perm(self):
        args = [self.integer()]
        while self.peek() == ",":
            self.expect(",")
            args.append(self.permutation())
        return args

    def permutation(self):
        self.skip_ws()
        start = self.pos
        while True:
            self.skip_ws()
            if self.peek() != "(":
                break
            self.expect("(")
            while self.peek() not in (")", ""):
                self.integer()
                if self.peek() == ",":
                    self.expect(",")
            self.expect(")")
        literal = self.text[start : self.pos].strip()
        if not literal:
            self.error("expected a permutation literal such as (1 2 3)(4 5)")
        try:
            return Permutation.parse(literal)
        except MalformedPermutation as exc:
            self.pos = start
            self.error(str(exc))

    def _args_direct(self):
        a = self.spec()
        self.expect(",")
        return [a, self.spec()]

    def _args_wreath(self):
        a = self.spec()
        self.expect(",")
        m = self.integer()
        self.expect(",")
        return [a, m, self.spec()]

    def _args_affine(self):
        p = self.integer()
        self.expect(",")
        d = self.integer()
        args = [p, d]
        while self.peek() == ",":
            self.expect(",")
            args.append(self.matrix())
        return args

    def matrix(self):
        self.expect("[")
        rows = []
        while True:
            rows.append(self.row())
            if self.peek() == ",":
                self.expect(",")
                continue
            break
        self.expect("]")
        return tuple(rows)

    def row(self):
        self.expect("[")
        vals = []
        while True:
            vals.append(self.integer())
            if self.peek() == ",":
                self.expect(",")
                continue
            break
        self.expect("]")
        return tuple(vals)

    def _args_sylow_of(self):
        a = self.spec()
        self.expect(",")
        return [a, self.integer()]

    def _args_quotient(self):
        a = self.spec()
        self.expect(",")
        return [a, self.spec()]

    def parse(self) -> GroupSpec:
        out = self.spec()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected trailing input {self.text[self.pos:]!r}")
        return out


def parse_spec(text: str) -> GroupSpec:
    return _Parser(text).parse()


def build_group(spec: GroupSpec, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Construct the permutation group a spec describes."""

    def bad(msg):
        raise SpecError(msg, 1, 1)

    c, a = spec.constructor, spec.args
    if c == "cyclic":
        if a[0] < 1:
            bad(f"cyclic({a[0]}): order must be at least 1")
        return PermGroup.cyclic(a[0], caps=caps)
    if c == "sym":
        if a[0] < 1:
            bad(f"sym({a[0]}): degree must be at least 1")
        return PermGroup.symmetric(a[0], caps=caps)
    if c == "alt":
        if a[0] < 3:
            bad(f"alt({a[0]}): degree must be at least 3")
        return PermGroup.alternating(a[0], caps=caps)
    if c == "dihedral":
        if a[0] < 3:
            bad(f"dihedral({a[0]}): polygon needs at least 3 vertices")
        return PermGroup.dihedral(a[0], caps=caps)
    if c == "perm":
        degree = a[0]
        if degree < 1:
            bad(f"perm({degree}, ...): degree must be at least 1")
        gens = []
        for lit in a[1:]:
            if lit.degree > degree:
                bad(f"permutation {lit} moves points beyond degree {degree}")
            gens.append(lit.extended(degree))
        return PermGroup(degree, gens, caps=caps)
    if c == "direct":
        return direct_product(build_group(a[0], caps), build_group(a[1], caps), caps=caps)
    if c == "wreath":
        base, m, top = build_group(a[0], caps), a[1], build_group(a[2], caps)
        if top.degree != m:
            bad(f"wreath: top group degree {top.degree} != block count {m}")
        return wreath_imprimitive(base, m, top, caps=caps)
    if c == "affine":
        try:
            return affine_semidirect(a[0], a[1], [list(map(list, m)) for m in a[2:]], caps=caps)
        except ValueError as exc:
            bad(str(exc))
    if c == "sylow_of":
        return sylow(build_group(a[0], caps), a[1], caps=caps)
    if c == "quotient":
        G = build_group(a[0], caps)
        N = build_group(a[1], caps)
        if N.degree != G.degree:
            bad(f"quotient: degrees differ ({G.degree} vs {N.degree})")
        if not N.is_subgroup_of(G) or not N.is_normal_in(G):
            bad("quotient: second spec is not a normal subgroup of the first")
        return quotient_action(G, N, caps=caps)[0]
    bad(f"unknown constructor {c!r}")
