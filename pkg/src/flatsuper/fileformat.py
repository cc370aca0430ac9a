"""Plain-text reading and writing of algebras, products, matrices and vectors.

An algebra file looks like::

    algebra g3
    basis x1:even x2:even y1:odd y2:odd
    bracket [x1,y1] = y2
    form parity=odd
    omega(x1,y2) = 1
    omega(x2,y1) = 1

Brackets are listed for pairs ``[bi,bj]`` with ``bi`` not after ``bj`` in basis
order; the rest follows from graded anti-symmetry.  Each ``omega`` pair appears
in one orientation only.  ``#`` starts a comment.  All scalars are exact
rationals written as integers or ``p/q``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from .algebra import LieSuperalgebra
from .linalg import (
    BilinearForm,
    SuperSpace,
    format_scalar,
    parity_name,
    sign,
    zeros,
)
from .products import ProductTable


class ParseError(ValueError):
    """A malformed input file; the message carries the line number."""

    def __init__(self, message: str, line: Optional[int] = None, source: str = "<text>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_SCALAR = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)(?:({_SCALAR})\*?)?({_NAME})?")
_BRACKET = re.compile(rf"^\[\s*({_NAME})\s*,\s*({_NAME})\s*\]\s*=\s*(.+)$")
_OMEGA = re.compile(rf"^omega\(\s*({_NAME})\s*,\s*({_NAME})\s*\)\s*=\s*(.+)$")
_PRODUCT = re.compile(rf"^({_NAME})\s*\*\s*({_NAME})\s*=\s*(.+)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _scalar(token: str) -> Fraction:
    t = token.replace(" ", "")
    if not re.fullmatch(rf"[+-]?{_SCALAR}", t):
        raise ValueError(f"not an exact rational: {token!r}")
    try:
        return Fraction(t)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {token!r}") from None


def parse_combination(text: str, space: SuperSpace) -> np.ndarray:
    """Parse ``c1*b1 + c2*b2 - b3`` (or ``0``) into a coordinate vector."""
    s = text.replace(" ", "")
    out = zeros(space.dim)
    if s == "0":
        return out
    if not s:
        raise ValueError("empty linear combination")
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or m.group(3) is None:
            raise ValueError(f"cannot read a term at {s[pos:]!r}")
        sgn, coeff, name = m.groups()
        if not first and not sgn:
            raise ValueError(f"missing '+' or '-' before {name!r}")
        if name not in space.names:
            raise ValueError(f"unknown basis name {name!r}")
        c = _scalar(coeff) if coeff else Fraction(1)
        out[space.index(name)] += -c if sgn == "-" else c
        pos = m.end()
        first = False
    return out


def parse_vector(text: str, space: SuperSpace) -> np.ndarray:
    """A vector given either as a linear combination of basis names or as
    comma/space separated coordinates."""
    if re.search(r"[A-Za-z_]", text):
        return parse_combination(text, space)
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if len(tokens) != space.dim:
        raise ValueError(f"expected {space.dim} coordinates, got {len(tokens)}")
    return np.array([_scalar(t) for t in tokens], dtype=object)


def parse_matrix(text: str, source: str = "<matrix>") -> np.ndarray:
    """Rows of whitespace-separated rationals, one row per line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        try:
            rows.append([_scalar(t) for t in line.split()])
        except ValueError as exc:
            raise ParseError(str(exc), lineno, source) from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError("rows have different lengths", lineno, source)
    if not rows:
        return np.empty((0, 0), dtype=object)
    return np.array(rows, dtype=object)


def format_matrix(m) -> str:
    m = np.asarray(m, dtype=object)
    return "".join(" ".join(format_scalar(x) for x in row) + "\n" for row in m)


def parse_algebra(text: str, source: str = "<text>") -> LieSuperalgebra:
    name = ""
    space: Optional[SuperSpace] = None
    brackets: dict = {}
    form_parity: Optional[int] = None
    omega: dict = {}

    def fail(msg, lineno):
        raise ParseError(msg, lineno, source)

    def index(token, lineno):
        if token not in space.names:
            fail(f"unknown basis name {token!r}", lineno)
        return space.index(token)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "algebra":
            if name:
                fail("second 'algebra' line", lineno)
            if not rest:
                fail("'algebra' needs a name", lineno)
            name = rest
        elif keyword == "basis":
            if space is not None:
                fail("second 'basis' line", lineno)
            names, parities = [], []
            for tok in rest.split():
                nm, colon, par = tok.partition(":")
                if not colon or par not in ("even", "odd") or not re.fullmatch(_NAME, nm):
                    fail(f"basis tokens look like name:even or name:odd, got {tok!r}", lineno)
                if nm in names:
                    fail(f"basis name {nm!r} repeated", lineno)
                names.append(nm)
                parities.append(0 if par == "even" else 1)
            space = SuperSpace(tuple(names), tuple(parities))
        elif keyword == "bracket":
            if space is None:
                fail("'bracket' before 'basis'", lineno)
            if form_parity is not None:
                fail("'bracket' after 'form'", lineno)
            m = _BRACKET.match(rest)
            if m is None:
                fail("bracket lines look like: bracket [x,y] = c*z + ...", lineno)
            i, j = index(m.group(1), lineno), index(m.group(2), lineno)
            if i > j:
                fail(f"write the pair as [{space.names[j]},{space.names[i]}] (basis order)", lineno)
            if (i, j) in brackets:
                fail(f"duplicate bracket [{space.names[i]},{space.names[j]}]", lineno)
            try:
                vec = parse_combination(m.group(3), space)
            except ValueError as exc:
                fail(str(exc), lineno)
            p = space.parities
            for k in np.flatnonzero(vec != 0):
                if p[k] != (p[i] + p[j]) % 2:
                    fail(f"[{space.names[i]},{space.names[j]}] has parity "
                         f"{parity_name(p[i] + p[j])} but {space.names[k]} is "
                         f"{parity_name(p[k])}", lineno)
            if i == j and p[i] == 0 and np.any(vec != 0):
                fail(f"[{space.names[i]},{space.names[i]}] of an even vector must vanish", lineno)
            brackets[i, j] = vec
        elif keyword == "form":
            if space is None:
                fail("'form' before 'basis'", lineno)
            if form_parity is not None:
                fail("second 'form' line", lineno)
            m = re.fullmatch(r"parity\s*=\s*(even|odd)", rest)
            if m is None:
                fail("form lines look like: form parity=even|odd", lineno)
            form_parity = 0 if m.group(1) == "even" else 1
        elif keyword.startswith("omega"):
            if form_parity is None:
                fail("'omega' before 'form'", lineno)
            m = _OMEGA.match(line)
            if m is None:
                fail("omega lines look like: omega(x,y) = p/q", lineno)
            i, j = index(m.group(1), lineno), index(m.group(2), lineno)
            if (i, j) in omega or (j, i) in omega:
                fail(f"duplicate omega pair ({space.names[i]},{space.names[j]})", lineno)
            try:
                val = _scalar(m.group(3))
            except ValueError as exc:
                fail(str(exc), lineno)
            p = space.parities
            if val != 0 and (p[i] + p[j]) % 2 != form_parity:
                fail(f"omega({space.names[i]},{space.names[j]}) must vanish for a "
                     f"{parity_name(form_parity)} form", lineno)
            if i == j and p[i] == 0 and val != 0:
                fail(f"omega({space.names[i]},{space.names[i]}) of an even vector must vanish",
                     lineno)
            omega[i, j] = val
        else:
            fail(f"unknown keyword {keyword!r}", lineno)

    if space is None:
        raise ParseError("missing 'basis' line", None, source)
    n = space.dim
    p = space.parities
    c = zeros(n, n, n)
    for (i, j), vec in brackets.items():
        c[i, j] = vec
        c[j, i] = -sign(p[i] * p[j]) * vec
    form = None
    if form_parity is not None:
        values = zeros(n, n)
        for (i, j), val in omega.items():
            values[i, j] = val
            values[j, i] = -sign(p[i] * p[j]) * val
        form = BilinearForm(space, form_parity, values)
    return LieSuperalgebra(space, ProductTable(space, c), form, name)


def format_algebra(g: LieSuperalgebra) -> str:
    """Canonical text; ``parse_algebra(format_algebra(g))`` reproduces ``g``."""
    sp = g.space
    lines = [f"algebra {g.name or 'g'}",
             "basis " + " ".join(f"{nm}:{parity_name(p)}" for nm, p in zip(sp.names, sp.parities))]
    c = g.bracket.constants
    for i in range(sp.dim):
        for j in range(i, sp.dim):
            if np.any(c[i, j] != 0):
                lines.append(f"bracket [{sp.names[i]},{sp.names[j]}] = {sp.format_vector(c[i, j])}")
    if g.form is not None:
        lines.append(f"form parity={parity_name(g.form.parity)}")
        v = g.form.values
        for i in range(sp.dim):
            for j in range(i, sp.dim):
                if v[i, j] != 0:
                    lines.append(f"omega({sp.names[i]},{sp.names[j]}) = {format_scalar(v[i, j])}")
    return "\n".join(lines) + "\n"


def load_algebra(path) -> LieSuperalgebra:
    path = Path(path)
    return parse_algebra(path.read_text(), str(path))


def save_algebra(g: LieSuperalgebra, path) -> None:
    Path(path).write_text(format_algebra(g))


def format_product(table: ProductTable) -> str:
    """All ``n*n`` products, rows in basis order."""
    return "\n".join(table.format_lines("*")) + "\n"


def parse_product(text: str, space: SuperSpace, source: str = "<product>") -> ProductTable:
    """Read lines ``x * y = combination``; missing pairs are zero."""
    n = space.dim
    c = zeros(n, n, n)
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        m = _PRODUCT.match(line)
        if m is None:
            raise ParseError("product lines look like: x * y = c*z + ...", lineno, source)
        try:
            i, j = space.index(m.group(1)), space.index(m.group(2))
            vec = parse_combination(m.group(3), space)
        except (ValueError, KeyError) as exc:
            raise ParseError(str(exc), lineno, source) from None
        if (i, j) in seen:
            raise ParseError(f"duplicate product {m.group(1)} * {m.group(2)}", lineno, source)
        seen.add((i, j))
        c[i, j] = vec
    try:
        return ProductTable(space, c)
    except ValueError as exc:
        raise ParseError(str(exc), None, source) from None
