"""Canonical text form for polynomials.

Grammar (canonical output form, bit-exact):

* terms joined by `` + `` / `` - ``, in ascending graded-lex order;
* each term is ``c*x1^a1*x2^a2...`` with ``c`` a rational ``p/q`` in lowest
  terms (``/q`` omitted when q = 1, ``^1`` omitted, exponent-0 variables
  omitted, coefficient always present);
* variable families: ``x1..xn`` (inputs), ``y1..yn`` (Legendre duals),
  ``v1..vn`` / ``w1..wn`` (bridge variables).

The parser is laxer than the printer: it accepts coefficient-less terms
("x1 + x2^2"), factors in any order, a Unicode minus sign, and arbitrary
whitespace.  Printing a parsed canonical string reproduces it byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial

FAMILIES = "vwxy"

_DUAL_LETTER = {"x": "y", "y": "x", "v": "w", "w": "v"}


class PolynomialParseError(ValueError):
    """Syntax or semantic error in polynomial text, with a column position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position + 1})")
        self.position = position


def variable_names(letter: str, dim: int) -> tuple[str, ...]:
    return tuple(f"{letter}{i + 1}" for i in range(dim))


def dual_names(names: tuple[str, ...]) -> tuple[str, ...]:
    """Display names for the Legendre-dual variables, position by position.

    Plain inputs map family-wise (x <-> y, v <-> w).  For a bridge polynomial
    mixing v and x the duals are named crosswise: the dual of the v-block is
    called y (it carries the image point, the argument of the inverse map) and
    the dual of the x-block is called w.
    """
    letters = {name[0] for name in names}
    if "v" in letters and "x" in letters:
        mapping = {"v": "y", "x": "w"}
    else:
        mapping = _DUAL_LETTER
    out = []
    for name in names:
        letter = name[0]
        if letter not in mapping:
            raise ValueError(f"variable {name!r} has no dual name")
        out.append(mapping[letter] + name[1:])
    return tuple(out)


# -- scanning -----------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "−":  # Unicode minus
            tokens.append(("op", "-", i))
            i += 1
            continue
        if ch in "+-*/^":
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("var", text[i:j], i))
            i = j
            continue
        raise PolynomialParseError(f"unexpected character {ch!r}", i)
    return tokens


def infer_variables(text: str) -> tuple[str, ...]:
    """Canonical variable tuple for a polynomial text: per family letter, all
    indices 1..max seen, families in alphabetical order (v, w, x, y)."""
    highest: dict[str, int] = {}
    for kind, value, pos in _tokenize(text):
        if kind != "var":
            continue
        letter, digits = value[0], value[1:]
        if letter not in FAMILIES or not digits:
            raise PolynomialParseError(f"unknown variable {value!r}", pos)
        index = int(digits)
        if index < 1 or digits != str(index):
            raise PolynomialParseError(f"unknown variable {value!r}", pos)
        highest[letter] = max(highest.get(letter, 0), index)
    names: list[str] = []
    for letter in sorted(highest):
        names.extend(f"{letter}{i + 1}" for i in range(highest[letter]))
    return tuple(names)


def parse_polynomial(text: str, names: tuple[str, ...]) -> Polynomial:
    """Parse text against an explicit ordered variable tuple."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("empty polynomial", 0)
    dim = len(names)
    slot = {name: i for i, name in enumerate(names)}
    terms: list[tuple[tuple[int, ...], Fraction]] = []
    pos = 0

    def parse_number(at: int) -> tuple[int, int]:
        kind, value, p = tokens[at]
        if kind != "num":
            raise PolynomialParseError("expected a number", p)
        return int(value), at + 1

    while pos < len(tokens):
        sign = 1
        kind, value, p = tokens[pos]
        if kind == "op" and value in "+-":
            if value == "-":
                sign = -1
            pos += 1
            if pos >= len(tokens):
                raise PolynomialParseError("dangling sign", p)
        coeff = Fraction(sign)
        exps = [0] * dim
        while True:
            kind, value, p = tokens[pos]
            if kind == "num":
                numerator, pos = parse_number(pos)
                if pos < len(tokens) and tokens[pos][1] == "/":
                    qpos = tokens[pos][2]
                    denominator, pos = parse_number(pos + 1)
                    if denominator == 0:
                        raise PolynomialParseError("malformed rational: zero denominator", qpos)
                    coeff *= Fraction(numerator, denominator)
                else:
                    coeff *= numerator
            elif kind == "var":
                if value not in slot:
                    raise PolynomialParseError(f"unknown variable {value!r}", p)
                exponent = 1
                pos += 1
                if pos < len(tokens) and tokens[pos][1] == "^":
                    exponent, pos = parse_number(pos + 1)
                exps[slot[value]] += exponent
            else:
                raise PolynomialParseError(f"unexpected {value!r}", p)
            if pos < len(tokens) and tokens[pos][1] == "*":
                pos += 1
                if pos >= len(tokens):
                    raise PolynomialParseError("dangling '*'", tokens[-1][2])
                continue
            break
        terms.append((tuple(exps), coeff))
        if pos < len(tokens):
            kind, value, p = tokens[pos]
            if kind != "op" or value not in "+-":
                raise PolynomialParseError(f"expected '+' or '-', found {value!r}", p)
    return Polynomial(dim, terms)


def format_polynomial(p: Polynomial, names: tuple[str, ...]) -> str:
    """Canonical text form; printing is deterministic and parse-stable."""
    if len(names) != p.dim:
        raise ValueError(f"expected {p.dim} variable names, got {len(names)}")
    items = p.sorted_terms()
    if not items:
        return "0"
    pieces: list[str] = []
    for position, (exps, coeff) in enumerate(items):
        magnitude = str(abs(coeff))
        factors = "".join(
            f"*{names[i]}" + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(exps)
            if e
        )
        body = magnitude + factors
        if position == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append((" - " if coeff < 0 else " + ") + body)
    return "".join(pieces)
