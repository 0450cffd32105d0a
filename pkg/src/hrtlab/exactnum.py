"""Exact arithmetic for numbers of the form q0 + q1*sqrt(n1) + q2*sqrt(n2) + ...

Configuration coordinates may arrive as exact text (the restricted grammar
``a/b``, ``sqrt(n)``, ``a/b*sqrt(n)``, ``a/b + c/d*sqrt(n)`` with integer
a, b, c, d, n).  Those values are kept symbolically so that classification
and rational-dependence questions have exact answers.  The representation is
a finite sum of rational multiples of square roots of distinct squarefree
integers; square roots of distinct squarefree integers are linearly
independent over the rationals, so the zero test is coefficient-wise.

Closed under addition, subtraction and multiplication.  ``sqrt(s)*sqrt(t)``
reduces with a single gcd, no factorization of products is ever needed once
the keys are squarefree.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")
_ROOT_RE = re.compile(r"^(-?)(?:(\d+)(?:/(\d+))?\*)?sqrt\((\d+)\)$")


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s * f**2 with s squarefree; returns (s, f).  Requires n >= 0."""
    if n < 0:
        raise ValueError("squarefree_split needs a nonnegative integer")
    if n == 0:
        return 0, 1
    s, f = n, 1
    d = 2
    while d * d <= s:
        while s % (d * d) == 0:
            s //= d * d
            f *= d
        d += 1
    return s, f


class SqrtExpr:
    """Immutable exact value: sum of Fraction coefficients times sqrt(key).

    Key 1 holds the rational part.  Keys are squarefree positive integers and
    coefficients are nonzero; the empty sum is zero.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for n, coef in terms.items():
                coef = Fraction(coef)
                if coef == 0:
                    continue
                s, f = squarefree_split(n)
                if s == 0:
                    continue
                clean[s] = clean.get(s, Fraction(0)) + coef * f
        object.__setattr__(self, "_terms", tuple(sorted(
            (s, c) for s, c in clean.items() if c != 0)))

    def __setattr__(self, name, value):
        raise AttributeError("SqrtExpr is immutable")

    @classmethod
    def from_rational(cls, q: RationalLike) -> "SqrtExpr":
        return cls({1: Fraction(q)})

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    @property
    def rational_part(self) -> Fraction:
        for s, c in self._terms:
            if s == 1:
                return c
        return Fraction(0)

    def coefficient(self, s: int) -> Fraction:
        """Coefficient of sqrt(s); s must already be squarefree."""
        for key, c in self._terms:
            if key == s:
                return c
        return Fraction(0)

    def radicals(self) -> tuple[int, ...]:
        """Squarefree keys > 1 with nonzero coefficient."""
        return tuple(s for s, _ in self._terms if s != 1)

    @property
    def is_rational(self) -> bool:
        return all(s == 1 for s, _ in self._terms)

    @property
    def is_integer(self) -> bool:
        return self.is_rational and self.rational_part.denominator == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.rational_part

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for s, c in other._terms:
            terms[s] = terms.get(s, Fraction(0)) + c
        return SqrtExpr(terms)

    __radd__ = __add__

    def __neg__(self):
        return SqrtExpr({s: -c for s, c in self._terms})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for s, a in self._terms:
            for t, b in other._terms:
                g = math.gcd(s, t)
                key = (s // g) * (t // g)
                terms[key] = terms.get(key, Fraction(0)) + a * b * g
        return SqrtExpr(terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return float(sum(float(c) * math.sqrt(s) for s, c in self._terms))

    def __repr__(self):
        return f"SqrtExpr({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for s, c in self._terms:
            body = str(c) if s == 1 else (
                f"sqrt({s})" if c == 1 else f"{c}*sqrt({s})")
            if parts and not body.startswith("-"):
                parts.append("+ " + body)
            elif parts:
                parts.append("- " + body.lstrip("-"))
            else:
                parts.append(body)
        return " ".join(parts)


def _coerce(value) -> SqrtExpr:
    if isinstance(value, SqrtExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return SqrtExpr.from_rational(value)
    return NotImplemented


def parse_exact(text: str) -> SqrtExpr:
    """Parse the restricted exact grammar.

    Accepts ``a/b``, ``sqrt(n)``, ``a/b*sqrt(n)`` and two-term sums or
    differences of those, plus bare integers as rationals with denominator 1.
    Raises ValueError on anything else (decimal strings are not exact).
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty exact expression")
    # Grammar has no interior negatives (b, d, n positive), so every '-'
    # after the first character starts a new term.
    pieces = compact.replace("-", "+-").split("+")
    total = SqrtExpr()
    seen = False
    for piece in pieces:
        if piece == "":
            continue
        total = total + _parse_term(piece, text)
        seen = True
    if not seen:
        raise ValueError(f"not an exact expression: {text!r}")
    return total


def _parse_term(piece: str, original: str) -> SqrtExpr:
    m = _RAT_RE.match(piece)
    if m:
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {original!r}")
        return SqrtExpr.from_rational(Fraction(num, den))
    m = _ROOT_RE.match(piece)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        num = int(m.group(2)) if m.group(2) else 1
        den = int(m.group(3)) if m.group(3) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {original!r}")
        n = int(m.group(4))
        return SqrtExpr({n: Fraction(sign * num, den)})
    raise ValueError(f"not an exact expression: {original!r}")


def parse_real(text: str) -> "SqrtExpr | float":
    """Exact grammar if it matches, decimal float otherwise."""
    try:
        return parse_exact(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse real value {text!r}") from None
