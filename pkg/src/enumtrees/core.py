"""Exact rationals, the projective line over Q, and the shared error types.

Rationals are :class:`fractions.Fraction` values; they already keep the
denominator positive and the pair reduced.  The point at infinity is the
module-level singleton :data:`INF`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rational = Fraction


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured node or point budget."""


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()


def rational_normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise PreconditionError("zero denominator")
    return Fraction(num, den)


def format_rational(q) -> str:
    if q is INF:
        return "inf"
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str):
    """Parse ``"p"``, ``"p/q"``, ``"-p/q"`` or ``"inf"``."""
    s = text.strip()
    if s.lower() == "inf":
        return INF
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise PreconditionError(f"not a rational: {text!r}") from None
    return rational_normalize(n, d)


@dataclass(frozen=True, slots=True)
class ProjPoint:
    """A point ``(x0:x1)`` of P^1(Q), stored as its canonical coprime pair.

    Any nonzero integer pair is accepted and normalised on construction, so
    ``ProjPoint(6, -10) == ProjPoint(-3, 5)``.
    """

    x0: int
    x1: int

    def __post_init__(self):
        a, b = self.x0, self.x1
        if a == 0 and b == 0:
            raise PreconditionError("(0:0) is not a projective point")
        g = gcd(a, b)
        if b < 0 or (b == 0 and a < 0):
            g = -g
        if g != 1:
            object.__setattr__(self, "x0", a // g)
            object.__setattr__(self, "x1", b // g)

    @property
    def is_infinite(self) -> bool:
        return self.x1 == 0

    def __str__(self):
        return format_rational(from_proj(self))


def to_proj(q) -> ProjPoint:
    if q is INF:
        return ProjPoint(1, 0)
    q = Fraction(q)
    return ProjPoint(q.numerator, q.denominator)


def from_proj(p: ProjPoint):
    if p.x1 == 0:
        return INF
    return Fraction(p.x0, p.x1)
