"""Rational maps over Q with integer coefficients.

A map is stored as a coprime pair of integer polynomials (coefficients in
ascending degree) and evaluated homogeneously on P^1(Q), so poles and the
point at infinity need no special cases.  Moebius maps are the degree-1
maps and convert to and from :class:`~enumtrees.monoid.Mat2`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .core import PreconditionError, ProjPoint
from .monoid import Mat2

Poly = tuple[int, ...]


class MapSyntaxError(PreconditionError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


# ---------------------------------------------------------------------------
# polynomial helpers (ascending coefficient tuples)
# ---------------------------------------------------------------------------

def _trim(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _deg(p) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def poly_add(p, q):
    n = max(len(p), len(q))
    return _trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_scale(p, c):
    return _trim(c * a for a in p)


def _poly_divmod_q(p, q):
    """Division over Q; ``q`` must be nonzero."""
    p = [Fraction(a) for a in p]
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and any(p):
        shift = len(p) - len(q)
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[i + shift] -= c * b
        p = list(_trim(p))
    return _trim(quot), _trim(p)


def _lcm_den(p) -> int:
    return reduce(lambda acc, c: acc * Fraction(c).denominator // gcd(acc, Fraction(c).denominator), p, 1)


def _clear_denominators(p, q) -> tuple[Poly, Poly]:
    """Scale two rational polynomials by one common factor to integers."""
    m = _lcm_den(tuple(p) + tuple(q))
    return tuple(int(Fraction(c) * m) for c in p), tuple(int(Fraction(c) * m) for c in q)


def _primitive(p) -> Poly:
    """Scale a rational polynomial to coprime integers with positive leading term."""
    if not p:
        return ()
    den = _lcm_den(p)
    ints = [int(Fraction(c) * den) for c in p]
    g = reduce(gcd, ints)
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


def poly_gcd(p, q) -> Poly:
    """Primitive gcd over Q of two integer polynomials."""
    a, b = _trim(p), _trim(q)
    while b:
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    return _primitive(a)


def _exact_quotient(p, g) -> Poly:
    quot, rem = _poly_divmod_q(p, g)
    if rem:
        raise AssertionError("gcd does not divide")
    return quot


def _homogeneous(coeffs, deg, x0, x1):
    total = 0
    pw0 = 1
    for i in range(deg + 1):
        c = coeffs[i] if i < len(coeffs) else 0
        if c:
            total += c * pw0 * x1 ** (deg - i)
        pw0 *= x0
    return total


def _poly_powers(p, n):
    out = [(1,)]
    for _ in range(n):
        out.append(poly_mul(out[-1], p))
    return out


# ---------------------------------------------------------------------------
# RationalMap
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalMap:
    """``numer(x) / denom(x)``, normalised on construction.

    Normal form: numerator and denominator coprime over Q, all coefficients
    jointly coprime integers, leading coefficient of the denominator positive.
    """

    numer: Poly
    denom: Poly

    def __post_init__(self):
        n = _trim(int(c) for c in self.numer)
        d = _trim(int(c) for c in self.denom)
        if not d:
            raise PreconditionError("zero denominator polynomial")
        if not n:
            raise PreconditionError("constant map")
        g = poly_gcd(n, d)
        if _deg(g) > 0:
            n, d = _clear_denominators(_exact_quotient(n, g), _exact_quotient(d, g))
        content = reduce(gcd, n + d)
        if d[-1] < 0:
            content = -content
        n = tuple(c // content for c in n)
        d = tuple(c // content for c in d)
        if max(_deg(n), _deg(d)) < 1:
            raise PreconditionError("constant map")
        object.__setattr__(self, "numer", n)
        object.__setattr__(self, "denom", d)

    @property
    def degree(self) -> int:
        return max(_deg(self.numer), _deg(self.denom))

    def homogeneous(self) -> tuple[Poly, Poly]:
        """Numerator and denominator padded to ``degree + 1`` coefficients."""
        k = self.degree + 1
        pad = lambda p: tuple(p) + (0,) * (k - len(p))
        return pad(self.numer), pad(self.denom)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return eval_map(self, p)

    def is_moebius(self) -> bool:
        return self.degree == 1

    def as_mat2(self) -> Mat2:
        if self.degree != 1:
            raise PreconditionError("not a Moebius map")
        n, d = self.homogeneous()
        return Mat2(n[1], n[0], d[1], d[0])

    @classmethod
    def from_mat2(cls, m: Mat2) -> "RationalMap":
        if m.det == 0:
            raise PreconditionError("singular matrix")
        return cls((m.b, m.a), (m.d, m.c))

    def monomial(self):
        """``(a, b, e)`` when the map is ``(a/b) * x^e`` (``e`` may be negative), else None."""
        n, d = self.numer, self.denom
        nz_n = [i for i, c in enumerate(n) if c]
        nz_d = [i for i, c in enumerate(d) if c]
        if len(nz_n) != 1 or len(nz_d) != 1:
            return None
        i, j = nz_n[0], nz_d[0]
        if i != 0 and j != 0:
            return None
        return (n[i], d[j], i - j)

    def __str__(self):
        if self.denom == (1,):
            return format_poly(self.numer)
        return f"({format_poly(self.numer)})/({format_poly(self.denom)})"


def format_poly(p: Poly) -> str:
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts) or "0"


def eval_map(f: RationalMap, p: ProjPoint) -> ProjPoint:
    n, d = f.homogeneous()
    k = f.degree
    return ProjPoint(_homogeneous(n, k, p.x0, p.x1), _homogeneous(d, k, p.x0, p.x1))


def compose_maps(f: RationalMap, g: RationalMap) -> RationalMap:
    """``f o g`` by homogeneous substitution of g into f."""
    k = f.degree
    fn, fd = f.homogeneous()
    pn = _poly_powers(g.numer, k)
    pd = _poly_powers(g.denom, k)
    numer: Poly = ()
    denom: Poly = ()
    for i in range(k + 1):
        mono = poly_mul(pn[i], pd[k - i])
        numer = poly_add(numer, poly_scale(mono, fn[i]))
        denom = poly_add(denom, poly_scale(mono, fd[i]))
    return RationalMap(numer, denom)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([x+\-*^()/]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            off = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise MapSyntaxError(f"unexpected character {text[off]!r}", off)
        start = m.start(1) if m.group(1) else m.start(2)
        out.append((m.group(1) or m.group(2), start))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def offset(self):
        return self.toks[self.i][1]

    def take(self, expected=None):
        tok, off = self.toks[self.i]
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise MapSyntaxError(f"expected {expected!r}, found {shown}", off)
        self.i += 1
        return tok

    def parse_map(self):
        numer = self.side()
        denom: Poly = (1,)
        if self.peek() == "/":
            self.take("/")
            denom = self.side()
        if self.peek() != "":
            raise MapSyntaxError(f"unexpected {self.peek()!r}", self.offset())
        return numer, denom

    def side(self):
        if self.peek() == "(":
            self.take("(")
            p = self.poly()
            self.take(")")
            return p
        return self.poly()

    def poly(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        total = poly_scale(self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            total = poly_add(total, poly_scale(self.term(), sign))
        return total

    def term(self):
        tok = self.peek()
        if tok.isdigit():
            c = int(self.take())
            if self.peek() == "*":
                self.take("*")
                return poly_scale(self.pow(), c)
            return _trim((c,))
        if tok == "x":
            return self.pow()
        shown = repr(tok) if tok else "end of input"
        raise MapSyntaxError(f"expected a term, found {shown}", self.offset())

    def pow(self):
        self.take("x")
        e = 1
        if self.peek() == "^":
            self.take("^")
            tok = self.peek()
            if not tok.isdigit():
                raise MapSyntaxError("expected an exponent", self.offset())
            e = int(self.take())
        return (0,) * e + (1,)


def parse_map(text: str) -> RationalMap:
    numer, denom = _Parser(text).parse_map()
    if not _trim(denom):
        raise PreconditionError("zero denominator polynomial")
    return RationalMap(numer, denom)


def parse_family(text: str) -> list[RationalMap]:
    parts = [s for s in text.split(";")]
    if not parts or any(not s.strip() for s in parts):
        raise PreconditionError("family must be a semicolon-separated list of maps")
    return [parse_map(s) for s in parts]


# ---------------------------------------------------------------------------
# Moebius heights
# ---------------------------------------------------------------------------

def moebius_height(m: Mat2) -> int:
    return max(abs(e) for e in m.canonical().entries)


def moebius_inverse(m: Mat2) -> Mat2:
    return Mat2(m.d, -m.b, -m.c, m.a).canonical()


def pgl_equal(m: Mat2, n: Mat2) -> bool:
    return m.canonical() == n.canonical()
