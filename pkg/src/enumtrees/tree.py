"""Navigation and indexing in the Calkin-Wilf tree.

A tree path is a string over ``"LR"`` listing the moves from the root 1;
it is the reversal of the node's word in :mod:`enumtrees.monoid`.
BFS indices are 0-based: index ``n`` has path bits equal to the binary
digits of ``n + 1`` after its leading one (L = 0, R = 1).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import count, islice

from . import monoid
from ._kernels import fusc_table
from .core import PreconditionError


def _positive(x) -> Fraction:
    return monoid._positive(x)


def children(x) -> tuple[Fraction, Fraction]:
    x = _positive(x)
    p, q = x.numerator, x.denominator
    return Fraction(p, p + q), Fraction(p + q, q)


def parent(x) -> tuple[Fraction, str]:
    """Parent of ``x`` and which child ``x`` is (``"L"`` or ``"R"``)."""
    x = _positive(x)
    p, q = x.numerator, x.denominator
    if p == q:
        raise PreconditionError("root has no parent")
    if p < q:
        return Fraction(p, q - p), "L"
    return Fraction(p - q, q), "R"


def tree_path(x) -> str:
    return "".join(letter * k for letter, k in monoid.euclid_runs(x))[::-1]


def follow_path(path: str) -> Fraction:
    p, q = 1, 1
    for move in path:
        if move == "L":
            q += p
        elif move == "R":
            p += q
        else:
            raise PreconditionError(f"path moves must be L or R, got {move!r}")
    return Fraction(p, q)


def index_to_rational(n: int) -> Fraction:
    if n < 0:
        raise PreconditionError("index must be nonnegative")
    bits = bin(n + 1)[3:]
    return follow_path(bits.replace("0", "L").replace("1", "R"))


def rational_to_index(x) -> int:
    path = tree_path(x)
    bits = path.replace("L", "0").replace("R", "1")
    return int("1" + bits, 2) - 1


def bfs_rationals(start: int = 0):
    """Stream the BFS listing from index ``start`` onwards.

    After the first node the stream runs Newman's successor map, which
    walks the BFS order exactly; no layer is ever materialised.
    """
    x = index_to_rational(start)
    for n in count(start):
        yield n, x
        x = newman_next(x)


def bfs_list(count_: int) -> list[Fraction]:
    return [x for _, x in islice(bfs_rationals(), count_)]


def fusc(n: int) -> int:
    """Stern's diatomic sequence shifted so that ``fusc(0) = 1``.

    Iterative binary form of the recurrences f(2n+1) = f(n) and
    f(2n) = f(n) + f(n-1); exact for any size of ``n``.
    """
    if n < 0:
        raise PreconditionError("fusc is defined for n >= 0")
    m = n + 1
    a, b = 1, 0
    while m:
        if m & 1:
            b += a
        else:
            a += b
        m >>= 1
    return b


def fusc_values(n: int) -> list[int]:
    """``[fusc(0), ..., fusc(n)]`` from the vectorised table kernel."""
    return [int(v) for v in fusc_table(n)]


def newman_next(a) -> Fraction:
    a = _positive(a)
    fl = a.numerator // a.denominator
    return 1 / (1 + fl - (a - fl))


def path_to_cf(path: str) -> list[int]:
    """Continued fraction ``[a0; a1, ..., ak]`` of the node at ``path``.

    The node's word (path reversed) is R^a0 L^a1 R^a2 ... with the final
    exponent lowered by one.
    """
    word = path[::-1]
    terms: list[int] = []
    letter = "R"
    run = 0
    for ch in word:
        if ch not in "LR":
            raise PreconditionError(f"path moves must be L or R, got {ch!r}")
        if ch == letter:
            run += 1
        else:
            terms.append(run)
            letter = ch
            run = 1
    terms.append(run)
    terms[-1] += 1
    return terms


def check_cf(cf) -> list[int]:
    terms = [int(t) for t in cf]
    if not terms:
        raise PreconditionError("empty continued fraction")
    if terms[0] < 0 or any(t < 1 for t in terms[1:]):
        raise PreconditionError(f"non-canonical continued fraction {terms}")
    if len(terms) == 1 and terms[0] < 1:
        raise PreconditionError("continued fraction of a nonpositive value")
    if len(terms) > 1 and terms[-1] < 2:
        raise PreconditionError(f"non-canonical continued fraction {terms}: last term must be >= 2")
    return terms


def cf_to_path(cf) -> str:
    terms = check_cf(cf)
    terms[-1] -= 1
    word = "".join(("R" if i % 2 == 0 else "L") * t for i, t in enumerate(terms))
    return word[::-1]


def cf_of(x) -> list[int]:
    """Canonical continued fraction of a positive rational by Euclid."""
    x = _positive(x)
    p, q = x.numerator, x.denominator
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    if len(terms) > 1 and terms[-1] == 1:
        terms.pop()
        terms[-1] += 1
    return terms


def cf_value(cf) -> Fraction:
    terms = check_cf(cf)
    x = Fraction(terms[-1])
    for t in reversed(terms[:-1]):
        x = t + 1 / x
    return x


def format_cf(cf) -> str:
    terms = list(cf)
    if len(terms) == 1:
        return f"[{terms[0]}]"
    return f"[{terms[0]};" + ",".join(str(t) for t in terms[1:]) + "]"
