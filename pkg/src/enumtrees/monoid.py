"""The free monoid SL2(N0) on the generators L and R.

Words are plain strings over ``"LR"``; the leftmost letter is the leftmost
matrix factor, so ``compose_word("LR") == L @ R``.  A Calkin-Wilf tree path
read from the root is the reversal of the node's word.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import INF, PreconditionError, ProjPoint


@dataclass(frozen=True, slots=True)
class Mat2:
    """Row-major integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_sl2n0(self) -> bool:
        return min(self.entries) >= 0 and self.det == 1

    def canonical(self) -> "Mat2":
        """PGL2 representative: coprime entries, first nonzero entry positive."""
        if self.det == 0:
            raise PreconditionError("singular matrix")
        g = gcd(*self.entries)
        lead = next(e for e in self.entries if e != 0)
        if lead < 0:
            g = -g
        return Mat2(*(e // g for e in self.entries))

    def act(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.a * p.x0 + self.b * p.x1, self.c * p.x0 + self.d * p.x1)

    def act_rational(self, x):
        """Moebius action on a rational or ``INF``."""
        if x is INF:
            num, den = self.a, self.c
        else:
            x = Fraction(x)
            num = self.a * x.numerator + self.b * x.denominator
            den = self.c * x.numerator + self.d * x.denominator
        if den == 0:
            return INF
        return Fraction(num, den)

    def __str__(self):
        return f"{self.a},{self.b},{self.c},{self.d}"

    @classmethod
    def parse(cls, text: str) -> "Mat2":
        parts = text.replace(" ", "").split(",")
        if len(parts) != 4:
            raise PreconditionError(f"matrix needs four entries: {text!r}")
        try:
            return cls(*(int(x) for x in parts))
        except ValueError:
            raise PreconditionError(f"matrix entries must be integers: {text!r}") from None


IDENTITY = Mat2(1, 0, 0, 1)
L = Mat2(1, 0, 1, 1)
R = Mat2(1, 1, 0, 1)
GENERATORS = {"L": L, "R": R}


def l_power(k: int) -> Mat2:
    return Mat2(1, 0, k, 1)


def r_power(k: int) -> Mat2:
    return Mat2(1, k, 0, 1)


def _check_word(w: str):
    bad = set(w) - {"L", "R"}
    if bad:
        raise PreconditionError(f"word letters must be L or R, got {sorted(bad)}")


def runs(w: str) -> list[tuple[str, int]]:
    """Run-length encoding ``"LLRL" -> [("L", 2), ("R", 1), ("L", 1)]``."""
    out: list[tuple[str, int]] = []
    for ch in w:
        if out and out[-1][0] == ch:
            out[-1] = (ch, out[-1][1] + 1)
        else:
            out.append((ch, 1))
    return out


def compose_word(w: str) -> Mat2:
    _check_word(w)
    m = IDENTITY
    for letter, k in runs(w):
        m = m @ (l_power(k) if letter == "L" else r_power(k))
    return m


def peel_runs(m: Mat2) -> list[tuple[str, int]]:
    """Factor ``m`` in SL2(N0) as alternating powers of L and R.

    Peeling L from the left subtracts row one from row two and is possible
    iff row two dominates row one; peeling R is the mirror image.  Whole
    runs are removed at once with integer division.
    """
    if not m.is_sl2n0():
        raise PreconditionError("not in SL2(N0)")
    a, b, c, d = m.entries
    out: list[tuple[str, int]] = []
    while (a, b, c, d) != (1, 0, 0, 1):
        # a >= 1 and d >= 1 always hold in SL2(N0)
        if c >= a and d >= b:
            k = c // a if b == 0 else min(c // a, d // b)
            c -= k * a
            d -= k * b
            out.append(("L", k))
        else:
            k = b // d if c == 0 else min(a // c, b // d)
            if k == 0:
                raise AssertionError(f"no generator peels {m}")
            a -= k * c
            b -= k * d
            out.append(("R", k))
    return out


def decompose(m: Mat2) -> str:
    return "".join(letter * k for letter, k in peel_runs(m))


def peel_letter(m: Mat2) -> str | None:
    """The unique generator that can be peeled off the left of ``m``.

    ``None`` for the identity.  Used to check the trichotomy
    ``SL2(N0) = {1} | L.SL2(N0) | R.SL2(N0)`` directly.
    """
    if not m.is_sl2n0():
        raise PreconditionError("not in SL2(N0)")
    if m == IDENTITY:
        return None
    can_l = m.c >= m.a and m.d >= m.b
    can_r = m.a >= m.c and m.b >= m.d
    if can_l == can_r:
        raise AssertionError(f"peel ambiguity at {m}")
    return "L" if can_l else "R"


def sigma(m: Mat2) -> int:
    return m.a + m.b + m.c + m.d


def lemma_sign_check(m: Mat2) -> bool:
    if not m.is_sl2n0():
        raise PreconditionError("not in SL2(N0)")
    if m == IDENTITY:
        raise PreconditionError("identity excluded")
    return (m.a - m.c) * (m.b - m.d) >= 0


def omega(m: Mat2) -> Fraction:
    if not m.is_sl2n0():
        raise PreconditionError("not in SL2(N0)")
    return Fraction(m.a + m.b, m.c + m.d)


def _positive(q) -> Fraction:
    if q is INF:
        raise PreconditionError("not a positive rational")
    q = Fraction(q)
    if q <= 0:
        raise PreconditionError("not a positive rational")
    return q


def euclid_runs(q) -> list[tuple[str, int]]:
    """Word of ``omega_inverse(q)`` as runs, by the subtractive Euclidean descent."""
    q = _positive(q)
    p, r = q.numerator, q.denominator
    out: list[tuple[str, int]] = []
    while p != r:
        if p < r:
            k, rem = divmod(r, p)
            if rem == 0:
                k -= 1
            r -= k * p
            out.append(("L", k))
        else:
            k, rem = divmod(p, r)
            if rem == 0:
                k -= 1
            p -= k * r
            out.append(("R", k))
    return out


def omega_inverse(q) -> Mat2:
    m = IDENTITY
    for letter, k in euclid_runs(q):
        m = m @ (l_power(k) if letter == "L" else r_power(k))
    return m


def solve_diophantine(p: int, q: int) -> tuple[int, int, int, int]:
    """The unique ``a, b, c, d >= 0`` with ``a+b=p``, ``c+d=q``, ``ad-bc=1``."""
    if p < 1 or q < 1:
        raise PreconditionError("not a positive rational")
    if gcd(p, q) != 1:
        raise PreconditionError("not coprime")
    return omega_inverse(Fraction(p, q)).entries


def words_up_to(depth: int):
    """All words of length <= depth in shortlex order (L before R)."""
    layer = [""]
    for _ in range(depth + 1):
        yield from layer
        layer = [w + ch for w in layer for ch in "LR"]


def cayley_edges(depth: int) -> list[tuple[str, str, str]]:
    """Edges ``(mu, alpha, alpha*mu)`` for every source word of length <= depth."""
    if depth < 0:
        raise PreconditionError("depth must be nonnegative")
    return [(w, ch, ch + w) for w in words_up_to(depth) for ch in "LR"]
