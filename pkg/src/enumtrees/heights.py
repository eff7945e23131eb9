"""Heights on P^1(Q), exact bounded-height counts and height densities."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import PreconditionError, ProjPoint

TWELVE_OVER_PI2 = 12 / math.pi**2


def height(p: ProjPoint) -> int:
    return max(abs(p.x0), abs(p.x1))


def log_height(p: ProjPoint) -> float:
    return math.log(height(p))


def totients(n: int) -> np.ndarray:
    """``phi(0..n)`` as int64 (``phi(0) = 0``)."""
    if n < 0:
        raise PreconditionError("N must be >= 0")
    return _kernels.totients(n)


def phi_summatory(n: int) -> int:
    if n < 1:
        raise PreconditionError("N must be >= 1")
    return int(totients(n).sum())


@dataclass(frozen=True)
class HeightCensus:
    cutoff: int
    total: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.total, self.cutoff**2)

    @property
    def ratio_decimal(self) -> float:
        return self.total / self.cutoff**2

    def row(self) -> dict:
        return {"N": self.cutoff, "count": self.total, "ratio": format_decimal(self.ratio_decimal)}


def format_decimal(x: float) -> str:
    return format(x, ".12g")


def count_points_up_to(n: int) -> HeightCensus:
    """``#{x in P^1(Q) : H(x) <= n}`` exactly, as ``4 * sum_{m<=n} phi(m)``.

    Coprime pairs in [1, n]^2 number ``2*Sigma - 1`` (only 1/1 sits on the
    diagonal); signs double that, and 0 and infinity add two.
    """
    return HeightCensus(n, 4 * phi_summatory(n))


def count_points_table(n: int) -> np.ndarray:
    """``table[N] = count_points_up_to(N).total`` for ``0 <= N <= n`` (table[0] = 0)."""
    if n < 1:
        raise PreconditionError("N must be >= 1")
    return 4 * np.cumsum(totients(n))


def enumerate_points(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical coordinates of every point with ``H <= n``.

    Order: 0, infinity, then ``(p:q), (-p:q)`` over coprime ``p, q`` in
    [1, n], ``q`` major.
    """
    if n < 1:
        raise PreconditionError("N must be >= 1")
    return _kernels.interleave_points(*_kernels.coprime_pairs(n))


def points_up_to(n: int):
    x0, x1 = enumerate_points(n)
    return [ProjPoint(int(a), int(b)) for a, b in zip(x0, x1)]


# Vectorised membership tests on canonical coordinate arrays.

def positive_mask(x0, x1):
    return (x0 > 0) & (x1 > 0)


def even_mask(x0, x1):
    return positive_mask(x0, x1) & ((x0 * x1) % 2 == 0)


def unit_interval_mask(x0, x1):
    # 0 <= x0/x1 <= 1 with x1 > 0
    return (x1 > 0) & (x0 >= 0) & (x0 <= x1)


PRESET_SETS = {
    "positive": positive_mask,
    "even": even_mask,
    "unit-interval": unit_interval_mask,
}


@dataclass(frozen=True)
class DensityResult:
    cutoff: int
    count: int
    total: int

    @property
    def ratio(self) -> float:
        return self.count / self.total

    def row(self) -> dict:
        return {"N": self.cutoff, "count": self.count, "total": self.total, "ratio": format_decimal(self.ratio)}


def density_estimate(predicate, n: int, vectorized: bool = True) -> DensityResult:
    """Fraction of the points of height <= n that satisfy ``predicate``.

    With ``vectorized=True`` the predicate receives the full int64 arrays
    ``(x0, x1)`` and returns a boolean mask; otherwise it is called once per
    :class:`ProjPoint`.
    """
    x0, x1 = enumerate_points(n)
    if vectorized:
        mask = np.asarray(predicate(x0, x1), dtype=bool)
        hits = int(mask.sum())
    else:
        hits = sum(1 for a, b in zip(x0.tolist(), x1.tolist()) if predicate(ProjPoint(a, b)))
    return DensityResult(n, hits, len(x0))


# ---------------------------------------------------------------------------
# Schanuel constant
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldInvariants:
    r1: int
    r2: int
    discriminant: int
    class_number: int
    regulator: float
    roots_of_unity: int
    zeta2: float

    def check(self, degree: int | None = None) -> int:
        if self.r1 < 0 or self.r2 < 0 or self.r1 + self.r2 == 0:
            raise PreconditionError("place counts must be >= 0 and not both zero")
        deg = self.r1 + 2 * self.r2
        if degree is not None and degree != deg:
            raise PreconditionError(f"inconsistent invariants: r1 + 2*r2 = {deg} != degree {degree}")
        if self.discriminant == 0:
            raise PreconditionError("discriminant must be nonzero")
        if self.class_number < 1 or self.regulator <= 0 or self.zeta2 <= 0:
            raise PreconditionError("class number, regulator and zeta(2) must be positive")
        if self.roots_of_unity < 2:
            raise PreconditionError("a number field has at least two roots of unity")
        return deg


def schanuel_constant(degree: int | None, inv: FieldInvariants) -> float:
    """Leading constant of the bounded-height count, class-number form."""
    inv.check(degree)
    return (
        inv.class_number
        * inv.regulator
        * 2.0 ** (3 * inv.r1 + inv.r2 - 1)
        * (2 * math.pi) ** (2 * inv.r2)
        / (inv.roots_of_unity * abs(inv.discriminant) * inv.zeta2)
    )


def schanuel_residue_form(degree: int | None, inv: FieldInvariants, residue: float) -> float:
    """Leading constant written with the residue of the Dedekind zeta at 1."""
    inv.check(degree)
    if residue <= 0:
        raise PreconditionError("residue must be positive")
    return (
        2.0 ** (2 * inv.r1 + inv.r2 - 1)
        * (2 * math.pi) ** inv.r2
        / math.sqrt(abs(inv.discriminant))
        * residue
        / inv.zeta2
    )


def class_number_residue(inv: FieldInvariants) -> float:
    """Residue at s = 1 predicted by the analytic class number formula."""
    return (
        2.0**inv.r1
        * (2 * math.pi) ** inv.r2
        * inv.class_number
        * inv.regulator
        / (inv.roots_of_unity * math.sqrt(abs(inv.discriminant)))
    )


@dataclass(frozen=True)
class SchanuelReport:
    closed_form: float
    residue_form: float | None = None

    @property
    def discrepancy(self) -> float | None:
        if self.residue_form is None:
            return None
        return abs(self.residue_form - self.closed_form) / self.closed_form


def schanuel_report(degree, inv, residue=None) -> SchanuelReport:
    closed = schanuel_constant(degree, inv)
    other = None if residue is None else schanuel_residue_form(degree, inv, residue)
    return SchanuelReport(closed, other)
