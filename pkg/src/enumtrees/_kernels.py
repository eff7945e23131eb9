"""Integer kernels behind the counting, density and scanning code.

Every kernel exists twice: a numba ``@njit`` loop and a pure-numpy
equivalent.  The public names (``totients``, ``coprime_pairs``,
``fusc_table``, ``height_margin_scan``) dispatch to the numba versions
unless ``ENUMTREES_DISABLE_NUMBA`` is set or numba fails to import.
Both variants are importable directly (``*_numba`` / ``*_numpy``) so
tests and the benchmark can compare them.
"""
import math

import numpy as np

from ._config import numba_disabled

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

INT64_SAFE = 2**62


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def totients_numpy(n):
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def coprime_pairs_numpy(n):
    ps = []
    qs = []
    base = np.arange(1, n + 1, dtype=np.int64)
    for q in range(1, n + 1):
        p = base[np.gcd(base, q) == 1]
        ps.append(p)
        qs.append(np.full(p.shape, q, dtype=np.int64))
    if not ps:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(ps), np.concatenate(qs)


def fusc_table_numpy(n):
    f = np.empty(n + 1, dtype=np.int64)
    f[0] = 1
    known = 1
    while known <= n:
        hi = min(2 * known, n + 1)
        idx = np.arange(known, hi)
        half = idx // 2
        odd = (idx & 1) == 1
        vals = np.where(odd, f[half], f[half] + f[np.maximum(half - 1, 0)])
        f[known:hi] = vals
        known = hi
    return f


def interleave_points(p, q):
    """Canonical coordinates: 0, infinity, then ``(p:q), (-p:q)`` pairwise."""
    x0 = np.empty(2 * len(p) + 2, dtype=np.int64)
    x1 = np.empty_like(x0)
    x0[:2] = (0, 1)
    x1[:2] = (1, 0)
    x0[2::2] = p
    x0[3::2] = -p
    x1[2::2] = q
    x1[3::2] = q
    return x0, x1


def height_margin_scan_numpy(numer, denom, n):
    """Max of ``2*log H(x) - log H(f(x))`` over ``H(x) <= n``.

    ``numer``/``denom`` are the homogenised coefficient vectors (ascending
    in ``x0``, both of length ``deg + 1``).  Returns ``(margin, x0, x1)``.
    """
    numer = np.asarray(numer, dtype=np.int64)
    denom = np.asarray(denom, dtype=np.int64)
    deg = len(numer) - 1
    x0, x1 = interleave_points(*coprime_pairs_numpy(n))
    a = np.zeros_like(x0)
    b = np.zeros_like(x0)
    for i in range(deg + 1):
        mono = x0**i * x1 ** (deg - i)
        a += numer[i] * mono
        b += denom[i] * mono
    g = np.gcd(a, b)
    hf = np.maximum(np.abs(a), np.abs(b)) // g
    hx = np.maximum(np.abs(x0), np.abs(x1))
    margin = 2.0 * np.log(hx.astype(np.float64)) - np.log(hf.astype(np.float64))
    k = int(np.argmax(margin))
    return float(margin[k]), int(x0[k]), int(x1[k])


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if numba is not None:

    @njit(cache=True)
    def _gcd(a, b):
        a = abs(a)
        b = abs(b)
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def totients_numba(n):
        phi = np.zeros(n + 1, dtype=np.int64)
        primes = np.zeros(n + 1, dtype=np.int64)
        nprimes = 0
        if n >= 1:
            phi[1] = 1
        for i in range(2, n + 1):
            if phi[i] == 0:
                phi[i] = i - 1
                primes[nprimes] = i
                nprimes += 1
            for j in range(nprimes):
                p = primes[j]
                m = i * p
                if m > n:
                    break
                if i % p == 0:
                    phi[m] = phi[i] * p
                    break
                phi[m] = phi[i] * (p - 1)
        return phi

    @njit(cache=True)
    def _coprime_row(q, spf, row):
        # row[p-1] = 1 iff gcd(p, q) = 1, by striking multiples of q's primes
        row[:] = 1
        m = q
        while m > 1:
            pr = spf[m]
            for j in range(pr - 1, row.shape[0], pr):
                row[j] = 0
            while m % pr == 0:
                m //= pr

    @njit(cache=True)
    def _smallest_prime_factors(n):
        spf = np.zeros(n + 1, dtype=np.int64)
        for i in range(2, n + 1):
            if spf[i] == 0:
                for j in range(i, n + 1, i):
                    if spf[j] == 0:
                        spf[j] = i
        return spf

    @njit(cache=True)
    def coprime_pairs_numba(n):
        spf = _smallest_prime_factors(n)
        row = np.empty(n, dtype=np.uint8)
        count = 0
        for q in range(1, n + 1):
            _coprime_row(q, spf, row)
            count += row.sum()
        ps = np.empty(count, dtype=np.int64)
        qs = np.empty(count, dtype=np.int64)
        k = 0
        for q in range(1, n + 1):
            _coprime_row(q, spf, row)
            for j in range(n):
                if row[j]:
                    ps[k] = j + 1
                    qs[k] = q
                    k += 1
        return ps, qs

    @njit(cache=True)
    def fusc_table_numba(n):
        f = np.empty(n + 1, dtype=np.int64)
        f[0] = 1
        for i in range(1, n + 1):
            h = i // 2
            if i & 1:
                f[i] = f[h]
            else:
                f[i] = f[h] + f[h - 1]
        return f

    @njit(cache=True)
    def _hom_height(numer, denom, x0, x1):
        deg = numer.shape[0] - 1
        a = 0
        b = 0
        for i in range(deg + 1):
            mono = 1
            for _ in range(i):
                mono *= x0
            for _ in range(deg - i):
                mono *= x1
            a += numer[i] * mono
            b += denom[i] * mono
        return max(abs(a), abs(b)) // _gcd(a, b)

    @njit(cache=True)
    def _margin_kernel(numer, denom, n):
        # 0 and infinity both have height one
        best = -math.log(_hom_height(numer, denom, 0, 1))
        bx0, bx1 = 0, 1
        m = -math.log(_hom_height(numer, denom, 1, 0))
        if m > best:
            best, bx0, bx1 = m, 1, 0
        for q in range(1, n + 1):
            for p in range(1, n + 1):
                if _gcd(p, q) != 1:
                    continue
                hx2 = 2.0 * math.log(max(p, q))
                for x0 in (p, -p):
                    m = hx2 - math.log(_hom_height(numer, denom, x0, q))
                    if m > best:
                        best, bx0, bx1 = m, x0, q
        return best, bx0, bx1

    def height_margin_scan_numba(numer, denom, n):
        best, x0, x1 = _margin_kernel(
            np.asarray(numer, dtype=np.int64), np.asarray(denom, dtype=np.int64), n
        )
        return float(best), int(x0), int(x1)

else:  # pragma: no cover
    totients_numba = totients_numpy
    coprime_pairs_numba = coprime_pairs_numpy
    fusc_table_numba = fusc_table_numpy
    height_margin_scan_numba = height_margin_scan_numpy


USE_NUMBA = numba is not None and not numba_disabled()

if USE_NUMBA:
    totients = totients_numba
    coprime_pairs = coprime_pairs_numba
    fusc_table = fusc_table_numba
    height_margin_scan = height_margin_scan_numba
else:
    totients = totients_numpy
    coprime_pairs = coprime_pairs_numpy
    fusc_table = fusc_table_numpy
    height_margin_scan = height_margin_scan_numpy


def int64_safe(coeffs, bound, deg):
    """True when homogeneous evaluation at height <= bound fits in int64."""
    return sum(abs(c) for c in coeffs) * bound**deg < INT64_SAFE
