"""Modular search primitives behind the interpolation cross-check: reduced
row echelon form over a word-sized prime field (vectorized with numpy),
Chinese remaindering, and rational reconstruction.

Only the search runs modulo primes; callers certify every answer with exact
integer arithmetic, so a bad prime can cost time but never correctness.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_stream():
    """Deterministic stream of distinct primes descending from 2^31 - 1;
    squares of these fit comfortably in int64."""
    n = 2**31 - 1
    while n > 2**30:
        if _is_prime(n):
            yield n
        n -= 2


def rref_mod_p(A: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """Reduced row echelon form of an int64 matrix over Z/p.

    Returns (pivot column indices, reduced matrix).  Entries of A must
    already lie in [0, p).
    """
    M = A.copy()
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        col = M[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        factors = M[:, c].copy()
        factors[r] = 0
        nzrows = np.nonzero(factors)[0]
        if nzrows.size:
            M[nzrows] = (M[nzrows] - np.outer(factors[nzrows], M[r])) % p
        pivots.append(c)
        r += 1
    return pivots, M


def nullspace_mod_p(A: np.ndarray, p: int) -> tuple[list[int], list[np.ndarray]]:
    """Pivot columns and a basis of the nullspace of A over Z/p, one vector
    per free column (its own coordinate set to 1)."""
    pivots, R = rref_mod_p(A, p)
    pivot_set = set(pivots)
    cols = A.shape[1]
    basis = []
    for fc in range(cols):
        if fc in pivot_set:
            continue
        vec = np.zeros(cols, dtype=np.int64)
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            if R[i, fc]:
                vec[pc] = (-int(R[i, fc])) % p
        basis.append(vec)
    return pivots, basis


def crt_combine(residues, moduli) -> tuple[int, int]:
    """Combine residues into a single residue modulo the product."""
    value, modulus = 0, 1
    for r, m in zip(residues, moduli):
        # solve x = value (mod modulus), x = r (mod m)
        inv = pow(modulus % m, m - 2, m)
        t = ((r - value) * inv) % m
        value += modulus * t
        modulus *= m
    return value % modulus, modulus


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Rational number p/q with p = q*a (mod m), |p|, q <= sqrt(m/2), if one
    exists (Wang's algorithm)."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    p, q = r1, s1
    if q < 0:
        p, q = -p, -q
    if q == 0 or abs(q) > bound or gcd(q, m) != 1:
        return None
    if gcd(abs(p), q) != 1:
        return None
    return Fraction(p, q)
