"""Exact linear algebra over Q for sparse and dense systems.

Two engines are provided:

* :func:`solve_exact`: fraction-free sparse Gaussian elimination over the
  integers, pivoting on the smallest column index. Simple and fully exact;
  used for small systems and as a reference.
* :func:`solve_modular`: row reduction modulo word-sized primes with numpy,
  rational reconstruction across primes, and an exact verification callback.
  The rank is certified because a modular rank never exceeds the rational one
  while the verified kernel vectors bound it from the other side.

Both return the same canonical answer: the reduced echelon kernel basis
(identity on the free columns, where the free columns are the non-pivot
columns of the rational reduced echelon form) and the particular solution
vanishing on the free columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np


class InconsistentSystem(ValueError):
    """The linear system has no solution."""


class ReconstructionError(RuntimeError):
    """Modular reconstruction did not stabilize within the prime budget."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


def _primes_below(bound: int, count: int) -> tuple:
    out, n = [], bound - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 1
    return tuple(out)


# Below 2^31 so that products of two residues fit in int64.
PRIMES = _primes_below(1 << 31, 24)


@dataclass
class Solution:
    ncols: int
    rank: int
    free: tuple            # free columns (ascending)
    kernel: list           # list of lists of Fraction/int, one per free column
    particular: Optional[list] = None   # None when homogeneous

    @property
    def nullity(self) -> int:
        return len(self.kernel)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


# -- canonical forms -------------------------------------------------------

def canonical_kernel(vectors: Sequence[Sequence], ncols: int):
    """Reduce spanning vectors of a kernel to reduced echelon form, pivoting on the
    last nonzero entry. Returns (free_columns, basis) with basis[i][free[j]] = delta_ij.
    """
    rows = [dict((j, Fraction(x)) for j, x in enumerate(v) if x) for v in vectors]
    basis: list[tuple[int, dict]] = []
    for r in rows:
        for piv, b in basis:
            c = r.get(piv)
            if c:
                for j, x in b.items():
                    v = r.get(j, 0) - c * x
                    if v:
                        r[j] = v
                    else:
                        r.pop(j, None)
        if not r:
            continue
        piv = max(r)
        inv = 1 / r[piv]
        r = {j: x * inv for j, x in r.items()}
        for i, (p2, b) in enumerate(basis):
            c = b.get(piv)
            if c:
                for j, x in r.items():
                    v = b.get(j, 0) - c * x
                    if v:
                        b[j] = v
                    else:
                        b.pop(j, None)
        basis.append((piv, r))
    basis.sort()
    free = tuple(p for p, _ in basis)
    dense = [[_norm(b.get(j, 0)) for j in range(ncols)] for _, b in basis]
    return free, dense


def reduce_particular(x: Sequence, free: Sequence[int], kernel: Sequence[Sequence]):
    """Subtract kernel vectors so that the particular solution vanishes on ``free``."""
    x = [Fraction(v) for v in x]
    for f, k in zip(free, kernel):
        c = x[f]
        if c:
            x = [a - c * b for a, b in zip(x, k)]
    return [_norm(v) for v in x]


# -- exact sparse elimination ----------------------------------------------

def _to_int_row(row: dict, rhs):
    den = 1
    for v in list(row.values()) + [rhs]:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    r = {j: int(v * den) for j, v in row.items() if v}
    return r, int(rhs * den)


def solve_exact(rows: Sequence[dict], ncols: int, rhs: Optional[Sequence] = None) -> Solution:
    """Fraction-free elimination; rows are dicts column -> rational."""
    homogeneous = rhs is None
    rhs = [0] * len(rows) if homogeneous else list(rhs)
    work = [_to_int_row(r, b) for r, b in zip(rows, rhs)]
    pivots: dict[int, tuple[dict, int]] = {}   # column -> (row, rhs)
    for r, b in work:
        # reduce by existing pivots in increasing column order
        while r:
            col = min(r)
            if col not in pivots:
                break
            pr, pb = pivots[col]
            a, c = pr[col], r[col]
            g = math.gcd(a, c)
            fa, fc = a // g, c // g
            new = {}
            for j, v in r.items():
                new[j] = v * fa
            for j, v in pr.items():
                w = new.get(j, 0) - v * fc
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            new.pop(col, None)
            b = b * fa - pb * fc
            r = new
            if r:
                g = 0
                for v in r.values():
                    g = math.gcd(g, v)
                g = math.gcd(g, b)
                if g > 1:
                    r = {j: v // g for j, v in r.items()}
                    b //= g
        if not r:
            if b:
                raise InconsistentSystem("inconsistent row")
            continue
        pivots[min(r)] = (r, b)
    # back substitution into reduced echelon form over Q
    cols = sorted(pivots)
    red: dict[int, tuple[dict, Fraction]] = {}
    for col in reversed(cols):
        r, b = pivots[col]
        inv = Fraction(1, r[col])
        row = {j: Fraction(v) * inv for j, v in r.items()}
        b = Fraction(b) * inv
        for j in [j for j in row if j != col and j in red]:
            c = row.pop(j)
            rr, rb = red[j]
            for k, v in rr.items():
                if k == j:
                    continue
                w = row.get(k, 0) - c * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
            b -= c * rb
        red[col] = (row, b)
    free = tuple(j for j in range(ncols) if j not in red)
    kernel = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for col, (row, _) in red.items():
            c = row.get(f)
            if c:
                v[col] = _norm(-c)
        kernel.append(v)
    particular = None
    if not homogeneous:
        particular = [0] * ncols
        for col, (_, b) in red.items():
            particular[col] = _norm(b)
    return Solution(ncols, len(red), free, kernel, particular)


# -- modular engine --------------------------------------------------------

def to_mod(x, p: int) -> int:
    if isinstance(x, int):
        return x % p
    return x.numerator % p * pow(x.denominator % p, -1, p) % p


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form of an int64 matrix modulo p. Returns (R, pivots)."""
    m = np.array(a, dtype=np.int64) % p
    nr, nc = m.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r, c:] = (m[r, c:] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            m[rows, c:] = (m[rows, c:] - np.outer(col[rows], m[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rational_reconstruct(a: int, m: int):
    """Find n/d = a mod m with |n|, d <= sqrt(m/2); None if impossible."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1, s0, s1 = m, a, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if math.gcd(r1, abs(s1)) != 1:
        return None
    return _norm(Fraction(r1, s1))


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def solve_modular(matrix_mod: Callable[[int], np.ndarray], ncols: int,
                  verify: Callable[[list, Optional[list]], bool],
                  inhomogeneous: bool = False, max_primes: int = len(PRIMES)) -> Solution:
    """Solve A x = b given ``matrix_mod(p)`` returning [A | b] (or A) reduced mod p.

    ``verify(kernel, particular)`` must check the candidate exactly over Q.
    """
    best = None   # (pivots, modulus, kernel residues, particular residues)
    for p in PRIMES[:max_primes]:
        a = matrix_mod(p)
        if a.shape[0] == 0:
            a = np.zeros((0, ncols + (1 if inhomogeneous else 0)), dtype=np.int64)
        rm, piv = rref_mod(a, p)
        consistent = True
        if inhomogeneous:
            if piv and piv[-1] == ncols:
                consistent = False
                rm, piv = rm[:-1], piv[:-1]
        pivset = set(piv)
        free = [j for j in range(ncols) if j not in pivset]
        kern = np.zeros((len(free), ncols), dtype=object)
        for i, f in enumerate(free):
            kern[i, f] = 1
        for r, c in enumerate(piv):
            for i, f in enumerate(free):
                kern[i, c] = int((-rm[r, f]) % p)
        part = None
        if inhomogeneous:
            part = [0] * ncols
            if consistent:
                for r, c in enumerate(piv):
                    part[c] = int(rm[r, ncols])
        key = (tuple(piv), consistent)
        if best is None or len(piv) > len(best[0][0]):
            best = (key, p, kern, part)
        elif key == best[0]:
            _, mod, bk, bp = best
            kern = np.vectorize(lambda x, y: _crt(x, mod, y, p), otypes=[object])(bk, kern) \
                if bk.size else bk
            if part is not None:
                part = [_crt(x, mod, y, p) for x, y in zip(bp, part)]
            best = (key, mod * p, kern, part)
        else:
            continue   # unlucky prime: lower rank
        (piv_b, consistent_b), mod, kern_b, part_b = best
        if inhomogeneous and not consistent_b and mod > p:
            # inconsistency seen under two primes with the same pivots
            raise InconsistentSystem("linear system has no solution")
        rec = [[rational_reconstruct(int(x), mod) for x in row] for row in kern_b]
        if any(x is None for row in rec for x in row):
            continue
        prec = None
        if inhomogeneous and consistent_b:
            prec = [rational_reconstruct(int(x), mod) for x in part_b]
            if any(x is None for x in prec):
                continue
        if inhomogeneous and not consistent_b:
            continue
        if verify(rec, prec):
            free_c, kernel_c = canonical_kernel(rec, ncols)
            if prec is not None:
                prec = reduce_particular(prec, free_c, kernel_c)
            return Solution(ncols, ncols - len(free_c), free_c, kernel_c, prec)
    raise ReconstructionError("modular solve did not stabilize; raise the prime budget")


def dense_rows_mod(rows: Sequence[dict], ncols: int, p: int, rhs: Optional[Sequence] = None):
    extra = 0 if rhs is None else 1
    a = np.zeros((len(rows), ncols + extra), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            a[i, j] = to_mod(v, p)
        if rhs is not None:
            a[i, ncols] = to_mod(rhs[i], p)
    return a


def rows_verifier(rows: Sequence[dict], rhs: Optional[Sequence] = None):
    """Exact check that kernel vectors annihilate the rows and the particular solves them."""
    def verify(kernel, particular):
        for v in kernel:
            for r in rows:
                if sum(c * v[j] for j, c in r.items()):
                    return False
        if particular is not None:
            for r, b in zip(rows, rhs):
                if sum(c * particular[j] for j, c in r.items()) != b:
                    return False
        return True
    return verify


def solve(rows: Sequence[dict], ncols: int, rhs: Optional[Sequence] = None,
          method: str = "auto") -> Solution:
    """Solve a sparse rational system with the chosen engine."""
    if method == "auto":
        method = "exact" if ncols * max(len(rows), 1) <= 40000 else "modular"
    if method == "exact":
        return solve_exact(rows, ncols, rhs)
    if method != "modular":
        raise ValueError(f"unknown method {method!r}")
    return solve_modular(lambda p: dense_rows_mod(rows, ncols, p, rhs), ncols,
                         rows_verifier(rows, rhs), inhomogeneous=rhs is not None)
