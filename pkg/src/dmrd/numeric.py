"""Numerical hyperlogarithms at roots of unity by truncated nested sums plus tails.

For an index (s_1, z_1), ..., (s_r, z_r) the value is
sum over n_1 > ... > n_r > 0 of prod z_i^{n_i} / n_i^{s_i}. With a cutoff M the
sum splits by how many leading indices exceed M:

    Li = sum_k T_k(M) * P_{k+1}(M)

where P_j(M) is the nested partial sum of indices j..r with n_j <= M
(computed in float64 with numpy) and T_k(M) sums the first k indices over
n_1 > ... > n_k > M. Each T_k is an asymptotic series in 1/M whose
coefficients depend on M mod N; it is built from the outermost index inward
with the Euler-Maclaurin expansion of Hurwitz zeta. M doubles until
successive estimates agree within the tolerance; that difference is reported
as the error bound.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import special

from .algebra import CyclicGroup, Word
from .hopf import is_convergent_y, stuffle_words

DEFAULT_CAP = 1 << 22


class DivergentIndex(ValueError):
    """The leading index is (1, 1), for which the series diverges."""


class ToleranceNotReached(RuntimeError):
    """The cutoff cap was reached before the requested tolerance."""


@dataclass(frozen=True)
class LiIndex:
    s: tuple
    k: tuple
    order: int

    def __post_init__(self):
        if not self.s or len(self.s) != len(self.k):
            raise ValueError("index needs equally many exponents and residues, at least one")
        if any(x < 1 for x in self.s):
            raise ValueError("exponents must be >= 1")
        if self.s[0] == 1 and self.k[0] % self.order == 0:
            raise DivergentIndex("leading pair (1, 1) diverges")

    @classmethod
    def from_word(cls, w: Word, order: int) -> "LiIndex":
        return cls(tuple(n for n, _ in w), tuple(k for _, k in w), order)

    @property
    def weight(self) -> int:
        return sum(self.s)


@dataclass(frozen=True)
class LiValue:
    value: complex
    error: float
    cutoff: int


def _roots(order: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(order) / order)


def _level_sums(idx: LiIndex, m: int) -> list:
    """cum[j][n-1] = sum over m >= n_j > ... > n_r of the nested terms (levels j..r), n = 1..m."""
    n_arr = np.arange(1, m + 1, dtype=np.float64)
    roots = _roots(idx.order)
    base = np.arange(1, m + 1, dtype=np.int64)
    cums = [None] * len(idx.s)
    inner = None
    for j in reversed(range(len(idx.s))):
        term = roots[(base * idx.k[j]) % idx.order] / n_arr ** idx.s[j]
        if inner is not None:
            strict = np.concatenate([[0.0], inner[:-1]])
            term = term * strict
        cum = np.cumsum(term)
        cums[j] = cum
        inner = cum
    return cums


TAIL_ORDER = 12   # powers of 1/n kept in the tail expansions


@lru_cache(maxsize=None)
def _hurwitz_tail(t: int, delta: int, order: int) -> tuple:
    """Coefficients a_e (e <= TAIL_ORDER) with sum_{q >= 0} (n + delta + N q)^-t ~ sum_e a_e n^-e.

    This is N^-t zeta(t, (n + delta) / N) expanded for large n. For t = 1 the
    divergent -log(n) / N part is omitted; it cancels in every convergent index.
    """
    J = TAIL_ORDER
    bern = special.bernoulli(J + 2)
    coef = np.zeros(J + 1)
    # zeta(t, x) ~ sum_p c_p x^-p, then x^-p = N^p (n + delta)^-p
    powers = {}
    if t == 1:
        powers[1] = 0.5
        for i in range(1, J // 2 + 1):
            powers[2 * i] = bern[2 * i] / (2 * i)
        for i in range(1, J + 1):   # -log(1 + delta / n)
            coef[i] -= (-1) ** (i + 1) * delta ** i / i / order
    else:
        powers[t - 1] = 1 / (t - 1)
        powers[t] = 0.5
        rising, i = float(t), 1
        while t + 2 * i - 1 <= J:
            powers[t + 2 * i - 1] = bern[2 * i] / math.factorial(2 * i) * rising
            rising *= (t + 2 * i - 1) * (t + 2 * i)
            i += 1
    for p_, c in powers.items():
        scale = c * float(order) ** (p_ - t)
        binom = 1.0
        for i in range(0, J - p_ + 1):   # (n + delta)^-p = sum_i binom(-p, i) delta^i n^(-p-i)
            coef[p_ + i] += scale * binom
            binom *= -(p_ + i) / (i + 1) * delta
    return tuple(coef)


def _tail_expansions(idx: LiIndex) -> list:
    """g_d for d = 1..r, each an array A[c, e] with
    sum over n_1 > ... > n_d > n of the leading d terms ~ sum_e A[n mod N, e] n^-e.
    """
    N, J = idx.order, TAIL_ORDER
    roots = _roots(N)
    f = np.zeros((N, J + 1), dtype=complex)
    f[:, 0] = 1
    out = []
    for s, k in zip(idx.s, idx.k):
        g = np.zeros_like(f)
        for c2 in range(N):          # residue of the summation variable
            w = roots[(k * c2) % N]
            for c in range(N):       # residue of the lower bound n
                delta = (c2 - c - 1) % N + 1
                for j in range(J + 1 - s + 1):
                    if f[c2, j] == 0:
                        continue
                    g[c] += w * f[c2, j] * np.asarray(_hurwitz_tail(s + j, delta, N))
        if s == 1:
            lead = sum(roots[(k * c2) % N] * f[c2, 0] for c2 in range(N))
            if abs(lead) > 1e-9:
                raise DivergentIndex("tail diverges logarithmically")
        out.append(g)
        f = g
    return out


def _estimate(idx: LiIndex, cums: list, tails: list, m: int) -> complex:
    r = len(idx.s)
    total = complex(cums[0][m - 1])
    powers = float(m) ** -np.arange(TAIL_ORDER + 1)
    for depth in range(1, r + 1):
        rest = complex(cums[depth][m - 1]) if depth < r else 1.0
        t = complex(tails[depth - 1][m % idx.order] @ powers)
        total += t * rest
    return total


def li_eval(idx: LiIndex, target_tol: float = 1e-8, cap: int = DEFAULT_CAP) -> LiValue:
    """Value of the hyperlogarithm with an error bound below ``target_tol``."""
    step = idx.order
    m = step * max(1, 256 // step)
    size = max(8 * m, 1 << 14)
    cums = _level_sums(idx, size)
    tails = _tail_expansions(idx)
    prev = _estimate(idx, cums, tails, m)
    while True:
        m2 = 2 * m
        if m2 > size:
            if m2 > cap:
                raise ToleranceNotReached(f"tolerance {target_tol} not reached with cutoff {m}")
            size = min(cap, 8 * m2)
            cums = _level_sums(idx, size)
        cur = _estimate(idx, cums, tails, m2)
        err = abs(cur - prev) + 1e-14 * (1 + abs(cur)) * math.log2(m2)
        if err <= target_tol:
            return LiValue(cur, err, m2)
        prev, m = cur, m2


def li_word(w: Word, group: CyclicGroup, tol: float = 1e-8) -> LiValue:
    if not w:
        return LiValue(1 + 0j, 0.0, 0)
    return li_eval(LiIndex.from_word(w, group.order), tol)


@dataclass(frozen=True)
class StuffleCheck:
    lhs: complex
    rhs: complex
    difference: float
    error_bound: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.difference <= self.tol


def verify_stuffle_numeric(u: Word, v: Word, group: CyclicGroup, tol: float = 1e-6) -> StuffleCheck:
    """Compare L(u) L(v) with L(u * v) for convergent Y-words."""
    u, v = tuple(u), tuple(v)
    if not (is_convergent_y(u) and is_convergent_y(v)):
        raise DivergentIndex("stuffle check needs convergent words")
    prod = stuffle_words(u, v, group.order)
    weight_sum = 1 + sum(abs(c) for c in prod.values())
    each = tol / (8 * weight_sum)
    lu, lv = li_word(u, group, each), li_word(v, group, each)
    lhs = lu.value * lv.value
    rhs, err = 0j, (abs(lu.value) + lu.error) * lv.error + abs(lv.value) * lu.error
    for w, c in prod.items():
        val = li_word(w, group, each)
        rhs += c * val.value
        err += abs(c) * val.error
    return StuffleCheck(lhs, rhs, abs(lhs - rhs), err, tol)


def weight1_constant_numeric(order: int, k: int) -> Fraction:
    """(log(1 - z^k) - log(1 - z^-k)) / (i pi) as a rational with denominator <= 4N."""
    if not 0 < k < order:
        raise ValueError("need 0 < k < N")
    z = cmath.exp(2j * math.pi * k / order)
    val = (cmath.log(1 - z) - cmath.log(1 - 1 / z)) / (1j * math.pi)
    approx = Fraction(val.real).limit_denominator(4 * order)
    if abs(val.imag) > 1e-9 or abs(val.real - float(approx)) > 1e-9:
        raise ArithmeticError(f"no rational with denominator <= {4 * order} fits {val}")
    return approx


def zeta_value(s: Sequence[int], tol: float = 1e-10) -> float:
    """Multiple zeta value zeta(s_1, ..., s_r), s_1 >= 2."""
    return li_eval(LiIndex(tuple(s), (0,) * len(s), 1), tol).value.real
