"""Lyndon words and their standard bracketing, a basis of the free Lie algebra.

Only used internally to parametrize primitive elements of a given weight.
"""

from __future__ import annotations

from functools import lru_cache


def lyndon_words(alphabet_size: int, length: int) -> list[tuple]:
    """Lyndon words of exactly ``length`` letters over 0..alphabet_size-1 (Duval), sorted."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == length:
            out.append(tuple(w))
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()
    return out


def is_lyndon(w: tuple) -> bool:
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """w = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("single letters have no standard factorization")


@lru_cache(maxsize=None)
def bracket(w: tuple) -> tuple:
    """Standard bracketing of a Lyndon word, as sorted (word, coefficient) pairs."""
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    pu, pv = bracket(u), bracket(v)
    out: dict = {}
    for a, ca in pu:
        for b, cb in pv:
            out[a + b] = out.get(a + b, 0) + ca * cb
            out[b + a] = out.get(b + a, 0) - ca * cb
    return tuple(sorted((k, c) for k, c in out.items() if c))


def lie_basis(alphabet_size: int, length: int) -> list[dict]:
    """Bracketed Lyndon words of a given length, as dict word -> int."""
    return [dict(bracket(w)) for w in lyndon_words(alphabet_size, length)]


def witt_dimension(alphabet_size: int, length: int) -> int:
    """Dimension of the degree-``length`` part of the free Lie algebra (necklace formula)."""
    def mobius(n):
        res, k = 1, 2
        while k * k <= n:
            if n % k == 0:
                n //= k
                if n % k == 0:
                    return 0
                res = -res
            k += 1
        return -res if n > 1 else res

    total = sum(mobius(d) * alphabet_size ** (length // d)
                for d in range(1, length + 1) if length % d == 0)
    return total // length
