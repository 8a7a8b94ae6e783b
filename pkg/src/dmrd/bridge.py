"""Passage between X-series and Y-series, the x0-derivation, its section and star maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import Series, Word, X0, X1, _norm, concat_mul, weight
from .hopf import DomainError, exp_series

Y1 = (1, 0)


@dataclass(frozen=True)
class StarDecomposition:
    """``star`` is the Y-side image; ``corr`` is the correction series in y_{1,0} alone."""

    star: Series
    corr: Series


def embed_y(w: Word) -> Word:
    """y_{n,k} -> x0^{n-1} x_{zeta^k}, letterwise."""
    out = []
    for n, k in w:
        out.extend([X0] * (n - 1))
        out.append(k + 1)
    return tuple(out)


def y_of_x(w: Word):
    """Block factorization of an X-word not ending in x0; None if it ends in x0."""
    if w and w[-1] == X0:
        return None
    out = []
    zeros = 0
    for a in w:
        if a == X0:
            zeros += 1
        else:
            out.append((zeros + 1, a - 1))
            zeros = 0
    return tuple(out)


def embed_series(s: Series) -> Series:
    if s.flavor != "Y":
        raise DomainError("embed_series expects a Y-series")
    return s.map_words(lambda w: (embed_y(w), 1), flavor="X")


def pi_y(s: Series) -> Series:
    """Dual of the embedding: drop words ending in x0, factor the rest into blocks."""
    if s.flavor != "X":
        raise DomainError("pi_y expects an X-series")

    def f(w):
        v = y_of_x(w)
        return None if v is None else (v, 1)

    return s.map_words(f, flavor="Y")


def p_s_word(w: Word, order: int) -> Word:
    """Replace each residue by the running sum of the residues up to it."""
    out, acc = [], 0
    for n, k in w:
        acc = (acc + k) % order
        out.append((n, acc))
    return tuple(out)


def q_s_word(w: Word, order: int) -> Word:
    """Inverse of :func:`p_s_word`: successive differences of residues."""
    out, prev = [], 0
    for n, k in w:
        out.append((n, (k - prev) % order))
        prev = k
    return tuple(out)


def p_s(s: Series) -> Series:
    n = s.group.order
    return s.map_words(lambda w: (p_s_word(w, n), 1))


def q_s(s: Series) -> Series:
    n = s.group.order
    return s.map_words(lambda w: (q_s_word(w, n), 1))


def d_x0(s: Series) -> Series:
    """Derivation with x0 -> 1 and x_sigma -> 0 (deletes one x0 at a time)."""
    if s.flavor != "X":
        raise DomainError("d_x0 expects an X-series")
    out: dict = {}
    for w, c in s.items():
        for i, a in enumerate(w):
            if a == X0:
                v = w[:i] + w[i + 1:]
                out[v] = out.get(v, 0) + c
    return Series._raw({w: _norm(c) for w, c in out.items() if c}, s.group, "X", s.truncation)


def sect(s: Series) -> Series:
    """Section of pi_y with values in the kernel of d_x0."""
    e = embed_series(s)
    W = s.truncation
    out = e
    term = e
    for i in range(1, W + 1):
        term = d_x0(term)
        if not term:
            break
        x0i = Series.monomial((X0,) * i, s.group, "X", W)
        out = out + concat_mul(term, x0i).scale(Fraction((-1) ** i, factorial(i)))
    return out


def _y_n_coeffs(s: Series, W: int):
    # (pi_Y s | y_n) = (s | x0^{n-1} x1) for n = 2..W
    return [(n, s.coeff((X0,) * (n - 1) + (X1,))) for n in range(2, W + 1)]


def psi_star(psi: Series) -> StarDecomposition:
    """Tangent star map: q_s pi_Y(psi) + sum_{n>=2} (-1)^{n-1}/n (psi|y_n) y_1^n."""
    if psi.constant_term != 0:
        raise DomainError("psi_star needs constant term 0")
    W = psi.truncation
    corr = {}
    for n, c in _y_n_coeffs(psi, W):
        if c:
            corr[(Y1,) * n] = Fraction((-1) ** (n - 1), n) * c
    corr_s = Series(corr, group=psi.group, flavor="Y", truncation=W)
    return StarDecomposition(q_s(pi_y(psi)) + corr_s, corr_s)


def phi_star(phi: Series) -> StarDecomposition:
    """Group star map: Phi_corr * q_s pi_Y(Phi), Phi_corr = exp(sum (-1)^{n-1}/n (Phi|y_n) y_1^n)."""
    if phi.constant_term != 1:
        raise DomainError("phi_star needs constant term 1")
    W = phi.truncation
    gen = {}
    for n, c in _y_n_coeffs(phi, W):
        if c:
            gen[(Y1,) * n] = Fraction((-1) ** (n - 1), n) * c
    corr = exp_series(Series(gen, group=phi.group, flavor="Y", truncation=W))
    return StarDecomposition(concat_mul(corr, q_s(pi_y(phi))), corr)
