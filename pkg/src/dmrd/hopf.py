"""Shuffle and stuffle Hopf structures, group-like/primitive tests, regularization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import (AlgebraError, CyclicGroup, Series, TensorSeries, Word, X0, X1, _norm,
                      concat_mul, tensor, weight)

Y1 = (1, 0)


class DomainError(ValueError):
    """Input outside the domain of an operation (for instance a wrong constant term)."""


# -- convergence -----------------------------------------------------------

def is_convergent_x(w: Word) -> bool:
    return not w or (w[0] != X1 and w[-1] != X0)


def is_convergent_y(w: Word) -> bool:
    return not w or w[0] != Y1


def is_convergent(w: Word) -> bool:
    if w and isinstance(w[0], tuple):
        return is_convergent_y(w)
    return is_convergent_x(w)


# -- products on words -----------------------------------------------------

def _add(out: dict, w, c):
    v = out.get(w, 0) + c
    if v:
        out[w] = v
    else:
        out.pop(w, None)


@lru_cache(maxsize=1 << 18)
def shuffle_words(u: Word, v: Word) -> dict:
    """u ш v as a dict word -> multiplicity."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict = {}
    a, b = u[0], v[0]
    for w, c in shuffle_words(u[1:], v).items():
        _add(out, (a,) + w, c)
    for w, c in shuffle_words(u, v[1:]).items():
        _add(out, (b,) + w, c)
    return out


@lru_cache(maxsize=1 << 18)
def stuffle_words(u: Word, v: Word, order: int) -> dict:
    """u * v (quasi-shuffle) with residues added mod ``order``."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict = {}
    a, b = u[0], v[0]
    for w, c in stuffle_words(u[1:], v, order).items():
        _add(out, (a,) + w, c)
    for w, c in stuffle_words(u, v[1:], order).items():
        _add(out, (b,) + w, c)
    merged = (a[0] + b[0], (a[1] + b[1]) % order)
    for w, c in stuffle_words(u[1:], v[1:], order).items():
        _add(out, (merged,) + w, c)
    return out


def _bilinear(a: Series, b: Series, word_product) -> Series:
    a._check(b)
    W = min(a.truncation, b.truncation)
    out: dict = {}
    for u, cu in a.items():
        wu = weight(u)
        for v, cv in b.items():
            if wu + weight(v) > W:
                continue
            c = cu * cv
            for w, m in word_product(u, v).items():
                out[w] = out.get(w, 0) + c * m
    return Series._raw({w: _norm(c) for w, c in out.items() if c}, a.group, a.flavor, W)


def shuffle(a: Series, b: Series) -> Series:
    if a.flavor != "X":
        raise AlgebraError("shuffle acts on X-series")
    return _bilinear(a, b, shuffle_words)


def stuffle(a: Series, b: Series) -> Series:
    if a.flavor != "Y":
        raise AlgebraError("stuffle acts on Y-series")
    n = a.group.order
    return _bilinear(a, b, lambda u, v: stuffle_words(u, v, n))


def shuffle_word_series(u: Word, v: Word, group: CyclicGroup) -> Series:
    return Series(shuffle_words(tuple(u), tuple(v)), group=group, flavor="X",
                  truncation=len(u) + len(v))


def stuffle_word_series(u: Word, v: Word, group: CyclicGroup) -> Series:
    return Series(stuffle_words(tuple(u), tuple(v), group.order), group=group, flavor="Y",
                  truncation=weight(u) + weight(v))


# -- coproducts ------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def unshuffle_word(w: Word) -> dict:
    """Delta(w) as a dict (u, v) -> coefficient; letters are primitive."""
    if not w:
        return {((), ()): 1}
    out: dict = {}
    a = w[-1:]
    for (u, v), c in unshuffle_word(w[:-1]).items():
        _add(out, (u + a, v), c)
        _add(out, (u, v + a), c)
    return out


@lru_cache(maxsize=None)
def _destuffle_letter(letter, order: int) -> tuple:
    n, nu = letter
    terms = [(((letter,), ()), 1), (((), (letter,)), 1)]
    for k in range(1, n):
        for kappa in range(order):
            terms.append(((((k, kappa),), ((n - k, (nu - kappa) % order),)), 1))
    return tuple(terms)


@lru_cache(maxsize=1 << 17)
def destuffle_word(w: Word, order: int) -> dict:
    """Delta*(w) as a dict (u, v) -> coefficient."""
    if not w:
        return {((), ()): 1}
    out: dict = {}
    for (u, v), c in destuffle_word(w[:-1], order).items():
        for (a, b), _ in _destuffle_letter(w[-1], order):
            _add(out, (u + a, v + b), c)
    return out


def _coproduct(s: Series, word_coproduct) -> TensorSeries:
    out: dict = {}
    for w, c in s.items():
        for k, m in word_coproduct(w).items():
            out[k] = out.get(k, 0) + c * m
    return TensorSeries._raw({k: _norm(c) for k, c in out.items() if c}, s.group, s.flavor,
                             s.truncation)


def coproduct_x(s: Series) -> TensorSeries:
    if s.flavor != "X":
        raise AlgebraError("coproduct_x acts on X-series")
    return _coproduct(s, unshuffle_word)


def coproduct_y(s: Series) -> TensorSeries:
    if s.flavor != "Y":
        raise AlgebraError("coproduct_y acts on Y-series")
    n = s.group.order
    return _coproduct(s, lambda w: destuffle_word(w, n))


def coproduct(s: Series) -> TensorSeries:
    """The coproduct matching the flavor: Delta on X-series, Delta* on Y-series."""
    return coproduct_x(s) if s.flavor == "X" else coproduct_y(s)


def middle_terms(t: TensorSeries) -> dict:
    """Coefficients of u (x) v with both u and v nonempty."""
    return {k: c for k, c in t.items() if k[0] and k[1]}


def _which(s: Series, which):
    if which is None:
        return
    expect = {"delta": "X", "shuffle": "X", "x": "X", "delta_star": "Y", "stuffle": "Y", "y": "Y"}
    if expect.get(str(which).lower()) != s.flavor:
        raise AlgebraError(f"coproduct {which!r} does not act on {s.flavor}-series")


def is_grouplike(s: Series, which=None) -> bool:
    _which(s, which)
    if s.constant_term != 1:
        raise DomainError("group-like test needs constant term 1")
    return coproduct(s) == tensor(s, s)


def is_primitive(s: Series, which=None) -> bool:
    _which(s, which)
    if s.constant_term != 0:
        raise DomainError("primitive test needs constant term 0")
    return not middle_terms(coproduct(s))


# -- exp / log -------------------------------------------------------------

def exp_series(s: Series) -> Series:
    """exp(s) for (s|1) = 0, as a finite truncated sum."""
    if s.constant_term != 0:
        raise DomainError("exp needs constant term 0")
    out = Series.one(s.group, s.flavor, s.truncation)
    term = out
    for k in range(1, s.truncation + 1):
        term = concat_mul(term, s).scale(Fraction(1, k))
        if not term:
            break
        out = out + term
    return out


def log_series(s: Series) -> Series:
    """log(s) for (s|1) = 1."""
    if s.constant_term != 1:
        raise DomainError("log needs constant term 1")
    t = s - Series.one(s.group, s.flavor, s.truncation)
    out = Series.zero(s.group, s.flavor, s.truncation)
    term = Series.one(s.group, s.flavor, s.truncation)
    for k in range(1, s.truncation + 1):
        term = concat_mul(term, t)
        if not term:
            break
        out = out + term.scale(Fraction((-1) ** (k - 1), k))
    return out


# -- regularization --------------------------------------------------------

@dataclass(frozen=True)
class RegDecomposition:
    """w = sum over (i, j) of L^i ш parts[(i, j)] ш R^j / (i! j!)-free form.

    ``parts[(i, j)]`` is a combination of convergent words and the key means
    the product ``left^{ш i} ш part ш right^{ш j}`` with the plain shuffle
    powers (so x1 x1 = 1/2 * x1^{ш 2}). For the stuffle variant ``j`` is
    always 0 and ``left`` is y_{1,0}.
    """

    parts: dict
    group: CyclicGroup
    flavor: str

    def regularized(self) -> Series:
        """The (0, 0) part: the value under any morphism killing the peeled letters."""
        w = max((p.truncation for p in self.parts.values()), default=0)
        return self.parts.get((0, 0), Series.zero(self.group, self.flavor, w))

    def expand(self) -> Series:
        """Substitute back; must reproduce the decomposed word."""
        W = max((p.truncation + i + j for (i, j), p in self.parts.items()), default=0)
        out = Series.zero(self.group, self.flavor, W)
        if self.flavor == "X":
            left, right, prod = (X1,), (X0,), shuffle
        else:
            left, right, prod = (Y1,), None, stuffle
        for (i, j), part in self.parts.items():
            term = part.extend(W)
            for _ in range(i):
                term = prod(term, Series.monomial(left, self.group, self.flavor, W))
            for _ in range(j):
                term = prod(term, Series.monomial(right, self.group, self.flavor, W))
            out = out + term
        return out


def _peel_left(w: Word, letter, product_terms) -> dict:
    """Write w as sum_i letter^{*i} * c_i with every c_i free of a leading ``letter``.

    ``product_terms(u)`` returns the dict of letter * u minus the word letter+u.
    Returns {i: {word: coeff}}.
    """
    a = 0
    while a < len(w) and w[a] == letter:
        a += 1
    if a == 0:
        return {0: {w: 1}}
    # letter * (letter^{a-1} u) = a * letter^a u + sum of words with fewer leading letters
    rest = w[1:]
    result: dict = {}
    for i, part in _peel_left(rest, letter, product_terms).items():
        for v, c in part.items():
            result.setdefault(i + 1, {})
            _add(result[i + 1], v, Fraction(c, a))
    for v, c in product_terms(rest).items():
        if v == w:
            continue
        for i, part in _peel_left(v, letter, product_terms).items():
            for x, cx in part.items():
                result.setdefault(i, {})
                _add(result[i], x, Fraction(-c * cx, a))
    return {i: p for i, p in result.items() if p}


def shuffle_reg_decompose(w: Word, group: CyclicGroup) -> RegDecomposition:
    """Decompose an X-word into shuffle powers of x1 and x0 around convergent words."""
    w = tuple(w)

    def with_letter(letter):
        return lambda u: shuffle_words((letter,), u)

    # Trailing x0 are peeled on the reversed word; shuffle commutes with reversal.
    parts: dict = {}
    for i, part in _peel_left(w, X1, with_letter(X1)).items():
        for v, c in part.items():
            for j, rpart in _peel_left(v[::-1], X0, with_letter(X0)).items():
                for x, cx in rpart.items():
                    parts.setdefault((i, j), {})
                    _add(parts[(i, j)], x[::-1], _norm(c * cx))
    W = len(w)
    return RegDecomposition(
        {k: Series(p, group=group, flavor="X", truncation=W - k[0] - k[1])
         for k, p in sorted(parts.items()) if p},
        group, "X")


def stuffle_reg_decompose(w: Word, group: CyclicGroup) -> RegDecomposition:
    """Decompose a Y-word into stuffle powers of y_{1,0} times convergent words."""
    w = tuple(w)
    n = group.order
    parts = _peel_left(w, Y1, lambda u: stuffle_words((Y1,), u, n))
    W = weight(w)
    return RegDecomposition(
        {(i, 0): Series(p, group=group, flavor="Y", truncation=W - i)
         for i, p in sorted(parts.items()) if p},
        group, "Y")


def reg_value(w: Word, group: CyclicGroup) -> Series:
    """Regularized evaluation of a word, expressed on convergent words."""
    if w and isinstance(w[0], tuple):
        return stuffle_reg_decompose(w, group).regularized()
    return shuffle_reg_decompose(w, group).regularized()
