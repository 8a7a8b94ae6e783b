import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dmrd.algebra import CyclicGroup, Series, TensorSeries, concat_mul, tensor, weight, x_words, y_words
from dmrd.hopf import (DomainError, coproduct_x, coproduct_y, destuffle_word, exp_series,
                       is_convergent_x, is_convergent_y, is_grouplike, is_primitive, log_series,
                       middle_terms, reg_value, shuffle, shuffle_reg_decompose, shuffle_words,
                       stuffle, stuffle_reg_decompose, stuffle_words, unshuffle_word)

from conftest import x_series, x_word, y_series, y_word

G1, G2, G3 = CyclicGroup(1), CyclicGroup(2), CyclicGroup(3)
X0, X1 = 0, 1
Y1 = (1, 0)


def xs(terms, g=G1, W=4):
    return Series(terms, group=g, truncation=W)


def ys(terms, g=G1, W=4):
    return Series(terms, group=g, flavor="Y", truncation=W)


def brute_shuffle(u, v):
    out = {}
    n = len(u) + len(v)
    for pos in itertools.combinations(range(n), len(u)):
        w, iu, iv = [], iter(u), iter(v)
        for i in range(n):
            w.append(next(iu) if i in pos else next(iv))
        out[tuple(w)] = out.get(tuple(w), 0) + 1
    return out


def test_shuffle_examples():
    assert shuffle_words((X0,), (X1,)) == {(X0, X1): 1, (X1, X0): 1}
    assert shuffle_words((X1,), (X0, X1)) == {(X1, X0, X1): 1, (X0, X1, X1): 2}
    assert shuffle_words((), (X0, X1)) == {(X0, X1): 1}


@given(x_word(2, 0, 4), x_word(2, 0, 4))
def test_shuffle_matches_enumeration(u, v):
    assert shuffle_words(u, v) == brute_shuffle(u, v)


def test_stuffle_examples():
    a, b = (2, 1), (3, 2)
    assert stuffle_words((a,), (b,), 4) == {(a, b): 1, (b, a): 1, ((5, 3),): 1}
    assert stuffle_words((Y1,), (), 3) == {(Y1,): 1}
    assert stuffle_words(((1, 1),), ((1, 1),), 2) == {((1, 1), (1, 1)): 2, ((2, 0),): 1}


def test_coproduct_x_examples():
    d = coproduct_x(xs({(X0,): 1}))
    assert dict(d.items()) == {((X0,), ()): 1, ((), (X0,)): 1}
    d = coproduct_x(xs({(X0, X1): 1}))
    assert dict(d.items()) == {((X0, X1), ()): 1, ((X0,), (X1,)): 1, ((X1,), (X0,)): 1,
                               ((), (X0, X1)): 1}
    assert dict(coproduct_x(xs({(): 1})).items()) == {((), ()): 1}


def test_coproduct_y_examples():
    n = 3
    for nu in range(n):
        d = destuffle_word(((2, nu),), n)
        mid = {k: c for k, c in d.items() if k[0] and k[1]}
        assert len(mid) == n
        assert all((((1, a),), ((1, (nu - a) % n),)) in mid for a in range(n))
        assert d[(((2, nu),), ())] == 1 and d[((), ((2, nu),))] == 1
    d = destuffle_word(((1, 2),), n)
    assert d == {(((1, 2),), ()): 1, ((), ((1, 2),)): 1}
    d = middle_terms(coproduct_y(ys({(Y1, Y1): 1})))
    assert d[((Y1,), (Y1,))] == 2


def test_grouplike_examples():
    assert is_grouplike(exp_series(xs({(X0,): 1})), "delta")
    assert not is_grouplike(xs({(): 1, (X0, X1): 1}))
    assert is_grouplike(xs({(): 1}))
    with pytest.raises(DomainError):
        is_grouplike(xs({(X0,): 1}))


def test_primitive_examples():
    assert is_primitive(xs({(X0, X1): 1, (X1, X0): -1}))
    assert is_primitive(ys({((2, 0),): 1, (Y1, Y1): Fraction(-1, 2)}), "delta_star")
    assert not is_primitive(xs({(X0, X1): 1}))
    with pytest.raises(DomainError):
        is_primitive(xs({(): 1}))


@given(x_word(2, 0, 6).filter(lambda w: len(w) <= 6))
def test_shuffle_duality(w):
    d = unshuffle_word(w)
    for (u, v), c in d.items():
        assert shuffle_words(u, v).get(w, 0) == c
    for k in range(len(w) + 1):
        for u in itertools.product(range(3), repeat=k):
            for v in itertools.product(range(3), repeat=len(w) - k):
                assert shuffle_words(u, v).get(w, 0) == d.get((u, v), 0)


@given(y_word(2, 5))
def test_stuffle_duality(w):
    d = destuffle_word(w, 2)
    for (u, v), c in d.items():
        assert stuffle_words(u, v, 2).get(w, 0) == c


@given(x_word(3, 0, 3), x_word(3, 0, 3), x_word(3, 0, 3))
def test_shuffle_commutative_associative(u, v, w):
    g = CyclicGroup(3)
    a, b, c = (Series.monomial(t, g, "X", 9) for t in (u, v, w))
    assert shuffle(a, b) == shuffle(b, a)
    assert shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c))


@given(y_word(3, 3), y_word(3, 3), y_word(3, 3))
def test_stuffle_commutative_associative(u, v, w):
    g = CyclicGroup(3)
    a, b, c = (Series.monomial(t, g, "Y", 9) for t in (u, v, w))
    assert stuffle(a, b) == stuffle(b, a)
    assert stuffle(stuffle(a, b), c) == stuffle(a, stuffle(b, c))


def _coassoc(t: TensorSeries, cop):
    """(Delta (x) id) Delta and (id (x) Delta) Delta as dicts on triples."""
    left, right = {}, {}
    for (u, v), c in t.items():
        for (a, b), m in cop(u).items():
            left[(a, b, v)] = left.get((a, b, v), 0) + c * m
        for (a, b), m in cop(v).items():
            right[(u, a, b)] = right.get((u, a, b), 0) + c * m
    return {k: c for k, c in left.items() if c}, {k: c for k, c in right.items() if c}


@given(x_series(2, 5))
def test_coproduct_x_coassociative(s):
    left, right = _coassoc(coproduct_x(s), unshuffle_word)
    assert left == right


@given(y_series(2, 5))
def test_coproduct_y_coassociative(s):
    left, right = _coassoc(coproduct_y(s), lambda w: destuffle_word(w, 2))
    assert left == right


def _tensor_mul(a: TensorSeries, b: TensorSeries) -> TensorSeries:
    W = min(a.truncation, b.truncation)
    out = {}
    for (u, v), c in a.items():
        for (x, y), d in b.items():
            if weight(u + x) + weight(v + y) <= W:
                out[(u + x, v + y)] = out.get((u + x, v + y), 0) + c * d
    return TensorSeries(out, group=a.group, flavor=a.flavor, truncation=W)


@given(x_series(2, 5), x_series(2, 5))
def test_coproduct_x_is_morphism(a, b):
    assert coproduct_x(concat_mul(a, b)) == _tensor_mul(coproduct_x(a), coproduct_x(b))


@given(y_series(2, 5), y_series(2, 5))
def test_coproduct_y_is_morphism(a, b):
    assert coproduct_y(concat_mul(a, b)) == _tensor_mul(coproduct_y(a), coproduct_y(b))


def _primitive_x(rng_terms, g, W):
    # brackets of letters are primitive
    out = Series.zero(g, "X", W)
    for a, b, c in rng_terms:
        la, lb = Series.monomial((a,), g, "X", W), Series.monomial((b,), g, "X", W)
        out = out + (concat_mul(la, lb) - concat_mul(lb, la)).scale(c) + la.scale(c)
    return out


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.fractions(-3, 3, max_denominator=3)), max_size=3))
def test_exp_log_x(terms):
    g = CyclicGroup(2)
    psi = _primitive_x(terms, g, 5)
    e = exp_series(psi)
    assert is_grouplike(e)
    assert is_primitive(log_series(e))
    assert log_series(e) == psi


@given(st.fractions(-3, 3, max_denominator=3), st.fractions(-3, 3, max_denominator=3))
def test_exp_log_y(a, b):
    psi = ys({((2, 0),): a, (Y1, Y1): -a / 2, (Y1,): b}, g=G1, W=5)
    assert is_primitive(psi)
    e = exp_series(psi)
    assert is_grouplike(e)
    assert is_primitive(log_series(e))


@given(x_word(2, 1, 4).filter(is_convergent_x), x_word(2, 1, 4).filter(is_convergent_x))
def test_convergent_words_closed_under_shuffle(u, v):
    assert all(is_convergent_x(w) for w in shuffle_words(u, v))


def test_shuffle_reg_examples():
    d = shuffle_reg_decompose((X0, X1), G1)
    assert set(d.parts) == {(0, 0)} and d.regularized() == xs({(X0, X1): 1}, W=2)
    d = shuffle_reg_decompose((X1, X0), G1)
    assert d.regularized() == xs({(X0, X1): -1}, W=2)
    assert d.parts[(1, 1)] == xs({(): 1}, W=0)
    d = shuffle_reg_decompose((X1, X1), G1)
    assert d.parts == {(2, 0): xs({(): Fraction(1, 2)}, W=0)}
    assert not d.regularized()


def test_stuffle_reg_examples():
    g = CyclicGroup(3)
    assert stuffle_reg_decompose(((2, 0),), g).regularized() == ys({((2, 0),): 1}, g=g, W=2)
    nu = 2
    d = stuffle_reg_decompose((Y1, (2, nu)), g)
    assert d.parts[(1, 0)] == ys({((2, nu),): 1}, g=g, W=2)
    assert d.regularized() == ys({((2, nu), Y1): -1, ((3, nu),): -1}, g=g, W=3)
    d = stuffle_reg_decompose((Y1,), g)
    assert set(d.parts) == {(1, 0)} and not d.regularized()


@given(x_word(2, 0, 6))
def test_shuffle_reg_reproduces_input(w):
    d = shuffle_reg_decompose(w, G2)
    assert d.expand() == Series.monomial(w, G2, "X", len(w))
    for part in d.parts.values():
        assert all(is_convergent_x(v) for v in part.words())


@given(y_word(3, 5))
def test_stuffle_reg_reproduces_input(w):
    d = stuffle_reg_decompose(w, G3)
    assert d.expand() == Series.monomial(w, G3, "Y", weight(w))
    for part in d.parts.values():
        assert all(is_convergent_y(v) for v in part.words())


def test_reg_value_dispatch():
    assert reg_value((X1, X0), G1) == xs({(X0, X1): -1}, W=2)
    assert not reg_value((Y1,), G1)
