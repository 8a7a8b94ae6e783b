import random
from fractions import Fraction

import pytest

from dmrd.algebra import CyclicGroup, Series, concat_mul
from dmrd.group import (exp_s_psi, group_exp, group_log, ihara_bracket, kappa_apply,
                        kappa_images, mt_inv, mt_mul, proj1, proj2, s_psi, scale_h,
                        scale_h_pair, special_derivation, substitute, twist)
from dmrd.hopf import DomainError

from conftest import random_x_series

X0, X1 = 0, 1
G1, G2, G3, G4 = (CyclicGroup(n) for n in (1, 2, 3, 4))


def xs(terms, g=G2, W=3):
    return Series(terms, group=g, truncation=W)


def commutator(a, b):
    return concat_mul(a, b) - concat_mul(b, a)


def letter(a, g, W):
    return Series.monomial((a,), g, "X", W)


def test_twist_examples():
    g = G4
    assert twist(3, xs({(X0,): 1}, g)) == xs({(X0,): 1}, g)
    s = xs({(2, 4): 1, (X0, 1): 2}, g)
    assert twist(0, s) == s
    assert twist(1, xs({(2, 4): 1}, g)) == xs({(3, 1): 1}, g)


def test_kappa_examples():
    one = Series.one(G2, "X", 3)
    assert kappa_apply(xs({(): 1, (X0,): 1}), xs({(X0,): 1})) == xs({(X0,): 1})
    for sigma in (1, 2):
        got = kappa_apply(xs({(): 1, (X0,): 1}, W=2), xs({(sigma,): 1}, W=2))
        assert got == xs({(sigma,): 1, (sigma, X0): 1, (X0, sigma): -1}, W=2)
    s = xs({(1, 2, X0): 3, (2,): 1})
    assert kappa_apply(one, s) == s


def test_mt_mul_examples():
    one = Series.one(G2, "X", 3)
    h = xs({(): 1, (1, 2): 2, (X0,): 1})
    assert mt_mul(one, h) == h and mt_mul(h, one) == h
    got = mt_mul(xs({(): 1, (X0,): 1}, W=2), xs({(): 1, (2,): 1}, W=2))
    assert got == xs({(): 1, (X0,): 1, (2,): 1, (2, X0): 1}, W=2)


def test_mt_inv_examples():
    one = Series.one(G2, "X", 4)
    assert mt_inv(one) == one
    g = xs({(): 1, (X0,): 1}, W=4)
    assert mt_inv(g) == xs({(): 1, (X0,): -1, (X0, X0): 1, (X0,) * 3: -1, (X0,) * 4: 1}, W=4)


def test_special_derivation_examples():
    W = 3
    psi = xs({(X0,): 1}, W=W)
    assert not special_derivation(psi, xs({(X0,): 1}, W=W))
    for sigma in (1, 2):
        assert special_derivation(psi, letter(sigma, G2, W)) == commutator(letter(sigma, G2, W),
                                                                           letter(X0, G2, W))
    psi = xs({(1,): 1, (X0, 2): -2}, W=W)
    got = special_derivation(psi, xs({(X0, 2): 1}, W=W))
    expect = concat_mul(letter(X0, G2, W), commutator(letter(2, G2, W), twist(1, psi)))
    assert got == expect


def test_s_psi_examples():
    psi = xs({(1, 2): 1, (2,): 3}, W=4)
    one = Series.one(G2, "X", 4)
    assert s_psi(psi, one) == psi
    assert exp_s_psi(psi, one) == group_exp(psi)


def test_scale_examples():
    mu = Fraction(3, 2)
    assert scale_h(mu, xs({(X0, X1): 1})) == xs({(X0, X1): mu ** 2})
    s = xs({(X0, X1, 2): 5, (): 1})
    assert scale_h(1, s) == s
    w4 = xs({(X0, 1, 2, 1): 1}, W=4)
    assert scale_h_pair(Fraction(5), w4) == w4.scale(25)
    with pytest.raises(DomainError):
        scale_h_pair(2, xs({(X0,): 1}))


def test_proj_examples():
    assert proj2(1, xs({(X0, 2): 1})) == Series({(X0, X1): 2}, group=G1, truncation=3)
    assert not proj1(1, xs({(X0, 2): 1}))
    assert proj2(2, xs({(2,): 1}, G4)) == xs({(2,): 1}, G2)
    assert proj1(2, xs({(3,): 1}, G4)) == xs({(2,): 1}, G2)
    with pytest.raises(ValueError):
        proj1(3, xs({(): 1}, G4))


# -- properties on seeded random instances ---------------------------------

def instances(count, max_w=6, seed=7):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 3)
        W = rng.randint(2, max_w)
        yield rng, CyclicGroup(n), W


def test_associativity():
    for rng, g, W in instances(15, 5):
        a, b, c = (random_x_series(rng, g.order, W, 1, terms=4) for _ in range(3))
        assert mt_mul(mt_mul(a, b), c) == mt_mul(a, mt_mul(b, c))


def test_kappa_representation():
    for rng, g, W in instances(15, 6):
        a, b = (random_x_series(rng, g.order, W, 1, terms=4) for _ in range(2))
        ab = kappa_images(mt_mul(a, b))
        ib = kappa_images(b)
        for x, img in ab.items():
            assert img == kappa_apply(a, ib[x])


def test_kappa_unipotent():
    for rng, g, W in instances(15, 6):
        a = random_x_series(rng, g.order, W, 1, terms=4)
        for x in g.x_letters():
            img = kappa_apply(a, letter(x, g, W))
            assert img.homogeneous_component(1) == letter(x, g, W).homogeneous_component(1)
            assert img.min_weight() >= 1


def test_inverse_two_sided():
    for rng, g, W in instances(15, 6):
        a = random_x_series(rng, g.order, W, 1, terms=5)
        inv = mt_inv(a)
        one = Series.one(g, "X", W)
        assert mt_mul(a, inv) == one == mt_mul(inv, a)


def test_exp_inverse_and_log():
    for rng, g, W in instances(15, 6):
        psi = random_x_series(rng, g.order, W, 0, terms=4)
        one = Series.one(g, "X", W)
        assert mt_mul(group_exp(psi), group_exp(-psi)) == one
        assert group_log(group_exp(psi)) == psi


def test_exp_s_psi_is_left_translation():
    for rng, g, W in instances(15, 6):
        psi = random_x_series(rng, g.order, W, 0, terms=3)
        h = random_x_series(rng, g.order, W, 1, terms=3)
        assert exp_s_psi(psi, h) == mt_mul(group_exp(psi), h)


def test_bracket_represents_commutator():
    for rng, g, W in instances(15, 6):
        p1 = random_x_series(rng, g.order, W, 0, terms=3)
        p2 = random_x_series(rng, g.order, W, 0, terms=3)
        br = ihara_bracket(p1, p2)
        assert not ihara_bracket(p1, p1)
        words = [letter(x, g, W) for x in g.x_letters()]
        words.append(random_x_series(rng, g.order, W, 0, terms=3))
        for w in words:
            lhs = s_psi(p1, s_psi(p2, w)) - s_psi(p2, s_psi(p1, w))
            assert lhs == s_psi(br, w)


def test_jacobi():
    for rng, g, W in instances(10, 5):
        a, b, c = (random_x_series(rng, g.order, W, 0, terms=3) for _ in range(3))
        total = (ihara_bracket(a, ihara_bracket(b, c)) + ihara_bracket(b, ihara_bracket(c, a))
                 + ihara_bracket(c, ihara_bracket(a, b)))
        assert not total


def test_projections_are_morphisms():
    rng = random.Random(11)
    for _ in range(12):
        n = rng.choice([2, 4, 6])
        W = rng.randint(2, 5)
        a, b = (random_x_series(rng, n, W, 1, terms=4) for _ in range(2))
        for d in CyclicGroup(n).divisors():
            for proj in (proj1, proj2):
                assert proj(d, mt_mul(a, b)) == mt_mul(proj(d, a), proj(d, b))


def test_derivation_equivariance():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(2, 4)
        g = CyclicGroup(n)
        W = 4
        psi = random_x_series(rng, n, W - 1, 0, terms=4).extend(W)
        for gamma in range(n):
            for sigma in range(n):
                lhs = twist(gamma, special_derivation(psi, letter(sigma + 1, g, W)))
                tau = (gamma + sigma) % n
                rhs = commutator(letter(tau + 1, g, W), twist(tau, psi))
                assert lhs == rhs


def test_substitute_identity():
    rng = random.Random(3)
    s = random_x_series(rng, 2, 4, 1)
    ident = {x: letter(x, G2, 4) for x in G2.x_letters()}
    assert substitute(s, ident) == s
