"""Acceptance criteria; the terminal summary prints one line per criterion."""
import random
from collections import defaultdict
from fractions import Fraction

import pytest

from dmrd.algebra import CyclicGroup, Series, x_words, y_words
from dmrd.group import (exp_s_psi, group_exp, ihara_bracket, kappa_apply, kappa_images,
                        mt_inv, mt_mul, s_psi)
from dmrd.hopf import coproduct_x, coproduct_y, shuffle_words, stuffle_words
from dmrd.numeric import verify_stuffle_numeric, weight1_constant_numeric, zeta_value
from dmrd.solver import (alpha, build_rational_point, check_eq_excep, check_point,
                         connecting_element, dimension, dmrd0_basis, dmrd0_dimension,
                         is_tangent, tangent_basis)
from dmrd.tables import REFERENCE_DIMS, reference_dagger

from conftest import random_x_series

# -- 1. dimension tables -----------------------------------------------------

TABLE_CASES = [(rel, n, p, dim) for rel, rows in REFERENCE_DIMS.items()
               for n, dims in rows.items() for p, dim in enumerate(dims, start=1)]


@pytest.mark.criterion(1, "dimension tables")
@pytest.mark.parametrize("rel,n,p,expected", TABLE_CASES,
                         ids=[f"{r}-N{n}-p{p}" for r, n, p, _ in TABLE_CASES])
def test_table_entry(rel, n, p, expected):
    assert dimension(n, p, rel) == expected


DAGGER_CASES = [(n, p) for n, dims in REFERENCE_DIMS["dmrd"].items()
                for p in range(1, len(dims) + 1)]


@pytest.mark.criterion(1, "dimension tables")
@pytest.mark.parametrize("n,p", DAGGER_CASES, ids=[f"dagger-N{n}-p{p}" for n, p in DAGGER_CASES])
def test_dagger_pattern(n, p):
    deficit = dimension(n, p) - dmrd0_dimension(n, p)
    assert deficit == (1 if p == reference_dagger(n) else 0)


# -- 2. Hopf duality ---------------------------------------------------------

def _dual_table(words_by_weight, word_product, max_weight):
    expected = defaultdict(dict)
    for a in range(max_weight + 1):
        for b in range(max_weight + 1 - a):
            for u in words_by_weight[a]:
                for v in words_by_weight[b]:
                    for w, c in word_product(u, v).items():
                        expected[w][(u, v)] = c
    return expected


@pytest.mark.criterion(2, "Hopf duality")
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("flavor", ["X", "Y"])
def test_hopf_duality(flavor, n):
    g, W = CyclicGroup(n), 4
    if flavor == "X":
        words = {p: x_words(g, p) for p in range(W + 1)}
        expected = _dual_table(words, shuffle_words, W)
        cop = coproduct_x
    else:
        words = {p: y_words(g, p) for p in range(W + 1)}
        expected = _dual_table(words, lambda u, v: stuffle_words(u, v, n), W)
        cop = coproduct_y
    for p in range(W + 1):
        for w in words[p]:
            got = dict(cop(Series.monomial(w, g, flavor, W)).items())
            assert got == expected[w], w


# -- 3. group laws -------------------------------------------------------------

def _group_instances(count=100, seed=31):
    rng = random.Random(seed)
    for _ in range(count):
        g = CyclicGroup(rng.randint(1, 3))
        yield rng, g, rng.randint(1, 6)


@pytest.mark.criterion(3, "group laws")
def test_group_laws():
    for rng, g, W in _group_instances():
        n = g.order
        a, b, c = (random_x_series(rng, n, W, 1, terms=4) for _ in range(3))
        p1, p2 = (random_x_series(rng, n, W, 0, terms=3) for _ in range(2))
        one = Series.one(g, "X", W)
        assert mt_mul(mt_mul(a, b), c) == mt_mul(a, mt_mul(b, c))
        assert mt_mul(one, a) == a == mt_mul(a, one)
        inv = mt_inv(a)
        assert mt_mul(a, inv) == one == mt_mul(inv, a)
        ab, kb = kappa_images(mt_mul(a, b)), kappa_images(b)
        assert all(img == kappa_apply(a, kb[x]) for x, img in ab.items())
        assert mt_mul(group_exp(p1), c) == exp_s_psi(p1, c)
        br = ihara_bracket(p1, p2)
        for x in g.x_letters():
            w = Series.monomial((x,), g, "X", W)
            assert s_psi(br, w) == s_psi(p1, s_psi(p2, w)) - s_psi(p2, s_psi(p1, w))


# -- 4 and 5. torsor behaviour ----------------------------------------------------

TORSOR_CASES = [(1, 8), (2, 6), (3, 4)]


def _point(n, W, offset=0):
    return build_rational_point(n, W, 1, even_only=n <= 2, offset=offset)


@pytest.mark.criterion(4, "torsor stability")
@pytest.mark.parametrize("n,W", TORSOR_CASES)
def test_stability(n, W):
    phi = _point(n, W)
    base = check_point(phi, "dmrd", 1)
    assert base.passed
    basis = [b for p in range(1, W + 1) for b in dmrd0_basis(n, p)]
    assert basis
    for psi in basis:
        report = check_point(exp_s_psi(psi.extend(W), phi), "dmrd", 1)
        assert report.passed, report.failures()
        assert report.alpha_value == base.alpha_value == 1


@pytest.mark.criterion(5, "transitivity")
@pytest.mark.parametrize("n,W", TORSOR_CASES)
def test_transitivity(n, W):
    phi, phi2 = _point(n, W), _point(n, W, offset=1)
    assert phi != phi2
    assert check_point(phi2, "dmrd", 1).passed
    psi = connecting_element(phi, phi2)
    assert is_tangent(psi, "dmrd", with_alpha=True)
    assert exp_s_psi(psi, phi) == phi2


# -- 6. Lie closure ----------------------------------------------------------------

@pytest.mark.criterion(6, "Lie closure")
@pytest.mark.parametrize("n,total", [(1, 8), (2, 5)])
def test_bracket_closure(n, total):
    basis = [b for p in range(1, total) for b in dmrd0_basis(n, p)]
    a_n = alpha(n)
    checked = 0
    for i, a in enumerate(basis):
        for b in basis[i:]:
            W = a.truncation + b.truncation
            if W > total:
                continue
            br = ihara_bracket(a.extend(W), b.extend(W))
            assert is_tangent(br, "dmrd", with_alpha=True)
            assert sum(c * br.coeff(w) for w, c in a_n.items()) == 0
            checked += 1
    assert checked


# -- 7. parity condition on basis elements ---------------------------------

@pytest.mark.criterion(7, "odd/even parity of depth-one coefficients")
@pytest.mark.parametrize("n,p", [(n, p) for n in (1, 2) for p in range(3, 8)])
def test_eq_excep(n, p):
    for psi in tangent_basis(n, p):
        assert all(check_eq_excep(psi, p, nu) for nu in range(n))


# -- 8. numerics -------------------------------------------------------------------

def _convergent_y_word(rng, order, budget):
    while True:
        w, left = [], rng.randint(1, budget)
        while left:
            s = rng.randint(1, left)
            w.append((s, rng.randrange(order)))
            left -= s
        if w[0] != (1, 0):
            return tuple(w)


@pytest.mark.criterion(8, "numeric suite")
def test_zeta2_zeta3():
    assert verify_stuffle_numeric(((2, 0),), ((3, 0),), CyclicGroup(1), 1e-6).passed


@pytest.mark.criterion(8, "numeric suite")
def test_zeta21():
    assert abs(zeta_value((2, 1)) - zeta_value((3,))) <= 1e-6


@pytest.mark.criterion(8, "numeric suite")
def test_random_stuffle():
    rng = random.Random(2718)
    for _ in range(25):
        order = rng.randint(1, 4)
        while True:
            u, v = (_convergent_y_word(rng, order, 4) for _ in range(2))
            if sum(s for s, _ in u + v) <= 5:
                break
        chk = verify_stuffle_numeric(u, v, CyclicGroup(order), 1e-4)
        assert chk.passed, (u, v, chk.difference)


@pytest.mark.criterion(8, "numeric suite")
def test_weight1_constants():
    for n in range(2, 13):
        for k in range(1, n):
            assert weight1_constant_numeric(n, k) == Fraction(2 * k - n, n)
