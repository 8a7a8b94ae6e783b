"""The group of constant-term-1 X-series under the twisted product G * kappa_G(H)."""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraError, CyclicGroup, Series, X0, _norm, concat_mul, weight
from .hopf import DomainError


def _require_group(g: Series):
    if g.flavor != "X":
        raise AlgebraError("group elements are X-series")
    if g.constant_term != 1:
        raise DomainError("group elements need constant term 1")


def _require_lie(psi: Series):
    if psi.flavor != "X":
        raise AlgebraError("Lie elements are X-series")
    if psi.constant_term != 0:
        raise DomainError("Lie elements need constant term 0")


def twist(gamma: int, s: Series) -> Series:
    """Letter relabeling fixing x0 and sending x_sigma to x_{gamma sigma}."""
    n = s.group.order
    gamma %= n
    if gamma == 0:
        return s
    return s.map_words(lambda w: (tuple(a if a == X0 else (a - 1 + gamma) % n + 1 for a in w), 1))


def series_inverse(s: Series) -> Series:
    """Concatenation inverse of a series with constant term 1 (Neumann series)."""
    if s.constant_term != 1:
        raise DomainError("inverse needs constant term 1")
    one = Series.one(s.group, s.flavor, s.truncation)
    t = one - s
    out, term = one, one
    for _ in range(s.truncation):
        term = concat_mul(term, t)
        if not term:
            break
        out = out + term
    return out


def substitute(s: Series, images: dict) -> Series:
    """Continuous algebra morphism sending letter a to ``images[a]`` (a Series)."""
    W = s.truncation
    one = Series.one(s.group, "X", W)
    cache: dict = {(): one}

    def image(w):
        if w in cache:
            return cache[w]
        r = concat_mul(image(w[:-1]), images[w[-1]])
        cache[w] = r
        return r

    out: dict = {}
    for w, c in sorted(s.items(), key=lambda kv: len(kv[0])):
        for v, cv in image(w).items():
            out[v] = out.get(v, 0) + c * cv
    return Series._raw({w: _norm(c) for w, c in out.items() if c}, s.group, "X", W)


def kappa_images(g: Series, W: int | None = None) -> dict:
    _require_group(g)
    W = g.truncation if W is None else min(W, g.truncation)
    g = g.truncate(W)
    images = {X0: Series.monomial((X0,), g.group, "X", W)}
    for k in g.group.residues():
        tg = twist(k, g)
        letter = Series.monomial((k + 1,), g.group, "X", W)
        images[k + 1] = concat_mul(concat_mul(series_inverse(tg), letter), tg)
    return images


def kappa_apply(g: Series, s: Series) -> Series:
    """kappa_G: x0 -> x0, x_sigma -> t_sigma(G)^{-1} x_sigma t_sigma(G)."""
    W = min(g.truncation, s.truncation)
    return substitute(s.truncate(W), kappa_images(g, W))


def mt_mul(g: Series, h: Series) -> Series:
    """G * kappa_G(H)."""
    _require_group(g)
    _require_group(h)
    g._check(h)
    return concat_mul(g, kappa_apply(g, h))


def mt_one(group: CyclicGroup, truncation: int) -> Series:
    return Series.one(group, "X", truncation)


def mt_inv(g: Series) -> Series:
    """Two-sided inverse, built weight by weight."""
    _require_group(g)
    W = g.truncation
    h = Series.one(g.group, "X", W)
    for p in range(1, W + 1):
        # G * H = 1 + (terms of weight p linear in H_p) + ..., and H_p enters as +H_p
        err = mt_mul(g, h).homogeneous_component(p)
        h = h - err
    return h


def special_derivation(psi: Series, s: Series) -> Series:
    """Derivation with x0 -> 0 and x_sigma -> [x_sigma, t_sigma(psi)]."""
    _require_lie(psi)
    psi._check(s)
    W = min(psi.truncation, s.truncation)
    psi = psi.truncate(W)
    vals = {}
    for k in psi.group.residues():
        letter = Series.monomial((k + 1,), psi.group, "X", W)
        tp = twist(k, psi)
        vals[k + 1] = concat_mul(letter, tp) - concat_mul(tp, letter)
    acc: dict = {}
    for w, c in s.truncate(W).items():
        room = W - len(w) + 1
        for i, a in enumerate(w):
            if a == X0:
                continue
            head, tail = w[:i], w[i + 1:]
            for v, cv in vals[a].items():
                if len(v) <= room:
                    k = head + v + tail
                    acc[k] = acc.get(k, 0) + c * cv
    return Series._raw({w: _norm(c) for w, c in acc.items() if c}, psi.group, "X", W)


def s_psi(psi: Series, s: Series) -> Series:
    """psi * s + d_psi(s)."""
    return concat_mul(psi, s) + special_derivation(psi, s)


def exp_s_psi(psi: Series, s: Series) -> Series:
    """sum_k s_psi^k(s) / k!; equals Exp(psi) * s in the group."""
    W = min(psi.truncation, s.truncation)
    out = s.truncate(W)
    term = out
    for k in range(1, W + 1):
        term = s_psi(psi, term).scale(Fraction(1, k))
        if not term:
            break
        out = out + term
    return out


def group_exp(psi: Series) -> Series:
    """Exp(psi) = exp(s_psi)(1)."""
    _require_lie(psi)
    return exp_s_psi(psi, Series.one(psi.group, "X", psi.truncation))


def group_log(g: Series) -> Series:
    """Inverse of :func:`group_exp`, built weight by weight."""
    _require_group(g)
    W = g.truncation
    psi = Series.zero(g.group, "X", W)
    for p in range(1, W + 1):
        err = (g - group_exp(psi)).homogeneous_component(p)
        psi = psi + err
    return psi


def ihara_bracket(psi1: Series, psi2: Series) -> Series:
    """<psi1, psi2> = s_{psi1}(psi2) - s_{psi2}(psi1)."""
    return s_psi(psi1, psi2) - s_psi(psi2, psi1)


def scale_h(mu, s: Series) -> Series:
    """Multiply the coefficient of every weight-p word by mu^p."""
    mu = Fraction(mu)
    return s.map_words(lambda w: (w, mu ** len(w)))


def scale_h_pair(lam, s: Series) -> Series:
    """Multiply the coefficient of every weight-2n word by lam^n; odd weights are refused."""
    lam = Fraction(lam)
    if any(len(w) % 2 for w in s.words()):
        raise DomainError("scale_h_pair needs a series supported on even weights")
    return s.map_words(lambda w: (w, lam ** (len(w) // 2)))


def proj1(d: int, s: Series) -> Series:
    """Keep words whose letters x_sigma lie in mu_d, relabeled over mu_d."""
    sub = CyclicGroup(d)
    m = s.group.index(d)

    def f(w):
        out = []
        for a in w:
            if a == X0:
                out.append(X0)
            elif (a - 1) % m:
                return None
            else:
                out.append((a - 1) // m + 1)
        return tuple(out), 1

    return s.map_words(f, group=sub)


def proj2(d: int, s: Series) -> Series:
    """x_sigma -> x_{sigma^{N/d}}, x0 -> (N/d) x0, over mu_d."""
    sub = CyclicGroup(d)
    m = s.group.index(d)

    def f(w):
        zeros = sum(1 for a in w if a == X0)
        return tuple(a if a == X0 else (a - 1) % d + 1 for a in w), m ** zeros

    return s.map_words(f, group=sub)
