"""Linear systems of the double shuffle, regularization and distribution relations.

Every relation is linear in the weight-p coefficients of a tangent vector, so
each one is stored as an integer sparse operator acting on the vector of all
X-words of weight p (canonical order). Blocks, in row order:

``vanish``   (p = 1) coefficients of x0 and x1
``lie``      middle terms of the shuffle coproduct (primitivity)
``star``     middle terms of the stuffle coproduct of the star image, times p
``dist``     distribution relations for each divisor d of N
``weight1``  (p = 1, N >= 3) proportionality of antisymmetrized coefficients, times N
``alpha``    pairing with the exceptional element (only where requested)

Kernels are computed on the span of bracketed Lyndon words, which satisfies
the ``lie`` block by construction; the explicit word-level system is still
available through :func:`tangent_system` and serves as an exact reference.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy import sparse

from .algebra import (CyclicGroup, Series, Word, X0, X1, _norm, concat_mul, tensor, weight,
                      word_key, x_words, y_words)
from .bridge import phi_star, psi_star, q_s_word, y_of_x
from .group import group_exp, exp_s_psi, proj1, proj2
from .hopf import (coproduct_x, coproduct_y, destuffle_word, exp_series, is_grouplike,
                   log_series, unshuffle_word)
from .lie import lie_basis
from .linalg import (InconsistentSystem, Solution, canonical_kernel, reduce_particular, solve,
                     solve_modular, to_mod)

log = logging.getLogger(__name__)

Y1 = (1, 0)
BLOCKS = ("vanish", "lie", "star", "dist", "weight1", "alpha")


class Relations(str, Enum):
    DMR = "dmr"
    DMRD = "dmrd"


def as_relations(value) -> Relations:
    if isinstance(value, Relations):
        return value
    try:
        return Relations(str(value).lower())
    except ValueError:
        raise ValueError(f"unknown relation set {value!r}; use 'dmr' or 'dmrd'") from None


class LiftError(RuntimeError):
    """The lifting system is infeasible; the input was not a truncated point."""


# -- constants -------------------------------------------------------------

@lru_cache(maxsize=None)
def _weight1_table(n: int) -> tuple:
    from .numeric import weight1_constant_numeric

    out = []
    for k in range(1, n):
        closed = Fraction(2 * k - n, n)
        if weight1_constant_numeric(n, k) != closed:
            raise ArithmeticError(f"weight-1 constant for N={n}, k={k} disagrees with the numeric value")
        out.append((k, _norm(closed)))
    return tuple(out)


def weight1_coeffs(n: int) -> dict:
    """c_k with log(1 - z^k) - log(1 - z^-k) = c_k * i pi, z = exp(2 i pi / n), 0 < k < n."""
    return dict(_weight1_table(n))


def alpha_weight(n: int) -> int:
    return 2 if n <= 2 else 1


def alpha(n: int) -> Series:
    """The exceptional element: x0 x1 for N <= 2, x_zeta - x_{zeta^-1} otherwise."""
    g = CyclicGroup(n)
    if n <= 2:
        return Series({(X0, X1): 1}, group=g, truncation=2)
    return Series({(2,): 1, (n,): -1}, group=g, truncation=1)


# -- indexing --------------------------------------------------------------

def word_index(w: Word, n: int) -> int:
    i = 0
    for a in w:
        i = i * (n + 1) + a
    return i


def index_word(i: int, n: int, p: int) -> Word:
    out = []
    for _ in range(p):
        i, a = divmod(i, n + 1)
        out.append(a)
    return tuple(reversed(out))


def _key_sort(key):
    block = BLOCKS.index(key[0])
    rest = []
    for part in key[1:]:
        rest.append(word_key(part) if isinstance(part, tuple) else (part,))
    return (block, tuple(rest))


# -- constraint operators --------------------------------------------------

def _lie_entries(n: int, p: int):
    for j, w in enumerate(x_words(CyclicGroup(n), p)):
        for (u, v), c in unshuffle_word(w).items():
            if u and v and word_key(u) <= word_key(v):
                yield ("lie", u, v), j, c


def _star_matrix(n: int, p: int):
    """Rows: pairs (u, v), u <= v; columns: X-words. Entries are p times the star coefficients."""
    g = CyclicGroup(n)
    yws = y_words(g, p)
    yidx = {w: i for i, w in enumerate(yws)}
    keys: dict = {}
    ri, ci, val = [], [], []
    for j, w in enumerate(yws):
        for (u, v), c in destuffle_word(w, n).items():
            if u and v and word_key(u) <= word_key(v):
                k = keys.setdefault(("star", u, v), len(keys))
                ri.append(k)
                ci.append(j)
                val.append(c)
    smat = sparse.csr_matrix((np.array(val, dtype=np.int64), (ri, ci)),
                             shape=(len(keys), len(yws)), dtype=np.int64)
    qr, qc, qv = [], [], []
    corr_word = (X0,) * (p - 1) + (X1,)
    for j, w in enumerate(x_words(g, p)):
        y = y_of_x(w)
        if y is None:
            continue
        qr.append(yidx[q_s_word(y, n)])
        qc.append(j)
        qv.append(p)
        if p >= 2 and w == corr_word:
            qr.append(yidx[(Y1,) * p])
            qc.append(j)
            qv.append((-1) ** (p - 1))
    qmat = sparse.csr_matrix((np.array(qv, dtype=np.int64), (qr, qc)),
                             shape=(len(yws), (n + 1) ** p), dtype=np.int64)
    return list(keys), (smat @ qmat).tocsr()


def _dist_entries(n: int, p: int):
    g = CyclicGroup(n)
    words = x_words(g, p)
    for d in g.divisors():
        m = n // d
        if m == 1:
            continue
        for j, w in enumerate(words):
            zeros = sum(1 for a in w if a == X0)
            w2 = tuple(a if a == X0 else (a - 1) % d + 1 for a in w)
            yield ("dist", d, w2), j, m ** zeros
            if all(a == X0 or (a - 1) % m == 0 for a in w):
                w1 = tuple(a if a == X0 else (a - 1) // m + 1 for a in w)
                yield ("dist", d, w1), j, -1
            if p == 1 and w[0] != X0 and w[0] != X1 and ((w[0] - 1) * m) % n == 0:
                yield ("dist", d, (X1,)), j, -1


def _weight1_entries(n: int):
    c = {k: int(v * n) for k, v in weight1_coeffs(n).items()}
    for k in range(1, n):
        for l in range(k + 1, n):
            key = ("weight1", k, l)
            row: dict = {}
            for idx, coef in ((k + 1, c[l]), (n - k + 1, -c[l]), (l + 1, -c[k]), (n - l + 1, c[k])):
                row[idx] = row.get(idx, 0) + coef
            for j, v in sorted(row.items()):
                if v:
                    yield key, j, v


@dataclass(frozen=True)
class Operator:
    """The stacked integer constraint operator at one weight."""

    n: int
    p: int
    relations: Relations
    keys: tuple
    matrix: sparse.csr_matrix   # rows = keys, columns = X-words of weight p
    key_index: dict = field(compare=False, repr=False)

    @property
    def ncols(self) -> int:
        return (self.n + 1) ** self.p

    def scale(self, block: str) -> int:
        return {"star": self.p, "weight1": self.n}.get(block, 1)

    def apply(self, vec: dict) -> dict:
        """Exact product with a sparse vector {column: rational}; returns {key: value}."""
        csc = self._csc
        out: dict = {}
        for j, x in vec.items():
            if not x:
                continue
            lo, hi = csc.indptr[j], csc.indptr[j + 1]
            for r, v in zip(csc.indices[lo:hi].tolist(), csc.data[lo:hi].tolist()):
                out[r] = out.get(r, 0) + v * x
        return {self.keys[r]: _norm(v) for r, v in out.items() if v}

    @property
    def _csc(self):
        cached = self.__dict__.get("_csc_cache")
        if cached is None:
            cached = self.matrix.tocsc()
            object.__setattr__(self, "_csc_cache", cached)
        return cached


@lru_cache(maxsize=32)
def constraint_operator(n: int, p: int, relations="dmrd", with_alpha: bool = False,
                        with_lie: bool = False) -> Operator:
    rel = as_relations(relations)
    if p < 1:
        raise ValueError("weight must be >= 1")
    ncols = (n + 1) ** p
    entries: dict = {}

    def add(key, j, v):
        row = entries.setdefault(key, {})
        row[j] = row.get(j, 0) + v

    if p == 1:
        add(("vanish", (X0,)), 0, 1)
        add(("vanish", (X1,)), 1, 1)
    if with_lie:
        for key, j, c in _lie_entries(n, p):
            add(key, j, c)
    blocks = []
    star_keys, star_mat = _star_matrix(n, p)
    if rel is Relations.DMRD:
        for key, j, c in _dist_entries(n, p):
            add(key, j, c)
        if p == 1 and n >= 3:
            for key, j, c in _weight1_entries(n):
                add(key, j, c)
    if with_alpha and alpha_weight(n) == p:
        for w, c in alpha(n).items():
            add(("alpha",), word_index(w, n), c)
    # drop cancelled entries and empty rows
    clean = {}
    for key, row in entries.items():
        row = {j: v for j, v in row.items() if v}
        if row:
            clean[key] = row
    keys = sorted(list(clean) + star_keys, key=_key_sort)
    key_index = {k: i for i, k in enumerate(keys)}
    ri, ci, val = [], [], []
    for key, row in clean.items():
        r = key_index[key]
        for j, v in row.items():
            ri.append(r)
            ci.append(j)
            val.append(v)
    star_rows = np.array([key_index[k] for k in star_keys], dtype=np.int64)
    coo = star_mat.tocoo()
    ri = np.concatenate([np.array(ri, dtype=np.int64), star_rows[coo.row]])
    ci = np.concatenate([np.array(ci, dtype=np.int64), coo.col.astype(np.int64)])
    val = np.concatenate([np.array(val, dtype=np.int64), coo.data.astype(np.int64)])
    mat = sparse.csr_matrix((val, (ri, ci)), shape=(len(keys), ncols), dtype=np.int64)
    mat.eliminate_zeros()
    del blocks
    return Operator(n, p, rel, tuple(keys), mat, key_index)


# -- Lie parametrization ---------------------------------------------------

@lru_cache(maxsize=32)
def _lie_matrix(n: int, p: int) -> sparse.csc_matrix:
    basis = lie_basis(n + 1, p)
    ri, ci, val = [], [], []
    for j, b in enumerate(basis):
        for w, c in b.items():
            ri.append(word_index(w, n))
            ci.append(j)
            val.append(c)
    return sparse.csc_matrix((np.array(val, dtype=np.int64), (ri, ci)),
                             shape=((n + 1) ** p, len(basis)), dtype=np.int64)


def _reduced(op: Operator, bmat: sparse.csc_matrix) -> np.ndarray:
    bound = (abs(op.matrix).astype(np.float64) @ abs(bmat).astype(np.float64))
    if bound.nnz and bound.max() >= 2.0 ** 62:
        raise OverflowError("reduced constraint matrix does not fit in int64")
    return np.asarray((op.matrix @ bmat).todense(), dtype=np.int64)


def _integer_vector(v: Sequence) -> tuple[list, int]:
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [int(x * den) for x in v], den


def _lie_to_words(bmat: sparse.csc_matrix, coeffs: Sequence) -> dict:
    out: dict = {}
    for j, c in enumerate(coeffs):
        if not c:
            continue
        lo, hi = bmat.indptr[j], bmat.indptr[j + 1]
        for r, v in zip(bmat.indices[lo:hi].tolist(), bmat.data[lo:hi].tolist()):
            out[r] = out.get(r, 0) + v * c
    return {r: _norm(v) for r, v in out.items() if v}


def _solve_reduced(red: np.ndarray, rhs: Optional[list] = None) -> Solution:
    ncols = red.shape[1]
    if rhs is None:
        keep = np.any(red != 0, axis=1)
        red = np.unique(red[keep], axis=0) if keep.any() else red[:0]
    else:
        zero = ~np.any(red != 0, axis=1)
        for i in np.flatnonzero(zero):
            if rhs[i]:
                raise InconsistentSystem("constraint with zero row and nonzero right-hand side")
        red = red[~zero]
        rhs = [b for b, z in zip(rhs, zero) if not z]
    exact = red.astype(object)

    def verify(kernel, particular):
        for v in kernel:
            z, _ = _integer_vector(v)
            if any(exact.dot(np.array(z, dtype=object))):
                return False
        if particular is not None:
            z, den = _integer_vector(particular)
            lhs = exact.dot(np.array(z, dtype=object))
            if any(a != den * b for a, b in zip(lhs, rhs)):
                return False
        return True

    def matrix_mod(prime):
        a = red % prime
        if rhs is not None:
            col = np.array([to_mod(b, prime) for b in rhs], dtype=np.int64).reshape(-1, 1)
            a = np.hstack([a, col])
        return a

    return solve_modular(matrix_mod, ncols, verify, inhomogeneous=rhs is not None)


@lru_cache(maxsize=128)
def _basis_vectors(n: int, p: int, relations: Relations, with_alpha: bool):
    """Canonical kernel in word coordinates: (free columns, tuple of sparse dict vectors)."""
    with_alpha = with_alpha and alpha_weight(n) == p
    op = constraint_operator(n, p, relations, with_alpha)
    bmat = _lie_matrix(n, p)
    red = _reduced(op, bmat)
    sol = _solve_reduced(red)
    log.debug("N=%d p=%d %s alpha=%s: %d rows, %d Lie columns, nullity %d",
              n, p, relations.value, with_alpha, red.shape[0], red.shape[1], sol.nullity)
    dense = []
    ncols = (n + 1) ** p
    for v in sol.kernel:
        vec = [0] * ncols
        for r, c in _lie_to_words(bmat, v).items():
            vec[r] = c
        dense.append(vec)
    free, canon = canonical_kernel(dense, ncols)
    vectors = tuple({j: c for j, c in enumerate(v) if c} for v in canon)
    return free, vectors


def _vector_series(vec: dict, n: int, p: int, truncation: Optional[int] = None) -> Series:
    return Series({index_word(j, n, p): c for j, c in vec.items()}, group=CyclicGroup(n),
                  truncation=p if truncation is None else truncation)


def tangent_basis(n: int, p: int, relations="dmrd") -> list:
    """Canonical basis of the weight-p tangent space (reduced echelon over word order)."""
    rel = as_relations(relations)
    _, vecs = _basis_vectors(n, p, rel, False)
    return [_vector_series(v, n, p) for v in vecs]


def dimension(n: int, p: int, relations="dmrd") -> int:
    return len(_basis_vectors(n, p, as_relations(relations), False)[1])


def dmrd0_basis(n: int, p: int, relations="dmrd") -> list:
    """Weight-p tangent vectors that also pair to zero with the exceptional element."""
    rel = as_relations(relations)
    _, vecs = _basis_vectors(n, p, rel, True)
    return [_vector_series(v, n, p) for v in vecs]


def dmrd0_dimension(n: int, p: int, relations="dmrd") -> int:
    return len(_basis_vectors(n, p, as_relations(relations), True)[1])


def _table_job(args):
    n, p, rel = args
    return n, p, dimension(n, p, rel), dmrd0_dimension(n, p, rel)


def dimension_table(n: int, max_weight: int, relations="dmrd", workers: int = 1) -> dict:
    """{"dims": {p: d}, "dims0": {p: d0}, "daggers": [p, ...]} for p = 1..max_weight."""
    rel = as_relations(relations)
    jobs = [(n, p, rel) for p in range(1, max_weight + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_table_job, jobs))
    else:
        results = [_table_job(j) for j in jobs]
    results.sort()
    dims = {p: d for _, p, d, _ in results}
    dims0 = {p: d0 for _, p, _, d0 in results}
    return {"dims": dims, "dims0": dims0,
            "daggers": [p for p in dims if dims0[p] < dims[p]]}


# -- explicit systems ------------------------------------------------------

@dataclass(frozen=True)
class ConstraintSystem:
    """A sparse rational system over the X-words of one weight (canonical order)."""

    group: CyclicGroup
    weight: int
    relations: Relations
    labels: tuple
    rows: tuple            # dicts column -> rational
    rhs: tuple             # rationals

    @property
    def unknowns(self) -> list:
        return x_words(self.group, self.weight)

    @property
    def ncols(self) -> int:
        return (self.group.order + 1) ** self.weight

    @property
    def homogeneous(self) -> bool:
        return not any(self.rhs)

    def solve(self, method: str = "auto") -> Solution:
        rhs = None if self.homogeneous else list(self.rhs)
        sol = solve(list(self.rows), self.ncols, rhs, method=method)
        if sol.particular is None and rhs is None:
            sol.particular = [0] * self.ncols
        return sol

    def rank(self, method: str = "auto") -> int:
        return self.solve(method).rank

    def nullspace(self, method: str = "auto") -> list:
        n, p = self.group.order, self.weight
        sol = self.solve(method)
        return [_vector_series({j: c for j, c in enumerate(v) if c}, n, p) for v in sol.kernel]

    def particular_solution(self, method: str = "auto") -> Series:
        n, p = self.group.order, self.weight
        sol = self.solve(method)
        return _vector_series({j: c for j, c in enumerate(sol.particular) if c}, n, p)


def _primitive(row: dict, b):
    den = 1
    vals = list(row.values()) + [b]
    for v in vals:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    r = {j: int(v * den) for j, v in row.items()}
    b = int(b * den)
    g = 0
    for v in list(r.values()) + [b]:
        g = math.gcd(g, v)
    lead = r[min(r)]
    if lead < 0:
        g = -g
    return tuple(sorted((j, v // g) for j, v in r.items())), b // g


def _assemble(op: Operator, rhs: dict, group: CyclicGroup) -> ConstraintSystem:
    csr = op.matrix
    seen = set()
    labels, rows, rvec = [], [], []
    for i, key in enumerate(op.keys):
        lo, hi = csr.indptr[i], csr.indptr[i + 1]
        row = dict(zip(csr.indices[lo:hi].tolist(), csr.data[lo:hi].tolist()))
        b = rhs.get(key, 0)
        if not row:
            if b:
                raise InconsistentSystem(f"constraint {key[0]} has no unknowns but nonzero value")
            continue
        sig = _primitive(row, b)
        if sig in seen:
            continue
        seen.add(sig)
        labels.append(key)
        rows.append(dict(sig[0]))
        rvec.append(sig[1])
    return ConstraintSystem(group, op.p, op.relations, tuple(labels), tuple(rows), tuple(rvec))


def tangent_system(n: int, p: int, relations="dmrd", with_alpha: bool = False) -> ConstraintSystem:
    """Homogeneous system cutting out the weight-p tangent space, rows deduplicated."""
    op = constraint_operator(n, p, relations, with_alpha, with_lie=True)
    return _assemble(op, {}, CyclicGroup(n))


def tangent_defects(psi: Series, relations="dmrd", with_alpha: bool = False) -> dict:
    """Nonzero constraint values of psi, weight by weight: {p: {key: value}}."""
    rel = as_relations(relations)
    n = psi.group.order
    out = {}
    for p in sorted({weight(w) for w in psi.words()}):
        if p == 0:
            out[0] = {("constant",): psi.constant_term}
            continue
        op = constraint_operator(n, p, rel, with_alpha, with_lie=True)
        vec = {word_index(w, n): c for w, c in psi.homogeneous_component(p).items()}
        vals = op.apply(vec)
        if vals:
            out[p] = vals
    return out


def is_tangent(psi: Series, relations="dmrd", with_alpha: bool = False) -> bool:
    return not tangent_defects(psi, relations, with_alpha)


# -- group-level membership ------------------------------------------------

@dataclass
class MembershipReport:
    relations: str
    truncation: int
    lam: Fraction
    alpha_value: Fraction
    verdicts: dict          # name -> bool, in check order

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def failures(self) -> list:
        return [k for k, v in self.verdicts.items() if not v]

    def to_json(self) -> dict:
        from .algebra import format_rational

        return {"passed": self.passed, "relations": self.relations,
                "truncation": self.truncation, "lambda": format_rational(self.lam),
                "alpha_value": format_rational(self.alpha_value),
                "verdicts": dict(self.verdicts)}


def _distribution_generator(phi: Series, d: int) -> Series:
    n = phi.group.order
    m = n // d
    total = sum(phi.coeff((k + 1,)) for k in range(n) if (k * m) % n == 0)
    return Series({(X1,): total}, group=CyclicGroup(d), truncation=phi.truncation)


def check_point(phi: Series, relations="dmrd", lam=0) -> MembershipReport:
    """Verdicts for every group-level relation at the truncation of ``phi``."""
    rel = as_relations(relations)
    lam = Fraction(lam)
    n = phi.group.order
    W = phi.truncation
    v: dict = {}
    v["constant_term"] = phi.constant_term == 1
    if not v["constant_term"]:
        return MembershipReport(rel.value, W, lam, Fraction(0), v)
    if W >= 1:
        v["weight1_x0_x1"] = phi.coeff((X0,)) == 0 and phi.coeff((X1,)) == 0
    v["delta_grouplike"] = is_grouplike(phi)
    v["delta_star_grouplike"] = is_grouplike(phi_star(phi).star)
    if rel is Relations.DMRD:
        for d in phi.group.divisors():
            lhs = proj2(d, phi)
            rhs = concat_mul(exp_series(_distribution_generator(phi, d)), proj1(d, phi))
            v[f"distribution_d{d}"] = lhs == rhs
        if n >= 3 and W >= 1:
            c = weight1_coeffs(n)
            dk = {k: phi.coeff((k + 1,)) - phi.coeff((n - k + 1,)) for k in range(1, n)}
            v["weight1_proportional"] = all(c[l] * dk[k] == c[k] * dk[l]
                                            for k in range(1, n) for l in range(k + 1, n))
    a = alpha(n)
    aval = Fraction(0)
    if W >= alpha_weight(n):
        aval = Fraction(sum(c * phi.coeff(w) for w, c in a.items()))
        v["alpha_pairing"] = aval == lam
    return MembershipReport(rel.value, W, lam, aval, v)


# -- lifting ---------------------------------------------------------------

def _lift_rhs(base: Series, q: int, op: Operator, lam, with_lie: bool) -> dict:
    """Right-hand sides: the defect of ``base`` at weight q for each constraint key."""
    n = base.group.order
    rhs: dict = {}

    def middle(t, scale, block):
        for (u, v), c in t.items():
            if u and v and weight(u) + weight(v) == q and word_key(u) <= word_key(v):
                rhs[(block, u, v)] = _norm(c * scale)

    if with_lie:
        middle(tensor(base, base) - coproduct_x(base), 1, "lie")
    sb = phi_star(base).star
    middle(tensor(sb, sb) - coproduct_y(sb), q, "star")
    if op.relations is Relations.DMRD:
        for d in base.group.divisors():
            if d == n:
                continue
            gen = _distribution_generator(base, d)
            target = concat_mul(exp_series(gen), proj1(d, base)) - proj2(d, base)
            for w, c in target.homogeneous_component(q).items():
                rhs[("dist", d, w)] = c
    if ("alpha",) in op.key_index:
        a = alpha(n)
        rhs[("alpha",)] = _norm(Fraction(lam) - sum(c * base.coeff(w) for w, c in a.items()))
    if q == 1:
        for w in ((X0,), (X1,)):
            if base.coeff(w):
                rhs[("vanish", w)] = -base.coeff(w)
    return {k: c for k, c in rhs.items() if c}


def lift_system(phi: Series, relations="dmrd", lam=0) -> ConstraintSystem:
    """Explicit word-level system for the weight-(n+1) term of a lift of ``phi``."""
    n = phi.group.order
    q = phi.truncation + 1
    op = constraint_operator(n, q, relations, alpha_weight(n) == q, with_lie=True)
    rhs = _lift_rhs(phi.extend(q), q, op, lam, with_lie=True)
    return _assemble(op, rhs, phi.group)


def lift(phi: Series, relations="dmrd", lam=0, *, offset=0, even_zero: bool = False,
         validate: bool = True) -> Series:
    """Extend a point truncated at weight n to weight n+1.

    The new top-weight term is the solution of the inhomogeneous system whose
    coordinates on the free columns equal ``offset`` (0 gives the canonical
    lift). With ``even_zero`` the zero top term is returned when it solves the
    system, as for even points at odd weight.
    """
    rel = as_relations(relations)
    if validate:
        report = check_point(phi, rel, lam)
        if not report.passed:
            raise LiftError(f"input fails {', '.join(report.failures())} at weight {phi.truncation}")
    n = phi.group.order
    q = phi.truncation + 1
    ext = phi.extend(q)
    if phi.truncation == 0:
        top0 = Series.zero(phi.group, "X", q)
    else:
        top0 = exp_series(log_series(phi).extend(q)).homogeneous_component(q)
    base = ext + top0
    with_alpha = alpha_weight(n) == q
    op = constraint_operator(n, q, rel, with_alpha)
    rhs = _lift_rhs(base, q, op, lam, with_lie=False)
    if even_zero and not top0 and not rhs:
        return ext
    if even_zero:
        raise LiftError("zero is not a solution of the lifting system")
    bmat = _lie_matrix(n, q)
    red = _reduced(op, bmat)
    try:
        sol = _solve_reduced(red, [rhs.get(k, 0) for k in op.keys])
    except InconsistentSystem as exc:
        raise LiftError(f"lift from weight {q - 1} to {q} is infeasible: {exc}") from None
    top = {word_index(w, n): c for w, c in top0.items()}
    for j, c in _lie_to_words(bmat, sol.particular).items():
        top[j] = top.get(j, 0) + c
    free, kernel = _basis_vectors(n, q, rel, with_alpha)
    offset = Fraction(offset)
    for f, vec in zip(free, kernel):
        shift = top.get(f, 0) - offset
        if shift:
            for j, c in vec.items():
                top[j] = top.get(j, 0) - shift * c
    top = {j: _norm(c) for j, c in top.items() if c}
    return ext + _vector_series(top, n, q, truncation=q)


def build_rational_point(n: int, W: int, lam=1, even_only: bool = False, relations="dmrd",
                         offset=0) -> Series:
    """A point of the relation scheme with alpha-pairing ``lam``, truncated at weight W."""
    from .group import scale_h, scale_h_pair

    if even_only and n > 2:
        raise ValueError("even points exist only for N <= 2")
    lam = Fraction(lam)
    phi = Series.one(CyclicGroup(n), "X", 0)
    direct = n <= 2 and not even_only
    target = lam if direct else 1
    for q in range(1, W + 1):
        if even_only and q % 2:
            phi = lift(phi, relations, target, even_zero=True)
        else:
            phi = lift(phi, relations, target, offset=offset)
    if direct:
        return phi
    if even_only:
        return scale_h_pair(lam, phi)
    return scale_h(lam, phi)


def connecting_element(phi: Series, phi2: Series) -> Series:
    """psi with Exp(psi) * phi = phi2 at the common truncation, built weight by weight."""
    phi._check(phi2)
    W = min(phi.truncation, phi2.truncation)
    phi, phi2 = phi.truncate(W), phi2.truncate(W)
    psi = Series.zero(phi.group, "X", W)
    for p in range(1, W + 1):
        delta = (phi2 - exp_s_psi(psi, phi)).homogeneous_component(p)
        psi = psi + delta
    return psi


def check_eq_excep(psi: Series, n: int, nu: int) -> bool:
    """(psi_*|y_{n,nu}) + (-1)^n (psi_*|y_{n,-nu}) == 0."""
    order = psi.group.order
    star = psi_star(psi).star
    a = star.coeff(((n, nu % order),))
    b = star.coeff(((n, (-nu) % order),))
    return a + (-1) ** n * b == 0
