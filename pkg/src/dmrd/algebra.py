"""Words, alphabets and truncated noncommutative series over Q.

Letters are encoded as plain Python values so that words can be tuples:

* X alphabet: ``0`` is x0 and ``k + 1`` is x_sigma for sigma = zeta_N^k.
  Integer order therefore coincides with the canonical letter order
  x0 < x_{zeta^0} < x_{zeta^1} < ...
* Y alphabet: the pair ``(n, k)`` is y_{n, zeta^k} (n >= 1).

``y_n`` without a subscript means ``(n, 0)``, and ``x1`` is the letter ``1``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple, Union

Rational = Union[int, Fraction]
Word = Tuple

X0 = 0
X1 = 1

FLAVORS = ("X", "Y")


class AlgebraError(ValueError):
    """Structural mismatch between operands (flavor, group, truncation)."""


class ParseError(ValueError):
    """Malformed series or word text."""


@dataclass(frozen=True)
class CyclicGroup:
    """The group mu_N of N-th roots of unity, as residues mod N.

    Residue k stands for exp(2 i pi k / N).
    """

    order: int

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"group order must be a positive integer, got {self.order!r}")

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def inv(self, a: int) -> int:
        return (-a) % self.order

    def residues(self) -> range:
        return range(self.order)

    def root(self, k: int) -> complex:
        return cmath.exp(2j * math.pi * k / self.order)

    def divisors(self) -> list[int]:
        return [d for d in range(1, self.order + 1) if self.order % d == 0]

    def index(self, d: int) -> int:
        """Index of mu_d in mu_N."""
        if d < 1 or self.order % d:
            raise ValueError(f"{d} does not divide {self.order}")
        return self.order // d

    def x_letters(self) -> range:
        return range(self.order + 1)

    def y_letters(self, n: int) -> list[tuple[int, int]]:
        return [(n, k) for k in range(self.order)]


def rational(value) -> Rational:
    """Normalize to ``int`` when integral, else ``Fraction``. Floats are rejected."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def parse_rational(text: str) -> Rational:
    text = text.strip()
    m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", text)
    if not m:
        raise ParseError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return num
    den = int(m.group(2))
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return _norm(Fraction(num, den))


def format_rational(c: Rational) -> str:
    c = _norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


# -- words -----------------------------------------------------------------

def is_y_word(w: Word) -> bool:
    return bool(w) and isinstance(w[0], tuple)


def weight(w: Word) -> int:
    if w and isinstance(w[0], tuple):
        return sum(n for n, _ in w)
    return len(w)


def depth(w: Word) -> int:
    return len(w)


def word_key(w: Word):
    """Canonical order: by weight, then lexicographic in letters."""
    return (weight(w), w)


def x_words(group: CyclicGroup, p: int) -> list[Word]:
    """All X-words of weight p in canonical order."""
    import itertools

    return list(itertools.product(group.x_letters(), repeat=p))


def y_words(group: CyclicGroup, p: int) -> list[Word]:
    """All Y-words of weight p in canonical order."""
    out: list[Word] = []

    def rec(prefix, left):
        if left == 0:
            out.append(tuple(prefix))
            return
        for n in range(1, left + 1):
            for k in range(group.order):
                prefix.append((n, k))
                rec(prefix, left - n)
                prefix.pop()

    rec([], p)
    out.sort()
    return out


_TOKEN = re.compile(r"x0|x\[(\d+)\]|y\[(\d+),(\d+)\]")


def parse_word(text: str, group: CyclicGroup) -> Word:
    """Parse ``x0.x[1]`` / ``y[2,0].y[1,3]``; ``1`` or ``""`` is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    letters = []
    kinds = set()
    for tok in text.split("."):
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ParseError(f"malformed letter {tok!r}")
        if tok == "x0":
            kinds.add("X")
            letters.append(X0)
        elif m.group(1) is not None:
            k = int(m.group(1))
            if k >= group.order:
                raise ParseError(f"residue {k} out of range for N={group.order}")
            kinds.add("X")
            letters.append(k + 1)
        else:
            n, k = int(m.group(2)), int(m.group(3))
            if n == 0:
                raise ParseError("y letters need n >= 1")
            if k >= group.order:
                raise ParseError(f"residue {k} out of range for N={group.order}")
            kinds.add("Y")
            letters.append((n, k))
    if len(kinds) > 1:
        raise ParseError(f"mixed X and Y letters in {text!r}")
    return tuple(letters)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    toks = []
    for a in w:
        if isinstance(a, tuple):
            toks.append(f"y[{a[0]},{a[1]}]")
        elif a == 0:
            toks.append("x0")
        else:
            toks.append(f"x[{a - 1}]")
    return ".".join(toks)


# -- series ----------------------------------------------------------------

class Series:
    """Truncated series: a sparse map from words of weight <= truncation to Q.

    Instances are immutable. Binary operations require the same flavor and
    group and truncate at the smaller of the two truncations.
    """

    __slots__ = ("group", "flavor", "truncation", "_terms")

    def __init__(self, terms: Mapping[Word, Rational] | Iterable = (), *, group: CyclicGroup,
                 flavor: str = "X", truncation: int):
        if flavor not in FLAVORS:
            raise AlgebraError(f"unknown flavor {flavor!r}")
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for w, c in items:
            w = tuple(w)
            if w and isinstance(w[0], tuple) != (flavor == "Y"):
                raise AlgebraError(f"word {format_word(w)} does not match flavor {flavor}")
            if weight(w) > truncation:
                continue
            c = rational(c)
            if c:
                clean[w] = _norm(clean.get(w, 0) + c)
                if not clean[w]:
                    del clean[w]
        self.group = group
        self.flavor = flavor
        self.truncation = truncation
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict, group, flavor, truncation) -> "Series":
        # Trusted constructor: terms already clean and truncated.
        s = object.__new__(cls)
        s.group, s.flavor, s.truncation, s._terms = group, flavor, truncation, terms
        return s

    @classmethod
    def one(cls, group, flavor="X", truncation=0) -> "Series":
        return cls._raw({(): 1}, group, flavor, truncation)

    @classmethod
    def zero(cls, group, flavor="X", truncation=0) -> "Series":
        return cls._raw({}, group, flavor, truncation)

    @classmethod
    def monomial(cls, w: Word, group, flavor="X", truncation=None, coeff: Rational = 1) -> "Series":
        w = tuple(w)
        return cls({w: coeff}, group=group, flavor=flavor,
                   truncation=weight(w) if truncation is None else truncation)

    # -- access
    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, w: Word) -> Rational:
        return self._terms.get(tuple(w), 0)

    @property
    def constant_term(self) -> Rational:
        return self._terms.get((), 0)

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def max_weight(self) -> int:
        return max((weight(w) for w in self._terms), default=0)

    def min_weight(self) -> int:
        return min((weight(w) for w in self._terms), default=0)

    def is_homogeneous(self, p: int) -> bool:
        return all(weight(w) == p for w in self._terms)

    def homogeneous_component(self, p: int) -> "Series":
        if p > self.truncation:
            raise ValueError(f"weight {p} exceeds truncation {self.truncation}")
        return self._raw({w: c for w, c in self._terms.items() if weight(w) == p},
                         self.group, self.flavor, self.truncation)

    def truncate(self, W: int) -> "Series":
        if W >= self.truncation:
            return self
        return self._raw({w: c for w, c in self._terms.items() if weight(w) <= W},
                         self.group, self.flavor, W)

    def extend(self, W: int) -> "Series":
        """Reinterpret as known up to weight W, the new coefficients being zero."""
        if W < self.truncation:
            raise ValueError("extend() cannot lower the truncation; use truncate()")
        return self._raw(self._terms, self.group, self.flavor, W)

    # -- arithmetic
    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise AlgebraError(f"expected a Series, got {type(other).__name__}")
        if other.flavor != self.flavor:
            raise AlgebraError(f"flavor mismatch: {self.flavor} vs {other.flavor}")
        if other.group != self.group:
            raise AlgebraError(f"group mismatch: N={self.group.order} vs N={other.group.order}")

    def _linear(self, other: "Series", sign: int) -> "Series":
        self._check(other)
        W = min(self.truncation, other.truncation)
        out = {w: c for w, c in self._terms.items() if W >= self.truncation or weight(w) <= W}
        for w, c in other._terms.items():
            if W < other.truncation and weight(w) > W:
                continue
            v = out.get(w, 0) + sign * c
            if v:
                out[w] = _norm(v)
            else:
                out.pop(w, None)
        return self._raw(out, self.group, self.flavor, W)

    def __add__(self, other):
        return self._linear(other, 1)

    def __sub__(self, other):
        return self._linear(other, -1)

    def __neg__(self):
        return self._raw({w: -c for w, c in self._terms.items()}, self.group, self.flavor,
                         self.truncation)

    def scale(self, c: Rational) -> "Series":
        c = rational(c)
        if not c:
            return self._raw({}, self.group, self.flavor, self.truncation)
        return self._raw({w: _norm(c * v) for w, v in self._terms.items()}, self.group,
                         self.flavor, self.truncation)

    def __mul__(self, other):
        if isinstance(other, Series):
            return concat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if other.flavor != self.flavor or other.group != self.group:
            return False
        W = min(self.truncation, other.truncation)
        return self.truncate(W)._terms == other.truncate(W)._terms

    __hash__ = None

    def map_words(self, fn, *, group=None, flavor=None) -> "Series":
        """Linear extension of a word map ``fn(w) -> (word or None, factor)``."""
        out: dict = {}
        for w, c in self._terms.items():
            img = fn(w)
            if img is None:
                continue
            v, f = img
            val = out.get(v, 0) + f * c
            if val:
                out[v] = _norm(val)
            else:
                out.pop(v, None)
        return self._raw(out, group or self.group, flavor or self.flavor, self.truncation)

    def __repr__(self):
        body = " + ".join(f"{format_rational(c)}*{format_word(w)}" for w, c in self.sorted_items()[:8])
        more = " + ..." if len(self._terms) > 8 else ""
        return f"Series[{self.flavor}, N={self.group.order}, W={self.truncation}]({body or '0'}{more})"


def concat_mul(a: Series, b: Series) -> Series:
    """Concatenation product, truncated at min(W_a, W_b)."""
    a._check(b)
    W = min(a.truncation, b.truncation)
    by_weight: dict[int, list] = {}
    for v, c in b._terms.items():
        by_weight.setdefault(weight(v), []).append((v, c))
    out: dict = {}
    for u, cu in a._terms.items():
        wu = weight(u)
        for wv, items in by_weight.items():
            if wu + wv > W:
                continue
            for v, cv in items:
                k = u + v
                out[k] = out.get(k, 0) + cu * cv
    out = {w: _norm(c) for w, c in out.items() if c}
    return Series._raw(out, a.group, a.flavor, W)


def coeff(s: Series, w: Word) -> Rational:
    return s.coeff(w)


def homogeneous_component(s: Series, p: int) -> Series:
    return s.homogeneous_component(p)


def power(s: Series, k: int) -> Series:
    out = Series.one(s.group, s.flavor, s.truncation)
    for _ in range(k):
        out = concat_mul(out, s)
    return out


# -- tensors ---------------------------------------------------------------

class TensorSeries:
    """Sparse map (Word, Word) -> Q, truncated on total weight."""

    __slots__ = ("group", "flavor", "truncation", "_terms")

    def __init__(self, terms: Mapping, *, group, flavor="X", truncation: int):
        clean = {}
        for (u, v), c in terms.items():
            if weight(u) + weight(v) > truncation:
                continue
            c = rational(c)
            if c:
                clean[(tuple(u), tuple(v))] = c
        self.group, self.flavor, self.truncation, self._terms = group, flavor, truncation, clean

    @classmethod
    def _raw(cls, terms, group, flavor, truncation):
        t = object.__new__(cls)
        t.group, t.flavor, t.truncation, t._terms = group, flavor, truncation, terms
        return t

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def coeff(self, u: Word, v: Word) -> Rational:
        return self._terms.get((tuple(u), tuple(v)), 0)

    def truncate(self, W: int) -> "TensorSeries":
        if W >= self.truncation:
            return self
        return self._raw({k: c for k, c in self._terms.items()
                          if weight(k[0]) + weight(k[1]) <= W}, self.group, self.flavor, W)

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        if other.flavor != self.flavor or other.group != self.group:
            return False
        W = min(self.truncation, other.truncation)
        return self.truncate(W)._terms == other.truncate(W)._terms

    __hash__ = None

    def __add__(self, other: "TensorSeries") -> "TensorSeries":
        W = min(self.truncation, other.truncation)
        out = dict(self.truncate(W)._terms)
        for k, c in other.truncate(W)._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return self._raw(out, self.group, self.flavor, W)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TensorSeries":
        return self._raw({k: _norm(c * v) for k, v in self._terms.items() if c}, self.group,
                         self.flavor, self.truncation)

    def __repr__(self):
        return f"TensorSeries[{self.flavor}, N={self.group.order}, W={self.truncation}]({len(self)} terms)"


def tensor(a: Series, b: Series) -> TensorSeries:
    """a (x) b truncated on total weight."""
    a._check(b)
    W = min(a.truncation, b.truncation)
    out = {}
    for u, cu in a._terms.items():
        wu = weight(u)
        for v, cv in b._terms.items():
            if wu + weight(v) <= W:
                out[(u, v)] = _norm(cu * cv)
    return TensorSeries._raw(out, a.group, a.flavor, W)


# -- text format -----------------------------------------------------------

def format_series(s: Series, header: bool = True) -> str:
    """One ``<rational>\\t<word>`` line per term, canonical order."""
    lines = []
    if header:
        lines.append(f"# group={s.group.order} flavor={s.flavor} truncation={s.truncation}")
    for w, c in s.sorted_items():
        lines.append(f"{format_rational(c)}\t{format_word(w)}")
    return "\n".join(lines) + "\n"


def parse_series(text: str, group: CyclicGroup | None = None, truncation: int | None = None,
                 flavor: str | None = None) -> Series:
    """Inverse of :func:`format_series`.

    A ``# group=.. flavor=.. truncation=..`` header supplies defaults; explicit
    arguments must agree with it. Without any truncation information the
    maximal weight present is used.
    """
    meta = {}
    terms = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            for key, val in re.findall(r"(\w+)=(\S+)", line):
                meta[key] = val
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<rational>\\t<word>'")
        terms.append((lineno, parts[0], parts[1]))
    if "group" in meta:
        hg = CyclicGroup(int(meta["group"]))
        if group is not None and group != hg:
            raise ParseError(f"group N={group.order} conflicts with header N={hg.order}")
        group = hg
    if group is None:
        raise ParseError("group order unknown: no header and no group given")
    if "flavor" in meta:
        if flavor is not None and flavor != meta["flavor"]:
            raise ParseError("flavor conflicts with header")
        flavor = meta["flavor"]
    if "truncation" in meta:
        ht = int(meta["truncation"])
        truncation = ht if truncation is None else truncation
    out: dict = {}
    kinds = set()
    for lineno, ctext, wtext in terms:
        try:
            c = parse_rational(ctext)
            w = parse_word(wtext, group)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if w:
            kinds.add("Y" if is_y_word(w) else "X")
        out[w] = out.get(w, 0) + c
    if flavor is None:
        flavor = kinds.pop() if len(kinds) == 1 else "X"
    if kinds - {flavor}:
        raise ParseError(f"words do not match flavor {flavor}")
    if truncation is None:
        truncation = max((weight(w) for w in out), default=0)
    if any(weight(w) > truncation for w in out):
        raise ParseError("term above the declared truncation")
    return Series(out, group=group, flavor=flavor, truncation=truncation)
