"""Divided-difference operators and their nil relations.

For two distinct cells a, b in one row below the top, the divided
difference is ``diff_{a,b} = (id - t_{a,b}) / (x_a - x_b)`` as a skew
operator.  Words of adjacent-pair differences compose by the nil rule: the
product over a non-reduced word vanishes.

Two representations are provided:

* plain :class:`~ogzkit.skewops.SkewOperator` normal forms (rational
  coefficients on permutation symmetries), convenient for identity checks;
* :class:`NilHecke` elements — left polynomial/rational coefficients on the
  divided-difference basis ``sum_w f_w * diff_w`` — which stay evaluable at
  points where individual skew terms would blow up.  This basis is what the
  windowed module action uses.

The ladder generators have an alternative form built from a composition of
one row: a sum over blocks of (chain of divided differences) composed with
(block coefficient) and a unit shift of the block's first cell.  On
row-symmetric inputs it agrees with the classical form.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .combinat import RowPermutation, canonical_word, check_shape, word_to_perm
from .errors import InvalidComposition, InvalidPair
from .exactalg import Polynomial, RationalFunction, Ring
from .skewops import AffineSymmetry, SkewOperator


def _pair_cells(ring: Ring, a, b):
    a, b = tuple(a), tuple(b)
    k = len(ring.shape)
    if a == b:
        raise InvalidPair(f"cells must be distinct, got {a} twice")
    if a[0] != b[0]:
        raise InvalidPair(f"cells {a}, {b} are not in the same row")
    i = a[0]
    if not 1 <= i <= k - 1:
        raise InvalidPair(f"row {i} cells are not shiftable (top row or out of range)")
    s = ring.shape[i - 1]
    if not (1 <= a[1] <= s and 1 <= b[1] <= s):
        raise InvalidPair(f"cells {a}, {b} outside row {i} of size {s}")
    return a, b


def partial(ring: Ring, a, b) -> SkewOperator:
    """Divided difference for any distinct same-row pair (antisymmetric in
    the pair)."""
    a, b = _pair_cells(ring, a, b)
    denom = ring.x(*a) - ring.x(*b)
    t = RowPermutation.transposition(ring.shape, a[0], a[1], b[1])
    inv = RationalFunction.normalize(ring.one(), denom)
    return SkewOperator(
        ring,
        {
            AffineSymmetry.identity(ring.shape): inv,
            AffineSymmetry.from_perm(t): -inv,
        },
    )


def partial_simple(ring: Ring, i: int, p: int) -> SkewOperator:
    return partial(ring, (i, p), (i, p + 1))


def partial_word(ring: Ring, word: Iterable) -> SkewOperator:
    """Composition of adjacent divided differences; the leftmost letter is
    applied last.  Non-reduced words give the zero operator."""
    op = SkewOperator.identity(ring)
    for i, p in word:
        op = op @ partial_simple(ring, i, p)
    return op


def partial_for_perm(ring: Ring, perm: RowPermutation) -> SkewOperator:
    return partial_word(ring, canonical_word(perm))


def partial_apply_rf(ring: Ring, a, b, g: RationalFunction) -> RationalFunction:
    """Divided difference of a rational function: (g - g^t)/(x_a - x_b)."""
    a, b = _pair_cells(ring, a, b)
    swap = {a: b, b: a}
    diff = g - g.permute_cells(swap)
    return diff / RationalFunction.from_poly(ring.x(*a) - ring.x(*b))


def apply_word(ring: Ring, word: Iterable, f: Polynomial) -> Polynomial:
    """Apply a word of adjacent divided differences to a polynomial, rightmost
    letter first, via exact division (no rational intermediates)."""
    out = f
    for i, p in reversed(list(word)):
        a, b = (i, p), (i, p + 1)
        _pair_cells(ring, a, b)
        swapped = out.permute_cells({a: b, b: a})
        out = (out - swapped).divide_exact(ring.x(*a) - ring.x(*b))
    return out


def leibniz_parts(ring: Ring, a, b, f, gamma: AffineSymmetry):
    """Both sides of the coefficient-passing rule
    diff∘(f·gamma) = diff(f)·gamma + f^t·(diff∘gamma), returned as
    (lhs, rhs) skew operators for comparison."""
    a, b = _pair_cells(ring, a, b)
    f = RationalFunction.from_any(ring, f)
    d = partial(ring, a, b)
    gam = SkewOperator.of_symmetry(ring, gamma)
    lhs = d @ (f * gam)
    swap = {a: b, b: a}
    rhs = partial_apply_rf(ring, a, b, f) * gam + f.permute_cells(swap) * (d @ gam)
    return lhs, rhs


def _block_bounds(shape_row: int, mu) -> list:
    mu = tuple(int(m) for m in mu)
    if any(m < 1 for m in mu) or sum(mu) != shape_row:
        raise InvalidComposition(f"{mu} is not a composition of {shape_row}")
    out = []
    start = 1
    for m in mu:
        out.append((start, start + m - 1))
        start += m
    return out


def chain_word(i: int, start: int, end: int) -> tuple:
    """Word for the block chain: adjacent differences at positions
    end-1, ..., start (rightmost letter = start, acting first)."""
    return tuple((i, p) for p in range(end - 1, start - 1, -1))


def generators_ddiff_form(ring: Ring, i: int, mu, up: bool) -> SkewOperator:
    """Ladder operator in divided-difference form for a row composition.

    For each block of ``mu`` (positions [start..end] of row i): compose the
    block chain of divided differences with multiplication by the block
    coefficient (differences of the block-head cell against the adjacent
    row over differences against out-of-block row cells) and a unit shift
    of the block head.  Agrees with the classical ladder operator on
    row-symmetric inputs, for every composition ``mu``.
    """
    k = len(ring.shape)
    if not 1 <= i <= k - 1:
        raise ValueError(f"ladder row {i} must satisfy 1 <= i <= {k - 1}")
    blocks = _block_bounds(ring.shape[i - 1], mu)
    other_row = i + 1 if up else i - 1
    total = SkewOperator.zero(ring)
    for start, end in blocks:
        head = ring.x(i, start)
        num = ring.one()
        if other_row >= 1:
            for a in ring.row_cells(other_row):
                num = num * (head - ring.x(*a))
        den = ring.one()
        for b in ring.row_cells(i):
            if not (start <= b[1] <= end):
                den = den * (head - ring.x(*b))
        coeff = RationalFunction.normalize(num, den)
        shift = SkewOperator.of_symmetry(
            ring, AffineSymmetry.shift(ring.shape, {(i, start): 1 if up else -1})
        )
        term = partial_word(ring, chain_word(i, start, end)) @ (coeff * shift)
        total = total + term
    return total


class NilHecke:
    """Sum of left coefficients on divided-difference basis elements,
    ``sum_w f_w * diff_w`` over row permutations w.

    Closed under the algebra operations via the coefficient-passing rule;
    crucially, products of polynomial-coefficient elements keep polynomial
    coefficients, so the result can be evaluated at points where the
    individual permutation-basis terms of the same operator have poles.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping):
        self.ring = ring
        clean = {}
        for w, c in terms.items():
            c = RationalFunction.from_any(ring, c)
            if not c.is_zero():
                clean[w] = c
        self.terms = clean

    @staticmethod
    def zero(ring: Ring) -> "NilHecke":
        return NilHecke(ring, {})

    @staticmethod
    def one(ring: Ring) -> "NilHecke":
        return NilHecke(ring, {RowPermutation.identity(ring.shape): 1})

    @staticmethod
    def generator(ring: Ring, i: int, p: int) -> "NilHecke":
        _pair_cells(ring, (i, p), (i, p + 1))
        return NilHecke(ring, {RowPermutation.simple(ring.shape, i, p): 1})

    @staticmethod
    def from_word(ring: Ring, word: Iterable) -> "NilHecke":
        out = NilHecke.one(ring)
        for i, p in word:
            out = out.mul_right_gen(i, p)
            if not out.terms:
                break
        return out

    def __add__(self, other: "NilHecke") -> "NilHecke":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NilHecke(self.ring, out)

    def __neg__(self) -> "NilHecke":
        return NilHecke(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NilHecke") -> "NilHecke":
        return self + (-other)

    def mul_left_fun(self, f) -> "NilHecke":
        f = RationalFunction.from_any(self.ring, f)
        return NilHecke(self.ring, {w: f * c for w, c in self.terms.items()})

    def mul_right_gen(self, i: int, p: int) -> "NilHecke":
        """Right multiplication by one divided-difference generator; products
        that would shorten the word vanish (nil rule)."""
        s = RowPermutation.simple(self.ring.shape, i, p)
        out: dict = {}
        for w, c in self.terms.items():
            ws = w * s
            if ws.length() == w.length() + 1:
                prev = out.get(ws)
                out[ws] = c if prev is None else prev + c
        return NilHecke(self.ring, out)

    def _word_times_fun(self, word: tuple, g: RationalFunction) -> dict:
        """Expansion of diff_word ∘ g as {perm: coeff} via the
        coefficient-passing rule, peeled from the rightmost letter."""
        if not word:
            return {RowPermutation.identity(self.ring.shape): g}
        head, last = word[:-1], word[-1]
        i, p = last
        a, b = (i, p), (i, p + 1)
        dg = partial_apply_rf(self.ring, a, b, g)
        out: dict = {}
        if not dg.is_zero():
            for w, c in self._word_times_fun(head, dg).items():
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        gs = g.permute_cells({a: b, b: a})
        if not gs.is_zero():
            sperm = RowPermutation.simple(self.ring.shape, i, p)
            for w, c in self._word_times_fun(head, gs).items():
                ws = w * sperm
                if ws.length() != w.length() + 1:
                    continue
                s = out.get(ws)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(ws, None)
                else:
                    out[ws] = s
        return out

    def mul_right_fun(self, g) -> "NilHecke":
        """Right multiplication by a function, moved to the left through
        every divided-difference word."""
        g = RationalFunction.from_any(self.ring, g)
        if g.is_zero():
            return NilHecke.zero(self.ring)
        out = NilHecke.zero(self.ring)
        for w, f in self.terms.items():
            expanded = self._word_times_fun(canonical_word(w), g)
            out = out + NilHecke(
                self.ring, {v: f * c for v, c in expanded.items()}
            )
        return out

    def mul(self, other: "NilHecke") -> "NilHecke":
        out = NilHecke.zero(self.ring)
        for u, g in other.terms.items():
            part = self.mul_right_fun(g)
            merged: dict = {}
            ulen = u.length()
            for v, c in part.terms.items():
                vu = v * u
                if vu.length() != v.length() + ulen:
                    continue
                s = merged.get(vu)
                s = c if s is None else s + c
                if s.is_zero():
                    merged.pop(vu, None)
                else:
                    merged[vu] = s
            out = out + NilHecke(self.ring, merged)
        return out

    _PAIR_CACHE: dict = {}

    @classmethod
    def pair_expand(cls, ring: Ring, i: int, p: int, q: int) -> "NilHecke":
        """The general-pair divided difference diff_{(i,p),(i,q)} (p < q)
        expanded over the adjacent-pair basis with polynomial coefficients,
        via diff_{(p,q)} = S ∘ diff_{(p,q-1)} ∘ S with
        S = id - (x_{q-1}-x_q)*diff_{q-1}."""
        if not p < q:
            raise InvalidPair(f"pair_expand needs p < q, got {p}, {q}")
        key = (ring._key, i, p, q)
        hit = cls._PAIR_CACHE.get(key)
        if hit is not None:
            return hit
        if q == p + 1:
            out = cls.generator(ring, i, p)
        else:
            lin = ring.x(i, q - 1) - ring.x(i, q)
            s_mid = cls.generator(ring, i, q - 1)
            S = cls.one(ring) - s_mid.mul_left_fun(lin)
            inner = cls.pair_expand(ring, i, p, q - 1)
            out = S.mul(inner).mul(S)
        cls._PAIR_CACHE[key] = out
        return out

    def conjugated(self, tau: RowPermutation) -> "NilHecke":
        """tau ∘ self ∘ tau^{-1}: coefficients transported by tau, each word
        letter replaced by the transported (possibly non-adjacent, possibly
        reversed) pair expansion."""
        out = NilHecke.zero(self.ring)
        cmap = tau.cell_map()
        for w, f in self.terms.items():
            factor = NilHecke.one(self.ring)
            sign = 1
            for i, p in canonical_word(w):
                qa = tau((i, p))[1]
                qb = tau((i, p + 1))[1]
                if qa < qb:
                    piece = NilHecke.pair_expand(self.ring, i, qa, qb)
                else:
                    piece = NilHecke.pair_expand(self.ring, i, qb, qa)
                    sign = -sign
                factor = factor.mul(piece)
                if not factor.terms:
                    break
            coeff = f.permute_cells(cmap)
            if sign < 0:
                coeff = -coeff
            out = out + factor.mul_left_fun(coeff)
        return out

    def to_skew(self) -> SkewOperator:
        """Expand into the permutation-symmetry normal form (for checks on
        generic ground; this direction can introduce the poles that the
        divided-difference basis avoids)."""
        out = SkewOperator.zero(self.ring)
        for w, f in self.terms.items():
            out = out + f * partial_for_perm(self.ring, w)
        return out

    def __eq__(self, other):
        if not isinstance(other, NilHecke):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring._key, frozenset(self.terms.items())))

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=RowPermutation.sort_key):
            bits.append(f"({self.terms[w]})*d[{w.render()}]")
        return " + ".join(bits)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NilHecke({self})"
