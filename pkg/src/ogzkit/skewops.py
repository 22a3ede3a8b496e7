"""Skew operators: rational-coefficient combinations of affine symmetries.

An :class:`AffineSymmetry` acts on the function field by ``x_a ->
x_{perm(a)} + shift_{perm(a)}`` (permutations within rows, integer shifts on
cells below the top row).  A :class:`SkewOperator` is a finite sum ``sum_t
coeff_t * sym_t`` with the coefficient acting as a left multiplier:
``(f*pi)(g) = f * pi(g)``.  Composition follows ``(f*pi)(g*rho) =
(f*pi(g)) * (pi rho)``, which keeps every operator in this normal form; two
operators are equal exactly when their normal forms match.

The distinguished generators of the operator algebra live here too: the
raising/lowering operators built from cell-difference coefficients and unit
shifts, and multiplication by row elementary symmetric polynomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Union

from .combinat import RowPermutation, check_shape
from .errors import NotInvariantInput
from .exactalg import (
    Polynomial,
    RationalFunction,
    Ring,
    elementary_symmetric,
    is_row_symmetric,
)

Value = Union[Polynomial, RationalFunction, int]


@dataclass(frozen=True)
class AffineSymmetry:
    """A row permutation followed by integer shifts of movable cells."""

    perm: RowPermutation
    shifts: tuple  # sorted tuple of ((i, j), n) with n != 0, row i below top

    @staticmethod
    def make(perm: RowPermutation, shifts: Mapping = ()) -> "AffineSymmetry":
        shape = perm.shape
        clean = []
        for cell, n in dict(shifts).items():
            cell = tuple(cell)
            n = int(n)
            if n == 0:
                continue
            i, j = cell
            if not (1 <= i < len(shape) and 1 <= j <= shape[i - 1]):
                raise ValueError(f"cell {cell} is not shiftable in shape {shape}")
            clean.append((cell, n))
        return AffineSymmetry(perm, tuple(sorted(clean)))

    @staticmethod
    def identity(shape) -> "AffineSymmetry":
        return AffineSymmetry(RowPermutation.identity(check_shape(shape)), ())

    @staticmethod
    def shift(shape, offsets: Mapping) -> "AffineSymmetry":
        return AffineSymmetry.make(RowPermutation.identity(check_shape(shape)), offsets)

    @staticmethod
    def from_perm(perm: RowPermutation) -> "AffineSymmetry":
        return AffineSymmetry(perm, ())

    @property
    def shape(self) -> tuple:
        return self.perm.shape

    def shift_map(self) -> dict:
        return dict(self.shifts)

    def is_identity(self) -> bool:
        return self.perm.is_identity() and not self.shifts

    def compose(self, other: "AffineSymmetry") -> "AffineSymmetry":
        """self∘other: apply ``other`` first.

        (s1, n1)∘(s2, n2) = (s1 s2, n1 + s1(n2)) with s1(n2)[s1(a)] = n2[a].
        """
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        merged = dict(self.shifts)
        for cell, n in other.shifts:
            tgt = self.perm(cell)
            m = merged.get(tgt, 0) + n
            if m:
                merged[tgt] = m
            elif tgt in merged:
                del merged[tgt]
        return AffineSymmetry(self.perm * other.perm, tuple(sorted(merged.items())))

    def inverse(self) -> "AffineSymmetry":
        pinv = self.perm.inverse()
        inv_shifts = {}
        for cell, n in self.shifts:
            inv_shifts[pinv(cell)] = -n
        return AffineSymmetry(pinv, tuple(sorted(inv_shifts.items())))

    def act_poly(self, p: Polynomial) -> Polynomial:
        """x_a -> x_{perm(a)} + shift_{perm(a)} on a polynomial."""
        if p.ring.shape != self.shape:
            raise ValueError("ring shape mismatch")
        out = p if self.perm.is_identity() else p.permute_cells(self.perm.cell_map())
        if self.shifts:
            out = out.shift_cells(dict(self.shifts))
        return out

    def act(self, f: Value) -> RationalFunction:
        if isinstance(f, Polynomial):
            return RationalFunction.from_poly(self.act_poly(f))
        if not isinstance(f, RationalFunction):
            raise TypeError(f"cannot act on {type(f).__name__}")
        out = f if self.perm.is_identity() else f.permute_cells(self.perm.cell_map())
        if self.shifts:
            out = out.shift_cells(dict(self.shifts))
        return out

    def sort_key(self) -> tuple:
        return (self.perm.sort_key(), self.shifts)

    def render(self) -> str:
        parts = []
        if not self.perm.is_identity():
            parts.append(self.perm.render())
        for (i, j), n in self.shifts:
            parts.append(f"phi[{i},{j}]" + (f"^{n}" if n != 1 else ""))
        return "*".join(parts) if parts else "id"

    def __str__(self):
        return self.render()


class SkewOperator:
    """Normal-form sum of (rational coefficient) x (affine symmetry) terms."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping):
        self.ring = ring
        clean = {}
        for sym, coeff in terms.items():
            coeff = RationalFunction.from_any(ring, coeff)
            if not coeff.is_zero():
                if sym.shape != ring.shape:
                    raise ValueError("symmetry shape mismatch")
                clean[sym] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(ring: Ring) -> "SkewOperator":
        return SkewOperator(ring, {})

    @staticmethod
    def identity(ring: Ring) -> "SkewOperator":
        return SkewOperator(ring, {AffineSymmetry.identity(ring.shape): 1})

    @staticmethod
    def multiplication(ring: Ring, f: Value) -> "SkewOperator":
        return SkewOperator(ring, {AffineSymmetry.identity(ring.shape): f})

    @staticmethod
    def of_symmetry(ring: Ring, sym: AffineSymmetry) -> "SkewOperator":
        return SkewOperator(ring, {sym: 1})

    # -- algebra --------------------------------------------------------------

    def __add__(self, other: "SkewOperator") -> "SkewOperator":
        if self.ring is not other.ring:
            raise ValueError("ring mismatch")
        out = dict(self.terms)
        for sym, c in other.terms.items():
            s = out.get(sym)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(sym, None)
            else:
                out[sym] = s
        return SkewOperator(self.ring, out)

    def __neg__(self) -> "SkewOperator":
        return SkewOperator(self.ring, {sym: -c for sym, c in self.terms.items()})

    def __sub__(self, other: "SkewOperator") -> "SkewOperator":
        return self + (-other)

    def __mul__(self, f) -> "SkewOperator":
        """Left multiplication by a function: f*(g*pi) = (f g)*pi — and the
        same on the right since coefficients multiply commutatively."""
        f = RationalFunction.from_any(self.ring, f)
        return SkewOperator(self.ring, {sym: f * c for sym, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "SkewOperator") -> "SkewOperator":
        """Operator composition (self applied after other)."""
        if self.ring is not other.ring:
            raise ValueError("ring mismatch")
        out: dict = {}
        for pi, f in self.terms.items():
            for rho, g in other.terms.items():
                sym = pi.compose(rho)
                c = f * pi.act(g)
                s = out.get(sym)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(sym, None)
                else:
                    out[sym] = s
        return SkewOperator(self.ring, out)

    def apply(self, f: Value) -> RationalFunction:
        out = RationalFunction.from_any(self.ring, 0)
        for sym, c in self.terms.items():
            out = out + c * sym.act(RationalFunction.from_any(self.ring, f))
        return out

    def __eq__(self, other):
        if not isinstance(other, SkewOperator):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring._key, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_multiplication(self) -> bool:
        """True when the operator is multiplication by a single function."""
        if not self.terms:
            return True
        if len(self.terms) != 1:
            return False
        (sym,) = self.terms
        return sym.is_identity()

    def multiplier_value(self) -> RationalFunction:
        if not self.is_multiplication():
            raise ValueError("operator is not a pure multiplication")
        if not self.terms:
            return RationalFunction.from_any(self.ring, 0)
        return next(iter(self.terms.values()))

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for sym in sorted(self.terms, key=AffineSymmetry.sort_key):
            bits.append(f"({self.terms[sym]})*{sym.render()}")
        return " + ".join(bits)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"SkewOperator({self})"


def commutator(a: SkewOperator, b: SkewOperator) -> SkewOperator:
    return (a @ b) - (b @ a)


class Generators:
    """The distinguished operator family for one shape.

    ``raising(i)`` / ``lowering(i)`` move cells of row i up/down by one with
    the cell-difference rational coefficients; ``multiplier(i, d)`` is
    multiplication by the d-th elementary symmetric polynomial of row i;
    ``shift_op(cell, n)`` is a bare shift symmetry.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        self._cache: dict = {}

    @staticmethod
    def for_shape(shape, nparams: int = 0) -> "Generators":
        return Generators(Ring(check_shape(shape), nparams))

    def _row_guard(self, i: int):
        k = len(self.ring.shape)
        if not 1 <= i <= k - 1:
            raise ValueError(f"ladder row {i} must satisfy 1 <= i <= {k - 1}")

    def raising(self, i: int) -> SkewOperator:
        key = ("raising", i)
        if key not in self._cache:
            self._cache[key] = self._ladder(i, up=True)
        return self._cache[key]

    def lowering(self, i: int) -> SkewOperator:
        key = ("lowering", i)
        if key not in self._cache:
            self._cache[key] = self._ladder(i, up=False)
        return self._cache[key]

    def _ladder(self, i: int, up: bool) -> SkewOperator:
        self._row_guard(i)
        ring = self.ring
        other_row = i + 1 if up else i - 1
        terms = {}
        for i_, j in ring.row_cells(i):
            xj = ring.x(i_, j)
            num = ring.one()
            if other_row >= 1:
                for a in ring.row_cells(other_row):
                    num = num * (xj - ring.x(*a))
            den = ring.one()
            for b in ring.row_cells(i):
                if b != (i_, j):
                    den = den * (xj - ring.x(*b))
            sym = AffineSymmetry.shift(ring.shape, {(i_, j): 1 if up else -1})
            terms[sym] = RationalFunction.normalize(num, den)
        return SkewOperator(ring, terms)

    def multiplier(self, i: int, d: int) -> SkewOperator:
        key = ("multiplier", i, d)
        if key not in self._cache:
            if not 1 <= i <= len(self.ring.shape):
                raise ValueError(f"row {i} outside shape {self.ring.shape}")
            if not 1 <= d <= self.ring.shape[i - 1]:
                raise ValueError(f"multiplier degree {d} outside row {i}")
            self._cache[key] = SkewOperator.multiplication(
                self.ring, elementary_symmetric(self.ring, i, d)
            )
        return self._cache[key]

    def shift_op(self, cell, n: int = 1) -> SkewOperator:
        sym = AffineSymmetry.shift(self.ring.shape, {tuple(cell): n})
        return SkewOperator.of_symmetry(self.ring, sym)

    def all_named(self) -> list:
        """Deterministic (token, operator) list of the full generator family."""
        out = []
        k = len(self.ring.shape)
        for i in range(1, k):
            out.append((f"E{i}", self.raising(i)))
        for i in range(1, k):
            out.append((f"F{i}", self.lowering(i)))
        for i in range(1, k + 1):
            for d in range(1, self.ring.shape[i - 1] + 1):
                out.append((f"gamma[{i},{d}]", self.multiplier(i, d)))
        return out


def invariant_family(ring: Ring, max_degree: int) -> list:
    """All products of row elementary symmetric polynomials with total degree
    at most ``max_degree``, in a deterministic order.  These span the
    invariants up to that degree."""
    gens = []
    for i in range(1, ring.rows + 1):
        for d in range(1, ring.shape[i - 1] + 1):
            gens.append(((i, d), d))
    combos: list = []

    def rec(idx, remaining, current):
        combos.append(tuple(current))
        for t in range(idx, len(gens)):
            (_, deg) = gens[t]
            if deg <= remaining:
                current.append(t)
                rec(t, remaining - deg, current)
                current.pop()

    rec(0, max_degree, [])
    combos.sort(key=lambda c: (sum(gens[t][1] for t in c), c))
    cache: dict = {}
    out = []
    for combo in combos:
        p = ring.one()
        for t in combo:
            (i, d), _ = gens[t]
            ed = cache.get((i, d))
            if ed is None:
                ed = elementary_symmetric(ring, i, d)
                cache[(i, d)] = ed
            p = p * ed
        out.append(p)
    return out


def random_invariant(ring: Ring, rng, max_degree: int, nterms: int = 4) -> Polynomial:
    """Random rational combination of invariant family members."""
    fam = invariant_family(ring, max_degree)
    p = ring.zero()
    for _ in range(nterms):
        c = rng.randint(-9, 9)
        if c == 0:
            c = 1
        p = p + c * fam[rng.randrange(len(fam))]
    return p


def apply_to_invariant(op: SkewOperator, f: Polynomial) -> Polynomial:
    """Apply an invariants-preserving operator to an invariant polynomial and
    return the (checked) polynomial image."""
    if not is_row_symmetric(f):
        raise NotInvariantInput(f"input is not symmetric within rows: {f}")
    image = op.apply(f)
    if not image.is_polynomial():
        raise NotInvariantInput(f"image of an invariant failed to be polynomial: {image}")
    return image.polynomial_part()


def agree_on_invariants(a: SkewOperator, b: SkewOperator, max_degree: int) -> bool:
    """Weak (restriction-to-invariants) operator equality: equal images on the
    whole invariant family up to ``max_degree``.  Normal-form equality
    (``a == b``) is the strong check; this one is what matters on the
    invariant subring."""
    if a.ring is not b.ring:
        raise ValueError("ring mismatch")
    for f in invariant_family(a.ring, max_degree):
        if a.apply(f) != b.apply(f):
            return False
    return True
