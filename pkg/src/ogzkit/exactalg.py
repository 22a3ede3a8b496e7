"""Exact arithmetic layer: rings of cell/parameter variables, polynomials,
and reduced rational functions.

A :class:`Ring` fixes the variable universe for a row shape: parameter
variables ``z[1..nparams]`` first, then one cell variable ``x[i,j]`` per
cell of the shape, row-major.  All polynomial values are canonical (no zero
coefficients, graded-lex term order for rendering) and all rational
functions are stored fully reduced with a monic denominator, so structural
equality is mathematical equality.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

from . import _kernel as K
from ._gcd import gcd_qq
from ._ratio import QQ, qq_str
from .errors import DivisionByZero, SingularSubstitution

VarId = tuple
Coeff = Union[int, str]


def _coerce_qq(c):
    return c if type(c) is type(QQ(0)) else QQ(c)


class Ring:
    """Variable universe for one shape: z[1..nparams], then x[i,j] row-major."""

    __slots__ = ("shape", "nparams", "vars", "index", "nvars", "_key")
    _CACHE: dict = {}

    def __new__(cls, shape: tuple, nparams: int = 0):
        shape = tuple(int(s) for s in shape)
        if not shape or any(s < 1 for s in shape):
            raise ValueError(f"shape must be positive integers, got {shape}")
        if nparams < 0:
            raise ValueError("nparams must be >= 0")
        key = (shape, nparams)
        hit = cls._CACHE.get(key)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.shape = shape
        self.nparams = nparams
        names = [("z", t) for t in range(1, nparams + 1)]
        names += [("x", i, j) for i, s in enumerate(shape, start=1) for j in range(1, s + 1)]
        self.vars = tuple(names)
        self.index = {v: n for n, v in enumerate(names)}
        self.nvars = len(names)
        self._key = key
        cls._CACHE[key] = self
        return self

    def __repr__(self):
        return f"Ring(shape={self.shape}, nparams={self.nparams})"

    @property
    def rows(self) -> int:
        return len(self.shape)

    def cells(self) -> list:
        return [(i, j) for i, s in enumerate(self.shape, start=1) for j in range(1, s + 1)]

    def row_cells(self, i: int) -> list:
        if not 1 <= i <= len(self.shape):
            raise ValueError(f"row {i} outside shape {self.shape}")
        return [(i, j) for j in range(1, self.shape[i - 1] + 1)]

    def shiftable_cells(self) -> list:
        """Cells in rows below the top row (the ones shift operators move)."""
        return [(i, j) for i, s in enumerate(self.shape[:-1], start=1) for j in range(1, s + 1)]

    def x(self, i: int, j: int) -> "Polynomial":
        return Polynomial._wrap(self, {self._unit_mono(("x", i, j)): QQ(1)})

    def z(self, t: int) -> "Polynomial":
        return Polynomial._wrap(self, {self._unit_mono(("z", t)): QQ(1)})

    def _unit_mono(self, vid: VarId) -> tuple:
        slot = self.index.get(vid)
        if slot is None:
            raise ValueError(f"unknown variable {vid} in {self!r}")
        m = [0] * self.nvars
        m[slot] = 1
        return tuple(m)

    def const(self, c) -> "Polynomial":
        c = _coerce_qq(c)
        return Polynomial._wrap(self, {(0,) * self.nvars: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial._wrap(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)


def _var_name(vid: VarId) -> str:
    if vid[0] == "z":
        return f"z[{vid[1]}]"
    return f"x[{vid[1]},{vid[2]}]"


class Polynomial:
    """Immutable sparse polynomial over QQ in a fixed :class:`Ring`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping):
        self.ring = ring
        clean = {}
        for m, c in terms.items():
            c = _coerce_qq(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, ring: Ring, terms: dict) -> "Polynomial":
        self = object.__new__(cls)
        self.ring = ring
        self.terms = terms
        self._hash = None
        return self

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.ring.nvars in self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * self.ring.nvars) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0,) * self.ring.nvars, QQ(0))

    def total_degree(self) -> int:
        return K.p_total_degree(self.terms)

    def degree_in(self, vid: VarId) -> int:
        return K.p_deg_in(self.terms, self.ring.index[vid])

    def variables(self) -> set:
        live = set()
        for m in self.terms:
            for n, e in enumerate(m):
                if e:
                    live.add(self.ring.vars[n])
        return live

    def uses_only_params(self) -> bool:
        np_ = self.ring.nparams
        return all(not any(m[np_:]) for m in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring is not other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        self._check(other)
        return Polynomial._wrap(self.ring, K.p_add(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        self._check(other)
        return Polynomial._wrap(self.ring, K.p_sub(self.terms, other.terms))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Polynomial._wrap(self.ring, K.p_neg(self.terms))

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        if isinstance(other, (int, str)) or type(other) is type(QQ(0)):
            return Polynomial._wrap(self.ring, K.p_mul_scalar(self.terms, _coerce_qq(other)))
        self._check(other)
        return Polynomial._wrap(self.ring, K.p_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RationalFunction")
        r = self.ring.one()
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def __truediv__(self, other):
        return RationalFunction.normalize(self, other)

    def __rtruediv__(self, other):
        return RationalFunction.normalize(self._coerce(other), self)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return self.ring.const(other)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int,)) or type(other) is type(QQ(0)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring._key, frozenset(self.terms.items())))
        return self._hash

    # -- substitution --------------------------------------------------------

    def shift_cells(self, offsets: Mapping) -> "Polynomial":
        """Substitute x[a] -> x[a] + n_a for integer offsets keyed by cell."""
        out = self
        for cell, n in offsets.items():
            if n:
                out = out._shift_one(self.ring.index[("x",) + tuple(cell)], int(n))
        return out

    def _shift_one(self, slot: int, n: int) -> "Polynomial":
        # binomial expansion of (x+n)^e, term by term
        acc: dict = {}
        for m, c in self.terms.items():
            e = m[slot]
            if not e:
                acc = K.p_add(acc, {m: c})
                continue
            coeff = c
            row = {}
            binom = 1
            power = 1
            for t in range(e, -1, -1):
                # term x^t * C(e, e-t) * n^(e-t)
                mm = m[:slot] + (t,) + m[slot + 1 :]
                row[mm] = coeff * binom * power
                binom = binom * t // (e - t + 1)
                power *= n
            acc = K.p_add(acc, row)
        return Polynomial._wrap(self.ring, acc)

    def permute_cells(self, mapping: Mapping) -> "Polynomial":
        """Substitute x[a] -> x[mapping(a)] for a cell bijection."""
        ring = self.ring
        slot_map = {}
        for src, dst in mapping.items():
            s = ring.index[("x",) + tuple(src)]
            d = ring.index[("x",) + tuple(dst)]
            if s != d:
                slot_map[s] = d
        if not slot_map:
            return self
        if set(slot_map) != set(slot_map.values()):
            raise ValueError("cell mapping is not a bijection on the moved cells")
        out = {}
        for m, c in self.terms.items():
            mm = list(m)
            for s, d in slot_map.items():
                mm[d] = m[s]
            out[tuple(mm)] = c
        return Polynomial._wrap(self.ring, out)

    def substitute(self, images: Mapping) -> "RationalFunction":
        """General substitution; images may be rational, so the result is a
        :class:`RationalFunction`.  Raises SingularSubstitution if a
        denominator vanishes."""
        ring = self.ring
        imgs = {}
        for vid, val in images.items():
            vid = tuple(vid)
            if vid not in ring.index:
                raise ValueError(f"unknown variable {vid}")
            imgs[ring.index[vid]] = RationalFunction.from_any(ring, val)
        out = RationalFunction.from_any(ring, 0)
        pow_cache: dict = {}
        for m, c in self.terms.items():
            factor = RationalFunction.from_poly(ring.const(c))
            for slot, e in enumerate(m):
                if not e:
                    continue
                if slot in imgs:
                    key = (slot, e)
                    pe = pow_cache.get(key)
                    if pe is None:
                        pe = imgs[slot] ** e
                        pow_cache[key] = pe
                    factor = factor * pe
                else:
                    mono = [0] * ring.nvars
                    mono[slot] = e
                    factor = factor * Polynomial._wrap(ring, {tuple(mono): QQ(1)})
            out = out + factor
        return out

    def eval_cells(self, images: Mapping) -> "Polynomial":
        """Substitute parameter-only polynomials for cell variables (the fast
        path used by functional evaluation).  ``images`` maps cells to
        Polynomials in the z-variables."""
        ring = self.ring
        slot_imgs = {ring.index[("x",) + tuple(cell)]: p.terms for cell, p in images.items()}
        pow_cache: dict = {}
        acc: dict = {}
        one = {(0,) * ring.nvars: QQ(1)}
        for m, c in self.terms.items():
            factor = dict(one)
            rest = [0] * ring.nvars
            for slot, e in enumerate(m):
                if not e:
                    continue
                img = slot_imgs.get(slot)
                if img is None:
                    rest[slot] = e
                    continue
                key = (slot, e)
                pe = pow_cache.get(key)
                if pe is None:
                    pe = one
                    for _ in range(e):
                        pe = K.p_mul(pe, img)
                    pow_cache[key] = pe
                factor = K.p_mul(factor, pe)
            if any(rest):
                factor = K.p_mul_term(factor, tuple(rest), QQ(1))
            factor = K.p_mul_scalar(factor, c)
            acc = K.p_add(acc, factor)
        return Polynomial._wrap(ring, acc)

    def divide_exact(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient; raises ArithmeticError when division leaves a
        remainder (internal misuse, not user error)."""
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("exact division by zero polynomial")
        q, r = K.p_divmod(self.terms, other.terms)
        if r:
            raise ArithmeticError("division was expected to be exact")
        return Polynomial._wrap(self.ring, q)

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Polynomial({render_poly(self)})"


def render_poly(p: Polynomial) -> str:
    """Canonical rendering: graded-lex descending, explicit * and ^,
    no whitespace.  This string is the golden-file contract."""
    if not p.terms:
        return "0"
    ring = p.ring
    bits = []
    for m in sorted(p.terms, key=K.grlex_key, reverse=True):
        c = p.terms[m]
        neg = c < 0
        mag = -c if neg else c
        factors = []
        if mag != 1 or not any(m):
            factors.append(qq_str(mag))
        for slot, e in enumerate(m):
            if e:
                name = _var_name(ring.vars[slot])
                factors.append(name if e == 1 else f"{name}^{e}")
        term = "*".join(factors)
        if not bits:
            bits.append(("-" if neg else "") + term)
        else:
            bits.append(("-" if neg else "+") + term)
    return "".join(bits)


class RationalFunction:
    """Quotient of polynomials, stored fully reduced with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial):
        # trusted internal constructor: use normalize() to build safely
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def normalize(num, den) -> "RationalFunction":
        """Canonical quotient: reduced, monic denominator."""
        if isinstance(num, RationalFunction) or isinstance(den, RationalFunction):
            n = num if isinstance(num, RationalFunction) else None
            d = den if isinstance(den, RationalFunction) else None
            ring = (n or d).num.ring
            n = n if n is not None else RationalFunction.from_any(ring, num)
            d = d if d is not None else RationalFunction.from_any(ring, den)
            return n / d
        ring = num.ring if isinstance(num, Polynomial) else den.ring
        if not isinstance(num, Polynomial):
            num = ring.const(num)
        if not isinstance(den, Polynomial):
            den = ring.const(den)
        if num.ring is not den.ring:
            raise ValueError("numerator and denominator from different rings")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return RationalFunction(ring.zero(), ring.one())
        g = gcd_qq(num.terms, den.terms, ring.nvars)
        if not (len(g) == 1 and g.get((0,) * ring.nvars) == 1):
            gp = Polynomial._wrap(ring, g)
            num = num.divide_exact(gp)
            den = den.divide_exact(gp)
        _, lc = K.p_lead(den.terms)
        if lc != 1:
            inv = QQ(1) / lc
            num = Polynomial._wrap(ring, K.p_mul_scalar(num.terms, inv))
            den = Polynomial._wrap(ring, K.p_mul_scalar(den.terms, inv))
        return RationalFunction(num, den)

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p, p.ring.one())

    @staticmethod
    def from_any(ring: Ring, val) -> "RationalFunction":
        if isinstance(val, RationalFunction):
            return val
        if isinstance(val, Polynomial):
            return RationalFunction.from_poly(val)
        if not isinstance(val, (int, str)) and type(val) is not type(QQ(0)):
            raise TypeError(f"cannot coerce {type(val).__name__} to RationalFunction")
        return RationalFunction.from_poly(ring.const(val))

    @property
    def ring(self) -> Ring:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def polynomial_part(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def __add__(self, other):
        try:
            other = RationalFunction.from_any(self.ring, other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction.normalize(self.num + other.num, self.den)
        num = self.num * other.den + other.num * self.den
        return RationalFunction.normalize(num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.from_any(self.ring, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RationalFunction.from_any(self.ring, other)
        except TypeError:
            return NotImplemented
        # cross-cancellation keeps the final reduction trivial
        a = RationalFunction.normalize(self.num, other.den)
        b = RationalFunction.normalize(other.num, self.den)
        return RationalFunction(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.from_any(self.ring, other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return self * RationalFunction.normalize(other.den, other.num)

    def __rtruediv__(self, other):
        return RationalFunction.from_any(self.ring, other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction.from_poly(self.ring.one()) / (self ** (-n))
        r = RationalFunction.from_poly(self.ring.one())
        base = self
        while n:
            if n & 1:
                r = r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int)) or type(other) is type(QQ(0)):
            other = RationalFunction.from_any(self.ring, other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def substitute(self, images: Mapping) -> "RationalFunction":
        num = self.num.substitute(images)
        den = self.den.substitute(images)
        if den.is_zero():
            raise SingularSubstitution(f"substitution sent denominator {self.den} to zero")
        return num / den

    def shift_cells(self, offsets: Mapping) -> "RationalFunction":
        return RationalFunction(self.num.shift_cells(offsets), self.den.shift_cells(offsets))

    def permute_cells(self, mapping: Mapping) -> "RationalFunction":
        num = self.num.permute_cells(mapping)
        den = self.den.permute_cells(mapping)
        # permutation can break denominator monicity (it permutes the
        # graded-lex order), so renormalize the unit
        _, lc = K.p_lead(den.terms)
        if lc != 1:
            inv = QQ(1) / lc
            num = Polynomial._wrap(num.ring, K.p_mul_scalar(num.terms, inv))
            den = Polynomial._wrap(den.ring, K.p_mul_scalar(den.terms, inv))
        return RationalFunction(num, den)

    def __str__(self):
        if self.den.is_one():
            return render_poly(self.num)
        return f"({render_poly(self.num)})/({render_poly(self.den)})"

    def __repr__(self):
        return f"RationalFunction({self})"


def is_scalar(rf: RationalFunction) -> bool:
    """True when the value involves parameter variables only."""
    return rf.num.uses_only_params() and rf.den.uses_only_params()


def elementary_symmetric(ring: Ring, row: int, d: int) -> Polynomial:
    """d-th elementary symmetric polynomial in the row's cell variables."""
    cells = ring.row_cells(row)
    if not 0 <= d <= len(cells):
        raise ValueError(f"elementary symmetric degree {d} out of range for row {row}")
    # dp over cells: e_d of first t cells
    acc = [ring.one()] + [ring.zero()] * d
    for i, j in cells:
        x = ring.x(i, j)
        for t in range(min(d, len(acc) - 1), 0, -1):
            acc[t] = acc[t] + acc[t - 1] * x
    return acc[d]


def is_row_symmetric(p: Polynomial, rows: Iterable = None) -> bool:
    """True when p is invariant under permuting cells within each given row
    (all rows by default)."""
    ring = p.ring
    rows = range(1, ring.rows + 1) if rows is None else rows
    for i in rows:
        s = ring.shape[i - 1]
        for j in range(1, s):
            swap = {(i, j): (i, j + 1), (i, j + 1): (i, j)}
            if p.permute_cells(swap) != p:
                return False
    return True
