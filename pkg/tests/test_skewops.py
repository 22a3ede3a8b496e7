"""Shift-permutation symmetries, skew operators, ladder generators."""

import random

import pytest

from ogzkit import (
    QQ,
    AffineSymmetry,
    Generators,
    NotInvariantInput,
    RationalFunction,
    Ring,
    RowPermutation,
    SkewOperator,
    agree_on_invariants,
    apply_to_invariant,
    commutator,
    invariant_family,
    is_row_symmetric,
    random_invariant,
)


def rf(p):
    return RationalFunction.from_poly(p)


def random_sym(shape, rng: random.Random) -> AffineSymmetry:
    import itertools

    rows = []
    for m in shape:
        perm = list(range(1, m + 1))
        rng.shuffle(perm)
        rows.append(tuple(perm))
    perm = RowPermutation(shape, tuple(rows))
    shifts = {}
    for i, m in enumerate(shape[:-1], start=1):
        for p in range(1, m + 1):
            shifts[(i, p)] = rng.randint(-2, 2)
    return AffineSymmetry.make(perm, shifts)


def random_poly(ring: Ring, rng: random.Random, max_degree: int = 3):
    gens = [ring.x(*c) for c in ring.cells()]
    out = ring.zero()
    for _ in range(rng.randint(1, 4)):
        term = ring.const(QQ(rng.randint(-6, 6)))
        for _ in range(rng.randint(0, max_degree)):
            term = term * gens[rng.randrange(len(gens))]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# the symmetry group


def test_symmetry_group_axioms():
    rng = random.Random(31)
    shape = (2, 2)
    e = AffineSymmetry.identity(shape)
    for _ in range(80):
        a, b, c = (random_sym(shape, rng) for _ in range(3))
        assert a.compose(a.inverse()) == e
        assert a.compose(b).compose(c) == a.compose(b.compose(c))


def test_act_poly_is_ring_homomorphism():
    rng = random.Random(32)
    ring = Ring((2, 2), 0)
    for _ in range(40):
        s = random_sym(ring.shape, rng)
        f = random_poly(ring, rng)
        g = random_poly(ring, rng)
        assert s.act_poly(f + g) == s.act_poly(f) + s.act_poly(g)
        assert s.act_poly(f * g) == s.act_poly(f) * s.act_poly(g)


def test_compose_matches_application_order():
    rng = random.Random(33)
    ring = Ring((2, 2), 0)
    for _ in range(40):
        a, b = random_sym(ring.shape, rng), random_sym(ring.shape, rng)
        f = random_poly(ring, rng)
        assert a.compose(b).act_poly(f) == a.act_poly(b.act_poly(f))


def test_shift_moves_variable():
    ring = Ring((1, 1), 0)
    s = AffineSymmetry.shift((1, 1), {(1, 1): 1})
    assert str(s.act_poly(ring.x(1, 1))) == "x[1,1]+1"
    assert s.render() == "phi[1,1]"


# ---------------------------------------------------------------------------
# skew operators: composition == composed application


def random_op(ring: Ring, rng: random.Random) -> SkewOperator:
    op = SkewOperator.zero(ring)
    for _ in range(rng.randint(1, 3)):
        coeff = rf(random_poly(ring, rng, max_degree=2))
        term = SkewOperator.multiplication(ring, coeff) @ SkewOperator.of_symmetry(
            ring, random_sym(ring.shape, rng)
        )
        op = op + term
    return op


def test_composition_matches_application():
    rng = random.Random(34)
    ring = Ring((2, 1), 0)
    for _ in range(40):
        a = random_op(ring, rng)
        b = random_op(ring, rng)
        f = rf(random_poly(ring, rng))
        assert (a @ b).apply(f) == a.apply(b.apply(f))


def test_normal_form_collects_symmetries():
    ring = Ring((1, 1), 0)
    s = AffineSymmetry.shift((1, 1), {(1, 1): 1})
    op1 = SkewOperator.of_symmetry(ring, s)
    x = rf(ring.x(1, 1))
    # phi then multiply by x equals multiply by (x+1) then phi
    left = SkewOperator.multiplication(ring, x) @ op1
    right = op1 @ SkewOperator.multiplication(ring, rf(ring.x(1, 1) - ring.one()))
    assert left.apply(rf(ring.x(1, 1))) == right.apply(rf(ring.x(1, 1)))
    assert (left - right).is_zero()


# ---------------------------------------------------------------------------
# ladder generators: frozen hand values


def test_generators_minimal_shape():
    g = Generators.for_shape((1, 1))
    assert g.raising(1).render() == "(x[1,1]-x[2,1])*phi[1,1]"
    assert g.lowering(1).render() == "(1)*phi[1,1]^-1"
    c = commutator(g.raising(1), g.lowering(1))
    assert c.is_multiplication()
    assert str(c.multiplier_value()) == "1"


def test_generators_two_one_renders():
    g = Generators.for_shape((2, 1))
    assert g.raising(1).render() == (
        "((x[1,1]-x[2,1])/(x[1,1]-x[1,2]))*phi[1,1]"
        " + ((-x[1,2]+x[2,1])/(x[1,1]-x[1,2]))*phi[1,2]"
    )
    assert g.lowering(1).render() == (
        "((1)/(x[1,1]-x[1,2]))*phi[1,1]^-1"
        " + ((-1)/(x[1,1]-x[1,2]))*phi[1,2]^-1"
    )
    assert g.multiplier(1, 2).render() == "(x[1,1]*x[1,2])*id"
    assert g.multiplier(2, 1).render() == "(x[2,1])*id"


def test_generator_applications_golden():
    g = Generators.for_shape((2, 1))
    ring = g.ring
    e1 = ring.x(1, 1) + ring.x(1, 2)
    e2 = ring.x(1, 1) * ring.x(1, 2)
    E, F = g.raising(1), g.lowering(1)
    assert str(E.apply(rf(e1))) == "x[1,1]+x[1,2]+1"
    assert str(E.apply(rf(e2))) == "x[1,1]*x[1,2]+x[2,1]"
    # the raising image of the constant is the constant itself: the two
    # simple-pole terms cancel exactly
    assert str(E.apply(rf(ring.one()))) == "1"
    assert str(F.apply(rf(e1))) == "0"
    assert str(F.apply(rf(e2))) == "1"


def test_apply_to_invariant_returns_polynomial():
    rng = random.Random(35)
    for shape in [(2, 1), (2, 2), (1, 2, 3)]:
        g = Generators.for_shape(shape)
        ring = g.ring
        for i in range(1, len(shape)):
            for _ in range(8):
                f = random_invariant(ring, rng, 4)
                up = apply_to_invariant(g.raising(i), f)
                dn = apply_to_invariant(g.lowering(i), f)
                assert is_row_symmetric(up)
                assert is_row_symmetric(dn)


def test_apply_to_invariant_rejects_non_invariant():
    g = Generators.for_shape((2, 1))
    with pytest.raises(NotInvariantInput):
        apply_to_invariant(g.raising(1), g.ring.x(1, 1))


def test_invariant_family_prefix_property():
    # the degree-D family must be a prefix of the degree-(D+1) family:
    # the window rank cache depends on it
    for shape in [(2, 1), (2, 2)]:
        ring = Ring(shape, 0)
        fam3 = invariant_family(ring, 3)
        fam4 = invariant_family(ring, 4)
        assert fam4[: len(fam3)] == fam3
        assert all(is_row_symmetric(f) for f in fam4)
        assert len({str(f) for f in fam4}) == len(fam4)


def test_agree_on_invariants():
    g = Generators.for_shape((2, 1))
    assert agree_on_invariants(g.raising(1), g.raising(1), 3)
    assert not agree_on_invariants(g.raising(1), g.lowering(1), 3)


def test_multipliers_commute():
    g = Generators.for_shape((2, 2))
    a = g.multiplier(1, 1)
    b = g.multiplier(1, 2)
    assert commutator(a, b).is_zero()


def test_commutator_with_multiplier_nonzero():
    g = Generators.for_shape((2, 1))
    c = commutator(g.raising(1), g.multiplier(1, 1))
    assert not c.is_zero()
