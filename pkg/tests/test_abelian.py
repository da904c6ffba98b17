"""Exact-arithmetic tests for the finitely presented module layer.

The Smith form is validated against a brute-force lattice membership check,
and module arithmetic is compared with direct generator-coordinate
arithmetic on enumerated carriers.
"""

import random

import pytest

from deltakit.abelian import (
    BilinearMap,
    FpModule,
    ModuleMap,
    SmithForm,
    echelon_rows,
    module_iso,
    same_invariants,
    solve_integer_system,
    xgcd,
)
from deltakit.errors import BudgetExceeded, CompatibilityError


def lattice_contains(rows, ncols, vector):
    """Brute lattice membership via integer row reduction."""
    basis = echelon_rows(rows, ncols)
    v = list(vector)
    for row in basis:
        pivot = next((c for c, x in enumerate(row) if x), None)
        if pivot is None:
            continue
        if v[pivot] % row[pivot] == 0:
            q = v[pivot] // row[pivot]
            v = [x - q * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


# ---------------------------------------------------------------------------
# Smith normal form


def test_xgcd_identity():
    for a in range(-12, 13):
        for b in range(-12, 13):
            g, x, y = xgcd(a, b)
            assert g == a * x + b * y
            assert g >= 0
            if a or b:
                assert a % g == 0 and b % g == 0


def test_smith_diag_divisibility_and_transforms():
    rng = random.Random(7)
    for _ in range(60):
        nrows = rng.randrange(1, 5)
        ncols = rng.randrange(1, 5)
        rows = [[rng.randrange(-6, 7) for _ in range(ncols)]
                for _ in range(nrows)]
        sf = SmithForm(rows, ncols)
        nonzero = [d for d in sf.diag if d]
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        assert all(d >= 0 for d in sf.diag)
        ident = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        assert matmul(sf.to_new, sf.to_old) == ident
        assert matmul(sf.to_old, sf.to_new) == ident
        # original rows land in the diagonal lattice
        for row in rows:
            y = sf.new_coords(row)
            for j, d in enumerate(sf.diag):
                assert y[j] % d == 0 if d else y[j] == 0
        # diagonal generators land in the original lattice
        for j, d in enumerate(sf.diag):
            if d:
                y = [0] * ncols
                y[j] = d
                assert lattice_contains(rows, ncols, sf.old_coords(y))


def test_solve_integer_system_roundtrip():
    rng = random.Random(11)
    for _ in range(40):
        nrows = rng.randrange(1, 4)
        ncols = rng.randrange(1, 4)
        rows = [[rng.randrange(-5, 6) for _ in range(ncols)]
                for _ in range(nrows)]
        z = [rng.randrange(-4, 5) for _ in range(ncols)]
        target = [sum(r[i] * z[i] for i in range(ncols)) for r in rows]
        sol = solve_integer_system(rows, ncols, target)
        assert sol is not None
        assert [sum(r[i] * sol[i] for i in range(ncols)) for r in rows] == target


def test_solve_integer_system_unsolvable():
    assert solve_integer_system([[2]], 1, [1]) is None
    sol = solve_integer_system([[2, 3]], 2, [1])
    assert sol is not None and 2 * sol[0] + 3 * sol[1] == 1
    assert solve_integer_system([[0]], 1, [5]) is None


# ---------------------------------------------------------------------------
# FpModule


def test_cyclic_invariants():
    assert FpModule.cyclic(6).invariant_factors == (6,)
    assert FpModule.cyclic(1).invariant_factors == ()
    assert FpModule.cyclic(0).invariant_factors == (0,)
    assert FpModule.cyclic(6).order() == 6


def test_diagonal_presentation_collapses():
    # Z^2 / <2e0, 3e1> is cyclic of order 6
    m = FpModule(0, 2, ((2, 0), (0, 3)))
    assert m.invariant_factors == (6,)
    k = FpModule(0, 2, ((2, 0), (0, 2)))
    assert k.invariant_factors == (2, 2)


def test_ground_ring_relations():
    m = FpModule(4, 2, ((2, 0),))
    assert sorted(m.invariant_factors) == [2, 4]
    assert m.order() == 8


def test_infinite_guards():
    free = FpModule.cyclic(0)
    assert not free.is_finite()
    with pytest.raises(CompatibilityError):
        free.order()
    with pytest.raises(CompatibilityError):
        free.elements()
    big = FpModule(2, 13)
    with pytest.raises(BudgetExceeded):
        big.elements()


def test_reduce_lift_roundtrip():
    for m in (FpModule.cyclic(5), FpModule(0, 2, ((2, 0), (0, 3))),
              FpModule(4, 2, ((2, 1),)), FpModule(6, 3, ((1, 2, 3), (0, 2, 4)))):
        for x in m.elements():
            assert m.reduce(m.lift(x)) == x


def test_arithmetic_matches_generator_coordinates():
    m = FpModule(12, 2, ((3, 1),))
    elems = m.elements()
    for a in elems:
        la = m.lift(a)
        for b in elems:
            lb = m.lift(b)
            s = [x + y for x, y in zip(la, lb)]
            assert m.add(a, b) == m.reduce(s)
        assert m.neg(a) == m.reduce([-x for x in la])
        assert m.smul(5, a) == m.reduce([5 * x for x in la])
    assert m.add(m.zero(), m.zero()) == m.zero()


def test_element_order():
    m = FpModule.of_invariants((2, 4))
    orders = sorted(m.element_order(x) for x in m.elements())
    assert orders == [1, 2, 2, 2, 4, 4, 4, 4]


def test_json_roundtrip():
    m = FpModule(4, 2, ((2, 1),))
    assert FpModule.from_json(m.to_json()) == m


# ---------------------------------------------------------------------------
# Maps


def test_map_rejects_ill_defined():
    z2, z3 = FpModule.cyclic(2), FpModule.cyclic(3)
    with pytest.raises(CompatibilityError):
        ModuleMap(z2, z3, ((1,),))
    ModuleMap(z2, z3, ((0,),))  # the zero map is fine


def test_map_is_additive_and_composes():
    m = FpModule(0, 2, ((4, 0), (0, 6)))
    n = FpModule.cyclic(12)
    f = ModuleMap(m, n, ((3,), (2,)))
    for a in m.elements():
        for b in m.elements():
            assert f.apply(m.add(a, b)) == n.add(f.apply(a), f.apply(b))
    g = ModuleMap(n, FpModule.cyclic(6), ((1,),))
    h = f.compose(g)
    for a in m.elements():
        assert h.apply(a) == g.apply(f.apply(a))


def test_identity_map_and_bijectivity():
    m = FpModule.of_invariants((2, 4))
    ident = ModuleMap.identity(m)
    assert ident.is_bijective()
    zero = ModuleMap(m, m, ((0, 0), (0, 0)))
    assert not zero.is_bijective()


def test_module_iso_witness():
    m = FpModule(0, 2, ((2, 0), (0, 3)))
    n = FpModule.cyclic(6)
    assert same_invariants(m, n)
    wit = module_iso(m, n)
    assert wit is not None and wit.is_bijective()
    for a in m.elements():
        for b in m.elements():
            assert wit.apply(m.add(a, b)) == n.add(wit.apply(a), wit.apply(b))
    assert module_iso(FpModule.cyclic(4), FpModule.of_invariants((2, 2))) is None


def test_bilinear_multiplication():
    z4 = FpModule.cyclic(4)
    mul = BilinearMap(z4, z4, z4, (((1,),),))
    for a in z4.elements():
        for b in z4.elements():
            assert mul.apply(a, b) == z4.reduce([a[0] * b[0]])
    with pytest.raises(CompatibilityError):
        BilinearMap(FpModule.cyclic(2), FpModule.cyclic(2),
                    FpModule.cyclic(4), (((1,),),))
