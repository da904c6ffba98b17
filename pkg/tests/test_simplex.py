import math

import pytest

from deltakit.errors import BudgetExceeded, CompatibilityError
from deltakit.simplex import (
    Cell,
    DeltaMorphism,
    DeltaNMorphism,
    MorphismClass,
    cell_maps_over,
    classify,
    classify_n,
    compose,
    compose_n,
    enumerate_active,
    enumerate_inert,
    enumerate_morphisms,
    enumerate_morphisms_n,
    factorize,
    factorize_n,
    hom_count,
    identity,
    identity_n,
    inert_cell_maps,
    rho,
    segal_maps,
)


def d(src, tgt, *values):
    return DeltaMorphism(src, tgt, values)


class TestDeltaMorphism:
    def test_validation_rejects_non_monotone(self):
        with pytest.raises(CompatibilityError):
            d(1, 2, 2, 0)

    def test_validation_rejects_out_of_range(self):
        with pytest.raises(CompatibilityError):
            d(1, 1, 0, 2)

    def test_validation_rejects_wrong_length(self):
        with pytest.raises(CompatibilityError):
            d(2, 2, 0, 1)

    def test_augmented_objects_need_flag(self):
        with pytest.raises(CompatibilityError):
            DeltaMorphism(-1, 2, ())
        f = DeltaMorphism(-1, 2, (), augmented=True)
        assert f.values == ()

    def test_json_roundtrip(self):
        f = d(2, 3, 0, 2, 2)
        assert DeltaMorphism.from_json(f.to_json()) == f


class TestCompose:
    def test_spec_example_face_then_degeneracy(self):
        d1 = d(1, 2, 0, 2)
        s0 = d(2, 1, 0, 0, 1)
        assert compose(d1, s0) == identity(1)

    def test_spec_example_rho_then_map(self):
        f = rho(2, 3)
        g = d(3, 2, 0, 1, 1, 2)
        assert compose(f, g) == d(1, 2, 1, 1)

    def test_mismatch_raises(self):
        with pytest.raises(CompatibilityError):
            compose(d(1, 1, 0, 1), d(2, 2, 0, 1, 2))

    def test_associativity_exhaustive_small(self):
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    for e in range(3):
                        for f in enumerate_morphisms(a, b):
                            for g in enumerate_morphisms(b, c):
                                for h in enumerate_morphisms(c, e):
                                    assert compose(compose(f, g), h) == \
                                        compose(f, compose(g, h))


class TestClassify:
    def test_identities_are_both(self):
        for n in range(4):
            assert classify(identity(n)) is MorphismClass.BOTH

    def test_spec_example_face_inert(self):
        assert classify(d(1, 2, 0, 1)) is MorphismClass.INERT

    def test_spec_example_window(self):
        assert classify(d(1, 3, 1, 3)) is MorphismClass.NEUTRAL

    def test_active_example(self):
        assert classify(d(1, 2, 0, 2)) is MorphismClass.ACTIVE

    def test_both_only_identities(self):
        for n in range(4):
            for m in range(4):
                for f in enumerate_morphisms(n, m):
                    both = classify(f) is MorphismClass.BOTH
                    assert both == f.is_identity()

    def test_classes_closed_under_composition(self):
        # Inert and active maps each form a subcategory.
        for a in range(3):
            for b in range(4):
                for c in range(4):
                    for f in enumerate_morphisms(a, b):
                        for g in enumerate_morphisms(b, c):
                            h = compose(f, g)
                            cf, cg = classify(f), classify(g)
                            if cf.is_inert and cg.is_inert:
                                assert classify(h).is_inert
                            if cf.is_active and cg.is_active:
                                assert classify(h).is_active


class TestFactorize:
    def test_spec_example(self):
        active, inert = factorize(d(1, 3, 1, 3))
        assert active == d(1, 2, 0, 2)
        assert inert == d(2, 3, 1, 2, 3)

    def test_identity_factorization(self):
        active, inert = factorize(identity(2))
        assert active == identity(2) and inert == identity(2)

    def test_exhaustive_uniqueness_small(self):
        # Independent oracle: compose every (active, inert) pair and verify
        # each morphism arises exactly once, from its own factorization.
        for n in range(4):
            for m in range(4):
                seen = {}
                for k in range(m + 1):
                    for act in enumerate_active(n, k):
                        for ine in enumerate_inert(k, m):
                            f = compose(act, ine)
                            assert f not in seen, f
                            seen[f] = (act, ine)
                for f in enumerate_morphisms(n, m):
                    assert seen[f] == factorize(f)
                assert len(seen) == hom_count(n, m)


class TestEnumeration:
    def test_counts_match_formula(self):
        for n in range(5):
            for m in range(5):
                assert len(enumerate_morphisms(n, m)) == \
                    math.comb(n + m + 1, n + 1)

    def test_spec_example_count(self):
        assert len(enumerate_morphisms(2, 1)) == 4

    def test_lexicographic_order(self):
        ms = enumerate_morphisms(1, 1)
        assert [f.values for f in ms] == [(0, 0), (0, 1), (1, 1)]

    def test_budget_guard(self):
        with pytest.raises(BudgetExceeded):
            enumerate_morphisms(12, 12, budget=10)

    def test_actives_and_inerts_are_filters(self):
        for n in range(1, 4):
            for m in range(4):
                all_maps = enumerate_morphisms(n, m)
                assert enumerate_active(n, m) == \
                    [f for f in all_maps if classify(f).is_active]
                assert enumerate_inert(n, m) == \
                    [f for f in all_maps if classify(f).is_inert]

    def test_segal_maps_are_inert(self):
        for n in range(1, 5):
            for f in segal_maps(n):
                assert classify(f) is (MorphismClass.INERT if n > 1
                                       else MorphismClass.BOTH)


class TestProducts:
    def test_componentwise_composition(self):
        f = DeltaNMorphism((d(1, 2, 0, 2), rho(1, 2)))
        g = DeltaNMorphism((d(2, 1, 0, 0, 1), d(2, 2, 0, 1, 1)))
        assert compose_n(f, g) == DeltaNMorphism((identity(1), d(1, 2, 0, 1)))

    def test_classification_is_conjunction(self):
        f = DeltaNMorphism((rho(1, 2), d(1, 2, 0, 2)))
        assert classify_n(f) is MorphismClass.NEUTRAL
        g = DeltaNMorphism((rho(1, 2), rho(2, 2)))
        assert classify_n(g) is MorphismClass.INERT
        assert classify_n(identity_n((2, 3))) is MorphismClass.BOTH

    def test_factorization_componentwise(self):
        f = DeltaNMorphism((d(1, 3, 1, 3), d(1, 2, 0, 1)))
        act, ine = factorize_n(f)
        assert classify_n(act).is_active and classify_n(ine).is_inert
        assert compose_n(act, ine) == f

    def test_enumeration_counts_multiply(self):
        ms = enumerate_morphisms_n((1, 2), (2, 1))
        assert len(ms) == hom_count(1, 2) * hom_count(2, 1)


class TestCells:
    def test_cell_shape(self):
        assert Cell(3, {1, 3}).shape == (1, 0, 1)

    def test_inert_cell_maps_count(self):
        maps = inert_cell_maps((2, 3))
        assert len(maps) == 6
        for f in maps:
            assert classify_n(f).is_inert

    def test_inert_cell_maps_empty_on_zero_component(self):
        assert inert_cell_maps((2, 0)) == []

    def test_cell_maps_over_point(self):
        objs = cell_maps_over((0, 0))
        assert len(objs) == 1
        cell, f = objs[0]
        assert cell.subset == frozenset()
        assert f == identity_n((0, 0))

    def test_cell_maps_over_interval_counts(self):
        # Over [1]: the identity cell plus two vertices.
        assert len(cell_maps_over((1,))) == 3
        # Over [2]: 2 edge inclusions plus 3 vertices.
        assert len(cell_maps_over((2,))) == 5

    def test_cell_maps_product_counts_multiply(self):
        assert len(cell_maps_over((2, 1))) == 5 * 3
