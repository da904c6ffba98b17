"""Tests for the explicit finite-category layer."""

import pytest

from deltakit.category import (
    CategoryFunctor,
    FiniteCategory,
    check_comma_extremals,
    comma_over,
    comma_under,
    delta_category,
    delta_op_category,
    product_category,
)
from deltakit.errors import CompatibilityError
from deltakit.simplex import DeltaMorphism, hom_count
from deltakit.verdicts import FAIL, INCONCLUSIVE, PASS


def walking_arrow():
    """The category with objects a, b and one non-identity arrow a -> b."""
    objects = ("a", "b")
    morphisms = {"ida": ("a", "a"), "idb": ("b", "b"), "f": ("a", "b")}
    composition = {("ida", "ida"): "ida", ("idb", "idb"): "idb",
                   ("ida", "f"): "f", ("f", "idb"): "f"}
    identities = {"a": "ida", "b": "idb"}
    return FiniteCategory(objects, morphisms, composition, identities)


def discrete(labels):
    morphisms = {("id", x): (x, x) for x in labels}
    composition = {((("id", x)), ("id", x)): ("id", x) for x in labels}
    identities = {x: ("id", x) for x in labels}
    return FiniteCategory(labels, morphisms, composition, identities)


def test_walking_arrow_axioms_and_extremals():
    cat = walking_arrow()
    assert cat.check_axioms()
    assert cat.initial_objects() == ["a"]
    assert cat.final_objects() == ["b"]
    op = cat.op()
    assert op.check_axioms()
    assert op.initial_objects() == ["b"]
    assert op.final_objects() == ["a"]


def test_axiom_violations_detected():
    cat = walking_arrow()
    broken = FiniteCategory(cat.objects, cat.morphisms,
                            {**cat.composition, ("ida", "f"): "ida"},
                            cat.identities)
    with pytest.raises(CompatibilityError):
        broken.check_axioms()
    missing = FiniteCategory(cat.objects, cat.morphisms,
                             {k: v for k, v in cat.composition.items()
                              if k != ("ida", "f")},
                             cat.identities)
    with pytest.raises(CompatibilityError):
        missing.check_axioms()


def test_truncated_simplex_category_tables():
    cat = delta_category(2)
    assert cat.size()[0] == 3
    expected = sum(hom_count(n, m) for n in range(3) for m in range(3))
    assert cat.size()[1] == expected == 31
    assert cat.check_axioms()
    # the 0-simplex is final (unique map from anywhere), nothing is initial
    assert cat.final_objects() == [0]
    assert cat.initial_objects() == []
    assert delta_op_category(2).initial_objects() == [0]


def test_product_category():
    c = delta_category(1)
    p = product_category(c, c)
    assert p.size() == (4, 49)
    assert p.check_axioms()
    assert p.final_objects() == [(0, 0)]


def test_full_subcategory():
    cat = delta_category(2)
    sub = cat.full_subcategory([0, 1])
    assert sub.size()[0] == 2
    assert sub.size()[1] == sum(hom_count(n, m) for n in range(2)
                                for m in range(2))
    assert sub.check_axioms()


def test_functor_validation():
    cat = walking_arrow()
    ident = CategoryFunctor(cat, cat,
                            {x: x for x in cat.objects},
                            {f: f for f in cat.morphisms})
    assert ident.check()
    with pytest.raises(CompatibilityError):
        CategoryFunctor(cat, cat, {x: x for x in cat.objects},
                        {"ida": "ida", "idb": "idb", "f": "idb"})


def test_comma_under_identity_has_initial():
    cat = delta_category(2)
    ident = CategoryFunctor(cat, cat, {x: x for x in cat.objects},
                            {f: f for f in cat.morphisms}, check=False)
    for d in cat.objects:
        comma = comma_under(ident, d)
        assert comma.check_axioms()
        inits = comma.initial_objects()
        assert inits == [(d, cat.identities[d])]
    verdict, witnesses = check_comma_extremals(ident, "under", "initial")
    assert verdict == PASS
    assert len(witnesses) == 3


def test_comma_over_identity_has_final():
    cat = delta_category(1)
    ident = CategoryFunctor(cat, cat, {x: x for x in cat.objects},
                            {f: f for f in cat.morphisms}, check=False)
    for d in cat.objects:
        comma = comma_over(ident, d)
        assert comma.check_axioms()
        assert comma.final_objects() == [(d, cat.identities[d])]
    verdict, _ = check_comma_extremals(ident, "over", "final")
    assert verdict == PASS


def test_comma_witness_inconclusive():
    cat = delta_category(1)
    sub = cat.full_subcategory([1])
    incl = CategoryFunctor(sub, cat, {1: 1},
                           {f: f for f in sub.morphisms}, check=False)
    verdict, witnesses = check_comma_extremals(incl, "under", "initial")
    assert verdict == INCONCLUSIVE
    assert all(w["comma_size"] > 0 for w in witnesses)


def test_comma_witness_fail_on_empty():
    two = discrete(("a", "b"))
    one = discrete(("a",))
    incl = CategoryFunctor(one, two, {"a": "a"},
                           {("id", "a"): ("id", "a")}, check=False)
    verdict, witnesses = check_comma_extremals(incl, "under", "initial")
    assert verdict == FAIL
    empty = [w for w in witnesses if w["comma_size"] == 0]
    assert len(empty) == 1 and empty[0]["object"] == repr("b")


def test_comma_composition_closed():
    cat = delta_category(2)
    sub = cat.full_subcategory([1, 2])
    incl = CategoryFunctor(sub, cat, {1: 1, 2: 2},
                           {f: f for f in sub.morphisms}, check=False)
    comma = comma_under(incl, 0)
    assert comma.check_axioms()
    assert len(comma.objects) == hom_count(0, 1) + hom_count(0, 2)


def test_segal_spine_inclusion_commas():
    # the spine-like subcategory on [0] and [1] inside the 2-truncation:
    # every under-comma is nonempty, so the scan never reports FAIL
    cat = delta_category(2)
    sub = cat.full_subcategory([0, 1])
    incl = CategoryFunctor(sub, cat, {0: 0, 1: 1},
                           {f: f for f in sub.morphisms}, check=False)
    verdict, _ = check_comma_extremals(incl, "over", "final")
    assert verdict in (PASS, INCONCLUSIVE)
    v2, _ = check_comma_extremals(incl, "under", "initial")
    assert v2 in (PASS, INCONCLUSIVE)
