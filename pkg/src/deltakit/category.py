"""Explicit finite categories with exhaustive axiom checks.

A :class:`FiniteCategory` stores every object, every morphism and the full
composition table, so functor laws, comma categories and extremal-object
searches are all finite scans.  Truncated shape categories (the simplex
category up to a dimension bound, slices, products) are built through this
interface and share one implementation of the comma/witness machinery.
"""

from __future__ import annotations

from itertools import product

from .errors import BudgetExceeded, CompatibilityError
from .simplex import DeltaMorphism, compose, enumerate_morphisms, identity
from .verdicts import FAIL, INCONCLUSIVE, PASS


class FiniteCategory:
    """A finite category given by explicit tables.

    ``morphisms`` maps a hashable label to ``(src, tgt)``.  ``composition``
    maps ``(f, g)`` to the label of ``g after f`` for every composable pair.
    """

    def __init__(self, objects, morphisms, composition, identities,
                 dimension_bound=None):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.composition = dict(composition)
        self.identities = dict(identities)
        self.dimension_bound = dimension_bound
        self._hom = {}
        for label, (s, t) in self.morphisms.items():
            self._hom.setdefault((s, t), []).append(label)

    # -- basic access -------------------------------------------------------

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def hom(self, x, y):
        return list(self._hom.get((x, y), ()))

    def identity_of(self, x):
        return self.identities[x]

    def compose(self, f, g):
        """Return ``g after f``."""
        if (f, g) not in self.composition:
            raise CompatibilityError(f"morphisms {f!r} and {g!r} do not compose")
        return self.composition[(f, g)]

    def size(self):
        return len(self.objects), len(self.morphisms)

    # -- axioms --------------------------------------------------------------

    def check_axioms(self, budget=10**7):
        """Exhaustively verify the category axioms; raises on violation."""
        objset = set(self.objects)
        for label, (s, t) in self.morphisms.items():
            if s not in objset or t not in objset:
                raise CompatibilityError(f"morphism {label!r} has bad endpoints")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.morphisms.get(i) != (x, x):
                raise CompatibilityError(f"missing or bad identity at {x!r}")
        # composition defined exactly on composable pairs, with the right
        # endpoints and unit laws
        pairs = 0
        for f, (fs, ft) in self.morphisms.items():
            for g, (gs, gt) in self.morphisms.items():
                composable = ft == gs
                present = (f, g) in self.composition
                if composable != present:
                    raise CompatibilityError(
                        f"composition table wrong on ({f!r}, {g!r})")
                if present:
                    pairs += 1
                    if pairs > budget:
                        raise BudgetExceeded("too many composable pairs")
                    h = self.composition[(f, g)]
                    if self.morphisms.get(h) != (fs, gt):
                        raise CompatibilityError(
                            f"composite of ({f!r}, {g!r}) has bad endpoints")
        for f, (fs, ft) in self.morphisms.items():
            if self.composition[(self.identities[fs], f)] != f:
                raise CompatibilityError(f"left unit law fails at {f!r}")
            if self.composition[(f, self.identities[ft])] != f:
                raise CompatibilityError(f"right unit law fails at {f!r}")
        # associativity over all composable triples
        triples = 0
        by_src = {}
        for g, (gs, gt) in self.morphisms.items():
            by_src.setdefault(gs, []).append(g)
        for f, (fs, ft) in self.morphisms.items():
            for g in by_src.get(ft, ()):
                fg = self.composition[(f, g)]
                for h in by_src.get(self.tgt(g), ()):
                    triples += 1
                    if triples > budget:
                        raise BudgetExceeded("too many composable triples")
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                        raise CompatibilityError(
                            f"associativity fails on ({f!r}, {g!r}, {h!r})")
        return True

    # -- constructions --------------------------------------------------------

    def op(self):
        """The opposite category (same labels, reversed endpoints)."""
        morphisms = {f: (t, s) for f, (s, t) in self.morphisms.items()}
        composition = {(g, f): h for (f, g), h in self.composition.items()}
        return FiniteCategory(self.objects, morphisms, composition,
                              self.identities,
                              dimension_bound=self.dimension_bound)

    def full_subcategory(self, objects):
        objs = [x for x in self.objects if x in set(objects)]
        objset = set(objs)
        morphisms = {f: st for f, st in self.morphisms.items()
                     if st[0] in objset and st[1] in objset}
        composition = {(f, g): h for (f, g), h in self.composition.items()
                       if f in morphisms and g in morphisms}
        identities = {x: i for x, i in self.identities.items() if x in objset}
        return FiniteCategory(objs, morphisms, composition, identities,
                              dimension_bound=self.dimension_bound)

    # -- extremal objects -------------------------------------------------------

    def is_initial(self, x):
        return all(len(self.hom(x, y)) == 1 for y in self.objects)

    def is_final(self, x):
        return all(len(self.hom(y, x)) == 1 for y in self.objects)

    def initial_objects(self):
        return [x for x in self.objects if self.is_initial(x)]

    def final_objects(self):
        return [x for x in self.objects if self.is_final(x)]


def product_category(*cats):
    """The product of finitely many finite categories."""
    if not cats:
        raise CompatibilityError("product of zero categories not supported")
    objects = [tuple(combo) for combo in product(*(c.objects for c in cats))]
    morphisms = {}
    for combo in product(*(c.morphisms.items() for c in cats)):
        labels = tuple(f for f, _ in combo)
        srcs = tuple(st[0] for _, st in combo)
        tgts = tuple(st[1] for _, st in combo)
        morphisms[labels] = (srcs, tgts)
    composition = {}
    for f, (fs, ft) in morphisms.items():
        for g, (gs, gt) in morphisms.items():
            if ft == gs:
                composition[(f, g)] = tuple(
                    c.composition[(fc, gc)] for c, fc, gc in zip(cats, f, g))
    identities = {}
    for combo in objects:
        identities[combo] = tuple(c.identities[x] for c, x in zip(cats, combo))
    return FiniteCategory(objects, morphisms, composition, identities)


class CategoryFunctor:
    """A functor between finite categories, stored as explicit tables."""

    def __init__(self, src, tgt, obj_map, mor_map, check=True):
        self.src = src
        self.tgt = tgt
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        if check:
            self.check()

    def on_object(self, x):
        return self.obj_map[x]

    def on_morphism(self, f):
        return self.mor_map[f]

    def check(self):
        for x in self.src.objects:
            if x not in self.obj_map or self.obj_map[x] not in set(self.tgt.objects):
                raise CompatibilityError(f"object {x!r} not mapped properly")
        for f, (s, t) in self.src.morphisms.items():
            g = self.mor_map.get(f)
            if g is None or self.tgt.morphisms.get(g) != (self.obj_map[s],
                                                          self.obj_map[t]):
                raise CompatibilityError(f"morphism {f!r} not mapped properly")
        for x in self.src.objects:
            if self.mor_map[self.src.identities[x]] != \
                    self.tgt.identities[self.obj_map[x]]:
                raise CompatibilityError(f"identity at {x!r} not preserved")
        for (f, g), h in self.src.composition.items():
            if self.tgt.compose(self.mor_map[f], self.mor_map[g]) != self.mor_map[h]:
                raise CompatibilityError(
                    f"composition not preserved on ({f!r}, {g!r})")
        return True

    def compose_with(self, other):
        """Return ``other after self`` as a functor."""
        if self.tgt is not other.src:
            raise CompatibilityError("functors do not compose")
        return CategoryFunctor(
            self.src, other.tgt,
            {x: other.obj_map[y] for x, y in self.obj_map.items()},
            {f: other.mor_map[g] for f, g in self.mor_map.items()},
            check=False)


def comma_under(functor, d):
    """The comma category ``d / F`` for ``F = functor`` and ``d`` in its target.

    Objects are pairs ``(c, f)`` with ``f : d -> F(c)``; a morphism
    ``(c, f) -> (c', f')`` is ``u : c -> c'`` with ``F(u) after f = f'``.
    """
    cat, tgt = functor.src, functor.tgt
    objects = [(c, f) for c in cat.objects
               for f in tgt.hom(d, functor.on_object(c))]
    objset = set(objects)
    morphisms = {}
    for (c, f) in objects:
        for u, (us, ut) in cat.morphisms.items():
            if us != c:
                continue
            f2 = tgt.compose(f, functor.on_morphism(u))
            if (ut, f2) in objset:
                morphisms[((c, f), u, (ut, f2))] = ((c, f), (ut, f2))
    composition = {}
    for m1, (s1, t1) in morphisms.items():
        for m2, (s2, t2) in morphisms.items():
            if t1 == s2:
                u = cat.compose(m1[1], m2[1])
                composition[(m1, m2)] = (s1, u, t2)
    identities = {(c, f): ((c, f), cat.identities[c], (c, f))
                  for (c, f) in objects}
    return FiniteCategory(objects, morphisms, composition, identities)


def comma_over(functor, d):
    """The comma category ``F / d``: objects ``(c, f)`` with ``f : F(c) -> d``,
    morphisms ``u : c -> c'`` with ``f' after F(u) = f``."""
    cat, tgt = functor.src, functor.tgt
    objects = [(c, f) for c in cat.objects
               for f in tgt.hom(functor.on_object(c), d)]
    objset = set(objects)
    morphisms = {}
    for (c, f) in objects:
        for u, (us, ut) in cat.morphisms.items():
            if ut != c:
                continue
            f2 = tgt.compose(functor.on_morphism(u), f)
            if (us, f2) in objset:
                morphisms[((us, f2), u, (c, f))] = ((us, f2), (c, f))
    composition = {}
    for m1, (s1, t1) in morphisms.items():
        for m2, (s2, t2) in morphisms.items():
            if t1 == s2:
                u = cat.compose(m1[1], m2[1])
                composition[(m1, m2)] = (s1, u, t2)
    identities = {(c, f): ((c, f), cat.identities[c], (c, f))
                  for (c, f) in objects}
    return FiniteCategory(objects, morphisms, composition, identities)


def check_comma_extremals(functor, side, kind):
    """Scan every comma of ``functor`` for an extremal object.

    ``side`` is ``"under"`` (commas ``d / F``) or ``"over"`` (``F / d``);
    ``kind`` is ``"initial"`` or ``"final"``.  Returns ``(verdict,
    witnesses)``: PASS when every comma has the required extremal object,
    FAIL when some comma is empty (a genuine obstruction), INCONCLUSIVE when
    a nonempty comma merely lacks the extremal object (the criterion is
    sufficient, not necessary).
    """
    if side not in ("under", "over") or kind not in ("initial", "final"):
        raise CompatibilityError("side must be under/over, kind initial/final")
    build = comma_under if side == "under" else comma_over
    verdict = PASS
    witnesses = []
    for d in functor.tgt.objects:
        comma = build(functor, d)
        if not comma.objects:
            witnesses.append({"object": repr(d), "comma_size": 0,
                              "extremal": None})
            verdict = FAIL
            continue
        extremals = (comma.initial_objects() if kind == "initial"
                     else comma.final_objects())
        witnesses.append({"object": repr(d),
                          "comma_size": len(comma.objects),
                          "extremal": repr(extremals[0]) if extremals else None})
        if not extremals and verdict != FAIL:
            verdict = INCONCLUSIVE
    return verdict, witnesses


def delta_category(dim, budget=10**6):
    """The simplex category truncated at the given dimension, as tables."""
    if dim < 0:
        raise CompatibilityError("truncation must be >= 0")
    objects = list(range(dim + 1))
    morphisms = {}
    for n in objects:
        for m in objects:
            for f in enumerate_morphisms(n, m, budget=budget):
                morphisms[f] = (n, m)
    composition = {}
    by_src = {}
    for g in morphisms:
        by_src.setdefault(g.src, []).append(g)
    for f in morphisms:
        for g in by_src[f.tgt]:
            composition[(f, g)] = compose(f, g)
    identities = {n: identity(n) for n in objects}
    return FiniteCategory(objects, morphisms, composition, identities)


def delta_op_category(dim, budget=10**6):
    return delta_category(dim, budget=budget).op()


__all__ = [
    "FiniteCategory",
    "CategoryFunctor",
    "product_category",
    "comma_under",
    "comma_over",
    "check_comma_extremals",
    "delta_category",
    "delta_op_category",
]
