"""The simplex category and its finite products.

Objects of the simplex category are the linearly ordered sets
``[n] = {0, ..., n}``; we write them as plain integers ``n >= 0`` (``n = -1``
denotes the empty ordinal, admitted only when a construction opts into
augmented mode).  A morphism ``[n] -> [m]`` is a weakly monotone map, stored
as its tuple of values.

Every morphism factors uniquely as an *active* map followed by an *inert*
map:

* inert: ``f(i) = f(0) + i`` for all ``i`` (an interval inclusion),
* active: ``f(0) = 0`` and ``f(n) = m`` (endpoint preserving).

Morphisms that are both are exactly the identities.  Products of copies of
the simplex category are handled by :class:`DeltaNMorphism` (componentwise
data) and the cell objects ``C_S`` used to state Segal conditions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .errors import BudgetExceeded, CompatibilityError

#: Default cap on the number of items any single enumeration may produce.
DEFAULT_BUDGET = 10**6


class MorphismClass(enum.Enum):
    """Classification of a morphism under the active/inert factorization
    system.  ``BOTH`` (inert and active at once) happens exactly for
    identities in the simplex category and exactly for pointed bijections in
    the pointed-finite-sets category."""

    INERT = "inert"
    ACTIVE = "active"
    NEUTRAL = "neutral"
    BOTH = "both"

    @property
    def is_inert(self):
        return self in (MorphismClass.INERT, MorphismClass.BOTH)

    @property
    def is_active(self):
        return self in (MorphismClass.ACTIVE, MorphismClass.BOTH)


def _check_object(n, augmented=False):
    if not isinstance(n, int):
        raise CompatibilityError(f"simplex object must be an int, got {n!r}")
    lowest = -1 if augmented else 0
    if n < lowest:
        raise CompatibilityError(
            f"simplex object [{n}] out of range (augmented={augmented})")


@dataclass(frozen=True)
class DeltaMorphism:
    """A weakly monotone map ``[src] -> [tgt]`` given by its values.

    ``values`` has length ``src + 1``; ``src = -1`` (the empty map out of the
    empty ordinal) is only accepted with ``augmented=True`` and such maps
    participate in composition and serialization but are rejected by
    ``classify``/``factorize``.
    """

    src: int
    tgt: int
    values: tuple

    def __init__(self, src, tgt, values, augmented=False):
        _check_object(src, augmented)
        _check_object(tgt, augmented)
        values = tuple(values)
        if len(values) != src + 1:
            raise CompatibilityError(
                f"expected {src + 1} values for a map out of [{src}], "
                f"got {len(values)}")
        if tgt == -1 and src != -1:
            raise CompatibilityError("only the empty map lands in [-1]")
        for i, v in enumerate(values):
            if not 0 <= v <= tgt:
                raise CompatibilityError(
                    f"value {v} at position {i} outside [0, {tgt}]")
            if i and v < values[i - 1]:
                raise CompatibilityError(f"values {values} are not monotone")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "tgt", tgt)
        object.__setattr__(self, "values", values)

    def __call__(self, i):
        return self.values[i]

    def is_identity(self):
        return self.src == self.tgt and self.values == tuple(range(self.src + 1))

    def to_json(self):
        return {"src": self.src, "tgt": self.tgt, "values": list(self.values)}

    @classmethod
    def from_json(cls, data, augmented=False):
        return cls(data["src"], data["tgt"], tuple(data["values"]),
                   augmented=augmented)

    def __repr__(self):
        return f"[{self.src}]->[{self.tgt}]{self.values}"


def identity(n):
    return DeltaMorphism(n, n, tuple(range(n + 1)))


def compose(f, g):
    """Return ``g after f`` for ``f: [n] -> [m]`` and ``g: [m] -> [k]``."""
    if f.tgt != g.src:
        raise CompatibilityError(f"cannot compose {f} then {g}")
    if f.src == -1:
        return DeltaMorphism(-1, g.tgt, (), augmented=True)
    return DeltaMorphism(f.src, g.tgt, tuple(g.values[v] for v in f.values))


def is_inert(f):
    _reject_augmented(f)
    return all(f.values[i] == f.values[0] + i for i in range(f.src + 1))


def is_active(f):
    _reject_augmented(f)
    return f.values[0] == 0 and f.values[f.src] == f.tgt


def _reject_augmented(f):
    if f.src == -1 or f.tgt == -1:
        raise CompatibilityError(
            "classification is not defined for augmented (empty) objects")


def classify(f):
    inert, active = is_inert(f), is_active(f)
    if inert and active:
        return MorphismClass.BOTH
    if inert:
        return MorphismClass.INERT
    if active:
        return MorphismClass.ACTIVE
    return MorphismClass.NEUTRAL


def factorize(f):
    """Unique factorization ``f = inert after active``.

    Returns ``(active, inert)`` with ``active: [n] -> [k]``,
    ``inert: [k] -> [m]`` and ``k = f(n) - f(0)``.
    """
    _reject_augmented(f)
    base = f.values[0]
    k = f.values[f.src] - base
    active = DeltaMorphism(f.src, k, tuple(v - base for v in f.values))
    inert = DeltaMorphism(k, f.tgt, tuple(base + j for j in range(k + 1)))
    assert compose(active, inert) == f
    return active, inert


def hom_count(src, tgt):
    """Number of monotone maps ``[src] -> [tgt]``."""
    if src == -1:
        return 1
    if tgt == -1:
        return 0
    return math.comb(src + tgt + 1, src + 1)


def enumerate_morphisms(src, tgt, budget=None):
    """All monotone maps ``[src] -> [tgt]`` in lexicographic value order."""
    _check_object(src, augmented=True)
    _check_object(tgt, augmented=True)
    budget = DEFAULT_BUDGET if budget is None else budget
    count = hom_count(src, tgt)
    if count > budget:
        raise BudgetExceeded(
            f"{count} morphisms [{src}]->[{tgt}] exceed budget {budget}")
    if src == -1:
        return [DeltaMorphism(-1, tgt, (), augmented=True)]
    if tgt == -1:
        return []
    out = [DeltaMorphism(src, tgt, vals)
           for vals in combinations_with_replacement(range(tgt + 1), src + 1)]
    assert len(out) == count
    return out


def enumerate_active(src, tgt):
    """All active maps ``[src] -> [tgt]`` in lexicographic value order."""
    if src == 0:
        return [DeltaMorphism(0, 0, (0,))] if tgt == 0 else []
    out = []
    for mid in combinations_with_replacement(range(tgt + 1), src - 1):
        vals = (0,) + mid + (tgt,)
        if all(vals[i] <= vals[i + 1] for i in range(src)):
            out.append(DeltaMorphism(src, tgt, vals))
    return out


def enumerate_inert(src, tgt):
    """All inert maps ``[src] -> [tgt]`` (the ``tgt - src + 1`` windows)."""
    return [DeltaMorphism(src, tgt, tuple(range(o, o + src + 1)))
            for o in range(tgt - src + 1)]


def rho(i, n):
    """The i-th Segal map ``[1] -> [n]`` with values ``(i-1, i)``; 1 <= i <= n."""
    if not 1 <= i <= n:
        raise CompatibilityError(f"rho_{i} undefined for [{n}]")
    return DeltaMorphism(1, n, (i - 1, i))


def segal_maps(n):
    return [rho(i, n) for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# Products of simplex categories.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaNMorphism:
    """A morphism of a finite product of simplex categories: one
    :class:`DeltaMorphism` per component."""

    components: tuple

    def __init__(self, components):
        components = tuple(components)
        for c in components:
            if not isinstance(c, DeltaMorphism):
                raise CompatibilityError(f"bad component {c!r}")
        object.__setattr__(self, "components", components)

    @property
    def arity(self):
        return len(self.components)

    @property
    def src(self):
        return tuple(c.src for c in self.components)

    @property
    def tgt(self):
        return tuple(c.tgt for c in self.components)

    def to_json(self):
        return [c.to_json() for c in self.components]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(DeltaMorphism.from_json(c) for c in data))

    def __repr__(self):
        return "x".join(repr(c) for c in self.components)


def identity_n(shape):
    return DeltaNMorphism(tuple(identity(n) for n in shape))


def compose_n(f, g):
    if f.arity != g.arity:
        raise CompatibilityError("arity mismatch")
    return DeltaNMorphism(tuple(compose(a, b)
                                for a, b in zip(f.components, g.components)))


def classify_n(f):
    """Componentwise conjunction: inert/active iff every component is."""
    classes = [classify(c) for c in f.components]
    inert = all(c.is_inert for c in classes)
    active = all(c.is_active for c in classes)
    if inert and active:
        return MorphismClass.BOTH
    if inert:
        return MorphismClass.INERT
    if active:
        return MorphismClass.ACTIVE
    return MorphismClass.NEUTRAL


def factorize_n(f):
    pairs = [factorize(c) for c in f.components]
    return (DeltaNMorphism(tuple(p[0] for p in pairs)),
            DeltaNMorphism(tuple(p[1] for p in pairs)))


def enumerate_morphisms_n(src, tgt, budget=None):
    """All componentwise monotone maps between product objects, ordered
    lexicographically by component."""
    if len(src) != len(tgt):
        raise CompatibilityError("arity mismatch")
    budget = DEFAULT_BUDGET if budget is None else budget
    total = math.prod(hom_count(a, b) for a, b in zip(src, tgt))
    if total > budget:
        raise BudgetExceeded(f"{total} morphisms exceed budget {budget}")
    pools = [enumerate_morphisms(a, b, budget=budget)
             for a, b in zip(src, tgt)]
    return [DeltaNMorphism(combo) for combo in product(*pools)]


@dataclass(frozen=True)
class Cell:
    """The cell ``C_S`` of a product of ``n`` simplex categories: component
    ``j`` is ``[1]`` when ``j`` lies in ``subset`` (1-based) and ``[0]``
    otherwise."""

    arity: int
    subset: frozenset

    def __init__(self, arity, subset):
        subset = frozenset(subset)
        if not all(1 <= j <= arity for j in subset):
            raise CompatibilityError(f"subset {set(subset)} not within 1..{arity}")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "subset", subset)

    @property
    def shape(self):
        return tuple(1 if j in self.subset else 0
                     for j in range(1, self.arity + 1))


def inert_cell_maps(shape):
    """All levelwise-inert maps ``C_{1..n} -> shape`` (one Segal index per
    component).  Empty when some component is ``[0]``."""
    pools = []
    for n in shape:
        pools.append([rho(i, n) for i in range(1, n + 1)])
    return [DeltaNMorphism(combo) for combo in product(*pools)]


def cell_maps_over(shape, budget=None):
    """Every inert map ``C_S -> shape`` for every subset ``S``.

    Returns a list of ``(Cell, DeltaNMorphism)`` pairs; subsets are visited
    in binary order, maps lexicographically.  This is the object list of the
    cell category of ``shape``.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    arity = len(shape)
    out = []
    for mask in range(1 << arity):
        subset = frozenset(j for j in range(1, arity + 1)
                           if mask & (1 << (j - 1)))
        cell = Cell(arity, subset)
        pools = []
        for j, n in enumerate(shape, start=1):
            c = 1 if j in subset else 0
            pools.append(enumerate_inert(c, n))
        for combo in product(*pools):
            out.append((cell, DeltaNMorphism(combo)))
            if len(out) > budget:
                raise BudgetExceeded(f"cell maps over {shape} exceed {budget}")
    return out
