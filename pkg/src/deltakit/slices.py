"""Slice categories over simplex products and their cellular structure.

This module materializes the finite, truncated slice categories used by the
composite-algebra checks: slices ``Delta^n / I``, the cellular subcategory of
a slice (consecutive gaps at most one), active coslices under a fixed map,
and three witness constructions:

* gluing a family of cellular triangles over the edges of a map into a
  single cellular chain that is final in the relevant comma category,
* the poset of admissible degeneracy pairs whose minimum element witnesses
  coinitiality in the surjective case, and
* the rebracketing ("sift") functor from a product of simplex categories to
  chains with fixed endpoints, whose commas all have initial objects.

It also builds the subcategory of ``Delta / [1]`` that retains both outer
simplex copies and the bimodule cells but drops the action maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iterproduct

from .category import (CategoryFunctor, FiniteCategory, comma_over,
                       comma_under, delta_op_category, product_category)
from .errors import BudgetExceeded, CompatibilityError
from .simplex import (DEFAULT_BUDGET, DeltaMorphism, DeltaNMorphism, compose,
                      compose_n, enumerate_active, enumerate_morphisms,
                      hom_count, identity, identity_n, rho)
from .verdicts import FAIL, INCONCLUSIVE, PASS


# ---------------------------------------------------------------------------
# Slice objects and cellularity.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceObject:
    """An object of ``Delta^n / I``: a componentwise monotone map into the
    product object ``I``, interconvertible with its tuple of value
    sequences."""

    target: tuple
    morphism: DeltaNMorphism

    def __init__(self, target, morphism):
        target = tuple(target)
        if not isinstance(morphism, DeltaNMorphism):
            raise CompatibilityError("morphism must be a DeltaNMorphism")
        if morphism.tgt != target:
            raise CompatibilityError(
                f"map lands in {morphism.tgt}, not in {target}")
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "morphism", morphism)

    @property
    def sequences(self):
        return tuple(c.values for c in self.morphism.components)

    @property
    def dims(self):
        return self.morphism.src

    @classmethod
    def from_sequences(cls, target, sequences):
        target = tuple(target)
        if len(sequences) != len(target):
            raise CompatibilityError("one sequence per component required")
        comps = [DeltaMorphism(len(s) - 1, t, tuple(s))
                 for s, t in zip(sequences, target)]
        return cls(target, DeltaNMorphism(tuple(comps)))

    def to_json(self):
        return {"target": list(self.target),
                "sequences": [list(s) for s in self.sequences]}

    @classmethod
    def from_json(cls, data):
        return cls.from_sequences(tuple(data["target"]),
                                  [tuple(s) for s in data["sequences"]])


def _values_cellular(values):
    return all(values[i + 1] - values[i] <= 1 for i in range(len(values) - 1))


def is_cellular(x):
    """True when every component sequence has consecutive gaps at most 1.

    Accepts a :class:`SliceObject`, a :class:`DeltaNMorphism`, a single
    :class:`DeltaMorphism` or a bare value sequence.
    """
    if isinstance(x, SliceObject):
        return all(_values_cellular(s) for s in x.sequences)
    if isinstance(x, DeltaNMorphism):
        return all(_values_cellular(c.values) for c in x.components)
    if isinstance(x, DeltaMorphism):
        return _values_cellular(x.values)
    return _values_cellular(tuple(x))


def is_phi_cellular(alpha, phi):
    """Relative cellularity of ``alpha`` with respect to an injective
    ``phi`` into the same target.

    Below ``phi``'s first value and from its last value onward, consecutive
    gaps of at most one are required; inside the interval spanned by two
    consecutive ``phi``-values, a step may jump at most to the upper value.
    With ``phi`` the identity this is ordinary cellularity.
    """
    if not isinstance(alpha, DeltaMorphism) or not isinstance(phi, DeltaMorphism):
        raise CompatibilityError("alpha and phi must be DeltaMorphism values")
    if any(phi.values[i + 1] <= phi.values[i] for i in range(phi.src)):
        raise CompatibilityError(f"phi {phi.values} is not injective")
    if alpha.tgt != phi.tgt:
        raise CompatibilityError("alpha and phi must share their target")
    m = phi.src
    for i in range(alpha.src):
        a, nxt = alpha.values[i], alpha.values[i + 1]
        if a < phi.values[0] or a >= phi.values[m]:
            if nxt > a + 1:
                return False
        else:
            j = max(j for j in range(m) if phi.values[j] <= a)
            if nxt > phi.values[j + 1]:
                return False
    return True


def cellular_objects(target_dim, D):
    """All cellular maps ``[q] -> [target_dim]`` with ``q <= D``, ordered by
    (length, values)."""
    out = []
    for q in range(D + 1):
        for f in enumerate_morphisms(q, target_dim):
            if _values_cellular(f.values):
                out.append(f)
    return out


# ---------------------------------------------------------------------------
# Slice categories.
# ---------------------------------------------------------------------------

def slice_category(I, D, budget=None):
    """The slice ``Delta^n / I`` truncated at dimension ``D``.

    Objects are the monotone maps ``J -> I`` with every component of ``J``
    of dimension at most ``D``; morphisms are the commuting triangles, one
    for each underlying map of ``Delta^n``.
    """
    I = tuple(I)
    if not I:
        raise CompatibilityError("I must have at least one component")
    if D < 0:
        raise CompatibilityError("truncation must be >= 0")
    budget = DEFAULT_BUDGET if budget is None else budget
    expected = 1
    for i in I:
        expected *= sum(hom_count(m, i) for m in range(D + 1))
    if expected > budget:
        raise BudgetExceeded(f"{expected} slice objects exceed budget {budget}")
    pools = []
    for i in I:
        comp = []
        for m in range(D + 1):
            comp.extend(enumerate_morphisms(m, i))
        pools.append(comp)
    objects = [DeltaNMorphism(combo) for combo in iterproduct(*pools)]
    morphisms = {}
    by_src = {}
    for x in objects:
        by_src.setdefault(x.src, []).append(x)
    count = 0
    for x in objects:
        for y in objects:
            for u_parts in iterproduct(*(enumerate_morphisms(a, b)
                                         for a, b in zip(x.src, y.src))):
                u = DeltaNMorphism(u_parts)
                if compose_n(u, y) == x:
                    morphisms[(x, u, y)] = (x, y)
                    count += 1
                    if count > budget:
                        raise BudgetExceeded(
                            f"slice morphisms exceed budget {budget}")
    composition = {}
    out_of = {}
    for (x, u, y) in morphisms:
        out_of.setdefault(x, []).append((x, u, y))
    for (x, u, y) in morphisms:
        for (y2, v, z) in out_of.get(y, ()):
            composition[((x, u, y), (y2, v, z))] = (x, compose_n(u, v), z)
    identities = {x: (x, identity_n(x.src), x) for x in objects}
    return FiniteCategory(objects, morphisms, composition, identities,
                          dimension_bound=D)


def active_coslice(gamma, D, object_predicate=None, budget=None):
    """The category of active maps out of ``gamma`` into admissible slice
    objects, truncated at ``D``.

    Objects are pairs ``(c, a)`` with ``c : [q] -> [l]`` admissible
    (cellular by default), ``q <= D`` and ``a : gamma -> c`` active with
    ``c after a = gamma``; morphisms ``(c, a) -> (c', a')`` are active maps
    ``u`` with ``c' after u = c`` and ``u after a = a'``.
    """
    if not isinstance(gamma, DeltaMorphism):
        raise CompatibilityError("gamma must be a single-component map")
    if D < 0:
        raise CompatibilityError("truncation must be >= 0")
    predicate = is_cellular if object_predicate is None else object_predicate
    budget = DEFAULT_BUDGET if budget is None else budget
    objects = []
    for q in range(D + 1):
        for c in enumerate_morphisms(q, gamma.tgt):
            if not predicate(c):
                continue
            for a in enumerate_active(gamma.src, q):
                if compose(a, c) == gamma:
                    objects.append((c, a))
    if len(objects) * len(objects) > budget:
        raise BudgetExceeded("active coslice exceeds budget")
    morphisms = {}
    for (c, a) in objects:
        for (c2, a2) in objects:
            for u in enumerate_active(c.src, c2.src):
                if compose(u, c2) == c and compose(a, u) == a2:
                    morphisms[((c, a), u, (c2, a2))] = ((c, a), (c2, a2))
    composition = {}
    out_of = {}
    for lab in morphisms:
        out_of.setdefault(lab[0], []).append(lab)
    for (x, u, y) in morphisms:
        for (y2, v, z) in out_of.get(y, ()):
            composition[((x, u, y), (y2, v, z))] = (x, compose(u, v), z)
    identities = {(c, a): ((c, a), identity(c.src), (c, a))
                  for (c, a) in objects}
    return FiniteCategory(objects, morphisms, composition, identities,
                          dimension_bound=D)


# ---------------------------------------------------------------------------
# Gluing cellular triangles into a final object.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GlueResult:
    """The glued cellular chain together with its finality certificate."""

    glued: DeltaMorphism
    active_part: DeltaMorphism
    certificate: dict


def glue_final_object(xi, triangles, D=4):
    """Glue per-edge cellular chains over ``xi`` and certify finality.

    ``xi : [j] -> [i]`` and ``triangles`` is the list of pairs
    ``(f_p, c_p)`` for ``p = 1..j`` with ``f_p : [1] -> [n_p]`` active,
    ``c_p : [n_p] -> [i]`` cellular and ``c_p after f_p`` the ``p``-th edge
    of ``xi``.  The glued chain concatenates the ``c_p`` and the active part
    records the block boundaries.  The certificate enumerates every object
    of the comma category (chains under ``xi`` over the triangle family) up
    to length ``D`` and checks it admits exactly one morphism to the glued
    object.
    """
    if not isinstance(xi, DeltaMorphism):
        raise CompatibilityError("xi must be a DeltaMorphism")
    j = xi.src
    if len(triangles) != j:
        raise CompatibilityError(f"expected {j} triangles, got {len(triangles)}")
    for p, (f_p, c_p) in enumerate(triangles, start=1):
        if f_p.src != 1 or f_p.values != (0, f_p.tgt):
            raise CompatibilityError(f"triangle {p}: map {f_p} is not active "
                                     "out of [1]")
        if c_p.tgt != xi.tgt or c_p.src != f_p.tgt:
            raise CompatibilityError(f"triangle {p}: chain does not fit")
        if not _values_cellular(c_p.values):
            raise CompatibilityError(f"triangle {p}: chain {c_p.values} is "
                                     "not cellular")
        if compose(f_p, c_p) != compose(rho(p, j), xi):
            raise CompatibilityError(
                f"triangle {p} does not lie over edge {p} of xi")
    for p in range(1, j):
        left, right = triangles[p - 1][1], triangles[p][1]
        if left.values[left.src] != right.values[0]:
            raise CompatibilityError(
                f"chains {p} and {p + 1} do not share an endpoint")

    if j == 0:
        glued = DeltaMorphism(0, xi.tgt, (xi.values[0],))
        active_part = DeltaMorphism(0, 0, (0,))
    else:
        values = list(triangles[0][1].values)
        boundaries = [0, triangles[0][1].src]
        for _, c_p in triangles[1:]:
            values.extend(c_p.values[1:])
            boundaries.append(boundaries[-1] + c_p.src)
        glued = DeltaMorphism(len(values) - 1, xi.tgt, tuple(values))
        active_part = DeltaMorphism(j, glued.src, tuple(boundaries))
    assert _values_cellular(glued.values)
    assert compose(active_part, glued) == xi

    certificate = _finality_certificate(xi, triangles, glued, active_part, D)
    return GlueResult(glued, active_part, certificate)


def _finality_certificate(xi, triangles, glued, active_part, D):
    """Scan the comma category up to length ``D`` for unique morphisms to
    the glued object."""
    j, i = xi.src, xi.tgt
    n = glued.src
    checked = 0
    failures = []
    for c_z in cellular_objects(i, D):
        q = c_z.src
        for e in enumerate_active(j, q):
            if compose(e, c_z) != xi:
                continue
            # per-edge comparisons of the candidate chain with the triangles
            pools = []
            for p in range(1, j + 1):
                lo, hi = e.values[p - 1], e.values[p]
                window = tuple(c_z.values[lo:hi + 1])
                c_p = triangles[p - 1][1]
                options = [v for v in enumerate_active(hi - lo, c_p.src)
                           if tuple(c_p.values[k] for k in v.values) == window]
                pools.append(options)
            for family in iterproduct(*pools):
                checked += 1
                # the forced morphism: blockwise translation of the family
                forced = [0] * (q + 1)
                for p in range(1, j + 1):
                    base_z = e.values[p - 1]
                    base_w = active_part.values[p - 1]
                    v = family[p - 1]
                    for r in range(v.src + 1):
                        forced[base_z + r] = base_w + v.values[r]
                matches = []
                for u in enumerate_active(q, n):
                    if compose(u, glued) != c_z:
                        continue
                    if compose(e, u) != active_part:
                        continue
                    ok = all(
                        u.values[e.values[p - 1] + r] ==
                        active_part.values[p - 1] + family[p - 1].values[r]
                        for p in range(1, j + 1)
                        for r in range(family[p - 1].src + 1))
                    if ok:
                        matches.append(u)
                if len(matches) != 1 or matches[0].values != tuple(forced):
                    failures.append({
                        "chain": list(c_z.values),
                        "anchors": list(e.values),
                        "matches": len(matches),
                    })
    verdict = PASS if not failures else FAIL
    return {
        "truncation": D,
        "comma_objects": checked,
        "verdict": verdict,
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# The admissible-pair poset of the surjective coinitiality case.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LambdaPoset:
    """The poset of admissible pairs ``(a, b)`` together with its minimum.

    The order is ``(a, b) <= (a', b') iff a <= a' <= b' <= b`` (nested
    intervals), so the minimum is the widest admissible pair.
    """

    members: tuple
    initial: tuple

    @staticmethod
    def leq(p, q):
        return p[0] <= q[0] and q[0] <= q[1] and q[1] <= p[1]

    def to_json(self):
        return {"members": [list(m) for m in self.members],
                "initial": list(self.initial)}


def lambda_X_poset(alpha, xi, t, gamma):
    """Admissible pairs for lifting across the ``t``-th degeneracy.

    ``alpha : [k] -> [p]`` active, ``xi : [p] -> [l]`` cellular and
    ``gamma : [k] -> [l+1]`` must satisfy ``xi after alpha = s_t after
    gamma`` where ``s_t`` folds ``t+1`` onto ``t``.  A pair ``(a, b)`` with
    ``a <= b`` is admissible when ``xi(a) = xi(b) = t``, every index that
    ``gamma`` sends to ``t`` lands at or below ``a`` under ``alpha``, and
    every index sent to ``t+1`` lands at or above ``b``.  Returns the poset
    and its minimum ``(A, B)`` computed in closed form and verified
    exhaustively.
    """
    if not 0 <= t <= gamma.tgt - 1:
        raise CompatibilityError(f"fold index {t} out of range")
    if xi.tgt != gamma.tgt - 1 or alpha.tgt != xi.src or alpha.src != gamma.src:
        raise CompatibilityError("alpha, xi, gamma do not fit together")
    if not _values_cellular(xi.values):
        raise CompatibilityError("xi must be cellular")
    if not (alpha.values[0] == 0 and alpha.values[alpha.src] == alpha.tgt):
        raise CompatibilityError("alpha must be active")
    s_t = DeltaMorphism(gamma.tgt, gamma.tgt - 1,
                        tuple(v if v <= t else v - 1
                              for v in range(gamma.tgt + 1)))
    if compose(alpha, xi) != compose(gamma, s_t):
        raise CompatibilityError("xi after alpha differs from s_t after gamma")

    p = alpha.tgt
    low_anchor = [alpha.values[i] for i in range(gamma.src + 1)
                  if gamma.values[i] == t]
    high_anchor = [alpha.values[i] for i in range(gamma.src + 1)
                   if gamma.values[i] == t + 1]
    members = []
    for a in range(p + 1):
        if xi.values[a] != t:
            continue
        if low_anchor and max(low_anchor) > a:
            continue
        for b in range(a, p + 1):
            if xi.values[b] != t:
                continue
            if high_anchor and min(high_anchor) < b:
                continue
            members.append((a, b))
    if not members:
        raise CompatibilityError(
            "no admissible pair: the input data is inconsistent with a lift")

    level = [v for v in range(p + 1) if xi.values[v] == t]
    a_candidates = [v for v in level
                    if not low_anchor or v >= max(low_anchor)]
    b_candidates = [v for v in level
                    if not high_anchor or v <= min(high_anchor)]
    A, B = min(a_candidates), max(b_candidates)
    if (A, B) not in members:
        raise CompatibilityError("closed-form minimum is not admissible")
    for m in members:
        if not LambdaPoset.leq((A, B), m):
            raise CompatibilityError(f"closed-form minimum not below {m}")
    brute = [u for u in members
             if all(LambdaPoset.leq(u, m) for m in members)]
    assert brute == [(A, B)]
    return LambdaPoset(tuple(sorted(members)), (A, B))


# ---------------------------------------------------------------------------
# The rebracketing ("sift") functor and its commas.
# ---------------------------------------------------------------------------

def _sift_chain(i, k, profile):
    """Value tuple (i, i+1 x (a_1+1), ..., i+k-1 x (a_{k-1}+1), i+k)."""
    values = [i]
    for j, a in enumerate(profile, start=1):
        values.extend([i + j] * (a + 1))
    values.append(i + k)
    return tuple(values)


def _sift_block_map(profile_src, profile_tgt, phis, q_src, q_tgt):
    """The chain-level map induced by componentwise maps of block profiles.

    ``phis[j] : [profile_tgt[j]] -> [profile_src[j]]`` acts inside block
    ``j``; endpoints go to endpoints.
    """
    starts_src = [1]
    for a in profile_src[:-1]:
        starts_src.append(starts_src[-1] + a + 1)
    values = [0]
    pos = 1
    for j, phi in enumerate(phis):
        for r in range(profile_tgt[j] + 1):
            values.append(starts_src[j] + phi.values[r])
            pos += 1
    values.append(q_src)
    return DeltaMorphism(q_tgt, q_src, tuple(values))


def _terminal_category():
    obj = ()
    ident = (obj, obj)
    return FiniteCategory([obj], {ident: (obj, obj)},
                          {(ident, ident): ident}, {obj: ident},
                          dimension_bound=0)


def sift_functor(i, k, D, budget=200_000):
    """The functor rebracketing ``k-1`` simplex coordinates into chains from
    ``i`` to ``i+k``, materialized on truncations.

    The source is the ``(k-1)``-fold product of opposite simplex categories
    truncated at ``D``; the target is the opposite active coslice of the
    edge ``(i, i+k)`` truncated at ``k + (k-1) * D`` so that every image
    chain fits.  Raises when the target would exceed ``budget`` morphisms.
    """
    if k < 1:
        raise CompatibilityError("k must be >= 1")
    if i < 0 or D < 0:
        raise CompatibilityError("i and D must be >= 0")
    n = i + k
    target_dim = k + (k - 1) * D
    edge = DeltaMorphism(1, n, (i, n))
    approx = sum(hom_count(q, n) for q in range(target_dim + 1))
    if approx * approx > budget:
        raise BudgetExceeded(
            f"target coslice at dimension {target_dim} exceeds budget")
    if k == 1:
        source = _terminal_category()
    else:
        source = product_category(*(delta_op_category(D)
                                    for _ in range(k - 1)))
        source.dimension_bound = D
    coslice = active_coslice(edge, target_dim, budget=budget)
    target = coslice.op()

    obj_map = {}
    for src_obj in source.objects:
        profile = src_obj if k > 1 else ()
        values = _sift_chain(i, k, profile)
        q = len(values) - 1
        chain = DeltaMorphism(q, n, values)
        obj_map[src_obj] = (chain, DeltaMorphism(1, q, (0, q)))
    mor_map = {}
    for label, (s, t) in source.morphisms.items():
        if k == 1:
            mor_map[label] = target.identities[obj_map[()]]
            continue
        phis = label
        src_profile, tgt_profile = s, t
        cs, es = obj_map[s]
        ct, et = obj_map[t]
        u = _sift_block_map(src_profile, tgt_profile, phis, cs.src, ct.src)
        assert compose(u, cs) == ct
        mor_map[label] = ((ct, et), u, (cs, es))
    return CategoryFunctor(source, target, obj_map, mor_map)


def sift_target_objects(i, k, D):
    """Cellular chains ``[q] -> [i+k]`` from ``i`` to ``i+k`` with
    ``q <= D``."""
    n = i + k
    return [c for c in cellular_objects(n, D)
            if c.src >= 1 and c.values[0] == i and c.values[c.src] == n]


def sift_comma_category(i, k, D, chain):
    """The comma of the rebracketing functor under one target chain,
    constructed directly (without materializing the target category).

    Objects are pairs ``(profile, u)`` with ``profile`` a source object and
    ``u`` an active map from the profile's chain into ``chain`` matching
    values; morphisms relabel blocks compatibly.
    """
    if chain.values[0] != i or chain.values[chain.src] != i + k:
        raise CompatibilityError("chain endpoints must be i and i+k")
    profiles = list(iterproduct(range(D + 1), repeat=k - 1))
    objects = []
    for profile in profiles:
        values = _sift_chain(i, k, profile)
        q = len(values) - 1
        c_profile = DeltaMorphism(q, i + k, values)
        for u in enumerate_active(q, chain.src):
            if compose(u, chain) == c_profile:
                objects.append((profile, u))
    objset = set(objects)
    morphisms = {}
    for (profile, u) in objects:
        q_src = len(_sift_chain(i, k, profile)) - 1
        for tgt_profile in profiles:
            q_tgt = len(_sift_chain(i, k, tgt_profile)) - 1
            for phis in iterproduct(*(enumerate_morphisms(b, a)
                                      for a, b in zip(profile, tgt_profile))):
                w = _sift_block_map(profile, tgt_profile, phis, q_src, q_tgt)
                u2 = compose(w, u)
                if (tgt_profile, u2) in objset:
                    lab = ((profile, u), phis, (tgt_profile, u2))
                    morphisms[lab] = ((profile, u), (tgt_profile, u2))
    composition = {}
    out_of = {}
    for lab in morphisms:
        out_of.setdefault(lab[0], []).append(lab)
    for (x, phis, y) in morphisms:
        for (y2, psis, z) in out_of.get(y, ()):
            combo = tuple(compose(q, p) for p, q in zip(phis, psis))
            composition[((x, phis, y), (y2, psis, z))] = (x, combo, z)
    identities = {}
    for (profile, u) in objects:
        ident = tuple(identity(a) for a in profile)
        identities[(profile, u)] = ((profile, u), ident, (profile, u))
    return FiniteCategory(objects, morphisms, composition, identities,
                          dimension_bound=D)


def chain_profile(i, k, chain):
    """The block profile of a chain: one less than the multiplicity of each
    intermediate value."""
    counts = [0] * (k + 1)
    for v in chain.values:
        if not i <= v <= i + k:
            raise CompatibilityError(f"value {v} outside [{i}, {i + k}]")
        counts[v - i] += 1
    if any(c == 0 for c in counts):
        raise CompatibilityError("chain misses an intermediate value")
    return tuple(counts[j] - 1 for j in range(1, k))


def sift_comma_report(i, k, D, name="sift-comma-initial"):
    """Check that every comma of the rebracketing functor has an initial
    object, scanning all target chains of length at most ``D``."""
    witnesses = []
    verdict = PASS
    for chain in sift_target_objects(i, k, D):
        comma = sift_comma_category(i, k, D, chain)
        if not comma.objects:
            witnesses.append({"object": list(chain.values), "comma_size": 0,
                              "extremal": None})
            verdict = FAIL
            continue
        initials = comma.initial_objects()
        witnesses.append({
            "object": list(chain.values),
            "comma_size": len(comma.objects),
            "extremal": repr(initials[0]) if initials else None,
        })
        if not initials:
            verdict = FAIL if verdict == FAIL else INCONCLUSIVE
    return {"lemma": name, "truncation": D, "verdict": verdict,
            "witnesses": witnesses}


# ---------------------------------------------------------------------------
# Comma-witness coinitiality checks.
# ---------------------------------------------------------------------------

def check_coinitial_by_witness(functor, side="over", kinds=("initial", "final"),
                               name="comma-witness"):
    """Search every comma of ``functor`` for an extremal object.

    ``side`` selects commas ``F / d`` ("over") or ``d / F`` ("under");
    ``kinds`` lists which extremal objects count as witnesses.  An empty
    comma is a genuine obstruction (FAIL); a nonempty comma without a
    witness leaves the question open (INCONCLUSIVE).
    """
    if side not in ("under", "over"):
        raise CompatibilityError("side must be 'under' or 'over'")
    build = comma_under if side == "under" else comma_over
    verdict = PASS
    witnesses = []
    for d in functor.tgt.objects:
        comma = build(functor, d)
        if not comma.objects:
            witnesses.append({"object": repr(d), "comma_size": 0,
                              "kind": None, "extremal": None})
            verdict = FAIL
            continue
        found_kind, extremal = None, None
        for kind in kinds:
            found = (comma.initial_objects() if kind == "initial"
                     else comma.final_objects())
            if found:
                found_kind, extremal = kind, found[0]
                break
        witnesses.append({"object": repr(d),
                          "comma_size": len(comma.objects),
                          "kind": found_kind,
                          "extremal": repr(extremal) if extremal else None})
        if found_kind is None and verdict != FAIL:
            verdict = INCONCLUSIVE
    truncation = functor.tgt.dimension_bound
    if truncation is None:
        truncation = functor.src.dimension_bound
    return {"lemma": name, "truncation": truncation, "verdict": verdict,
            "witnesses": witnesses}


def phi_star_functor(phi, gamma, D, budget=None):
    """Post-composition with an injective ``phi``, from the cellular active
    coslice under ``gamma`` to the ``phi``-cellular active coslice under
    ``phi after gamma``."""
    if any(phi.values[i + 1] <= phi.values[i] for i in range(phi.src)):
        raise CompatibilityError("phi must be injective")
    if gamma.tgt != phi.src:
        raise CompatibilityError("gamma must land in the source of phi")
    source = active_coslice(gamma, D, budget=budget)
    target = active_coslice(compose(gamma, phi), D,
                            object_predicate=lambda c: is_phi_cellular(c, phi),
                            budget=budget)
    obj_map = {}
    for (c, a) in source.objects:
        image = compose(c, phi)
        if not is_phi_cellular(image, phi):
            raise CompatibilityError(
                f"composite {image.values} is not phi-cellular")
        obj_map[(c, a)] = (image, a)
    mor_map = {}
    for (x, u, y) in source.morphisms:
        mor_map[(x, u, y)] = (obj_map[x], u, obj_map[y])
    return CategoryFunctor(source, target, obj_map, mor_map)


# ---------------------------------------------------------------------------
# The subcategory of Delta / [1] retaining modules but not actions.
# ---------------------------------------------------------------------------

def u_morphism_allowed(src_obj, phi, tgt_obj):
    """Membership rule for the restricted subcategory of ``Delta / [1]``.

    A triangle ``phi`` from ``src_obj = tgt_obj after phi`` to ``tgt_obj``
    is kept when the source sequence is constant, or when the image of
    ``phi`` contains both the last zero position of the target sequence and
    its successor.  Constant sequences keep both plain simplex copies
    intact; the straddling condition keeps windows (all inert triangles)
    but drops the action maps.
    """
    values = src_obj.values
    if all(v == values[0] for v in values):
        return True
    tvals = tgt_obj.values
    zeros = [j for j, v in enumerate(tvals) if v == 0]
    if not zeros:
        return False
    t = zeros[-1]
    image = set(phi.values)
    return t in image and t + 1 in image


def build_U_category(D, budget=None):
    """The subcategory of ``Delta / [1]`` (truncated at ``D``) with all
    objects and only the morphisms passing :func:`u_morphism_allowed`;
    closure under composition is verified during construction."""
    if D < 0:
        raise CompatibilityError("truncation must be >= 0")
    budget = DEFAULT_BUDGET if budget is None else budget
    objects = []
    for m in range(D + 1):
        objects.extend(enumerate_morphisms(m, 1))
    morphisms = {}
    count = 0
    for x in objects:
        for y in objects:
            for u in enumerate_morphisms(x.src, y.src):
                if compose(u, y) != x:
                    continue
                if u_morphism_allowed(x, u, y):
                    morphisms[(x, u, y)] = (x, y)
                    count += 1
                    if count > budget:
                        raise BudgetExceeded("U-category exceeds budget")
    composition = {}
    out_of = {}
    for lab in morphisms:
        out_of.setdefault(lab[0], []).append(lab)
    for (x, u, y) in morphisms:
        for (y2, v, z) in out_of.get(y, ()):
            w = compose(u, v)
            if (x, w, z) not in morphisms:
                raise CompatibilityError(
                    f"not closed under composition: {x.values} -> {z.values} "
                    f"via {w.values}")
            composition[((x, u, y), (y2, v, z))] = (x, w, z)
    identities = {x: (x, identity(x.src), x) for x in objects}
    cat = FiniteCategory(objects, morphisms, composition, identities,
                         dimension_bound=D)
    return cat


__all__ = [
    "SliceObject",
    "GlueResult",
    "LambdaPoset",
    "is_cellular",
    "is_phi_cellular",
    "cellular_objects",
    "slice_category",
    "active_coslice",
    "glue_final_object",
    "lambda_X_poset",
    "sift_functor",
    "sift_target_objects",
    "sift_comma_category",
    "chain_profile",
    "sift_comma_report",
    "check_coinitial_by_witness",
    "phi_star_functor",
    "u_morphism_allowed",
    "build_U_category",
]
