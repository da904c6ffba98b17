"""Pointed finite sets and the comparison functors from simplex products.

Objects are the pointed sets ``<n> = {0, 1, ..., n}`` with basepoint ``0``.
Morphisms preserve the basepoint but need not be monotone.  The
active/inert classification mirrors the simplex category:

* inert: every point ``i != 0`` has exactly one preimage,
* active: only the basepoint hits the basepoint.

``u1`` turns a simplex-category morphism into a pointed map (reading off
which interval a point falls into), ``mu`` is the smash-product pairing on
pointed sets, and ``un`` combines the two to handle products of simplex
categories of any arity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CompatibilityError
from .simplex import DeltaMorphism, DeltaNMorphism, MorphismClass


@dataclass(frozen=True)
class GammaObject:
    """The pointed set ``<n>`` with basepoint 0."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise CompatibilityError(f"<{self.n}> is not a pointed set")

    def points(self):
        return range(self.n + 1)


@dataclass(frozen=True)
class GammaMorphism:
    """A basepoint-preserving (not necessarily monotone) map ``<src> -> <tgt>``."""

    src: int
    tgt: int
    values: tuple

    def __init__(self, src, tgt, values):
        values = tuple(values)
        if src < 0 or tgt < 0:
            raise CompatibilityError("pointed sets have n >= 0")
        if len(values) != src + 1:
            raise CompatibilityError(
                f"expected {src + 1} values for <{src}>, got {len(values)}")
        if values and values[0] != 0:
            raise CompatibilityError("pointed maps must send 0 to 0")
        for v in values:
            if not 0 <= v <= tgt:
                raise CompatibilityError(f"value {v} outside <{tgt}>")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "tgt", tgt)
        object.__setattr__(self, "values", values)

    def __call__(self, i):
        return self.values[i]

    def to_json(self):
        return {"kind": "gamma", "src": self.src, "tgt": self.tgt,
                "values": list(self.values)}

    @classmethod
    def from_json(cls, data):
        if data.get("kind") != "gamma":
            raise CompatibilityError("not a pointed-set morphism payload")
        return cls(data["src"], data["tgt"], tuple(data["values"]))

    def __repr__(self):
        return f"<{self.src}>-><{self.tgt}>{self.values}"


def gamma_identity(n):
    return GammaMorphism(n, n, tuple(range(n + 1)))


def gamma_compose(f, g):
    """Return ``g after f``."""
    if f.tgt != g.src:
        raise CompatibilityError(f"cannot compose {f} then {g}")
    return GammaMorphism(f.src, g.tgt, tuple(g.values[v] for v in f.values))


def gamma_classify(f):
    """Inert iff every nonzero point has a unique preimage; active iff only
    the basepoint maps to the basepoint.  Both at once forces a bijection
    (reported as ``BOTH``, i.e. inert + active)."""
    fibers = {i: 0 for i in range(f.tgt + 1)}
    for v in f.values:
        fibers[v] += 1
    inert = all(fibers[i] == 1 for i in range(1, f.tgt + 1))
    active = fibers[0] == 1
    if inert and active:
        return MorphismClass.BOTH
    if inert:
        return MorphismClass.INERT
    if active:
        return MorphismClass.ACTIVE
    return MorphismClass.NEUTRAL


def u1(phi):
    """Send a simplex morphism ``phi: [n] -> [m]`` to the pointed map
    ``<m> -> <n>``: a point ``i`` of ``<m>`` goes to the unique ``j`` with
    ``phi(j-1) < i <= phi(j)``, and to the basepoint when no such ``j``
    exists."""
    if not isinstance(phi, DeltaMorphism):
        raise CompatibilityError(f"expected a simplex morphism, got {phi!r}")
    n, m = phi.src, phi.tgt
    values = [0] * (m + 1)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if phi.values[j - 1] < i <= phi.values[j]:
                values[i] = j
                break
    return GammaMorphism(m, n, tuple(values))


def encode_pair(a, b, n):
    """Encode a nonzero pair ``(a, b)`` with ``1 <= b <= n`` as the point
    ``(a-1)*n + b`` of ``<m*n>``; inverse of :func:`decode_pair`."""
    if a < 1 or b < 1 or b > n:
        raise CompatibilityError(f"pair ({a}, {b}) out of range for n={n}")
    return (a - 1) * n + b


def decode_pair(x, n):
    """Inverse of :func:`encode_pair` on nonzero points."""
    if x < 1:
        raise CompatibilityError("only nonzero points encode pairs")
    return (x - 1) // n + 1, (x - 1) % n + 1


def mu(f, g):
    """The pairing ``<m> x <n> -> <m*n>`` on morphisms: the point encoding
    ``(a, b)`` maps to the encoding of ``(f(a), g(b))``, or to the basepoint
    if either coordinate dies."""
    m, n = f.src, g.src
    mp, np_ = f.tgt, g.tgt
    values = [0] * (m * n + 1)
    for a in range(1, m + 1):
        for b in range(1, n + 1):
            fa, gb = f.values[a], g.values[b]
            if fa == 0 or gb == 0:
                v = 0
            else:
                v = encode_pair(fa, gb, np_)
            values[encode_pair(a, b, n)] = v
    return GammaMorphism(m * n, mp * np_, tuple(values))


def un(phi):
    """Iterate :func:`u1` across the components of a product-of-simplex
    morphism via :func:`mu`; arity 0 gives the identity of ``<1>``."""
    if not isinstance(phi, DeltaNMorphism):
        raise CompatibilityError(f"expected a product morphism, got {phi!r}")
    result = gamma_identity(1)
    for comp in reversed(phi.components):
        result = mu(u1(comp), result)
    return result
