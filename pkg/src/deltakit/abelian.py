"""Finitely presented abelian groups and exact integer linear algebra.

A module here is a cokernel ``Z^g / L`` where the lattice ``L`` is spanned by
integer relation rows, optionally over a finite ground ring ``Z/m`` (which
just contributes the relations ``m * e_i``).  Smith normal form puts the
relation lattice into diagonal shape, which gives canonical coordinates for
elements, the invariant factors, and a decision procedure for equality of
maps.  Everything is exact integer arithmetic; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, CompatibilityError

#: Elements of a single module are only enumerated below this cardinality.
CARRIER_CAP = 2**12


def xgcd(a, b):
    """Extended gcd: returns ``(g, x, y)`` with ``g = a*x + b*y``, ``g >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def echelon_rows(rows, ncols):
    """Integer row reduction: returns rows spanning the same lattice, one
    pivot per column.  Used to shrink large relation sets before Smith
    reduction."""
    basis = {}
    for row in rows:
        row = list(row)
        col = 0
        while col < ncols:
            if row[col] == 0:
                col += 1
                continue
            if col in basis:
                b = basis[col]
                g, u, v = xgcd(b[col], row[col])
                p, q = b[col] // g, row[col] // g
                basis[col] = [u * x + v * y for x, y in zip(b, row)]
                row = [p * y - q * x for x, y in zip(b, row)]
            else:
                if row[col] < 0:
                    row = [-x for x in row]
                basis[col] = row
                break
    return [list(basis[c]) for c in sorted(basis)]


class SmithForm:
    """Smith normal form of an integer matrix.

    For a matrix ``A`` whose rows span a lattice in ``Z^c``, ``diag`` lists
    the diagonal entries ``d_1 | d_2 | ...`` (padded with zeros to length
    ``c``), ``to_new`` maps original coordinates to diagonal coordinates and
    ``to_old`` maps back.  When ``track_rows`` is set, ``row_ops`` holds the
    accumulated left transform so linear systems can be solved.
    """

    def __init__(self, rows, ncols, track_rows=False, pre_reduce=True):
        if pre_reduce and not track_rows:
            rows = echelon_rows(rows, ncols)
        a = [list(r) for r in rows]
        nrows = len(a)
        to_new = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        to_old = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        row_ops = ([[int(i == j) for j in range(nrows)] for i in range(nrows)]
                   if track_rows else None)

        def col_op(j, i, k):
            # column j += k * column i
            for r in a:
                r[j] += k * r[i]
            for r in range(ncols):
                to_new[j][r] += k * to_new[i][r]
            for r in range(ncols):
                to_old[r][i] -= k * to_old[r][j]

        def col_swap(i, j):
            for r in a:
                r[i], r[j] = r[j], r[i]
            to_new[i], to_new[j] = to_new[j], to_new[i]
            for r in range(ncols):
                to_old[r][i], to_old[r][j] = to_old[r][j], to_old[r][i]

        def row_op(j, i, k):
            a[j] = [x + k * y for x, y in zip(a[j], a[i])]
            if row_ops is not None:
                row_ops[j] = [x + k * y for x, y in zip(row_ops[j], row_ops[i])]

        def row_swap(i, j):
            a[i], a[j] = a[j], a[i]
            if row_ops is not None:
                row_ops[i], row_ops[j] = row_ops[j], row_ops[i]

        def row_negate(i):
            a[i] = [-x for x in a[i]]
            if row_ops is not None:
                row_ops[i] = [-x for x in row_ops[i]]

        t = 0
        while t < min(nrows, ncols):
            # locate a minimal nonzero pivot in the remaining block
            pivot = None
            for r in range(t, nrows):
                for c in range(t, ncols):
                    v = abs(a[r][c])
                    if v and (pivot is None or v < abs(a[pivot[0]][pivot[1]])):
                        pivot = (r, c)
            if pivot is None:
                break
            r, c = pivot
            if r != t:
                row_swap(r, t)
            if c != t:
                col_swap(c, t)
            if a[t][t] < 0:
                row_negate(t)
            dirty = False
            for r in range(t + 1, nrows):
                if a[r][t]:
                    q = a[r][t] // a[t][t]
                    row_op(r, t, -q)
                    if a[r][t]:
                        dirty = True
            for c in range(t + 1, ncols):
                if a[t][c]:
                    q = a[t][c] // a[t][t]
                    col_op(c, t, -q)
                    if a[t][c]:
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block
            offender = None
            for r in range(t + 1, nrows):
                for c in range(t + 1, ncols):
                    if a[r][c] % a[t][t]:
                        offender = (r, c)
                        break
                if offender:
                    break
            if offender:
                col_op(t, offender[1], 1)
                continue
            t += 1

        diag = [a[j][j] if j < min(nrows, ncols) else 0 for j in range(ncols)]
        self.diag = diag
        self.to_new = to_new
        self.to_old = to_old
        self.row_ops = row_ops
        self.nrows = nrows
        self._final = a

    def new_coords(self, x):
        return [sum(row[i] * x[i] for i in range(len(x))) for row in self.to_new]

    def old_coords(self, y):
        return [sum(row[j] * y[j] for j in range(len(y))) for row in self.to_old]


def solve_integer_system(rows, ncols, target):
    """Solve ``A z = target`` over the integers; returns one solution vector
    of length ``ncols`` or ``None``."""
    sf = SmithForm(rows, ncols, track_rows=True, pre_reduce=False)
    t = [sum(srow[i] * target[i] for i in range(len(target)))
         for srow in sf.row_ops] if sf.row_ops else []
    w = [0] * ncols
    for j in range(sf.nrows):
        d = sf.diag[j] if j < ncols else 0
        if d:
            if t[j] % d:
                return None
            w[j] = t[j] // d
        elif t[j]:
            return None
    # the accumulated column transform C satisfies A_final = S * A * C and
    # relates solutions by z = C w; C is the transpose of ``to_new``
    return [sum(sf.to_new[j][i] * w[j] for j in range(ncols))
            for i in range(ncols)]


@dataclass(frozen=True)
class FpModule:
    """A finitely presented module over ``Z`` (``ground = 0``) or ``Z/m``.

    ``relations`` are rows of length ``ngens``; the ground ring contributes
    ``ground * e_i`` implicitly.  Elements are canonical coordinate tuples in
    the Smith basis (coordinates with invariant factor 1 are dropped).
    """

    ground: int
    ngens: int
    relations: tuple

    def __init__(self, ground, ngens, relations=()):
        if ground < 0 or ngens < 0:
            raise CompatibilityError("ground and generator count must be >= 0")
        relations = tuple(tuple(int(v) for v in row) for row in relations)
        for row in relations:
            if len(row) != ngens:
                raise CompatibilityError(
                    f"relation {row} has wrong length (ngens={ngens})")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "ngens", ngens)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "_cache", {})

    # -- presentation bookkeeping -----------------------------------------

    def all_relations(self):
        ground_rows = []
        if self.ground:
            for i in range(self.ngens):
                row = [0] * self.ngens
                row[i] = self.ground
                ground_rows.append(tuple(row))
        return list(self.relations) + ground_rows

    @property
    def _smith(self):
        if "smith" not in self._cache:
            self._cache["smith"] = SmithForm(self.all_relations(), self.ngens)
        return self._cache["smith"]

    @property
    def _kept(self):
        if "kept" not in self._cache:
            self._cache["kept"] = [j for j, d in enumerate(self._smith.diag)
                                   if d != 1]
        return self._cache["kept"]

    @property
    def moduli(self):
        """Moduli of the canonical coordinates (0 means a free coordinate)."""
        return tuple(self._smith.diag[j] for j in self._kept)

    @property
    def invariant_factors(self):
        """Nontrivial invariant factors, in divisibility order (0 = free)."""
        return tuple(d for d in self.moduli)

    def is_finite(self):
        return all(d != 0 for d in self.moduli)

    def order(self):
        if not self.is_finite():
            raise CompatibilityError("module is infinite")
        n = 1
        for d in self.moduli:
            n *= d
        return n

    def is_zero(self):
        return not self.moduli

    # -- elements ----------------------------------------------------------

    def reduce(self, gen_coords):
        """Canonical form of the element with the given generator coordinates."""
        if len(gen_coords) != self.ngens:
            raise CompatibilityError("coordinate length mismatch")
        y = self._smith.new_coords(list(gen_coords))
        out = []
        for j in self._kept:
            d = self._smith.diag[j]
            out.append(y[j] % d if d else y[j])
        return tuple(out)

    def lift(self, canon):
        """Generator coordinates of a canonical element (a chosen lift)."""
        y = [0] * self.ngens
        for j, v in zip(self._kept, canon):
            y[j] = v
        return tuple(self._smith.old_coords(y))

    def zero(self):
        return tuple(0 for _ in self._kept)

    def add(self, a, b):
        return tuple((x + y) % d if d else x + y
                     for x, y, d in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % d if d else -x for x, d in zip(a, self.moduli))

    def smul(self, k, a):
        return tuple((k * x) % d if d else k * x
                     for x, d in zip(a, self.moduli))

    def generators(self):
        """Canonical forms of the presentation generators."""
        out = []
        for i in range(self.ngens):
            coords = [0] * self.ngens
            coords[i] = 1
            out.append(self.reduce(coords))
        return out

    def elements(self, cap=CARRIER_CAP):
        if not self.is_finite():
            raise CompatibilityError("cannot enumerate an infinite module")
        n = self.order()
        if n > cap:
            raise BudgetExceeded(f"carrier of size {n} exceeds cap {cap}")
        return [tuple(combo) for combo in product(*(range(d) for d in self.moduli))]

    def element_order(self, a):
        """Additive order of a canonical element (finite modules only)."""
        n = 1
        for x, d in zip(a, self.moduli):
            if d == 0:
                raise CompatibilityError("free coordinate has infinite order")
            if x:
                g = xgcd(x, d)[0]
                k = d // g
                n = n * k // xgcd(n, k)[0]
        return n

    @classmethod
    def cyclic(cls, m, ground=0):
        """The cyclic module Z/m (m = 0 gives Z) over the given ground ring."""
        rels = ((m,),) if m else ()
        return cls(ground, 1, rels)

    @classmethod
    def of_invariants(cls, factors, ground=0):
        n = len(factors)
        rels = []
        for i, d in enumerate(factors):
            if d:
                row = [0] * n
                row[i] = d
                rels.append(tuple(row))
        return cls(ground, n, tuple(rels))

    def to_json(self):
        return {"ground": self.ground, "ngens": self.ngens,
                "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data):
        return cls(data["ground"], data["ngens"],
                   tuple(tuple(r) for r in data.get("relations", ())))


def same_invariants(m, n):
    """True when two modules have the same nontrivial invariant factors."""
    return sorted(m.invariant_factors) == sorted(n.invariant_factors)


class ModuleMap:
    """An additive map between finitely presented modules, stored as the
    images of the source generators (in target generator coordinates)."""

    def __init__(self, src, tgt, columns, check=True):
        self.src = src
        self.tgt = tgt
        self.columns = tuple(tuple(int(v) for v in col) for col in columns)
        if len(self.columns) != src.ngens:
            raise CompatibilityError("one column per source generator required")
        for col in self.columns:
            if len(col) != tgt.ngens:
                raise CompatibilityError("column length must match target gens")
        if check:
            self._check_well_defined()

    def _check_well_defined(self):
        zero = self.tgt.zero()
        for row in self.src.all_relations():
            image = [0] * self.tgt.ngens
            for i, coef in enumerate(row):
                if coef:
                    for j in range(self.tgt.ngens):
                        image[j] += coef * self.columns[i][j]
            if self.tgt.reduce(image) != zero:
                raise CompatibilityError(
                    f"map does not kill source relation {row}")

    def apply(self, canon):
        x = self.src.lift(canon)
        image = [0] * self.tgt.ngens
        for i, coef in enumerate(x):
            if coef:
                for j in range(self.tgt.ngens):
                    image[j] += coef * self.columns[i][j]
        return self.tgt.reduce(image)

    def compose(self, other):
        """Return ``other after self``; requires ``self.tgt == other.src``."""
        if self.tgt is not other.src and self.tgt != other.src:
            raise CompatibilityError("maps do not compose")
        cols = []
        for col in self.columns:
            image = [0] * other.tgt.ngens
            for i, coef in enumerate(col):
                if coef:
                    for j in range(other.tgt.ngens):
                        image[j] += coef * other.columns[i][j]
            cols.append(tuple(image))
        return ModuleMap(self.src, other.tgt, cols, check=False)

    @classmethod
    def identity(cls, module):
        cols = []
        for i in range(module.ngens):
            col = [0] * module.ngens
            col[i] = 1
            cols.append(tuple(col))
        return cls(module, module, cols, check=False)

    def equals_on_elements(self, other, cap=CARRIER_CAP):
        if self.src != other.src or self.tgt != other.tgt:
            return False
        return all(self.apply(x) == other.apply(x)
                   for x in self.src.elements(cap=cap))

    def is_bijective(self, cap=CARRIER_CAP):
        elems = self.src.elements(cap=cap)
        images = {self.apply(x) for x in elems}
        return len(images) == len(elems) and len(images) == self.tgt.order()


class BilinearMap:
    """A bilinear map ``src1 x src2 -> tgt`` stored on generator pairs."""

    def __init__(self, src1, src2, tgt, table, check=True):
        self.src1 = src1
        self.src2 = src2
        self.tgt = tgt
        self.table = tuple(tuple(tuple(int(v) for v in cell) for cell in row)
                           for row in table)
        if len(self.table) != src1.ngens or any(len(r) != src2.ngens
                                                for r in self.table):
            raise CompatibilityError("table shape must be (gens1, gens2)")
        if check:
            self._check_well_defined()

    def _check_well_defined(self):
        zero = self.tgt.zero()
        for row in self.src1.all_relations():
            for j in range(self.src2.ngens):
                image = [0] * self.tgt.ngens
                for i, coef in enumerate(row):
                    if coef:
                        for t in range(self.tgt.ngens):
                            image[t] += coef * self.table[i][j][t]
                if self.tgt.reduce(image) != zero:
                    raise CompatibilityError(
                        f"bilinear map does not kill relation {row} in slot 1")
        for row in self.src2.all_relations():
            for i in range(self.src1.ngens):
                image = [0] * self.tgt.ngens
                for j, coef in enumerate(row):
                    if coef:
                        for t in range(self.tgt.ngens):
                            image[t] += coef * self.table[i][j][t]
                if self.tgt.reduce(image) != zero:
                    raise CompatibilityError(
                        f"bilinear map does not kill relation {row} in slot 2")

    def apply(self, a, b):
        x = self.src1.lift(a)
        y = self.src2.lift(b)
        image = [0] * self.tgt.ngens
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cell = self.table[i][j]
                for t in range(self.tgt.ngens):
                    image[t] += xi * yj * cell[t]
        return self.tgt.reduce(image)


def module_iso(m, n):
    """Explicit isomorphism witness between modules with equal invariant
    factors, or ``None``.  The witness matches up the Smith bases."""
    if not same_invariants(m, n):
        return None
    # pair off coordinates with equal moduli
    pairing = {}
    used = set()
    for i, d in enumerate(m.moduli):
        for j, e in enumerate(n.moduli):
            if j not in used and d == e:
                pairing[i] = j
                used.add(j)
                break
    cols = []
    for i in range(m.ngens):
        coords = [0] * m.ngens
        coords[i] = 1
        canon = m.reduce(coords)
        target_canon = [0] * len(n.moduli)
        for a, v in enumerate(canon):
            target_canon[pairing[a]] = v
        cols.append(n.lift(tuple(target_canon)))
    return ModuleMap(m, n, cols)
