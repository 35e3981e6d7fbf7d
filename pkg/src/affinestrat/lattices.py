"""Integer lattices, cosets, and Hilbert bases of pointed cone monoids.

Lattices are kept as canonical HNF row bases. The Hilbert basis routine is a
direct Gordan-style enumeration: extreme rays scaled into the lattice span a
zonotope whose bounding box contains every irreducible; a greedy pass in
increasing order of a strictly positive functional filters the box down to
the basis. Ambient dimension is guarded; this is exact desk-scale machinery,
not a scalable solver.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Iterable, Sequence

from .errors import DimensionMismatch, GuardViolation
from .geometry import (
    EQ,
    Halfspace,
    RationalPolyhedron,
    extreme_rays,
    holds_int,
    homogenize,
    integer_constraints,
    is_empty,
    positive_functional,
    tighten_to_coset,
)
from .linalg import (
    IVec,
    hnf,
    idot,
    ivec,
    lattice_contains,
    lattice_reduce,
    left_kernel,
    rat_solve,
    right_kernel,
    solve_row_combination,
    vadd,
    vsub,
)

HILBERT_MAX_DIM = 5
HILBERT_MAX_BOX = 2_000_000


def group_generated(vectors: Iterable[Sequence[int]], dim: int) -> tuple[IVec, ...]:
    """Canonical HNF basis rows of the integer span of the vectors."""
    rows = [ivec(v) for v in vectors]
    for r in rows:
        if len(r) != dim:
            raise DimensionMismatch("generator dimension mismatch")
    return hnf(rows)


def full_lattice(dim: int) -> tuple[IVec, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


def lattice_intersect(
    a_rows: Sequence[IVec], b_rows: Sequence[IVec], dim: int
) -> tuple[IVec, ...]:
    """HNF basis of the intersection of two integer lattices."""
    if not a_rows or not b_rows:
        return ()
    stacked = list(a_rows) + list(b_rows)
    kernel = left_kernel(stacked)
    m = len(a_rows)
    out = []
    for z in kernel:
        v = [0] * dim
        for i in range(m):
            for j in range(dim):
                v[j] += z[i] * a_rows[i][j]
        out.append(tuple(v))
    return hnf(out)


class Coset:
    """shift + L for an integer lattice L; the shift is stored reduced."""

    __slots__ = ("shift", "rows", "dim")

    def __init__(self, shift: Sequence[int], rows: Sequence[Sequence[int]], dim: int) -> None:
        basis = hnf([ivec(r) for r in rows])
        object.__setattr__(self, "rows", basis)
        object.__setattr__(self, "shift", lattice_reduce(basis, ivec(shift)))
        object.__setattr__(self, "dim", dim)
        if len(self.shift) != dim:
            raise DimensionMismatch("coset shift dimension mismatch")

    def __setattr__(self, *a):
        raise AttributeError("Coset is immutable")

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, Coset)
            and self.dim == o.dim
            and self.rows == o.rows
            and self.shift == o.shift
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.rows, self.shift))

    def __repr__(self) -> str:
        return f"Coset({list(self.shift)} + <{len(self.rows)} rows>)"

    def contains(self, v: Sequence[int]) -> bool:
        return lattice_contains(self.rows, vsub(ivec(v), self.shift))


def coset_intersect(a: Coset, b: Coset) -> Coset | None:
    """Intersection of two cosets: another coset, or None when disjoint."""
    if a.dim != b.dim:
        raise DimensionMismatch("coset dimension mismatch")
    stacked = list(a.rows) + list(b.rows)
    target = vsub(b.shift, a.shift)
    if not stacked:
        return None if any(target) else a
    z = solve_row_combination(stacked, target)
    if z is None:
        return None
    point = list(a.shift)
    for i in range(len(a.rows)):
        for j in range(a.dim):
            point[j] += z[i] * a.rows[i][j]
    rows = lattice_intersect(a.rows, b.rows, a.dim)
    return Coset(point, rows, a.dim)


def coset_representatives(
    sub_rows: Sequence[IVec], super_rows: Sequence[IVec], dim: int
) -> list[IVec]:
    """Representatives of super/sub for a finite-index sublattice, as vectors.

    Every element of the super lattice is uniquely sub-coset-equivalent to
    exactly one returned vector.
    """
    if len(sub_rows) != len(super_rows):
        raise GuardViolation("sublattice has infinite index")
    k = len(super_rows)
    if k == 0:
        return [tuple([0] * dim)]
    coords = []
    for r in sub_rows:
        trans = [tuple(super_rows[i][j] for i in range(k)) for j in range(dim)]
        x = rat_solve(trans, r)
        if x is None or any(c.denominator != 1 for c in x):
            raise GuardViolation("not a sublattice")
        coords.append(tuple(int(c) for c in x))
    h = hnf(coords)
    if len(h) < k:
        raise GuardViolation("sublattice has infinite index")
    pivots = []
    for row in h:
        j = next(i for i, x in enumerate(row) if x != 0)
        pivots.append(row[j])
    reps = []
    for combo in product(*[range(p) for p in pivots]):
        v = [0] * dim
        for i in range(k):
            for j in range(dim):
                v[j] += combo[i] * super_rows[i][j]
        reps.append(tuple(v))
    return sorted(reps)


# ---------------------------------------------------------------------------
# Hilbert bases


def _span_equalities(lattice_rows: Sequence[IVec], dim: int) -> list[Halfspace]:
    kernel = right_kernel(lattice_rows, dim) if lattice_rows else full_lattice(dim)
    return [Halfspace(z, EQ, 0) for z in kernel]


def _scale_ray_into_lattice(ray: IVec, lattice_rows: Sequence[IVec], dim: int) -> IVec:
    """Smallest positive multiple of the ray lying in the lattice."""
    k = len(lattice_rows)
    trans = [tuple(lattice_rows[i][j] for i in range(k)) for j in range(dim)]
    x = rat_solve(trans, ray)
    if x is None:
        raise GuardViolation("ray does not lie in the lattice span")
    t = 1
    for c in x:
        t = t * c.denominator // math.gcd(t, c.denominator)
    return tuple(t * r for r in ray)


def hilbert_basis(
    cone: RationalPolyhedron, lattice_rows: Sequence[IVec]
) -> tuple[list[IVec], IVec]:
    """Minimal generating set of the monoid cone ∩ L for a pointed rational
    cone, together with an integer functional strictly positive on it.

    The cone must be homogeneous and pointed within the lattice span.
    """
    dim = cone.dim
    if dim > HILBERT_MAX_DIM:
        raise GuardViolation(f"hilbert_basis dimension {dim} exceeds {HILBERT_MAX_DIM}")
    if not cone.is_homogeneous():
        raise GuardViolation("hilbert_basis needs a homogeneous cone")
    restricted = cone.with_constraints(_span_equalities(lattice_rows, dim))
    if not restricted.is_pointed():
        raise GuardViolation("hilbert_basis needs a cone pointed within the lattice span")
    rays = extreme_rays(restricted)
    if not rays:
        return [], (1,) * dim
    scaled = [_scale_ray_into_lattice(r, lattice_rows, dim) for r in rays]
    w = positive_functional(rays, dim)
    ranges = []
    size = 1
    for j in range(dim):
        lo = sum(min(0, u[j]) for u in scaled)
        hi = sum(max(0, u[j]) for u in scaled)
        size *= hi - lo + 1
        if size > HILBERT_MAX_BOX:
            raise GuardViolation("hilbert_basis candidate box too large")
        ranges.append(range(lo, hi + 1))
    table = integer_constraints(restricted)
    candidates = []
    for pt in product(*ranges):
        if any(pt) and holds_int(table, pt) and lattice_contains(lattice_rows, pt):
            candidates.append(pt)
    candidates.sort(key=lambda z: (idot(w, z), z))
    kept: list[IVec] = []
    for z in candidates:
        reducible = False
        for h in kept:
            r = vsub(z, h)
            if not any(r):
                reducible = True
                break
            if holds_int(table, r) and lattice_contains(lattice_rows, r):
                reducible = True
                break
        if not reducible:
            kept.append(z)
    return sorted(kept), w


def module_generators(region: RationalPolyhedron, coset: Coset) -> list[IVec]:
    """Minimal generators of M = region ∩ coset as a module over the monoid
    B = rec(region) ∩ L (L the coset's lattice): the points of M that are not
    another point of M plus a nonzero element of B.

    Requires rec(region) pointed within the lattice span. Finite by Gordan's
    argument; computed as the height-one slice of a Hilbert basis one
    dimension up.
    """
    dim = region.dim
    if coset.dim != dim:
        raise DimensionMismatch("coset dimension mismatch")
    tightened = tighten_to_coset(region, coset.shift, coset.rows)
    if tightened is None:
        return []
    shifted = tightened.translate([-s for s in coset.shift])
    if is_empty(shifted):
        return []
    hom = homogenize(shifted)
    lat_rows = [row + (0,) for row in coset.rows]
    lat_rows.append((0,) * dim + (1,))
    basis, _w = hilbert_basis(hom, hnf(lat_rows))
    out = []
    for h in basis:
        if h[dim] == 1:
            out.append(vadd(h[:dim], coset.shift))
    return sorted(out)
