"""Finitely generated subsemigroups of Z^d: membership, saturation, and
disjoint stratification of monomial ideals and set differences.

A semigroup here is pointed (its cone contains no line) and given by finitely
many integer generators. The central routine, stratify_difference, peels a
set of the form (union of translates of the semigroup) minus (another union)
into finitely many disjoint translated faces. Everything reduces to that
engine: conductor complements, ideal decompositions, and the downstream
stratification pipeline.
"""

from __future__ import annotations

import heapq
from itertools import product
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyInputError, GuardViolation
from .geometry import (
    GE,
    RationalPolyhedron,
    cone_from_generators,
    is_empty,
    positive_functional,
)
from .lattices import group_generated, hilbert_basis
from .linalg import (
    IVec,
    idot,
    ivec,
    lattice_contains,
    lattice_reduce,
    rat_rank,
    vadd,
    vsub,
)

CONDUCTOR_SEARCH_CAP = 100_000
UPSET_BOX_CAP = 500_000
SLICE_TABLE_CAP = 200_000


class AffineSemigroup:
    """Subsemigroup of Z^dim generated by finitely many vectors.

    Pointedness is enforced at construction. Derived data (generated group,
    cone, facets, Hilbert basis of the saturation, membership verdicts) is
    computed on demand and cached on the instance; use the affine_semigroup
    factory so equal generator sets share one instance.
    """

    __slots__ = ("dim", "gens", "functional", "_cache", "_member")

    def __init__(self, dim: int, gens: Sequence[Sequence[int]]) -> None:
        canon = tuple(sorted({ivec(g) for g in gens if any(g)}))
        for g in canon:
            if len(g) != dim:
                raise DimensionMismatch("generator dimension mismatch")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "gens", canon)
        object.__setattr__(self, "functional", positive_functional(canon, dim))
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_member", {})

    def __setattr__(self, *a):
        raise AttributeError("AffineSemigroup is immutable")

    def __eq__(self, o) -> bool:
        return isinstance(o, AffineSemigroup) and self.dim == o.dim and self.gens == o.gens

    def __hash__(self) -> int:
        return hash((self.dim, self.gens))

    def __repr__(self) -> str:
        return f"AffineSemigroup(dim={self.dim}, gens={list(self.gens)})"

    @property
    def lattice_rows(self) -> tuple[IVec, ...]:
        """HNF basis of the group generated (differences of elements)."""
        if "lattice" not in self._cache:
            self._cache["lattice"] = group_generated(self.gens, self.dim)
        return self._cache["lattice"]

    @property
    def cone(self) -> RationalPolyhedron:
        """Irredundant H-representation of the real cone over the generators."""
        if "cone" not in self._cache:
            self._cache["cone"] = cone_from_generators(self.gens, self.dim)
        return self._cache["cone"]

    @property
    def facets(self) -> tuple[IVec, ...]:
        """Primitive facet normals of the cone, in canonical order."""
        if "facets" not in self._cache:
            self._cache["facets"] = tuple(
                ivec(c.normal) for c in self.cone.constraints if c.rel == GE
            )
        return self._cache["facets"]

    @property
    def cone_dim(self) -> int:
        if "cone_dim" not in self._cache:
            self._cache["cone_dim"] = rat_rank(list(self.gens))
        return self._cache["cone_dim"]

    def saturation_generators(self) -> tuple[IVec, ...]:
        """Hilbert basis of cone ∩ generated group: generators of the
        saturation."""
        if "sat_gens" not in self._cache:
            basis, _w = hilbert_basis(self.cone, self.lattice_rows)
            self._cache["sat_gens"] = tuple(basis)
        return self._cache["sat_gens"]

    @property
    def is_normal(self) -> bool:
        if "is_normal" not in self._cache:
            self._cache["is_normal"] = all(
                self.contains(h) for h in self.saturation_generators()
            )
        return self._cache["is_normal"]

    def saturation_contains(self, v: Sequence[int]) -> bool:
        """Membership in cone ∩ generated group (the saturation)."""
        v = ivec(v)
        return lattice_contains(self.lattice_rows, v) and self.cone.contains(v)

    def contains(self, v: Sequence[int]) -> bool:
        """Exact semigroup membership: v is a sum of generators."""
        v = ivec(v)
        if len(v) != self.dim:
            raise DimensionMismatch("membership query dimension mismatch")
        if not any(v):
            return True
        memo = self._member
        got = memo.get(v)
        if got is not None:
            return got
        if not self.saturation_contains(v):
            memo[v] = False
            return False
        if self._cache.get("is_normal"):
            memo[v] = True
            return True
        cone = self.cone
        rows = self.lattice_rows

        def search(x: IVec) -> bool:
            if not any(x):
                return True
            hit = memo.get(x)
            if hit is not None:
                return hit
            # provisional verdict is safe: generator steps strictly decrease
            # a positive functional, so x cannot appear in its own subtree
            memo[x] = False
            for g in self.gens:
                y = vsub(x, g)
                if lattice_contains(rows, y) and cone.contains(y) and search(y):
                    memo[x] = True
                    return True
            return False

        return search(v)

    def face(self, normal: Sequence[int]) -> "AffineSemigroup":
        """Subsemigroup of generators on which the functional vanishes."""
        return affine_semigroup(
            self.dim, [g for g in self.gens if idot(normal, g) == 0]
        )

    def enumerate(self) -> Iterable[IVec]:
        """Yield elements in increasing (functional value, lex) order."""
        w = self.functional
        zero = (0,) * self.dim
        heap = [(0, zero)]
        seen = {zero}
        while heap:
            val, x = heapq.heappop(heap)
            yield x
            for g in self.gens:
                y = vadd(x, g)
                if y not in seen:
                    seen.add(y)
                    heapq.heappush(heap, (val + idot(w, g), y))


_SEMIGROUP_CACHE: dict[tuple[int, tuple[IVec, ...]], AffineSemigroup] = {}


def affine_semigroup(dim: int, gens: Sequence[Sequence[int]]) -> AffineSemigroup:
    """Shared-instance constructor; equal generator sets get one object so
    cached cones, Hilbert bases, and membership verdicts are reused."""
    canon = tuple(sorted({ivec(g) for g in gens if any(g)}))
    key = (dim, canon)
    got = _SEMIGROUP_CACHE.get(key)
    if got is None:
        got = AffineSemigroup(dim, canon)
        _SEMIGROUP_CACHE[key] = got
    return got


# ---------------------------------------------------------------------------
# saturation data: generators, module generators, conductor


class SaturationData:
    """Saturation of a semigroup: generators of cone ∩ group, the minimal
    module generators of the saturation over the semigroup, and the
    conductor, the earliest element whose translate of the saturation lands
    back inside the semigroup."""

    __slots__ = ("semigroup", "sat_gens", "module_gens", "conductor", "is_normal")

    def __init__(self, semigroup, sat_gens, module_gens, conductor, is_normal) -> None:
        object.__setattr__(self, "semigroup", semigroup)
        object.__setattr__(self, "sat_gens", sat_gens)
        object.__setattr__(self, "module_gens", module_gens)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "is_normal", is_normal)

    def __setattr__(self, *a):
        raise AttributeError("SaturationData is immutable")

    def __repr__(self) -> str:
        return (
            f"SaturationData(conductor={self.conductor}, "
            f"module_gens={list(self.module_gens)}, normal={self.is_normal})"
        )


def saturation(semi: AffineSemigroup, verify: bool = True) -> SaturationData:
    """Compute the saturation of a pointed affine semigroup.

    module_gens are the minimal elements of the saturation as a module over
    the semigroup: every saturation point is one of them plus a semigroup
    element, and none is another plus a nonzero semigroup element. The
    conductor is found by enumerating the semigroup in increasing
    (functional, lex) order and returning the first element aa with
    aa + saturation ⊆ semigroup; with verify=True the defining property is
    re-checked on the result.
    """
    if "saturation" in semi._cache:
        return semi._cache["saturation"]
    sat_gens = semi.saturation_generators()
    dim = semi.dim

    # every minimal module element lies in the half-open zonotope of the
    # generators, hence inside its integer bounding box
    ranges = []
    for j in range(dim):
        lo = sum(min(0, g[j]) for g in semi.gens)
        hi = sum(max(0, g[j]) for g in semi.gens)
        ranges.append(range(lo, hi + 1))
    module_gens = []
    for pt in product(*ranges):
        if not semi.saturation_contains(pt):
            continue
        if all(not semi.saturation_contains(vsub(pt, g)) for g in semi.gens):
            module_gens.append(pt)
    module_gens.sort()

    is_normal = all(semi.contains(h) for h in sat_gens)
    semi._cache.setdefault("is_normal", is_normal)

    conductor = None
    count = 0
    for aa in semi.enumerate():
        count += 1
        if count > CONDUCTOR_SEARCH_CAP:
            raise GuardViolation("conductor search exceeded its cap")
        if all(semi.contains(vadd(aa, m)) for m in module_gens):
            conductor = aa
            break
    assert conductor is not None
    if verify:
        if not all(semi.contains(vadd(conductor, m)) for m in module_gens):
            raise GuardViolation("conductor verification failed")
        if is_normal and any(conductor):
            raise GuardViolation("normal semigroup must have conductor zero")
    data = SaturationData(semi, tuple(sat_gens), tuple(module_gens), conductor, is_normal)
    semi._cache["saturation"] = data
    return data


# ---------------------------------------------------------------------------
# slice tables and upset generators


def slice_sums(
    gens: Sequence[IVec], phi: Sequence[int], value: int, dim: int
) -> list[IVec]:
    """Distinct sums of generator multisets whose phi-total equals value,
    using only generators with positive phi. With the zero-phi generators
    spanning the face, the slice {x in the semigroup : phi(x) = value} is
    exactly the union of (sum + face) over these sums."""
    table = _slice_table(gens, phi, value, dim)
    return sorted(table.get(value, ()))


def _slice_table(
    gens: Sequence[IVec], phi: Sequence[int], max_value: int, dim: int
) -> dict[int, set[IVec]]:
    pos = [(idot(phi, g), g) for g in gens if idot(phi, g) > 0]
    zero = (0,) * dim
    table: dict[int, set[IVec]] = {0: {zero}}
    total = 1
    for v in range(1, max_value + 1):
        acc: set[IVec] = set()
        for val, g in pos:
            if val <= v:
                for s in table.get(v - val, ()):
                    acc.add(vadd(s, g))
        if acc:
            table[v] = acc
            total += len(acc)
            if total > SLICE_TABLE_CAP:
                raise GuardViolation("slice table exceeded its cap")
    return table


def _upset_generators(
    face_gens: Sequence[IVec], phis: Sequence[IVec], ds: Sequence[int], dim: int
) -> list[IVec]:
    """Generators of the ideal {f in the face semigroup : phi_j(f) >= d_j for
    all j} as a module over the face semigroup. The face generators have
    nonnegative phi values, so the set is an ideal; minimality is computed in
    the free monoid over the generators and mapped down, which may produce a
    redundant (never incomplete) generating set."""
    if all(d <= 0 for d in ds):
        return [(0,) * dim]
    if not face_gens:
        return []
    m = len(face_gens)
    w = [[idot(phi, g) for g in face_gens] for phi in phis]
    bounds = []
    for i in range(m):
        b = 0
        for j in range(len(phis)):
            if w[j][i] > 0 and ds[j] > 0:
                b = max(b, -(-ds[j] // w[j][i]))
        bounds.append(b)
    size = 1
    for b in bounds:
        size *= b + 1
        if size > UPSET_BOX_CAP:
            raise GuardViolation("upset generator box exceeded its cap")
    feasible = []
    for e in product(*[range(b + 1) for b in bounds]):
        if all(
            sum(e[i] * w[j][i] for i in range(m)) >= ds[j] for j in range(len(phis))
        ):
            feasible.append(e)
    minimal = [
        e
        for e in feasible
        if not any(f != e and all(a <= b for a, b in zip(f, e)) for f in feasible)
    ]
    out = set()
    for e in minimal:
        pt = [0] * dim
        for i in range(m):
            for j in range(dim):
                pt[j] += e[i] * face_gens[i][j]
        out.add(tuple(pt))
    return sorted(out)


# ---------------------------------------------------------------------------
# the peeling engine


def stratify_difference(
    semi: AffineSemigroup,
    plus: Sequence[Sequence[int]],
    minus: Sequence[Sequence[int]],
) -> list[tuple[IVec, tuple[IVec, ...]]]:
    """Decompose (union of p + semigroup over plus) minus (union over minus)
    into disjoint pieces (t, face generators), each piece being exactly
    t + the face subsemigroup. Faces include the semigroup itself and the
    zero face; the output is sorted and deterministic.
    """
    out: list[tuple[IVec, tuple[IVec, ...]]] = []
    _stratify(semi, [ivec(p) for p in plus], [ivec(n) for n in minus], out)
    return sorted(out)


def _stratify(
    semi: AffineSemigroup, plus: list[IVec], minus: list[IVec], out: list
) -> None:
    if not semi.gens:
        for p in sorted(set(plus) - set(minus)):
            out.append((p, ()))
        return
    rows = semi.lattice_rows
    groups: dict[IVec, tuple[list[IVec], list[IVec]]] = {}
    for p in plus:
        groups.setdefault(lattice_reduce(rows, p), ([], []))[0].append(p)
    for n in minus:
        key = lattice_reduce(rows, n)
        if key in groups:
            groups[key][1].append(n)
    for key in sorted(groups):
        gp, gn = groups[key]
        _stratify_coset(semi, gp, gn, out)


def _stratify_coset(
    semi: AffineSemigroup, plus: list[IVec], minus: list[IVec], out: list
) -> None:
    plus = sorted(set(plus))
    minus = sorted(set(minus))
    kept_plus = []
    for p in plus:
        if any(semi.contains(vsub(p, n)) for n in minus):
            continue
        if any(q != p and semi.contains(vsub(p, q)) for q in plus):
            continue
        kept_plus.append(p)
    plus = kept_plus
    if not plus:
        return
    cone = semi.cone
    kept_minus = []
    for n in minus:
        if any(q != n and semi.contains(vsub(n, q)) for q in minus):
            continue
        if all(
            is_empty(cone.translate(n).intersect(cone.translate(p))) for p in plus
        ):
            continue
        kept_minus.append(n)
    minus = kept_minus

    if not minus:
        if len(plus) == 1:
            out.append((plus[0], semi.gens))
            return
        w = semi.functional
        pivot = min(plus, key=lambda p: (idot(w, p), p))
        out.append((pivot, semi.gens))
        _stratify_coset(semi, [p for p in plus if p != pivot], [pivot], out)
        return

    aa = saturation(semi).conductor
    facets = semi.facets
    thresholds = [max(idot(phi, vadd(n, aa)) for n in minus) for phi in facets]
    for k, phi in enumerate(facets):
        face_gens = tuple(g for g in semi.gens if idot(phi, g) == 0)
        face = affine_semigroup(semi.dim, face_gens)
        c_k = thresholds[k]
        bases_p = [idot(phi, p) for p in plus]
        bases_n = [idot(phi, n) for n in minus]
        min_base = min(bases_p + bases_n)
        if c_k <= min_base:
            continue
        table = _slice_table(semi.gens, phi, c_k - 1 - min_base, semi.dim)
        for v in range(min_base, c_k):
            plus_f: list[IVec] = []
            for p, base in zip(plus, bases_p):
                s = v - base
                if s < 0 or s not in table:
                    continue
                for t in sorted(table[s]):
                    root = vadd(p, t)
                    ds = [
                        thresholds[j] - idot(facets[j], root) for j in range(k)
                    ]
                    for u in _upset_generators(face_gens, facets[:k], ds, semi.dim):
                        plus_f.append(vadd(root, u))
            if not plus_f:
                continue
            minus_f: list[IVec] = []
            for n, base in zip(minus, bases_n):
                s = v - base
                if s < 0 or s not in table:
                    continue
                for t in sorted(table[s]):
                    minus_f.append(vadd(n, t))
            _stratify(face, plus_f, minus_f, out)


# ---------------------------------------------------------------------------
# derived decompositions


def complement_decompose(semi: AffineSemigroup) -> list[tuple[IVec, tuple[IVec, ...]]]:
    """Disjoint pieces (t, face generators) whose union is
    semigroup ∖ (conductor + saturation): the part of the semigroup below its
    conductor. All pieces use proper faces of the cone. Empty for normal
    semigroups with conductor zero."""
    sat = saturation(semi)
    aa = sat.conductor
    facets = semi.facets
    out: list[tuple[IVec, tuple[IVec, ...]]] = []
    if not facets:
        return []
    thresholds = [idot(phi, aa) for phi in facets]
    for k, phi in enumerate(facets):
        face_gens = tuple(g for g in semi.gens if idot(phi, g) == 0)
        face = affine_semigroup(semi.dim, face_gens)
        c_k = thresholds[k]
        if c_k <= 0:
            continue
        table = _slice_table(semi.gens, phi, c_k - 1, semi.dim)
        for v in range(0, c_k):
            plus_f: list[IVec] = []
            for t in sorted(table.get(v, ())):
                ds = [thresholds[j] - idot(facets[j], t) for j in range(k)]
                for u in _upset_generators(face_gens, facets[:k], ds, semi.dim):
                    plus_f.append(vadd(t, u))
            if plus_f:
                _stratify(face, plus_f, [], out)
    return sorted(out)


def ideal_stratify(
    semi: AffineSemigroup, ideal_gens: Sequence[Sequence[int]]
) -> list[tuple[IVec, tuple[IVec, ...]]]:
    """Disjoint translated-face decomposition of the ideal
    union of (g + semigroup) over the given generators."""
    return stratify_difference(semi, list(ideal_gens), [])


def stanley_decompose(
    n: int, ideal_gens: Sequence[Sequence[int]]
) -> list[tuple[IVec, tuple[int, ...]]]:
    """Classic disjoint decomposition of a monomial ideal in N^n into pieces
    (translate, free coordinate set), by slicing on the first coordinate.
    Independent of the general engine; used to cross-check it."""
    gens = sorted({ivec(g) for g in ideal_gens})
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch("ideal generator dimension mismatch")
        if any(x < 0 for x in g):
            raise EmptyInputError("ideal generators must be nonnegative")
    if not gens:
        return []
    if n == 0:
        return [((), ())]
    vmax = max(g[0] for g in gens)
    out: list[tuple[IVec, tuple[int, ...]]] = []
    for v in range(vmax):
        sliced = [g[1:] for g in gens if g[0] <= v]
        for t, free in stanley_decompose(n - 1, sliced):
            out.append(((v,) + t, tuple(j + 1 for j in free)))
    tail = [g[1:] for g in gens]
    for t, free in stanley_decompose(n - 1, tail):
        out.append(((vmax,) + t, (0,) + tuple(j + 1 for j in free)))
    return sorted(out)
