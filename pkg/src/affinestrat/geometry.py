"""Rational polyhedra in constraint form, with exact feasibility.

A polyhedron is a finite list of constraints normal . x REL bound with
REL one of ">=", ">", "=". Feasibility, projection, and satisfying-point
extraction run by Fourier-Motzkin elimination over the rationals; strict
constraints are carried as a flag and combine by "strict wins", never as a
numeric epsilon. Scale is deliberately small (a handful of dimensions, tens
of constraints); a blowup guard trips rather than grinding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyInputError, GuardViolation
from .linalg import (
    IVec,
    QVec,
    dot,
    hnf,
    is_zero,
    ivec,
    lattice_reduce,
    primitive,
    qvec,
    rat_nullspace,
    rat_rank,
    sign_canonical,
    vneg,
    vsub,
)

GE = ">="
GT = ">"
EQ = "="
_RELS = (GE, GT, EQ)

# Desk-scale guards: dimensions past this are out of contract, and a
# Fourier-Motzkin run that breeds more than this many constraints is
# treated as a misuse rather than left to churn.
MAX_DIM = 8
FM_CONSTRAINT_CAP = 20000


class Halfspace:
    """One constraint normal . x REL bound."""

    __slots__ = ("normal", "rel", "bound")

    def __init__(self, normal: Sequence, rel: str, bound) -> None:
        if rel not in _RELS:
            raise ValueError(f"bad relation {rel!r}")
        object.__setattr__(self, "normal", qvec(normal))
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "bound", Fraction(bound))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Halfspace is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Halfspace)
            and self.normal == other.normal
            and self.rel == other.rel
            and self.bound == other.bound
        )

    def __hash__(self) -> int:
        return hash((self.normal, self.rel, self.bound))

    def __repr__(self) -> str:
        return f"Halfspace({list(self.normal)}, {self.rel!r}, {self.bound})"

    def holds(self, point: Sequence) -> bool:
        v = dot(self.normal, point)
        if self.rel == GE:
            return v >= self.bound
        if self.rel == GT:
            return v > self.bound
        return v == self.bound

    def scaled_primitive(self) -> "Halfspace":
        """Same constraint with a primitive integer normal (positive scaling)."""
        if is_zero(self.normal):
            return self
        p = primitive(self.normal)
        scale = next(Fraction(a) / b for a, b in zip(p, self.normal) if b != 0)
        return Halfspace(p, self.rel, self.bound * scale)

    def hyperplane_key(self) -> tuple[IVec, Fraction]:
        """Canonical (normal, bound) of the underlying hyperplane, sign and
        scale normalized."""
        if is_zero(self.normal):
            raise ValueError("zero normal has no hyperplane")
        p = primitive(self.normal)
        scale = next(Fraction(a) / b for a, b in zip(p, self.normal) if b != 0)
        b = self.bound * scale
        canon = sign_canonical(p)
        if canon != p:
            b = -b
        return canon, b


class RationalPolyhedron:
    """Intersection of finitely many halfspaces and hyperplanes."""

    __slots__ = ("dim", "constraints", "_cache")

    def __init__(self, dim: int, constraints: Iterable[Halfspace]) -> None:
        cons = tuple(constraints)
        for c in cons:
            if len(c.normal) != dim:
                raise DimensionMismatch(
                    f"constraint of length {len(c.normal)} in dimension {dim}"
                )
        if dim > MAX_DIM:
            raise GuardViolation(f"dimension {dim} exceeds desk-scale limit {MAX_DIM}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *a):
        raise AttributeError("RationalPolyhedron is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalPolyhedron)
            and self.dim == other.dim
            and self.constraints == other.constraints
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.constraints))

    def __repr__(self) -> str:
        return f"RationalPolyhedron(dim={self.dim}, {len(self.constraints)} constraints)"

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatch("point dimension mismatch")
        for x in point:
            if type(x) is not int:
                return all(c.holds(point) for c in self.constraints)
        return holds_int(integer_constraints(self), point)

    def intersect(self, other: "RationalPolyhedron") -> "RationalPolyhedron":
        if other.dim != self.dim:
            raise DimensionMismatch("intersect across dimensions")
        return RationalPolyhedron(self.dim, self.constraints + other.constraints)

    def with_constraints(self, extra: Iterable[Halfspace]) -> "RationalPolyhedron":
        return RationalPolyhedron(self.dim, self.constraints + tuple(extra))

    def translate(self, v: Sequence) -> "RationalPolyhedron":
        """The set p + v."""
        if len(v) != self.dim:
            raise DimensionMismatch("translate dimension mismatch")
        return RationalPolyhedron(
            self.dim,
            (Halfspace(c.normal, c.rel, c.bound + dot(c.normal, v)) for c in self.constraints),
        )

    def recession_cone(self) -> "RationalPolyhedron":
        """Constraints made homogeneous; strict inequalities relax to closed."""
        out = []
        for c in self.constraints:
            rel = EQ if c.rel == EQ else GE
            out.append(Halfspace(c.normal, rel, 0))
        return RationalPolyhedron(self.dim, out)

    def is_pointed(self) -> bool:
        """No line fits inside: the constraint normals span the whole dual."""
        normals = [c.normal for c in self.constraints]
        return rat_rank(normals) == self.dim

    def is_homogeneous(self) -> bool:
        return all(c.bound == 0 for c in self.constraints)


def whole_space(dim: int) -> RationalPolyhedron:
    return RationalPolyhedron(dim, ())


def integer_constraints(
    p: RationalPolyhedron,
) -> tuple[tuple[IVec, str, int], ...]:
    """The constraints rescaled to integer normals and bounds, cached on p.

    Order and relations match p.constraints; each rescale is by a positive
    factor, so the constraint set is unchanged. Pair with holds_int for
    Fraction-free membership tests of integer points in hot loops."""
    got = p._cache.get("icons")
    if got is None:
        rows = []
        for c in p.constraints:
            den = 1
            for a in c.normal:
                den = den * a.denominator // math.gcd(den, a.denominator)
            den = den * c.bound.denominator // math.gcd(den, c.bound.denominator)
            rows.append(
                (tuple(int(a * den) for a in c.normal), c.rel, int(c.bound * den))
            )
        got = tuple(rows)
        p._cache["icons"] = got
    return got


def holds_int(table: tuple[tuple[IVec, str, int], ...], point: Sequence[int]) -> bool:
    """Evaluate an integer_constraints table at an integer point."""
    for n, rel, b in table:
        s = 0
        for a, x in zip(n, point):
            if a:
                s += a * x
        if rel == GE:
            if s < b:
                return False
        elif rel == GT:
            if s <= b:
                return False
        elif s != b:
            return False
    return True


# ---------------------------------------------------------------------------
# Fourier-Motzkin

# Internal constraint form: (coeffs tuple of Fraction, rel, bound Fraction).

_Con = tuple[tuple[Fraction, ...], str, Fraction]

_VIOLATED = "violated"


def _norm_con(coeffs, rel, bound) -> _Con | str | None:
    """Canonicalize one constraint; None = tautology, _VIOLATED = contradiction."""
    coeffs = qvec(coeffs)
    bound = Fraction(bound)
    if is_zero(coeffs):
        if rel == GE:
            return None if bound <= 0 else _VIOLATED
        if rel == GT:
            return None if bound < 0 else _VIOLATED
        return None if bound == 0 else _VIOLATED
    p = primitive(coeffs)
    scale = next(Fraction(a) / b for a, b in zip(p, coeffs) if b != 0)
    coeffs, bound = qvec(p), bound * scale
    if rel == EQ:
        canon = qvec(sign_canonical(ivec(coeffs)))
        if canon != coeffs:
            coeffs, bound = canon, -bound
    return coeffs, rel, bound


def _clean(cons: Iterable[_Con]) -> list[_Con] | None:
    """Dedupe and apply same-normal dominance. None means infeasible already."""
    best: dict[tuple[tuple[Fraction, ...], str], Fraction] = {}
    eqs: dict[tuple[Fraction, ...], Fraction] = {}
    for coeffs, rel, bound in cons:
        if rel == EQ:
            if coeffs in eqs and eqs[coeffs] != bound:
                return None
            eqs[coeffs] = bound
        else:
            key = (coeffs, rel)
            if key not in best or bound > best[key]:
                best[key] = bound
    out: list[_Con] = []
    for (coeffs, rel), bound in best.items():
        # a strict constraint at the same or higher bound beats a closed one
        if rel == GE:
            gt = best.get((coeffs, GT))
            if gt is not None and gt >= bound:
                continue
        out.append((coeffs, rel, bound))
    for coeffs, bound in eqs.items():
        out.append((coeffs, EQ, bound))
    out.sort(key=lambda c: (c[0], c[1], c[2]))
    return out


def _prepare(p: RationalPolyhedron) -> list[_Con] | str:
    cons: list[_Con] = []
    for c in p.constraints:
        n = _norm_con(c.normal, c.rel, c.bound)
        if n == _VIOLATED:
            return _VIOLATED
        if n is not None:
            cons.append(n)  # type: ignore[arg-type]
    cleaned = _clean(cons)
    return _VIOLATED if cleaned is None else cleaned


def _substitute_eq(cons: list[_Con], pivot: _Con, k: int) -> list[_Con] | str:
    pc, _, pb = pivot
    out: list[_Con] = []
    for coeffs, rel, bound in cons:
        if (coeffs, rel, bound) == pivot:
            continue
        ck = coeffs[k]
        if ck == 0:
            out.append((coeffs, rel, bound))
            continue
        f = ck / pc[k]
        nc = tuple(a - f * b for a, b in zip(coeffs, pc))
        n = _norm_con(nc, rel, bound - f * pb)
        if n == _VIOLATED:
            return _VIOLATED
        if n is not None:
            out.append(n)  # type: ignore[arg-type]
    cleaned = _clean(out)
    return _VIOLATED if cleaned is None else cleaned


def _combine_pairs(cons: list[_Con], k: int) -> list[_Con] | str:
    pos = [c for c in cons if c[0][k] > 0]
    neg = [c for c in cons if c[0][k] < 0]
    zero = [c for c in cons if c[0][k] == 0]
    out = list(zero)
    for pcoeffs, prel, pbound in pos:
        for ncoeffs, nrel, nbound in neg:
            alpha = pcoeffs[k]
            beta = -ncoeffs[k]
            nc = tuple(beta * a + alpha * b for a, b in zip(pcoeffs, ncoeffs))
            rel = GT if (prel == GT or nrel == GT) else GE
            n = _norm_con(nc, rel, beta * pbound + alpha * nbound)
            if n == _VIOLATED:
                return _VIOLATED
            if n is not None:
                out.append(n)  # type: ignore[arg-type]
            if len(out) > FM_CONSTRAINT_CAP:
                raise GuardViolation("Fourier-Motzkin constraint blowup")
    cleaned = _clean(out)
    return _VIOLATED if cleaned is None else cleaned


def _choose_var(cons: list[_Con], active: list[int]) -> int:
    for k in reversed(active):
        if any(rel == EQ and coeffs[k] != 0 for coeffs, rel, _ in cons):
            return k
    best_k = active[-1]
    best_cost = None
    for k in reversed(active):
        npos = sum(1 for c in cons if c[0][k] > 0)
        nneg = sum(1 for c in cons if c[0][k] < 0)
        cost = npos * nneg
        if best_cost is None or cost < best_cost:
            best_cost, best_k = cost, k
    return best_k


def _eliminate(cons: list[_Con], k: int) -> list[_Con] | str:
    eqs = [c for c in cons if c[1] == EQ and c[0][k] != 0]
    if eqs:
        return _substitute_eq(cons, eqs[0], k)
    return _combine_pairs(cons, k)


def find_point(p: RationalPolyhedron) -> QVec | None:
    """An exact rational point of p, or None when p is empty."""
    prepared = _prepare(p)
    if prepared == _VIOLATED:
        return None
    work: list[_Con] = prepared  # type: ignore[assignment]
    active = list(range(p.dim))
    stages: list[tuple[int, list[_Con]]] = []
    while active:
        k = _choose_var(work, active)
        stages.append((k, work))
        nxt = _eliminate(work, k)
        if nxt == _VIOLATED:
            return None
        work = nxt  # type: ignore[assignment]
        active.remove(k)
    x: list[Fraction | None] = [None] * p.dim
    for k, cons in reversed(stages):
        lo = hi = None
        lo_strict = hi_strict = False
        forced = None
        for coeffs, rel, bound in cons:
            ck = coeffs[k]
            if ck == 0:
                continue
            rest = sum(
                (coeffs[j] * x[j] for j in range(p.dim) if j != k and coeffs[j] != 0),
                Fraction(0),
            )
            val = (bound - rest) / ck
            if rel == EQ:
                forced = val
            elif (ck > 0) == (rel in (GE, GT)):
                strict = rel == GT
                if lo is None or val > lo or (val == lo and strict):
                    lo, lo_strict = val, strict
            else:
                strict = rel == GT
                if hi is None or val < hi or (val == hi and strict):
                    hi, hi_strict = val, strict
        if forced is not None:
            x[k] = forced
        elif lo is not None and hi is not None:
            x[k] = lo if (lo == hi) else (lo + hi) / 2
        elif lo is not None:
            x[k] = lo + 1 if lo_strict else lo
        elif hi is not None:
            x[k] = hi - 1 if hi_strict else hi
        else:
            x[k] = Fraction(0)
    return tuple(x)  # type: ignore[return-value]


def ray_hits(p: RationalPolyhedron, base: Sequence[int], direction: Sequence[int]) -> bool:
    """Whether the ray base + s*direction, s >= 0 real, meets p. Exact
    one-variable interval arithmetic; much cheaper than a feasibility solve."""
    if len(base) != p.dim or len(direction) != p.dim:
        raise DimensionMismatch("ray dimension mismatch")
    lo, hi = Fraction(0), None
    lo_strict = hi_strict = False
    for n, rel, b in integer_constraints(p):
        a0 = sum(x * y for x, y in zip(n, base))
        a1 = sum(x * y for x, y in zip(n, direction))
        if a1 == 0:
            if rel == GE and a0 >= b:
                continue
            if rel == GT and a0 > b:
                continue
            if rel == EQ and a0 == b:
                continue
            return False
        v = Fraction(b - a0, a1)
        if rel == EQ:
            if v < lo or (v == lo and lo_strict):
                return False
            if hi is not None and (v > hi or (v == hi and hi_strict)):
                return False
            lo = hi = v
            lo_strict = hi_strict = False
        elif (a1 > 0) == (rel in (GE, GT)):
            strict = rel == GT
            if v > lo or (v == lo and strict):
                lo, lo_strict = v, strict
        else:
            strict = rel == GT
            if hi is None or v < hi or (v == hi and strict):
                hi, hi_strict = v, strict
    if hi is None:
        return True
    if lo < hi:
        return True
    return lo == hi and not lo_strict and not hi_strict


_EMPTY_MEMO: dict[tuple, bool] = {}


def is_empty(p: RationalPolyhedron) -> bool:
    cached = p._cache.get("empty")
    if cached is None:
        # distinct polyhedron objects with equal constraint lists recur a
        # lot in arrangement and pairwise-intersection loops
        key = (p.dim, p.constraints)
        cached = _EMPTY_MEMO.get(key)
        if cached is None:
            cached = find_point(p) is None
            _EMPTY_MEMO[key] = cached
        p._cache["empty"] = cached
    return cached


def project_out(p: RationalPolyhedron, drop: Sequence[int]) -> RationalPolyhedron:
    """Project away the listed coordinates; remaining coordinates keep their
    relative order. Exact shadow, strictness preserved."""
    prepared = _prepare(p)
    keep = [j for j in range(p.dim) if j not in set(drop)]
    if prepared == _VIOLATED:
        return empty_polyhedron(len(keep))
    work: list[_Con] = prepared  # type: ignore[assignment]
    for k in sorted(drop, reverse=True):
        nxt = _eliminate(work, k)
        if nxt == _VIOLATED:
            return empty_polyhedron(len(keep))
        work = nxt  # type: ignore[assignment]
    out = []
    for coeffs, rel, bound in work:
        out.append(Halfspace(tuple(coeffs[j] for j in keep), rel, bound))
    return RationalPolyhedron(len(keep), out)


def empty_polyhedron(dim: int) -> RationalPolyhedron:
    """A manifestly empty polyhedron: the single constraint 0 . x > 0."""
    return RationalPolyhedron(dim, (Halfspace((Fraction(0),) * dim, GT, 0),))


def coordinate_bounds(p: RationalPolyhedron, j: int) -> tuple[Fraction | None, Fraction | None]:
    """Exact (min, max) of coordinate j over p; None marks unbounded.
    Raises EmptyInputError when p is empty."""
    if is_empty(p):
        raise EmptyInputError("bounds of an empty polyhedron")
    shadow = project_out(p, [k for k in range(p.dim) if k != j])
    lo = hi = None
    for c in shadow.constraints:
        a = c.normal[0]
        if a == 0:
            continue
        val = c.bound / a
        if c.rel == EQ:
            return val, val
        if a > 0:
            lo = val if lo is None else max(lo, val)
        else:
            hi = val if hi is None else min(hi, val)
    return lo, hi


def lattice_points(p: RationalPolyhedron) -> list[IVec]:
    """All integer points of a bounded p, sorted. Guard trips on unbounded input."""
    if is_empty(p):
        return []
    ranges = []
    for j in range(p.dim):
        lo, hi = coordinate_bounds(p, j)
        if lo is None or hi is None:
            raise GuardViolation("lattice_points of an unbounded polyhedron")
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    out = []

    def rec(prefix: list[int], j: int) -> None:
        if j == p.dim:
            if p.contains(prefix):
                out.append(tuple(prefix))
            return
        for v in ranges[j]:
            prefix.append(v)
            rec(prefix, j + 1)
            prefix.pop()

    rec([], 0)
    return sorted(out)


# ---------------------------------------------------------------------------
# homogenization and lattice tightening


def homogenize(p: RationalPolyhedron) -> RationalPolyhedron:
    """Closure of the cone over p x {1}, one dimension up (new last coordinate).

    Slicing the result at height 1 recovers p's closure; at height 0 it is the
    recession cone. Requires nonempty input.
    """
    if is_empty(p):
        raise EmptyInputError("homogenize of an empty polyhedron")
    out = []
    for c in p.constraints:
        rel = EQ if c.rel == EQ else GE
        out.append(Halfspace(c.normal + (-c.bound,), rel, 0))
    t_axis = (Fraction(0),) * p.dim + (Fraction(1),)
    out.append(Halfspace(t_axis, GE, 0))
    return RationalPolyhedron(p.dim + 1, out)


def slice_at_height(p: RationalPolyhedron, height) -> RationalPolyhedron:
    """Intersect with {last coordinate = height} and drop that coordinate."""
    h = Fraction(height)
    out = []
    for c in p.constraints:
        out.append(Halfspace(c.normal[:-1], c.rel, c.bound - c.normal[-1] * h))
    return RationalPolyhedron(p.dim - 1, out)


def interior_shift(p: RationalPolyhedron) -> RationalPolyhedron:
    """Closed polyhedron whose integer points are exactly the integer points
    of the relative interior of p.

    Implicit equalities stay equalities. Every other constraint is scaled to a
    primitive integer normal and its bound bumped to the next integer, which
    realizes the strict inequality exactly on Z^dim.
    """
    if is_empty(p):
        raise EmptyInputError("interior_shift of an empty polyhedron")
    out = []
    for c in p.constraints:
        if is_zero(c.normal):
            continue
        cp = c.scaled_primitive()
        if c.rel == EQ:
            out.append(cp)
            continue
        if c.rel == GE and is_empty(p.with_constraints([Halfspace(c.normal, GT, c.bound)])):
            out.append(Halfspace(cp.normal, EQ, cp.bound))
            continue
        floor_b = cp.bound.numerator // cp.bound.denominator
        out.append(Halfspace(cp.normal, GE, floor_b + 1))
    return RationalPolyhedron(p.dim, out)


def tighten_to_coset(
    p: RationalPolyhedron, shift: Sequence[int], lattice_rows: Sequence[IVec]
) -> RationalPolyhedron | None:
    """Closed polyhedron agreeing with p on the points shift + L, where L is
    the row lattice. Bounds move to the nearest achievable value of each
    constraint functional on the coset; strictness is resolved exactly. The
    recession cone is unchanged. Returns None when no coset point can satisfy
    some constraint (constant functional off its grid or bound)."""
    out = []
    for c in p.constraints:
        if is_zero(c.normal):
            if _norm_con(c.normal, c.rel, c.bound) == _VIOLATED:
                return None
            continue
        cp = c.scaled_primitive()
        alpha = dot(cp.normal, shift)
        g = 0
        for row in lattice_rows:
            v = dot(cp.normal, row)
            if v != 0:
                g = math.gcd(g, abs(int(v)))
        if g == 0:
            # functional constant on the coset
            if cp.rel == EQ:
                if alpha != cp.bound:
                    return None
            elif cp.rel == GE:
                if alpha < cp.bound:
                    return None
            else:
                if alpha <= cp.bound:
                    return None
            # constraint holds identically on the coset; dropping it keeps
            # the recession cone's intersection with the lattice span intact
            continue
        t0 = (cp.bound - alpha) / g
        if cp.rel == EQ:
            if t0.denominator != 1:
                return None
            out.append(cp)
            continue
        if cp.rel == GE:
            ceil_t = -((-t0.numerator) // t0.denominator)
            new_bound = alpha + g * ceil_t
        else:
            floor_t = t0.numerator // t0.denominator
            new_bound = alpha + g * (floor_t + 1)
        out.append(Halfspace(cp.normal, GE, new_bound))
    return RationalPolyhedron(p.dim, out)


# ---------------------------------------------------------------------------
# cones: extreme rays, positive functionals


def extreme_rays(cone: RationalPolyhedron) -> list[IVec]:
    """Primitive generators of the extreme rays of a pointed homogeneous cone."""
    if not cone.is_homogeneous():
        raise GuardViolation("extreme_rays needs a homogeneous cone")
    if not cone.is_pointed():
        raise GuardViolation("extreme_rays needs a pointed cone")
    d = cone.dim
    eqs = [c for c in cone.constraints if c.rel == EQ]
    ineqs = [c for c in cone.constraints if c.rel != EQ]
    eq_normals = [c.normal for c in eqs]
    found: set[IVec] = set()
    max_pick = max(0, d - 1 - rat_rank(eq_normals)) if eq_normals else d - 1
    for size in range(0, max_pick + 1):
        for subset in combinations(range(len(ineqs)), size):
            normals = eq_normals + [ineqs[i].normal for i in subset]
            null = rat_nullspace(normals, d)
            if len(null) != 1:
                continue
            v = null[0]
            for cand in (v, vneg(v)):
                if all(
                    (dot(c.normal, cand) == 0) if c.rel == EQ else (dot(c.normal, cand) >= 0)
                    for c in cone.constraints
                ):
                    active = eq_normals + [
                        c.normal for c in ineqs if dot(c.normal, cand) == 0
                    ]
                    if rat_rank(active) == d - 1:
                        found.add(primitive(cand))
                    break
    return sorted(found)


def positive_functional(vectors: Sequence[Sequence], dim: int) -> IVec:
    """Integer w with w . v >= 1 for every listed vector (so w is strictly
    positive on the cone they generate, minus the origin). Raises
    GuardViolation when no such functional exists (cone not pointed)."""
    nonzero = [qvec(v) for v in vectors if not is_zero(v)]
    if not nonzero:
        return (1,) * dim if dim else ()
    cons = [Halfspace(v, GE, 1) for v in nonzero]
    w = find_point(RationalPolyhedron(dim, cons))
    if w is None:
        raise GuardViolation("no strictly positive functional: cone is not pointed")
    return primitive(w)


def cone_from_generators(gens: Sequence[Sequence[int]], dim: int) -> RationalPolyhedron:
    """Irredundant H-representation of the cone nonnegatively spanned by gens.

    Implicit equalities come out as explicit "=" constraints (the linear span
    when the cone is not full-dimensional), every inequality is a facet, all
    normals are primitive integers, and the constraint list is sorted. The
    elimination runs on raw constraint lists so the generator count does not
    hit the ambient dimension guard.
    """
    ngens = [ivec(g) for g in gens if not is_zero(g)]
    for g in ngens:
        if len(g) != dim:
            raise DimensionMismatch("generator dimension mismatch")
    if not ngens:
        out = []
        for j in range(dim):
            unit = [Fraction(0)] * dim
            unit[j] = Fraction(1)
            out.append(Halfspace(unit, EQ, 0))
        return RationalPolyhedron(dim, out)
    m = len(ngens)
    total = dim + m
    raw: list[_Con] = []
    for j in range(dim):
        coeffs = [Fraction(0)] * total
        coeffs[j] = Fraction(1)
        for i, g in enumerate(ngens):
            coeffs[dim + i] = Fraction(-g[j])
        n = _norm_con(coeffs, EQ, 0)
        if n is not None:
            raw.append(n)  # type: ignore[arg-type]
    for i in range(m):
        coeffs = [Fraction(0)] * total
        coeffs[dim + i] = Fraction(1)
        raw.append(_norm_con(coeffs, GE, 0))  # type: ignore[list-item]
    work = _clean(raw)
    for k in range(total - 1, dim - 1, -1):
        assert work is not None
        nxt = _eliminate(work, k)
        assert nxt != _VIOLATED  # the origin always satisfies the system
        work = nxt  # type: ignore[assignment]
    assert work is not None
    base = [Halfspace(c[0][:dim], c[1], 0) for c in work]
    cone = RationalPolyhedron(dim, base)

    # implicit equalities: inequalities that the cone never satisfies strictly
    eqs: list[Halfspace] = [c for c in cone.constraints if c.rel == EQ]
    ineqs: list[Halfspace] = []
    for c in cone.constraints:
        if c.rel == EQ:
            continue
        if is_empty(cone.with_constraints([Halfspace(c.normal, GT, 0)])):
            eqs.append(Halfspace(c.normal, EQ, 0))
        else:
            ineqs.append(c)

    # canonical equality rows, then reduce inequality normals modulo them
    eq_rows = hnf([ivec(e.normal) for e in eqs])
    eqs = [Halfspace(r, EQ, 0) for r in eq_rows]
    seen: set[IVec] = set()
    reduced: list[Halfspace] = []
    for c in ineqs:
        n = lattice_reduce(eq_rows, ivec(c.normal)) if eq_rows else ivec(c.normal)
        if is_zero(n):
            continue
        n = primitive(n)
        if n in seen:
            continue
        seen.add(n)
        reduced.append(Halfspace(n, GE, 0))

    # drop redundant inequalities one at a time
    kept = list(reduced)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        test = RationalPolyhedron(dim, eqs + others).with_constraints(
            [Halfspace(vneg(kept[i].normal), GT, 0)]
        )
        if is_empty(test):
            kept.pop(i)
        else:
            i += 1
    kept.sort(key=lambda c: c.normal)
    return RationalPolyhedron(dim, tuple(eqs) + tuple(kept))


# ---------------------------------------------------------------------------
# hyperplane arrangements


class Hyperplane:
    """Canonical hyperplane normal . x = bound (primitive, sign-normalized)."""

    __slots__ = ("normal", "bound")

    def __init__(self, normal: Sequence, bound) -> None:
        hs = Halfspace(normal, EQ, bound)
        key_n, key_b = hs.hyperplane_key()
        object.__setattr__(self, "normal", key_n)
        object.__setattr__(self, "bound", key_b)

    def __setattr__(self, *a):
        raise AttributeError("Hyperplane is immutable")

    def __eq__(self, o) -> bool:
        return isinstance(o, Hyperplane) and self.normal == o.normal and self.bound == o.bound

    def __hash__(self) -> int:
        return hash((self.normal, self.bound))

    def __repr__(self) -> str:
        return f"Hyperplane({list(self.normal)}, {self.bound})"


class ArrangementCell:
    """One relatively open cell of a hyperplane arrangement: a full sign
    vector over the hyperplanes, together with the relint polyhedron and an
    inside/outside tag relative to the queried union."""

    __slots__ = ("signs", "relint", "inside")

    def __init__(self, signs: tuple[int, ...], relint: RationalPolyhedron, inside: bool) -> None:
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "relint", relint)
        object.__setattr__(self, "inside", inside)

    def __setattr__(self, *a):
        raise AttributeError("ArrangementCell is immutable")

    def __repr__(self) -> str:
        tag = "inside" if self.inside else "outside"
        return f"ArrangementCell(signs={self.signs}, {tag})"


def _sign_constraint(hp: Hyperplane, sign: int) -> Halfspace:
    if sign == 0:
        return Halfspace(hp.normal, EQ, hp.bound)
    if sign > 0:
        return Halfspace(hp.normal, GT, hp.bound)
    return Halfspace(vneg(hp.normal), GT, -hp.bound)


def _allowed_signs(member_constraint: Halfspace) -> tuple[Hyperplane, frozenset[int]]:
    hp = Hyperplane(member_constraint.normal, member_constraint.bound)
    flipped = hp.normal != primitive(member_constraint.normal)
    if member_constraint.rel == EQ:
        return hp, frozenset({0})
    if member_constraint.rel == GT:
        return hp, frozenset({-1 if flipped else 1})
    return hp, frozenset({0, -1 if flipped else 1})


def arrangement_cells(
    hyperplanes: Sequence[Hyperplane],
    members: Sequence[RationalPolyhedron],
    dim: int,
) -> list[ArrangementCell]:
    """Enumerate the nonempty sign-vector cells of the arrangement and tag
    each cell inside or outside the union of the member polyhedra.

    Every member constraint must lie on a listed hyperplane; then each cell's
    relative interior is wholly inside or wholly outside the union, decided
    by pure sign logic.
    """
    hps = sorted(set(hyperplanes), key=lambda h: (h.normal, h.bound))
    member_signs: list[list[tuple[int, frozenset[int]]]] = []
    index = {h: i for i, h in enumerate(hps)}
    for m in members:
        if m.dim != dim:
            raise DimensionMismatch("member dimension mismatch")
        reqs = []
        for c in m.constraints:
            if is_zero(c.normal):
                continue
            hp, allowed = _allowed_signs(c)
            if hp not in index:
                raise ValueError(f"member constraint on unlisted hyperplane {hp!r}")
            reqs.append((index[hp], allowed))
        member_signs.append(reqs)

    partial: list[tuple[int, ...]] = [()]
    for i, hp in enumerate(hps):
        nxt = []
        for signs in partial:
            for s in (-1, 0, 1):
                cons = [_sign_constraint(hps[j], signs[j]) for j in range(i)]
                cons.append(_sign_constraint(hp, s))
                if find_point(RationalPolyhedron(dim, cons)) is not None:
                    nxt.append(signs + (s,))
        partial = nxt

    cells = []
    for signs in partial:
        relint = RationalPolyhedron(
            dim, [_sign_constraint(hps[j], signs[j]) for j in range(len(hps))]
        )
        inside = any(
            all(signs[j] in allowed for j, allowed in reqs) for reqs in member_signs
        )
        cells.append(ArrangementCell(signs, relint, inside))
    return cells


def relint_samples(cell_relint: RationalPolyhedron, count: int) -> list[QVec]:
    """Deterministic rational sample points in a relatively open polyhedron,
    produced by re-running point extraction against jittered objectives."""
    base = find_point(cell_relint)
    if base is None:
        return []
    seen = {base}
    samples = [base]
    d = cell_relint.dim
    k = 1
    while len(samples) < count and k <= 8 * count:
        direction = tuple(Fraction((k * (j + 3)) % 7 - 3, 5) for j in range(d))
        pt = find_point(cell_relint.translate(direction))
        if pt is not None:
            cand = qvec(vsub(pt, direction))
            if cand not in seen and cell_relint.contains(cand):
                seen.add(cand)
                samples.append(cand)
        k += 1
    # midpoints of points of a convex set stay inside it
    i = 0
    while len(samples) < count and i + 1 < len(samples):
        mid = tuple((x + y) / 2 for x, y in zip(samples[i], samples[i + 1]))
        if mid not in seen:
            seen.add(mid)
            samples.append(mid)
        i += 1
    return samples[:count]
