"""Affine stratifications: disjoint unions of translated semigroup modules.

A stratum is a finite translate set plus an affine semigroup; a
stratification is a list of strata with a form tag (1 through 6) recording
which of six equivalent shapes it is in:

  1 disjoint union of finitely generated modules (translate lists allowed)
  2 union, not necessarily disjoint, of such modules
  3 union of single translates of affine semigroups
  4 union of single translates of normal affine semigroups
  5 disjoint union of single translates of normal affine semigroups
  6 disjoint union of single translates of affine semigroups

convert() walks the cycle 1 -> 2 -> 3 -> 4 -> 5 -> 6 -> 1. The heavy steps
are 3 -> 4 (normalize each summand through its saturation and conductor
complement) and 4 -> 5 (rewrite over one lattice, split the union into
arrangement cells, and peel each cell into disjoint translated faces). The
disjoint flag is only ever set after exact certification, never sampling.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Sequence

from .errors import DimensionMismatch, GuardViolation, InputFormatError
from .geometry import (
    EQ,
    GT,
    Halfspace,
    RationalPolyhedron,
    find_point,
    is_empty,
    ray_hits,
)
from .lattices import (
    Coset,
    coset_intersect,
    coset_representatives,
    full_lattice,
    hilbert_basis,
    lattice_intersect,
    module_generators,
)
from .linalg import (
    IVec,
    complement_rows,
    dot,
    hnf,
    idot,
    ivec,
    right_kernel,
    saturation_basis,
    vadd,
    vneg,
    vscale,
    vsub,
    zero_vec,
)
from .semigroups import (
    AffineSemigroup,
    affine_semigroup,
    complement_decompose,
    saturation,
    stratify_difference,
)

DISJOINT_FORMS = frozenset({1, 5, 6})
SINGLETON_FORMS = frozenset({3, 4, 5, 6})
NORMAL_FORMS = frozenset({4, 5})

REFUTATION_WINDOWS = (4, 8, 16)


class Stratum:
    """One stratum: the set ⋃ (f + semigroup) over a finite translate set."""

    __slots__ = ("translates", "semigroup", "normal")

    def __init__(self, translates: Sequence[Sequence[int]], semigroup: AffineSemigroup) -> None:
        ts = tuple(sorted({ivec(t) for t in translates}))
        if not ts:
            raise InputFormatError("stratum needs at least one translate")
        for t in ts:
            if len(t) != semigroup.dim:
                raise DimensionMismatch("translate dimension mismatch")
        object.__setattr__(self, "translates", ts)
        object.__setattr__(self, "semigroup", semigroup)
        object.__setattr__(self, "normal", semigroup.is_normal)

    def __setattr__(self, *a):
        raise AttributeError("Stratum is immutable")

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, Stratum)
            and self.translates == o.translates
            and self.semigroup == o.semigroup
        )

    def __hash__(self) -> int:
        return hash((self.translates, self.semigroup))

    def __repr__(self) -> str:
        return f"Stratum({list(self.translates)} + <{len(self.semigroup.gens)} gens>)"

    @property
    def dim(self) -> int:
        return self.semigroup.dim

    def contains(self, v: Sequence[int]) -> bool:
        v = ivec(v)
        return any(self.semigroup.contains(vsub(v, f)) for f in self.translates)


class AffineStratification:
    """A list of strata with a form tag; see the module docstring for tags."""

    __slots__ = ("dim", "strata", "disjoint", "form")

    def __init__(
        self, dim: int, strata: Sequence[Stratum], disjoint: bool, form: int
    ) -> None:
        strata = tuple(strata)
        for s in strata:
            if s.dim != dim:
                raise DimensionMismatch("stratum dimension mismatch")
        if form not in (1, 2, 3, 4, 5, 6):
            raise InputFormatError(f"unknown form tag {form}")
        if form in DISJOINT_FORMS and not disjoint:
            raise InputFormatError(f"form {form} requires the disjoint flag")
        if form in SINGLETON_FORMS and any(len(s.translates) != 1 for s in strata):
            raise InputFormatError(f"form {form} requires singleton translate lists")
        if form in NORMAL_FORMS and any(not s.normal for s in strata):
            raise InputFormatError(f"form {form} requires normal semigroups")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "strata", strata)
        object.__setattr__(self, "disjoint", bool(disjoint))
        object.__setattr__(self, "form", form)

    def __setattr__(self, *a):
        raise AttributeError("AffineStratification is immutable")

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, AffineStratification)
            and self.dim == o.dim
            and self.strata == o.strata
            and self.disjoint == o.disjoint
            and self.form == o.form
        )

    def __repr__(self) -> str:
        return (
            f"AffineStratification(dim={self.dim}, {len(self.strata)} strata, "
            f"form={self.form}, disjoint={self.disjoint})"
        )

    def contains(self, v: Sequence[int]) -> bool:
        return any(s.contains(v) for s in self.strata)


def member(s: AffineStratification, v: Sequence[int]) -> bool:
    """True iff v lies in some stratum."""
    v = ivec(v)
    if len(v) != s.dim:
        raise DimensionMismatch("member query dimension mismatch")
    return s.contains(v)


# ---------------------------------------------------------------------------
# disjointness certificates


def _translated_cone(t: IVec, semi: AffineSemigroup) -> RationalPolyhedron:
    return semi.cone.translate(t)


_PAIR_MEMO: dict[tuple, tuple[bool | None, IVec | None]] = {}


def _piece_pair_disjoint(
    t1: IVec, a1: AffineSemigroup, t2: IVec, a2: AffineSemigroup
) -> tuple[bool | None, IVec | None]:
    """Decide disjointness of t1 + a1 and t2 + a2.

    Returns (verdict, witness): (True, None) when certified disjoint,
    (False, point) with a common point, (None, None) when undecided (only
    possible when a semigroup is not normal and the bounded refutation found
    nothing). The answer only depends on t2 - t1, so it is memoized in the
    t1-origin frame."""
    if not a2.gens:
        return (False, t2) if a1.contains(vsub(t2, t1)) else (True, None)
    if not a1.gens:
        return (False, t1) if a2.contains(vsub(t1, t2)) else (True, None)
    delta = vsub(t2, t1)
    key = (delta, a1.gens, a2.gens)
    got = _PAIR_MEMO.get(key)
    if got is None:
        got = _pair_disjoint_origin(delta, a1, a2)
        _PAIR_MEMO[key] = got
    verdict, w0 = got
    if w0 is None:
        return verdict, None
    return verdict, vadd(w0, t1)


def _pair_disjoint_origin(
    delta: IVec, a1: AffineSemigroup, a2: AffineSemigroup
) -> tuple[bool | None, IVec | None]:
    dim = a1.dim
    g1, g2 = a1.gens, a2.gens
    if len(g2) == 1:
        meet = ray_hits(a1.cone, delta, g2[0])
    elif len(g1) == 1:
        meet = ray_hits(_translated_cone(delta, a2), zero_vec(dim), g1[0])
    else:
        meet = not is_empty(a1.cone.intersect(_translated_cone(delta, a2)))
    if not meet:
        return True, None
    c1 = Coset(zero_vec(dim), a1.lattice_rows, dim)
    c2 = Coset(delta, a2.lattice_rows, dim)
    both = coset_intersect(c1, c2)
    if both is None:
        return True, None
    region = a1.cone.intersect(_translated_cone(delta, a2))
    if a1.is_normal and a2.is_normal:
        gens = module_generators(region, both)
        if not gens:
            return True, None
        return False, gens[0]
    # bounded refutation around a feasible point of the region
    base = find_point(region)
    assert base is not None
    center = tuple(int(x) for x in base)
    for radius in REFUTATION_WINDOWS:
        if (2 * radius + 1) ** dim > 2_000_000:
            break
        for pt in product(*[range(c - radius, c + radius + 1) for c in center]):
            if (
                region.contains(pt)
                and a1.contains(pt)
                and a2.contains(vsub(pt, delta))
            ):
                return False, pt
    return None, None


class DisjointnessReport:
    """Outcome of pairwise disjointness certification."""

    __slots__ = ("ok", "witnesses", "unresolved")

    def __init__(self, ok, witnesses, unresolved) -> None:
        object.__setattr__(self, "ok", ok)
        object.__setattr__(self, "witnesses", witnesses)
        object.__setattr__(self, "unresolved", unresolved)

    def __setattr__(self, *a):
        raise AttributeError("DisjointnessReport is immutable")

    def __repr__(self) -> str:
        return (
            f"DisjointnessReport(ok={self.ok}, witnesses={self.witnesses}, "
            f"unresolved={self.unresolved})"
        )


def certify_disjoint(strata: Sequence[Stratum]) -> DisjointnessReport:
    """Exact pairwise disjointness of strata: cone emptiness first, then
    lattice-coset emptiness, then an exact module computation for normal
    pairs; non-normal undecided pairs are reported as unresolved. ok is True
    only when every pair is certified disjoint."""
    witnesses: list[tuple[int, int, IVec]] = []
    unresolved: list[tuple[int, int]] = []
    for i in range(len(strata)):
        for j in range(i + 1, len(strata)):
            found = None
            undecided = False
            for f in strata[i].translates:
                for g in strata[j].translates:
                    verdict, w = _piece_pair_disjoint(
                        f, strata[i].semigroup, g, strata[j].semigroup
                    )
                    if verdict is False:
                        found = w
                        break
                    if verdict is None:
                        undecided = True
                if found is not None:
                    break
            if found is not None:
                witnesses.append((i, j, found))
            elif undecided:
                unresolved.append((i, j))
    ok = not witnesses and not unresolved
    return DisjointnessReport(ok, witnesses, unresolved)


class VerifyReport:
    """Outcome of verify(): disjointness verdict plus windowed set equality."""

    __slots__ = (
        "disjoint_ok",
        "disjoint_witnesses",
        "unresolved_pairs",
        "equal_ok",
        "missing",
        "extra",
    )

    def __init__(self, d_ok, d_wit, unres, e_ok, missing, extra) -> None:
        object.__setattr__(self, "disjoint_ok", d_ok)
        object.__setattr__(self, "disjoint_witnesses", d_wit)
        object.__setattr__(self, "unresolved_pairs", unres)
        object.__setattr__(self, "equal_ok", e_ok)
        object.__setattr__(self, "missing", missing)
        object.__setattr__(self, "extra", extra)

    def __setattr__(self, *a):
        raise AttributeError("VerifyReport is immutable")

    @property
    def passed(self) -> bool:
        return bool(self.disjoint_ok and self.equal_ok)

    def __repr__(self) -> str:
        return (
            f"VerifyReport(disjoint_ok={self.disjoint_ok}, equal_ok={self.equal_ok}, "
            f"missing={self.missing[:3]}, extra={self.extra[:3]}, "
            f"witnesses={self.disjoint_witnesses[:3]})"
        )


def verify(
    s: AffineStratification,
    oracle: Callable[[IVec], bool],
    window: Sequence[tuple[int, int]],
) -> VerifyReport:
    """Check s against a ground-truth membership oracle.

    Disjointness is decided by exact certificates (never sampling); set
    equality is checked exhaustively on the window, a list of per-coordinate
    (lo, hi) inclusive bounds. Failures are reported with counterexample
    points, not raised."""
    if len(window) != s.dim:
        raise DimensionMismatch("window dimension mismatch")
    report = certify_disjoint(s.strata)
    missing: list[IVec] = []
    extra: list[IVec] = []
    for pt in product(*[range(lo, hi + 1) for lo, hi in window]):
        truth = bool(oracle(pt))
        got = s.contains(pt)
        if truth and not got:
            missing.append(pt)
        elif got and not truth:
            extra.append(pt)
    return VerifyReport(
        report.ok, report.witnesses, report.unresolved, not missing and not extra,
        missing, extra,
    )


# ---------------------------------------------------------------------------
# lattice unification (form 4 housekeeping)


_HILBERT_MEMO: dict[tuple, tuple[IVec, ...]] = {}


def _cone_lattice_gens(cone: RationalPolyhedron, rows: tuple[IVec, ...]) -> tuple[IVec, ...]:
    """Hilbert basis of cone ∩ lattice, memoized across calls by a canonical
    key of the homogeneous cone's constraints and the lattice rows."""
    key_cons = tuple(
        sorted(
            (sp.normal, sp.rel, sp.bound)
            for sp in (c.scaled_primitive() for c in cone.constraints)
        )
    )
    key = (cone.dim, key_cons, rows)
    got = _HILBERT_MEMO.get(key)
    if got is None:
        basis, _w = hilbert_basis(cone, rows)
        got = tuple(basis)
        _HILBERT_MEMO[key] = got
    return got


def _completed_lattice(semi: AffineSemigroup) -> tuple[IVec, ...]:
    """The semigroup's group, direct-summed with a complement of its
    saturation so the result has finite index in the ambient lattice."""
    rows = semi.lattice_rows
    sat_rows = saturation_basis(rows, semi.dim)
    comp = complement_rows(sat_rows, semi.dim)
    return hnf(list(rows) + list(comp))


def unify_lattices(strata: Sequence[Stratum]) -> list[Stratum]:
    """Rewrite translated normal semigroups over the single lattice
    L = intersection of their completed groups: each stratum becomes finitely
    many singleton-translate strata over cone ∩ L, one per module generator
    per coset. The union of sets is preserved exactly."""
    pieces: list[tuple[IVec, AffineSemigroup]] = []
    for s in strata:
        if not s.normal:
            raise GuardViolation("unify_lattices needs normal semigroups")
        for f in s.translates:
            pieces.append((f, s.semigroup))
    if not pieces:
        return []
    dim = pieces[0][1].dim
    common = full_lattice(dim)
    for _f, semi in pieces:
        common = lattice_intersect(common, _completed_lattice(semi), dim)
    out: list[Stratum] = []
    for f, semi in pieces:
        for nf, ngens in _unify_piece(f, semi, common):
            out.append(Stratum([nf], affine_semigroup(dim, ngens)))
    return out


def _unify_piece(
    f: IVec, semi: AffineSemigroup, common: tuple[IVec, ...]
) -> list[tuple[IVec, tuple[IVec, ...]]]:
    dim = semi.dim
    sub = lattice_intersect(semi.lattice_rows, common, dim)
    gens = _cone_lattice_gens(semi.cone, sub)
    out = []
    for rep in coset_representatives(sub, semi.lattice_rows, dim):
        coset = Coset(vadd(f, rep), sub, dim)
        region = semi.cone.translate(f)
        for g in module_generators(region, coset):
            out.append((g, gens))
    return sorted(out)


# ---------------------------------------------------------------------------
# summand normalization (form 3 -> 4)


def _normalize_summand(
    t: IVec, semi: AffineSemigroup
) -> list[tuple[IVec, AffineSemigroup]]:
    """Replace t + semigroup by disjoint translated normal semigroups: the
    conductor translate of the saturation, plus recursively normalized
    conductor-complement pieces on proper faces."""
    if semi.is_normal:
        return [(t, semi)]
    sat = saturation(semi)
    norm = affine_semigroup(semi.dim, sat.sat_gens)
    out = [(vadd(t, sat.conductor), norm)]
    for u, face_gens in complement_decompose(semi):
        out.extend(_normalize_summand(vadd(t, u), affine_semigroup(semi.dim, face_gens)))
    return out


def _collapse(
    summands: Sequence[tuple[IVec, AffineSemigroup]]
) -> list[tuple[IVec, AffineSemigroup]]:
    """Drop summands provably contained in another: t - t' in A' and every
    generator of A in A'. Keeps the earliest of mutually containing pairs."""
    kept: list[tuple[IVec, AffineSemigroup]] = []
    for t, a in summands:
        contained = False
        for t2, a2 in kept:
            if a2.contains(vsub(t, t2)) and all(a2.contains(g) for g in a.gens):
                contained = True
                break
        if contained:
            continue
        kept = [
            (t2, a2)
            for t2, a2 in kept
            if not (a.contains(vsub(t2, t)) and all(a.contains(g) for g in a2.gens))
        ]
        kept.append((t, a))
    return kept


# ---------------------------------------------------------------------------
# the disjointify pipeline (form 3 -> 5)


def disjointify(
    summands: Sequence[tuple[Sequence[int], AffineSemigroup]], dim: int
) -> AffineStratification:
    """Rewrite a union of translated affine semigroups as a certified
    disjoint union of translated normal semigroups (form 5).

    Pipeline: containment collapse; per-summand normalization via saturation
    and conductor complement; then sequential subtraction: each normalized
    summand is emitted minus the union of its predecessors, computed exactly
    by lattice-coset refinement plus arrangement-cell splitting, with every
    surviving piece peeled into disjoint translated faces through its module
    generators. The result is certified before the disjoint flag is set."""
    pieces = [(ivec(t), a) for t, a in summands]
    for t, a in pieces:
        if a.dim != dim or len(t) != dim:
            raise DimensionMismatch("summand dimension mismatch")
    pieces = _collapse(pieces)
    normalized: list[tuple[IVec, AffineSemigroup]] = []
    for t, a in pieces:
        normalized.extend(_normalize_summand(t, a))
    normalized = _collapse(normalized)
    strata: list[Stratum] = []
    minus: list[_MinusEntry] = []
    for t, a in normalized:
        for g, gens in _subtract(t, a, minus):
            strata.append(Stratum([g], affine_semigroup(dim, gens)))
        minus.append(
            (a.cone.translate(t), Coset(t, a.lattice_rows, dim), t, a.gens)
        )
    strata = sorted(
        strata, key=lambda s: (-s.semigroup.cone_dim, s.translates, s.semigroup.gens)
    )
    report = certify_disjoint(strata)
    if not report.ok:
        raise GuardViolation(f"disjointify failed certification: {report!r}")
    return AffineStratification(dim, strata, disjoint=True, form=5)


# one subtracted set: (translated cone, translated group coset, translate,
# generators); the set is cone ∩ coset
_MinusEntry = tuple[RationalPolyhedron, Coset, IVec, tuple[IVec, ...]]


def _live_entries(
    region: RationalPolyhedron, minus: Sequence[_MinusEntry]
) -> list[_MinusEntry]:
    """Entries whose real cone can meet region: points by direct membership,
    rays by interval arithmetic, so only wider sets need a feasibility solve.
    Wider sets are ordered first so coarse splits happen early."""
    live = []
    for e in minus:
        r, _c, u, gens = e
        if not gens:
            if region.contains(u):
                live.append(e)
        elif len(gens) == 1:
            if ray_hits(region, u, gens[0]):
                live.append(e)
        elif not is_empty(region.intersect(r)):
            live.append(e)
    live.sort(key=lambda e: -len(e[3]))
    return live


def _subtract(
    t: IVec, semi: AffineSemigroup, minus: Sequence[_MinusEntry]
) -> list[tuple[IVec, tuple[IVec, ...]]]:
    """(t + semi) minus a union of translated normal semigroups, each given
    as (translated cone, translated group coset) whose intersection is the
    set. Returns disjoint (translate, generators) pieces."""
    dim = semi.dim
    if not semi.gens:
        # single point: survives iff no minus set contains it
        for r, c, _u, _g in minus:
            if c.contains(t) and r.contains(t):
                return []
        return [(t, semi.gens)]
    region = semi.cone.translate(t)
    live = _live_entries(region, minus)
    if not live:
        return [(t, semi.gens)]
    out: list[tuple[IVec, tuple[IVec, ...]]] = []
    _diff_piece(region, Coset(t, semi.lattice_rows, dim), live, dim, out)
    return sorted(set(out))


def _diff_piece(
    region: RationalPolyhedron,
    coset: Coset,
    minus: Sequence[_MinusEntry],
    dim: int,
    out: list[tuple[IVec, tuple[IVec, ...]]],
) -> None:
    """Emit disjoint module pieces of (region ∩ coset) ∖ ⋃ minus sets.

    Each minus entry (R, c) denotes exactly R ∩ c (its semigroup is normal).
    One entry is resolved per call: lattice-coset refinement confines it to
    sub-cosets, an arrangement split separates covered cells from untouched
    ones, and a rank-dropping branch pins minus sets that live on a proper
    affine subspace of the piece. Terminates because each branch shrinks
    (coset rank, remaining minus count) lexicographically."""
    minus = _live_entries(region, minus)
    if not minus:
        _emit_module(region, coset, dim, out)
        return
    reg_e, cos_e, _u, _g = minus[0]
    rest = minus[1:]
    both = coset_intersect(coset, cos_e)
    if both is None:
        _diff_piece(region, coset, rest, dim, out)
        return
    if len(both.rows) == len(coset.rows):
        # finite index: split the piece coset along the intersection lattice
        cells = _region_cells(region, (reg_e,), dim)
        for rep in coset_representatives(both.rows, coset.rows, dim):
            nu = vadd(coset.shift, rep)
            sub = Coset(nu, both.rows, dim)
            if not both.contains(nu):
                _diff_piece(region, sub, rest, dim, out)
                continue
            for cell in cells:
                sample = find_point(cell)
                if reg_e.contains(sample):
                    continue  # cell lattice points all lie in the minus set
                _diff_piece(cell, sub, rest, dim, out)
        return
    # the minus set meets the piece coset only on a proper affine subspace
    normals = right_kernel(both.rows, dim)
    eqs = [(w, dot(w, both.shift)) for w in normals]
    planes = tuple(
        RationalPolyhedron(dim, [Halfspace(w, EQ, b)]) for w, b in eqs
    )
    on_rows = _lattice_span_restrict(coset.rows, both.rows, dim)
    for cell in _region_cells(region, planes, dim):
        sample = find_point(cell)
        if all(dot(w, sample) == b for w, b in eqs):
            _diff_piece(cell, Coset(both.shift, on_rows, dim), minus, dim, out)
        else:
            _diff_piece(cell, coset, rest, dim, out)


def _region_cells(
    region: RationalPolyhedron,
    others: Sequence[RationalPolyhedron],
    dim: int,
) -> list[RationalPolyhedron]:
    """Nonempty cells partitioning region by the sign (<, =, >) of every
    constraint hyperplane of the other polyhedra; on each cell, membership
    in each other polyhedron is constant."""
    cells = [region]
    seen: set[tuple] = set()
    for poly in others:
        for c in poly.constraints:
            if not any(c.normal):
                continue
            key = c.hyperplane_key()
            if key in seen:
                continue
            seen.add(key)
            n, b = key
            nxt: list[RationalPolyhedron] = []
            for cell in cells:
                for side in (
                    Halfspace(n, GT, b),
                    Halfspace(n, EQ, b),
                    Halfspace(vneg(n), GT, -b),
                ):
                    piece = cell.with_constraints([side])
                    if not is_empty(piece):
                        nxt.append(piece)
            cells = nxt
    return cells


def _lattice_span_restrict(
    rows: tuple[IVec, ...], sub_rows: tuple[IVec, ...], dim: int
) -> tuple[IVec, ...]:
    """Basis of the sublattice of rows lying in the real span of sub_rows."""
    normals = right_kernel(sub_rows, dim)
    if not rows or not normals:
        return rows
    table = [ivec([idot(w, v) for v in rows]) for w in normals]
    coeffs = right_kernel(table, len(rows))
    basis = []
    for a in coeffs:
        v = zero_vec(dim)
        for k, row in enumerate(rows):
            v = vadd(v, vscale(a[k], row))
        basis.append(v)
    return hnf(basis)


def _emit_module(
    region: RationalPolyhedron,
    coset: Coset,
    dim: int,
    out: list[tuple[IVec, tuple[IVec, ...]]],
) -> None:
    gens = module_generators(region, coset)
    if not gens:
        return
    monoid_gens = _cone_lattice_gens(region.recession_cone(), coset.rows)
    semi = affine_semigroup(dim, monoid_gens)
    out.extend(stratify_difference(semi, list(gens), []))


# ---------------------------------------------------------------------------
# images, unions, and the form converter


def map_image(s: AffineStratification, matrix: Sequence[Sequence[int]]) -> AffineStratification:
    """Image of the stratified set under an integer linear map, restratified
    to form 5. The matrix has one row per output coordinate. Raises when an
    image semigroup is not pointed (its cone acquires a line)."""
    rows = [ivec(r) for r in matrix]
    if any(len(r) != s.dim for r in rows):
        raise DimensionMismatch("matrix column count must equal stratification dimension")
    out_dim = len(rows)
    src = convert(s, 6)
    summands = []
    for st in src.strata:
        f = st.translates[0]
        img_f = tuple(sum(r[j] * f[j] for j in range(s.dim)) for r in rows)
        img_gens = [
            tuple(sum(r[j] * g[j] for j in range(s.dim)) for r in rows)
            for g in st.semigroup.gens
        ]
        summands.append((img_f, affine_semigroup(out_dim, img_gens)))
    return disjointify(summands, out_dim)


def union(stratifications: Sequence[AffineStratification]) -> AffineStratification:
    """Union of stratified sets, restratified to form 5."""
    dims = {s.dim for s in stratifications}
    if len(dims) > 1:
        raise DimensionMismatch("union across dimensions")
    if not stratifications:
        raise InputFormatError("union of nothing; supply at least one stratification")
    dim = dims.pop()
    summands = []
    for s in stratifications:
        for st in s.strata:
            for f in st.translates:
                summands.append((f, st.semigroup))
    if not summands:
        return AffineStratification(dim, [], disjoint=True, form=5)
    return disjointify(summands, dim)


def convert(s: AffineStratification, form: int) -> AffineStratification:
    """Convert between the six equivalent forms by walking the cycle
    1 -> 2 -> 3 -> 4 -> 5 -> 6 -> 1."""
    if form not in (1, 2, 3, 4, 5, 6):
        raise InputFormatError(f"unknown form tag {form}")
    cur = s
    for _ in range(6):
        if cur.form == form:
            return cur
        cur = _advance(cur)
    assert cur.form == form
    return cur


def _advance(s: AffineStratification) -> AffineStratification:
    dim = s.dim
    if s.form == 1:
        return AffineStratification(dim, s.strata, s.disjoint, 2)
    if s.form == 2:
        singles = []
        already_single = all(len(st.translates) == 1 for st in s.strata)
        for st in s.strata:
            for f in st.translates:
                singles.append(Stratum([f], st.semigroup))
        return AffineStratification(dim, singles, s.disjoint and already_single, 3)
    if s.form == 3:
        pieces: list[tuple[IVec, AffineSemigroup]] = []
        for st in s.strata:
            pieces.extend(_normalize_summand(st.translates[0], st.semigroup))
        strata = [Stratum([t], a) for t, a in pieces]
        return AffineStratification(dim, strata, s.disjoint, 4)
    if s.form == 4:
        if s.disjoint:
            return AffineStratification(dim, s.strata, True, 5)
        return disjointify([(st.translates[0], st.semigroup) for st in s.strata], dim)
    if s.form == 5:
        return AffineStratification(dim, s.strata, s.disjoint, 6)
    return AffineStratification(dim, s.strata, s.disjoint, 1)
