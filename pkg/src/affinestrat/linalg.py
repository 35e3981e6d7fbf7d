"""Exact rational and integer linear algebra.

Vectors are plain tuples: integer vectors are tuples of int, rational vectors
tuples of Fraction. Matrices are tuples/lists of row vectors. Everything here
is exact; no floats appear anywhere in the package.

Integer lattice work (Hermite and Smith forms, kernels, saturations) operates
on row lattices: the lattice of integer combinations of the rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch

IVec = tuple[int, ...]
QVec = tuple[Fraction, ...]


def qvec(xs: Iterable) -> QVec:
    return tuple(Fraction(x) for x in xs)


def ivec(xs: Iterable) -> IVec:
    out = []
    for x in xs:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"not an integer vector entry: {x}")
        out.append(int(f))
    return tuple(out)


def zero_vec(d: int) -> IVec:
    return (0,) * d


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch(f"dot of lengths {len(a)} and {len(b)}")
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def idot(a: Sequence[int], b: Sequence[int]) -> int:
    """Integer dot product; both vectors must hold plain ints."""
    if len(a) != len(b):
        raise DimensionMismatch(f"dot of lengths {len(a)} and {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise DimensionMismatch(f"add of lengths {len(a)} and {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise DimensionMismatch(f"sub of lengths {len(a)} and {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def vneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def vec_gcd(a: Iterable[int]) -> int:
    g = 0
    for x in a:
        g = gcd(g, abs(int(x)))
    return g


def primitive(v: Sequence) -> IVec:
    """Scale a nonzero rational vector by a positive rational to the primitive
    integer vector pointing the same way."""
    fracs = [Fraction(x) for x in v]
    if all(f == 0 for f in fracs):
        raise ValueError("primitive() of the zero vector")
    mult = 1
    for f in fracs:
        mult = mult * f.denominator // gcd(mult, f.denominator)
    ints = [int(f * mult) for f in fracs]
    g = vec_gcd(ints)
    return tuple(x // g for x in ints)


def sign_canonical(v: IVec) -> IVec:
    """Flip the sign of an integer vector so its first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


# ---------------------------------------------------------------------------
# rational Gaussian elimination


def rat_rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def rat_solve(rows: Sequence[Sequence], rhs: Sequence) -> QVec | None:
    """One rational solution x of rows . x = rhs, or None if inconsistent."""
    if not rows:
        return None if any(Fraction(b) != 0 for b in rhs) else ()
    ncols = len(rows[0])
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [x / pv for x in aug[rank]]
        for i in range(len(aug)):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivots.append((rank, col))
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row, col in pivots:
        x[col] = aug[row][ncols]
    return tuple(x)


def rat_nullspace(rows: Sequence[Sequence], ncols: int) -> list[QVec]:
    """Basis of {x : row . x = 0 for every row}."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(range(rank), pivots):
            v[pc] = -m[row][fc]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# integer row Hermite normal form

# Canonical form: no zero rows, each row's first nonzero entry (the pivot) is
# positive, pivot columns strictly increase, and entries above a pivot lie in
# [0, pivot). Unique for a given row lattice.


def _hnf_inplace(m: list[list[int]], u: list[list[int]] | None) -> int:
    """Row-reduce m to Hermite form, mirroring row ops on u. Returns rank.
    Zero rows end up at the bottom; m is not truncated."""
    n = len(m)
    if n == 0:
        return 0
    ncols = len(m[0])

    def rowop_sub(i: int, j: int, q: int) -> None:
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        if u is not None:
            u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def rowswap(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def rowneg(i: int) -> None:
        m[i] = [-a for a in m[i]]
        if u is not None:
            u[i] = [-a for a in u[i]]

    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, n) if m[i][col] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: (abs(m[i][col]), i))
            for i in nz:
                if i != i0:
                    q = m[i][col] // m[i0][col]
                    rowop_sub(i, i0, q)
        nz = [i for i in range(r, n) if m[i][col] != 0]
        if not nz:
            continue
        rowswap(r, nz[0])
        if m[r][col] < 0:
            rowneg(r)
        p = m[r][col]
        for i in range(r):
            q = m[i][col] // p
            if q:
                rowop_sub(i, r, q)
        r += 1
        if r == n:
            break
    return r


def hnf(rows: Sequence[Sequence[int]]) -> tuple[IVec, ...]:
    """Canonical Hermite basis of the row lattice; zero rows dropped."""
    m = [[int(x) for x in r] for r in rows]
    m = [r for r in m if any(r)]
    rank = _hnf_inplace(m, None)
    return tuple(tuple(r) for r in m[:rank])


def left_kernel(rows: Sequence[Sequence[int]]) -> tuple[IVec, ...]:
    """Canonical basis of {z integer : z . rows = 0}."""
    m = [[int(x) for x in r] for r in rows]
    n = len(m)
    if n == 0:
        return ()
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rank = _hnf_inplace(m, u)
    return hnf(u[rank:])


def right_kernel(rows: Sequence[Sequence[int]], ncols: int) -> tuple[IVec, ...]:
    """Canonical basis of {x integer : rows . x = 0}."""
    transpose = [[int(rows[i][j]) for i in range(len(rows))] for j in range(ncols)]
    return left_kernel_of_columns(transpose, ncols)


def left_kernel_of_columns(transpose_rows: list[list[int]], n: int) -> tuple[IVec, ...]:
    if not transpose_rows:
        # no constraints: kernel is all of Z^n
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return left_kernel(transpose_rows)


def solve_row_combination(rows: Sequence[IVec], target: Sequence[int]) -> IVec | None:
    """Integer z with z . rows = target, or None."""
    m = [[int(x) for x in r] for r in rows]
    n = len(m)
    if n == 0:
        return () if all(int(t) == 0 for t in target) else None
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rank = _hnf_inplace(m, u)
    t = [int(x) for x in target]
    w = [0] * n
    for i in range(rank):
        col = next(c for c, x in enumerate(m[i]) if x != 0)
        if t[col] % m[i][col] != 0:
            return None
        q = t[col] // m[i][col]
        w[i] = q
        t = [a - q * b for a, b in zip(t, m[i])]
    if any(t):
        return None
    z = [0] * len(rows)
    for i in range(n):
        if w[i]:
            for j in range(len(rows)):
                z[j] += w[i] * u[i][j]
    return tuple(z)


def lattice_contains(basis: Sequence[IVec], v: Sequence[int]) -> bool:
    """Membership of v in the row lattice spanned by an HNF basis."""
    t = [int(x) for x in v]
    for row in basis:
        col = next(c for c, x in enumerate(row) if x != 0)
        if t[col] % row[col] != 0:
            return False
        q = t[col] // row[col]
        if q:
            t = [a - q * b for a, b in zip(t, row)]
    return not any(t)


def lattice_reduce(basis: Sequence[IVec], v: Sequence[int]) -> IVec:
    """Canonical coset representative of v modulo the row lattice (HNF basis).
    Pivot coordinates of the result lie in [0, pivot)."""
    t = [int(x) for x in v]
    for row in basis:
        col = next(c for c, x in enumerate(row) if x != 0)
        q = t[col] // row[col]
        if q:
            t = [a - q * b for a, b in zip(t, row)]
    return tuple(t)


# ---------------------------------------------------------------------------
# Smith form, saturation, complements


def smith_diagonal_with_row_basis(rows: Sequence[IVec], ncols: int) -> tuple[list[int], list[IVec]]:
    """Diagonalize the matrix by unimodular row and column operations.

    Returns (diag, winv_rows) where diag holds the diagonal entries (length =
    rank) and winv_rows is a Z-basis of Z^ncols whose first rank rows, scaled
    by the diagonal entries, form a basis of the row lattice. Rows past the
    rank therefore complement the saturation of the row lattice.
    """
    m = [[int(x) for x in r] for r in rows]
    m = [r for r in m if any(r)]
    nrows = len(m)
    winv = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    # column op col_j += q * col_i mirrors on winv as row_i -= q * row_j;
    # column swap mirrors as row swap; column negate as row negate.
    diag: list[int] = []
    top = 0
    while top < nrows and top < ncols:
        pivot = None
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        if pj != top:
            for row in m:
                row[top], row[pj] = row[pj], row[top]
            winv[top], winv[pj] = winv[pj], winv[top]
        if m[top][top] < 0:
            for row in m:
                row[top] = -row[top]
            winv[top] = [-x for x in winv[top]]
        dirty = False
        for i in range(top + 1, nrows):
            if m[i][top] != 0:
                q = m[i][top] // m[top][top]
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                if m[i][top] != 0:
                    dirty = True
        for j in range(top + 1, ncols):
            if m[top][j] != 0:
                q = m[top][j] // m[top][top]
                if q:
                    for row in m:
                        row[j] -= q * row[top]
                    winv[top] = [a + q * b for a, b in zip(winv[top], winv[j])]
                if m[top][j] != 0:
                    dirty = True
        if dirty:
            continue
        diag.append(m[top][top])
        top += 1
    return diag, [tuple(r) for r in winv]


def saturation_basis(rows: Sequence[IVec], ncols: int) -> tuple[IVec, ...]:
    """Canonical basis of {x in Z^ncols : k x in row lattice for some k >= 1}."""
    ker = right_kernel(rows, ncols)
    if not ker:
        return tuple(tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols))
    return right_kernel(ker, ncols)


def complement_rows(rows: Sequence[IVec], ncols: int) -> tuple[IVec, ...]:
    """Rows completing the saturation of the row lattice to a basis of Z^ncols."""
    sat = saturation_basis(rows, ncols)
    diag, winv = smith_diagonal_with_row_basis(sat, ncols)
    assert all(abs(d) == 1 for d in diag), "saturated lattice must have unit divisors"
    return tuple(winv[len(diag):])
