"""Exact dense linear algebra over Fraction vectors.

Vectors are tuples of Fraction, matrices are tuples of row tuples. Sizes
here are desk scale (dim <= 16, a few dozen rows), so clarity and
exactness beat asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatchError
from .scalars import exactify

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values) -> Vec:
    return tuple(exactify(v) for v in values)


def mat(rows) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatchError("ragged matrix")
    return out


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Vec, b: Vec) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dot of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), ZERO)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> Mat:
    return tuple(unit_vec(n, i) for i in range(n))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def matvec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = [list(r) for r in m]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def nullspace(m: Mat) -> tuple[Vec, ...]:
    """Basis of {x : m @ x = 0}, one vector per free column."""
    if not m:
        return ()
    ncols = len(m[0])
    reduced, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m: Mat, b: Vec) -> Vec | None:
    """One solution of m @ x = b, or None when inconsistent."""
    if not m:
        return () if is_zero_vec(b) else None
    ncols = len(m[0])
    aug = tuple(row + (rhs,) for row, rhs in zip(m, b, strict=True))
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][ncols]
    return tuple(x)


def inverse(m: Mat) -> Mat | None:
    """Matrix inverse, or None when singular."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatchError("inverse of a non-square matrix")
    aug = tuple(row + unit_vec(n, i) for i, row in enumerate(m))
    reduced, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        return None
    return tuple(row[n:] for row in reduced)


def canonical_ray(v: Vec) -> Vec:
    """Scale a nonzero vector to coprime integers, preserving direction.

    Float-embedded data has power-of-two denominators, so the lcm stays
    small and this is cheap even for trig coordinates.
    """
    denom_lcm = 1
    for x in v:
        d = x.denominator
        denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
    ints = [int(x * denom_lcm) for x in v]
    g = 0
    for value in ints:
        g = gcd(g, abs(value))
    if g == 0:
        return tuple(ZERO for _ in v)
    return tuple(Fraction(value, g) for value in ints)


def lex_key(v: Vec) -> tuple:
    return tuple((x.numerator, x.denominator) for x in v)
