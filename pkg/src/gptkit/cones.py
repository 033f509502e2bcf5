"""Cone representations and the double-description enumeration core.

Polyhedral cones carry extreme-ray generators and/or facet inequalities
<f, x> >= 0; whichever side is missing is computed on demand by the
Motzkin double-description method and cached. Lorentz (second-order)
cones carry no lists; membership there compares squares, so no square
roots enter and rational inputs stay exact.

All arithmetic is exact Fraction arithmetic, including for float-mode
spaces (their data is embedded losslessly); see scalars module notes.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import (
    DegenerateConeError,
    DimensionCapError,
    DimensionMismatchError,
    UnsupportedConeError,
)
from .linalg import (
    Mat,
    Vec,
    ZERO,
    canonical_ray,
    dot,
    identity,
    inverse,
    lex_key,
    mat,
    nullspace,
    rank,
    rref,
    vec,
)
from .scalars import DIMENSION_CAP, FLOAT, RATIONAL

POLYHEDRAL = "polyhedral"
LORENTZ = "lorentz"


def canonical_form(v: Vec, arithmetic: str) -> Vec:
    """Scale-canonical representative of a ray or facet normal.

    Rational mode: coprime integers. Float mode: largest entry magnitude 1,
    which keeps emitted coordinates readable after float conversion.
    """
    ray = canonical_ray(v)
    if arithmetic == FLOAT:
        top = max((abs(x) for x in ray), default=ZERO)
        if top != 0:
            ray = tuple(x / top for x in ray)
    return ray


def independent_subset(vectors: tuple[Vec, ...]) -> tuple[Vec, ...]:
    """Greedy maximal linearly independent subset, input order."""
    rows: list[Vec] = []
    current = 0
    for v in vectors:
        candidate = rows + [v]
        r = rank(tuple(candidate))
        if r > current:
            rows.append(v)
            current = r
    return tuple(rows)


def enumerate_rays(halfspaces: tuple[Vec, ...], dim: int,
                   cap: int | None = None) -> tuple[Vec, ...]:
    """Extreme rays of {x : <h, x> >= 0 for all h}, sorted canonically.

    Requires the normals to span (the target cone is then pointed).
    Returns () for the trivial cone. Incremental double description with
    the combinatorial adjacency test; exact arithmetic throughout.
    """
    limit = DIMENSION_CAP if cap is None else cap
    if dim > limit:
        raise DimensionCapError(
            f"ray enumeration in dimension {dim} exceeds cap {limit}")
    if any(len(h) != dim for h in halfspaces):
        raise DimensionMismatchError("halfspace length differs from dim")

    seen: set[tuple] = set()
    normals: list[Vec] = []
    for h in halfspaces:
        c = canonical_ray(h)
        key = lex_key(c)
        if not any(x != 0 for x in c) or key in seen:
            continue
        seen.add(key)
        normals.append(c)

    base = independent_subset(tuple(normals))
    if len(base) < dim:
        raise DegenerateConeError(
            "halfspace normals do not span; the cone contains a line")
    base_idx = [normals.index(b) for b in base]
    rest_idx = [i for i in range(len(normals)) if i not in base_idx]

    inv = inverse(mat(base))
    assert inv is not None
    cols = tuple(zip(*inv))
    rays: list[Vec] = [tuple(col) for col in cols]
    processed = list(base_idx)
    masks: list[int] = []
    for r in rays:
        m = 0
        for k in processed:
            if dot(normals[k], r) == 0:
                m |= 1 << k
        masks.append(m)

    for hi in rest_idx:
        h = normals[hi]
        evals = [dot(h, r) for r in rays]
        plus = [i for i, e in enumerate(evals) if e > 0]
        zero = [i for i, e in enumerate(evals) if e == 0]
        minus = [i for i, e in enumerate(evals) if e < 0]
        processed.append(hi)
        if not minus:
            for i in zero:
                masks[i] |= 1 << hi
            continue
        new_rays: list[Vec] = [rays[i] for i in plus + zero]
        new_masks: list[int] = [masks[i] for i in plus] + [
            masks[i] | (1 << hi) for i in zero]
        for p in plus:
            for m in minus:
                shared = masks[p] & masks[m]
                blocked = any(
                    i != p and i != m and (masks[i] & shared) == shared
                    for i in range(len(rays)))
                if blocked:
                    continue
                combo = tuple(evals[p] * rays[m][j] - evals[m] * rays[p][j]
                              for j in range(dim))
                combo = canonical_ray(combo)
                cm = 0
                for k in processed:
                    if dot(normals[k], combo) == 0:
                        cm |= 1 << k
                new_rays.append(combo)
                new_masks.append(cm)
        rays = new_rays
        masks = new_masks

    out = sorted({lex_key(canonical_ray(r)): canonical_ray(r)
                  for r in rays}.items())
    return tuple(r for _, r in out)


def brute_force_rays(halfspaces: tuple[Vec, ...], dim: int) -> tuple[Vec, ...]:
    """Reference enumeration by (dim-1)-subsets of normals; test oracle only."""
    out: dict[tuple, Vec] = {}
    for subset in combinations(range(len(halfspaces)), dim - 1) if dim > 1 else [()]:
        rows = tuple(halfspaces[i] for i in subset)
        if rows and rank(rows) != dim - 1:
            continue
        kernel = nullspace(rows) if rows else ((Fraction(1),),)
        if len(kernel) != 1:
            continue
        for candidate in (kernel[0], tuple(-x for x in kernel[0])):
            if all(dot(h, candidate) >= 0 for h in halfspaces):
                active = tuple(h for h in halfspaces if dot(h, candidate) == 0)
                if rank(active) == dim - 1 or dim == 1:
                    c = canonical_ray(candidate)
                    out[lex_key(c)] = c
    return tuple(v for _, v in sorted(out.items()))


class ConeRep:
    """A pointed, generating cone in R^dim.

    kind "polyhedral": generators and facets, either lazily completed.
    kind "lorentz": x[-1] >= euclidean norm of x[:-1]; no finite lists.
    """

    __slots__ = ("dim", "kind", "arithmetic", "_generators", "_facets")

    def __init__(self, dim: int, kind: str, arithmetic: str,
                 generators: tuple[Vec, ...] | None,
                 facets: tuple[Vec, ...] | None):
        if kind not in (POLYHEDRAL, LORENTZ):
            raise UnsupportedConeError(f"unknown cone kind {kind!r}")
        if arithmetic not in (RATIONAL, FLOAT):
            raise UnsupportedConeError(f"unknown arithmetic {arithmetic!r}")
        self.dim = dim
        self.kind = kind
        self.arithmetic = arithmetic
        self._generators = generators
        self._facets = facets

    # -- constructors --------------------------------------------------

    @classmethod
    def from_generators(cls, generators, arithmetic: str = RATIONAL,
                        dim: int | None = None) -> ConeRep:
        gens = tuple(vec(g) for g in generators)
        if not gens:
            raise DegenerateConeError("no generators given")
        d = dim if dim is not None else len(gens[0])
        if any(len(g) != d for g in gens):
            raise DimensionMismatchError("generator length differs from dim")
        cone = cls(d, POLYHEDRAL, arithmetic, gens, None)
        if rank(gens) != d:
            raise DegenerateConeError("generators do not span (not generating)")
        return cone

    @classmethod
    def from_facets(cls, facets, arithmetic: str = RATIONAL,
                    dim: int | None = None) -> ConeRep:
        fcts = tuple(vec(f) for f in facets)
        if not fcts:
            raise DegenerateConeError("no facets given")
        d = dim if dim is not None else len(fcts[0])
        if any(len(f) != d for f in fcts):
            raise DimensionMismatchError("facet length differs from dim")
        if rank(fcts) != d:
            raise DegenerateConeError("facet normals do not span (not pointed)")
        return cls(d, POLYHEDRAL, arithmetic, None, fcts)

    @classmethod
    def from_both(cls, generators, facets, arithmetic: str = RATIONAL,
                  validate: bool = True) -> ConeRep:
        gens = tuple(vec(g) for g in generators)
        fcts = tuple(vec(f) for f in facets)
        cone = cls(len(gens[0]), POLYHEDRAL, arithmetic, gens, fcts)
        if validate:
            recomputed = cls.from_generators(gens, arithmetic)
            want = {lex_key(canonical_ray(f)) for f in recomputed.facets}
            got = {lex_key(canonical_ray(f)) for f in fcts}
            if want != got:
                raise DegenerateConeError(
                    "facet list disagrees with the generator list")
        return cone

    @classmethod
    def lorentz(cls, dim: int, arithmetic: str = FLOAT) -> ConeRep:
        if dim < 1:
            raise DegenerateConeError("lorentz cone needs dim >= 1")
        return cls(dim, LORENTZ, arithmetic, None, None)

    # -- representation access -----------------------------------------

    @property
    def generators(self) -> tuple[Vec, ...]:
        if self.kind == LORENTZ:
            raise UnsupportedConeError(
                "lorentz cones have no finite generator list")
        if self._generators is None:
            rays = enumerate_rays(self._facets, self.dim)
            if not rays or rank(rays) != self.dim:
                raise DegenerateConeError(
                    "facets describe a cone that is not generating")
            self._generators = tuple(
                canonical_form(r, self.arithmetic) for r in rays)
        return self._generators

    @property
    def facets(self) -> tuple[Vec, ...]:
        if self.kind == LORENTZ:
            raise UnsupportedConeError("lorentz cones have no finite facet list")
        if self._facets is None:
            duals = enumerate_rays(self._generators, self.dim)
            if not duals or rank(duals) != self.dim:
                raise DegenerateConeError(
                    "generators describe a cone that is not pointed")
            self._facets = tuple(
                canonical_form(f, self.arithmetic) for f in duals)
        return self._facets

    def has_generators(self) -> bool:
        return self._generators is not None

    def has_facets(self) -> bool:
        return self._facets is not None

    # -- predicates ------------------------------------------------------

    def contains(self, x: Vec, tol: Fraction = ZERO) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatchError("vector length differs from cone dim")
        if self.kind == LORENTZ:
            head, last = x[:-1], x[-1]
            if last + tol < 0:
                return False
            return (last + tol) ** 2 >= sum((h * h for h in head), ZERO)
        return all(dot(f, x) >= -tol for f in self.facets)

    def strictly_positive(self, functional: Vec, tol: Fraction = ZERO) -> bool:
        """Whether <functional, g> > 0 on every nonzero cone element."""
        if self.kind == LORENTZ:
            # Strictly positive iff interior to the (self-dual) cone.
            head, last = functional[:-1], functional[-1]
            return last > 0 and last ** 2 > sum((h * h for h in head), ZERO)
        return all(dot(functional, g) > tol for g in self.generators)

    def dual(self) -> ConeRep:
        """Swap generators and facets; Lorentz cones are self-dual.

        Lazy: whichever side the original had not computed stays pending
        in the dual too, and is canonicalized by enumeration on demand.
        """
        if self.kind == LORENTZ:
            return self
        return ConeRep(self.dim, POLYHEDRAL, self.arithmetic,
                       self._facets, self._generators)

    def minimal_generators(self) -> tuple[Vec, ...]:
        """Extreme rays only, dropping any redundant input generators."""
        fcts = self.facets
        keep = []
        for g in self.generators:
            active = tuple(f for f in fcts if dot(f, g) == 0)
            if (rank(active) if active else 0) >= self.dim - 1:
                keep.append(g)
        return tuple(keep)


def partition_rays(rays: tuple[Vec, ...], dim: int) -> tuple[tuple[int, ...], ...]:
    """Partition extreme rays into irreducible direct summands.

    Iterated merging to a fixpoint: while the current blocks' spans are
    jointly dependent, any nullspace vector of the stacked block bases
    names blocks that cannot be separated (its support restricted to one
    block is a nonzero vector of that block's span lying in the span of
    the others), so merge everything it touches. At the fixpoint the
    spans are jointly independent, which is exactly a direct-sum
    decomposition, and each merge was forced, so the result is the
    unique finest one.
    """
    blocks: list[list[int]] = [[i] for i in range(len(rays))]
    bases: list[tuple[Vec, ...]] = [(rays[i],) for i in range(len(rays))]
    while True:
        columns: list[Vec] = []
        owner: list[int] = []
        for b, basis in enumerate(bases):
            for v in basis:
                columns.append(v)
                owner.append(b)
        stacked = tuple(zip(*columns))  # dim x ncols matrix
        kernel = nullspace(stacked)
        if not kernel:
            return tuple(tuple(sorted(block))
                         for block in sorted(blocks, key=min))
        c = kernel[0]
        touched = sorted({owner[j] for j, x in enumerate(c) if x != 0})
        target = touched[0]
        merged_rays = list(blocks[target])
        merged_basis = list(bases[target])
        for b in touched[1:]:
            merged_rays.extend(blocks[b])
            merged_basis.extend(bases[b])
        blocks = [blk for i, blk in enumerate(blocks) if i not in touched[1:]]
        bases = [bs for i, bs in enumerate(bases) if i not in touched[1:]]
        idx = touched[0] - sum(1 for b in touched[1:] if b < touched[0])
        blocks[idx] = merged_rays
        bases[idx] = independent_subset(tuple(merged_basis))
