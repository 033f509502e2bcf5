"""State spaces: an ordered vector space with a strictly positive unit.

A StateSpace pairs a pointed generating cone with an order-unit
functional u. Normalized states are cone elements with u = 1; effects
are dual-cone elements a with a <= u; observables are finite effect
lists summing to u. The operations here are the order-theoretic
workhorses: duality, base norm, positivity and contractivity of linear
maps, order isomorphisms, self-duality witnesses, and the one-shot
distinguishability LP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cones import LORENTZ, POLYHEDRAL, ConeRep, partition_rays
from .errors import (
    DegenerateConeError,
    DimensionMismatchError,
    InvalidInputError,
    UnsupportedConeError,
)
from .linalg import (
    Mat,
    Vec,
    ZERO,
    dot,
    inverse,
    mat,
    matmul,
    matvec,
    transpose,
    vec,
    zeros,
)
from .lp import solve_lp
from .scalars import FLOAT, RATIONAL, emit, tolerance_for

try:  # optional: only the lorentz->lorentz positivity check needs it
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None


class StateSpace:
    """A cone plus an order unit, with lazy derived geometry."""

    __slots__ = ("cone", "unit", "name", "_vertices")

    def __init__(self, cone: ConeRep, unit: Vec, name: str | None = None):
        unit = vec(unit)
        if len(unit) != cone.dim:
            raise DimensionMismatchError("unit length differs from cone dim")
        if cone.kind == POLYHEDRAL and cone.has_generators():
            if not cone.strictly_positive(unit):
                raise DegenerateConeError(
                    "unit is not strictly positive on the cone")
        elif cone.kind == LORENTZ:
            if not cone.strictly_positive(unit):
                raise DegenerateConeError(
                    "unit is not strictly positive on the cone")
        self.cone = cone
        self.unit = unit
        self.name = name
        self._vertices: tuple[Vec, ...] | None = None

    # -- basics ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def kind(self) -> str:
        return self.cone.kind

    @property
    def arithmetic(self) -> str:
        return self.cone.arithmetic

    def tol(self, tol: Fraction | float | None = None) -> Fraction:
        return tolerance_for(self.arithmetic, tol)

    @property
    def vertices(self) -> tuple[Vec, ...]:
        """Normalized extreme states, in generator order."""
        if self._vertices is None:
            if self.kind == LORENTZ:
                raise UnsupportedConeError(
                    "lorentz spaces have no finite vertex list")
            verts = []
            for g in self.cone.generators:
                scale = dot(self.unit, g)
                verts.append(tuple(x / scale for x in g))
            self._vertices = tuple(verts)
        return self._vertices

    def unit_value(self, x: Vec) -> Fraction:
        return dot(self.unit, x)

    def is_state(self, x: Vec, tol: Fraction | float | None = None) -> bool:
        eps = self.tol(tol)
        return self.cone.contains(vec(x), eps) and \
            abs(self.unit_value(vec(x)) - 1) <= eps

    def __repr__(self) -> str:
        label = self.name or f"{self.kind}:{self.dim}"
        return f"StateSpace({label}, {self.arithmetic})"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        body: dict = {
            "dim": self.dim,
            "kind": self.kind,
            "arithmetic": self.arithmetic,
            "unit": [emit(x, self.arithmetic) for x in self.unit],
        }
        if self.name:
            body["name"] = self.name
        if self.kind == POLYHEDRAL:
            body["generators"] = [[emit(x, self.arithmetic) for x in g]
                                  for g in self.cone.generators]
            if self.cone.has_facets():
                body["facets"] = [[emit(x, self.arithmetic) for x in f]
                                  for f in self.cone.facets]
        return body

    @classmethod
    def from_json_dict(cls, body: dict) -> StateSpace:
        try:
            dim = int(body["dim"])
            kind = body["kind"]
            arithmetic = body.get("arithmetic", RATIONAL)
            unit = vec(body["unit"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad state-space payload: {exc}") from exc
        if kind == LORENTZ:
            return cls(ConeRep.lorentz(dim, arithmetic), unit,
                       body.get("name"))
        gens = body.get("generators")
        facets = body.get("facets")
        if gens and facets:
            cone = ConeRep.from_both(gens, facets, arithmetic)
        elif gens:
            cone = ConeRep.from_generators(gens, arithmetic, dim)
        elif facets:
            cone = ConeRep.from_facets(facets, arithmetic, dim)
        else:
            raise InvalidInputError(
                "polyhedral space needs generators or facets")
        return cls(cone, unit, body.get("name"))


@dataclass(frozen=True)
class Effect:
    """A dual-cone functional a with 0 <= a <= u on the space."""
    space: StateSpace
    functional: Vec

    def value(self, state: Vec) -> Fraction:
        return dot(self.functional, state)


@dataclass(frozen=True)
class Observable:
    """Effects summing to the order unit."""
    space: StateSpace
    effects: tuple[Effect, ...]

    def __post_init__(self):
        total = zeros(self.space.dim)
        for e in self.effects:
            total = tuple(t + f for t, f in zip(total, e.functional))
        eps = self.space.tol(None)
        if any(abs(t - u) > eps for t, u in zip(total, self.space.unit)):
            raise InvalidInputError("effects do not sum to the unit")


@dataclass(frozen=True)
class LinearMapRep:
    """Matrix of a linear map between spaces (codomain dim x domain dim)."""
    domain: StateSpace
    codomain: StateSpace
    matrix: Mat

    def __post_init__(self):
        if len(self.matrix) != self.codomain.dim or any(
                len(row) != self.domain.dim for row in self.matrix):
            raise DimensionMismatchError("map matrix shape mismatch")

    def apply(self, x: Vec) -> Vec:
        return matvec(self.matrix, x)

    def compose(self, inner: LinearMapRep) -> LinearMapRep:
        if inner.codomain is not self.domain and \
                inner.codomain.dim != self.domain.dim:
            raise DimensionMismatchError("composition shape mismatch")
        return LinearMapRep(inner.domain, self.codomain,
                            matmul(self.matrix, inner.matrix))

    def inverse_map(self) -> LinearMapRep | None:
        inv = inverse(self.matrix)
        if inv is None:
            return None
        return LinearMapRep(self.codomain, self.domain, inv)


# -- cone-level operations ------------------------------------------------


def cone_contains(space: StateSpace, x, tol=None) -> bool:
    return space.cone.contains(vec(x), space.tol(tol))


def dual_cone(space: StateSpace) -> ConeRep:
    """The dual cone, canonicalized (both representation sides realized)."""
    d = space.cone.dual()
    if d.kind == POLYHEDRAL:
        d.generators  # noqa: B018 - forces enumeration and caching
        d.facets  # noqa: B018
    return d


def is_effect(space: StateSpace, a, tol=None) -> bool:
    """0 <= a <= u in the dual order."""
    f = vec(a)
    eps = space.tol(tol)
    residual = tuple(u - x for u, x in zip(space.unit, f))
    return _dual_member(space, f, eps) and _dual_member(space, residual, eps)


def _dual_member(space: StateSpace, functional: Vec, eps: Fraction) -> bool:
    if len(functional) != space.dim:
        raise DimensionMismatchError("functional length differs from dim")
    if space.kind == LORENTZ:
        return space.cone.contains(functional, eps)  # self-dual
    return all(dot(functional, g) >= -eps for g in space.cone.generators)


def base_norm(space: StateSpace, v) -> Fraction | float:
    """min u(p) + u(m) over decompositions v = p - m with p, m in the cone.

    Equals u(v) on the cone. Polyhedral spaces solve the generator LP
    exactly; lorentz spaces use the closed form max(|last|, |head|).
    """
    x = vec(v)
    if len(x) != space.dim:
        raise DimensionMismatchError("vector length differs from dim")
    if space.kind == LORENTZ:
        head2 = sum((h * h for h in x[:-1]), ZERO)
        last = x[-1]
        if last * last >= head2:
            return abs(last)
        return math.sqrt(float(head2))
    gens = space.cone.generators
    m = len(gens)
    cost = tuple(dot(space.unit, g) for g in gens) * 2
    rows = []
    for i in range(space.dim):
        rows.append(tuple(g[i] for g in gens) + tuple(-g[i] for g in gens))
    result = solve_lp(cost, tuple(rows), x)
    if not result.ok or result.objective is None:
        raise DegenerateConeError("base-norm LP failed; cone not generating")
    value = result.objective
    return value if space.arithmetic == RATIONAL else float(value)


# -- map predicates ---------------------------------------------------------


def _pullback(matrix: Mat, functional: Vec) -> Vec:
    return matvec(transpose(matrix), functional)


def _lorentz_member(x: Vec, eps: Fraction) -> bool:
    head, last = x[:-1], x[-1]
    if last + eps < 0:
        return False
    return (last + eps) ** 2 >= sum((h * h for h in head), ZERO)


def _positive_between(matrix: Mat, dom: ConeRep, cod: ConeRep,
                      eps: Fraction) -> bool:
    """Whether matrix maps dom into cod, all four kind pairings."""
    if dom.kind == POLYHEDRAL:
        return all(cod.contains(matvec(matrix, g), eps)
                   for g in dom.generators)
    if cod.kind == POLYHEDRAL:
        # For each codomain facet h, min of <h, T(x, 1)> over the unit
        # ball boundary is last(phi) - |head(phi)| with phi = T^t h.
        for h in cod.facets:
            phi = _pullback(matrix, h)
            if not _lorentz_member(phi, eps):
                return False
        return True
    return _lorentz_to_lorentz_positive(matrix, eps)


def _lorentz_to_lorentz_positive(matrix: Mat, eps: Fraction) -> bool:
    """Homogeneous S-lemma: T(L) in L iff T e_last in L and
    T^t J T - mu J is PSD for some mu >= 0 (J = diag(-1,..,-1,1))."""
    if _np is None:  # pragma: no cover
        raise UnsupportedConeError("numpy required for lorentz->lorentz maps")
    n = len(matrix)
    axis = matvec(matrix, tuple([ZERO] * (len(matrix[0]) - 1) + [Fraction(1)]))
    if not _lorentz_member(axis, eps):
        return False
    T = _np.array([[float(x) for x in row] for row in matrix])
    J = _np.diag([-1.0] * (T.shape[1] - 1) + [1.0])
    Jc = _np.diag([-1.0] * (n - 1) + [1.0])
    M = T.T @ Jc @ T

    def least_eig(mu: float) -> float:
        return float(_np.linalg.eigvalsh(M - mu * J)[0])

    # least_eig is concave in mu; fixed ternary search is deterministic.
    lo, hi = 0.0, float(_np.abs(M).sum()) + 1.0
    for _ in range(200):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if least_eig(m1) < least_eig(m2):
            lo = m1
        else:
            hi = m2
    best = max(least_eig(lo), least_eig((lo + hi) / 2), least_eig(hi),
               least_eig(0.0))
    return best >= -max(float(eps), 1e-12)


def is_positive_map(T: LinearMapRep, tol=None) -> bool:
    eps = tolerance_for(
        FLOAT if FLOAT in (T.domain.arithmetic, T.codomain.arithmetic)
        else RATIONAL, tol)
    return _positive_between(T.matrix, T.domain.cone, T.codomain.cone, eps)


def is_norm_contractive(T: LinearMapRep, tol=None) -> bool:
    """u_cod . T <= u_dom on the domain cone (meaningful for positive T)."""
    eps = tolerance_for(
        FLOAT if FLOAT in (T.domain.arithmetic, T.codomain.arithmetic)
        else RATIONAL, tol)
    slack = tuple(u - p for u, p in
                  zip(T.domain.unit, _pullback(T.matrix, T.codomain.unit)))
    if T.domain.kind == LORENTZ:
        return _lorentz_member(slack, eps)
    return all(dot(slack, g) >= -eps for g in T.domain.cone.generators)


def is_order_isomorphism(T: LinearMapRep, tol=None) -> bool:
    """Invertible, positive, with positive inverse."""
    if T.domain.dim != T.codomain.dim:
        return False
    inv = inverse(T.matrix)
    if inv is None:
        return False
    eps = tolerance_for(
        FLOAT if FLOAT in (T.domain.arithmetic, T.codomain.arithmetic)
        else RATIONAL, tol)
    return _positive_between(T.matrix, T.domain.cone, T.codomain.cone, eps) \
        and _positive_between(inv, T.codomain.cone, T.domain.cone, eps)


def verify_self_duality_witness(space: StateSpace, T, tol=None) -> bool:
    """Whether T (space coords -> dual coords) is an order isomorphism
    from the cone onto its dual cone."""
    matrix = mat(T)
    eps = space.tol(tol)
    if len(matrix) != space.dim or any(len(r) != space.dim for r in matrix):
        raise DimensionMismatchError("witness matrix must be square of dim")
    inv = inverse(matrix)
    if inv is None:
        return False
    dual = space.cone.dual()
    return _positive_between(matrix, space.cone, dual, eps) and \
        _positive_between(inv, dual, space.cone, eps)


# -- distinguishability -----------------------------------------------------


def one_shot_distinguishing_observable(
        space: StateSpace, states, tol=None) -> Observable | None:
    """Effects a_i with a_i(w_j) = delta_ij summing to the unit, or None.

    Exact LP over the dual-generator parameterization. Lorentz spaces
    are rejected (no finite dual generator list to parameterize).
    """
    if space.kind == LORENTZ:
        raise UnsupportedConeError(
            "one-shot distinguishability needs a polyhedral space")
    omegas = tuple(vec(s) for s in states)
    eps = space.tol(tol)
    for w in omegas:
        if not space.is_state(w, eps):
            raise InvalidInputError("distinguishability inputs must be states")
    duals = space.cone.facets  # generators of the dual cone
    k, r, d = len(omegas), len(duals), space.dim
    if k == 0:
        raise InvalidInputError("no states given")

    # variables theta[i][t] >= 0 with a_i = sum_t theta[i][t] dual_t
    nvars = k * r
    rows: list[Vec] = []
    rhs: list[Fraction] = []
    for i in range(k):
        for j in range(k):
            row = [ZERO] * nvars
            for t in range(r):
                row[i * r + t] = dot(duals[t], omegas[j])
            rows.append(tuple(row))
            rhs.append(Fraction(1) if i == j else ZERO)
    for c in range(d):
        row = [ZERO] * nvars
        for i in range(k):
            for t in range(r):
                row[i * r + t] = duals[t][c]
        rows.append(tuple(row))
        rhs.append(space.unit[c])

    result = solve_lp((ZERO,) * nvars, tuple(rows), tuple(rhs))
    if result.status == "infeasible":
        if result.residual > eps:
            return None
        # float mode: accept within tolerance via the relaxed point
        from .lp import feasible_point
        x, _ = feasible_point(tuple(rows), tuple(rhs), eps)
        if x is None:
            return None
        theta = x
    else:
        theta = result.x
    effects = []
    for i in range(k):
        f = zeros(d)
        for t in range(r):
            coeff = theta[i * r + t]
            if coeff != 0:
                f = tuple(x + coeff * y for x, y in zip(f, duals[t]))
        effects.append(Effect(space, f))
    return Observable(space, tuple(effects))


# -- decomposition ----------------------------------------------------------


@dataclass(frozen=True)
class ConeDecomposition:
    """Extreme rays partitioned into irreducible direct summands."""
    space: StateSpace
    rays: tuple[Vec, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def summand_count(self) -> int:
        return len(self.blocks)


def decompose_cone(space: StateSpace) -> ConeDecomposition:
    """Unique partition of the extreme rays into irreducible summands."""
    if space.kind == LORENTZ:
        raise UnsupportedConeError("decomposition needs a polyhedral space")
    rays = space.cone.minimal_generators()
    blocks = partition_rays(rays, space.dim)
    return ConeDecomposition(space, rays, blocks)
