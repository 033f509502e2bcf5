"""Bipartite composites under the minimal and maximal tensor products.

Coordinates: the composite of A (dim m) and B (dim n) lives in R^(m*n)
with index (i, j) -> i*n + j, so a product x (x) y is the flattened
outer product. The minimal composite is generated by product states;
the maximal composite is cut out by product effects. Any admissible
composite sits between the two and shares the product unit.

Bipartite states are kept as m x n coordinate matrices W pairing
functionals as (a, b) -> a^t W b. Marginals, conditioning, and remote
evaluation are linear algebra on W; entanglement is a membership LP
against the minimal cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import POLYHEDRAL, ConeRep
from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    UnitMismatchError,
    UnsupportedConeError,
)
from .linalg import Mat, Vec, ZERO, dot, mat, matvec, transpose, vec, zeros
from .lp import feasible_point
from .scalars import merge_arithmetic, tolerance_for
from .spaces import StateSpace


def product_vec(x: Vec, y: Vec) -> Vec:
    """Flattened outer product, row-major in the first factor."""
    return tuple(xi * yj for xi in x for yj in y)


def _require_polyhedral(a: StateSpace, b: StateSpace) -> None:
    if a.kind != POLYHEDRAL or b.kind != POLYHEDRAL:
        raise UnsupportedConeError(
            "tensor composites need polyhedral factors")


class CompositeSpace(StateSpace):
    """A bipartite state space tagged with its factors and tensor rule."""

    __slots__ = ("factor_a", "factor_b", "tensor")

    def __init__(self, cone: ConeRep, unit: Vec, factor_a: StateSpace,
                 factor_b: StateSpace, tensor: str, name: str | None = None):
        super().__init__(cone, unit, name)
        self.factor_a = factor_a
        self.factor_b = factor_b
        self.tensor = tensor

    def split_dims(self) -> tuple[int, int]:
        return self.factor_a.dim, self.factor_b.dim


def min_tensor(a: StateSpace, b: StateSpace) -> CompositeSpace:
    """Separable composite: cone generated by product states.

    Generators are eager (products of factor generators); facets stay
    lazy and are enumerated only on demand, subject to the dimension
    cap of the enumerator.
    """
    _require_polyhedral(a, b)
    arith = merge_arithmetic(a.arithmetic, b.arithmetic)
    gens = tuple(product_vec(x, y)
                 for x in a.cone.generators for y in b.cone.generators)
    cone = ConeRep.from_generators(gens, arith, a.dim * b.dim)
    unit = product_vec(a.unit, b.unit)
    name = f"min({a.name or 'A'},{b.name or 'B'})"
    return CompositeSpace(cone, unit, a, b, "min", name)


def max_tensor(a: StateSpace, b: StateSpace) -> CompositeSpace:
    """Largest admissible composite: cut out by product effects.

    Facets are eager (products of factor facets); generators stay lazy.
    """
    _require_polyhedral(a, b)
    arith = merge_arithmetic(a.arithmetic, b.arithmetic)
    facets = tuple(product_vec(x, y)
                   for x in a.cone.facets for y in b.cone.facets)
    cone = ConeRep.from_facets(facets, arith, a.dim * b.dim)
    unit = product_vec(a.unit, b.unit)
    name = f"max({a.name or 'A'},{b.name or 'B'})"
    return CompositeSpace(cone, unit, a, b, "max", name)


def is_composite(a: StateSpace, b: StateSpace, candidate: StateSpace,
                 tol=None) -> bool:
    """Whether candidate is an admissible composite of a and b.

    Requires the product unit (UnitMismatchError otherwise) and the
    sandwich min <= candidate <= max, checked without enumerating
    either bound: min generators against candidate facets, candidate
    generators against max facets.
    """
    _require_polyhedral(a, b)
    if candidate.dim != a.dim * b.dim:
        raise DimensionMismatchError("candidate dim is not the product dim")
    unit = product_vec(a.unit, b.unit)
    if candidate.unit != unit:
        raise UnitMismatchError("candidate does not carry the product unit")
    eps = tolerance_for(
        merge_arithmetic(a.arithmetic, b.arithmetic, candidate.arithmetic),
        tol)
    for x in a.cone.generators:
        for y in b.cone.generators:
            if not candidate.cone.contains(product_vec(x, y), eps):
                return False
    for g in candidate.cone.generators:
        gm = _as_matrix(g, a.dim, b.dim)
        for fa in a.cone.facets:
            pulled = matvec(transpose(gm), vec(fa))
            for fb in b.cone.facets:
                if dot(pulled, vec(fb)) < -eps:
                    return False
    return True


def _as_matrix(flat: Vec, m: int, n: int) -> Mat:
    return tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(m))


def _as_flat(coords: Mat) -> Vec:
    return tuple(x for row in coords for x in row)


@dataclass(frozen=True)
class BipartiteState:
    """Normalized state of a composite, held as its coordinate matrix."""
    composite: CompositeSpace
    coords: Mat

    def __post_init__(self):
        da, db = self.composite.split_dims()
        if len(self.coords) != da or any(len(r) != db for r in self.coords):
            raise DimensionMismatchError("coords shape differs from factors")

    @property
    def flat(self) -> Vec:
        return _as_flat(self.coords)

    def validate(self, tol=None) -> None:
        eps = self.composite.tol(tol)
        if not self.composite.cone.contains(self.flat, eps):
            raise InvalidInputError("coords are outside the composite cone")
        norm = dot(vec(self.composite.unit), self.flat)
        if abs(norm - 1) > eps:
            raise InvalidInputError("state is not normalized")

    def to_json_dict(self) -> dict:
        from .scalars import emit
        arith = self.composite.arithmetic
        return {
            "A": _space_ref(self.composite.factor_a),
            "B": _space_ref(self.composite.factor_b),
            "tensor": self.composite.tensor,
            "coords": [[emit(x, arith) for x in row] for row in self.coords],
        }

    @classmethod
    def from_json_dict(cls, body: dict) -> BipartiteState:
        try:
            fa = _space_from_ref(body["A"])
            fb = _space_from_ref(body["B"])
            tensor = body["tensor"]
            coords = mat(body["coords"])
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad bipartite payload: {exc}") from exc
        if tensor == "min":
            composite = min_tensor(fa, fb)
        elif tensor == "max":
            composite = max_tensor(fa, fb)
        else:
            raise InvalidInputError(f"unknown tensor rule {tensor!r}")
        return cls(composite, coords)


def _space_ref(space: StateSpace):
    """Model name when the space is a named model, else the full dict."""
    name = space.name or ""
    head = name.partition(":")[0]
    if head in ("classical", "polygon", "ball") or name == "squit":
        return name
    return space.to_json_dict()


def _space_from_ref(ref) -> StateSpace:
    if isinstance(ref, str):
        from .models import parse_model_name
        return parse_model_name(ref)
    if isinstance(ref, dict):
        return StateSpace.from_json_dict(ref)
    raise InvalidInputError("space reference must be a name or an object")


def omega_hat(state: BipartiteState) -> Mat:
    """The state's hat map A' -> B, a |-> W^t a."""
    return transpose(state.coords)


def f_hat(f_coords: Mat) -> Mat:
    """Hat map A -> A2' of a joint effect with matrix F: alpha |-> F^t alpha."""
    return transpose(mat(f_coords))


def marginal(state: BipartiteState, side: str = "a") -> Vec:
    """Reduced state on one factor (normalized if the input is)."""
    if side == "a":
        return matvec(state.coords, vec(state.composite.factor_b.unit))
    if side == "b":
        return matvec(transpose(state.coords),
                      vec(state.composite.factor_a.unit))
    raise InvalidInputError("side must be 'a' or 'b'")


def conditional(state: BipartiteState, effect: Vec, side: str = "a",
                tol=None) -> Vec:
    """State of the other factor after seeing `effect` on `side`.

    Zero-probability outcomes condition to the zero vector rather than
    raising; callers treat that as 'outcome never happens'.
    """
    e = vec(effect)
    if side == "a":
        sub = matvec(transpose(state.coords), e)  # unnormalized B state
        unit = vec(state.composite.factor_b.unit)
    elif side == "b":
        sub = matvec(state.coords, e)
        unit = vec(state.composite.factor_a.unit)
    else:
        raise InvalidInputError("side must be 'a' or 'b'")
    p = dot(unit, sub)
    eps = state.composite.tol(tol)
    if abs(p) <= eps:
        return zeros(len(sub))
    return tuple(x / p for x in sub)


def remote_evaluate(alpha: Vec, state: BipartiteState, f_coords: Mat) -> Vec:
    """Unnormalized conditional state of the far factor: w_hat(f_hat(alpha)).

    alpha is a state of an input system A; `state` spans B (near, the
    measured half) and C (far). The joint effect on A and B has matrix
    F (dim A x dim B). A zero outcome probability yields the zero
    vector, by convention.
    """
    a = vec(alpha)
    fh = f_hat(f_coords)
    if len(fh[0]) != len(a):
        raise DimensionMismatchError("effect rows differ from input dim")
    if len(fh) != state.composite.factor_a.dim:
        raise DimensionMismatchError("effect cols differ from the near half")
    return matvec(omega_hat(state), matvec(fh, a))


def is_entangled(state: BipartiteState, tol=None) -> bool:
    """Outside the separable (minimal) cone?  Membership LP over products."""
    a = state.composite.factor_a
    b = state.composite.factor_b
    eps = state.composite.tol(tol)
    products = [product_vec(x, y)
                for x in a.cone.generators for y in b.cone.generators]
    target = state.flat
    rows = tuple(tuple(p[i] for p in products) for i in range(len(target)))
    x, _ = feasible_point(rows, target, eps)
    return x is None


def effect_on_min(a: StateSpace, b: StateSpace, f_coords: Mat,
                  tol=None) -> bool:
    """Valid effect on the minimal composite: 0 <= F <= u on products."""
    F = mat(f_coords)
    eps = tolerance_for(merge_arithmetic(a.arithmetic, b.arithmetic), tol)
    for x in a.cone.generators:
        for y in b.cone.generators:
            val = dot(matvec(F, y), x)
            cap = dot(vec(a.unit), x) * dot(vec(b.unit), y)
            if val < -eps or val > cap + eps:
                return False
    return True


def effect_on_max(a: StateSpace, b: StateSpace, f_coords: Mat,
                  tol=None) -> bool:
    """Valid effect on the maximal composite.

    The dual of the maximal cone is the separable dual cone, so both F
    and u - F must decompose as nonnegative sums of product effects;
    each test is one feasibility LP.
    """
    F = mat(f_coords)
    eps = tolerance_for(merge_arithmetic(a.arithmetic, b.arithmetic), tol)
    unit = tuple(tuple(ua * ub for ub in b.unit) for ua in a.unit)
    residual_mat = tuple(tuple(u - x for u, x in zip(urow, frow))
                         for urow, frow in zip(unit, F))
    return _separable_functional(a, b, F, eps) and \
        _separable_functional(a, b, residual_mat, eps)


def _separable_functional(a: StateSpace, b: StateSpace, F: Mat,
                          eps: Fraction) -> bool:
    products = [product_vec(x, y)
                for x in a.cone.facets for y in b.cone.facets]
    target = _as_flat(F)
    rows = tuple(tuple(p[i] for p in products) for i in range(len(target)))
    x, _ = feasible_point(rows, target, eps)
    return x is not None


def check_distributive_inclusion(a: StateSpace, b: StateSpace,
                                 c: StateSpace, tol=None) -> bool:
    """Cone inclusion  a min (b max c)  <=  (a min b) max c.

    Every generator of the left composite must satisfy every facet of
    the right one. Row-major flattening makes the two triple-space
    coordinateizations literally identical, so the check is plain dot
    products. Only the two inner pair composites are ever enumerated
    (each within the dimension cap); the triple space is not.
    """
    eps = tolerance_for(
        merge_arithmetic(a.arithmetic, b.arithmetic, c.arithmetic), tol)
    inner_left = max_tensor(b, c)
    inner_right = min_tensor(a, b)
    # generators of a (x) (b max c): products over the enumerated max pair
    left_gens = [product_vec(x, h)
                 for x in a.cone.generators for h in inner_left.cone.generators]
    # facets of (a min b) (x) c: products over the enumerated min pair
    right_facets = [product_vec(f, fc)
                    for f in inner_right.cone.facets for fc in c.cone.facets]
    return all(dot(g, f) >= -eps for g in left_gens for f in right_facets)
