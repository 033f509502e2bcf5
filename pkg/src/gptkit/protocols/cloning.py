"""Cloning and broadcasting of state sets.

A finite set is clonable iff one measurement distinguishes its members
simultaneously; the cloning map is then a sum of measure-and-prepare
branches. Broadcastability is the weaker containment in a simplex with
one-shot distinguishable vertices; the search is cap-bounded, and an
exhausted cap is reported as inconclusive rather than as a refusal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..composites import min_tensor, product_vec
from ..errors import InvalidInputError, UnsupportedConeError
from ..linalg import Vec, lex_key, rank, vec, vsub
from ..lp import feasible_point
from ..spaces import (
    LinearMapRep,
    Observable,
    StateSpace,
    one_shot_distinguishing_observable,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def is_clonable(space: StateSpace, states, tol=None) -> bool:
    """Simultaneous one-shot distinguishability, decided by the LP."""
    return one_shot_distinguishing_observable(space, states, tol) is not None


def build_cloner(space: StateSpace, states, observable: Observable,
                 tol=None) -> LinearMapRep:
    """Measure-and-prepare map M = sum_i (w_i (x) w_i) a_i(.).

    Requires a_i(w_j) = delta_ij; M then clones every member of states
    and broadcasts their whole convex hull.
    """
    omegas = tuple(vec(s) for s in states)
    eps = space.tol(tol)
    effects = observable.effects
    if len(effects) < len(omegas):
        raise InvalidInputError("observable has fewer outcomes than states")
    for i, w in enumerate(omegas):
        for j, e in enumerate(effects[:len(omegas)]):
            want = 1 if i == j else 0
            if abs(e.value(w) - want) > eps:
                raise InvalidInputError(
                    "observable does not distinguish the given states")
    composite = min_tensor(space, space)
    d2 = composite.dim
    rows = []
    for r in range(d2):
        row = []
        for c in range(space.dim):
            acc = ZERO
            for w, e in zip(omegas, effects):
                acc += product_vec(w, w)[r] * e.functional[c]
            row.append(acc)
        rows.append(tuple(row))
    return LinearMapRep(space, composite, tuple(rows))


@dataclass(frozen=True)
class BroadcastReport:
    """Outcome of the simplex search: verdict plus the witness simplex."""
    status: str  # broadcastable | not_broadcastable | inconclusive
    witness: tuple[Vec, ...] | None
    candidates_tried: int

    @property
    def verdict(self) -> bool | None:
        if self.status == "broadcastable":
            return True
        if self.status == "not_broadcastable":
            return False
        return None


def _in_hull(point: Vec, hull_points: tuple[Vec, ...], eps) -> bool:
    rows = [tuple(p[i] for p in hull_points) for i in range(len(point))]
    rows.append((ONE,) * len(hull_points))
    rhs = tuple(point) + (ONE,)
    x, _ = feasible_point(tuple(rows), rhs, eps)
    return x is not None


def is_broadcastable(space: StateSpace, states, tol=None,
                     max_witness_size: int | None = None) -> BroadcastReport:
    """Search for a distinguishable simplex containing the states.

    Decisive cases: a clonable set is its own witness, and a set made
    entirely of extreme points is broadcastable only if clonable (an
    extreme point inside a simplex in the state set must be one of its
    vertices). Otherwise candidate vertex sets are drawn from the
    extreme points and the states themselves, up to max_witness_size
    (default dim + 1); running out of candidates is inconclusive.
    """
    if space.kind != "polyhedral":
        raise UnsupportedConeError("broadcast search needs a polyhedral space")
    omegas = tuple(vec(s) for s in states)
    eps = space.tol(tol)
    for w in omegas:
        if not space.is_state(w, eps):
            raise InvalidInputError("broadcast inputs must be states")
    if not omegas:
        raise InvalidInputError("no states given")

    if is_clonable(space, omegas, tol):
        return BroadcastReport("broadcastable", omegas, 0)

    extremes = space.vertices
    extreme_keys = {lex_key(v) for v in extremes}
    if all(lex_key(w) in extreme_keys for w in omegas):
        # all-extreme and not clonable: no witness can exist
        return BroadcastReport("not_broadcastable", None, 0)

    pool = list(extremes)
    for w in omegas:
        if lex_key(w) not in extreme_keys:
            pool.append(w)
    cap = max_witness_size if max_witness_size is not None else space.dim + 1
    tried = 0
    for size in range(1, min(cap, len(pool)) + 1):
        for cand in combinations(range(len(pool)), size):
            pts = tuple(pool[i] for i in cand)
            if rank(tuple(vsub(p, pts[0]) for p in pts[1:])) != size - 1:
                continue  # not affinely independent, not a simplex
            tried += 1
            if not all(_in_hull(w, pts, eps) for w in omegas):
                continue
            if is_clonable(space, pts, tol):
                return BroadcastReport("broadcastable", pts, tried)
    return BroadcastReport("inconclusive", None, tried)
