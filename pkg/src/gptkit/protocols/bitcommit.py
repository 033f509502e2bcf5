"""Bit commitment from a doubly decomposable state.

A non-simplicial state set admits a state with two mixture
decompositions over disjoint exposed pure sets. Committing to bit b
means sampling n pure states from branch b; the reveal hands over the
sample string, and the verifier fires each state's exposing effect.
The two branches mix to the same state, so the commitment is perfectly
hiding; the exposing effects make honest reveals accept surely, and
the optimal product-strategy cheat decays exponentially in n.

All randomness comes from a counter-based generator seeded explicitly;
the seed is recorded in every transcript.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from ..errors import InvalidInputError, SearchCapError, UnsupportedConeError
from ..linalg import Vec, dot, vec, zeros
from ..lp import solve_lp
from ..spaces import StateSpace

ZERO = Fraction(0)
ONE = Fraction(1)

_VERTEX_CAP = 14  # subset search above this many extreme points is refused


def exposing_effect(space: StateSpace, index: int,
                    tol=None) -> tuple[Vec, Fraction] | None:
    """Best-margin effect taking value 1 on vertex `index` alone.

    Maximizes m subject to a(v_index) = 1 and a(v_j) <= 1 - m on every
    other vertex, with a ranging over the dual cone. Returns (effect,
    margin), or None when the vertex is not exposed (margin <= 0).
    """
    verts = space.vertices
    duals = space.cone.facets
    eps = space.tol(tol)
    r, k, d = len(duals), len(verts), space.dim
    # variables: theta (r), m, slacks (k - 1)
    nvars = r + 1 + (k - 1)
    rows = []
    rhs = []
    row = [ZERO] * nvars
    for t in range(r):
        row[t] = dot(duals[t], verts[index])
    rows.append(tuple(row))
    rhs.append(ONE)
    si = r + 1
    for j in range(k):
        if j == index:
            continue
        row = [ZERO] * nvars
        for t in range(r):
            row[t] = dot(duals[t], verts[j])
        row[r] = ONE
        row[si] = ONE
        si += 1
        rows.append(tuple(row))
        rhs.append(ONE)
    cost = [ZERO] * nvars
    cost[r] = ONE
    result = solve_lp(tuple(cost), tuple(rows), tuple(rhs), maximize=True)
    if not result.ok:
        return None
    margin = result.x[r]
    if margin <= eps:
        return None
    effect = zeros(d)
    for t in range(r):
        if result.x[t] != 0:
            effect = tuple(e + result.x[t] * dv
                           for e, dv in zip(effect, duals[t]))
    return effect, margin


@dataclass(frozen=True)
class DoubleDecomposition:
    """One state, two disjoint exposed-state mixtures."""
    space: StateSpace
    omega: Vec
    branch0: tuple[tuple[Vec, Fraction], ...]
    branch1: tuple[tuple[Vec, Fraction], ...]
    distinguishers0: tuple[Vec, ...]
    distinguishers1: tuple[Vec, ...]

    def branches(self, bit: int) -> tuple[tuple[Vec, Fraction], ...]:
        return self.branch0 if bit == 0 else self.branch1

    def distinguishers(self, bit: int) -> tuple[Vec, ...]:
        return self.distinguishers0 if bit == 0 else self.distinguishers1

    def verify(self, tol=None) -> bool:
        eps = self.space.tol(tol)
        mix0 = zeros(self.space.dim)
        for state, p in self.branch0:
            if p < -eps:
                return False
            mix0 = tuple(m + p * s for m, s in zip(mix0, state))
        mix1 = zeros(self.space.dim)
        for state, p in self.branch1:
            if p < -eps:
                return False
            mix1 = tuple(m + p * s for m, s in zip(mix1, state))
        if any(abs(a - b) > eps for a, b in zip(mix0, self.omega)):
            return False
        if any(abs(a - b) > eps for a, b in zip(mix1, self.omega)):
            return False
        states0 = {tuple(s) for s, _ in self.branch0}
        states1 = {tuple(s) for s, _ in self.branch1}
        if states0 & states1:
            return False
        for members, effects in ((self.branch0, self.distinguishers0),
                                 (self.branch1, self.distinguishers1)):
            for (state, _), a in zip(members, effects):
                if abs(dot(a, state) - 1) > eps:
                    return False
                for v in self.space.vertices:
                    if v != state and dot(a, v) >= 1 - eps:
                        return False
        return True


def find_double_decomposition(space: StateSpace,
                              tol=None) -> DoubleDecomposition:
    """Smallest pair of disjoint exposed vertex sets mixing to one state.

    Scans disjoint subset pairs by ascending total size and returns the
    first whose convex hulls intersect; the shared point and the mixing
    weights come from the feasibility LP. Simplicial spaces are refused
    (mixtures over disjoint sets are never equal there).
    """
    if space.kind != "polyhedral":
        raise UnsupportedConeError("decomposition needs a polyhedral space")
    verts = space.vertices
    m = len(verts)
    eps = space.tol(tol)
    if m == space.dim:
        raise InvalidInputError(
            "state set is a simplex; no double decomposition exists")
    if m > _VERTEX_CAP:
        raise SearchCapError(f"subset search over {m} vertices exceeds cap")

    for total in range(4, m + 1):
        for k0 in range(2, total - 1):
            k1 = total - k0
            if k1 < k0:
                break
            for idx0 in combinations(range(m), k0):
                rest = [i for i in range(m) if i not in idx0]
                for idx1 in combinations(rest, k1):
                    if k0 == k1 and idx1[0] < idx0[0]:
                        continue  # unordered pair, count once
                    found = _try_pair(space, verts, idx0, idx1, eps, tol)
                    if found is not None:
                        return found
    raise SearchCapError("no double decomposition among the extreme points")


def _try_pair(space, verts, idx0, idx1, eps, tol):
    d = space.dim
    k0, k1 = len(idx0), len(idx1)
    rows = []
    rhs = []
    for i in range(d):
        rows.append(tuple(verts[j][i] for j in idx0)
                    + tuple(-verts[j][i] for j in idx1))
        rhs.append(ZERO)
    rows.append((ONE,) * k0 + (ZERO,) * k1)
    rhs.append(ONE)
    rows.append((ZERO,) * k0 + (ONE,) * k1)
    rhs.append(ONE)
    result = solve_lp((ZERO,) * (k0 + k1), tuple(rows), tuple(rhs))
    if result.status != "optimal":
        return None
    weights = result.x
    if any(w <= eps for w in weights):
        return None  # smaller pair would do; covered at a lower total
    effects = {}
    for j in set(idx0) | set(idx1):
        hit = exposing_effect(space, j, tol)
        if hit is None:
            return None
        effects[j] = hit[0]
    omega = zeros(d)
    for pos, j in enumerate(idx0):
        omega = tuple(o + weights[pos] * x for o, x in zip(omega, verts[j]))
    branch0 = tuple((verts[j], weights[pos]) for pos, j in enumerate(idx0))
    branch1 = tuple((verts[j], weights[k0 + pos])
                    for pos, j in enumerate(idx1))
    return DoubleDecomposition(
        space, omega, branch0, branch1,
        tuple(effects[j] for j in idx0), tuple(effects[j] for j in idx1))


@dataclass(frozen=True)
class CommitmentTranscript:
    """Full record of one commit/reveal round trip."""
    bit: int
    n: int
    seed: int
    samples: str
    committed: tuple[Vec, ...]
    reveal: tuple[int, str]
    verdict: str  # accept | reject


def bc_run(space: StateSpace, dd: DoubleDecomposition, bit: int, n: int,
           seed: int, tamper: tuple[int, int] | None = None
           ) -> CommitmentTranscript:
    """Simulate one honest (or reveal-tampered) commitment round trip.

    Honest runs always accept: each committed state's exposing effect
    fires with probability exactly 1. A tampered reveal claims a wrong
    sample at one position and is caught with its exposure margin.
    """
    if bit not in (0, 1):
        raise InvalidInputError("bit must be 0 or 1")
    if n < 1:
        raise InvalidInputError("need at least one round")
    branch = dd.branches(bit)
    if len(branch) > 10:
        raise InvalidInputError("branch too large for digit sample encoding")
    rng = np.random.Generator(np.random.Philox(seed))
    probs = np.array([float(p) for _, p in branch])
    probs = probs / probs.sum()
    drawn = [int(i) for i in rng.choice(len(branch), size=n, p=probs)]
    committed = tuple(branch[i][0] for i in drawn)
    claimed = list(drawn)
    if tamper is not None:
        pos, value = tamper
        if not (0 <= pos < n) or not (0 <= value < len(branch)):
            raise InvalidInputError("tamper position or value out of range")
        claimed[pos] = value
    distinguishers = dd.distinguishers(bit)
    accept = True
    for k in range(n):
        fire_p = float(dot(distinguishers[claimed[k]], committed[k]))
        if not rng.random() < fire_p:
            accept = False
    return CommitmentTranscript(
        bit=bit, n=n, seed=seed,
        samples="".join(str(i) for i in drawn),
        committed=committed,
        reveal=(bit, "".join(str(i) for i in claimed)),
        verdict="accept" if accept else "reject")


@dataclass(frozen=True)
class CheatBound:
    """Optimal product-strategy cheat value and its certificate."""
    per_round: Fraction
    rounds: int
    overall: Fraction
    optimizer: Vec
    pair: tuple[int, int]


def bc_cheat_bound(space: StateSpace, dd: DoubleDecomposition,
                   n: int) -> CheatBound:
    """max over states of min(best branch-0 effect, best branch-1 effect).

    For each pair of exposing effects, an LP maximizes the common value
    t over the state polytope; the outer max over pairs realizes the
    piecewise-linear objective exactly. Cheating is limited to product
    strategies, so n rounds compound to per_round**n.
    """
    if n < 1:
        raise InvalidInputError("need at least one round")
    verts = space.vertices
    m = len(verts)
    best = None
    for i0, a0 in enumerate(dd.distinguishers0):
        for i1, a1 in enumerate(dd.distinguishers1):
            # variables: lambda (m), t, slacks s0 s1
            rows = []
            rhs = []
            rows.append((ONE,) * m + (ZERO, ZERO, ZERO))
            rhs.append(ONE)
            rows.append(tuple(dot(a0, v) for v in verts)
                        + (-ONE, -ONE, ZERO))
            rhs.append(ZERO)
            rows.append(tuple(dot(a1, v) for v in verts)
                        + (-ONE, ZERO, -ONE))
            rhs.append(ZERO)
            cost = (ZERO,) * m + (ONE, ZERO, ZERO)
            result = solve_lp(cost, tuple(rows), tuple(rhs), maximize=True)
            if not result.ok:
                continue
            t = result.x[m]
            if best is None or t > best[0]:
                sigma = zeros(space.dim)
                for pos in range(m):
                    if result.x[pos] != 0:
                        sigma = tuple(s + result.x[pos] * x
                                      for s, x in zip(sigma, verts[pos]))
                best = (t, sigma, (i0, i1))
    if best is None:
        raise InvalidInputError("cheat LP failed on every distinguisher pair")
    c, sigma, pair = best
    return CheatBound(per_round=c, rounds=n, overall=c ** n,
                      optimizer=sigma, pair=pair)


def bc_cheat_curve(space: StateSpace, dd: DoubleDecomposition, n_max: int,
                   trials: int, seed: int):
    """Analytic c**n against simulated product-cheat success, n = 1..n_max.

    Returns rows (n, analytic, empirical, stderr). The simulated Alice
    commits the optimal product state and reveals her weaker bit; each
    round fires independently, so trials are vectorized.
    """
    if n_max < 1 or trials < 1:
        raise InvalidInputError("n_max and trials must be positive")
    bound = bc_cheat_bound(space, dd, 1)
    sigma = bound.optimizer
    q0 = max(float(dot(a, sigma)) for a in dd.distinguishers0)
    q1 = max(float(dot(a, sigma)) for a in dd.distinguishers1)
    q = min(q0, q1)
    rng = np.random.Generator(np.random.Philox(seed))
    rows = []
    for n in range(1, n_max + 1):
        fired = rng.random((trials, n)) < q
        wins = fired.all(axis=1)
        emp = float(wins.mean())
        stderr = float(np.sqrt(emp * (1.0 - emp) / trials))
        rows.append((n, bound.per_round ** n, emp, stderr))
    return tuple(rows)
