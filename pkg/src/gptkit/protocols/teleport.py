"""Conclusive and deterministic teleportation, plus compression witnesses.

A pair (f, omega) with f a joint effect on AB and omega a shared state
of BA teleports A-states iff mu = omega_hat . f_hat is proportional to
an order isomorphism; the inverse of the normalized factor is the
correction map. For a model with a transitive finite symmetry group
and an equivariant self-duality isomorphism, one observable performs
deterministic teleportation with group-element corrections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..composites import (BipartiteState, effect_on_min, f_hat, max_tensor,
                          min_tensor, omega_hat)
from ..errors import (DimensionMismatchError, InvalidInputError,
                      UnsupportedConeError)
from ..linalg import (Mat, identity, inverse, mat, matmul, matvec, rank,
                      transpose, vec)
from ..lp import feasible_point
from ..models import entangled_state_coords, symmetry_group
from ..spaces import (Effect, LinearMapRep, Observable, StateSpace,
                      _positive_between, is_norm_contractive,
                      is_order_isomorphism, is_positive_map)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class TeleportationCertificate:
    """Outcome of checking one (effect, shared state) pair."""
    mu: LinearMapRep
    constant: Fraction
    correction: LinearMapRep | None
    verdict: bool
    duality_witness: Mat  # the effect's hat map, a candidate A -> A* iso


@dataclass(frozen=True)
class TeleportationScheme:
    """Deterministic protocol: one observable, every outcome correctable."""
    space: StateSpace
    group: tuple[Mat, ...]
    omega: BipartiteState
    effects: tuple[Mat, ...]
    observable: Observable
    certificates: tuple[TeleportationCertificate, ...]
    constant: Fraction


def _fail(a_space: StateSpace, mu: Mat, constant, witness: Mat
          ) -> TeleportationCertificate:
    return TeleportationCertificate(
        mu=LinearMapRep(a_space, a_space, mu), constant=constant,
        correction=None, verdict=False, duality_witness=witness)


def verify_teleportation(a_space: StateSpace, b_space: StateSpace,
                         f_coords, omega: BipartiteState,
                         tol=None) -> TeleportationCertificate:
    """Decide whether measuring f on A+B collapses omega's far half to
    an invertible image of the input state.

    The composite mu = omega_hat . f_hat must equal c.J with c > 0 and
    J an order isomorphism of A; the correction is J's inverse. The
    effect is validated against the minimal composite of (A, B), the
    shared state against the maximal composite of (B, A).
    """
    F = mat(f_coords)
    if len(F) != a_space.dim or any(len(r) != b_space.dim for r in F):
        raise DimensionMismatchError("effect matrix must be dim A x dim B")
    eps = max(a_space.tol(tol), b_space.tol(tol))
    if not effect_on_min(a_space, b_space, F, tol):
        raise InvalidInputError("f is not an effect on the minimal composite")
    if omega.composite.tensor != "max":
        raise InvalidInputError("shared state must live on the maximal "
                                "composite")
    if omega.composite.factor_a.dim != b_space.dim or \
            omega.composite.factor_b.dim != a_space.dim:
        raise DimensionMismatchError("shared state factors must be (B, A)")
    omega.validate(tol)

    witness = f_hat(F)
    mu = matmul(omega_hat(omega), witness)

    u = vec(a_space.unit)
    pulled = matvec(transpose(mu), u)
    j = max(range(len(u)), key=lambda i: abs(u[i]))
    constant = pulled[j] / u[j]
    if constant <= eps:
        return _fail(a_space, mu, constant, witness)
    if any(abs(p - constant * x) > eps for p, x in zip(pulled, u)):
        return _fail(a_space, mu, constant, witness)

    J = tuple(tuple(x / constant for x in row) for row in mu)
    iso = LinearMapRep(a_space, a_space, J)
    if not is_order_isomorphism(iso, tol):
        return _fail(a_space, mu, constant, witness)
    correction = iso.inverse_map()
    if not (is_positive_map(correction, tol)
            and is_norm_contractive(correction, tol)):
        return _fail(a_space, mu, constant, witness)
    return TeleportationCertificate(
        mu=LinearMapRep(a_space, a_space, mu), constant=constant,
        correction=correction, verdict=True, duality_witness=witness)


def verify_correction_free(a_space: StateSpace, b_space: StateSpace,
                           f_coords, omega: BipartiteState,
                           tol=None) -> bool:
    """True iff the pair teleports with the identity correction."""
    cert = verify_teleportation(a_space, b_space, f_coords, omega, tol)
    if not cert.verdict:
        return False
    eps = max(a_space.tol(tol), b_space.tol(tol))
    c = cert.constant
    return all(abs(x - (c if i == j else ZERO)) <= eps
               for i, row in enumerate(cert.mu.matrix)
               for j, x in enumerate(row))


def _entrywise_close(a: Mat, b: Mat, eps) -> bool:
    return all(abs(x - y) <= eps for ra, rb in zip(a, b)
               for x, y in zip(ra, rb))


def construct_deterministic_teleportation(
        space: StateSpace, group: tuple[Mat, ...] | None = None,
        omega_hat_matrix=None, tol=None) -> TeleportationScheme:
    """Deterministic protocol from a transitive symmetry group.

    The shared state is the normalized isomorphism state built from the
    A* -> A order isomorphism; outcome g gets the effect with hat map
    (1/|G|) . omega_hat^{-1} . g. The effects sum to u x u, and every
    outcome's correction is the inverse group element. All structural
    hypotheses (group closure, transitivity, unit preservation,
    equivariance, isomorphism) are checked and raise on failure.
    """
    if group is None:
        group = symmetry_group(space)
    group = tuple(mat(g) for g in group)
    if not group:
        raise InvalidInputError("symmetry group is empty")
    oh = mat(omega_hat_matrix) if omega_hat_matrix is not None \
        else transpose(mat(entangled_state_coords(space)))

    d = space.dim
    eps = space.tol(tol)
    u = vec(space.unit)
    ident = identity(d)

    inverses = []
    for g in group:
        gi = inverse(g)
        if gi is None:
            raise InvalidInputError("group element is singular")
        if any(abs(x - y) > eps for x, y in zip(matvec(transpose(g), u), u)):
            raise InvalidInputError("group element does not preserve the "
                                    "order unit")
        if not is_positive_map(LinearMapRep(space, space, g), tol):
            raise InvalidInputError("group element is not a positive map")
        inverses.append(gi)
    if not any(_entrywise_close(g, ident, eps) for g in group):
        raise InvalidInputError("group lacks an identity element")
    for g in group:
        for h in group:
            gh = matmul(g, h)
            if not any(_entrywise_close(gh, k, eps) for k in group):
                raise InvalidInputError("group is not closed under "
                                        "composition")
    verts = space.vertices
    v0 = verts[0]
    for v in verts:
        if not any(all(abs(x - y) <= eps for x, y in zip(matvec(g, v0), v))
                   for g in group):
            raise InvalidInputError("group does not act transitively on "
                                    "the pure states")

    oh_inv = inverse(oh)
    if oh_inv is None:
        raise InvalidInputError("isomorphism state map is singular")
    for g, gi in zip(group, inverses):
        if not _entrywise_close(matmul(g, oh),
                                matmul(oh, transpose(gi)), eps):
            raise InvalidInputError("isomorphism state map is not "
                                    "group-equivariant")

    # normalize so the shared state has unit total probability
    total = sum(u[i] * sum(oh[j][i] * u[j] for j in range(d))
                for i in range(d))
    if total <= eps:
        raise InvalidInputError("isomorphism state map has nonpositive "
                                "normalization")
    if total != 1:
        oh = tuple(tuple(x / total for x in row) for row in oh)
        oh_inv = tuple(tuple(x * total for x in row) for row in oh_inv)

    dual = space.cone.dual()
    if not (_positive_between(oh, dual, space.cone, eps)
            and _positive_between(oh_inv, space.cone, dual, eps)):
        raise InvalidInputError("state map is not an order isomorphism "
                                "from the dual")

    shared = BipartiteState(max_tensor(space, space), transpose(oh))
    shared.validate(tol)

    order = Fraction(1, len(group))
    effects = []
    for g in group:
        fg_hat = matmul(oh_inv, g)
        effects.append(transpose(tuple(tuple(order * x for x in row)
                                       for row in fg_hat)))
    unit_effect = tuple(tuple(ua * ub for ub in u) for ua in u)
    total_effect = effects[0]
    for F in effects[1:]:
        total_effect = tuple(tuple(x + y for x, y in zip(ra, rb))
                             for ra, rb in zip(total_effect, F))
    if not _entrywise_close(total_effect, unit_effect, eps):
        raise InvalidInputError("outcome effects do not sum to the product "
                                "unit")

    min_space = min_tensor(space, space)
    for F in effects:
        if not effect_on_min(space, space, F, tol):
            raise InvalidInputError("an outcome is not an effect on the "
                                    "minimal composite")
    observable = Observable(
        min_space, tuple(Effect(min_space, tuple(x for row in F for x in row))
                         for F in effects))

    certificates = []
    for g, gi, F in zip(group, inverses, effects):
        cert = verify_teleportation(space, space, F, shared, tol)
        if not cert.verdict:
            raise InvalidInputError("an outcome fails teleportation "
                                    "verification")
        if abs(cert.constant - order) > eps:
            raise InvalidInputError("an outcome has the wrong "
                                    "proportionality constant")
        if not _entrywise_close(cert.correction.matrix, gi, eps):
            raise InvalidInputError("an outcome's correction is not the "
                                    "inverse group element")
        certificates.append(cert)

    return TeleportationScheme(
        space=space, group=group, omega=shared, effects=tuple(effects),
        observable=observable, certificates=tuple(certificates),
        constant=order)


def verify_compression_witness(a1: StateSpace, a2: StateSpace, p_coords,
                               tol=None) -> bool:
    """Whether P: A2* -> A1 exhibits A1 as a compression's range.

    P must be positive from the dual cone of A2 onto all of A1 (full
    rank), and must admit a positive section i (cone A1 -> dual A2)
    with P . i = id; then i . P is a positive idempotent on A2* whose
    range order is A1's. The section is found by one feasibility LP.
    """
    P = mat(p_coords)
    if len(P) != a1.dim or any(len(r) != a2.dim for r in P):
        raise DimensionMismatchError("witness must map dual A2 coords to A1")
    if a1.kind != "polyhedral" or a2.kind != "polyhedral":
        raise UnsupportedConeError("compression witness needs polyhedral "
                                   "spaces")
    eps = max(a1.tol(tol), a2.tol(tol))
    if not _positive_between(P, a2.cone.dual(), a1.cone, eps):
        return False
    if rank(P) != a1.dim:
        return False

    # section entries split into +/- parts; slack per positivity row
    d1, d2 = a1.dim, a2.dim
    gens1 = a1.cone.generators
    gens2 = a2.cone.generators
    nfree = d2 * d1
    npos = len(gens1) * len(gens2)
    width = 2 * nfree + npos
    rows = []
    rhs = []
    for i in range(d1):
        for j in range(d1):
            row = [ZERO] * width
            for k in range(d2):
                row[k * d1 + j] = P[i][k]
                row[nfree + k * d1 + j] = -P[i][k]
            rows.append(tuple(row))
            rhs.append(ONE if i == j else ZERO)
    si = 2 * nfree
    for g in gens1:
        for h in gens2:
            row = [ZERO] * width
            for k in range(d2):
                for m in range(d1):
                    row[k * d1 + m] = h[k] * g[m]
                    row[nfree + k * d1 + m] = -h[k] * g[m]
            row[si] = -ONE
            si += 1
            rows.append(tuple(row))
            rhs.append(ZERO)
    x, residual = feasible_point(tuple(rows), tuple(rhs), eps)
    return x is not None
