import random
from fractions import Fraction

from gptkit.linalg import identity, matmul, matvec
from gptkit.models import direct_sum, make_classical, make_polygon, make_squit
from gptkit.protocols import is_nondisturbing, nondisturbing_basis
from gptkit.spaces import is_positive_map

F = Fraction


def test_classical_basis_is_diagonal_idempotents():
    basis = nondisturbing_basis(make_classical(3))
    assert len(basis) == 3
    mats = sorted(tuple(map(tuple, t.matrix)) for t in basis)
    want = sorted(
        tuple(tuple(1 if (i == j == k) else 0 for j in range(3))
              for i in range(3)) for k in range(3))
    assert mats == want


def test_basis_resolves_identity():
    for space in (make_classical(3), make_squit(),
                  direct_sum(make_squit(), make_classical(2))):
        basis = nondisturbing_basis(space)
        total = identity(space.dim)
        acc = tuple(tuple(sum(t.matrix[i][j] for t in basis)
                          for j in range(space.dim))
                    for i in range(space.dim))
        assert acc == total
        for t in basis:
            assert matmul(t.matrix, t.matrix) == t.matrix  # idempotent
            assert is_positive_map(t)


def test_summand_counts():
    assert len(nondisturbing_basis(make_squit())) == 1
    assert len(nondisturbing_basis(make_polygon(5))) == 1
    assert len(nondisturbing_basis(
        direct_sum(make_squit(), make_classical(1)))) == 2


def test_identity_and_scalings_nondisturb():
    sq = make_squit()
    assert is_nondisturbing(sq, identity(3))
    assert is_nondisturbing(sq, tuple(tuple(3 * x for x in row)
                                      for row in identity(3)))
    assert is_nondisturbing(sq, tuple(tuple(0 * x for x in row)
                                      for row in identity(3)))


def test_rotation_disturbs_squit():
    sq = make_squit()
    rot = ((0, -1, 0), (1, 0, 0), (0, 0, 1))
    assert not is_nondisturbing(sq, rot)
    # yet the rotation is a perfectly valid positive map
    for v in sq.vertices:
        assert sq.cone.contains(matvec(rot, v))


def test_summand_dependent_scaling():
    cl = make_classical(2)
    assert is_nondisturbing(cl, ((2, 0), (0, 3)))
    assert not is_nondisturbing(cl, ((0, 1), (1, 0)))  # swap moves vertices
    assert not is_nondisturbing(cl, ((-1, 0), (0, 1)))  # negative multiple


def test_accepts_map_rep_and_raw_matrix():
    sq = make_squit()
    basis = nondisturbing_basis(sq)
    assert is_nondisturbing(sq, basis[0])
    assert is_nondisturbing(sq, basis[0].matrix)


def test_nonnegative_span_is_exactly_nondisturbing():
    space = direct_sum(make_squit(), make_classical(2))
    basis = nondisturbing_basis(space)
    rng = random.Random(5)
    for _ in range(25):
        cs = [F(rng.randint(0, 5)) for _ in basis]
        combo = tuple(tuple(sum(c * t.matrix[i][j]
                                for c, t in zip(cs, basis))
                            for j in range(space.dim))
                      for i in range(space.dim))
        assert is_nondisturbing(space, combo)
    # one negative coefficient breaks it (unless that block is scaled by 0)
    combo = tuple(tuple(2 * basis[0].matrix[i][j] - basis[1].matrix[i][j]
                        for j in range(space.dim))
                  for i in range(space.dim))
    assert not is_nondisturbing(space, combo)
