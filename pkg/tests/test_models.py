import math
from fractions import Fraction

import pytest

from gptkit.composites import BipartiteState, is_entangled, max_tensor
from gptkit.errors import InvalidInputError, UnsupportedConeError
from gptkit.linalg import identity, lex_key, matmul, matvec, transpose, vec
from gptkit.models import (direct_sum, entangled_state_coords, make_ball,
                           make_classical, make_polygon, make_squit,
                           parse_model_name, symmetry_group)
from gptkit.spaces import StateSpace

F = Fraction
EPS = F(1, 10 ** 9)


def test_classical_is_orthant():
    cl = make_classical(3)
    assert cl.dim == 3
    assert cl.arithmetic == "rational"
    assert set(cl.vertices) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert cl.unit == (1, 1, 1)
    assert cl.name == "classical:3"


def test_squit_is_exact_square():
    sq = make_squit()
    assert sq.name == "polygon:4"
    assert sq.arithmetic == "rational"
    assert sq.vertices == ((1, 1, 1), (-1, 1, 1), (-1, -1, 1), (1, -1, 1))
    assert {lex_key(f) for f in sq.cone.facets} == {
        lex_key(vec(f))
        for f in ((-1, 0, 1), (0, -1, 1), (0, 1, 1), (1, 0, 1))}


def test_polygon_facets_stay_lazy():
    p5 = make_polygon(5)
    assert p5.arithmetic == "float"
    assert not p5.cone.has_facets()
    assert len(p5.cone.facets) == 5
    assert p5.cone.has_facets()


def test_polygon_vertices_on_circle():
    p7 = make_polygon(7)
    for k, v in enumerate(p7.vertices):
        ang = 2 * math.pi * k / 7
        assert abs(v[0] - F(math.cos(ang))) <= EPS
        assert abs(v[1] - F(math.sin(ang))) <= EPS
        assert v[2] == 1


def test_polygon_rejects_degenerate():
    with pytest.raises(InvalidInputError):
        make_polygon(2)
    with pytest.raises(InvalidInputError):
        make_classical(0)


def test_ball_is_lorentz():
    ball = make_ball(3)
    assert ball.kind == "lorentz"
    assert ball.dim == 4
    assert ball.unit == (0, 0, 0, 1)
    assert ball.is_state(vec((0, 0, 0, 1)))
    with pytest.raises(UnsupportedConeError):
        ball.vertices


def test_parse_model_name():
    assert parse_model_name("squit").name == "polygon:4"
    assert parse_model_name("classical:5").dim == 5
    assert parse_model_name("polygon:6").dim == 3
    assert parse_model_name("ball:2").kind == "lorentz"
    for bad in ("triangle", "classical", "classical:x", "polygon:1", ""):
        with pytest.raises(InvalidInputError):
            parse_model_name(bad)


def test_direct_sum_shape():
    both = direct_sum(make_squit(), make_classical(2))
    assert both.dim == 5
    assert both.unit == (0, 0, 1, 1, 1)
    assert len(both.cone.generators) == 6
    padded = {g[:3] for g in both.cone.generators if g[3:] == (0, 0)}
    assert padded == set(make_squit().cone.generators)


def test_direct_sum_rejects_lorentz():
    with pytest.raises(UnsupportedConeError):
        direct_sum(make_ball(2), make_classical(2))


def test_symmetry_group_squit():
    sq = make_squit()
    group = symmetry_group(sq)
    assert len(group) == 4
    assert group[0] == identity(3)
    verts = set(sq.vertices)
    for g in group:
        assert {tuple(matvec(g, v)) for v in sq.vertices} == verts
    # closure
    keys = {tuple(map(tuple, g)) for g in group}
    for g in group:
        for h in group:
            assert tuple(map(tuple, matmul(g, h))) in keys


def test_symmetry_group_classical_permutes():
    cl = make_classical(3)
    group = symmetry_group(cl)
    assert len(group) == 3
    orbit = {tuple(matvec(g, cl.vertices[0])) for g in group}
    assert orbit == set(cl.vertices)


def test_symmetry_group_polygon_order():
    assert len(symmetry_group(make_polygon(6))) == 6
    with pytest.raises(UnsupportedConeError):
        symmetry_group(make_ball(2))


def test_entangled_state_coords_squit_frozen():
    sq = make_squit()
    coords = entangled_state_coords(sq)
    assert coords == ((1, 1, 0), (-1, 1, 0), (0, 0, 1))
    state = BipartiteState(max_tensor(sq, sq), coords)
    state.validate()
    assert is_entangled(state)


def test_entangled_state_coords_classical_separable():
    cl = make_classical(3)
    coords = entangled_state_coords(cl)
    assert coords == tuple(
        tuple(F(1, 3) if i == j else 0 for j in range(3)) for i in range(3))
    state = BipartiteState(max_tensor(cl, cl), coords)
    state.validate()
    assert not is_entangled(state)


def test_entangled_state_coords_polygon_normalized():
    for n in (3, 5, 6):
        pn = make_polygon(n)
        state = BipartiteState(max_tensor(pn, pn),
                               entangled_state_coords(pn))
        state.validate()
        u = vec(pn.unit)
        total = sum(ua * sum(x * ub for x, ub in zip(row, u))
                    for ua, row in zip(u, state.coords))
        assert abs(total - 1) <= EPS


def test_hat_map_sends_facets_to_vertices():
    # the isomorphism state's hat map sends every facet onto a vertex ray
    for n in (4, 5, 8):
        pn = make_polygon(n)
        omega_hat = transpose(entangled_state_coords(pn))
        verts = pn.vertices
        for f in pn.cone.facets:
            image = matvec(omega_hat, f)
            assert image[2] > 0
            ray = tuple(x / image[2] for x in image)
            assert any(all(abs(a - b) <= 2 * EPS for a, b in zip(ray, v))
                       for v in verts)


def test_model_json_round_trip():
    for space in (make_squit(), make_classical(2), make_polygon(5),
                  make_ball(3)):
        body = space.to_json_dict()
        back = StateSpace.from_json_dict(body)
        assert back.dim == space.dim
        assert back.kind == space.kind
        assert back.unit == space.unit
        if space.kind == "polyhedral":
            assert {lex_key(g) for g in back.cone.generators} == {
                lex_key(g) for g in space.cone.generators}
