from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic_y3 import lines
from cubic_y3.exact import fieldlin
from cubic_y3.exact.cyclotomic import OMEGA, Cyclotomic
from cubic_y3.lines import PointTag, ProjLine, classify_point, normalize_point
from cubic_y3.polyring import CubicSurface, MultiPoly, fermat, fermat_form, hessian_det, linear_change

from oracles import tangent_cone_rank

FERMAT_LINES = lines.fermat_lines()
FERMAT_INC = lines.eckardt_points(FERMAT_LINES)
SAMPLES = lines.fermat_sample_points()


def conj_point(p):
    return tuple(x.conj() if isinstance(x, Cyclotomic) else x for x in p)


def test_fermat_lines_distinct_and_on_surface():
    F = fermat_form()
    assert len(FERMAT_LINES) == 27
    assert len(set(FERMAT_LINES)) == 27
    for L in FERMAT_LINES:
        assert L.lies_on(F)
        assert lines.restriction_vanishes(F, L)


def test_line_containment_by_point_evaluation():
    # independent check: F vanishes at five points of each line
    F = fermat_form()
    for L in FERMAT_LINES:
        p, q = L.points
        for t in range(5):
            assert not F.evaluate([a + t * b for a, b in zip(p, q)])


def test_non_line_is_rejected():
    F = fermat_form()
    L = ProjLine([1, 0, 0, 0], [0, 1, 0, 0])
    assert not L.lies_on(F)
    assert not lines.restriction_vanishes(F, L)


def test_fermat_incidence_counts():
    inc = FERMAT_INC
    assert len(inc.eckardt) == 18
    assert all(len(inc.eckardt_on_line[i]) == 2 for i in range(27))
    assert all(len(inc.neighbors(i)) == 10 for i in range(27))
    assert inc.edge_count() == 135
    assert len(inc.triangles()) == 45


def test_meeting_relation_against_determinant_oracle():
    # two lines in P^3 meet iff their four spanning points are dependent
    for i, L in enumerate(FERMAT_LINES):
        for j, M in enumerate(FERMAT_LINES):
            if i < j:
                dep = not fieldlin.det([*L.points, *M.points])
                assert dep == FERMAT_INC.meets[i][j]


def test_eckardt_points_are_on_their_lines_and_surface():
    F = fermat_form()
    for e in FERMAT_INC.eckardt:
        assert not F.evaluate(e.point)
        assert all(FERMAT_LINES[k].contains_point(e.point) for k in e.lines)


def test_generic_incidence():
    inc = lines.generic_incidence()
    assert inc.edge_count() == 135
    assert len(inc.triangles()) == 45
    assert not inc.eckardt
    # every line lies in exactly five tritangent planes
    counts = [sum(i in t for t in inc.triangles()) for i in range(27)]
    assert counts == [5] * 27


def test_generic_and_fermat_graphs_have_same_degree_sequence():
    g = lines.generic_incidence()
    assert sorted(len(g.neighbors(i)) for i in range(27)) == sorted(
        len(FERMAT_INC.neighbors(i)) for i in range(27)
    )


def test_incidence_json_round_trip():
    back = lines.IncidenceData.from_dict(json.loads(FERMAT_INC.to_json()))
    assert back.meets == FERMAT_INC.meets
    assert [e.lines for e in back.eckardt] == [e.lines for e in FERMAT_INC.eckardt]
    assert [e.point for e in back.eckardt] == [e.point for e in FERMAT_INC.eckardt]


def test_incidence_validation_rejects_bad_data():
    data = json.loads(FERMAT_INC.to_json())
    data["meets"] = data["meets"][1:]
    with pytest.raises(ValueError):
        lines.IncidenceData.from_dict(data)


def test_duplicate_lines_rejected():
    with pytest.raises(ValueError):
        lines.eckardt_points([FERMAT_LINES[0], FERMAT_LINES[0]])


def test_line_json_round_trip():
    for L in FERMAT_LINES:
        assert ProjLine.from_json(json.loads(json.dumps(L.to_json()))) == L


def test_line_intersection():
    L = ProjLine([1, 0, 0, 0], [0, 1, 0, 0])
    M = ProjLine([1, 1, 0, 0], [0, 0, 1, 0])
    N = ProjLine([0, 0, 1, 0], [0, 0, 0, 1])
    assert lines.line_intersection(L, M) == (1, 1, 0, 0)
    assert lines.line_intersection(L, N) is None


# --- classification of points ----------------------------------------------


def test_classification_examples():
    X = fermat()
    assert classify_point(X, [1, -1, 1, -1]).tag is PointTag.TwoPoints
    assert classify_point(X, [1, -1, 0, 0]).tag is PointTag.WholeLine
    assert classify_point(lines.case2_surface(), [1, 0, 0, 0]).tag is PointTag.OnePoint


def test_classification_rejects_bad_points():
    X = fermat()
    with pytest.raises(ValueError):
        classify_point(X, [1, 0, 0, 0])  # not on X
    x0, x1, x2, x3 = MultiPoly.gens(4)
    cone = CubicSurface(x1**3 + x2**3 + x3**3)
    with pytest.raises(ValueError):
        classify_point(cone, [1, 0, 0, 0])  # singular vertex


def test_sample_point_census():
    tags = [classify_point(fermat(), p).tag for p in SAMPLES]
    assert len(SAMPLES) == 99
    assert tags.count(PointTag.TwoPoints) == 81
    assert tags.count(PointTag.WholeLine) == 18


def test_eckardt_points_classify_as_whole_line():
    X = fermat()
    for e in FERMAT_INC.eckardt:
        assert classify_point(X, e.point).tag is PointTag.WholeLine


def test_classification_against_hessian_rank_oracle():
    X = fermat()
    expected = {2: PointTag.TwoPoints, 1: PointTag.OnePoint, 0: PointTag.WholeLine}
    for p in SAMPLES:
        assert classify_point(X, p).tag is expected[tangent_cone_rank(X.F, p)]
    Y = lines.case2_surface()
    assert tangent_cone_rank(Y.F, (1, 0, 0, 0)) == 1


def test_branch_consistency_on_all_samples():
    X = fermat()
    H = hessian_det(X.F)
    assert all(lines.branch_consistency(X, p, H) for p in SAMPLES)
    assert lines.branch_consistency(lines.case2_surface(), (1, 0, 0, 0))


def test_classification_invariant_under_conjugation():
    X = fermat()
    for p in SAMPLES:
        q = normalize_point(conj_point(p))
        assert X.contains(q)
        assert classify_point(X, p).tag is classify_point(X, q).tag


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_classification_invariant_under_linear_change(seed):
    rng = random.Random(seed)
    while True:
        M = [[Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
        if fieldlin.det(M):
            break
    X = fermat()
    Y = CubicSurface(linear_change(X.F, M))  # Y(x) = X(Mx)
    p = rng.choice(SAMPLES)
    q = fieldlin.solve(M, list(p))  # M q = p
    assert Y.contains(q)
    assert classify_point(Y, q).tag is classify_point(X, p).tag


def test_normal_form_shape():
    X = fermat()
    p = (1, -OMEGA, 1, -1)
    G = lines.normalize_at_point(X, p)
    # G = x0^2 x3 + x0 Q(x1, x2) + C(x1, x2, x3)
    assert G.coeff((3, 0, 0, 0)) == 0
    assert G.coeff((2, 0, 0, 1)) != 0
    assert all(not G.coeff((2,) + e) for e in ((1, 0, 0), (0, 1, 0)))
    assert all(not G.coeff(e) for e in ((1, 1, 0, 1), (1, 0, 1, 1), (1, 0, 0, 2)))
