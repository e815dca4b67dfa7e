from __future__ import annotations

import pytest

from supersnake.polygon import (
    ArcInTriangulation,
    BoundaryArc,
    CrossingArcs,
    DuplicateArc,
    InternalTriangle,
    NotInternalArc,
    NotLongestArc,
    NotMaximal,
    OrientedTriangulation,
    OutOfRangeVertex,
    all_triangulations,
    arcs_cross,
    fanless_triangulations,
    internal_arcs,
    oriented,
    positive_order_inductive,
    positive_order_remark,
    validate,
)

CATALAN = {4: 2, 5: 5, 6: 14, 7: 42, 8: 132}


def test_validate_pentagon_golden():
    tri = validate(5, [(1, 4), (1, 3)])
    assert tri.triangles == ((0, 1, 4), (1, 2, 3), (1, 3, 4))
    assert tri.ears == ((0, 1, 4), (1, 2, 3))
    assert tri.longest == (0, 2)


def test_validate_errors():
    with pytest.raises(CrossingArcs):
        validate(5, [(0, 2), (1, 3)])
    with pytest.raises(InternalTriangle):
        validate(6, [(0, 2), (2, 4), (0, 4)])
    with pytest.raises(DuplicateArc):
        validate(5, [(1, 4), (4, 1)])
    with pytest.raises(OutOfRangeVertex):
        validate(5, [(1, 7), (1, 3)])
    with pytest.raises(NotMaximal):
        validate(6, [(0, 2), (2, 4)])
    with pytest.raises(NotInternalArc):
        validate(5, [(0, 1), (1, 3)])
    with pytest.raises(OutOfRangeVertex):
        validate(3, [])


def test_arcs_cross():
    assert arcs_cross(5, (0, 2), (1, 3))
    assert not arcs_cross(5, (0, 2), (2, 4))   # shared endpoint
    assert not arcs_cross(8, (0, 3), (4, 7))


def test_crossed_arcs_pentagon(pentagon):
    labels, tris = pentagon.crossed_arcs((0, 2))
    assert labels == [1, 2]
    assert tris == [1, 2, 3]


def test_crossed_arcs_octagon(octagon):
    labels, tris = octagon.crossed_arcs((2, 6), start=2)
    assert labels == [1, 2, 3, 4]
    assert tris == [1, 2, 3, 4, 5]


def test_crossed_arcs_single(pentagon):
    labels, tris = pentagon.crossed_arcs((0, 3))
    assert labels == [1]
    assert tris == [1, 2]


def test_crossed_arcs_errors(pentagon):
    with pytest.raises(ArcInTriangulation):
        pentagon.crossed_arcs((1, 4))
    with pytest.raises(BoundaryArc):
        pentagon.crossed_arcs((0, 1))


def test_fan_centres(pentagon, fan_octagon):
    assert pentagon.fan_centres == (1,)
    assert fan_octagon.fan_centres == (2, 7, 3)


def test_fan_triangulation_single_centre():
    # all diagonals share vertex 0
    ot = oriented(6, [(0, 2), (0, 3), (0, 4)], 1, 5)
    assert ot.fan_centres == (0,)
    assert all(d[0] == 0 for d in ot.arc_dir.values())


def test_default_orientation_golden(pentagon, fan_octagon):
    assert pentagon.arc_dir == {(1, 4): (1, 4), (1, 3): (1, 3)}
    assert fan_octagon.arc_dir == {
        (0, 2): (2, 0),
        (2, 7): (2, 7),
        (3, 7): (7, 3),   # the shared fan edge c2 -> c3
        (3, 6): (3, 6),
        (3, 5): (3, 5),
    }


def test_positive_order_golden(pentagon, fan_octagon):
    assert pentagon.pos_order == (3, 2, 1)
    assert fan_octagon.pos_order == (3, 6, 5, 4, 2, 1)


def test_positive_order_case_one():
    # fan with centre clockwise of s: theta_1 dominates
    ot = oriented(5, [(1, 4), (2, 4)], 0, 3)
    assert ot.pos_order[0] == 1


def test_positive_orders_agree_small():
    for v in range(4, 9):
        for tri in fanless_triangulations(v):
            for s, t in (tri.longest, tri.longest[::-1]):
                ot = OrientedTriangulation(tri, s, t)
                assert positive_order_remark(ot) == positive_order_inductive(ot)


def test_quiver_golden(pentagon, octagon, square):
    assert pentagon.quiver_arrows == ((1, 2),)
    # 1 <- 2 <- 3 -> 4 <- 5
    assert octagon.quiver_arrows == ((2, 1), (3, 2), (3, 4), (5, 4))
    assert square.quiver_arrows == ()


def test_quiver_shape():
    for v in (5, 6, 7):
        for tri in fanless_triangulations(v):
            ot = OrientedTriangulation(tri, *tri.longest)
            assert len(ot.quiver_arrows) == tri.n - 1
            for k, (i, j) in enumerate(ot.quiver_arrows, start=1):
                assert {i, j} == {k, k + 1}


def test_first_last_triangles(pentagon):
    assert pentagon.first_last_triangles((0, 3)) == (1, 2)
    assert pentagon.first_last_triangles((0, 2)) == (1, 3)
    assert pentagon.first_last_triangles((2, 4), start=2) == (3, 2)
    # arc of the triangulation: its two bounding triangles
    assert set(pentagon.first_last_triangles((1, 4))) == {1, 2}


def test_longest_arc_crosses_everything():
    for v in range(4, 9):
        for tri in fanless_triangulations(v):
            ot = OrientedTriangulation(tri, *tri.longest)
            labels, tris = None, None
            ordered = [ot.arc_of_label[k] for k in range(1, tri.n + 1)]
            assert sorted(ordered) == list(tri.arcs)
            # unique up to orientation: no other arc crosses all n arcs
            others = [
                a for a in internal_arcs(v)
                if a not in tri.arcs and a != tri.longest
            ]
            from supersnake.polygon import arcs_cross as cross
            for a in others:
                assert sum(cross(v, a, b) for b in tri.arcs) < tri.n


def test_triangle_census():
    for v in range(4, 9):
        for tri in fanless_triangulations(v):
            assert len(tri.triangles) == tri.n + 1
            assert len(tri.ears) == 2


def test_not_longest_arc_rejected():
    tri = validate(5, [(1, 4), (1, 3)])
    with pytest.raises(NotLongestArc):
        OrientedTriangulation(tri, 0, 3)


def test_triangulation_enumeration_counts():
    for v, count in CATALAN.items():
        assert len(all_triangulations(v)) == count
    # no internal triangle is possible below v = 6
    assert len(fanless_triangulations(6)) == 14 - 2
