import pytest

from crepant.errors import DegenerateEdgeError, InvalidFlipError
from crepant.fans import (
    curve_degrees,
    edge_relation,
    flip,
    flip_reachable_fans,
    line_ratio,
    star_surface,
)
from crepant.ggraphs import ghilb_fan
from crepant.groups import Character, parse_group

GROUPS = ["1/2(1,0,1)", "1/3(1,1,1)", "1/6(1,2,3)", "1/11(1,2,8)", "1/6(1,1,4)+1/2(1,0,1)"]


def fan_of(spec):
    g = parse_group(spec)
    return g, ghilb_fan(g).fan


def test_curve_degrees_1_3():
    g, fan = fan_of("1/3(1,1,1)")
    c = fan.vindex[(1, 1, 1)]
    e3 = fan.vindex[(0, 0, 3)]
    e = fan.edge(c, e3)
    assert curve_degrees(fan, e) == (-3, 1)


def test_curve_degrees_parallelogram_and_collinear():
    g, fan = fan_of("1/6(1,1,4)+1/2(1,0,1)")
    # l1 from the figure: a (-1,-1) parallelogram
    e = fan.edge(fan.vindex[(2, 2, 8)], fan.vindex[(8, 2, 2)])
    assert curve_degrees(fan, e) == (-1, -1)
    # 1/2(1,0,1): v1 + v2 = 2 w for the unique interior edge: (-2, 0)
    g2, fan2 = fan_of("1/2(1,0,1)")
    (e2,) = fan2.interior_edges
    assert curve_degrees(fan2, e2) == (-2, 0)


def test_crepancy_sum_rule():
    for spec in GROUPS:
        g, fan = fan_of(spec)
        for e in fan.interior_edges:
            a, b = edge_relation(fan, e)
            assert a + b == -2
            assert curve_degrees(fan, e)[0] < 2  # sorted first entry


def test_boundary_edge_rejected():
    g, fan = fan_of("1/3(1,1,1)")
    boundary = next(e for e in fan.edges if not e.interior)
    with pytest.raises(DegenerateEdgeError):
        edge_relation(fan, boundary)
    with pytest.raises(DegenerateEdgeError):
        line_ratio(fan, boundary, g)


def test_flip_involution_and_invalid():
    g, fan = fan_of("1/6(1,1,4)+1/2(1,0,1)")
    e = fan.edge(fan.vindex[(2, 2, 8)], fan.vindex[(8, 2, 2)])
    v1, v2 = fan.opposite_vertices(e)
    fan2 = flip(fan, e)
    assert fan2.key != fan.key
    assert len(fan2.triangles) == g.r
    e_new = fan2.edge(v1, v2)
    fan3 = flip(fan2, e_new)
    assert fan3.key == fan.key
    # flipping a non-(-1,-1) edge raises
    with pytest.raises(InvalidFlipError):
        flip(fan, fan.edge(fan.vindex[(8, 2, 2)], fan.vindex[(4, 4, 4)]))


def test_flip_preserves_vertex_set_and_unimodularity():
    g, fan = fan_of("1/11(1,2,8)")
    for e in list(fan.interior_edges):
        if curve_degrees(fan, e) == (-1, -1):
            fan2 = flip(fan, e)  # constructor validates everything
            assert fan2.vertices == fan.vertices


def test_line_ratio_examples():
    g, fan = fan_of("1/3(1,1,1)")
    c, e3 = fan.vindex[(1, 1, 1)], fan.vindex[(0, 0, 3)]
    m1, m2, rho = line_ratio(fan, fan.edge(c, e3), g)
    assert {m1, m2} == {(1, 0, 0), (0, 1, 0)}  # ratio x : y
    assert rho == Character((1,))

    g12, fan12 = fan_of("1/6(1,1,4)+1/2(1,0,1)")
    e = fan12.edge(fan12.vindex[(8, 2, 2)], fan12.vindex[(4, 4, 4)])
    m1, m2, rho = line_ratio(fan12, e, g12)
    assert {m1, m2} == {(0, 2, 0), (0, 0, 2)}  # ratio y^2 : z^2
    assert rho == Character((2, 0))


def test_line_ratio_primitive_in_invariant_lattice():
    for spec in GROUPS:
        g, fan = fan_of(spec)
        for e in fan.interior_edges:
            m1, m2, rho = line_ratio(fan, e, g)
            m = tuple(a - b for a, b in zip(m1, m2))
            assert g.weight(m) == g.trivial
            # primitivity in M: no proper invariant divisor of m
            from math import gcd

            gg = 0
            for x in m:
                gg = gcd(gg, abs(x))
            for d in range(2, gg + 1):
                if gg % d == 0:
                    shrunk = tuple(x // d for x in m)
                    assert g.weight(shrunk) != g.trivial


def test_flop_marks_1_11():
    g, fan = fan_of("1/11(1,2,8)")
    marks = set()
    for e in fan.interior_edges:
        if curve_degrees(fan, e) == (-1, -1):
            marks.add(line_ratio(fan, e, g)[2])
    assert marks == {Character((1,)), Character((5,)), Character((6,))}


def test_star_surface_p2():
    g, fan = fan_of("1/3(1,1,1)")
    s = star_surface(fan, fan.vindex[(1, 1, 1)])
    assert len(s.rays) == 3
    assert s.selfint == (1, 1, 1)


def test_star_surface_f4_on_1_11():
    g, fan = fan_of("1/11(1,2,8)")
    s = star_surface(fan, fan.vindex[(1, 2, 8)])
    assert sorted(s.selfint) == [-4, 0, 0, 4]


def test_star_wall_relation_exact():
    for spec in ["1/11(1,2,8)", "1/6(1,1,4)+1/2(1,0,1)"]:
        g, fan = fan_of(spec)
        for v in fan.interior_vertices():
            s = star_surface(fan, v)
            n = len(s.rays)
            for i in range(n):
                u_prev = fan.vertices[s.rays[(i - 1) % n]]
                u_i = fan.vertices[s.rays[i]]
                u_next = fan.vertices[s.rays[(i + 1) % n]]
                c_v = fan.vertices[v]
                combo = [
                    u_prev[k] + u_next[k] + s.selfint[i] * u_i[k] for k in range(3)
                ]
                # must be an exact rational multiple of the center
                assert combo[0] * c_v[1] == combo[1] * c_v[0]
                assert combo[0] * c_v[2] == combo[2] * c_v[0]


@pytest.mark.parametrize(
    "spec,count", [("1/3(1,1,1)", 1), ("1/2(1,0,1)", 1), ("1/6(1,2,3)", 5)]
)
def test_flip_reachable_counts(spec, count):
    g, fan = fan_of(spec)
    assert len(flip_reachable_fans(fan)) == count


def test_flip_reachable_1_11():
    # The three (-1,-1) curves bound a single chart's triangle, so the
    # flips interact: the explicit BFS closure has five fans, with the
    # neighbours of any one flip no longer carrying (-1,-1) transforms.
    g, fan = fan_of("1/11(1,2,8)")
    fans = flip_reachable_fans(fan)
    assert len(fans) == 5
    flops = [e for e in fan.interior_edges if curve_degrees(fan, e) == (-1, -1)]
    assert len(flops) == 3
    vset = set()
    for e in flops:
        vset.update(e.endpoints)
    assert len(vset) == 3  # the curves pairwise share their endpoints
    central = tuple(sorted(vset))
    assert central in fan.triangles
