import pytest

from crepant.chambers import (
    compute_chamber,
    cross_wall,
    enumerate_chambers,
    generate_inequalities,
    ghilb_chamber,
    ghilb_state,
    indicator_compatible,
)
from crepant.errors import UserError
from crepant.fans import flip_reachable_fans
from crepant.ggraphs import ghilb_fan
from crepant.groups import Character, parse_group
from crepant.lp import LPCounter


def normals(chamber):
    return {f.normal for f in chamber.facets}


def test_chamber_1_3():
    g = parse_group("1/3(1,1,1)")
    ch = compute_chamber(ghilb_state(g), LPCounter())
    assert normals(ch) == {(0, 1), (1, 1)}
    assert all(f.wall_type == "0" for f in ch.facets)
    # theta1 + 2*theta2 > 0 (the curve inequality) is redundant
    red_funcs = {ch.inequalities[i].functional() for i in ch.redundant}
    assert (1, 2) in red_funcs
    # certificate point in the chamber but outside Theta+
    pt = (-1, 2)
    for f in ch.facets:
        assert sum(a * b for a, b in zip(f.normal, pt)) > 0
    assert pt[0] < 0


def test_chamber_1_2_type_iii():
    g = parse_group("1/2(1,0,1)")
    ch = compute_chamber(ghilb_state(g), LPCounter())
    assert len(ch.facets) == 1
    (f,) = ch.facets
    assert f.wall_type == "III"
    assert f.swept is not None


def test_ghilb_chamber_cross_check_runs():
    for spec in ["1/2(1,0,1)", "1/3(1,1,1)", "1/6(1,2,3)", "1/11(1,2,8)"]:
        g = parse_group(spec)
        ch = ghilb_chamber(g)
        assert len(ch.facets) >= 1


def test_interior_point_strict():
    g = parse_group("1/6(1,2,3)")
    ch = compute_chamber(ghilb_state(g), LPCounter())
    pt = ch.interior_point
    for iq in ch.inequalities:
        f = iq.functional()
        assert sum(a * b for a, b in zip(f, pt)) > 0


def test_inequality_counts_bound():
    g = parse_group("1/11(1,2,8)")
    st = ghilb_state(g)
    ineqs = generate_inequalities(st)
    k = len(st.fan.interior_vertices())
    bound = len(st.fan.interior_edges) + 2 * g.r * (2**k - 1)
    assert len(ineqs) <= bound


def test_indicator_compatible():
    assert indicator_compatible((0, 1, 1, 0))
    assert indicator_compatible((0, -1, -1, 0))
    assert indicator_compatible((2, 0, 2))  # primitive is (1,0,1)
    assert not indicator_compatible((1, 2, 0))
    assert not indicator_compatible((1, -1, 0))


def test_type0_crossing_1_3_structure():
    g = parse_group("1/3(1,1,1)")
    st = ghilb_state(g)
    ch = compute_chamber(st, LPCounter())
    f = ch.facet_by_normal((0, 1))  # the theta2 = 0 wall
    assert f.wall_type == "0"
    assert f.splitting == (((2,),), ((0,), (1,)))
    st2 = cross_wall(st, f)
    assert st2.fan.key == st.fan.key
    ch2 = compute_chamber(st2, LPCounter())
    assert normals(ch2) == {(1, 0), (0, -1)}


def test_prune_matches_full_on_neighbor_states():
    g = parse_group("1/6(1,2,3)")
    st = ghilb_state(g)
    ch = compute_chamber(st, LPCounter())
    for f in ch.facets[:4]:
        st2 = cross_wall(st, f)
        a = compute_chamber(st2, LPCounter())
        b = compute_chamber(st2, LPCounter(), prune_non_walls=False)
        assert normals(a) == normals(b)


@pytest.mark.parametrize(
    "spec,chambers,fans",
    [("1/2(1,0,1)", 2, 1), ("1/3(1,1,1)", 3, 1), ("1/6(1,2,3)", 264, 5)],
)
def test_enumerate_counts(spec, chambers, fans):
    g = parse_group(spec)
    graph = enumerate_chambers(g)
    assert len(graph.nodes) == chambers
    assert len(graph.fans()) == fans
    assert graph.fans() == set(flip_reachable_fans(ghilb_fan(g).fan))


def test_enumerate_1_2_wall_types():
    g = parse_group("1/2(1,0,1)")
    graph = enumerate_chambers(g)
    assert {e[3] for e in graph.edges} == {"III"}


def test_enumerate_determinism():
    g = parse_group("1/6(1,2,3)")
    g1 = enumerate_chambers(g)
    g2 = enumerate_chambers(g, workers=2)
    assert [st.key for st, _, _ in g1.nodes] == [st.key for st, _, _ in g2.nodes]
    assert g1.edges == g2.edges


def test_no_type_ii_small_groups():
    for spec in ["1/2(1,0,1)", "1/3(1,1,1)", "1/6(1,2,3)"]:
        g = parse_group(spec)
        graph = enumerate_chambers(g)
        for _, facets, _ in graph.nodes:
            for f in facets:
                assert f.wall_type in ("0", "I", "III")


def test_facet_by_normal_missing():
    g = parse_group("1/3(1,1,1)")
    ch = compute_chamber(ghilb_state(g), LPCounter())
    with pytest.raises(UserError):
        ch.facet_by_normal((5, 5))


def test_type0_unique_splitting_uniqueness():
    # on the G-Hilb chamber of 1/11 every type-0 facet recovers a unique
    # unstable divisor, and the 0/1 class with its complement are the only
    # indicator representatives among tight classes
    g = parse_group("1/11(1,2,8)")
    st = ghilb_state(g)
    ch = compute_chamber(st, LPCounter())
    for f in ch.facets:
        if f.wall_type != "0":
            continue
        assert f.divisor is not None
        r1, r2 = f.splitting
        assert len(r1) + len(r2) == g.r
        reps = set()
        for i in f.tight:
            iq = ch.inequalities[i]
            cls = iq.raw if iq.sense == ">" else tuple(-x for x in iq.raw)
            lo = min(cls)
            shifted = tuple(c - lo for c in cls)
            if set(shifted) <= {0, 1}:
                reps.add(shifted)
        ind_r1 = tuple(1 if c.index in r1 else 0 for c in g.characters)
        ind_r2 = tuple(1 if c.index in r2 else 0 for c in g.characters)
        assert reps <= {ind_r1, ind_r2}
        assert reps


def test_curve_facets_match_flop_edges_1_11():
    g = parse_group("1/11(1,2,8)")
    st = ghilb_state(g)
    ch = compute_chamber(st, LPCounter())
    type_i = [f for f in ch.facets if f.wall_type == "I"]
    assert len(type_i) == 3
    for f in type_i:
        assert len(f.contracted) == 1
    type_iii = [f for f in ch.facets if f.wall_type == "III"]
    assert len(type_iii) == 1
    assert len(type_iii[0].contracted) == 2  # both ruling fibers
