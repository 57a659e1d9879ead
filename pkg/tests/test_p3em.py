import itertools
import random

import pytest

from planar_holant import fixtures
from planar_holant.generators import generate_cubic_plane
from planar_holant.p3em import (ExceptionalGraph, base_case, check_sigma,
                                exceptional_kind, find_p3em, materialize,
                                search_assignment, solve_sigma, triples,
                                verify)
from planar_holant.p3em_cases import step_reduce, solve_component
from planar_holant.plane_graph import PlaneGraph


def test_exceptional_detection():
    assert exceptional_kind(fixtures.k4()) == "K4"
    assert exceptional_kind(fixtures.m23()) == "M23"
    assert exceptional_kind(fixtures.cube()) is None


def test_exceptional_have_no_assignment():
    # independent exhaustive search proves nonexistence
    assert search_assignment(fixtures.k4()) is None
    assert search_assignment(fixtures.m23()) is None


def test_cube_has_assignment_by_search_and_constructor():
    g = fixtures.cube()
    assert search_assignment(g) is not None
    sigma = find_p3em(g)
    rep = verify(g, sigma)
    assert rep.ok
    grp = triples(g, sigma)
    assert len(grp) == 4
    assert sorted(e for t in grp for e in t["edges"]) == g.edges()


def test_dumbbell_single_triple():
    g = fixtures.dumbbell()
    sigma = find_p3em(g)
    assert verify(g, sigma).ok
    grp = triples(g, sigma)
    assert len(grp) == 1 and len(grp[0]["edges"]) == 3


def test_all_base_cases():
    for name in ("dumbbell", "base_b", "base_c", "base_d", "base_e",
                 "prism", "base_g", "base_h"):
        g = getattr(fixtures, name)()
        sigma = base_case(g)
        assert sigma is not None and verify(g, sigma).ok, name


def test_base_case_rejects_others():
    assert base_case(fixtures.cube()) is None
    assert base_case(fixtures.k4()) is None  # exceptional, handled upstream


def test_verify_diagnostics():
    g = fixtures.cube()
    sigma = find_p3em(g)
    e0 = g.edges()[0]
    bad = dict(sigma)
    other = [f.id for f in g.faces() if f.id not in g.edge_faces(e0)][0]
    bad[e0] = other
    rep = verify(g, bad)
    assert not rep.ok and "IncidenceViolation" in rep.reason
    bad2 = dict(sigma)
    f1, f2 = g.edge_faces(e0)
    bad2[e0] = f2 if sigma[e0] == f1 else f1
    rep2 = verify(g, bad2)
    assert not rep2.ok and "Mod3Violation" in rep2.reason
    rep3 = verify(g, {k: v for k, v in sigma.items() if k != e0})
    assert not rep3.ok and "DomainViolation" in rep3.reason


def test_solve_sigma_exhaustive():
    for xp in itertools.product((0, 1), repeat=5):
        for yp3, yp4 in itertools.product((0, 1), repeat=2):
            x, y = solve_sigma(xp, yp3, yp4)
            assert check_sigma(xp, yp3, yp4, x, y)
            assert all(v in (0, 1) for v in x + y)


def test_solve_sigma_constructive_branches():
    # nonzero (y'3, y'4): x copies x', y1 absorbs the slack
    x, y = solve_sigma((0, 1, 1, 0, 1), 1, 0)
    assert x == (0, 1, 1, 0, 1)
    assert y == (0, 1, 0, 1, 0)
    # x'1 = 0 branch
    x, y = solve_sigma((0, 0, 1, 0, 1), 0, 0)
    assert x == (0, 1, 1, 0, 1) and y == (1, 1, 0, 0, 0)
    # (x'1, x'2) = (1, 1) branch
    x, y = solve_sigma((1, 1, 1, 0, 0), 0, 0)
    assert x == (1, 1, 0, 0, 0) and y == (0, 1, 1, 0, 0)


def test_materialize_counts_and_planarity():
    for builder in (fixtures.dumbbell, fixtures.cube, fixtures.dodecahedron):
        g = builder()
        sigma = find_p3em(g)
        m = materialize(g, sigma)  # build() validation happens in freeze
        v, e = len(g.vertices()), len(g.edges())
        assert len(m.vertices()) == v + e + e // 3
        assert m.is_cubic()


def test_materialize_random():
    for seed in range(30):
        g = generate_cubic_plane(random.Random(seed).choice([6, 10, 14]), seed)
        res = find_p3em(g)
        if isinstance(res, ExceptionalGraph):
            continue
        materialize(g, res)


def test_find_p3em_rejects_noncubic():
    g = PlaneGraph({0: 1, 1: 0}, {0: 5, 1: 5}, {5: (0, 1)})
    with pytest.raises(Exception):
        find_p3em(g)


def test_disconnected_reports_exceptional_components():
    g1 = fixtures.cube()
    g2 = fixtures.relabeled(fixtures.k4(), 100, 1000)
    twin = {**g1.twin, **g2.twin}
    vo = {**g1.vertex_of, **g2.vertex_of}
    rot = {**{v: g1.rotation[v] for v in g1.vertices()},
           **{v: g2.rotation[v] for v in g2.vertices()}}
    g = PlaneGraph(twin, vo, rot)
    res = find_p3em(g)
    assert isinstance(res, ExceptionalGraph)
    assert res.kinds == ["K4"]


def test_disconnected_union_assignment():
    g1 = fixtures.cube()
    g2 = fixtures.relabeled(fixtures.dodecahedron(), 100, 1000)
    twin = {**g1.twin, **g2.twin}
    vo = {**g1.vertex_of, **g2.vertex_of}
    rot = {**{v: g1.rotation[v] for v in g1.vertices()},
           **{v: g2.rotation[v] for v in g2.vertices()}}
    g = PlaneGraph(twin, vo, rot)
    sigma = find_p3em(g)
    assert verify(g, sigma).ok


CASE_FIXTURES = {
    "pentagon": fixtures.dodecahedron,
    "bridge": fixtures.bridge_fixture,
    "chord": fixtures.chord_fixture,
}


@pytest.mark.parametrize("label", sorted(CASE_FIXTURES))
def test_step_reduce_labels(label):
    g = CASE_FIXTURES[label]()
    step = step_reduce(g)
    assert step.label == label
    total_v = sum(len(c.vertices()) for c in step.children)
    assert total_v <= len(g.vertices()) + 2  # split cases add two helper vertices
    assert all(len(c.vertices()) < len(g.vertices()) for c in step.children)
    subs = [solve_component(c) for c in step.children]
    sigma = step.lift(subs)
    assert verify(g, sigma).ok


def test_coincident_pentagon_case_direct():
    from planar_holant.p3em_cases import (_case_b_coincidence,
                                          _find_b_coincidence,
                                          _pentagon_labels, _rotate_labels)
    g = fixtures.coincident_pentagon_fixture()
    target = None
    for f in g.faces():
        if len(f.boundary) != 5:
            continue
        lab = _pentagon_labels(g, f)
        if (all(b not in lab.a for b in lab.b)
                and _find_b_coincidence(lab) is not None):
            target = lab
            break
    assert target is not None
    step = _case_b_coincidence(g, _rotate_labels(target,
                                                 _find_b_coincidence(target)))
    assert step.label == "pentagon_coincident"
    assert len(step.children) == 2
    subs = [solve_component(c) for c in step.children]
    assert verify(g, step.lift(subs)).ok


def test_reduction_cases_on_small_library():
    # every graph in the small closure reduces with a verifying lift chain
    from planar_holant.generators import move_closure
    seen_labels = set()
    for g in move_closure(8):
        if exceptional_kind(g) is not None or base_case(g) is not None:
            continue
        step = step_reduce(g)
        seen_labels.add(step.label)
        subs = [solve_component(c) for c in step.children]
        assert verify(g, step.lift(subs)).ok
    assert {"self_loop", "double_edge", "triangle"} <= seen_labels


def test_pipeline_500_random():
    rng = random.Random(12321)
    done = 0
    while done < 500:
        n = rng.choice([4, 6, 8, 10, 12, 16])
        g = generate_cubic_plane(n, rng.randint(0, 10 ** 6))
        res = find_p3em(g)
        if isinstance(res, ExceptionalGraph):
            assert exceptional_kind(g) is not None
            continue
        assert verify(g, res).ok
        done += 1


def test_totality_closure_ten():
    # module invariant: every connected cubic plane multigraph reachable in
    # the move closure up to ten vertices has a certificate, except exactly
    # the two impossible graphs
    from planar_holant.generators import move_closure
    exceptional = 0
    for g in move_closure(10):
        res = find_p3em(g)
        if isinstance(res, ExceptionalGraph):
            exceptional += 1
            assert exceptional_kind(g) is not None
        else:
            assert verify(g, res).ok
    assert exceptional == 2
