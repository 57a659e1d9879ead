"""Deeper exercise of the reduction machinery: composed instances that mix
immediately-reducible patterns with girth-five cores, and label coverage."""

import random

import pytest

from planar_holant import fixtures, p3em_cases
from planar_holant.generators import (ladder_insert, parallel_pair_insert,
                                      self_loop_insert, vertex_to_triangle)
from planar_holant.p3em import (ExceptionalGraph, exceptional_kind,
                                find_p3em, materialize, verify)


def _random_grow(g, rng, steps):
    for _ in range(steps):
        kind = rng.choice(("triangle", "parallel", "loop", "ladder"))
        try:
            if kind == "triangle":
                g = vertex_to_triangle(g, rng.choice(g.vertices()))
            elif kind == "parallel":
                g = parallel_pair_insert(g, rng.choice(g.edges()))
            elif kind == "loop":
                g = self_loop_insert(g, rng.choice(g.edges()))
            else:
                faces = [f for f in g.faces()
                         if len({g.edge_of(d) for d in f.boundary}) >= 2]
                f = rng.choice(faces)
                d_a = rng.choice(f.boundary)
                others = [d for d in f.boundary
                          if g.edge_of(d) != g.edge_of(d_a)]
                g = ladder_insert(g, d_a, rng.choice(others))
        except Exception:
            continue
    return g


SEEDS = list(range(12))


@pytest.mark.parametrize("seed", SEEDS)
def test_composed_instances(seed):
    rng = random.Random(seed)
    base = rng.choice((fixtures.dodecahedron, fixtures.bridge_fixture,
                       fixtures.chord_fixture,
                       fixtures.coincident_pentagon_fixture))()
    g = _random_grow(base, rng, rng.randint(1, 8))
    res = find_p3em(g)
    assert not isinstance(res, ExceptionalGraph)
    assert verify(g, res).ok
    materialize(g, res)


def test_all_reduction_labels_reachable():
    from planar_holant.generators import move_closure
    seen = set()
    orig = p3em_cases.step_reduce

    def traced(g):
        st = orig(g)
        seen.add(st.label)
        return st

    p3em_cases.step_reduce = traced
    try:
        pool = list(move_closure(8))
        pool += [fixtures.dodecahedron(), fixtures.bridge_fixture(),
                 fixtures.chord_fixture()]
        rng = random.Random(99)
        for seed in range(6):
            pool.append(_random_grow(fixtures.dodecahedron(), rng, 4))
        for g in pool:
            if exceptional_kind(g) is not None:
                continue
            res = find_p3em(g)
            assert verify(g, res).ok
        # the direct-call coincidence test covers pentagon_coincident
        from planar_holant.p3em_cases import (_case_b_coincidence,
                                              _find_b_coincidence,
                                              _pentagon_labels,
                                              _rotate_labels, solve_component)
        g = fixtures.coincident_pentagon_fixture()
        for f in g.faces():
            if len(f.boundary) != 5:
                continue
            lab = _pentagon_labels(g, f)
            if (all(b not in lab.a for b in lab.b)
                    and _find_b_coincidence(lab) is not None):
                step = _case_b_coincidence(
                    g, _rotate_labels(lab, _find_b_coincidence(lab)))
                seen.add(step.label)
                subs = [solve_component(c) for c in step.children]
                assert verify(g, step.lift(subs)).ok
                break
    finally:
        p3em_cases.step_reduce = orig
    assert seen >= {"self_loop", "double_edge", "triangle", "triangle_shared",
                    "bridge", "square", "chord", "pentagon",
                    "pentagon_coincident"}
