import pytest

from planar_holant import fixtures
from planar_holant.plane_graph import (NonPlanarEmbedding, PlaneGraph, build,
                                       from_json, incidence_grid,
                                       merge_degree2_left, two_coloring)
from planar_holant.generators import generate_cubic_plane
from planar_holant.signatures import EQ3, SymSignature


def orbit_count(twin, vertex_of, rotation):
    """Independent face-orbit counter for hand checks."""
    def nxt(d):
        t = twin[d]
        rot = rotation[vertex_of[t]]
        return rot[(rot.index(t) + 1) % len(rot)]

    seen, n = set(), 0
    for d0 in twin:
        if d0 in seen:
            continue
        n += 1
        d = d0
        while True:
            seen.add(d)
            d = nxt(d)
            if d == d0:
                break
    return n


def test_k4_valid_four_faces():
    g = fixtures.k4()
    assert len(g.faces()) == 4
    assert all(len(f.boundary) == 3 for f in g.faces())


def test_m23_three_faces_of_length_two():
    g = fixtures.m23()
    assert sorted(len(f.boundary) for f in g.faces()) == [2, 2, 2]


def test_k4_swapped_rotation_is_genus_one():
    g = fixtures.k4()
    rot = {v: list(r) for v, r in g.rotation.items()}
    v0 = g.vertices()[0]
    rot[v0] = list(reversed(rot[v0]))
    # independent orbit count: v - e + f = 4 - 6 + 2 means genus 1
    assert orbit_count(g.twin, g.vertex_of, rot) == 2
    with pytest.raises(NonPlanarEmbedding):
        PlaneGraph(g.twin, g.vertex_of, rot)


def test_single_loop_vertex_two_faces():
    g = PlaneGraph({0: 1, 1: 0}, {0: 5, 1: 5}, {5: (0, 1)})
    assert len(g.faces()) == 2


def test_cube_six_quadrilaterals():
    g = fixtures.cube()
    assert sorted(len(f.boundary) for f in g.faces()) == [4] * 6


def test_cubic_counts():
    for g in (fixtures.cube(), fixtures.k4(), fixtures.dodecahedron()):
        v, e = len(g.vertices()), len(g.edges())
        assert 2 * e == 3 * v
        assert e % 3 == 0


def test_bridges():
    g = fixtures.dumbbell()
    middle = [e for e in g.edges()
              if g.vertex_of[e] != g.vertex_of[g.twin[e]]][0]
    assert g.is_bridge(middle)
    k4 = fixtures.k4()
    assert not any(k4.is_bridge(e) for e in k4.edges())
    br = fixtures.bridge_fixture()
    assert len(br.bridges()) == 1


def test_connected_components():
    g = fixtures.cube()
    assert len(g.connected_components()) == 1
    twin = dict(g.twin)
    vo = dict(g.vertex_of)
    rot = {v: g.rotation[v] for v in g.vertices()}
    g2 = fixtures.relabeled(fixtures.k4(), 100, 1000)
    twin.update(g2.twin)
    vo.update(g2.vertex_of)
    rot.update(g2.rotation)
    both = PlaneGraph(twin, vo, rot)
    assert len(both.connected_components()) == 2


def test_incidence_grid_counts():
    m = fixtures.m23()
    grid = incidence_grid(m, SymSignature([1, 0, 1]), EQ3)
    assert len(grid.left_nodes()) == 3 and len(grid.right_nodes()) == 2
    k4 = fixtures.k4()
    grid = incidence_grid(k4, SymSignature([1, 0, 1]), EQ3)
    assert len(grid.left_nodes()) == 6 and len(grid.right_nodes()) == 4


def test_incidence_roundtrip_random():
    left = SymSignature([1, 0, 1])
    for seed in range(50):
        g = generate_cubic_plane(6 if seed % 2 else 8, seed)
        grid = incidence_grid(g, left, EQ3)
        back = merge_degree2_left(grid)
        assert back.canonical_form() == g.canonical_form()


def test_two_coloring():
    assert two_coloring(fixtures.cube()) is not None
    assert two_coloring(fixtures.k4()) is None


def test_json_roundtrip():
    g = fixtures.cube()
    g2 = from_json(g.to_json())
    assert g2 == g


def test_build_error_reports():
    with pytest.raises(Exception):
        build({"vertices": [{"id": 0, "rotation": [0]}],
               "darts": [{"id": 0, "twin": 0, "vertex": 0}]})


def test_canonical_form_distinguishes():
    names = ["k4", "m23", "dumbbell", "cube", "prism", "dodecahedron"]
    forms = {n: getattr(fixtures, n)().canonical_form() for n in names}
    assert len(set(forms.values())) == len(names)


def test_faces_partition_darts_and_euler():
    for name in ("k4", "cube", "dodecahedron", "base_b", "base_c"):
        g = getattr(fixtures, name)()
        total = sum(len(f.boundary) for f in g.faces())
        assert total == len(g.darts())
        for comp in g.connected_components():
            darts = [d for v in comp for d in g.rotation[v]]
            fids = {g.face_of(d) for d in darts}
            assert len(comp) - len(darts) // 2 + len(fids) == 2
