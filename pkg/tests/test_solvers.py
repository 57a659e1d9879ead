import random
from fractions import Fraction

import pytest

from planar_holant import fixtures
from planar_holant.generators import (generate_cubic_bipartite_plane,
                                      generate_cubic_plane)
from planar_holant.holant_core import eval_grid
from planar_holant.plane_graph import grid_from_cubic_bipartite
from planar_holant.signatures import SymSignature
from planar_holant.solvers import (WrongForm, _pfaffian, brute_force_pm,
                                   count_pm, gauss_sum_gf2, kasteleyn_orient,
                                   pm_fragment_signature, solve_affine,
                                   solve_case5, solve_degenerate, solve_geneq,
                                   solve_matchgate)


def c4():
    return fixtures.from_adjacency({
        0: [(1, "a"), (3, "d")], 1: [(2, "b"), (0, "a")],
        2: [(3, "c"), (1, "b")], 3: [(0, "d"), (2, "c")]})


def test_count_pm_examples():
    assert count_pm(fixtures.cube()) == 9       # running-example graph
    assert count_pm(c4()) == 2
    assert count_pm(fixtures.k4()) == 3
    assert count_pm(fixtures.m23()) == 3
    assert count_pm(fixtures.dumbbell()) == 1   # the bridge; loops never match


def test_count_pm_odd_graph_zero():
    # triangle with a pendant path of two edges: odd vertex count
    g = fixtures.from_adjacency({
        0: [(1, "a"), (2, "c"), (3, "p")],
        1: [(2, "b"), (0, "a")], 2: [(0, "c"), (1, "b")],
        3: [(0, "p"), (4, "q")], 4: [(3, "q")]})
    ko = kasteleyn_orient(g)  # orientation still exists
    assert ko.verify()
    assert count_pm(g) == 0


def test_kasteleyn_on_cycle():
    g = c4()
    ko = kasteleyn_orient(g)
    inner = [f for f in g.faces() if f.id != ko.root_face]
    for f in inner:
        aligned = sum(1 for d in f.boundary if ko.oriented_out[d])
        assert aligned % 2 == 1


def test_pfaffian_squares_to_determinant():
    rng = random.Random(2)
    for n in (2, 4, 6):
        mat = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = Fraction(rng.randint(-4, 4))
                mat[i][j] = v
                mat[j][i] = -v
        pf = _pfaffian(mat)
        # determinant by fraction-free-ish Gaussian elimination
        m = [row[:] for row in mat]
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                det = Fraction(0)
                break
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det *= m[col][col]
            for r in range(col + 1, n):
                fac = m[r][col] / m[col][col]
                m[r] = [a - fac * b for a, b in zip(m[r], m[col])]
        assert pf * pf == det


def test_count_pm_random_weighted():
    rng = random.Random(10)
    for seed in range(30):
        g = generate_cubic_plane(rng.choice([2, 4, 6, 8]), seed)
        w = {e: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
             for e in g.edges()}
        assert count_pm(g, w) == brute_force_pm(g, w)


def test_fragment_signatures():
    w = Fraction(5, 3)
    assert pm_fragment_signature("even", w).values == (1, 0, w, 0)
    assert pm_fragment_signature("odd", w).values == (0, w, 0, 1)
    assert pm_fragment_signature("one").values == (0, 1, 0, 0)
    assert pm_fragment_signature("two").values == (0, 0, 1, 0)


def grids(count, seed0):
    rng = random.Random(seed0)
    return [generate_cubic_bipartite_plane(rng.choice([2, 4, 6, 8]),
                                           rng.randint(0, 9999))
            for _ in range(count)]


def test_case5_running_example():
    grid = grid_from_cubic_bipartite(fixtures.cube(), SymSignature([1, 0, -1, 2]))
    assert solve_case5(grid, Fraction(1, 2), Fraction(-1, 2)) == 9


def test_case5_zero_a():
    f = SymSignature([2, -2, 2, -2])  # a = 0, b = 2
    grid = grid_from_cubic_bipartite(fixtures.m23(), f)
    assert solve_case5(grid, Fraction(0), Fraction(2)) == 0 == eval_grid(grid)


def test_case5_random():
    rng = random.Random(50)
    for g in grids(15, 51):
        a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
        f = SymSignature([3 * a + b, -a - b, -a + b, 3 * a - b])
        grid = grid_from_cubic_bipartite(g, f)
        assert solve_case5(grid, a, b) == eval_grid(grid)


def test_degenerate_examples():
    grid = grid_from_cubic_bipartite(fixtures.cube(), SymSignature([1, 1, 1, 1]))
    assert solve_degenerate(grid, [1, 1], Fraction(1)) == 2 ** 4
    grid = grid_from_cubic_bipartite(fixtures.cube(), SymSignature([0, 0, 0, 5]))
    assert solve_degenerate(grid, [0, 1], Fraction(5)) == 625


def test_geneq_examples():
    grid = grid_from_cubic_bipartite(fixtures.cube(), SymSignature([1, 0, 0, 1]))
    assert solve_geneq(grid, Fraction(1), Fraction(1)) == 2
    # two components with one left node each
    from planar_holant.plane_graph import PlaneGraph
    g1 = fixtures.m23()
    g2 = fixtures.relabeled(fixtures.m23(), 10, 100)
    g = PlaneGraph({**g1.twin, **g2.twin}, {**g1.vertex_of, **g2.vertex_of},
                   {**{v: g1.rotation[v] for v in g1.vertices()},
                    **{v: g2.rotation[v] for v in g2.vertices()}})
    f = SymSignature([2, 0, 0, 3])
    grid = grid_from_cubic_bipartite(g, f)
    got = solve_geneq(grid, Fraction(2), Fraction(3))
    assert got == 25 == eval_grid(grid)


def test_affine_trivial_examples():
    m23 = grid_from_cubic_bipartite(fixtures.m23(), SymSignature([1, 0, 1, 0]))
    assert solve_affine(m23, "even", Fraction(1)) == 1 == eval_grid(m23)
    m23b = grid_from_cubic_bipartite(fixtures.m23(), SymSignature([1, 1, -1, -1]))
    assert solve_affine(m23b, "two_block", Fraction(1)) == 0 == eval_grid(m23b)


def test_gauss_sum_against_enumeration():
    rng = random.Random(77)
    from itertools import product
    for _ in range(40):
        n = rng.randint(0, 6)
        quad = set()
        for _ in range(rng.randint(0, 6)):
            i, j = rng.randint(0, max(n - 1, 0)), rng.randint(0, max(n - 1, 0))
            if i != j and n:
                quad.add((min(i, j), max(i, j)))
        lin = {rng.randint(0, n - 1) for _ in range(rng.randint(0, 3))} if n else set()
        const = rng.randint(0, 1)
        want = 0
        for bits in product((0, 1), repeat=n):
            q = const + sum(bits[i] * bits[j] for (i, j) in quad) \
                + sum(bits[i] for i in lin)
            want += (-1) ** (q % 2)
        assert gauss_sum_gf2(n, set(quad), set(lin), const) == want


def test_matchgate_hadamard_forms():
    # transformed left signature [2a+6b, 0, 2a-2b, 0] for [a,b,b,a]
    from planar_holant.signatures import hadamard3
    a, b = Fraction(3), Fraction(-2)
    ft = hadamard3(SymSignature([a, b, b, a]))
    assert ft.values == (2 * a + 6 * b, 0, 2 * a - 2 * b, 0)
    ft2 = hadamard3(SymSignature([a, b, -b, -a]))
    assert ft2.values == (0, 2 * a + 2 * b, 0, 2 * a - 6 * b)


def test_matchgate_cross_path_consistency():
    f = SymSignature([1, 1, 1, 1])  # both degenerate and case-4 form
    for g in grids(5, 99):
        grid = grid_from_cubic_bipartite(g, f)
        assert solve_matchgate(grid, Fraction(1), Fraction(1), 1) == \
            solve_degenerate(grid, [1, 1], Fraction(1))


def test_matchgate_boundary_params():
    # p = 0 on the even side: a = -3b
    f = SymSignature([-3, 1, 1, -3])
    for g in grids(6, 123):
        grid = grid_from_cubic_bipartite(g, f)
        assert solve_matchgate(grid, Fraction(-3), Fraction(1), 1) == eval_grid(grid)
    # q = 0 on the odd side: [0,p,0,0] comes from b = a/3... use a=3,b=1
    f2 = SymSignature([3, 1, -1, -3])
    for g in grids(6, 124):
        grid = grid_from_cubic_bipartite(g, f2)
        assert solve_matchgate(grid, Fraction(3), Fraction(1), -1) == eval_grid(grid)


def test_wrong_form_rejected():
    grid = grid_from_cubic_bipartite(fixtures.cube(), SymSignature([1, 0, -1, 2]))
    with pytest.raises(WrongForm):
        solve_geneq(grid, Fraction(1), Fraction(2))
