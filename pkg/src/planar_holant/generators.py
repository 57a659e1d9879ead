"""Random and exhaustive generation of cubic plane multigraphs.

Expansion moves (each adds two vertices, keeps the graph cubic and plane):

* vertex -> triangle: blow a vertex up into a triangle face;
* parallel-pair insertion: replace an edge by a path with a doubled middle;
* self-loop insertion: hang a loop vertex off a subdivided edge;
* ladder insertion: subdivide two edges of one face twice each and join
  them by two non-crossing rungs through that face.

The moves invert the reduction steps used by the matching constructor, so
closure under them stays inside valid inputs.  The bipartite generator
restricts itself to the parity-preserving moves (parallel pair, ladder
with color-aligned rungs) and checks 2-colorability after every move.
"""

from __future__ import annotations

import random
from typing import List, Optional, Tuple

from .plane_graph import GraphBuilder, PlaneGraph, two_coloring
from . import fixtures


class InfeasibleSize(ValueError):
    pass


def _subdivide(b: GraphBuilder, dart: int, new_vertex: int) -> Tuple[int, int]:
    """Split edge {dart, twin} by new_vertex; returns the two darts at the
    new vertex (toward dart's vertex, toward twin's vertex)."""
    t = b.twin[dart]
    d1 = b.fresh_dart()
    d2 = d1 + 1
    b.rotation[new_vertex] = [d1, d2]
    b.vertex_of[d1] = new_vertex
    b.vertex_of[d2] = new_vertex
    b.retwin(dart, d1)
    b.retwin(d2, t)
    return d1, d2


def vertex_to_triangle(g: PlaneGraph, v: int) -> PlaneGraph:
    b = GraphBuilder(g)
    rot = list(b.rotation[v])
    if len(rot) != 3:
        raise InfeasibleSize("cubic vertex expected")
    base = max(b.rotation) + 1
    ids = [v, base, base + 1]
    d = b.fresh_dart()
    tri = [(d + 2 * i, d + 2 * i + 1) for i in range(3)]  # triangle darts
    for i in range(3):
        # corner i keeps outgoing dart rot[i], plus triangle darts to i-1, i+1
        prev_d = tri[(i - 1) % 3][1]
        next_d = tri[i][0]
        b.add_vertex(ids[i], [rot[i], next_d, prev_d])
    for i in range(3):
        b.twin[tri[i][0]] = tri[i][1]
        b.twin[tri[i][1]] = tri[i][0]
    return b.freeze()


def parallel_pair_insert(g: PlaneGraph, e: int) -> PlaneGraph:
    """Edge {X,Y} becomes X-p-q-Y with a doubled p-q middle."""
    b = GraphBuilder(g)
    base = max(b.rotation) + 1
    p, q = base, base + 1
    d = e
    t = g.twin[e]
    dp1, dp2 = _subdivide(b, d, p)     # p between X and (toward q)
    dq1, dq2 = _subdivide(b, dp2, q)   # q between p and Y
    # add the second p-q edge; rotations: p: [toward X, toward q, extra];
    # placing the doubled edge next to the existing one keeps a bigon face
    x1 = b.fresh_dart()
    x2 = x1 + 1
    b.twin[x1] = x2
    b.twin[x2] = x1
    b.vertex_of[x1] = p
    b.vertex_of[x2] = q
    b.rotation[p] = [dp1, dp2, x1]
    b.rotation[q] = [dq1, dq2, x2]
    return b.freeze()


def self_loop_insert(g: PlaneGraph, e: int) -> PlaneGraph:
    """Edge {C,D} becomes C-B-D with a pendant loop vertex A at B."""
    b = GraphBuilder(g)
    base = max(b.rotation) + 1
    bb, aa = base, base + 1
    d1, d2 = _subdivide(b, e, bb)
    s1 = b.fresh_dart()
    s2, l1, l2 = s1 + 1, s1 + 2, s1 + 3
    b.twin[s1] = s2
    b.twin[s2] = s1
    b.twin[l1] = l2
    b.twin[l2] = l1
    b.vertex_of[s1] = bb
    for dd in (s2, l1, l2):
        b.vertex_of[dd] = aa
    b.rotation[bb] = [d1, s1, d2]
    b.rotation[aa] = [s2, l1, l2]
    return b.freeze()


def ladder_insert(g: PlaneGraph, d_a: int, d_b: int) -> PlaneGraph:
    """Insert a two-rung ladder through the face containing darts d_a, d_b
    (distinct edges on a common face boundary)."""
    if g.face_of(d_a) != g.face_of(d_b) or g.edge_of(d_a) == g.edge_of(d_b):
        raise InfeasibleSize("darts must lie on one face, distinct edges")
    b = GraphBuilder(g)
    base = max(b.rotation) + 1
    u1, u2, w1, w2 = base, base + 1, base + 2, base + 3
    # subdivide edge a twice: order along d_a is u1 then u2
    a1, a2 = _subdivide(b, d_a, u1)
    a3, a4 = _subdivide(b, a2, u2)
    b1, b2 = _subdivide(b, d_b, w1)
    b3, b4 = _subdivide(b, b2, w2)
    r1a = b.fresh_dart()
    r1b, r2a, r2b = r1a + 1, r1a + 2, r1a + 3
    b.twin[r1a] = r1b
    b.twin[r1b] = r1a
    b.twin[r2a] = r2b
    b.twin[r2b] = r2a
    # rungs connect u1-w2 and u2-w1: along the face boundary the two edges
    # are traversed in opposite senses, so anti-aligned rungs do not cross
    b.vertex_of[r1a] = u1
    b.vertex_of[r1b] = w2
    b.vertex_of[r2a] = u2
    b.vertex_of[r2b] = w1
    # the shared face lies on the side of darts d_a, d_b; insert rung darts
    # on that side of each subdivision vertex
    b.rotation[u1] = [a1, r1a, a2]
    b.rotation[u2] = [a3, r2a, a4]
    b.rotation[w1] = [b1, r2b, b2]
    b.rotation[w2] = [b3, r1b, b4]
    return b.freeze()


MOVES = ("triangle", "parallel", "loop", "ladder")
BIPARTITE_MOVES = ("parallel", "ladder")


def _apply_random_move(g: PlaneGraph, rng: random.Random,
                       moves: Tuple[str, ...]) -> Optional[PlaneGraph]:
    kind = rng.choice(moves)
    try:
        if kind == "triangle":
            return vertex_to_triangle(g, rng.choice(g.vertices()))
        if kind == "parallel":
            return parallel_pair_insert(g, rng.choice(g.edges()))
        if kind == "loop":
            return self_loop_insert(g, rng.choice(g.edges()))
        faces = [f for f in g.faces()
                 if len({g.edge_of(d) for d in f.boundary}) >= 2]
        if not faces:
            return None
        f = rng.choice(faces)
        d_a = rng.choice(f.boundary)
        others = [d for d in f.boundary if g.edge_of(d) != g.edge_of(d_a)]
        d_b = rng.choice(others)
        return ladder_insert(g, d_a, d_b)
    except InfeasibleSize:
        return None


def generate_cubic_plane(n: int, seed: int) -> PlaneGraph:
    """Random connected cubic plane multigraph on n vertices (n even >= 2)."""
    if n < 2 or n % 2:
        raise InfeasibleSize(f"no cubic graph on {n} vertices")
    rng = random.Random(seed)
    g = rng.choice((fixtures.dumbbell, fixtures.m23, fixtures.k4))()
    while len(g.vertices()) > n:
        g = rng.choice((fixtures.dumbbell, fixtures.m23))()
    while len(g.vertices()) < n:
        g2 = _apply_random_move(g, rng, MOVES)
        if g2 is not None and len(g2.vertices()) <= n:
            g = g2
    return g


def generate_cubic_bipartite_plane(n: int, seed: int) -> PlaneGraph:
    """Random connected cubic bipartite plane multigraph on n vertices."""
    if n < 2 or n % 2:
        raise InfeasibleSize(f"no cubic graph on {n} vertices")
    rng = random.Random(seed)
    g = fixtures.m23()
    guard = 0
    while len(g.vertices()) < n:
        g2 = _apply_random_move(g, rng, BIPARTITE_MOVES)
        guard += 1
        if guard > 10000:
            raise InfeasibleSize("move search stalled")
        if g2 is None:
            continue
        if len(g2.vertices()) > n:
            continue
        if two_coloring(g2) is None:
            continue
        g = g2
    assert two_coloring(g) is not None
    return g


def move_closure(max_vertices: int) -> List[PlaneGraph]:
    """All graphs reachable from the seed set by expansion moves, up to
    max_vertices, deduplicated by canonical form."""
    seeds = [fixtures.dumbbell(), fixtures.m23(), fixtures.k4()]
    seen = {}
    frontier = []
    for s in seeds:
        key = s.canonical_form()
        if key not in seen:
            seen[key] = s
            frontier.append(s)
    while frontier:
        g = frontier.pop()
        if len(g.vertices()) + 2 > max_vertices:
            continue
        candidates: List[PlaneGraph] = []
        for v in g.vertices():
            candidates.append(vertex_to_triangle(g, v))
        for e in g.edges():
            candidates.append(parallel_pair_insert(g, e))
            candidates.append(self_loop_insert(g, e))
        for f in g.faces():
            for i, d_a in enumerate(f.boundary):
                for d_b in f.boundary[i + 1:]:
                    if g.edge_of(d_a) != g.edge_of(d_b):
                        candidates.append(ladder_insert(g, d_a, d_b))
        for c in candidates:
            if len(c.vertices()) > max_vertices:
                continue
            key = c.canonical_form()
            if key not in seen:
                seen[key] = c
                frontier.append(c)
    return list(seen.values())
