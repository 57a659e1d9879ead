"""Plane multigraphs as rotation systems.

A dart is half an edge; ``twin`` pairs the two halves and every vertex
carries its darts in counterclockwise cyclic order.  Faces are the orbits
of the successor map next(d) = ccw-next dart after twin(d) at the vertex
of twin(d); with counterclockwise rotations this walks each face once.
Genus 0 is enforced per connected component through Euler's formula, so a
validated graph really is a plane (multi)graph.  Self-loops and parallel
edges are allowed throughout.

Edges are identified by the smaller dart id of the pair; faces by the
smallest dart id on their boundary.  Embeddings live on the sphere: no
outer face is distinguished, and consumers that need one (matching
reductions, the orientation sweep) pick a face themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class GraphError(ValueError):
    pass


class NonInvolutionTwin(GraphError):
    pass


class DartMissingFromRotation(GraphError):
    pass


class NonPlanarEmbedding(GraphError):
    pass


class NotCubic(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


@dataclass(frozen=True)
class Face:
    id: int                    # smallest dart id on the boundary
    boundary: Tuple[int, ...]  # dart orbit, cyclic


class PlaneGraph:
    """Immutable validated plane multigraph.

    twin: dict dart -> dart; vertex_of: dict dart -> vertex;
    rotation: dict vertex -> tuple of darts in ccw order.
    """

    def __init__(self, twin: Dict[int, int], vertex_of: Dict[int, int],
                 rotation: Dict[int, Tuple[int, ...]]):
        self.twin = dict(twin)
        self.vertex_of = dict(vertex_of)
        self.rotation = {v: tuple(r) for v, r in rotation.items()}
        self._validate()
        self._faces: Optional[List[Face]] = None
        self._face_of_dart: Optional[Dict[int, int]] = None

    # -- validation ---------------------------------------------------

    def _validate(self) -> None:
        darts = set(self.twin)
        for d, t in self.twin.items():
            if t == d or t not in self.twin or self.twin[t] != d:
                raise NonInvolutionTwin(f"dart {d}")
        seen = {}
        for v, rot in self.rotation.items():
            for d in rot:
                if d in seen or d not in darts:
                    raise DartMissingFromRotation(f"dart {d} at vertex {v}")
                if self.vertex_of.get(d) != v:
                    raise DartMissingFromRotation(
                        f"dart {d} listed at {v} but owned by {self.vertex_of.get(d)}")
                seen[d] = v
        if set(seen) != darts:
            missing = darts - set(seen)
            raise DartMissingFromRotation(f"darts {sorted(missing)[:5]} in no rotation")
        # Euler per component, via face orbits
        for comp in self.connected_components():
            vs = len(comp)
            comp_darts = [d for v in comp for d in self.rotation[v]]
            es = len(comp_darts) // 2
            fs = _count_orbits(self, comp_darts)
            if vs - es + fs != 2:
                raise NonPlanarEmbedding(
                    f"component {sorted(comp)[:4]}...: V-E+F = {vs}-{es}+{fs} != 2")

    # -- basic queries ------------------------------------------------

    def darts(self) -> List[int]:
        return sorted(self.twin)

    def vertices(self) -> List[int]:
        return sorted(self.rotation)

    def edges(self) -> List[int]:
        """Edge ids: the smaller dart of each twin pair."""
        return sorted(d for d in self.twin if d < self.twin[d])

    def edge_of(self, dart: int) -> int:
        return min(dart, self.twin[dart])

    def edge_ends(self, e: int) -> Tuple[int, int]:
        if e not in self.twin or e > self.twin[e]:
            raise UnknownEdge(str(e))
        return self.vertex_of[e], self.vertex_of[self.twin[e]]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def is_cubic(self) -> bool:
        return all(len(r) == 3 for r in self.rotation.values())

    def require_cubic(self) -> None:
        if not self.is_cubic():
            raise NotCubic("graph is not 3-regular")

    def next_dart(self, d: int) -> int:
        """Face successor: ccw-next dart after twin(d) at vertex(twin(d))."""
        t = self.twin[d]
        rot = self.rotation[self.vertex_of[t]]
        return rot[(rot.index(t) + 1) % len(rot)]

    def faces(self) -> List[Face]:
        if self._faces is None:
            self._faces = []
            self._face_of_dart = {}
            for d0 in self.darts():
                if d0 in self._face_of_dart:
                    continue
                orbit = [d0]
                d = self.next_dart(d0)
                while d != d0:
                    orbit.append(d)
                    d = self.next_dart(d)
                fid = min(orbit)
                for d in orbit:
                    self._face_of_dart[d] = fid
                self._faces.append(Face(fid, tuple(orbit)))
            self._faces.sort(key=lambda f: f.id)
        return self._faces

    def face_of(self, dart: int) -> int:
        self.faces()
        return self._face_of_dart[dart]

    def face_boundary(self, fid: int) -> Tuple[int, ...]:
        for f in self.faces():
            if f.id == fid:
                return f.boundary
        raise GraphError(f"no face {fid}")

    def edge_faces(self, e: int) -> Tuple[int, int]:
        """The two (possibly equal) face ids incident to edge e."""
        if e not in self.twin or e > self.twin[e]:
            raise UnknownEdge(str(e))
        return self.face_of(e), self.face_of(self.twin[e])

    def connected_components(self) -> List[List[int]]:
        seen = set()
        comps = []
        for v0 in self.vertices():
            if v0 in seen:
                continue
            comp, stack = [], [v0]
            seen.add(v0)
            while stack:
                v = stack.pop()
                comp.append(v)
                for d in self.rotation[v]:
                    w = self.vertex_of[self.twin[d]]
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def bridges(self) -> set:
        """Edge ids whose removal disconnects their component."""
        # lowpoint DFS over darts; skips exactly one reverse dart per tree edge,
        # so parallel edges count as back edges and are never bridges
        disc: Dict[int, int] = {}
        low: Dict[int, int] = {}
        out = set()
        time = [0]
        for root in self.vertices():
            if root in disc:
                continue
            disc[root] = low[root] = time[0]
            time[0] += 1
            stack = [(root, None, iter(self.rotation[root]))]
            while stack:
                v, back_dart, it = stack[-1]
                pushed = False
                for d in it:
                    if d == back_dart:
                        continue
                    w = self.vertex_of[self.twin[d]]
                    if w == v:
                        continue  # self-loop
                    if w in disc:
                        low[v] = min(low[v], disc[w])
                    else:
                        disc[w] = low[w] = time[0]
                        time[0] += 1
                        stack.append((w, self.twin[d], iter(self.rotation[w])))
                        pushed = True
                        break
                if not pushed:
                    stack.pop()
                    if stack:
                        u = stack[-1][0]
                        low[u] = min(low[u], low[v])
                        if low[v] > disc[u]:
                            out.add(self.edge_of(back_dart))
        return out

    def is_bridge(self, e: int) -> bool:
        if e not in self.twin or e > self.twin[e]:
            raise UnknownEdge(str(e))
        u, w = self.edge_ends(e)
        if u == w:
            return False
        # parallel edge is never a bridge
        par = sum(1 for d in self.rotation[u] if self.vertex_of[self.twin[d]] == w)
        if par > 1:
            return False
        return e in self.bridges()

    # -- canonical form / isomorphism ----------------------------------

    def canonical_form(self) -> tuple:
        """Canonical encoding of a connected rotation system, invariant under
        planar isomorphism (both orientations tried)."""
        comps = self.connected_components()
        if len(comps) != 1:
            raise GraphError("canonical_form requires a connected graph")
        best = None
        for flip in (False, True):
            rot = (self.rotation if not flip else
                   {v: tuple(reversed(r)) for v, r in self.rotation.items()})
            for start in self.darts():
                code = _trace_code(self.twin, self.vertex_of, rot, start)
                if best is None or code < best:
                    best = code
        return best

    # -- JSON -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "rotation": list(self.rotation[v])}
                         for v in self.vertices()],
            "darts": [{"id": d, "twin": self.twin[d], "vertex": self.vertex_of[d]}
                      for d in self.darts()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def __eq__(self, other):
        return (isinstance(other, PlaneGraph)
                and self.twin == other.twin
                and self.vertex_of == other.vertex_of
                and self.rotation == other.rotation)

    def __repr__(self):
        return (f"PlaneGraph(v={len(self.rotation)}, "
                f"e={len(self.twin) // 2})")


def _count_orbits(g: PlaneGraph, darts: Iterable[int]) -> int:
    seen = set()
    n = 0
    for d0 in darts:
        if d0 in seen:
            continue
        n += 1
        d = d0
        while True:
            seen.add(d)
            d = g.next_dart(d)
            if d == d0:
                break
    return n


def _trace_code(twin, vertex_of, rotation, start) -> tuple:
    """BFS over darts by (twin, rot-next); relabel in discovery order."""
    label = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        for nxt in (twin[d], _rot_next(rotation, vertex_of, d)):
            if nxt not in label:
                label[nxt] = len(order)
                order.append(nxt)
    if len(order) < len(twin):
        raise GraphError("canonical trace requires a connected graph")
    return tuple((label[twin[d]], label[_rot_next(rotation, vertex_of, d)])
                 for d in order)


def _rot_next(rotation, vertex_of, d) -> int:
    rot = rotation[vertex_of[d]]
    return rot[(rot.index(d) + 1) % len(rot)]


def build(spec: dict) -> PlaneGraph:
    """Build and validate a PlaneGraph from its JSON dict form."""
    twin = {}
    vertex_of = {}
    for rec in spec["darts"]:
        twin[int(rec["id"])] = int(rec["twin"])
        vertex_of[int(rec["id"])] = int(rec["vertex"])
    rotation = {int(rec["id"]): tuple(int(d) for d in rec["rotation"])
                for rec in spec["vertices"]}
    return PlaneGraph(twin, vertex_of, rotation)


def from_json(text: str) -> PlaneGraph:
    return build(json.loads(text))


class GraphBuilder:
    """Mutable staging area for graph surgery; freeze() validates."""

    def __init__(self, g: Optional[PlaneGraph] = None):
        if g is None:
            self.twin: Dict[int, int] = {}
            self.vertex_of: Dict[int, int] = {}
            self.rotation: Dict[int, List[int]] = {}
        else:
            self.twin = dict(g.twin)
            self.vertex_of = dict(g.vertex_of)
            self.rotation = {v: list(r) for v, r in g.rotation.items()}

    def fresh_dart(self) -> int:
        return max(self.twin, default=-1) + 1

    def add_vertex(self, v: int, darts: Sequence[int]) -> None:
        self.rotation[v] = list(darts)
        for d in darts:
            self.vertex_of[d] = v

    def add_edge(self, d1: int, v1: int, d2: int, v2: int) -> None:
        """Register twin pair (d1,d2); darts must already sit in rotations or
        be added afterwards."""
        self.twin[d1] = d2
        self.twin[d2] = d1
        self.vertex_of[d1] = v1
        self.vertex_of[d2] = v2

    def retwin(self, d1: int, d2: int) -> None:
        self.twin[d1] = d2
        self.twin[d2] = d1

    def remove_vertex(self, v: int) -> None:
        for d in self.rotation.pop(v):
            self.twin.pop(d, None)
            self.vertex_of.pop(d, None)

    def drop_dart(self, d: int) -> None:
        v = self.vertex_of.pop(d)
        self.rotation[v].remove(d)
        self.twin.pop(d, None)

    def delete_edge(self, e_dart: int) -> None:
        t = self.twin[e_dart]
        self.drop_dart(e_dart)
        self.drop_dart(t)

    def replace_in_rotation(self, v: int, old: int, new: int) -> None:
        i = self.rotation[v].index(old)
        self.rotation[v][i] = new
        self.vertex_of[new] = v

    def contract_edge(self, e_dart: int, new_vertex: Optional[int] = None) -> int:
        """Contract non-loop edge; merged vertex keeps the spliced rotation."""
        d, t = e_dart, self.twin[e_dart]
        u, w = self.vertex_of[d], self.vertex_of[t]
        if u == w:
            raise GraphError("cannot contract a self-loop")
        ru, rw = self.rotation[u], self.rotation[w]
        iu, iw = ru.index(d), rw.index(t)
        spliced = ru[iu + 1:] + ru[:iu] + rw[iw + 1:] + rw[:iw]
        nv = u if new_vertex is None else new_vertex
        del self.rotation[u]
        del self.rotation[w]
        self.rotation[nv] = spliced
        for x in spliced:
            self.vertex_of[x] = nv
        del self.twin[d], self.twin[t]
        self.vertex_of.pop(d, None)
        self.vertex_of.pop(t, None)
        return nv

    def freeze(self) -> PlaneGraph:
        return PlaneGraph(self.twin, self.vertex_of,
                          {v: tuple(r) for v, r in self.rotation.items()})


# -- grid conversions ---------------------------------------------------

def two_coloring(g: PlaneGraph) -> Optional[Dict[int, int]]:
    """Proper 2-coloring of vertices, or None if an odd cycle exists."""
    color: Dict[int, int] = {}
    for v0 in g.vertices():
        if v0 in color:
            continue
        color[v0] = 0
        stack = [v0]
        while stack:
            v = stack.pop()
            for d in g.rotation[v]:
                w = g.vertex_of[g.twin[d]]
                if w not in color:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def incidence_grid(g: PlaneGraph, left_sig, right_sig):
    """Edge-vertex incidence grid of a cubic plane graph: every vertex a
    right node carrying right_sig, every edge a binary left node carrying
    left_sig.  Node ids: right = 2*vertex, left = 2*edge+1."""
    from .holant_core import GridNode, SignatureGrid
    g.require_cubic()
    if left_sig.arity != 2 or right_sig.arity != 3:
        raise GraphError("incidence grid wants a binary left and ternary right signature")
    nodes = {}
    emb = {}
    for v in g.vertices():
        nid = 2 * v
        nodes[nid] = GridNode(nid, "right", ("R", "R", "R"), right_sig)
        emb[nid] = (0, 1, 2)
    for e in g.edges():
        nid = 2 * e + 1
        nodes[nid] = GridNode(nid, "left", ("L", "L"), left_sig)
        emb[nid] = (0, 1)
    edges = []
    for v in g.vertices():
        for slot, d in enumerate(g.rotation[v]):
            e = g.edge_of(d)
            eslot = 0 if d == e else 1
            edges.append((2 * e + 1, eslot, 2 * v, slot))
    # self-loops contribute two records on the same left node, one per slot
    return SignatureGrid(nodes, edges, [], emb)


def merge_degree2_left(grid) -> PlaneGraph:
    """Inverse of incidence_grid: contract every binary left node back to an
    edge.  Requires an embedding and all left nodes of arity 2."""
    g, _ = merge_degree2_left_map(grid)
    return g


def merge_degree2_left_map(grid) -> Tuple[PlaneGraph, Dict[int, int]]:
    """merge_degree2_left plus the map from left node id to edge id."""
    if grid.embedding is None:
        raise GraphError("merge needs an embedded grid")
    twin: Dict[int, int] = {}
    vertex_of: Dict[int, int] = {}
    rotation: Dict[int, Tuple[int, ...]] = {}
    dart_ids: Dict[Tuple[int, int], int] = {}
    nxt = 0
    rights = [n for n in grid.nodes.values() if n.side == "right"]
    lefts = [n for n in grid.nodes.values() if n.side != "right"]
    if any(n.arity != 2 for n in lefts):
        raise GraphError("all left nodes must be binary")
    for n in rights:
        rot = []
        for s in grid.embedding[n.id]:
            dart_ids[(n.id, s)] = nxt
            rot.append(nxt)
            vertex_of[nxt] = n.id
            nxt += 1
        rotation[n.id] = tuple(rot)
    ends: Dict[int, List[Tuple[int, int]]] = {}
    for (na, sa, nb, sb) in grid.edges:
        ln, rn = ((na, sa), (nb, sb))
        if grid.nodes[na].side == "right":
            ln, rn = rn, ln
        ends.setdefault(ln[0], []).append(rn)
    edge_map: Dict[int, int] = {}
    for lid, pair in ends.items():
        if len(pair) != 2:
            raise GraphError(f"left node {lid} not fully connected")
        d1 = dart_ids[pair[0]]
        d2 = dart_ids[pair[1]]
        twin[d1] = d2
        twin[d2] = d1
        edge_map[lid] = min(d1, d2)
    return PlaneGraph(twin, vertex_of, rotation), edge_map


def grid_from_cubic_bipartite(g: PlaneGraph, f, right_sig=None,
                              coloring: Optional[Dict[int, int]] = None):
    """Holant instance over a cubic bipartite plane graph: color-0 vertices
    get the ternary f (left), color-1 get right_sig (default =3)."""
    from .holant_core import GridNode, SignatureGrid
    from .signatures import EQ3
    g.require_cubic()
    if right_sig is None:
        right_sig = EQ3
    if coloring is None:
        coloring = two_coloring(g)
        if coloring is None:
            raise GraphError("graph is not bipartite")
    nodes = {}
    emb = {}
    slot_of_dart = {}
    for v in g.vertices():
        side = "left" if coloring[v] == 0 else "right"
        sig = f if side == "left" else right_sig
        facing = "L" if side == "left" else "R"
        nodes[v] = GridNode(v, side, (facing,) * 3, sig)
        emb[v] = (0, 1, 2)
        for slot, d in enumerate(g.rotation[v]):
            slot_of_dart[d] = slot
    edges = []
    for e in g.edges():
        d, t = e, g.twin[e]
        u, w = g.vertex_of[d], g.vertex_of[t]
        if coloring[u] == coloring[w]:
            raise GraphError("graph is not properly 2-colored")
        edges.append((u, slot_of_dart[d], w, slot_of_dart[t]))
    return SignatureGrid(nodes, edges, [], emb)


def plane_graph_of_grid(grid) -> PlaneGraph:
    """Underlying plane multigraph of an embedded grid (nodes -> vertices)."""
    if grid.embedding is None:
        raise GraphError("grid carries no embedding")
    dart_ids: Dict[Tuple[int, int], int] = {}
    vertex_of: Dict[int, int] = {}
    rotation: Dict[int, Tuple[int, ...]] = {}
    nxt = 0
    for nid in sorted(grid.nodes):
        rot = []
        for s in grid.embedding[nid]:
            dart_ids[(nid, s)] = nxt
            vertex_of[nxt] = nid
            rot.append(nxt)
            nxt += 1
        rotation[nid] = tuple(rot)
    twin = {}
    for (na, sa, nb, sb) in grid.edges:
        d1, d2 = dart_ids[(na, sa)], dart_ids[(nb, sb)]
        twin[d1] = d2
        twin[d2] = d1
    if grid.dangling:
        raise GraphError("dangling slots have no graph image")
    return PlaneGraph(twin, vertex_of, rotation)
