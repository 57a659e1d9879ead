"""Polynomial-time exact solvers for the tractable signature classes.

count_pm implements the FKT pipeline: Kasteleyn orientation by a dual
spanning-tree sweep, then an exact fraction-free Pfaffian whose sign is
fixed by the elimination itself (no determinant square root).  The five
class solvers reduce to perfect-matching counts (cases 4 and 5), GF(2)
Gauss sums (affine), or closed products (degenerate, generalized
equality), and every one is oracle-tested against brute-force evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .plane_graph import (GraphBuilder, PlaneGraph, plane_graph_of_grid)
from .holant_core import SignatureGrid
from .scalars import Scalar
from .signatures import SymSignature, hadamard3


class SolverError(ValueError):
    pass


class WrongForm(SolverError):
    pass


# -- Kasteleyn orientation and Pfaffian ---------------------------------

class KasteleynOrientation:
    """Map dart -> True when the edge is oriented out of that dart's vertex;
    every non-root face has an odd number of boundary-aligned darts."""

    def __init__(self, g: PlaneGraph, oriented_out: Dict[int, bool], root_face: int):
        self.graph = g
        self.oriented_out = oriented_out
        self.root_face = root_face

    def verify(self) -> bool:
        for f in self.graph.faces():
            if f.id == self.root_face:
                continue
            aligned = sum(1 for d in f.boundary if self.oriented_out[d])
            if aligned % 2 == 0:
                return False
        return True


def kasteleyn_orient(g: PlaneGraph, root_face: Optional[int] = None) -> KasteleynOrientation:
    """Pfaffian orientation of a connected simple plane graph."""
    if len(g.connected_components()) != 1:
        raise SolverError("orientation wants a connected graph")
    faces = g.faces()
    if root_face is None:
        root_face = faces[0].id
    # primal spanning tree
    tree_edges = set()
    seen = {g.vertices()[0]}
    stack = [g.vertices()[0]]
    while stack:
        v = stack.pop()
        for d in g.rotation[v]:
            w = g.vertex_of[g.twin[d]]
            if w not in seen:
                seen.add(w)
                tree_edges.add(g.edge_of(d))
                stack.append(w)
    if len(seen) != len(g.vertices()):
        raise SolverError("graph is disconnected")
    # arbitrary orientation on tree edges: out of the smaller dart
    oriented_out: Dict[int, bool] = {}
    for e in tree_edges:
        oriented_out[e] = True
        oriented_out[g.twin[e]] = False
    # co-tree edges form a spanning tree of the dual; sweep leaves-up
    cotree = [e for e in g.edges() if e not in tree_edges]
    face_edges: Dict[int, List[int]] = {f.id: [] for f in faces}
    for e in cotree:
        f1, f2 = g.edge_faces(e)
        face_edges[f1].append(e)
        if f2 != f1:
            face_edges[f2].append(e)
    undecided = {f.id: len(face_edges[f.id]) for f in faces}
    order = []
    ready = [fid for fid, k in undecided.items() if k == 1 and fid != root_face]
    decided_edges = set()
    while ready:
        fid = ready.pop()
        e = next(x for x in face_edges[fid] if x not in decided_edges)
        decided_edges.add(e)
        order.append((fid, e))
        f1, f2 = g.edge_faces(e)
        other = f2 if f1 == fid else f1
        undecided[other] -= 1
        undecided[fid] -= 1
        if other != root_face and undecided[other] == 1:
            ready.append(other)
    if len(decided_edges) != len(cotree):
        raise SolverError("dual sweep failed (graph not plane-connected?)")
    for fid, e in order:
        boundary = g.face_boundary(fid)
        aligned = 0
        pending_darts = [d for d in boundary if g.edge_of(d) == e]
        for d in boundary:
            if g.edge_of(d) == e:
                continue
            if oriented_out[d]:
                aligned += 1
        # choose orientation of e so total aligned on this face is odd
        d = pending_darts[0]
        want = (aligned % 2 == 0)
        oriented_out[d] = want
        oriented_out[g.twin[d]] = not want
    ko = KasteleynOrientation(g, oriented_out, root_face)
    if not ko.verify():
        raise SolverError("Kasteleyn verification failed")
    return ko


def _pfaffian(mat: List[List[Scalar]]) -> Scalar:
    """Pfaffian of a skew-symmetric matrix by exact elimination."""
    n = len(mat)
    if n % 2:
        return Fraction(0)
    a = [row[:] for row in mat]
    pf: Scalar = Fraction(1)
    for i in range(0, n, 2):
        pivot = None
        for j in range(i + 1, n):
            if a[i][j] != 0:
                pivot = j
                break
        if pivot is None:
            return Fraction(0)
        if pivot != i + 1:
            # swap rows/cols pivot <-> i+1; each pair swap flips the sign
            a[pivot], a[i + 1] = a[i + 1], a[pivot]
            for row in a:
                row[pivot], row[i + 1] = row[i + 1], row[pivot]
            pf = -pf
        p = a[i][i + 1]
        pf = pf * p
        # Schur complement on the trailing block, keeping skew symmetry
        for r in range(i + 2, n):
            for s in range(r + 1, n):
                a[r][s] = a[r][s] - (a[i][r] * a[i + 1][s]
                                     - a[i][s] * a[i + 1][r]) / p
                a[s][r] = -a[r][s]
    return pf


def count_pm(g: PlaneGraph, weights: Optional[Dict[int, Scalar]] = None) -> Scalar:
    """Weighted perfect-matching sum of a plane multigraph, exactly.

    Self-loops never participate and are dropped; parallel edges are
    separated by double subdivision so the Kasteleyn matrix stays simple.
    """
    weights = dict(weights or {})
    total: Scalar = Fraction(1)
    for comp in g.connected_components():
        sub = _induced(g, comp)
        total = total * _count_pm_connected(sub, weights)
        if total == 0:
            return Fraction(0)
    return total


def _induced(g: PlaneGraph, comp: List[int]) -> PlaneGraph:
    keep = set(comp)
    twin = {d: t for d, t in g.twin.items() if g.vertex_of[d] in keep}
    vo = {d: v for d, v in g.vertex_of.items() if v in keep}
    rot = {v: g.rotation[v] for v in comp}
    return PlaneGraph(twin, vo, rot)


def _count_pm_connected(g: PlaneGraph, weights: Dict[int, Scalar]) -> Scalar:
    if len(g.vertices()) % 2:
        return Fraction(0)
    g2, wmap = _simplify_for_pm(g, weights)
    if len(g2.vertices()) % 2:
        return Fraction(0)
    if len(g2.edges()) == 0:
        return Fraction(1) if not g2.vertices() else Fraction(0)
    for comp in g2.connected_components():
        if len(comp) % 2:
            return Fraction(0)
    ko = kasteleyn_orient(g2)
    verts = g2.vertices()
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)

    def pfaff(weighted: bool) -> Scalar:
        mat: List[List[Scalar]] = [[Fraction(0)] * n for _ in range(n)]
        for e in g2.edges():
            u, v = g2.edge_ends(e)
            w = wmap.get(e, Fraction(1)) if weighted else Fraction(1)
            sgn = 1 if ko.oriented_out[e] else -1
            mat[idx[u]][idx[v]] += sgn * w
            mat[idx[v]][idx[u]] -= sgn * w
        return _pfaffian(mat)

    # all matchings carry one global sign under a Pfaffian orientation; the
    # unit-weight Pfaffian exposes it (zero means no matchings at all)
    unit = pfaff(False)
    if unit == 0:
        return Fraction(0)
    pf = pfaff(True)
    return pf if unit > 0 else -pf


def _simplify_for_pm(g: PlaneGraph, weights: Dict[int, Scalar]):
    """Drop self-loops; doubly subdivide one edge of every parallel pair
    (PM-count preserving; the weight rides on one new segment)."""
    b = GraphBuilder(g)
    wmap: Dict[int, Scalar] = {}
    loops = [e for e in g.edges() if g.vertex_of[e] == g.vertex_of[g.twin[e]]]
    for e in loops:
        b.delete_edge(e)
    pair_seen = set()
    to_split = []
    for e in g.edges():
        if e in loops:
            continue
        u, v = g.edge_ends(e)
        key = (min(u, v), max(u, v))
        if key in pair_seen:
            to_split.append(e)
        else:
            pair_seen.add(key)
            wmap[e] = weights.get(e, Fraction(1))
    nv = max(b.rotation) + 1
    for e in to_split:
        w = weights.get(e, Fraction(1))
        d1, d2 = _subdivide_edge(b, e, nv)
        _subdivide_edge(b, d2, nv + 1)
        nv += 2
        wmap[min(e, b.twin[e])] = w  # weight on the first segment
    g2 = b.freeze()
    # re-key weights to edge ids of g2 (first segments keep the low dart id)
    return g2, {min(e, g2.twin[e]): w for e, w in wmap.items()}


def _subdivide_edge(b: GraphBuilder, dart: int, new_vertex: int) -> Tuple[int, int]:
    t = b.twin[dart]
    d1 = b.fresh_dart()
    d2 = d1 + 1
    b.rotation[new_vertex] = [d1, d2]
    b.vertex_of[d1] = new_vertex
    b.vertex_of[d2] = new_vertex
    b.retwin(dart, d1)
    b.retwin(d2, t)
    return d1, d2


def brute_force_pm(g: PlaneGraph, weights: Optional[Dict[int, Scalar]] = None) -> Scalar:
    """Independent oracle: enumerate perfect matchings recursively."""
    weights = weights or {}
    edges = []
    for e in g.edges():
        u, v = g.edge_ends(e)
        if u != v:
            edges.append((e, u, v))
    verts = set(g.vertices())

    def rec(remaining: frozenset) -> Scalar:
        if not remaining:
            return Fraction(1)
        v = min(remaining)
        total: Scalar = Fraction(0)
        for (e, a, bb) in edges:
            if a == v and bb in remaining or bb == v and a in remaining:
                other = bb if a == v else a
                if other == v:
                    continue
                w = weights.get(e, Fraction(1))
                total = total + w * rec(remaining - {v, other})
        return total

    return rec(frozenset(verts))


# -- grid plumbing -------------------------------------------------------

def _grid_sides(grid: SignatureGrid):
    lefts = grid.left_nodes()
    rights = grid.right_nodes()
    if len(lefts) + len(rights) != len(grid.nodes):
        raise WrongForm("solver grids must not contain table nodes")
    return lefts, rights


def _require_case(grid: SignatureGrid, f: SymSignature):
    lefts, rights = _grid_sides(grid)
    for n in lefts:
        if n.sym is None or n.sym.values != f.values:
            raise WrongForm("left signatures do not match the declared case")
    for n in rights:
        if not n.is_equality() or n.arity != 3:
            raise WrongForm("right nodes must be ternary equalities")
    return lefts, rights


def _neighbors(grid: SignatureGrid):
    """For each left node id: list of right node ids, one per slot."""
    nbr: Dict[int, List[Optional[int]]] = {
        n.id: [None] * n.arity for n in grid.left_nodes()}
    for (na, sa, nb, sb) in grid.edges:
        if grid.nodes[na].side == "left":
            nbr[na][sa] = nb
        else:
            nbr[nb][sb] = na
    return nbr


# -- case solvers ---------------------------------------------------------

def solve_degenerate(grid: SignatureGrid, u: Sequence[Scalar], scale: Scalar) -> Scalar:
    """f = scale * [u0,u1]^{(x)3}: the Holant factorizes per right node."""
    u0, u1 = u
    f = SymSignature([scale * u0 ** 3, scale * u0 ** 2 * u1,
                      scale * u0 * u1 ** 2, scale * u1 ** 3])
    lefts, rights = _require_case(grid, f)
    nU, nV = len(lefts), len(rights)
    total: Scalar = scale ** nU
    if u0 == 0:
        return total * u1 ** (3 * nU) if nU else total
    t = u1 / u0
    return total * u0 ** (3 * nU) * (1 + t ** 3) ** nV


def solve_geneq(grid: SignatureGrid, a: Scalar, b: Scalar) -> Scalar:
    """f = [a,0,0,b]: every connected component is monochrome."""
    f = SymSignature([a, 0, 0, b])
    lefts, rights = _require_case(grid, f)
    comp_of: Dict[int, int] = {}

    def find(x):
        while comp_of.get(x, x) != x:
            comp_of[x] = comp_of.get(comp_of[x], comp_of[x])
            x = comp_of[x]
        return x

    for n in grid.nodes.values():
        comp_of.setdefault(n.id, n.id)
    for (na, sa, nb, sb) in grid.edges:
        ra, rb = find(na), find(nb)
        if ra != rb:
            comp_of[ra] = rb
    groups: Dict[int, int] = {}
    for n in lefts:
        groups[find(n.id)] = groups.get(find(n.id), 0) + 1
    total: Scalar = Fraction(1)
    for root, k in groups.items():
        total = total * (a ** k + b ** k)
    return total


AFFINE_FAMILIES = ("even", "even_signed", "odd", "odd_signed",
                   "alternating", "two_block")


def affine_family_of(f: SymSignature) -> Optional[Tuple[str, Scalar]]:
    """Match [a,0,+-a,0], [0,a,0,+-a], [a,-a,-a,a], [a,a,-a,-a]."""
    a = next((v for v in f.values if v != 0), None)
    if a is None:
        return None
    pats = {
        "even": (1, 0, 1, 0), "even_signed": (1, 0, -1, 0),
        "odd": (0, 1, 0, 1), "odd_signed": (0, 1, 0, -1),
        "alternating": (1, -1, -1, 1), "two_block": (1, 1, -1, -1),
    }
    for name, pat in pats.items():
        base = next((v for v, p in zip(f.values, pat) if p != 0), None)
        if base == 0 or base is None:
            continue
        if all(v == base * p for v, p in zip(f.values, pat)):
            return name, base
    return None


def gauss_sum_gf2(n: int, quad: set, lin: set, const: int) -> Scalar:
    """Sum over GF(2)^n of (-1)^{Q(x)} for Q = sum_{(i,j) in quad} x_i x_j +
    sum_{i in lin} x_i + const, by repeated pair elimination."""
    quad = {(min(i, j), max(i, j)) for (i, j) in quad}
    lin = set(lin)
    live = set(range(n))
    factor = 1
    while quad:
        i, j = min(quad)
        quad.discard((i, j))
        # Q = x_i x_j + x_i B + x_j A + C; summing the pair gives 2*(-1)^{AB}
        A = {k for k in live - {i, j} if (min(j, k), max(j, k)) in quad}
        B = {k for k in live - {i, j} if (min(i, k), max(i, k)) in quad}
        for k in A:
            quad.discard((min(j, k), max(j, k)))
        for k in B:
            quad.discard((min(i, k), max(i, k)))
        a_lin = j in lin   # x_j's own linear term joins A
        b_lin = i in lin
        lin.discard(i)
        lin.discard(j)
        # new term A*B where A = sum_{k in A} x_k (+ a_lin), similarly B
        factor *= 2
        live -= {i, j}
        # expand the product of two affine forms into quad/lin/const
        for ka in A:
            for kb in B:
                if ka == kb:
                    lin ^= {ka}
                else:
                    key = (min(ka, kb), max(ka, kb))
                    if key in quad:
                        quad.discard(key)
                    else:
                        quad.add(key)
        if b_lin:
            lin ^= A
        if a_lin:
            lin ^= B
        if a_lin and b_lin:
            const ^= 1
    lin &= live
    if lin:
        return Fraction(0)
    sign = -1 if const else 1
    return Fraction(sign * factor * 2 ** len(live))


def solve_affine(grid: SignatureGrid, family: str, a: Scalar) -> Scalar:
    """Affine classes: one GF(2) variable per right node, per-left-node
    parity constraints and quadratic signs, evaluated as a Gauss sum."""
    pats = {"even": [1, 0, 1, 0], "even_signed": [1, 0, -1, 0],
            "odd": [0, 1, 0, 1], "odd_signed": [0, 1, 0, -1],
            "alternating": [1, -1, -1, 1], "two_block": [1, 1, -1, -1]}
    if family not in pats:
        raise WrongForm(f"unknown affine family {family}")
    f = SymSignature([a * p for p in pats[family]])
    lefts, rights = _require_case(grid, f)
    nbr = _neighbors(grid)
    rindex = {n.id: i for i, n in enumerate(rights)}
    nvars = len(rights)
    # linear support constraints first: eliminate via GF(2) row reduction
    rows: List[Tuple[set, int]] = []    # (set of vars, parity)
    for n in lefts:
        vs = [rindex[r] for r in nbr[n.id]]
        if family in ("even", "even_signed"):
            rows.append((_xor_set(vs), 0))
        elif family in ("odd", "odd_signed"):
            rows.append((_xor_set(vs), 1))
    basis: Dict[int, Tuple[set, int]] = {}
    for vs, parity in rows:
        vs = set(vs)
        while vs:
            p = max(vs)
            if p in basis:
                bs, bp = basis[p]
                vs ^= bs
                parity ^= bp
            else:
                basis[p] = (vs, parity)
                break
        else:
            if parity:
                return Fraction(0)
    # substitute pivot variables into the quadratic sign, if any
    signed = family in ("even_signed", "odd_signed", "alternating", "two_block")
    free = [v for v in range(nvars) if v not in basis]
    free_pos = {v: i for i, v in enumerate(free)}

    quad: set = set()
    lin: set = set()
    const = 0
    if signed:
        # express every variable over the free ones; a basis row's support
        # below its pivot only involves smaller indices, so sweep upward
        cache: Dict[int, Tuple[set, int]] = {
            v: ({free_pos[v]}, 0) for v in free}
        for p in sorted(basis):
            vs, parity = basis[p]
            acc: set = set()
            c0 = parity
            for u in vs:
                if u == p:
                    continue
                s, c = cache[u]
                acc ^= s
                c0 ^= c
            cache[p] = (acc, c0)
        for n in lefts:
            vs = [rindex[r] for r in nbr[n.id]]
            if family == "alternating":
                # [1,-1,-1,1] at weight w is (-1)^{C(w,2) + w}: the pair
                # terms below plus a linear term per slot
                for v in vs:
                    s, c = cache[v]
                    lin = lin ^ s
                    const ^= c
            for i in range(3):
                for j in range(i + 1, 3):
                    si, ci = cache[vs[i]]
                    sj, cj = cache[vs[j]]
                    # (si + ci)(sj + cj) over GF(2)
                    for xa in si:
                        for xb in sj:
                            if xa == xb:
                                lin ^= {xa}
                            else:
                                key = (min(xa, xb), max(xa, xb))
                                quad ^= {key}
                    if cj:
                        lin ^= si
                    if ci:
                        lin ^= sj
                    if ci and cj:
                        const ^= 1
    total = gauss_sum_gf2(len(free), quad, lin, const)
    return a ** len(lefts) * total


def _xor_set(vs: Sequence[int]) -> set:
    out: set = set()
    for v in vs:
        out ^= {v}
    return out


def solve_case5(grid: SignatureGrid, a: Scalar, b: Scalar) -> Scalar:
    """f = [3a+b, -a-b, -a+b, 3a-b]: value is (2a)^{|U|} times the number
    of perfect matchings of the underlying plane bipartite graph."""
    f = SymSignature([3 * a + b, -a - b, -a + b, 3 * a - b])
    lefts, rights = _require_case(grid, f)
    if len(lefts) != len(rights):
        raise WrongForm("3-regular bipartite grid expected")
    if not lefts:
        return Fraction(1)
    if a == 0:
        return Fraction(0)
    g = plane_graph_of_grid(grid)
    return (2 * a) ** len(lefts) * count_pm(g)


# -- matchgate case: Fisher-style decorations ----------------------------

def _decorate(grid: SignatureGrid, left_kind: str, right_kind: str,
              left_weight: Scalar):
    """Replace every grid node by a local matchgate fragment.

    Kinds: 'even' (triangle with pendant legs; allows external degree 0/2,
    weight left_weight per triangle edge), 'odd' (plain triangle, degree
    1/3, weight on triangle edges), 'one' (star center, exactly one),
    'two' (claw, exactly two).  Returns (plane graph, edge weights).
    """
    g = plane_graph_of_grid(grid)
    b = GraphBuilder(g)
    weights: Dict[int, Scalar] = {}
    next_v = max(b.rotation) + 1

    def fresh_pair():
        d = max(b.twin, default=max(b.vertex_of, default=0)) + 1
        return d, d + 1

    for nid in sorted(grid.nodes):
        node = grid.nodes[nid]
        kind = left_kind if node.side == "left" else right_kind
        w = left_weight if node.side == "left" else Fraction(1)
        rot = list(b.rotation[nid])  # external darts, ccw
        k = len(rot)
        if kind == "one":
            continue  # star center: the vertex itself forces exactly one
        if kind in ("even", "odd"):
            tri = [next_v + i for i in range(k)]
            next_v += k
            legs = []
            if kind == "even":
                legs = [next_v + i for i in range(k)]
                next_v += k
            # wire triangle cycle
            tri_darts = {}
            for i in range(k):
                d1, d2 = fresh_pair()
                b.twin[d1] = d2
                b.twin[d2] = d1
                tri_darts[(i, (i + 1) % k)] = d1
                tri_darts[((i + 1) % k, i)] = d2
                weights[min(d1, d2)] = w
            leg_darts = {}
            if kind == "even":
                for i in range(k):
                    d1, d2 = fresh_pair()
                    b.twin[d1] = d2
                    b.twin[d2] = d1
                    leg_darts[i] = (d1, d2)  # d1 at triangle vertex, d2 at leg
            del b.rotation[nid]
            for i in range(k):
                ext = rot[i]
                prev_d = tri_darts[(i, (i - 1) % k)]
                next_d = tri_darts[(i, (i + 1) % k)]
                if kind == "odd":
                    b.add_vertex(tri[i], [ext, next_d, prev_d])
                else:
                    b.add_vertex(tri[i], [leg_darts[i][0], next_d, prev_d])
                    b.add_vertex(legs[i], [ext, leg_darts[i][1]])
        elif kind == "two":
            # claw: center c adjacent to k port vertices carrying externals
            ports = [next_v + i for i in range(k)]
            c = next_v + k
            next_v += k + 1
            del b.rotation[nid]
            c_rot = []
            for i in range(k):
                d1, d2 = fresh_pair()
                b.twin[d1] = d2
                b.twin[d2] = d1
                b.add_vertex(ports[i], [rot[i], d2])
                c_rot.append(d1)
            b.add_vertex(c, c_rot)
        else:
            raise SolverError(f"unknown decoration {kind}")
    return b.freeze(), weights


def pm_fragment_signature(kind: str, w: Scalar = Fraction(1)) -> SymSignature:
    """Local matching signature of a decoration fragment: value per external
    degree pattern, by direct enumeration of internal matchings."""
    from itertools import product as iproduct
    from math import comb
    tri_edges = [(0, 1), (1, 2), (2, 0)]
    if kind == "odd":
        verts = [0, 1, 2]
        inner = tri_edges
        port = {i: i for i in range(3)}
        wmap = {e: w for e in inner}
    elif kind == "even":
        verts = [0, 1, 2, 3, 4, 5]  # triangle 0,1,2; legs 3,4,5
        inner = tri_edges + [(0, 3), (1, 4), (2, 5)]
        port = {i: 3 + i for i in range(3)}
        wmap = {e: (w if e in tri_edges else Fraction(1)) for e in inner}
    elif kind == "one":
        verts = [0]
        inner = []
        port = {i: 0 for i in range(3)}
        wmap = {}
    elif kind == "two":
        verts = [0, 1, 2, 3]  # ports 0,1,2, center 3
        inner = [(0, 3), (1, 3), (2, 3)]
        port = {i: i for i in range(3)}
        wmap = {e: Fraction(1) for e in inner}
    else:
        raise SolverError(kind)
    vals = []
    for wgt in range(4):
        out: Scalar = Fraction(0)
        for ext in iproduct((0, 1), repeat=3):
            if sum(ext) != wgt:
                continue
            used = [port[i] for i in range(3) if ext[i]]
            if len(set(used)) != len(used):
                continue  # a port matched twice: no completion
            need = [v for v in verts if v not in used]
            out = out + _match_sum(need, inner, wmap)
        # symmetric by construction: divide by the number of patterns summed
        vals.append(out / comb(3, wgt))
    return SymSignature(vals)


def _match_sum(need: List[int], edges, wmap) -> Scalar:
    if not need:
        return Fraction(1)
    v = need[0]
    rest = need[1:]
    total: Scalar = Fraction(0)
    for e in edges:
        if v in e:
            other = e[0] if e[1] == v else e[1]
            if other in rest:
                nxt = [x for x in rest if x != other]
                total = total + wmap[e] * _match_sum(nxt, edges, wmap)
    return total


def _preflight(kind: str, w: Scalar, want) -> None:
    got = pm_fragment_signature(kind, w).values
    if got != tuple(want):
        raise SolverError(f"decoration {kind} realizes {got}, wanted {want}")


def solve_matchgate(grid: SignatureGrid, a: Scalar, b: Scalar, sign: int) -> Scalar:
    """Cases [a,b,b,a] (sign +1) and [a,b,-b,-a] (sign -1): Hadamard both
    sides, then count perfect matchings of the Fisher-decorated graph."""
    if sign == 1:
        f = SymSignature([a, b, b, a])
    elif sign == -1:
        f = SymSignature([a, b, -b, -a])
    else:
        raise WrongForm("sign must be +-1")
    lefts, rights = _require_case(grid, f)
    nU, nV = len(lefts), len(rights)
    if not lefts:
        return Fraction(1)
    fh = hadamard3(f)
    quarter = Fraction(1, 4) ** nV
    _preflight("even", Fraction(1), (1, 0, 1, 0))  # transformed equalities
    if sign == 1:
        p, q = fh[0], fh[2]     # [p,0,q,0]
        if p != 0:
            _preflight("even", q / p, (1, 0, q / p, 0))
            dec, weights = _decorate(grid, "even", "even", q / p)
            return quarter * p ** nU * count_pm(dec, weights)
        if q == 0:
            return Fraction(0) if lefts else quarter
        _preflight("two", Fraction(1), (0, 0, 1, 0))
        dec, weights = _decorate(grid, "two", "even", Fraction(1))
        return quarter * q ** nU * count_pm(dec, weights)
    p, q = fh[1], fh[3]         # [0,p,0,q]
    if q != 0:
        _preflight("odd", p / q, (0, p / q, 0, 1))
        dec, weights = _decorate(grid, "odd", "even", p / q)
        return quarter * q ** nU * count_pm(dec, weights)
    if p == 0:
        return Fraction(0)
    _preflight("one", Fraction(1), (0, 1, 0, 0))
    dec, weights = _decorate(grid, "one", "even", Fraction(1))
    return quarter * p ** nU * count_pm(dec, weights)
