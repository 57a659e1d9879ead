"""Desk-scale executions of the reduction machinery.

planarize rewrites a drawn grid with listed crossings into a planar one
by splicing a cross-over table at every crossing; interpolate_recover
replaces those tables by odd chains of the interpolation gadget and
recovers the true value through an exact Vandermonde solve;
unary_absorption_transform rewrites an incidence grid over a contracted binary
signature into one over the ternary signature plus absorbers placed by a
planar 3-way edge matching; and the pinned-0 cross-over gadget is built
and checked property by property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .gadgets import absorb_g1, absorb_g2, gamma_chain
from .holant_core import (GridNode, SignatureGrid, eval_grid, eval_gadget,
                          gadget_assignment_counts)
from .p3em import ExceptionalGraph, find_p3em, triples
from .plane_graph import merge_degree2_left_map
from .scalars import Scalar, format_scalar
from .signatures import EQ3, EXACT_ONE_3, SymSignature, connect_unary


class ReductionError(ValueError):
    pass


class TripleCrossing(ReductionError):
    pass


class SingularSystem(ReductionError):
    pass


class EigenvectorInput(ReductionError):
    pass


class ZeroFactor(ReductionError):
    pass


def crossover_table() -> Tuple[Scalar, ...]:
    """Row-major table of the cross-over signature over slot order
    (in_a, in_b, out_a, out_b): 1 iff each strand keeps its value."""
    return chain_table(Fraction(1), Fraction(0))


def chain_table(on: Scalar, off: Scalar) -> Tuple[Scalar, ...]:
    """Table over slots (in_a, in_b, out_a, out_b) with value `on` where
    both strands are preserved and `off` elsewhere.  The normalized odd
    gadget chain has exactly this shape with on = x_s, off = 1 (the same
    support as the cross-over, which makes the stratification work)."""
    vals = []
    for idx in range(16):
        bits = [(idx >> (3 - i)) & 1 for i in range(4)]
        vals.append(on if (bits[0] == bits[2] and bits[1] == bits[3]) else off)
    return tuple(vals)


@dataclass
class Crossing:
    """One listed crossing between edge indices a and b of the input grid.

    orientation +1 means b's entering strand sits counterclockwise-next to
    a's entering strand at the crossing point; -1 the mirror.
    """
    edge_a: int
    edge_b: int
    pos_a: int = 0
    pos_b: int = 0
    orientation: int = 1


def planarize(grid: SignatureGrid, crossings: Sequence[Crossing]) -> SignatureGrid:
    """Replace each listed crossing by a cross-over table node.

    Each grid edge must run from its L-facing slot to its R-facing slot;
    the crossing positions order multiple crossings along one edge."""
    per_edge: Dict[int, List[Tuple[int, int, int]]] = {}
    for ci, c in enumerate(crossings):
        if c.edge_a == c.edge_b:
            raise TripleCrossing("an edge cannot cross itself at one point")
        per_edge.setdefault(c.edge_a, []).append((c.pos_a, ci, 0))
        per_edge.setdefault(c.edge_b, []).append((c.pos_b, ci, 1))
    out = grid.copy()
    out.embedding = None
    next_id = max(out.nodes) + 1 if out.nodes else 0
    cross_nodes: Dict[int, int] = {}
    # slot order of the cross node: (a_in, b_in, a_out, b_out); value 1 iff
    # a_in == a_out and b_in == b_out; both orientations share this table
    # because opposite slots pair up either way
    table = crossover_table()
    for ci in range(len(crossings)):
        nid = next_id
        next_id += 1
        cross_nodes[ci] = nid
        out.nodes[nid] = GridNode(nid, "table", ("R", "R", "L", "L"), table=table)
    # rewire each crossed edge as a chain: L-end -> c1 -> c2 ... -> R-end
    new_edges = []
    handled = set()
    for idx, (na, sa, nb, sb) in enumerate(grid.edges):
        if idx not in per_edge:
            new_edges.append((na, sa, nb, sb))
            continue
        handled.add(idx)
        if grid.nodes[na].slots[sa] == "L":
            lend, rend = (na, sa), (nb, sb)
        else:
            lend, rend = (nb, sb), (na, sa)
        chain = sorted(per_edge[idx])
        cur = lend
        for (_pos, ci, role) in chain:
            nid = cross_nodes[ci]
            in_slot = 0 if role == 0 else 1
            out_slot = 2 if role == 0 else 3
            # entering slot faces R (receives the L-side strand)
            new_edges.append((cur[0], cur[1], nid, in_slot))
            cur = (nid, out_slot)
        new_edges.append((cur[0], cur[1], rend[0], rend[1]))
    out.edges = new_edges
    return SignatureGrid(out.nodes, out.edges, out.dangling)


@dataclass
class InterpolationRun:
    nodes_x: List[Scalar]
    oracle_values: List[Scalar]
    coefficients: List[Scalar]
    recovered: Scalar

    def to_json_dict(self) -> dict:
        return {
            "vandermonde_nodes": [format_scalar(x) for x in self.nodes_x],
            "oracle_values": [format_scalar(v) for v in self.oracle_values],
            "coefficients": [format_scalar(c) for c in self.coefficients],
            "recovered": format_scalar(self.recovered),
        }


def _solve_vandermonde(xs: List[Scalar], ys: List[Scalar]) -> List[Scalar]:
    """Exact solve of sum_i c_i x^i = y for each (x, y); nodes distinct."""
    n = len(xs)
    if len(set(xs)) != n:
        raise SingularSystem("repeated interpolation nodes")
    mat = [[xs[r] ** i for i in range(n)] + [ys[r]] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("Vandermonde solve hit a zero pivot")
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[r][n] for r in range(n)]


def interpolate_recover(grid: SignatureGrid, cross_ids: Sequence[int],
                        f: SymSignature, oracle=eval_grid) -> InterpolationRun:
    """Recover the Holant value of a grid containing cross-over tables by
    evaluating it with odd gadget chains in their place and solving the
    resulting Vandermonde system exactly."""
    n = len(cross_ids)
    xs: List[Scalar] = []
    vals: List[Scalar] = []
    for s in range(n + 1):
        _, x_s = gamma_chain(f, s)
        xs.append(x_s)
        sub = grid.copy()
        table = chain_table(x_s, Fraction(1))
        for nid in cross_ids:
            node = sub.nodes[nid]
            sub.nodes[nid] = GridNode(nid, "table", node.slots, table=table)
        vals.append(oracle(sub))
    coeffs = _solve_vandermonde(xs, vals)
    return InterpolationRun(xs, vals, coeffs, coeffs[n])


@dataclass
class SpanCertificate:
    basis: List[List[Scalar]]        # [s, s M]
    eigen_rows: List[List[Scalar]]   # row eigenvectors [1,-y], [1,x]
    target: Optional[List[Scalar]] = None
    combo: Optional[Tuple[Scalar, Scalar]] = None


def _row_eigenvector(M, lam: Scalar) -> List[Scalar]:
    a00, a01 = M.m[0]
    a10, a11 = M.m[1]
    v = [a10, lam - a00]
    if v[0] == 0 and v[1] == 0:
        v = [lam - a11, a01]
    if v[0] == 0 and v[1] == 0:
        raise ReductionError("scalar matrix has no eigen-direction")
    return v


def unary_span_certificate(M, s: Sequence[Scalar],
                       target: Optional[Sequence[Scalar]] = None) -> SpanCertificate:
    """Certificate that {s M^j} spans the unary space: requires M
    non-singular with distinct eigenvalues and s off the row eigenvectors;
    optionally expresses a target unary as c0 s + c1 s M."""
    from .scalars import sqrt_exact, as_fraction
    if M.det() == 0:
        raise ReductionError("singular matrix")
    t, d = M.trace(), M.det()
    disc = t * t - 4 * d
    if disc == 0:
        raise ReductionError("repeated eigenvalues")
    delta = sqrt_exact(as_fraction(disc))
    lam, mu = (t - delta) / 2, (t + delta) / 2
    rows = [_row_eigenvector(M, lam), _row_eigenvector(M, mu)]
    s = list(s)
    for r in rows:
        if s[0] * r[1] == s[1] * r[0]:
            raise EigenvectorInput(f"start vector proportional to {r}")
    sM = M.row_apply(s)
    cert = SpanCertificate([s, sM], rows)
    if target is not None:
        det = s[0] * sM[1] - s[1] * sM[0]
        if det == 0:
            raise EigenvectorInput("basis degenerate")
        t0, t1 = target
        c0 = (t0 * sM[1] - t1 * sM[0]) / det
        c1 = (s[0] * t1 - s[1] * t0) / det
        cert.target = [t0, t1]
        cert.combo = (c0, c1)
    return cert


def degenerate_straddled_table(x: Scalar, y: Scalar) -> Tuple[Scalar, ...]:
    """Table of D = [y,1]^T (x) [1,x] over slots (left-facing, right-facing)."""
    return (y * 1, y * x, Fraction(1), x)


def unary_absorption_transform(grid: SignatureGrid, f: SymSignature, x: Scalar,
                     y: Scalar) -> Tuple[SignatureGrid, Scalar]:
    """Rewrite an incidence grid over [1+ax, a+bx, b+cx] into one over f
    with explicit degenerate-straddled tables, absorbing the leftover
    unary ends three at a time inside matching faces.

    Returns the new grid and the exact factor by which its value exceeds
    the input's.
    """
    fb = connect_unary(f, SymSignature([1, x]))
    lefts = grid.left_nodes()
    for n in lefts:
        if n.sym is None or n.arity != 2 or n.sym.values != fb.values:
            raise ReductionError("left nodes must carry the contracted binary")
    for n in grid.right_nodes():
        if not n.is_equality() or n.arity != 3:
            raise ReductionError("right nodes must be ternary equalities")
    g, edge_map = merge_degree2_left_map(grid)
    left_of_edge = {e: lid for lid, e in edge_map.items()}
    match = find_p3em(g)
    if isinstance(match, ExceptionalGraph):
        raise ExceptionalGraphError(match)
    grp = triples(g, match)
    g1 = absorb_g1(y)
    g2 = absorb_g2(f, y)
    if g1 != 0:
        absorber, factor1 = "g1", g1
    elif g2 != 0:
        absorber, factor1 = "g2", g2
    else:
        raise ZeroFactor("both absorber factors vanish")
    out = grid.copy()
    out.embedding = None
    next_id = max(out.nodes) + 1
    dtab = degenerate_straddled_table(x, y)
    d_left_slot: Dict[int, Tuple[int, int]] = {}
    # replace every binary left node by a ternary f node tied to a
    # degenerate table, leaving its [y,1] end open
    for n in lefts:
        fid = n.id
        out.nodes[fid] = GridNode(fid, "left", ("L", "L", "L"), sym=f)
        did = next_id
        next_id += 1
        out.nodes[did] = GridNode(did, "table", ("L", "R"), table=dtab)
        out.edges.append((fid, 2, did, 1))
        d_left_slot[edge_map[fid]] = (did, 0)
    for t in grp:
        ends = [d_left_slot[e] for e in t["edges"]]
        if absorber == "g1":
            cid = next_id
            next_id += 1
            out.nodes[cid] = GridNode(cid, "right", ("R", "R", "R"), sym=EQ3)
            for slot, end in enumerate(ends):
                out.edges.append((end[0], end[1], cid, slot))
        else:
            ca = next_id
            sq = next_id + 1
            cb = next_id + 2
            next_id += 3
            out.nodes[ca] = GridNode(ca, "right", ("R", "R", "R"), sym=EQ3)
            out.nodes[sq] = GridNode(sq, "left", ("L", "L", "L"), sym=f)
            out.nodes[cb] = GridNode(cb, "right", ("R", "R", "R"), sym=EQ3)
            out.edges.append((ends[0][0], ends[0][1], ca, 0))
            out.edges.append((ends[1][0], ends[1][1], ca, 1))
            out.edges.append((sq, 0, ca, 2))
            out.edges.append((sq, 1, cb, 0))
            out.edges.append((sq, 2, cb, 1))
            out.edges.append((ends[2][0], ends[2][1], cb, 2))
    factor = factor1 ** len(grp)
    return SignatureGrid(out.nodes, out.edges, out.dangling), factor


class ExceptionalGraphError(ReductionError):
    def __init__(self, exc: ExceptionalGraph):
        super().__init__(f"underlying graph has exceptional components: {exc.kinds}")
        self.exceptional = exc


# -- the pinned-0 cross-over gadget ---------------------------------------

def build_gadget_P() -> SignatureGrid:
    """The 18-vertex pinned-0 cross-over gadget with exact-one on squares
    and =3 on circles; dangling order (red_left, blue_left, red_right,
    blue_right)."""
    b_nodes: Dict[int, GridNode] = {}
    edges: List[Tuple[int, int, int, int]] = []

    def circle(nid):
        b_nodes[nid] = GridNode(nid, "right", ("R", "R", "R"), sym=EQ3)

    def square(nid):
        b_nodes[nid] = GridNode(nid, "left", ("L", "L", "L"), sym=EXACT_ONE_3)

    # circles 0..8, squares 10..18 laid out as in the drawing
    for i in range(9):
        circle(i)
    for i in range(10, 19):
        square(i)
    slot_use: Dict[int, int] = {}

    def wire(a, bnode):
        sa = slot_use.get(a, 0)
        sb = slot_use.get(bnode, 0)
        slot_use[a] = sa + 1
        slot_use[bnode] = sb + 1
        if b_nodes[a].side == "left":
            edges.append((a, sa, bnode, sb))
        else:
            edges.append((bnode, sb, a, sa))

    # chains and doubled pairs, following the drawing layout
    wire(0, 13)   # c1 - s4 (long bottom run)
    wire(13, 6)   # s4 - c7
    wire(0, 10)   # c1 - s1
    wire(10, 1)   # s1 - c2
    wire(11, 2)   # s2 - c3
    wire(12, 2)   # s3 - c3
    wire(2, 14)   # c3 - s5
    wire(4, 15)   # c5 - s6
    wire(10, 5)   # s1 - c6
    wire(13, 5)   # s4 - c6
    wire(5, 15)   # c6 - s6
    wire(16, 7)   # s7 - c8
    wire(7, 17)   # c8 - s8
    wire(7, 18)   # c8 - s9
    wire(17, 8)   # s8 - c9
    wire(1, 11)   # c2 - s2 (doubled)
    wire(1, 11)
    wire(14, 4)   # s5 - c5 (doubled)
    wire(14, 4)
    wire(6, 16)   # c7 - s7 (doubled)
    wire(6, 16)
    wire(18, 8)   # s9 - c9 (doubled)
    wire(18, 8)
    wire(12, 3)   # s3 - c4 (doubled)
    wire(12, 3)
    dangling = [(0, slot_use.setdefault(0, 0)),      # red left at c1
                (3, slot_use[3]),                     # blue left at c4
                (15, slot_use[15]),                   # red right at s6
                (17, slot_use[17])]                   # blue right at s8
    for nid, _ in dangling:
        slot_use[nid] += 1
    for nid, n in b_nodes.items():
        if slot_use.get(nid, 0) != 3:
            raise ReductionError(f"node {nid} has degree {slot_use.get(nid)}")
    return SignatureGrid(b_nodes, edges, [(n, s) for n, s in dangling])


@dataclass
class GadgetPReport:
    table: List[Scalar]
    counts: List[int]
    support_ok: bool
    uniqueness_ok: bool

    def passed(self) -> bool:
        return self.support_ok and self.uniqueness_ok


def verify_P(grid: Optional[SignatureGrid] = None) -> GadgetPReport:
    """Exhaustively check the pinned-0 cross-over properties: value nonzero
    exactly when both blue ends are 0 and the red ends agree, with a unique
    internal assignment in each surviving case."""
    if grid is None:
        grid = build_gadget_P()
    table = eval_gadget(grid)
    counts = gadget_assignment_counts(grid)
    support_ok = True
    uniqueness_ok = True
    for idx in range(16):
        red_l = (idx >> 3) & 1
        blue_l = (idx >> 2) & 1
        red_r = (idx >> 1) & 1
        blue_r = idx & 1
        expect = int(blue_l == 0 and blue_r == 0 and red_l == red_r)
        if (table[idx] != 0) != bool(expect):
            support_ok = False
        if expect and counts[idx] != 1:
            uniqueness_ok = False
        if expect and table[idx] != 1:
            support_ok = False
    return GadgetPReport(table, counts, support_ok, uniqueness_ok)
