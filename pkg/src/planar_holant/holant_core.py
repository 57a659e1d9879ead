"""Signature grids and exact brute-force Holant evaluation.

A grid is a bipartite network: every internal edge joins an L-facing slot
to an R-facing slot.  Nodes carry either a symmetric signature or an
explicit row-major table; table nodes may mix slot sides (straddled
signatures, cross-over).  Raw evaluation sums over all 2^|E_in|
assignments and is capped by HOLANT_MAX_EDGES; the collapsed path
exploits right-hand equalities and scales to one boolean per right node.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .scalars import Scalar, format_scalar, parse_scalar
from .signatures import SymSignature


DEFAULT_MAX_EDGES = 24


class GridError(ValueError):
    pass


class DanglingPresent(GridError):
    pass


class TooManyEdges(GridError):
    pass


def max_edges_cap() -> int:
    return int(os.environ.get("HOLANT_MAX_EDGES", DEFAULT_MAX_EDGES))


@dataclass
class GridNode:
    id: int
    side: str                      # "left" | "right" | "table"
    slots: Tuple[str, ...]         # per-slot facing, "L" or "R"
    sym: Optional[SymSignature] = None
    table: Optional[Tuple[Scalar, ...]] = None

    def __post_init__(self):
        if self.sym is None and self.table is None:
            raise GridError(f"node {self.id} has no signature")
        if self.table is not None:
            self.table = tuple(Fraction(v) if isinstance(v, int) else v
                               for v in self.table)
            if len(self.table) != 1 << self.arity:
                raise GridError(f"node {self.id}: table size mismatch")

    @property
    def arity(self) -> int:
        return len(self.slots)

    def value(self, bits: Sequence[int]) -> Scalar:
        if self.sym is not None:
            return self.sym[sum(bits)]
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return self.table[idx]

    def is_equality(self) -> bool:
        if self.sym is not None:
            return (self.sym[0] == 1 and self.sym[self.arity] == 1
                    and all(self.sym[k] == 0 for k in range(1, self.arity)))
        return False


@dataclass
class SignatureGrid:
    nodes: Dict[int, GridNode]
    edges: List[Tuple[int, int, int, int]]          # (nodeA, slotA, nodeB, slotB)
    dangling: List[Tuple[int, int]] = field(default_factory=list)  # (node, slot)
    embedding: Optional[Dict[int, Tuple[int, ...]]] = None  # node -> ccw slot order

    def __post_init__(self):
        used = set()
        for (na, sa, nb, sb) in self.edges:
            fa = self.nodes[na].slots[sa]
            fb = self.nodes[nb].slots[sb]
            if {fa, fb} != {"L", "R"}:
                raise GridError(f"edge {(na, sa, nb, sb)} is not L-R bipartite")
            for key in ((na, sa), (nb, sb)):
                if key in used:
                    raise GridError(f"slot {key} used twice")
                used.add(key)
        for key in self.dangling:
            if key in used:
                raise GridError(f"slot {key} both internal and dangling")
            used.add(key)
        want = {(n, s) for n, node in self.nodes.items() for s in range(node.arity)}
        if used != want:
            raise GridError("every slot must be used exactly once")

    # -- construction helpers -----------------------------------------

    @staticmethod
    def empty() -> "SignatureGrid":
        return SignatureGrid({}, [])

    def copy(self) -> "SignatureGrid":
        return SignatureGrid(
            {i: GridNode(n.id, n.side, n.slots, n.sym, n.table)
             for i, n in self.nodes.items()},
            list(self.edges), list(self.dangling),
            None if self.embedding is None else dict(self.embedding))

    def left_nodes(self) -> List[GridNode]:
        return [n for n in self.nodes.values() if n.side == "left"]

    def right_nodes(self) -> List[GridNode]:
        return [n for n in self.nodes.values() if n.side == "right"]

    # -- JSON ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        nodes = []
        for i in sorted(self.nodes):
            n = self.nodes[i]
            rec = {"id": n.id, "side": n.side,
                   "slots": [{"side": s} for s in n.slots]}
            if n.sym is not None:
                rec["symmetric"] = n.sym.to_json()
            else:
                rec["table"] = [format_scalar(v) for v in n.table]
            nodes.append(rec)
        out = {"nodes": nodes,
               "edges": [list(e) for e in self.edges],
               "dangling": [list(d) for d in self.dangling]}
        if self.embedding is not None:
            out["embedding"] = {str(v): list(o) for v, o in self.embedding.items()}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(spec: dict) -> "SignatureGrid":
        nodes = {}
        for rec in spec["nodes"]:
            slots = tuple(s["side"] for s in rec["slots"])
            sym = table = None
            if "symmetric" in rec:
                sym = SymSignature.from_json(rec["symmetric"])
            else:
                table = tuple(parse_scalar(v) for v in rec["table"])
            nodes[int(rec["id"])] = GridNode(int(rec["id"]), rec["side"], slots,
                                             sym, table)
        emb = None
        if "embedding" in spec:
            emb = {int(v): tuple(o) for v, o in spec["embedding"].items()}
        return SignatureGrid(nodes,
                             [tuple(e) for e in spec["edges"]],
                             [tuple(d) for d in spec.get("dangling", [])],
                             emb)

    @staticmethod
    def from_json(text: str) -> "SignatureGrid":
        return SignatureGrid.from_json_dict(json.loads(text))


def _slot_feed(grid: SignatureGrid):
    """Map (node, slot) -> edge index, and list of dangling keys."""
    feed = {}
    for idx, (na, sa, nb, sb) in enumerate(grid.edges):
        feed[(na, sa)] = idx
        feed[(nb, sb)] = idx
    return feed


def eval_grid(grid: SignatureGrid) -> Scalar:
    """Exact Holant value: sum over {0,1}^E of products of node values.

    Right-hand equality nodes collapse to one boolean each (their edges all
    copy it), so only edges between non-equality nodes stay free."""
    if grid.dangling:
        raise DanglingPresent("grid has dangling slots")
    eq_nodes = [n.id for n in grid.nodes.values()
                if n.side == "right" and n.is_equality()]
    eq_set = set(eq_nodes)
    free_edges = []
    forced: Dict[int, int] = {}   # edge index -> equality node id
    for idx, (na, sa, nb, sb) in enumerate(grid.edges):
        if na in eq_set:
            forced[idx] = na
        elif nb in eq_set:
            forced[idx] = nb
        else:
            free_edges.append(idx)
    nbits = len(eq_nodes) + len(free_edges)
    if nbits > max_edges_cap():
        raise TooManyEdges(f"{nbits} free variables exceeds cap {max_edges_cap()}")
    feed = _slot_feed(grid)
    others = [n for n in grid.nodes.values() if n.id not in eq_set]
    total: Scalar = Fraction(0)
    for bits in product((0, 1), repeat=nbits):
        y = dict(zip(eq_nodes, bits))
        ebits = dict(zip(free_edges, bits[len(eq_nodes):]))
        term: Scalar = Fraction(1)
        for n in others:
            vals = []
            for s in range(n.arity):
                idx = feed[(n.id, s)]
                vals.append(y[forced[idx]] if idx in forced else ebits[idx])
            term = term * n.value(vals)
            if term == 0:
                break
        total = total + term
    return total


def _eval_raw(grid: SignatureGrid, pinned: Dict[int, int]) -> Scalar:
    m = len(grid.edges)
    free = [i for i in range(m) if i not in pinned]
    if len(free) > max_edges_cap():
        raise TooManyEdges(f"{len(free)} free edges exceeds cap {max_edges_cap()}")
    feed = _slot_feed(grid)
    total: Scalar = Fraction(0)
    assign = dict(pinned)
    for bits in product((0, 1), repeat=len(free)):
        for i, b in zip(free, bits):
            assign[i] = b
        term: Scalar = Fraction(1)
        for n in grid.nodes.values():
            vals = [assign[feed[(n.id, s)]] for s in range(n.arity)]
            term = term * n.value(vals)
            if term == 0:
                break
        total = total + term
    return total


def _all_right_equalities(grid: SignatureGrid) -> bool:
    rights = grid.right_nodes()
    if not rights:
        return False
    others = [n for n in grid.nodes.values() if n.side != "right"]
    if any(n.side == "table" for n in others):
        return False
    return all(n.is_equality() for n in rights)


def eval_collapsed(grid: SignatureGrid) -> Scalar:
    """Holant when every right node is an equality: one boolean per right
    node determines all edges; sum over 2^{#right} states."""
    rights = grid.right_nodes()
    if not _all_right_equalities(grid):
        raise GridError("collapsed evaluation needs all right nodes = equality")
    if grid.dangling:
        raise DanglingPresent("grid has dangling slots")
    if len(rights) > max_edges_cap():
        raise TooManyEdges(f"{len(rights)} right nodes exceeds cap")
    # each edge's value = the boolean of its right endpoint
    right_of_edge = {}
    for idx, (na, sa, nb, sb) in enumerate(grid.edges):
        rn = na if grid.nodes[na].side == "right" else nb
        if grid.nodes[rn].side != "right":
            raise GridError("edge with no right endpoint")
        right_of_edge[idx] = rn
    feed = _slot_feed(grid)
    lefts = grid.left_nodes()
    rids = [n.id for n in rights]
    total: Scalar = Fraction(0)
    for bits in product((0, 1), repeat=len(rids)):
        y = dict(zip(rids, bits))
        term: Scalar = Fraction(1)
        for n in lefts:
            vals = [y[right_of_edge[feed[(n.id, s)]]] for s in range(n.arity)]
            term = term * n.value(vals)
            if term == 0:
                break
        total = total + term
    return total


def eval_gadget(grid: SignatureGrid) -> List[Scalar]:
    """Signature table of a gadget: one value per assignment of the dangling
    slots, row-major in the order of grid.dangling."""
    if not grid.dangling:
        raise GridError("eval_gadget expects dangling slots")
    k = len(grid.dangling)
    rights = grid.right_nodes()
    collapsible = (_all_right_equalities_gadget(grid)
                   and len(rights) <= max_edges_cap())
    out = []
    for ext in product((0, 1), repeat=k):
        pin = dict(zip(grid.dangling, ext))
        if collapsible:
            out.append(_gadget_term_collapsed(grid, pin))
        else:
            out.append(_gadget_term_raw(grid, pin))
    return out


def _all_right_equalities_gadget(grid: SignatureGrid) -> bool:
    rights = grid.right_nodes()
    others = [n for n in grid.nodes.values() if n.side != "right"]
    return (bool(rights) and all(n.is_equality() for n in rights)
            and all(n.side == "left" for n in others))


def _gadget_term_raw(grid: SignatureGrid, pin: Dict[Tuple[int, int], int]) -> Scalar:
    m = len(grid.edges)
    if m > max_edges_cap():
        raise TooManyEdges(f"{m} internal edges exceeds cap")
    feed = _slot_feed(grid)
    total: Scalar = Fraction(0)
    for bits in product((0, 1), repeat=m):
        term: Scalar = Fraction(1)
        for n in grid.nodes.values():
            vals = []
            for s in range(n.arity):
                if (n.id, s) in pin:
                    vals.append(pin[(n.id, s)])
                else:
                    vals.append(bits[feed[(n.id, s)]])
            term = term * n.value(vals)
            if term == 0:
                break
        total = total + term
    return total


def _gadget_term_collapsed(grid: SignatureGrid, pin) -> Scalar:
    """Gadget term when all internal right nodes are equalities: enumerate
    one boolean per right node; dangling slots of right nodes must agree."""
    feed = _slot_feed(grid)
    rights = grid.right_nodes()
    lefts = grid.left_nodes()
    right_of_edge = {}
    for idx, (na, sa, nb, sb) in enumerate(grid.edges):
        rn = na if grid.nodes[na].side == "right" else nb
        right_of_edge[idx] = rn
    total: Scalar = Fraction(0)
    rids = [n.id for n in rights]
    for bits in product((0, 1), repeat=len(rids)):
        y = dict(zip(rids, bits))
        ok = True
        for (nid, slot), b in pin.items():
            if grid.nodes[nid].side == "right" and y[nid] != b:
                ok = False
                break
        if not ok:
            continue
        term: Scalar = Fraction(1)
        for n in lefts:
            vals = []
            for s in range(n.arity):
                if (n.id, s) in pin:
                    vals.append(pin[(n.id, s)])
                else:
                    vals.append(y[right_of_edge[feed[(n.id, s)]]])
            term = term * n.value(vals)
            if term == 0:
                break
        total = total + term
    return total


def gadget_assignment_counts(grid: SignatureGrid) -> List[int]:
    """Number of internal assignments with a nonzero product, per external
    assignment (same order as eval_gadget).  Exhaustive; when all right
    nodes are equalities the internal assignments are in bijection with
    right-node states, which keeps large gadgets tractable."""
    k = len(grid.dangling)
    feed = _slot_feed(grid)
    collapsible = _all_right_equalities_gadget(grid)
    counts = []
    if collapsible:
        rights = grid.right_nodes()
        lefts = grid.left_nodes()
        right_of_edge = {}
        for idx, (na, sa, nb, sb) in enumerate(grid.edges):
            rn = na if grid.nodes[na].side == "right" else nb
            right_of_edge[idx] = rn
        rids = [n.id for n in rights]
        for ext in product((0, 1), repeat=k):
            pin = dict(zip(grid.dangling, ext))
            c = 0
            for bits in product((0, 1), repeat=len(rids)):
                y = dict(zip(rids, bits))
                if any(grid.nodes[nid].side == "right" and y[nid] != b
                       for (nid, slot), b in pin.items()):
                    continue
                term: Scalar = Fraction(1)
                for n in lefts:
                    vals = [pin[(n.id, s)] if (n.id, s) in pin
                            else y[right_of_edge[feed[(n.id, s)]]]
                            for s in range(n.arity)]
                    term = term * n.value(vals)
                    if term == 0:
                        break
                if term != 0:
                    c += 1
            counts.append(c)
        return counts
    m = len(grid.edges)
    if m > max_edges_cap():
        raise TooManyEdges(f"{m} internal edges exceeds cap")
    for ext in product((0, 1), repeat=k):
        pin = dict(zip(grid.dangling, ext))
        c = 0
        for bits in product((0, 1), repeat=m):
            term: Scalar = Fraction(1)
            for n in grid.nodes.values():
                vals = []
                for s in range(n.arity):
                    if (n.id, s) in pin:
                        vals.append(pin[(n.id, s)])
                    else:
                        vals.append(bits[feed[(n.id, s)]])
                term = term * n.value(vals)
                if term == 0:
                    break
            if term != 0:
                c += 1
        counts.append(c)
    return counts
