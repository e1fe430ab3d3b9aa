"""SR graphs: cycles, their parity and stoichiometry, and Condition (*).

Vertices are ``Vertex(side, index)`` with ``side`` 0 for species (S-vertices)
and 1 for reactions (R-vertices), so S-vertices sort before R-vertices.
Cycles are stored in canonical form: they start at their smallest vertex
(always an S-vertex) and run in the direction whose second vertex is smaller.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .matrix import StoichMatrix

S_SIDE = 0
R_SIDE = 1


class CycleEnumerationTruncated(RuntimeError):
    """Raised when an analysis needs every cycle but enumeration was cut short."""


class Vertex(NamedTuple):
    side: int
    index: int

    @property
    def is_s(self) -> bool:
        return self.side == S_SIDE


def s_vertex(i: int) -> Vertex:
    return Vertex(S_SIDE, i)


def r_vertex(j: int) -> Vertex:
    return Vertex(R_SIDE, j)


@dataclass(frozen=True, order=True)
class Edge:
    """Edge between S-vertex ``s`` and R-vertex ``r`` for a nonzero entry S[s][r]."""

    s: int
    r: int
    sign: int = field(compare=False)
    value: Fraction = field(compare=False)

    @property
    def key(self) -> tuple[int, int]:
        return (self.s, self.r)

    @property
    def vertices(self) -> tuple[Vertex, Vertex]:
        return (s_vertex(self.s), r_vertex(self.r))

    @classmethod
    def from_matrix(cls, S: StoichMatrix, i: int, j: int) -> "Edge":
        x = S.rows[i][j]
        if not x:
            raise ValueError(f"no edge: entry ({i}, {j}) is zero")
        return cls(i, j, 1 if x > 0 else -1, abs(x))


def vertex_label(S: StoichMatrix, v: Vertex) -> str:
    return S.row_label(v.index) if v.is_s else S.col_label(v.index)


def edge_label(S: StoichMatrix, e: Edge) -> str:
    return f"{S.row_label(e.s)}-{S.col_label(e.r)}"


# --- subgraph quantities --------------------------------------------------

def subgraph_sign(edges: Iterable[Edge]) -> int:
    """Product of the edge signs."""
    sign = None
    for e in edges:
        sign = e.sign if sign is None else sign * e.sign
    if sign is None:
        raise ValueError("sign of an empty edge set is undefined")
    return sign


def parity(edges: Iterable[Edge]) -> int:
    """(-1)^(|E|/2) * sign(E); +1 marks an e-cycle and -1 an o-cycle."""
    edges = list(edges.edges if isinstance(edges, Cycle) else edges)
    if len(edges) % 2:
        raise ValueError(f"parity needs an even number of edges, got {len(edges)}")
    return (-1) ** (len(edges) // 2) * subgraph_sign(edges)


def value(edges: Iterable[Edge]) -> Fraction:
    prod = Fraction(1)
    for e in edges:
        prod *= e.value
    return prod


def _check_closed_walk(edges: Sequence[Edge]) -> None:
    if len(edges) < 4 or len(edges) % 2:
        raise ValueError(f"a cycle needs an even number (>= 4) of edges, got {len(edges)}")
    for a, b in zip(edges, edges[1:] + edges[:1]):
        if a.s != b.s and a.r != b.r:
            raise ValueError(f"edges {a.key} and {b.key} are not adjacent")


def _alternating_stoich(edges: Sequence[Edge]) -> Fraction:
    return abs(value(edges[0::2]) - value(edges[1::2]))


def cycle_stoich(cycle: "Cycle | Sequence[Edge]") -> Fraction:
    """|val(e1 e3 ...) - val(e2 e4 ...)| over a cyclically ordered edge list.

    The result does not depend on where the traversal starts or which way it
    runs; both directions are computed and compared.
    """
    edges = list(cycle.edges if isinstance(cycle, Cycle) else cycle)
    _check_closed_walk(edges)
    fwd = _alternating_stoich(edges)
    back = _alternating_stoich(edges[::-1][1:] + edges[::-1][:1])
    assert fwd == back, "stoich depends on traversal direction"
    return fwd


# --- cycles ---------------------------------------------------------------

def _canonical(vertices: Sequence[Vertex]) -> tuple[Vertex, ...]:
    k = min(range(len(vertices)), key=vertices.__getitem__)
    rot = tuple(vertices[k:]) + tuple(vertices[:k])
    if rot[-1] < rot[1]:
        rot = rot[:1] + rot[1:][::-1]
    return rot


@dataclass(frozen=True)
class Cycle:
    """A simple cycle of an SR graph with its sign, parity and stoich value.

    ``edges[k]`` joins ``vertices[k]`` and ``vertices[k + 1]`` (cyclically).
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = field(compare=False)
    sign: int = field(compare=False)
    parity: int = field(compare=False)
    stoich: Fraction = field(compare=False)

    @classmethod
    def from_vertices(cls, S: StoichMatrix, vertices: Sequence[Vertex]) -> "Cycle":
        verts = _canonical([Vertex(*v) for v in vertices])
        L = len(verts)
        if L < 4 or L % 2:
            raise ValueError(f"cycle must have an even number (>= 4) of vertices, got {L}")
        if len(set(verts)) != L:
            raise ValueError("cycle repeats a vertex")
        edges = []
        for a, b in zip(verts, verts[1:] + verts[:1]):
            if a.side == b.side:
                raise ValueError("cycle vertices must alternate between S and R")
            s, r = (a, b) if a.is_s else (b, a)
            edges.append(Edge.from_matrix(S, s.index, r.index))
        edges = tuple(edges)
        sign = subgraph_sign(edges)
        return cls(verts, edges, sign, (-1) ** (L // 2) * sign, cycle_stoich(edges))

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_e_cycle(self) -> bool:
        return self.parity == 1

    @property
    def is_o_cycle(self) -> bool:
        return self.parity == -1

    @property
    def is_s_cycle(self) -> bool:
        return self.stoich == 0

    @property
    def edge_keys(self) -> frozenset[tuple[int, int]]:
        return frozenset(e.key for e in self.edges)

    def labels(self, S: StoichMatrix) -> list[str]:
        return [vertex_label(S, v) for v in self.vertices]

    def describe(self, S: StoichMatrix) -> str:
        return "-".join(self.labels(S))


def disconnecting_partition(cycle: Cycle) -> tuple[tuple[Edge, ...], tuple[Edge, ...]]:
    """Split a cycle into its two alternating halves.

    Each half is a matching (no two of its edges share a vertex) and the halves
    have equal size.
    """
    edges = cycle.edges if isinstance(cycle, Cycle) else tuple(cycle)
    _check_closed_walk(list(edges))
    return edges[0::2], edges[1::2]


class CycleList(list):
    """A list of cycles that also records whether enumeration was truncated."""

    def __init__(self, cycles: Iterable[Cycle] = (), truncated: bool = False):
        super().__init__(cycles)
        self.truncated = truncated


# --- the graph ------------------------------------------------------------

@dataclass(frozen=True)
class SRGraph:
    matrix: StoichMatrix
    edges: tuple[Edge, ...]
    adjacency: dict = field(repr=False, compare=False)
    _edge_index: dict = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def s_vertices(self) -> tuple[Vertex, ...]:
        return tuple(s_vertex(i) for i in range(self.n))

    @property
    def r_vertices(self) -> tuple[Vertex, ...]:
        return tuple(r_vertex(j) for j in range(self.m))

    def edge(self, i: int, j: int) -> Edge | None:
        return self._edge_index.get((i, j))

    def label(self, v: Vertex) -> str:
        return vertex_label(self.matrix, v)


def build_sr_graph(S: StoichMatrix) -> SRGraph:
    """One edge per nonzero entry, carrying the entry's sign and absolute value."""
    edges = tuple(Edge.from_matrix(S, i, j)
                  for i in range(S.n) for j in range(S.m) if S.rows[i][j])
    adj: dict[Vertex, list[Vertex]] = {v: [] for v in
                                       [s_vertex(i) for i in range(S.n)] + [r_vertex(j) for j in range(S.m)]}
    for e in edges:
        sv, rv = e.vertices
        adj[sv].append(rv)
        adj[rv].append(sv)
    adjacency = {v: tuple(sorted(ns)) for v, ns in adj.items()}
    return SRGraph(S, edges, adjacency, {e.key: e for e in edges})


def enumerate_cycles(G: SRGraph, max_len: int | None = None) -> CycleList:
    """Every simple cycle of ``G`` exactly once, sorted by canonical vertex sequence.

    With ``max_len`` (counted in edges) only cycles up to that length are
    searched; ``truncated`` is set on the result when some longer walk was cut
    off, so the list may be incomplete.
    """
    adj = G.adjacency
    found: list[tuple[Vertex, ...]] = []
    truncated = False
    path: list[Vertex] = []
    on_path: set[Vertex] = set()

    def dfs(v: Vertex, start: Vertex):
        nonlocal truncated
        for w in adj[v]:
            if w == start:
                if len(path) >= 4 and path[1] < path[-1]:
                    found.append(tuple(path))
            elif w > start and w not in on_path:
                if max_len is not None and len(path) >= max_len:
                    truncated = True
                    continue
                path.append(w)
                on_path.add(w)
                dfs(w, start)
                path.pop()
                on_path.discard(w)

    for start in G.s_vertices:
        path[:] = [start]
        on_path = {start}
        dfs(start, start)

    found.sort()
    return CycleList((Cycle.from_vertices(G.matrix, vs) for vs in found), truncated)


# --- cycle intersections ----------------------------------------------------

class PathKind(enum.Enum):
    S_TO_R = "StoR"
    S_TO_S = "StoS"
    R_TO_R = "RtoR"


@dataclass(frozen=True)
class PathComponent:
    edges: tuple[Edge, ...]
    endpoints: tuple[Vertex, Vertex]
    kind: PathKind

    @property
    def length(self) -> int:
        return len(self.edges)


def _path_kind(a: Vertex, b: Vertex) -> PathKind:
    if a.side != b.side:
        return PathKind.S_TO_R
    return PathKind.S_TO_S if a.is_s else PathKind.R_TO_R


def intersection_components(c1: Cycle, c2: Cycle) -> list[PathComponent]:
    """Connected components of the edges shared by two distinct cycles.

    Cycles that meet only in vertices have no components. Each component is a
    path, returned from its smaller endpoint; components are ordered by their
    first edge.
    """
    if c1.edge_keys == c2.edge_keys:
        raise ValueError("intersection of a cycle with itself")
    shared = [e for e in c1.edges if e.key in c2.edge_keys]
    adj: dict[Vertex, list[Edge]] = {}
    for e in shared:
        for v in e.vertices:
            adj.setdefault(v, []).append(e)
    ends = sorted(v for v, es in adj.items() if len(es) == 1)
    seen: set[tuple[int, int]] = set()
    comps = []
    for start in ends:
        if adj[start][0].key in seen:
            continue
        walk, v, prev = [], start, None
        while True:
            nxt = [e for e in adj[v] if e is not prev]
            if not nxt:
                break
            e = nxt[0]
            walk.append(e)
            seen.add(e.key)
            a, b = e.vertices
            v = b if v == a else a
            prev = e
        comps.append(PathComponent(tuple(walk), (start, v), _path_kind(start, v)))
    if len(seen) != len(shared):
        raise AssertionError("shared edges of two distinct cycles must form paths")
    comps.sort(key=lambda c: min(c.edges))
    return comps


def has_s_to_r_intersection(c1: Cycle, c2: Cycle) -> bool:
    """True iff the shared edges are nonempty and every component is an S-to-R path."""
    comps = intersection_components(c1, c2)
    return bool(comps) and all(c.kind is PathKind.S_TO_R for c in comps)


# --- Condition (*) ----------------------------------------------------------

@dataclass(frozen=True)
class ConditionStarVerdict:
    """Result of checking Condition (*).

    ``bad_e_cycle`` is the first e-cycle that is not an s-cycle; otherwise
    ``bad_pair`` is the first pair of e-cycles with S-to-R intersection. The
    pair counts are only filled in when all pairs were examined.
    """

    holds: bool
    bad_e_cycle: Cycle | None = None
    bad_pair: tuple[Cycle, Cycle] | None = None
    cycle_count: int = 0
    e_cycle_count: int = 0
    s_to_r_pairs: tuple[tuple[Cycle, Cycle], ...] | None = None
    edge_disjoint_e_pairs: int | None = None

    def __post_init__(self):
        if self.holds != (self.bad_e_cycle is None and self.bad_pair is None):
            raise ValueError("holds must be true exactly when no witness is present")


def check_condition_star(G: SRGraph, max_len: int | None = None, *, exhaustive: bool = False,
                         cycles: Sequence[Cycle] | None = None) -> ConditionStarVerdict:
    """Decide Condition (*): every e-cycle is an s-cycle and no two e-cycles
    have S-to-R intersection.

    Refuses (``CycleEnumerationTruncated``) when the cycle list is incomplete.
    With ``exhaustive`` every e-cycle pair is examined and the S-to-R pairs and
    edge-disjoint pair count are recorded; the witnesses are the same either
    way.
    """
    if cycles is None:
        cycles = enumerate_cycles(G, max_len)
    if getattr(cycles, "truncated", False):
        raise CycleEnumerationTruncated(
            f"cycle enumeration stopped at length {max_len}; Condition (*) needs every cycle")
    e_cycles = [c for c in cycles if c.is_e_cycle]
    counts = dict(cycle_count=len(cycles), e_cycle_count=len(e_cycles))

    bad_cycle = next((c for c in e_cycles if not c.is_s_cycle), None)
    if bad_cycle is not None and not exhaustive:
        return ConditionStarVerdict(False, bad_e_cycle=bad_cycle, **counts)

    pairs: list[tuple[Cycle, Cycle]] = []
    disjoint = 0
    for a in range(len(e_cycles)):
        keys_a = e_cycles[a].edge_keys
        for b in range(a + 1, len(e_cycles)):
            if not keys_a & e_cycles[b].edge_keys:
                disjoint += 1
                continue
            if has_s_to_r_intersection(e_cycles[a], e_cycles[b]):
                pairs.append((e_cycles[a], e_cycles[b]))
                if not exhaustive:
                    return ConditionStarVerdict(False, bad_pair=pairs[0], **counts)
    bad_pair = pairs[0] if pairs else None
    holds = bad_cycle is None and bad_pair is None
    if not exhaustive:
        return ConditionStarVerdict(holds, **counts)
    return ConditionStarVerdict(holds, bad_cycle, bad_pair, s_to_r_pairs=tuple(pairs),
                                edge_disjoint_e_pairs=disjoint, **counts)


def all_o_cycles(G: SRGraph, cycles: Sequence[Cycle] | None = None) -> bool:
    if cycles is None:
        cycles = enumerate_cycles(G)
    if getattr(cycles, "truncated", False):
        raise CycleEnumerationTruncated("cannot decide whether all cycles are o-cycles from a truncated list")
    return all(c.is_o_cycle for c in cycles)


# --- DOT --------------------------------------------------------------------

HIGHLIGHT_COLORS = ("red", "blue", "darkgreen", "orange", "purple", "brown")


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(G: SRGraph, highlights: Sequence[Cycle] = (), name: str = "SR") -> str:
    """Graphviz DOT text for the SR graph.

    S-vertices are circles and R-vertices boxes; positive edges are solid and
    negative edges dashed. Edges of the ``highlights`` cycles are colored, one
    color per cycle (edges shared by several cycles get a color list).
    """
    colors: dict[tuple[int, int], list[str]] = {}
    for k, cyc in enumerate(highlights):
        for e in cyc.edges:
            colors.setdefault(e.key, []).append(HIGHLIGHT_COLORS[k % len(HIGHLIGHT_COLORS)])
    lines = [f"graph {_q(name)} {{"]
    for v in G.s_vertices:
        lines.append(f"  {_q('S:' + G.label(v))} [label={_q(G.label(v))}, shape=circle];")
    for v in G.r_vertices:
        lines.append(f"  {_q('R:' + G.label(v))} [label={_q(G.label(v))}, shape=box];")
    for e in G.edges:
        attrs = [f"style={'solid' if e.sign > 0 else 'dashed'}", f"label={_q(str(e.value))}"]
        if e.key in colors:
            attrs.append(f"color={_q(':'.join(colors[e.key]))}")
            attrs.append("penwidth=2")
        s, r = e.vertices
        lines.append(f"  {_q('S:' + G.label(s))} -- {_q('R:' + G.label(r))} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
