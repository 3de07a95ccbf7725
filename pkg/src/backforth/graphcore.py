"""Finite directed multigraphs with identified parallel edges.

Every algorithm in the package runs on :class:`MultiDigraph`.  Vertices of the
self-similar family are ``Vertex(role, address)``; other node kinds
(contraction labels, subdivision midpoints) only need to be hashable and
sortable through :func:`node_key`.

"Connected" always means strongly connected: a directed ``u -> v`` path for
every ordered pair.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from backforth import kernels


class ResourceLimitError(RuntimeError):
    """A configured size or search budget was exceeded (result inconclusive)."""


class Vertex(NamedTuple):
    role: str
    address: tuple[int, ...] = ()

    def child(self, *digits: int) -> Vertex:
        return Vertex(self.role, self.address + digits)

    def __repr__(self) -> str:
        if not self.address:
            return self.role
        return f"{self.role}_{'.'.join(map(str, self.address))}"


class EdgeRef(NamedTuple):
    """Identity of one edge: emitting gadget address, rule id, copy index.

    ``part`` is empty for edges of the family itself and tags edges created
    by transforms (see ``construction.subdivide_parallel``).
    """

    gadget: tuple[int, ...]
    rule: int
    copy: int = 0
    part: str = ""

    def __repr__(self) -> str:
        g = ".".join(map(str, self.gadget))
        tag = f"/{self.part}" if self.part else ""
        return f"e({g}/{self.rule}/{self.copy}{tag})"


class Midpoint(NamedTuple):
    """Fresh vertex subdividing ``edge``."""

    edge: EdgeRef

    def __repr__(self) -> str:
        return f"m{repr(self.edge)[1:]}"


def S(*digits: int) -> Vertex:
    return Vertex("s", digits)


def T(*digits: int) -> Vertex:
    return Vertex("t", digits)


def node_key(x: Hashable) -> tuple:
    """Global vertex order: role S before T, then lexicographic address."""
    if isinstance(x, Vertex):
        return (0, x.role, x.address)
    if isinstance(x, Midpoint):
        return (1, tuple(x.edge))
    return (2, type(x).__name__, repr(x))


def edge_key(e: EdgeRef) -> tuple:
    return (e.gadget, e.rule, e.copy, e.part)


class CSR(NamedTuple):
    n: int
    out_start: array
    heads: array
    in_start: array
    in_edges: array
    tails: array


class MultiDigraph:
    """Immutable directed multigraph.

    ``edges`` maps each :class:`EdgeRef` to its ``(tail, head)``.  Vertices
    and edges are stored in the deterministic global order; edges are sorted
    by (tail, head, ref) so the out-edges of a vertex are contiguous.
    """

    def __init__(
        self,
        vertices: Iterable[Hashable],
        edges: Mapping[EdgeRef, tuple[Hashable, Hashable]] | Iterable[tuple[EdgeRef, Hashable, Hashable]],
        k: int | None = None,
        depth: int | None = None,
    ):
        verts = sorted(set(vertices), key=node_key)
        index = {v: i for i, v in enumerate(verts)}
        items = edges.items() if isinstance(edges, Mapping) else (
            (ref, (tail, head)) for ref, tail, head in edges
        )
        ends: dict[EdgeRef, tuple[Hashable, Hashable]] = {}
        for ref, (tail, head) in items:
            if ref in ends:
                raise ValueError(f"duplicate edge {ref!r}")
            if tail not in index or head not in index:
                raise ValueError(f"edge {ref!r} has an endpoint outside the vertex set")
            ends[ref] = (tail, head)
        self.vertices: tuple[Hashable, ...] = tuple(verts)
        self.index = index
        self.edges: tuple[EdgeRef, ...] = tuple(
            sorted(ends, key=lambda e: (index[ends[e][0]], index[ends[e][1]], edge_key(e)))
        )
        self.ends = ends
        self.k = k
        self.depth = depth

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: Hashable) -> bool:
        return v in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiDigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.ends == other.ends

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"MultiDigraph(|V|={len(self.vertices)}, |A|={len(self.edges)}, k={self.k}, depth={self.depth})"

    def tail(self, e: EdgeRef) -> Hashable:
        return self.ends[e][0]

    def head(self, e: EdgeRef) -> Hashable:
        return self.ends[e][1]

    def out_edges(self, u: Hashable) -> tuple[EdgeRef, ...]:
        c = self.csr
        i = self.index[u]
        return self.edges[c.out_start[i]:c.out_start[i + 1]]

    def multiplicity(self, u: Hashable, v: Hashable) -> int:
        return sum(1 for e in self.out_edges(u) if self.ends[e][1] == v)

    def has_loops(self) -> bool:
        return any(t == h for t, h in self.ends.values())

    def edge_ids(self, refs: Iterable[EdgeRef]) -> list[int]:
        pos = self._edge_pos
        return [pos[e] for e in refs]

    def alive_mask(self, removed: Iterable[EdgeRef] = ()) -> bytearray:
        """Per-edge 0/1 mask with the given edges switched off."""
        alive = bytearray(b"\x01") * len(self.edges)
        pos = self._edge_pos
        for e in removed:
            if e in pos:
                alive[pos[e]] = 0
        return alive

    @cached_property
    def _edge_pos(self) -> dict[EdgeRef, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def csr(self) -> CSR:
        n = len(self.vertices)
        idx = self.index
        tails = array("i", (idx[self.ends[e][0]] for e in self.edges))
        heads = array("i", (idx[self.ends[e][1]] for e in self.edges))
        out_start = array("i", [0] * (n + 1))
        in_start = array("i", [0] * (n + 1))
        for t, h in zip(tails, heads):
            out_start[t + 1] += 1
            in_start[h + 1] += 1
        for i in range(n):
            out_start[i + 1] += out_start[i]
            in_start[i + 1] += in_start[i]
        in_edges = array("i", sorted(range(len(heads)), key=lambda e: (heads[e], tails[e], e)))
        return CSR(n, out_start, heads, in_start, in_edges, tails)

    def without(self, removed: Iterable[EdgeRef]) -> MultiDigraph:
        removed = set(removed)
        return MultiDigraph(
            self.vertices,
            {e: ends for e, ends in self.ends.items() if e not in removed},
            k=self.k,
            depth=self.depth,
        )


@dataclass(frozen=True)
class PathWitness:
    """A directed path given by its vertex sequence and the edges it uses.

    A zero-length witness has one vertex and no edges.
    """

    vertices: tuple[Hashable, ...]
    edges: tuple[EdgeRef, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a path over n edges needs n + 1 vertices")

    @property
    def source(self) -> Hashable:
        return self.vertices[0]

    @property
    def target(self) -> Hashable:
        return self.vertices[-1]

    @property
    def endpoints(self) -> tuple[Hashable, Hashable]:
        return self.vertices[0], self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)


def _check_vertices(g: MultiDigraph, *vs: Hashable) -> None:
    for v in vs:
        if v not in g.index:
            raise ValueError(f"unknown vertex {v!r}")


def induced_span(g: MultiDigraph, u_set: Iterable[Hashable]) -> MultiDigraph:
    """``(U, span(U))``: keep the edges whose tail and head both lie in U."""
    u_set = set(u_set)
    _check_vertices(g, *u_set)
    return MultiDigraph(
        u_set,
        {e: (t, h) for e, (t, h) in g.ends.items() if t in u_set and h in u_set},
        k=g.k,
    )


def contract(g: MultiDigraph, partition: Sequence[Iterable[Hashable]], names: Sequence[Hashable]) -> MultiDigraph:
    """Contract each block of ``partition`` to the matching label in ``names``.

    Edges inside a block become loops and are dropped; surviving edges keep
    their EdgeRef.
    """
    if len(partition) != len(names):
        raise ValueError("need exactly one name per block")
    if len(set(names)) != len(names):
        raise ValueError("block names must be distinct")
    block_of: dict[Hashable, Hashable] = {}
    for block, name in zip(partition, names):
        for v in block:
            if v not in g.index:
                raise ValueError(f"unknown vertex {v!r}")
            if v in block_of:
                raise ValueError(f"vertex {v!r} appears in more than one block")
            block_of[v] = name
    if len(block_of) != len(g.vertices):
        raise ValueError("partition does not cover every vertex")
    edges = {}
    for e, (t, h) in g.ends.items():
        bt, bh = block_of[t], block_of[h]
        if bt != bh:
            edges[e] = (bt, bh)
    return MultiDigraph(names, edges, k=g.k)


def reachable_set(g: MultiDigraph, u: Hashable, removed: Iterable[EdgeRef] = ()) -> set[Hashable]:
    _check_vertices(g, u)
    c = g.csr
    seen = kernels.reach(c.n, c.out_start, c.heads, g.index[u], g.alive_mask(removed))
    return {g.vertices[i] for i in range(c.n) if seen[i]}


def reachable(g: MultiDigraph, u: Hashable, v: Hashable, removed: Iterable[EdgeRef] = ()) -> bool:
    _check_vertices(g, u, v)
    if u == v:
        return True
    c = g.csr
    seen = kernels.reach(c.n, c.out_start, c.heads, g.index[u], g.alive_mask(removed))
    return bool(seen[g.index[v]])


def is_connected(g: MultiDigraph, removed: Iterable[EdgeRef] = ()) -> bool:
    """Strong connectivity; empty and single-vertex graphs count as connected."""
    c = g.csr
    if c.n <= 1:
        return True
    alive = g.alive_mask(removed)
    if not all(kernels.reach(c.n, c.out_start, c.heads, 0, alive)):
        return False
    # reverse reachability from vertex 0 over the in-edge CSR
    return all(kernels.reach_reverse(c.n, c.in_start, c.in_edges, c.tails, 0, alive))


def shortest_path(g: MultiDigraph, u: Hashable, v: Hashable, removed: Iterable[EdgeRef] = ()) -> PathWitness | None:
    """BFS path over edges in the global order, or None if unreachable."""
    _check_vertices(g, u, v)
    if u == v:
        return PathWitness((u,), ())
    c = g.csr
    ids = kernels.bfs_path(c.n, c.out_start, c.heads, g.index[u], g.index[v], g.alive_mask(removed))
    if ids is None:
        return None
    return witness_from_edge_ids(g, ids)


def witness_from_edge_ids(g: MultiDigraph, ids: Sequence[int]) -> PathWitness:
    refs = tuple(g.edges[i] for i in ids)
    verts = [g.ends[refs[0]][0]] + [g.ends[e][1] for e in refs]
    return PathWitness(tuple(verts), refs)


def path_from_vertices(g: MultiDigraph, seq: Sequence[Hashable], avoid: Iterable[EdgeRef] = ()) -> PathWitness:
    """Resolve a vertex sequence to edges, taking the lowest unused parallel copy."""
    _check_vertices(g, *seq)
    used = set(avoid)
    refs = []
    for a, b in zip(seq, seq[1:]):
        for e in g.out_edges(a):
            if g.ends[e][1] == b and e not in used:
                break
        else:
            raise ValueError(f"no unused edge {a!r} -> {b!r}")
        used.add(e)
        refs.append(e)
    return PathWitness(tuple(seq), tuple(refs))


def validate_path(g: MultiDigraph, w: PathWitness) -> bool:
    """True iff ``w`` is a simple directed path of ``g`` whose edges chain up."""
    if any(v not in g.index for v in w.vertices):
        return False
    if len(set(w.vertices)) != len(w.vertices) or len(set(w.edges)) != len(w.edges):
        return False
    for i, e in enumerate(w.edges):
        if g.ends.get(e) != (w.vertices[i], w.vertices[i + 1]):
            return False
    return True
