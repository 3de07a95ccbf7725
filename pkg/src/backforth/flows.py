"""Unit-capacity max-flow: local edge-connectivity, min cuts, Menger paths.

Each parallel copy is one unit of capacity, so ``lambda_directed(g, u, v)``
is the least number of edges whose deletion leaves no ``u -> v`` path.
``lambda_bruteforce`` computes the same quantity by subset enumeration and
shares no code with the flow path beyond plain reachability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable

from backforth import kernels
from backforth.graphcore import (
    EdgeRef,
    MultiDigraph,
    PathWitness,
    ResourceLimitError,
    Vertex,
    _check_vertices,
    witness_from_edge_ids,
)

DEFAULT_BRUTEFORCE_BUDGET = 2_000_000


@dataclass(frozen=True)
class FlowResult:
    value: int
    saturated: frozenset[EdgeRef]


@dataclass(frozen=True)
class CutReport:
    side: frozenset
    crossing: tuple[EdgeRef, ...]


def _pair(g: MultiDigraph, u: Hashable, v: Hashable) -> tuple[int, int]:
    _check_vertices(g, u, v)
    if u == v:
        raise ValueError("source and sink must differ")
    return g.index[u], g.index[v]


def _run(g: MultiDigraph, u: Hashable, v: Hashable):
    src, dst = _pair(g, u, v)
    c = g.csr
    return kernels.max_flow(c.n, c.out_start, c.heads, c.in_start, c.in_edges, c.tails, src, dst)


def max_flow(g: MultiDigraph, u: Hashable, v: Hashable) -> FlowResult:
    value, flow, _ = _run(g, u, v)
    _check_conservation(g, flow, g.index[u], g.index[v], value)
    return FlowResult(value, frozenset(g.edges[i] for i, f in enumerate(flow) if f))


def _check_conservation(g: MultiDigraph, flow, src: int, dst: int, value: int) -> None:
    c = g.csr
    net = [0] * c.n
    for e, f in enumerate(flow):
        if f:
            net[c.tails[e]] += 1
            net[c.heads[e]] -= 1
    expected = [0] * c.n
    expected[src] += value
    expected[dst] -= value
    if net != expected:
        raise AssertionError("flow violates conservation")


def lambda_directed(g: MultiDigraph, u: Hashable, v: Hashable) -> int:
    return _run(g, u, v)[0]


def lambda_pair(g: MultiDigraph, u: Hashable, v: Hashable) -> int:
    return min(lambda_directed(g, u, v), lambda_directed(g, v, u))


def min_cut(g: MultiDigraph, u: Hashable, v: Hashable) -> CutReport:
    """Source side = vertices residual-reachable from ``u`` after a max flow."""
    value, _, seen = _run(g, u, v)
    side = frozenset(g.vertices[i] for i in range(len(g.vertices)) if seen[i])
    crossing = tuple(e for e in g.edges if g.ends[e][0] in side and g.ends[e][1] not in side)
    if len(crossing) != value:
        raise AssertionError(f"cut of size {len(crossing)} but flow value {value}")
    c = g.csr
    if kernels.reaches(c.n, c.out_start, c.heads, g.index[u], g.index[v], g.alive_mask(crossing)):
        raise AssertionError("deleting the cut edges leaves the sink reachable")
    return CutReport(side, crossing)


def menger_paths(g: MultiDigraph, u: Hashable, v: Hashable) -> list[PathWitness]:
    """``lambda_directed(g, u, v)`` pairwise edge-disjoint simple paths.

    Decomposes the integral flow, cutting out any cycle a walk closes.
    """
    value, flow, _ = _run(g, u, v)
    src, dst = g.index[u], g.index[v]
    c = g.csr
    remaining = bytearray(flow)
    paths = []
    for _ in range(value):
        verts, edges, pos = [src], [], {src: 0}
        x = src
        while x != dst:
            for e in range(c.out_start[x], c.out_start[x + 1]):
                if remaining[e]:
                    break
            else:
                raise AssertionError("flow decomposition ran dry")
            remaining[e] = 0
            y = c.heads[e]
            if y in pos:
                p = pos[y]
                for w in verts[p + 1:]:
                    del pos[w]
                del verts[p + 1:]
                del edges[p:]
            else:
                pos[y] = len(verts)
                verts.append(y)
                edges.append(e)
            x = y
        paths.append(witness_from_edge_ids(g, edges))
    return paths


def _reference(g: MultiDigraph) -> Hashable:
    s = Vertex("s")
    return s if s in g.index else g.vertices[0]


def global_edge_connectivity(g: MultiDigraph) -> int | float:
    """min over ``w != r`` of ``lambda(r, w)`` and ``lambda(w, r)``.

    ``r`` is ``s`` when present, else the first vertex.  A single vertex
    gives ``math.inf``.
    """
    if not g.vertices:
        raise ValueError("empty graph")
    if len(g.vertices) == 1:
        return math.inf
    r = _reference(g)
    best = math.inf
    for w in g.vertices:
        if w != r:
            best = min(best, lambda_directed(g, r, w), lambda_directed(g, w, r))
            if best == 0:
                break
    return best


def lambda_bruteforce(
    g: MultiDigraph, u: Hashable, v: Hashable, bound: int, budget: int = DEFAULT_BRUTEFORCE_BUDGET
) -> int:
    """Smallest deletion set size ``< bound`` separating ``u`` from ``v``.

    Returns ``bound`` when no smaller set works, meaning ">= bound".
    """
    src, dst = _pair(g, u, v)
    m = len(g.edges)
    total = sum(math.comb(m, j) for j in range(bound))
    if total > budget:
        raise ResourceLimitError(f"{total} deletion sets exceed the budget of {budget}")
    c = g.csr
    for size in range(bound):
        for subset in combinations(range(m), size):
            alive = bytearray(b"\x01") * m
            for e in subset:
                alive[e] = 0
            if not kernels.reaches(c.n, c.out_start, c.heads, src, dst, alive):
                return size
    return bound


def global_bruteforce(g: MultiDigraph, bound: int, budget: int = DEFAULT_BRUTEFORCE_BUDGET) -> int:
    """Global edge-connectivity capped at ``bound``, by enumeration only."""
    if len(g.vertices) < 2:
        raise ValueError("need at least two vertices")
    r = _reference(g)
    best = bound
    for w in g.vertices:
        if w != r:
            best = min(best, lambda_bruteforce(g, r, w, best, budget), lambda_bruteforce(g, w, r, best, budget))
    return best
