"""Fixed graph corpus for the flow cross-checks.

Every graph here has at most 25 edges, so subset enumeration stays cheap.
"""

from __future__ import annotations

import random

from backforth.construction import GraphParams, gadget, quotient_dv, truncation
from backforth.graphcore import EdgeRef, MultiDigraph, S, T, Vertex


def _random_graph(seed: int, n: int, m: int) -> MultiDigraph:
    rng = random.Random(seed)
    verts = [Vertex("s", (i,)) for i in range(n)]
    edges = []
    for r in range(m):
        a, b = rng.sample(range(n), 2)
        edges.append((EdgeRef((), r, 0), verts[a], verts[b]))
    return MultiDigraph(verts, edges)


def _cycle(n: int, copies: int) -> MultiDigraph:
    verts = [Vertex("s", (i,)) for i in range(n)]
    edges = []
    for i in range(n):
        for c in range(copies):
            edges.append((EdgeRef((), i, c), verts[i], verts[(i + 1) % n]))
    return MultiDigraph(verts, edges)


def corpus() -> list[tuple[str, MultiDigraph]]:
    k2 = GraphParams(2)
    root = gadget(k2, (1,))
    root_verts = sorted({x for _, a, b in root for x in (a, b)})
    out = [
        ("d0", truncation(k2, 0)),
        ("d1", truncation(k2, 1)),
        ("dv2", quotient_dv(k2)),
        ("gadget_1", MultiDigraph(root_verts, root)),
        ("d1_minus_chain_start", truncation(k2, 1).without([EdgeRef((), 8, 0)])),
        ("cycle5x2", _cycle(5, 2)),
        ("cycle3x4", _cycle(3, 4)),
        ("single_edge", MultiDigraph([S(), T()], [(EdgeRef((), 0), S(), T())])),
    ]
    for seed in range(12):
        out.append((f"random{seed}", _random_graph(seed, 4 + seed % 4, 8 + seed)))
    assert all(len(g.edges) <= 25 for _, g in out)
    return out
