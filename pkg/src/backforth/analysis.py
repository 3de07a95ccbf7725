"""Finite checks of the negative and robustness results.

* :func:`search_disjoint_pair` decides, exactly, whether a graph has
  edge-disjoint ``u -> v`` and ``v -> u`` paths.
* :func:`verify_cut_structure` recomputes the three cuts used against such a
  pair in the family and compares their crossing edges with the claimed ones.
* :func:`robustness_quotient` and :func:`certify_deleted_connectivity` probe
  connectivity after deleting fewer than ``k`` edges.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable

from backforth import kernels
from backforth.construction import (
    GraphParams,
    check_edge,
    check_vertex,
    has_prefix,
    quotient_dv,
    truncation,
)
from backforth.graphcore import (
    EdgeRef,
    MultiDigraph,
    PathWitness,
    ResourceLimitError,
    Vertex,
    _check_vertices,
    is_connected,
    shortest_path,
    validate_path,
    witness_from_edge_ids,
)

DEFAULT_PAIR_BUDGET = 10**6


class Outcome(str, enum.Enum):
    FOUND_PAIR = "FoundPair"
    NONE_POSSIBLE = "NonePossible"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class PairSearchResult:
    outcome: Outcome
    forward: PathWitness | None = None
    backward: PathWitness | None = None
    explored: int = 0
    paths_tested: int = 0


def search_disjoint_pair(g: MultiDigraph, u: Hashable, v: Hashable, budget: int = DEFAULT_PAIR_BUDGET) -> PairSearchResult:
    """Exact search for edge-disjoint ``u -> v`` and ``v -> u`` paths.

    ``u -> v`` paths are tried shortest first (ties in vertex order), so a
    returned pair has a shortest possible forward component.  ``explored``
    counts search nodes across all length rounds.
    """
    _check_vertices(g, u, v)
    if u == v:
        raise ValueError("u and v must differ")
    if budget <= 0:
        raise ValueError("budget must be positive")
    c = g.csr
    status, p, q, explored, tested = kernels.pair_search(
        c.n, c.out_start, c.heads, g.index[u], g.index[v], budget
    )
    if status == kernels.FOUND:
        fwd = witness_from_edge_ids(g, p)
        back = witness_from_edge_ids(g, q)
        if set(fwd.edges) & set(back.edges) or not (validate_path(g, fwd) and validate_path(g, back)):
            raise AssertionError("pair search returned an invalid pair")
        return PairSearchResult(Outcome.FOUND_PAIR, fwd, back, explored, tested)
    if status == kernels.BUDGET_EXHAUSTED:
        return PairSearchResult(Outcome.BUDGET_EXHAUSTED, explored=explored, paths_tested=tested)
    return PairSearchResult(Outcome.NONE_POSSIBLE, explored=explored, paths_tested=tested)


@dataclass
class Claim:
    name: str
    passed: bool
    detail: str = ""
    offending: list = field(default_factory=list)


@dataclass
class CutStructureReport:
    k: int
    depth: int
    i0: int
    claims: list[Claim]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)


def outgoing(g: MultiDigraph, side: set) -> list[EdgeRef]:
    return [e for e in g.edges if g.ends[e][0] in side and g.ends[e][1] not in side]


def verify_cut_structure(params: GraphParams, depth: int, i0: int) -> CutStructureReport:
    """Recompute the three cuts for a given even ``i0`` on ``truncation(depth)``."""
    if depth < 2:
        raise ValueError("depth must be >= 2")
    if i0 not in params.I_e:
        raise ValueError(f"i0 must be an even index in 0..{2 * params.k - 2}, got {i0}")
    g = truncation(params, depth)
    s, t = Vertex("s"), Vertex("t")

    def union(indices: Iterable[int], extra: Vertex) -> set:
        idx = set(indices)
        return {extra} | {x for x in g.vertices if x.address and x.address[0] in idx}

    claims = []
    evens = union(params.I_e, t)
    crossing = outgoing(g, evens)
    expected = sorted((Vertex("t", (i,)), Vertex("s", (i + 1,))) for i in params.I_e)
    actual = sorted(g.ends[e] for e in crossing)
    claims.append(Claim("even_union_is_ts_cut", t in evens and s not in evens))
    claims.append(Claim(
        "even_union_out_edges",
        actual == expected,
        f"{len(actual)} crossing edges: {', '.join(f'{a!r}->{b!r}' for a, b in actual)}",
        [e for e in crossing if g.ends[e] not in expected],
    ))

    T_set = union((i for i in params.I if i >= i0), t)
    allowed = {Vertex("t", (i0,)), Vertex("t", (i0 + 1,))}
    bad = [e for e in outgoing(g, T_set) if g.ends[e][0] not in allowed]
    claims.append(Claim("T_is_ts_cut", t in T_set and s not in T_set))
    claims.append(Claim(
        "T_out_tails",
        not bad,
        "tails " + ", ".join(sorted({repr(g.ends[e][0]) for e in outgoing(g, T_set)})),
        bad,
    ))

    S_set = union((i for i in params.I if i <= i0 + 1), s)
    allowed = {Vertex("s", (i0,)), Vertex("s", (i0 + 1,))}
    bad = [e for e in outgoing(g, S_set) if g.ends[e][0] not in allowed]
    claims.append(Claim("S_is_st_cut", s in S_set and t not in S_set))
    claims.append(Claim(
        "S_out_tails",
        not bad,
        "tails " + ", ".join(sorted({repr(g.ends[e][0]) for e in outgoing(g, S_set)})),
        bad,
    ))
    return CutStructureReport(params.k, depth, i0, claims)


@dataclass
class RobustnessReport:
    k: int
    max_deleted: int
    mode: str
    cases: int = 0
    connected: int = 0
    failures: list[tuple[EdgeRef, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases == self.connected


def robustness_quotient(
    params: GraphParams, l: int, mode: str = "exhaustive", trials: int = 1000, seed: int = 0
) -> RobustnessReport:
    """Delete edge sets of size <= ``l`` from the quotient and check strong connectivity.

    ``exhaustive`` tries every set of size ``1..l`` (only the empty set when
    ``l == 0``); ``random`` draws ``trials`` sets with a seeded generator.
    """
    if not 0 <= l < params.k:
        raise ValueError(f"need 0 <= l < k = {params.k}, got l = {l}")
    g = quotient_dv(params)
    report = RobustnessReport(params.k, l, mode)
    if mode == "exhaustive":
        sizes = range(1, l + 1) if l else [0]
        deletions = (c for size in sizes for c in combinations(g.edges, size))
    elif mode == "random":
        rng = random.Random(seed)
        deletions = (
            tuple(rng.sample(g.edges, rng.randint(1, l) if l else 0)) for _ in range(trials)
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for removed in deletions:
        report.cases += 1
        if is_connected(g, removed):
            report.connected += 1
        else:
            report.failures.append(removed)
    return report


@dataclass(frozen=True)
class Certificate:
    witness: PathWitness
    depth: int


def certify_deleted_connectivity(
    params: GraphParams,
    deleted: Iterable[EdgeRef],
    u: Vertex,
    v: Vertex,
    depth_cap: int,
) -> Certificate:
    """Find a ``u -> v`` path avoiding ``deleted`` in growing truncations.

    Reaching ``depth_cap`` without a path raises ResourceLimitError: it is
    inconclusive, not a refutation.
    """
    deleted = frozenset(check_edge(params, e) for e in deleted)
    if len(deleted) >= params.k:
        raise ValueError(f"can delete at most k-1 = {params.k - 1} edges, got {len(deleted)}")
    check_vertex(params, u)
    check_vertex(params, v)
    start = max([len(e.gadget) for e in deleted] + [len(u.address), len(v.address)]) + 2
    for depth in range(start, depth_cap + 1):
        g = truncation(params, depth)
        w = shortest_path(g, u, v, deleted)
        if w is not None:
            return Certificate(w, depth)
    raise ResourceLimitError(f"no {u!r} -> {v!r} path avoiding the deletion up to depth {depth_cap}")


@dataclass
class NoPairRow:
    graph: str
    depth: int | None
    outcome: Outcome
    explored: int
    paths_tested: int
    expected: Outcome

    @property
    def passed(self) -> bool:
        return self.outcome == self.expected


def verify_no_pair_suite(params: GraphParams, max_depth: int, budget: int = DEFAULT_PAIR_BUDGET) -> list[NoPairRow]:
    """NonePossible on ``truncation(d)`` for ``d = 1..max_depth``; FoundPair on the quotient."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    rows = []
    s, t = Vertex("s"), Vertex("t")
    for d in range(1, max_depth + 1):
        r = search_disjoint_pair(truncation(params, d), s, t, budget)
        rows.append(NoPairRow("truncation", d, r.outcome, r.explored, r.paths_tested, Outcome.NONE_POSSIBLE))
    r = search_disjoint_pair(quotient_dv(params), s, t, budget)
    rows.append(NoPairRow("quotient", None, r.outcome, r.explored, r.paths_tested, Outcome.FOUND_PAIR))
    return rows
