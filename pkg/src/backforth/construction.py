"""The self-similar digraph family: gadgets, truncations, self-maps, quotient.

Vertices are ``s_mu`` and ``t_mu`` for finite digit strings ``mu`` over
``I = {0, ..., 2k-1}``.  Every address ``mu`` owns a *gadget*: the edges
joining ``s_mu``, ``t_mu`` and the children ``s_{mu i}``, ``t_{mu i}``.

Rule ids for a gadget (stable, used in serialized EdgeRefs):

* thick pair ``p`` in listing order ``{s, t_1}``, ``{s_i, t_{i+2}}`` for
  ``i = 0..2k-3``, ``{s_{2k-2}, t}``: rule ``2p`` runs first -> second
  member, rule ``2p + 1`` the other way, each with copies ``0..k-1``;
* simple rules from ``4k`` on: ``(s, t_0)``, ``(t_i, s_{i+1})`` for even
  ``i``, ``(s_i, t_{i+1})`` for odd ``i < 2k-1``, ``(s_{2k-1}, t)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Hashable, Iterable, Iterator

from backforth.graphcore import (
    EdgeRef,
    Midpoint,
    MultiDigraph,
    PathWitness,
    ResourceLimitError,
    Vertex,
    contract,
    induced_span,
)

DEFAULT_MAX_EDGES = 10**6

Address = tuple[int, ...]


@dataclass(frozen=True)
class GraphParams:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")

    @property
    def I(self) -> range:
        return range(2 * self.k)

    @property
    def I_e(self) -> range:
        return range(0, 2 * self.k, 2)

    @property
    def I_o(self) -> range:
        return range(1, 2 * self.k, 2)

    @property
    def gadget_size(self) -> int:
        return 4 * self.k * self.k + 2 * self.k + 1


# (role, child digit or None for the gadget's own s/t)
_End = tuple[str, "int | None"]


@dataclass(frozen=True)
class GadgetRule:
    rule: int
    tail: _End
    head: _End
    copies: int
    thick: bool = field(default=False)

    def endpoints(self, mu: Address) -> tuple[Vertex, Vertex]:
        return _resolve(self.tail, mu), _resolve(self.head, mu)


def _resolve(end: _End, mu: Address) -> Vertex:
    role, digit = end
    return Vertex(role, mu if digit is None else mu + (digit,))


@lru_cache(maxsize=None)
def gadget_rules(k: int) -> tuple[GadgetRule, ...]:
    pairs: list[tuple[_End, _End]] = [(("s", None), ("t", 1))]
    pairs += [(("s", i), ("t", i + 2)) for i in range(2 * k - 2)]
    pairs.append((("s", 2 * k - 2), ("t", None)))
    rules = []
    for p, (a, b) in enumerate(pairs):
        rules.append(GadgetRule(2 * p, a, b, k, thick=True))
        rules.append(GadgetRule(2 * p + 1, b, a, k, thick=True))
    simple: list[tuple[_End, _End]] = [(("s", None), ("t", 0))]
    simple += [(("t", i), ("s", i + 1)) for i in range(0, 2 * k, 2)]
    simple += [(("s", i), ("t", i + 1)) for i in range(1, 2 * k - 1, 2)]
    simple.append((("s", 2 * k - 1), ("t", None)))
    for j, (a, b) in enumerate(simple):
        rules.append(GadgetRule(4 * k + j, a, b, 1))
    return tuple(rules)


def check_address(params: GraphParams, mu: Iterable[int]) -> Address:
    mu = tuple(mu)
    for d in mu:
        if not isinstance(d, int) or not 0 <= d < 2 * params.k:
            raise ValueError(f"address digit {d!r} outside 0..{2 * params.k - 1}")
    return mu


def check_vertex(params: GraphParams, v: Vertex) -> Vertex:
    if not isinstance(v, Vertex) or v.role not in ("s", "t"):
        raise ValueError(f"{v!r} is not a vertex of the family")
    check_address(params, v.address)
    return v


def check_edge(params: GraphParams, e: EdgeRef) -> EdgeRef:
    check_address(params, e.gadget)
    rules = gadget_rules(params.k)
    if e.part or not 0 <= e.rule < len(rules) or not 0 <= e.copy < rules[e.rule].copies:
        raise ValueError(f"{e!r} is not an edge of the family for k={params.k}")
    return e


def edge_endpoints(params: GraphParams, e: EdgeRef) -> tuple[Vertex, Vertex]:
    check_edge(params, e)
    return gadget_rules(params.k)[e.rule].endpoints(e.gadget)


def gadget(params: GraphParams, mu: Iterable[int] = ()) -> list[tuple[EdgeRef, Vertex, Vertex]]:
    """All ``4k^2 + 2k + 1`` edges emitted by the gadget at address ``mu``."""
    mu = check_address(params, mu)
    out = []
    for r in gadget_rules(params.k):
        tail, head = r.endpoints(mu)
        for c in range(r.copies):
            out.append((EdgeRef(mu, r.rule, c), tail, head))
    return out


def addresses(params: GraphParams, max_len: int) -> Iterator[Address]:
    """Every address of length <= max_len, shortest first, then lexicographic."""
    for n in range(max_len + 1):
        yield from product(params.I, repeat=n)


def vertex_count(params: GraphParams, depth: int) -> int:
    return 2 * sum((2 * params.k) ** j for j in range(depth + 1))


def edge_count(params: GraphParams, depth: int) -> int:
    return params.gadget_size * sum((2 * params.k) ** j for j in range(depth))


def truncation(params: GraphParams, depth: int, max_edges: int = DEFAULT_MAX_EDGES) -> MultiDigraph:
    """Depth-``depth`` restriction: gadgets for every ``|mu| <= depth - 1``.

    Vertices are all ``r_mu`` with ``|mu| <= depth``.  ``depth = 0`` gives the
    two isolated vertices ``s`` and ``t``.
    """
    if not isinstance(depth, int) or depth < 0:
        raise ValueError(f"depth must be a non-negative integer, got {depth!r}")
    if edge_count(params, depth) > max_edges or vertex_count(params, depth) > 2 * max_edges:
        raise ResourceLimitError(
            f"truncation k={params.k} depth={depth} has {edge_count(params, depth)} edges "
            f"(cap {max_edges})"
        )
    return _truncation(params, depth)


@lru_cache(maxsize=16)
def _truncation(params: GraphParams, depth: int) -> MultiDigraph:
    vertices = [Vertex(r, mu) for mu in addresses(params, depth) for r in ("s", "t")]
    edges = [e for mu in addresses(params, depth - 1) for e in gadget(params, mu)]
    return MultiDigraph(vertices, edges, k=params.k, depth=depth)


def has_prefix(v: Hashable, nu: Address) -> bool:
    return isinstance(v, Vertex) and v.address[: len(nu)] == nu


def prefix_set(g: MultiDigraph, nu: Iterable[int]) -> set[Vertex]:
    """``V_nu`` restricted to the vertices present in ``g``."""
    nu = tuple(nu)
    return {v for v in g.vertices if has_prefix(v, nu)}


def apply_isomorphism(nu: Iterable[int], x):
    """The self-map ``r_mu -> r_{nu mu}`` on vertices, edges and path witnesses."""
    nu = tuple(nu)
    if isinstance(x, Vertex):
        return Vertex(x.role, nu + x.address)
    if isinstance(x, EdgeRef):
        return x._replace(gadget=nu + x.gadget)
    if isinstance(x, PathWitness):
        return PathWitness(
            tuple(apply_isomorphism(nu, v) for v in x.vertices),
            tuple(apply_isomorphism(nu, e) for e in x.edges),
        )
    raise TypeError(f"cannot map {type(x).__name__}")


@dataclass
class IsomorphismReport:
    k: int
    nu: Address
    depth: int
    gadgets_compared: int = 0
    mismatches: list[str] = field(default_factory=list)
    span_checked: bool = False

    @property
    def passed(self) -> bool:
        return not self.mismatches


def verify_isomorphism(params: GraphParams, nu: Iterable[int], depth: int, span_check: bool = True) -> IsomorphismReport:
    """Compare ``gadget(nu mu)`` with the image of ``gadget(mu)`` for ``|mu| < depth``.

    With ``span_check`` the induced subgraph on ``V_nu`` of the deeper
    truncation is also compared with the mapped truncation as a whole.
    """
    nu = check_address(params, nu)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    report = IsomorphismReport(params.k, nu, depth)
    for mu in addresses(params, depth - 1):
        mapped = sorted(
            (apply_isomorphism(nu, e), apply_isomorphism(nu, t), apply_isomorphism(nu, h))
            for e, t, h in gadget(params, mu)
        )
        actual = sorted(gadget(params, nu + mu))
        report.gadgets_compared += 1
        if mapped != actual:
            missing = set(mapped) - set(actual)
            extra = set(actual) - set(mapped)
            report.mismatches.append(f"gadget {mu}: {len(missing)} missing, {len(extra)} extra")
    if span_check:
        big = truncation(params, len(nu) + depth)
        sub = induced_span(big, prefix_set(big, nu))
        small = truncation(params, depth)
        image = {apply_isomorphism(nu, e): (apply_isomorphism(nu, t), apply_isomorphism(nu, h))
                 for e, (t, h) in small.ends.items()}
        image_vertices = {apply_isomorphism(nu, v) for v in small.vertices}
        if set(sub.vertices) != image_vertices:
            report.mismatches.append("span: vertex sets differ")
        if sub.ends != image:
            report.mismatches.append(f"span: edge sets differ ({len(sub.ends)} vs {len(image)})")
        report.span_checked = True
    return report


def quotient_dv(params: GraphParams) -> MultiDigraph:
    """``D`` with each ``V_i`` contracted to ``v_i`` (only root-gadget edges survive)."""
    g = truncation(params, 1)
    blocks = [[Vertex("s")], [Vertex("t")]] + [sorted(prefix_set(g, (i,))) for i in params.I]
    names = [Vertex("s"), Vertex("t")] + [Vertex("v", (i,)) for i in params.I]
    return contract(g, blocks, names)


def subdivide_parallel(g: MultiDigraph) -> MultiDigraph:
    """Replace every bundle of ``m >= 2`` parallel edges by a midpoint gadget.

    Each bundle edge ``e: u -> v`` becomes ``u -> m_e -> v`` and the bundle's
    midpoints are joined by all ``m(m-1)`` ordered pairs.  Opposite directions
    get separate midpoints.
    """
    bundles: dict[tuple, list[EdgeRef]] = defaultdict(list)
    for e in g.edges:
        bundles[g.ends[e]].append(e)
    vertices = list(g.vertices)
    edges: dict[EdgeRef, tuple] = {}

    def tag(e: EdgeRef, part: str) -> EdgeRef:
        return e._replace(part=f"{e.part}.{part}" if e.part else part)

    for (u, v), bundle in bundles.items():
        if len(bundle) == 1:
            edges[bundle[0]] = (u, v)
            continue
        mids = [Midpoint(e) for e in bundle]
        vertices.extend(mids)
        for e, m in zip(bundle, mids):
            edges[tag(e, "in")] = (u, m)
            edges[tag(e, "out")] = (m, v)
        for (i, e), (j, f) in product(enumerate(bundle), repeat=2):
            if i != j:
                edges[tag(e, f"to{j}")] = (mids[i], mids[j])
    return MultiDigraph(vertices, edges, k=g.k)
