"""Explicit reachability witnesses following the connectivity argument.

All paths are first assembled as vertex sequences (concatenating the inner
``s_i -> t_i`` chains and ``t_i -> s_i`` patterns of child copies), then
loop-erased and resolved to EdgeRefs, taking the lowest unused copy of a
thick bundle.  Depth-1 targets are routed exactly as the argument routes
them: odd children along the ``s, t_1 .. s_1, t_3 .. s_3, ...`` line, even
children through ``t``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, Sequence

from backforth.construction import (
    GraphParams,
    apply_isomorphism,
    check_vertex,
    gadget_rules,
)
from backforth.graphcore import EdgeRef, PathWitness, Vertex, validate_path

__all__ = [
    "Direction",
    "WitnessSpec",
    "WitnessResult",
    "chain_path",
    "ts_pattern",
    "lambda1_witness",
    "required_depth",
    "witness_depth",
    "validate_path",
    "resolve",
    "loop_erase",
]


class Direction(str, enum.Enum):
    FROM_S = "from-s"
    TO_S = "to-s"
    BOTH = "both"


@dataclass(frozen=True)
class WitnessSpec:
    target: Vertex
    direction: Direction = Direction.BOTH


@dataclass(frozen=True)
class WitnessResult:
    spec: WitnessSpec
    from_s: PathWitness | None
    to_s: PathWitness | None
    required_depth: int
    ambiguous: tuple[tuple[Vertex, Vertex], ...] = ()


def _edge_candidates(params: GraphParams, a: Vertex, b: Vertex) -> list[list[EdgeRef]]:
    # one list of copies per (gadget, rule) joining a -> b
    out = []
    seen = set()
    for mu in (a.address, a.address[:-1], b.address, b.address[:-1]):
        if mu in seen:
            continue
        seen.add(mu)
        for r in gadget_rules(params.k):
            if r.endpoints(mu) == (a, b):
                out.append([EdgeRef(mu, r.rule, c) for c in range(r.copies)])
    return out


def resolve(params: GraphParams, seq: Sequence[Vertex]) -> tuple[PathWitness, tuple[tuple[Vertex, Vertex], ...]]:
    """Turn a vertex sequence into a witness; also report steps with several rules."""
    used: set[EdgeRef] = set()
    refs = []
    ambiguous = []
    for a, b in zip(seq, seq[1:]):
        groups = _edge_candidates(params, a, b)
        if len(groups) > 1:
            ambiguous.append((a, b))
        pick = next((e for group in groups for e in group if e not in used), None)
        if pick is None:
            raise ValueError(f"no edge {a!r} -> {b!r} for k={params.k}")
        used.add(pick)
        refs.append(pick)
    return PathWitness(tuple(seq), tuple(refs)), tuple(ambiguous)


def loop_erase(seq: Sequence[Hashable]) -> list[Hashable]:
    """Cut out every closed sub-walk, in walk order, leaving a simple path."""
    out: list[Hashable] = []
    pos: dict[Hashable, int] = {}
    for v in seq:
        if v in pos:
            p = pos[v]
            for w in out[p + 1:]:
                del pos[w]
            del out[p + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def _join(*parts: Sequence[Vertex]) -> list[Vertex]:
    walk = list(parts[0])
    for part in parts[1:]:
        if walk[-1] != part[0]:
            raise AssertionError(f"cannot join at {walk[-1]!r} / {part[0]!r}")
        walk.extend(part[1:])
    return walk


def _chain_seq(params: GraphParams, mu: tuple[int, ...]) -> list[Vertex]:
    seq = [Vertex("s", mu)]
    for i in params.I:
        seq.append(Vertex("t" if i % 2 == 0 else "s", mu + (i,)))
    seq.append(Vertex("t", mu))
    return seq


def _ts_seq(params: GraphParams, mu: tuple[int, ...]) -> list[Vertex]:
    seq = [Vertex("t", mu)]
    for i in list(range(2 * params.k - 2, -1, -2)) + [1]:
        seq.extend(_chain_seq(params, mu + (i,)))
    seq.append(Vertex("s", mu))
    return seq


def chain_path(params: GraphParams, mu: Sequence[int] = ()) -> PathWitness:
    """``s_mu, t_mu0, s_mu1, ..., s_mu(2k-1), t_mu`` along simple edges."""
    check_vertex(params, Vertex("s", tuple(mu)))
    return resolve(params, _chain_seq(params, tuple(mu)))[0]


def ts_pattern(params: GraphParams, mu: Sequence[int] = ()) -> PathWitness:
    """``t_mu`` back to ``s_mu`` through the chains of children 2k-2, ..., 2, 0, 1."""
    check_vertex(params, Vertex("t", tuple(mu)))
    return resolve(params, _ts_seq(params, tuple(mu)))[0]


def _root_lines(params: GraphParams) -> dict[str, list[Vertex]]:
    # consecutive blocks are joined by a single connecting edge
    odd = list(params.I_o)
    even = list(params.I_e)
    s, t = Vertex("s"), Vertex("t")
    return {
        "odd_out": [s] + [v for i in odd for v in _ts_seq(params, (i,))],
        "odd_back": [v for i in reversed(odd) for v in _chain_seq(params, (i,))] + [s],
        "even_out": [t] + [v for i in reversed(even) for v in _chain_seq(params, (i,))],
        "even_back": [v for i in even for v in _ts_seq(params, (i,))] + [t],
    }


def _prefix_to(line: list[Vertex], v: Vertex) -> list[Vertex]:
    return line[: line.index(v) + 1]


def _suffix_from(line: list[Vertex], v: Vertex) -> list[Vertex]:
    return line[line.index(v):]


def _depth1_seqs(params: GraphParams, target: Vertex) -> tuple[list[Vertex], list[Vertex]]:
    """(s -> target, target -> s) walks for a target at address length <= 1."""
    s, t = Vertex("s"), Vertex("t")
    if target == s:
        return [s], [s]
    if target == t:
        return _chain_seq(params, ()), _ts_seq(params, ())
    lines = _root_lines(params)
    (i,) = target.address
    if i % 2 == 1:
        return _prefix_to(lines["odd_out"], target), _suffix_from(lines["odd_back"], target)
    # even children are reached through t, then joined with the s <-> t witnesses
    to_target = _join(_chain_seq(params, ()), _prefix_to(lines["even_out"], target))
    from_target = _join(_suffix_from(lines["even_back"], target), _ts_seq(params, ()))
    return to_target, from_target


def _seqs(params: GraphParams, target: Vertex) -> tuple[list[Vertex], list[Vertex]]:
    if len(target.address) <= 1:
        fwd, back = _depth1_seqs(params, target)
        return loop_erase(fwd), loop_erase(back)
    parent = Vertex("s", target.address[:-1])
    local = Vertex(target.role, target.address[-1:])
    to_parent, from_parent = _seqs(params, parent)
    fwd, back = _depth1_seqs(params, local)
    nu = parent.address
    fwd = [apply_isomorphism(nu, v) for v in fwd]
    back = [apply_isomorphism(nu, v) for v in back]
    return loop_erase(_join(to_parent, fwd)), loop_erase(_join(back, from_parent))


def witness_depth(w: PathWitness) -> int:
    """Smallest truncation depth containing every edge of ``w`` (0 if none)."""
    if not w.edges:
        return len(w.vertices[0].address) if isinstance(w.vertices[0], Vertex) else 0
    return max(len(e.gadget) for e in w.edges) + 1


def lambda1_witness(params: GraphParams, spec: WitnessSpec) -> WitnessResult:
    """Witnesses for ``s -> target`` and/or ``target -> s``."""
    check_vertex(params, spec.target)
    direction = Direction(spec.direction)
    fwd_seq, back_seq = _seqs(params, spec.target)
    fwd = back = None
    ambiguous: list = []
    if direction in (Direction.FROM_S, Direction.BOTH):
        fwd, amb = resolve(params, fwd_seq)
        ambiguous.extend(amb)
    if direction in (Direction.TO_S, Direction.BOTH):
        back, amb = resolve(params, back_seq)
        ambiguous.extend(amb)
    depth = max(witness_depth(w) for w in (fwd, back) if w is not None)
    return WitnessResult(spec, fwd, back, depth, tuple(ambiguous))


def required_depth(params: GraphParams, spec: WitnessSpec) -> int:
    return lambda1_witness(params, spec).required_depth
