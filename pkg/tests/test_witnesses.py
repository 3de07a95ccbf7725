import pytest

from backforth.construction import GraphParams, addresses, apply_isomorphism, truncation
from backforth.graphcore import PathWitness, S, T, Vertex, validate_path
from backforth.witnesses import (
    Direction,
    WitnessSpec,
    chain_path,
    lambda1_witness,
    loop_erase,
    required_depth,
    resolve,
    ts_pattern,
    witness_depth,
)

import oracles


def test_chain_path_k2_root(k2, d2):
    w = chain_path(k2)
    assert w.vertices == (S(), T(0), S(1), T(2), S(3), T())
    assert len(w) == 2 * k2.k + 1
    assert all(e.gadget == () and e.rule >= 4 * k2.k for e in w.edges)
    assert validate_path(d2, w)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_ts_pattern_length_by_kind(k):
    p = GraphParams(k)
    w = ts_pattern(p)
    assert w.endpoints == (T(), S())
    root = [e for e in w.edges if e.gadget == ()]
    inner = [e for e in w.edges if e.gadget != ()]
    assert sum(1 for e in root if e.rule < 4 * k) == k + 1
    assert sum(1 for e in root if e.rule >= 4 * k) == 1
    assert len(inner) == (k + 1) * (2 * k + 1)
    assert len(w) == (k + 1) * (2 * k + 1) + k + 2
    assert validate_path(truncation(p, 2), w)
    assert not validate_path(truncation(p, 1), w)


def test_ts_pattern_k2_visits_children_in_order(k2):
    w = ts_pattern(k2)
    firsts = [v.address[0] for v in w.vertices if v.role == "s" and len(v.address) == 1]
    # chains of children 2, 0, 1 each enter at s_i
    assert firsts == [2, 0, 1]


@pytest.mark.parametrize("nu", [(0,), (3,), (1, 2)])
def test_patterns_are_equivariant(k2, nu):
    assert chain_path(k2, nu) == apply_isomorphism(nu, chain_path(k2))
    assert ts_pattern(k2, nu) == apply_isomorphism(nu, ts_pattern(k2))


def test_chain_rejects_bad_address(k2):
    with pytest.raises(ValueError):
        chain_path(k2, (4,))


def _targets(p, max_len=2):
    for mu in addresses(p, max_len):
        for role in ("s", "t"):
            yield Vertex(role, mu)


@pytest.mark.parametrize("k", [2, 3])
def test_lambda1_witnesses_for_all_short_targets(k):
    p = GraphParams(k)
    graphs = {d: truncation(p, d) for d in range(5)}
    for target in _targets(p):
        r = lambda1_witness(p, WitnessSpec(target))
        assert r.ambiguous == ()
        assert r.from_s.endpoints == (S(), target)
        assert r.to_s.endpoints == (target, S())
        d = r.required_depth
        assert d >= len(target.address)
        for w in (r.from_s, r.to_s):
            assert validate_path(graphs[d], w)
        # the edge sets exist in truncation(d), cross-checked by plain DFS
        assert oracles.dfs_reachable(graphs[d], S(), target)
        assert oracles.dfs_reachable(graphs[d], target, S())
        if d > 0:
            assert not all(validate_path(graphs[d - 1], w) for w in (r.from_s, r.to_s))


def test_required_depth_depth1_targets(k2):
    assert required_depth(k2, WitnessSpec(T())) == 2
    for i in k2.I:
        expected = 3 if i % 2 else 2
        assert required_depth(k2, WitnessSpec(S(i))) == expected


def test_direction_selects_paths(k2):
    r = lambda1_witness(k2, WitnessSpec(S(1), Direction.FROM_S))
    assert r.from_s is not None and r.to_s is None
    r = lambda1_witness(k2, WitnessSpec(S(1), "to-s"))
    assert r.from_s is None and r.to_s is not None


def test_trivial_target(k2):
    r = lambda1_witness(k2, WitnessSpec(S()))
    assert len(r.from_s) == 0 and r.required_depth == 0


def test_witness_depth():
    assert witness_depth(PathWitness((S(),), ())) == 0
    assert witness_depth(chain_path(GraphParams(2), (1,))) == 2


def test_loop_erase():
    assert loop_erase([1, 2, 3, 2, 4]) == [1, 2, 4]
    assert loop_erase([1, 2, 3, 1, 5]) == [1, 5]
    assert loop_erase([1, 2, 3, 4, 2, 5, 3, 6]) == [1, 2, 5, 3, 6]
    assert loop_erase([]) == []


def test_resolve_takes_distinct_copies(k2):
    w, amb = resolve(k2, [S(), T(1), S()])
    assert w.edges[0].rule == 0 and w.edges[1].rule == 1
    assert amb == ()
    with pytest.raises(ValueError):
        resolve(k2, [S(), S(0)])
