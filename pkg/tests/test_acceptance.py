"""Acceptance criteria 1-11, one test each.

Every test records a PASS/FAIL line with its measured time; the lines are
printed in the "acceptance criteria" section at the end of the pytest run.
"""

import json
import subprocess
import sys
import time

from backforth import cli
from backforth.analysis import (
    Outcome,
    certify_deleted_connectivity,
    robustness_quotient,
    verify_cut_structure,
    verify_no_pair_suite,
)
from backforth.construction import (
    GraphParams,
    addresses,
    gadget,
    quotient_dv,
    subdivide_parallel,
    truncation,
    verify_isomorphism,
)
from backforth.flows import (
    global_bruteforce,
    global_edge_connectivity,
    lambda_bruteforce,
    lambda_directed,
    lambda_pair,
    menger_paths,
    min_cut,
)
from backforth.graphcore import S, T, Vertex, validate_path
from backforth.witnesses import WitnessSpec, chain_path, lambda1_witness, ts_pattern

from conftest import ACCEPTANCE_RESULTS
from corpus import corpus


class Criterion:
    """Times a block, records the result line, and fails the test if needed."""

    def __init__(self, name: str, limit_s: float | None):
        self.name = name
        self.limit = limit_s
        self.ok = True
        self.notes: list[str] = []

    def check(self, cond: bool, note: str) -> None:
        if not cond:
            self.ok = False
            self.notes.append(note)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.ok = False
            self.notes.append(f"{exc_type.__name__}: {exc}")
        if self.limit is not None and elapsed >= self.limit:
            self.ok = False
            self.notes.append(f"over the {self.limit:g} s limit")
        limit = f" (limit {self.limit:g} s)" if self.limit is not None else ""
        detail = f"{elapsed:.2f} s{limit}"
        if self.notes:
            detail += "; " + "; ".join(self.notes[:5])
        ACCEPTANCE_RESULTS.append((self.name, self.ok, detail))
        if exc_type is None:
            assert self.ok, detail
        return False


def test_c01_gadget_arithmetic():
    with Criterion("C1 gadget arithmetic", 1.0) as c:
        for k in range(2, 7):
            p = GraphParams(k)
            for mu in addresses(p, 2):
                size = len(gadget(p, mu))
                c.check(size == 4 * k * k + 2 * k + 1, f"k={k} mu={mu} size {size}")
        for k, d, nv, ne in [(2, 1, 10, 21), (2, 2, 42, 105), (3, 1, 14, 43)]:
            g = truncation(GraphParams(k), d)
            c.check((len(g), len(g.edges)) == (nv, ne), f"k={k} d={d}: {len(g)}/{len(g.edges)}")


def test_c02_self_similarity():
    with Criterion("C2 self-similarity", 5.0) as c:
        for k in (2, 3):
            p = GraphParams(k)
            for nu in addresses(p, 2):
                r = verify_isomorphism(p, nu, 2)
                c.check(r.passed, f"k={k} nu={nu}")


def test_c03_quotient_connectivity():
    with Criterion("C3 quotient connectivity", 30.0) as c:
        for k in range(2, 6):
            lam = global_edge_connectivity(quotient_dv(GraphParams(k)))
            c.check(lam == k, f"maxflow k={k}: {lam}")
        for k in (2, 3):
            brute = global_bruteforce(quotient_dv(GraphParams(k)), bound=k + 1)
            c.check(brute == k, f"bruteforce k={k}: {brute}")


def test_c04_witness_suite():
    with Criterion("C4 witness suite", 60.0) as c:
        for k in (2, 3):
            p = GraphParams(k)
            graphs = {d: truncation(p, d) for d in range(5)}

            def validates_exactly_at(ws, d, label):
                c.check(all(validate_path(graphs[d], w) for w in ws), f"{label} invalid at depth {d}")
                if d > 0:
                    c.check(not all(validate_path(graphs[d - 1], w) for w in ws), f"{label} valid at depth {d - 1}")

            for mu in addresses(p, 2):
                validates_exactly_at([chain_path(p, mu)], len(mu) + 1, f"chain k={k} mu={mu}")
                validates_exactly_at([ts_pattern(p, mu)], len(mu) + 2, f"ts k={k} mu={mu}")
                for role in ("s", "t"):
                    r = lambda1_witness(p, WitnessSpec(Vertex(role, mu)))
                    validates_exactly_at([r.from_s, r.to_s], r.required_depth, f"lambda1 k={k} {role}{mu}")


def test_c05_cut_structure():
    with Criterion("C5 cut structure", 10.0) as c:
        for k in (2, 3):
            p = GraphParams(k)
            g = truncation(p, 2)
            for i0 in p.I_e:
                r = verify_cut_structure(p, 2, i0)
                c.check(r.passed, f"k={k} i0={i0}: {[x.name for x in r.claims if not x.passed]}")
            evens = {T()} | {x for x in g.vertices if x.address and x.address[0] % 2 == 0}
            crossing = sorted(g.ends[e] for e in g.edges if g.ends[e][0] in evens and g.ends[e][1] not in evens)
            expected = sorted((T(i), S(i + 1)) for i in p.I_e)
            c.check(crossing == expected, f"k={k} even-union crossing {crossing}")


def test_c06_no_disjoint_pair():
    with Criterion("C6 no disjoint pair", 600.0) as c:
        for k, depth in ((2, 3), (3, 2)):
            rows = verify_no_pair_suite(GraphParams(k), depth, budget=10**6)
            got = [(r.graph, r.depth, r.outcome.value, r.explored) for r in rows]
            c.check([r.outcome for r in rows[:-1]] == [Outcome.NONE_POSSIBLE] * depth, f"k={k}: {got}")
            c.check(rows[-1].outcome == Outcome.FOUND_PAIR, f"k={k} quotient: {got[-1]}")


def test_c07_robustness():
    with Criterion("C7 robustness", 60.0) as c:
        for k in (2, 3):
            r = robustness_quotient(GraphParams(k), k - 1)
            c.check(r.passed, f"k={k}: {len(r.failures)} disconnecting deletions")
            if k == 3:
                c.check(r.cases == 946, f"k=3 cases {r.cases}")


def test_c08_deletion_certificates():
    with Criterion("C8 deletion certificates", 60.0) as c:
        p = GraphParams(2)
        count = 0
        for e, _, _ in gadget(p):
            for u, v in ((S(), T()), (T(), S())):
                cert = certify_deleted_connectivity(p, [e], u, v, depth_cap=4)
                ok = (cert.depth <= 4 and e not in cert.witness.edges
                      and validate_path(truncation(p, cert.depth), cert.witness))
                c.check(ok, f"deleting {e} {u}->{v}")
                count += ok
        c.check(count == 42, f"{count} certificates")


def test_c09_oracle_cross_checks():
    with Criterion("C9 oracle cross-checks", 60.0) as c:
        for name, g in corpus():
            for u in g.vertices:
                for v in g.vertices:
                    if u == v:
                        continue
                    lam = lambda_directed(g, u, v)
                    c.check(lambda_bruteforce(g, u, v, bound=lam + 1) == lam, f"{name} {u}->{v} bruteforce")
                    c.check(len(min_cut(g, u, v).crossing) == lam, f"{name} {u}->{v} cut size")
                    c.check(len(menger_paths(g, u, v)) == lam, f"{name} {u}->{v} menger count")


def test_c10_remark_transform():
    with Criterion("C10 remark transform", 5.0) as c:
        for k in (2, 3):
            q = quotient_dv(GraphParams(k))
            h = subdivide_parallel(q)
            parallel = any(h.multiplicity(a, b) > 1 for a, b in set(h.ends.values()))
            c.check(not parallel, f"k={k} parallel edges remain")
            c.check(lambda_pair(h, S(), T()) == k, f"k={k} lambda changed")
            if k == 2:
                c.check((len(h), len(h.edges)) == (22, 53), f"size {len(h)}/{len(h.edges)}")


def _strip_timestamp(text: str) -> bytes:
    doc = json.loads(text)
    doc.pop("timestamp")
    return json.dumps(doc, sort_keys=True, indent=2).encode()


def test_c11_determinism(tmp_path):
    with Criterion("C11 determinism", None) as c:
        for what in sorted(cli.VERIFIERS):
            for k in (2, 3):
                outs = []
                for run in range(2):
                    path = tmp_path / f"{what}-{k}-{run}.json"
                    proc = subprocess.run(
                        [sys.executable, "-m", "backforth.cli", "verify", what, "--k", str(k), "--out", str(path)],
                        capture_output=True, text=True,
                    )
                    c.check(proc.returncode == 0, f"{what} k={k} exit {proc.returncode}: {proc.stderr.strip()}")
                    outs.append(_strip_timestamp(path.read_text()) if path.exists() else b"")
                c.check(outs[0] == outs[1] and outs[0], f"{what} k={k} reports differ")
